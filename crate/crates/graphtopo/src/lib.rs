//! File formats, batch drivers and the command line front end for
//! `graphtopo-core`.

pub mod batch;
pub mod commands;
pub mod edgelist;
mod error;
pub mod export;
pub mod graph6;
pub mod json;
pub mod meta;

pub use error::{IoError, Result};
pub use graphtopo_core as core;

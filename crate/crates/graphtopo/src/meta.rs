//! Provenance block attached to every command output.

use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{IoError, Result};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: String,
    pub command: String,
    /// Options as given, in a stable order.
    pub config: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub inputs: Vec<InputHash>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Reads a file and records its hash in `meta`.
pub fn read_input(meta: &mut Metadata, path: &Path) -> Result<Vec<u8>> {
    let bytes = fs::read(path).map_err(|e| IoError::file(path, e))?;
    meta.inputs.push(InputHash { path: path.display().to_string(), sha256: sha256_hex(&bytes) });
    Ok(bytes)
}

pub fn read_input_text(meta: &mut Metadata, path: &Path) -> Result<String> {
    String::from_utf8(read_input(meta, path)?).map_err(|_| IoError::Invalid(format!("{} is not UTF-8", path.display())))
}

impl Metadata {
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        Metadata { tool: TOOL_VERSION.into(), command: command.into(), config: Vec::new(), seed, inputs: Vec::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.config.push((key.into(), value.to_string()));
        self
    }

    /// `# key: value` lines for text and CSV outputs.
    pub fn comment_block(&self) -> String {
        let mut s = format!("# tool: {}\n# command: {}\n", self.tool, self.command);
        if let Some(seed) = self.seed {
            s += &format!("# seed: {seed}\n");
        }
        for (k, v) in &self.config {
            s += &format!("# config.{k}: {v}\n");
        }
        for i in &self.inputs {
            s += &format!("# input: {} sha256={}\n", i.path, i.sha256);
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tool": self.tool,
            "command": self.command,
            "seed": self.seed,
            "config": self
                .config
                .iter()
                .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                .collect::<serde_json::Map<_, _>>(),
            "inputs": self.inputs,
        })
    }
}

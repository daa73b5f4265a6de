//! Synthetic two-class graph datasets.
//!
//! * Cycles: one large cycle (class 0) or several small disjoint cycles
//!   (class 1). Betti numbers separate the classes.
//! * Necklaces: a chain with two small cycles hanging off two interior
//!   anchors (class 0), or two extra paths joining the same two anchors
//!   (class 1). Both classes have one component and two independent cycles.
//!
//! Sample `i` is drawn from its own ChaCha stream, so samples can be generated
//! independently and in any order. Labels alternate `0, 1, 0, ...`.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dataset {
    Cycles,
    Necklaces,
}

impl Dataset {
    pub fn from_name(s: &str) -> Option<Self> {
        [Dataset::Cycles, Dataset::Necklaces].into_iter().find(|d| d.name() == s)
    }

    pub fn default_range(self) -> (usize, usize) {
        match self {
            Dataset::Cycles => DEFAULT_CYCLE_TOTAL,
            Dataset::Necklaces => DEFAULT_CHAIN_LENGTH,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Dataset::Cycles => "cycles",
            Dataset::Necklaces => "necklaces",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSample {
    pub graph: Graph,
    pub label: u8,
    pub dataset: Dataset,
    /// Seed of the dataset this sample belongs to.
    pub seed: u64,
    pub index: usize,
}

pub const DEFAULT_CYCLE_TOTAL: (usize, usize) = (10, 20);
pub const DEFAULT_CHAIN_LENGTH: (usize, usize) = (8, 16);
pub const ATTACHED_CYCLE_SIZE: (usize, usize) = (3, 5);
const MAX_RETRIES: usize = 100;

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn check_count(count: usize) -> Result<()> {
    if !count.is_multiple_of(2) {
        return Err(Error::InvalidArgument(alloc::format!("count must be even for balanced classes, got {count}")));
    }
    Ok(())
}

/// Shuffles vertex ids and attaches a 1-dimensional attribute per vertex:
/// degree / 4 plus uniform noise in ±0.05.
fn finish(n: usize, edges: Vec<(usize, usize)>, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let g = Graph::new(n, edges.into_iter().map(|(u, v)| (perm[u], perm[v])))?;
    let attrs = g.degrees().into_iter().map(|d| alloc::vec![d as f64 / 4.0 + rng.gen_range(-0.05..0.05)]).collect();
    g.with_attributes(attrs)
}

fn push_cycle(edges: &mut Vec<(usize, usize)>, start: usize, len: usize) {
    for i in 0..len {
        edges.push((start + i, start + (i + 1) % len));
    }
}

/// Splits `total` into `parts` sizes, each at least 3.
fn partition(total: usize, parts: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut sizes = alloc::vec![3; parts];
    for _ in 0..total - 3 * parts {
        let i = rng.gen_range(0..parts);
        sizes[i] += 1;
    }
    sizes
}

fn check_cycle_range((lo, hi): (usize, usize)) -> Result<()> {
    if lo < 3 || hi < lo {
        return Err(Error::InvalidArgument(alloc::format!("cycle sizes need 3 <= min <= max, got {lo}..{hi}")));
    }
    Ok(())
}

fn check_chain_range((lo, hi): (usize, usize)) -> Result<()> {
    if lo < 4 || hi < lo {
        return Err(Error::InvalidArgument(alloc::format!(
            "chains need at least 4 vertices for two interior anchors, got {lo}..{hi}"
        )));
    }
    Ok(())
}

/// Sample `index` of the cycles dataset with the given seed.
pub fn cycles_sample(seed: u64, index: usize, size_range: (usize, usize)) -> Result<SynthSample> {
    check_cycle_range(size_range)?;
    let (lo, hi) = size_range;
    let mut rng = sample_rng(seed, index);
    let label = (index % 2) as u8;
    let mut edges = Vec::new();
    let n = if label == 0 {
        let n = rng.gen_range(lo..=hi);
        push_cycle(&mut edges, 0, n);
        n
    } else {
        let mut attempt = 0;
        let (total, q) = loop {
            let total = rng.gen_range(lo..=hi);
            let q = rng.gen_range(2..=5usize);
            if 3 * q <= total {
                break (total, q);
            }
            attempt += 1;
            if attempt >= MAX_RETRIES {
                return Err(Error::GenerationFailed(MAX_RETRIES));
            }
        };
        let mut start = 0;
        for size in partition(total, q, &mut rng) {
            push_cycle(&mut edges, start, size);
            start += size;
        }
        total
    };
    let graph = finish(n, edges, &mut rng)?;
    Ok(SynthSample { graph, label, dataset: Dataset::Cycles, seed, index })
}

/// Sample `index` of the necklaces dataset with the given seed.
pub fn necklaces_sample(seed: u64, index: usize, chain_range: (usize, usize)) -> Result<SynthSample> {
    check_chain_range(chain_range)?;
    let (lo, hi) = chain_range;
    let mut rng = sample_rng(seed, index);
    let label = (index % 2) as u8;
    let len = rng.gen_range(lo..=hi);
    let mut edges: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
    let a1 = rng.gen_range(1..len - 2);
    let a2 = rng.gen_range(a1 + 1..len - 1);
    let (c_lo, c_hi) = ATTACHED_CYCLE_SIZE;
    let mut next = len;
    for anchor_pair in [(a1, a1), (a2, a2)] {
        // `extra` new vertices: a cycle of length extra + 1 through
        // the anchor, or a path of extra inner vertices from a1 to a2.
        let extra = rng.gen_range(c_lo..=c_hi) - 1;
        let (from, to) = if label == 0 { anchor_pair } else { (a1, a2) };
        let mut prev = from;
        for _ in 0..extra {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, to));
    }
    let graph = finish(next, edges, &mut rng)?;
    Ok(SynthSample { graph, label, dataset: Dataset::Necklaces, seed, index })
}

pub fn gen_sample(dataset: Dataset, seed: u64, index: usize, range: (usize, usize)) -> Result<SynthSample> {
    match dataset {
        Dataset::Cycles => cycles_sample(seed, index, range),
        Dataset::Necklaces => necklaces_sample(seed, index, range),
    }
}

pub fn gen_cycles(count: usize, seed: u64, size_range: (usize, usize)) -> Result<Vec<SynthSample>> {
    check_count(count)?;
    check_cycle_range(size_range)?;
    (0..count).map(|index| cycles_sample(seed, index, size_range)).collect()
}

pub fn gen_necklaces(count: usize, seed: u64, chain_range: (usize, usize)) -> Result<Vec<SynthSample>> {
    check_count(count)?;
    check_chain_range(chain_range)?;
    (0..count).map(|index| necklaces_sample(seed, index, chain_range)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{betti_graph, BettiPair};

    #[test]
    fn cycles_betti() {
        let data = gen_cycles(40, 3, DEFAULT_CYCLE_TOTAL).unwrap();
        for s in &data {
            let b = betti_graph(&s.graph);
            assert_eq!(b.b0, b.b1);
            if s.label == 0 {
                assert_eq!(b, BettiPair { b0: 1, b1: 1 });
            } else {
                assert!((2..=5).contains(&b.b0));
            }
            assert!((10..=20).contains(&s.graph.n_vertices()));
            assert!(s.graph.degrees().iter().all(|&d| d == 2));
        }
        assert_eq!(data.iter().filter(|s| s.label == 1).count(), 20);
    }

    #[test]
    fn necklaces_share_betti() {
        for s in gen_necklaces(40, 9, DEFAULT_CHAIN_LENGTH).unwrap() {
            assert_eq!(betti_graph(&s.graph), BettiPair { b0: 1, b1: 2 });
            assert_eq!(s.graph.attribute_dim(), Some(1));
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(gen_cycles(10, 42, (6, 12)).unwrap(), gen_cycles(10, 42, (6, 12)).unwrap());
        assert_eq!(gen_necklaces(10, 42, (5, 9)).unwrap(), gen_necklaces(10, 42, (5, 9)).unwrap());
        assert_ne!(gen_cycles(10, 42, (6, 12)).unwrap(), gen_cycles(10, 43, (6, 12)).unwrap());
    }

    #[test]
    fn invalid_arguments() {
        assert!(gen_cycles(3, 0, DEFAULT_CYCLE_TOTAL).is_err());
        assert!(gen_cycles(2, 0, (2, 5)).is_err());
        assert!(gen_necklaces(2, 0, (3, 3)).is_err());
        // Class 1 cannot fit two cycles in five vertices.
        assert_eq!(gen_cycles(2, 0, (5, 5)), Err(Error::GenerationFailed(100)));
    }
}

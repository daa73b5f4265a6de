use alloc::vec::Vec;

use super::{clique_complex, reduce_persistence, GeneralDiagram};
use crate::error::Result;
use crate::filtration::degree_filtration;
use crate::graph::Graph;

/// Value standing in for `∞` when summing persistence.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum EssentialSubstitute {
    /// Largest filtration value of the graph.
    #[default]
    MaxValue,
    /// Largest filtration value plus one.
    MaxValuePlusOne,
    Fixed(f64),
}

impl EssentialSubstitute {
    pub fn resolve(self, max_value: f64) -> f64 {
        match self {
            EssentialSubstitute::MaxValue => max_value,
            EssentialSubstitute::MaxValuePlusOne => max_value + 1.0,
            EssentialSubstitute::Fixed(x) => x,
        }
    }
}

/// `Σ |death - birth|` per dimension, with `∞` replaced by `essential_substitute`.
pub fn total_persistence(diag: &GeneralDiagram, essential_substitute: f64) -> Vec<f64> {
    diag.dims
        .iter()
        .map(|pairs| {
            pairs
                .iter()
                .map(|p| {
                    let death = if p.death == f64::INFINITY { essential_substitute } else { p.death };
                    (death - p.birth).abs()
                })
                .sum()
        })
        .collect()
}

/// Total persistence in dimensions `0..=max_dim` of the clique complex of `g`
/// under the degree filtration.
pub fn total_persistence_features(g: &Graph, max_dim: usize, substitute: EssentialSubstitute) -> Result<Vec<f64>> {
    let f = degree_filtration(g);
    let k = clique_complex(g, &f, max_dim)?;
    let diag = reduce_persistence(&k)?;
    let mut tp = total_persistence(&diag, substitute.resolve(f.max_value().unwrap_or(0.0)));
    tp.resize(max_dim + 1, 0.0);
    Ok(tp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Distinguishability {
    pub pairs: usize,
    pub indistinguishable: usize,
}

impl Distinguishability {
    pub fn error_rate(&self) -> f64 {
        if self.pairs == 0 {
            0.0
        } else {
            self.indistinguishable as f64 / self.pairs as f64
        }
    }
}

/// Counts unordered pairs of feature vectors that agree within `tol` in
/// every coordinate.
pub fn count_indistinguishable(features: &[Vec<f64>], tol: f64) -> Distinguishability {
    let n = features.len();
    let mut same = 0;
    for a in 0..n {
        for b in a + 1..n {
            let fa = &features[a];
            let fb = &features[b];
            if fa.len() == fb.len() && fa.iter().zip(fb).all(|(x, y)| (x - y).abs() <= tol) {
                same += 1;
            }
        }
    }
    Distinguishability { pairs: n * n.saturating_sub(1) / 2, indistinguishable: same }
}

pub const FEATURE_TOLERANCE: f64 = 1e-9;

pub fn distinguishability_count(
    graphs: &[Graph],
    max_dim: usize,
    substitute: EssentialSubstitute,
) -> Result<Distinguishability> {
    let features = graphs
        .iter()
        .map(|g| total_persistence_features(g, max_dim, substitute))
        .collect::<Result<Vec<_>>>()?;
    Ok(count_indistinguishable(&features, FEATURE_TOLERANCE))
}

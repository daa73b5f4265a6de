//! Vertex filtrations and the sublevel-set subgraphs they induce.
//!
//! Edges always enter at the larger of their two endpoint values.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One real value per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFiltration {
    values: Vec<f64>,
}

impl VertexFiltration {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(v) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(v));
        }
        Ok(VertexFiltration { values })
    }

    /// Same value on every vertex.
    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::new(alloc::vec![value; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    /// Largest value, or `None` on an empty graph.
    pub fn max_value(&self) -> Option<f64> {
        self.values.iter().copied().reduce(f64::max)
    }

    /// Vertex carrying the largest value; ties go to the smallest index.
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (v, &x) in self.values.iter().enumerate() {
            if best.is_none_or(|b| x > self.values[b]) {
                best = Some(v);
            }
        }
        best
    }

    /// First pair of vertices sharing a value, if any.
    pub fn first_tie(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]).then(a.cmp(&b)));
        order
            .windows(2)
            .find(|w| self.values[w[0]] == self.values[w[1]])
            .map(|w| (w[0], w[1]))
    }

    pub fn is_injective(&self) -> bool {
        self.first_tie().is_none()
    }

    /// Smallest positive difference between two distinct values.
    pub fn min_gap(&self) -> Option<f64> {
        let steps = filtration_steps(self);
        steps.windows(2).map(|w| w[1] - w[0]).reduce(f64::min)
    }

    fn check_size(&self, g: &Graph) -> Result<()> {
        if self.values.len() != g.n_vertices() {
            return Err(Error::SizeMismatch(alloc::format!(
                "filtration has {} values, graph has {} vertices",
                self.values.len(),
                g.n_vertices()
            )));
        }
        Ok(())
    }
}

/// `k >= 1` filtrations over the same graph.
#[derive(Debug, Clone, PartialEq)]
pub struct FiltrationFamily {
    filtrations: Vec<VertexFiltration>,
}

impl FiltrationFamily {
    pub fn new(filtrations: Vec<VertexFiltration>) -> Result<Self> {
        let Some(first) = filtrations.first() else {
            return Err(Error::InvalidArgument("a filtration family needs at least one member".into()));
        };
        if filtrations.iter().any(|f| f.len() != first.len()) {
            return Err(Error::SizeMismatch("family members sized for different graphs".into()));
        }
        Ok(FiltrationFamily { filtrations })
    }

    pub fn k(&self) -> usize {
        self.filtrations.len()
    }

    pub fn get(&self, i: usize) -> &VertexFiltration {
        &self.filtrations[i]
    }

    pub fn iter(&self) -> core::slice::Iter<'_, VertexFiltration> {
        self.filtrations.iter()
    }

    pub fn into_inner(self) -> Vec<VertexFiltration> {
        self.filtrations
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Activation {
    Identity,
    Relu,
    #[default]
    Sigmoid,
}

impl Activation {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Identity => x,
            Activation::Relu => x.max(0.0),
            Activation::Sigmoid => 1.0 / (1.0 + libm::exp(-x)),
        }
    }

    /// Derivative expressed through the pre-activation `x`.
    pub fn derivative(self, x: f64) -> f64 {
        match self {
            Activation::Identity => 1.0,
            Activation::Relu => {
                if x > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Sigmoid => {
                let s = self.apply(x);
                s * (1.0 - s)
            }
        }
    }
}

/// Single-hidden-layer map from vertex attributes to `k` filtration values.
///
/// Weight matrices are row-major: `w1` is `hidden × d`, `w2` is `k × hidden`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiltrationMlp {
    pub w1: Vec<Vec<f64>>,
    pub b1: Vec<f64>,
    pub w2: Vec<Vec<f64>>,
    pub b2: Vec<f64>,
    pub activation: Activation,
}

pub const DEFAULT_HIDDEN: usize = 32;
pub const DEFAULT_FILTRATIONS: usize = 8;

impl FiltrationMlp {
    pub fn new(
        w1: Vec<Vec<f64>>,
        b1: Vec<f64>,
        w2: Vec<Vec<f64>>,
        b2: Vec<f64>,
        activation: Activation,
    ) -> Result<Self> {
        let hidden = w1.len();
        let d = w1.first().map_or(0, Vec::len);
        let k = w2.len();
        let bad = |what: &str| Err(Error::SizeMismatch(alloc::format!("mlp: {what}")));
        if hidden == 0 || k == 0 || d == 0 {
            return bad("empty layer");
        }
        if w1.iter().any(|r| r.len() != d) {
            return bad("ragged W1");
        }
        if b1.len() != hidden {
            return bad("b1 length differs from hidden width");
        }
        if w2.iter().any(|r| r.len() != hidden) {
            return bad("W2 columns differ from hidden width");
        }
        if b2.len() != k {
            return bad("b2 length differs from output width");
        }
        Ok(FiltrationMlp { w1, b1, w2, b2, activation })
    }

    pub fn input_dim(&self) -> usize {
        self.w1[0].len()
    }

    pub fn hidden_dim(&self) -> usize {
        self.w1.len()
    }

    pub fn output_dim(&self) -> usize {
        self.w2.len()
    }

    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        let h: Vec<f64> = self
            .w1
            .iter()
            .zip(&self.b1)
            .map(|(row, b)| self.activation.apply(dot(row, x) + b))
            .collect();
        self.w2.iter().zip(&self.b2).map(|(row, b)| dot(row, &h) + b).collect()
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Vertex degree as filtration value.
pub fn degree_filtration(g: &Graph) -> VertexFiltration {
    VertexFiltration { values: g.degrees().into_iter().map(|d| d as f64).collect() }
}

/// Runs `mlp` on every vertex attribute; filtration `i` is output coordinate `i`.
pub fn apply_mlp(mlp: &FiltrationMlp, g: &Graph) -> Result<FiltrationFamily> {
    let attrs = g.attributes().ok_or(Error::MissingAttributes)?;
    let d = g.attribute_dim().unwrap_or(0);
    if g.n_vertices() > 0 && d != mlp.input_dim() {
        return Err(Error::SizeMismatch(alloc::format!(
            "attributes have dimension {d}, mlp expects {}",
            mlp.input_dim()
        )));
    }
    let outputs: Vec<Vec<f64>> = attrs.iter().map(|x| mlp.forward(x)).collect();
    let family = (0..mlp.output_dim())
        .map(|i| VertexFiltration::new(outputs.iter().map(|o| o[i]).collect()))
        .collect::<Result<Vec<_>>>()?;
    FiltrationFamily::new(family)
}

pub fn induced_edge_value(f: &VertexFiltration, (u, v): (usize, usize)) -> f64 {
    f.values[u].max(f.values[v])
}

/// Sorted distinct filtration values.
pub fn filtration_steps(f: &VertexFiltration) -> Vec<f64> {
    let mut steps = f.values.clone();
    steps.sort_by(f64::total_cmp);
    steps.dedup();
    steps
}

/// Subgraph spanned by vertices with `f(v) <= threshold`.
///
/// Returns the subgraph together with the map from its vertex ids to the
/// vertex ids of `g`.
pub fn sublevel_graph(g: &Graph, f: &VertexFiltration, threshold: f64) -> Result<(Graph, Vec<usize>)> {
    f.check_size(g)?;
    let keep: Vec<usize> = (0..g.n_vertices()).filter(|&v| f.values[v] <= threshold).collect();
    let mut new_id = alloc::vec![usize::MAX; g.n_vertices()];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&e| induced_edge_value(f, e) <= threshold)
        .map(|&(u, v)| (new_id[u], new_id[v]));
    let sub = Graph::new(keep.len(), edges)?;
    Ok((sub, keep))
}

/// Breaks ties in `f` by tiny upward shifts so that all values are distinct.
///
/// Within each group of equal values the `j`-th vertex (by index, from 0) is
/// shifted by `j * step` with `step = min(epsilon, gap) / (n + 1)`, where
/// `gap` is the smallest difference between distinct values. This keeps
/// `|f - f̃|∞ < epsilon` and preserves every strict inequality of `f`.
pub fn make_injective(f: &VertexFiltration, epsilon: f64) -> Result<VertexFiltration> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(alloc::format!("epsilon must be positive, got {epsilon}")));
    }
    let n = f.values.len();
    let scale = f.min_gap().map_or(epsilon, |gap| gap.min(epsilon));
    let step = scale / (n as f64 + 1.0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| f.values[a].total_cmp(&f.values[b]).then(a.cmp(&b)));
    let mut values = f.values.clone();
    let mut j = 0usize;
    for w in 0..order.len() {
        if w > 0 && f.values[order[w]] == f.values[order[w - 1]] {
            j += 1;
        } else {
            j = 0;
        }
        values[order[w]] += j as f64 * step;
    }
    let out = VertexFiltration { values };
    if let Some((a, b)) = out.first_tie() {
        return Err(Error::InvalidArgument(alloc::format!(
            "epsilon {epsilon} is below the float resolution at vertices {a} and {b}"
        )));
    }
    Ok(out)
}

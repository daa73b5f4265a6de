//! Gradients from diagram coordinates back to vertex filtration values.
//!
//! Under an injective filtration every finite diagram coordinate equals the
//! value of exactly one vertex, and that assignment is locally constant. The
//! derivative of a diagram coordinate w.r.t. `f` is therefore a one-hot
//! selection, and backpropagation is a scatter-add over the selected vertices.

use alloc::vec::Vec;

use crate::embedding::{build_matrix, DiagramMatrix, EmbedderSpec, InfinitySubstitute};
use crate::error::{Error, Result};
use crate::filtration::{induced_edge_value, VertexFiltration};
use crate::graph::Graph;
use crate::persistence::{ph_graph, CycleSlot, DiagramPair};

/// Where the substituted `∞` coordinates send their gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InfinityRouting {
    /// To the vertex with the largest filtration value.
    #[default]
    ArgMax,
    /// To a given vertex.
    Vertex(usize),
    /// Nowhere: the substitute is treated as a constant.
    Constant,
}

/// Source vertex of each `(birth, death)` coordinate of one diagram pair.
/// `None` means the coordinate does not depend on `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingMap {
    pub n_vertices: usize,
    /// Indexed by vertex row.
    pub d0: Vec<[Option<usize>; 2]>,
    /// Indexed by edge row.
    pub d1: Vec<[Option<usize>; 2]>,
}

fn max_endpoint(f: &VertexFiltration, (u, v): (usize, usize)) -> usize {
    if f.value(u) >= f.value(v) {
        u
    } else {
        v
    }
}

pub fn build_routing(g: &Graph, f: &VertexFiltration, d: &DiagramPair, infinity: InfinityRouting) -> Result<RoutingMap> {
    if f.len() != g.n_vertices() || d.d0.len() != g.n_vertices() || d.d1_by_edge.len() != g.n_edges() {
        return Err(Error::SizeMismatch("graph, filtration and diagram disagree".into()));
    }
    if let Some((a, b)) = f.first_tie() {
        return Err(Error::NotInjective(a, b));
    }
    let inf_source = match infinity {
        InfinityRouting::ArgMax => f.argmax(),
        InfinityRouting::Vertex(v) if v < g.n_vertices() => Some(v),
        InfinityRouting::Vertex(v) => return Err(Error::InvalidArgument(alloc::format!("vertex {v} out of range"))),
        InfinityRouting::Constant => None,
    };
    let d0 = d
        .d0
        .iter()
        .map(|p| {
            let death = match p.destroyer {
                Some(e) => Some(max_endpoint(f, g.edges()[e])),
                None => inf_source,
            };
            [Some(p.creator), death]
        })
        .collect();
    let d1 = d
        .d1_by_edge
        .iter()
        .map(|slot| match slot {
            CycleSlot::Cycle(p) => [Some(max_endpoint(f, g.edges()[p.creator])), inf_source],
            CycleSlot::Dummy => [None, None],
        })
        .collect();
    Ok(RoutingMap { n_vertices: g.n_vertices(), d0, d1 })
}

/// Scatter-adds `upstream` (one `[∂birth, ∂death]` per row) onto vertices.
pub fn backward(routing: &RoutingMap, upstream_d0: &[[f64; 2]], upstream_d1: &[[f64; 2]]) -> Result<Vec<f64>> {
    if upstream_d0.len() != routing.d0.len() || upstream_d1.len() != routing.d1.len() {
        return Err(Error::SizeMismatch("upstream gradient does not match the routing map".into()));
    }
    let mut grad = alloc::vec![0.0; routing.n_vertices];
    for (routes, up) in routing.d0.iter().chain(&routing.d1).zip(upstream_d0.iter().chain(upstream_d1)) {
        for (src, g) in routes.iter().zip(up) {
            if let Some(v) = src {
                grad[*v] += g;
            }
        }
    }
    Ok(grad)
}

/// Column `filtration` of a gradient laid out like a [`DiagramMatrix`].
pub fn matrix_column_grad(m: &DiagramMatrix, grad: &[f64], filtration: usize) -> Vec<[f64; 2]> {
    (0..m.rows())
        .map(|r| {
            let base = r * m.width() + 2 * filtration;
            [grad[base], grad[base + 1]]
        })
        .collect()
}

/// Scalar loss used by the gradient check: the sum of all embedding outputs
/// over the dimension-0 and dimension-1 matrices.
pub fn embedding_loss(g: &Graph, f: &VertexFiltration, spec: &EmbedderSpec) -> Result<f64> {
    let d = ph_graph(g, f)?;
    let mut total = 0.0;
    for dim in 0..2 {
        let m = build_matrix(core::slice::from_ref(&d), dim, InfinitySubstitute::MaxFiltration)?;
        total += spec.embed(&m)?.iter().flatten().sum::<f64>();
    }
    Ok(total)
}

/// Analytic gradient of [`embedding_loss`] w.r.t. the vertex values.
pub fn embedding_loss_grad(g: &Graph, f: &VertexFiltration, spec: &EmbedderSpec) -> Result<Vec<f64>> {
    let d = ph_graph(g, f)?;
    let routing = build_routing(g, f, &d, InfinityRouting::ArgMax)?;
    let mut ups: Vec<Vec<[f64; 2]>> = Vec::with_capacity(2);
    for dim in 0..2 {
        let m = build_matrix(core::slice::from_ref(&d), dim, InfinitySubstitute::MaxFiltration)?;
        let ones = alloc::vec![alloc::vec![1.0; spec.output_dim()]; m.rows()];
        let gm = spec.backward(&m, &ones)?;
        ups.push(matrix_column_grad(&m, &gm, 0));
    }
    backward(&routing, &ups[0], &ups[1])
}

/// Distance of the diagram points of `(g, f)` to the nearest kink of a local
/// embedder (`∞` for smooth embedders). Dummy rows are ignored.
pub fn kink_margin(g: &Graph, f: &VertexFiltration, spec: &EmbedderSpec) -> Result<f64> {
    let EmbedderSpec::Local(e) = spec else {
        return Ok(f64::INFINITY);
    };
    let d = ph_graph(g, f)?;
    let mut margin = f64::INFINITY;
    for dim in 0..2 {
        let m = build_matrix(core::slice::from_ref(&d), dim, InfinitySubstitute::MaxFiltration)?;
        let rows: Vec<Vec<f64>> = (0..m.rows()).filter(|&r| m.mask[r]).map(|r| m.row(r).to_vec()).collect();
        let n = rows.len();
        let live = DiagramMatrix::from_rows(rows, alloc::vec![true; n])?;
        margin = margin.min(e.kink_distance(&live));
    }
    Ok(margin)
}

/// Compares the analytic gradient of [`embedding_loss`] with central
/// differences at step `h` and returns the largest relative error over
/// vertices, `|a - n| / max(|a|, |n|, 1e-6)`.
pub fn finite_diff_check(g: &Graph, f: &VertexFiltration, spec: &EmbedderSpec, h: f64) -> Result<f64> {
    if let Some((a, b)) = f.first_tie() {
        return Err(Error::NotInjective(a, b));
    }
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidArgument(alloc::format!("step must be positive, got {h}")));
    }
    if let Some(gap) = f.min_gap() {
        if 2.0 * h >= gap {
            return Err(Error::OrderChange { h, gap });
        }
    }
    let analytic = embedding_loss_grad(g, f, spec)?;
    let mut worst: f64 = 0.0;
    for v in 0..f.len() {
        let shifted = |delta: f64| {
            let mut vals = f.values().to_vec();
            vals[v] += delta;
            VertexFiltration::new(vals)
        };
        let numeric =
            (embedding_loss(g, &shifted(h)?, spec)? - embedding_loss(g, &shifted(-h)?, spec)?) / (2.0 * h);
        let a = analytic[v];
        let err = (a - numeric).abs() / a.abs().max(numeric.abs()).max(1e-6);
        worst = worst.max(err);
    }
    Ok(worst)
}

/// Checks that every routed coordinate equals `f` at its source vertex.
pub fn routing_is_exact(g: &Graph, f: &VertexFiltration, d: &DiagramPair, routing: &RoutingMap) -> bool {
    let check = |coord: f64, src: Option<usize>, sub: f64| match src {
        Some(v) => (if coord == f64::INFINITY { sub } else { coord }) == f.value(v),
        None => true,
    };
    let sub = d.max_filtration;
    let d0 = d.d0.iter().zip(&routing.d0).all(|(p, r)| check(p.birth, r[0], sub) && check(p.death, r[1], sub));
    let d1 = d.d1_by_edge.iter().zip(&routing.d1).enumerate().all(|(e, (slot, r))| match slot {
        CycleSlot::Cycle(p) => {
            check(p.birth, r[0], sub) && check(p.death, r[1], sub) && p.birth == induced_edge_value(f, g.edges()[e])
        }
        CycleSlot::Dummy => r == &[None, None],
    });
    d0 && d1
}

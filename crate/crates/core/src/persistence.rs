//! Persistent homology of graphs in dimensions 0 and 1.
//!
//! Vertices are born at `f(v)`, edges at the larger endpoint value. Edges are
//! swept in `(value, edge id)` order over a union-find forest: an edge that
//! joins two components kills the younger one (elder rule), an edge inside a
//! component creates a cycle that never dies. Components are compared by the
//! `(value, index)` of their founding vertex, so exact ties resolve towards the
//! smaller vertex index.
//!
//! Every pair remembers the simplices that created and destroyed it, which is
//! what [`crate::grad`] uses to route gradients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::filtration::{induced_edge_value, VertexFiltration};
use crate::graph::Graph;
use crate::unionfind::UnionFind;

/// A `(birth, death)` tuple with its provenance.
///
/// For dimension 0 the creator is a vertex id; for dimension 1 it is an edge
/// id. Essential pairs have `death == f64::INFINITY` and no destroyer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub birth: f64,
    pub death: f64,
    pub creator: usize,
    pub destroyer: Option<usize>,
}

impl PersistencePair {
    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// One slot per edge in the dimension-1 diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CycleSlot {
    /// The edge closed a cycle.
    Cycle(PersistencePair),
    /// The edge merged components or was never part of a cycle; stands for
    /// the tuple `(0, 0)`.
    Dummy,
}

impl CycleSlot {
    pub const DUMMY_TUPLE: (f64, f64) = (0.0, 0.0);

    pub fn pair(&self) -> Option<&PersistencePair> {
        match self {
            CycleSlot::Cycle(p) => Some(p),
            CycleSlot::Dummy => None,
        }
    }

    /// `(birth, death)`, with the dummy tuple for non-cycle edges.
    pub fn tuple(&self) -> (f64, f64) {
        match self {
            CycleSlot::Cycle(p) => (p.birth, p.death),
            CycleSlot::Dummy => Self::DUMMY_TUPLE,
        }
    }
}

/// Dimension-0 and dimension-1 diagrams of a graph under one filtration.
///
/// `d0[v]` is the pair created by vertex `v`; `d1_by_edge[e]` is the slot of
/// edge `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramPair {
    pub d0: Vec<PersistencePair>,
    pub d1_by_edge: Vec<CycleSlot>,
    pub max_filtration: f64,
}

impl DiagramPair {
    /// Non-dummy dimension-1 pairs in edge order.
    pub fn d1(&self) -> impl Iterator<Item = &PersistencePair> {
        self.d1_by_edge.iter().filter_map(CycleSlot::pair)
    }

    pub fn essential_count(&self, dim: usize) -> usize {
        match dim {
            0 => self.d0.iter().filter(|p| p.is_essential()).count(),
            _ => self.d1().filter(|p| p.is_essential()).count(),
        }
    }
}

/// Computes both diagrams of `g` under `f`.
pub fn ph_graph(g: &Graph, f: &VertexFiltration) -> Result<DiagramPair> {
    let n = g.n_vertices();
    if f.len() != n {
        return Err(Error::SizeMismatch(alloc::format!(
            "filtration has {} values, graph has {} vertices",
            f.len(),
            n
        )));
    }
    let fv = f.values();
    let edge_values: Vec<f64> = g.edges().iter().map(|&e| induced_edge_value(f, e)).collect();
    let mut order: Vec<usize> = (0..g.n_edges()).collect();
    order.sort_unstable_by(|&a, &b| edge_values[a].total_cmp(&edge_values[b]).then(a.cmp(&b)));

    let elder = |a: usize, b: usize| fv[a].total_cmp(&fv[b]).then(a.cmp(&b)).is_le();

    let mut uf = UnionFind::new(n);
    // Founding vertex of each root.
    let mut founder: Vec<usize> = (0..n).collect();
    let mut d0: Vec<Option<PersistencePair>> = alloc::vec![None; n];
    let mut d1 = alloc::vec![CycleSlot::Dummy; g.n_edges()];

    for e in order {
        let (u, v) = g.edges()[e];
        let value = edge_values[e];
        let (ru, rv) = (uf.find(u), uf.find(v));
        if ru == rv {
            d1[e] = CycleSlot::Cycle(PersistencePair {
                birth: value,
                death: f64::INFINITY,
                creator: e,
                destroyer: None,
            });
            continue;
        }
        let (fu, fw) = (founder[ru], founder[rv]);
        let (old, young) = if elder(fu, fw) { (fu, fw) } else { (fw, fu) };
        d0[young] = Some(PersistencePair {
            birth: fv[young],
            death: value,
            creator: young,
            destroyer: Some(e),
        });
        let root = uf.union(ru, rv).expect("roots differ");
        founder[root] = old;
    }

    let d0 = d0
        .into_iter()
        .enumerate()
        .map(|(v, p)| {
            p.unwrap_or(PersistencePair { birth: fv[v], death: f64::INFINITY, creator: v, destroyer: None })
        })
        .collect();
    Ok(DiagramPair {
        d0,
        d1_by_edge: d1,
        max_filtration: f.max_value().unwrap_or(0.0),
    })
}

/// Totally ordered `f64` key so that diagrams can be compared as multisets.
/// `-0.0` and `0.0` compare equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coord(pub f64);

impl Eq for Coord {}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.0 + 0.0).total_cmp(&(other.0 + 0.0))
    }
}

/// Multiset of `(birth, death)` tuples with multiplicities.
pub type Multiset = BTreeMap<(Coord, Coord), usize>;

pub fn multiset<'a>(pairs: impl IntoIterator<Item = &'a PersistencePair>) -> Multiset {
    multiset_of_tuples(pairs.into_iter().map(|p| (p.birth, p.death)))
}

pub fn multiset_of_tuples(tuples: impl IntoIterator<Item = (f64, f64)>) -> Multiset {
    let mut m = Multiset::new();
    for (b, d) in tuples {
        *m.entry((Coord(b), Coord(d))).or_insert(0) += 1;
    }
    m
}

/// Multiset of the diagram in dimension `dim` (0 or 1). Dummy slots are
/// excluded.
pub fn diagram_multiset(d: &DiagramPair, dim: usize) -> Multiset {
    match dim {
        0 => multiset(&d.d0),
        _ => multiset(d.d1()),
    }
}

/// Multiset equality in both dimensions.
pub fn diagrams_equal(a: &DiagramPair, b: &DiagramPair) -> bool {
    diagram_multiset(a, 0) == diagram_multiset(b, 0) && diagram_multiset(a, 1) == diagram_multiset(b, 1)
}

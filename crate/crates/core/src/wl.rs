//! Weisfeiler-Lehman (1-dimensional) colour refinement.
//!
//! All graphs refined together share one [`LabelTable`], so labels and
//! label histograms are comparable across graphs. The table hands out dense
//! integer labels in first-seen order; labels are never reused between
//! iterations.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Result;
use crate::filtration::{make_injective, VertexFiltration};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialLabels {
    /// Every vertex starts with the same label.
    #[default]
    Uniform,
    /// Vertices start labelled by their degree.
    Degree,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Signature {
    Initial(usize),
    /// Previous label and the sorted multiset of neighbour labels.
    Refined(u32, Vec<u32>),
}

/// Insertion-ordered perfect hash from label signatures to integers.
#[derive(Debug, Clone, Default)]
pub struct LabelTable {
    map: BTreeMap<Signature, u32>,
}

impl LabelTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn label(&mut self, sig: Signature) -> u32 {
        let next = self.map.len() as u32;
        *self.map.entry(sig).or_insert(next)
    }
}

pub type Histogram = BTreeMap<u32, usize>;

/// Labels of every vertex at every iteration (iteration 0 = initial labels).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WlColoring {
    pub iterations: Vec<Vec<u32>>,
    pub histograms: Vec<Histogram>,
}

impl WlColoring {
    fn start(labels: Vec<u32>) -> Self {
        let h = histogram(&labels);
        WlColoring { iterations: alloc::vec![labels], histograms: alloc::vec![h] }
    }

    fn push(&mut self, labels: Vec<u32>) {
        self.histograms.push(histogram(&labels));
        self.iterations.push(labels);
    }

    pub fn labels(&self, t: usize) -> &[u32] {
        &self.iterations[t]
    }

    /// Number of iterations after the initial one.
    pub fn depth(&self) -> usize {
        self.iterations.len() - 1
    }

    /// Label-count feature vector at iteration `t`.
    pub fn histogram(&self, t: usize) -> &Histogram {
        &self.histograms[t]
    }
}

fn histogram(labels: &[u32]) -> Histogram {
    let mut h = Histogram::new();
    for &l in labels {
        *h.entry(l).or_insert(0) += 1;
    }
    h
}

/// Refinement state of several graphs over one shared label table.
#[derive(Debug, Clone)]
pub struct WlSession {
    pub table: LabelTable,
    pub colorings: Vec<WlColoring>,
    adjacency: Vec<Vec<Vec<usize>>>,
}

impl WlSession {
    pub fn new(graphs: &[Graph], init: InitialLabels) -> Self {
        let mut table = LabelTable::new();
        let mut colorings = Vec::with_capacity(graphs.len());
        for g in graphs {
            let labels = match init {
                InitialLabels::Uniform => alloc::vec![table.label(Signature::Initial(0)); g.n_vertices()],
                InitialLabels::Degree => g.degrees().into_iter().map(|d| table.label(Signature::Initial(d))).collect(),
            };
            colorings.push(WlColoring::start(labels));
        }
        WlSession { table, colorings, adjacency: graphs.iter().map(Graph::adjacency).collect() }
    }

    /// Runs one more refinement round on every graph.
    pub fn step(&mut self) {
        for (c, adj) in self.colorings.iter_mut().zip(&self.adjacency) {
            let prev = c.iterations.last().expect("initial labels");
            let next = adj
                .iter()
                .enumerate()
                .map(|(v, ns)| {
                    let mut neigh: Vec<u32> = ns.iter().map(|&w| prev[w]).collect();
                    neigh.sort_unstable();
                    self.table.label(Signature::Refined(prev[v], neigh))
                })
                .collect();
            c.push(next);
        }
    }

    /// Number of distinct labels over all graphs at iteration `t`.
    fn distinct(&self, t: usize) -> usize {
        let mut all: Vec<u32> = self.colorings.iter().flat_map(|c| c.labels(t).iter().copied()).collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    }
}

/// Refines all `graphs` for `h` rounds over a shared table.
pub fn wl_refine(graphs: &[Graph], h: usize, init: InitialLabels) -> WlSession {
    let mut s = WlSession::new(graphs, init);
    for _ in 0..h {
        s.step();
    }
    s
}

/// First iteration `t <= max_iter` at which the label histograms of `g` and
/// `g2` differ. Returns `None` when they never differ within `max_iter`
/// rounds or the joint colouring becomes stable first.
pub fn wl_distinguish(g: &Graph, g2: &Graph, max_iter: usize, init: InitialLabels) -> Option<usize> {
    let mut s = WlSession::new(&[g.clone(), g2.clone()], init);
    for t in 0..=max_iter {
        if s.colorings[0].histogram(t) != s.colorings[1].histogram(t) {
            return Some(t);
        }
        if t == max_iter {
            break;
        }
        s.step();
        if s.distinct(t + 1) == s.distinct(t) {
            // The partition stopped refining; later rounds only rename labels.
            return (s.colorings[0].histogram(t + 1) != s.colorings[1].histogram(t + 1)).then_some(t + 1);
        }
    }
    None
}

pub const DEFAULT_EPSILON: f64 = 1e-3;

/// Filtrations that separate `g` and `g2` whenever their WL labels diverge
/// within `h` rounds.
///
/// Each vertex gets the 1-based rank of its iteration-`h` label among all
/// labels seen at iteration `h` (in first-seen order), then ties are broken
/// per graph with [`make_injective`].
pub fn wl_filtration(
    g: &Graph,
    g2: &Graph,
    h: usize,
    epsilon: f64,
    init: InitialLabels,
) -> Result<(VertexFiltration, VertexFiltration)> {
    let s = wl_refine(&[g.clone(), g2.clone()], h, init);
    let mut seen: Vec<u32> = s.colorings.iter().flat_map(|c| c.labels(h).iter().copied()).collect();
    seen.sort_unstable();
    seen.dedup();
    let index = |l: &u32| (seen.binary_search(l).expect("label seen") + 1) as f64;
    let f1 = VertexFiltration::new(s.colorings[0].labels(h).iter().map(index).collect())?;
    let f2 = VertexFiltration::new(s.colorings[1].labels(h).iter().map(index).collect())?;
    Ok((make_injective(&f1, epsilon)?, make_injective(&f2, epsilon)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::{diagrams_equal, ph_graph};

    fn triangles() -> Graph {
        Graph::cycle(3).disjoint_union(&Graph::cycle(3))
    }

    #[test]
    fn triangles_and_hexagon_share_histograms() {
        let s = wl_refine(&[triangles(), Graph::cycle(6)], 5, InitialLabels::Uniform);
        for t in 0..=5 {
            assert_eq!(s.colorings[0].histogram(t), s.colorings[1].histogram(t));
            assert_eq!(s.colorings[0].histogram(t).values().sum::<usize>(), 6);
        }
        assert_eq!(wl_distinguish(&triangles(), &Graph::cycle(6), 10, InitialLabels::Uniform), None);
    }

    #[test]
    fn edgeless_labels_are_stable_in_partition() {
        let s = wl_refine(&[Graph::empty(4)], 3, InitialLabels::Uniform);
        for t in 0..=3 {
            let labels = s.colorings[0].labels(t);
            assert!(labels.iter().all(|&l| l == labels[0]));
        }
    }

    #[test]
    fn path_vs_star() {
        let p3 = Graph::path(3);
        let star = Graph::star(3);
        let s = wl_refine(&[p3.clone(), star.clone()], 0, InitialLabels::Degree);
        assert_ne!(s.colorings[0].histogram(0), s.colorings[1].histogram(0));
        assert_eq!(wl_distinguish(&p3, &star, 3, InitialLabels::Degree), Some(0));
    }

    #[test]
    fn labels_are_dense_first_seen() {
        let s = wl_refine(&[Graph::path(3)], 1, InitialLabels::Degree);
        assert_eq!(s.colorings[0].labels(0), &[0, 1, 0]);
        assert_eq!(s.colorings[0].labels(1), &[2, 3, 2]);
        assert_eq!(s.table.len(), 4);
    }

    #[test]
    fn self_comparison() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(wl_distinguish(&g, &g, 10, InitialLabels::Uniform), None);
    }

    #[test]
    fn diverging_pair_gets_separating_filtration() {
        // Path P4 vs star K1,3: same size, different degree multisets.
        let a = Graph::path(4);
        let b = Graph::star(3);
        let t = wl_distinguish(&a, &b, 4, InitialLabels::Uniform).unwrap();
        assert_eq!(t, 1);
        let (fa, fb) = wl_filtration(&a, &b, 4, DEFAULT_EPSILON, InitialLabels::Uniform).unwrap();
        assert!(fa.is_injective() && fb.is_injective());
        let (da, db) = (ph_graph(&a, &fa).unwrap(), ph_graph(&b, &fb).unwrap());
        assert!(!diagrams_equal(&da, &db));
    }

    #[test]
    fn single_vertices() {
        let g = Graph::empty(1);
        let (f1, f2) = wl_filtration(&g, &g, 2, DEFAULT_EPSILON, InitialLabels::Uniform).unwrap();
        assert_eq!(f1.values(), &[1.0]);
        assert_eq!(f2.values(), &[1.0]);
    }
}

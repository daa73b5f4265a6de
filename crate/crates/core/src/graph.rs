//! Undirected simple graphs with optional vertex attributes.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// An undirected simple graph.
///
/// Edges are stored normalized (`u < v`) and sorted lexicographically, so the
/// position of an edge in [`Graph::edges`] is a stable edge id.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    attributes: Option<Vec<Vec<f64>>>,
}

/// Number of connected components and independent cycles of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BettiPair {
    pub b0: usize,
    pub b1: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Edges are normalized and sorted;
    /// repeated edges are rejected. Use [`Graph::from_edges_dedup`] to collapse
    /// them instead.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = normalize(n, edges)?;
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Graph { n, edges: normalized, attributes: None })
    }

    /// Like [`Graph::new`] but silently drops repeated edges (in either
    /// orientation).
    pub fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = normalize(n, edges)?;
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Graph { n, edges: normalized, attributes: None })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), attributes: None }
    }

    /// Attaches one attribute vector per vertex. All rows must share a length.
    pub fn with_attributes(mut self, attributes: Vec<Vec<f64>>) -> Result<Self> {
        if attributes.len() != self.n {
            return Err(Error::SizeMismatch(alloc::format!(
                "{} attribute rows for {} vertices",
                attributes.len(),
                self.n
            )));
        }
        let d = attributes.first().map_or(0, Vec::len);
        for (row, a) in attributes.iter().enumerate() {
            if a.len() != d {
                return Err(Error::AttributeShape { row, expected: d, got: a.len() });
            }
        }
        self.attributes = Some(attributes);
        Ok(self)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn attributes(&self) -> Option<&[Vec<f64>]> {
        self.attributes.as_deref()
    }

    /// Dimension of the attribute vectors, if present.
    pub fn attribute_dim(&self) -> Option<usize> {
        self.attributes.as_ref().map(|a| a.first().map_or(0, Vec::len))
    }

    /// Id of the edge `{u, v}`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Adjacency lists, each sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = alloc::vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Relabels vertex `v` as `perm[v]`. Attributes move with their vertex.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch(alloc::format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = alloc::vec![false; self.n];
        for &p in perm {
            if p >= self.n || core::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        let mut g = Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
        if let Some(attrs) = &self.attributes {
            let mut moved = alloc::vec![Vec::new(); self.n];
            for (v, a) in attrs.iter().enumerate() {
                moved[perm[v]] = a.clone();
            }
            g.attributes = Some(moved);
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n_vertices()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph { n: self.n + other.n, edges, attributes: None }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graph is simple")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }
}

fn normalize(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Vec<(usize, usize)>> {
    edges
        .into_iter()
        .map(|(u, v)| {
            if u == v {
                Err(Error::SelfLoop(u))
            } else if u >= n || v >= n {
                Err(Error::VertexOutOfRange(u, v, n))
            } else {
                Ok((u.min(v), u.max(v)))
            }
        })
        .collect()
}

/// Connected components and cycle rank of `g`.
pub fn betti_graph(g: &Graph) -> BettiPair {
    let mut uf = UnionFind::new(g.n_vertices());
    for &(u, v) in g.edges() {
        uf.union(u, v);
    }
    let b0 = uf.count();
    BettiPair { b0, b1: g.n_edges() + b0 - g.n_vertices() }
}

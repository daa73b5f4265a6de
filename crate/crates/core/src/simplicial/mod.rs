//! Persistent homology over Z₂ for general simplicial complexes.
//!
//! This is the slow, general path: explicit simplices, boundary matrices and
//! the textbook column reduction. For graphs (1-complexes) it must agree with
//! [`crate::persistence::ph_graph`], which makes it the reference for that
//! module's tests.

mod features;
pub mod fixtures;
mod reduce;
pub mod z2;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::filtration::VertexFiltration;
use crate::graph::Graph;
use z2::BitVec;

pub use features::{
    count_indistinguishable, distinguishability_count, total_persistence, total_persistence_features,
    Distinguishability, EssentialSubstitute, FEATURE_TOLERANCE,
};
pub use reduce::{multiplicity, persistent_betti, reduce_persistence, GeneralDiagram, GeneralPair};

/// A simplex given by its sorted vertex ids, with its filtration value.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub value: f64,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Facets in the order obtained by leaving out vertex 0, 1, ...
    pub fn facets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let d = self.vertices.len();
        (0..if d > 1 { d } else { 0 }).map(move |skip| {
            self.vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
    }
}

/// A finite simplicial complex closed under taking faces.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl SimplicialComplex {
    /// Validates closure and uniqueness. Vertex tuples are sorted on input.
    /// Filtration monotonicity is checked separately by
    /// [`SimplicialComplex::check_monotone`], since persistence is the only
    /// computation that needs it.
    pub fn new(simplices: impl IntoIterator<Item = (Vec<usize>, f64)>) -> Result<Self> {
        let mut list = Vec::new();
        let mut index = BTreeMap::new();
        for (i, (mut vertices, value)) in simplices.into_iter().enumerate() {
            if vertices.is_empty() {
                return Err(Error::InvalidArgument("empty simplex".into()));
            }
            vertices.sort_unstable();
            if vertices.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(alloc::format!("simplex {i} repeats a vertex")));
            }
            if index.insert(vertices.clone(), i).is_some() {
                return Err(Error::DuplicateSimplex(i));
            }
            list.push(Simplex { vertices, value });
        }
        let k = SimplicialComplex { simplices: list, index };
        for (i, s) in k.simplices.iter().enumerate() {
            if s.facets().any(|f| !k.index.contains_key(&f)) {
                return Err(Error::NotClosed(i));
            }
        }
        Ok(k)
    }

    /// Every simplex enters no earlier than its faces.
    pub fn check_monotone(&self) -> Result<()> {
        for (i, s) in self.simplices.iter().enumerate() {
            for facet in s.facets() {
                let j = self.index[&facet];
                if self.simplices[j].value > s.value {
                    return Err(Error::NotMonotone { simplex: i, face: j });
                }
            }
        }
        Ok(())
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn position(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// Highest simplex dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// Indices of the `d`-simplices, in list order.
    pub fn of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.simplices.len()).filter(|&i| self.simplices[i].dim() == d).collect()
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Sets every simplex value to the max over its vertices of `f`.
    pub fn with_vertex_values(mut self, f: &VertexFiltration) -> Result<Self> {
        for s in &mut self.simplices {
            if let Some(&v) = s.vertices.iter().find(|&&v| v >= f.len()) {
                return Err(Error::SizeMismatch(alloc::format!("vertex {v} has no filtration value")));
            }
            s.value = s.vertices.iter().map(|&v| f.value(v)).fold(f64::NEG_INFINITY, f64::max);
        }
        Ok(self)
    }

    /// True when the complex is larger than `cap` simplices.
    pub fn exceeds(&self, cap: usize) -> bool {
        self.simplices.len() > cap
    }
}

/// All cliques of `g` with at most `max_dim + 1` vertices, valued by the
/// largest vertex value.
pub fn clique_complex(g: &Graph, f: &VertexFiltration, max_dim: usize) -> Result<SimplicialComplex> {
    if max_dim < 1 {
        return Err(Error::InvalidArgument("max_dim must be at least 1".into()));
    }
    if f.len() != g.n_vertices() {
        return Err(Error::SizeMismatch(alloc::format!(
            "filtration has {} values, graph has {} vertices",
            f.len(),
            g.n_vertices()
        )));
    }
    let adj = g.adjacency();
    // Higher neighbours only, so each clique is grown once in sorted order.
    let up: Vec<Vec<usize>> = adj
        .iter()
        .enumerate()
        .map(|(v, ns)| ns.iter().copied().filter(|&w| w > v).collect())
        .collect();
    let mut out: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for v in 0..g.n_vertices() {
        stack.push((alloc::vec![v], up[v].clone()));
        while let Some((clique, candidates)) = stack.pop() {
            let value = clique.iter().map(|&u| f.value(u)).fold(f64::NEG_INFINITY, f64::max);
            if clique.len() <= max_dim {
                for &w in candidates.iter().rev() {
                    let next: Vec<usize> =
                        candidates.iter().copied().filter(|&x| x > w && up[w].binary_search(&x).is_ok()).collect();
                    let mut c = clique.clone();
                    c.push(w);
                    stack.push((c, next));
                }
            }
            out.push((clique, value));
        }
    }
    // Faces before cofaces, so the list is a valid filtration order by dimension.
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    SimplicialComplex::new(out)
}

/// Z₂ matrix stored by columns of sorted row indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2Matrix {
    pub rows: usize,
    pub columns: Vec<Vec<usize>>,
}

impl Z2Matrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].binary_search(&row).is_ok()
    }

    /// `self * rhs` over Z₂.
    pub fn mul(&self, rhs: &Z2Matrix) -> Result<Z2Matrix> {
        if self.cols() != rhs.rows {
            return Err(Error::SizeMismatch("matrix product shapes".into()));
        }
        let columns = rhs
            .columns
            .iter()
            .map(|c| {
                let mut acc = BitVec::zeros(self.rows);
                for &k in c {
                    for &r in &self.columns[k] {
                        acc.flip(r);
                    }
                }
                acc.ones().collect()
            })
            .collect();
        Ok(Z2Matrix { rows: self.rows, columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn rank(&self) -> usize {
        let cols: Vec<BitVec> = self.columns.iter().map(|c| BitVec::from_ones(self.rows, c.iter().copied())).collect();
        z2::rank(&cols)
    }
}

/// Boundary map from `d`-chains to `(d-1)`-chains. Rows and columns follow
/// the order of [`SimplicialComplex::of_dim`].
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> Result<Z2Matrix> {
    if d < 1 {
        return Err(Error::InvalidArgument("boundary dimension must be at least 1".into()));
    }
    let rows = k.of_dim(d - 1);
    let mut row_of = BTreeMap::new();
    for (r, &i) in rows.iter().enumerate() {
        row_of.insert(i, r);
    }
    let columns = k
        .of_dim(d)
        .into_iter()
        .map(|i| {
            let mut col: Vec<usize> = k.simplices[i].facets().map(|f| row_of[&k.index[&f]]).collect();
            col.sort_unstable();
            col
        })
        .collect();
    Ok(Z2Matrix { rows: rows.len(), columns })
}

/// Betti numbers β_0..=β_up_to from ranks of boundary matrices.
pub fn betti_numbers(k: &SimplicialComplex, up_to: usize) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=up_to + 1)
        .map(|d| if d == 0 { 0 } else { boundary_matrix(k, d).map_or(0, |m| m.rank()) })
        .collect();
    (0..=up_to).map(|d| k.of_dim(d).len() - ranks[d] - ranks[d + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn validates_closure_and_duplicates() {
        assert_eq!(SimplicialComplex::new([(vec![0, 1], 0.0)]), Err(Error::NotClosed(0)));
        assert_eq!(
            SimplicialComplex::new([(vec![0], 0.0), (vec![0], 1.0)]),
            Err(Error::DuplicateSimplex(1))
        );
        let k = SimplicialComplex::new([(vec![0], 2.0), (vec![1], 0.0), (vec![1, 0], 1.0)]).unwrap();
        assert_eq!(k.simplices()[2].vertices, vec![0, 1]);
        assert_eq!(k.check_monotone(), Err(Error::NotMonotone { simplex: 2, face: 0 }));
    }

    #[test]
    fn clique_counts() {
        let f3 = VertexFiltration::constant(3, 0.0).unwrap();
        let k = clique_complex(&Graph::cycle(3), &f3, 2).unwrap();
        assert_eq!(k.count_by_dim(), vec![3, 3, 1]);
        let f6 = VertexFiltration::constant(6, 0.0).unwrap();
        assert_eq!(clique_complex(&Graph::cycle(6), &f6, 2).unwrap().count_by_dim(), vec![6, 6]);
        let f4 = VertexFiltration::constant(4, 0.0).unwrap();
        assert_eq!(clique_complex(&Graph::complete(4), &f4, 3).unwrap().count_by_dim(), vec![4, 6, 4, 1]);
        // Truncation.
        assert_eq!(clique_complex(&Graph::complete(4), &f4, 1).unwrap().count_by_dim(), vec![4, 6]);
        assert!(clique_complex(&Graph::complete(4), &f4, 0).is_err());
    }

    #[test]
    fn clique_values_are_vertex_max() {
        let f = VertexFiltration::new(vec![3.0, 1.0, 2.0]).unwrap();
        let k = clique_complex(&Graph::cycle(3), &f, 2).unwrap();
        k.check_monotone().unwrap();
        assert_eq!(k.simplices()[k.position(&[1, 2]).unwrap()].value, 2.0);
        assert_eq!(k.simplices()[k.position(&[0, 1, 2]).unwrap()].value, 3.0);
    }

    #[test]
    fn boundaries() {
        let k = SimplicialComplex::new([(vec![0], 0.0), (vec![1], 0.0), (vec![0, 1], 0.0)]).unwrap();
        let d1 = boundary_matrix(&k, 1).unwrap();
        assert_eq!(d1.columns, vec![vec![0, 1]]);

        let f = VertexFiltration::constant(3, 0.0).unwrap();
        let tri = clique_complex(&Graph::cycle(3), &f, 2).unwrap();
        let d2 = boundary_matrix(&tri, 2).unwrap();
        assert_eq!((d2.rows, d2.columns.clone()), (3, vec![vec![0, 1, 2]]));
        let d1 = boundary_matrix(&tri, 1).unwrap();
        assert!(d1.mul(&d2).unwrap().is_zero());
        assert!(boundary_matrix(&tri, 0).is_err());
    }

    #[test]
    fn betti_of_fixtures() {
        assert_eq!(betti_numbers(&fixtures::sphere(), 2), vec![1, 0, 1]);
        assert_eq!(betti_numbers(&fixtures::torus(), 2), vec![1, 2, 1]);
        let f = VertexFiltration::constant(3, 0.0).unwrap();
        let tri = clique_complex(&Graph::cycle(3), &f, 2).unwrap();
        assert_eq!(betti_numbers(&tri, 1), vec![1, 0]);
    }
}

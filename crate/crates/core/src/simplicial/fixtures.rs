//! Small triangulations with known homology.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::SimplicialComplex;

/// Closure of a list of top simplices, every simplex at filtration value 0.
pub fn closure(top: &[Vec<usize>]) -> SimplicialComplex {
    let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for t in top {
        let mut t = t.clone();
        t.sort_unstable();
        let n = t.len();
        for mask in 1u32..(1 << n) {
            let face: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| t[i]).collect();
            all.insert((face.len(), face));
        }
    }
    SimplicialComplex::new(all.into_iter().map(|(_, s)| (s, 0.0))).expect("closure is a complex")
}

/// Boundary of the tetrahedron: a triangulated 2-sphere with 4 + 6 + 4
/// simplices.
pub fn sphere() -> SimplicialComplex {
    closure(&[alloc::vec![0, 1, 2], alloc::vec![0, 1, 3], alloc::vec![0, 2, 3], alloc::vec![1, 2, 3]])
}

/// Seven-vertex torus: 7 vertices, 21 edges, 14 triangles
/// `{i, i+1, i+3}` and `{i, i+2, i+3}` modulo 7.
pub fn torus() -> SimplicialComplex {
    let top: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| [alloc::vec![i, (i + 1) % 7, (i + 3) % 7], alloc::vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    closure(&top)
}

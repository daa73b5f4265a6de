use alloc::vec::Vec;

use super::z2::{self, BitVec};
use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::persistence::{multiset_of_tuples, Multiset};

/// A persistence pair of a general complex. `creator` and `destroyer` are
/// simplex indices into the complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralPair {
    pub birth: f64,
    pub death: f64,
    pub creator: usize,
    pub destroyer: Option<usize>,
}

/// Persistence diagrams of a complex, indexed by dimension.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GeneralDiagram {
    pub dims: Vec<Vec<GeneralPair>>,
}

impl GeneralDiagram {
    pub fn dim(&self, d: usize) -> &[GeneralPair] {
        self.dims.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn multiset(&self, d: usize) -> Multiset {
        multiset_of_tuples(self.dim(d).iter().map(|p| (p.birth, p.death)))
    }

    pub fn essential_count(&self, d: usize) -> usize {
        self.dim(d).iter().filter(|p| p.death == f64::INFINITY).count()
    }

    /// Points with `birth <= a` and `death > b`.
    pub fn count_alive(&self, d: usize, a: f64, b: f64) -> usize {
        self.dim(d).iter().filter(|p| p.birth <= a && p.death > b).count()
    }
}

fn filtration_order(k: &SimplicialComplex) -> Vec<usize> {
    let s = k.simplices();
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| {
        s[a].value
            .total_cmp(&s[b].value)
            .then(s[a].dim().cmp(&s[b].dim()))
            .then_with(|| s[a].vertices.cmp(&s[b].vertices))
    });
    order
}

/// Symmetric difference of two sorted index lists.
fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Standard left-to-right column reduction of the full boundary matrix.
///
/// Simplices are ordered by `(value, dimension, vertex tuple)`. Each pivot
/// pair `(σ, τ)` yields `(value(σ), value(τ))` in dimension `dim(σ)`; unpaired
/// simplices yield essential pairs.
pub fn reduce_persistence(k: &SimplicialComplex) -> Result<GeneralDiagram> {
    k.check_monotone()?;
    let s = k.simplices();
    let order = filtration_order(k);
    let mut pos = alloc::vec![0usize; s.len()];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    let mut columns: Vec<Vec<usize>> = order
        .iter()
        .map(|&i| {
            let mut c: Vec<usize> = s[i].facets().map(|f| pos[k.position(&f).expect("closed")]).collect();
            c.sort_unstable();
            c
        })
        .collect();

    // pivot_owner[row] = column whose reduced pivot is `row`.
    let mut pivot_owner: Vec<Option<usize>> = alloc::vec![None; s.len()];
    let mut paired = alloc::vec![false; s.len()];
    let mut dims: Vec<Vec<GeneralPair>> = alloc::vec![Vec::new(); k.dim().map_or(0, |d| d + 1)];
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            match pivot_owner[low] {
                Some(other) => columns[j] = xor_sorted(&columns[j], &columns[other]),
                None => break,
            }
        }
        if let Some(&low) = columns[j].last() {
            pivot_owner[low] = Some(j);
            paired[low] = true;
            paired[j] = true;
            let (birth, death) = (&s[order[low]], &s[order[j]]);
            dims[birth.dim()].push(GeneralPair {
                birth: birth.value,
                death: death.value,
                creator: order[low],
                destroyer: Some(order[j]),
            });
        }
    }
    for p in 0..columns.len() {
        if !paired[p] {
            let sim = &s[order[p]];
            dims[sim.dim()].push(GeneralPair { birth: sim.value, death: f64::INFINITY, creator: order[p], destroyer: None });
        }
    }
    Ok(GeneralDiagram { dims })
}

/// Distinct filtration values, ascending.
pub(crate) fn steps(k: &SimplicialComplex) -> Vec<f64> {
    let mut v: Vec<f64> = k.simplices().iter().map(|s| s.value).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Rank of the persistent homology group `H_d^{i,j}`: classes present at
/// step `i` that are still non-trivial at step `j`.
///
/// Steps are 1-based indices into the sorted distinct filtration values;
/// step 0 is the empty complex. Computed from cycle and boundary spaces
/// directly, as `rank(Z_d(K_i) + B_d(K_j)) - rank(B_d(K_j))`.
pub fn persistent_betti(k: &SimplicialComplex, d: usize, i: usize, j: usize) -> Result<usize> {
    let st = steps(k);
    if i > j {
        return Err(Error::InvalidArgument(alloc::format!("persistent betti needs i <= j, got {i} > {j}")));
    }
    if j > st.len() {
        return Err(Error::InvalidArgument(alloc::format!("step {j} beyond the {} filtration steps", st.len())));
    }
    if i == 0 {
        return Ok(0);
    }
    let (ai, aj) = (st[i - 1], st[j - 1]);
    let s = k.simplices();
    let chain_dim = k.of_dim(d);
    let mut local = alloc::collections::BTreeMap::new();
    for (r, &x) in chain_dim.iter().enumerate() {
        local.insert(x, r);
    }
    let len = chain_dim.len();

    let in_i: Vec<usize> = chain_dim.iter().copied().filter(|&x| s[x].value <= ai).collect();
    let cycles: Vec<BitVec> = if d == 0 {
        in_i.iter().map(|x| BitVec::from_ones(len, [local[x]])).collect()
    } else {
        let faces = k.of_dim(d - 1);
        let mut face_row = alloc::collections::BTreeMap::new();
        for (r, &x) in faces.iter().enumerate() {
            face_row.insert(x, r);
        }
        let cols: Vec<BitVec> = in_i
            .iter()
            .map(|&x| BitVec::from_ones(faces.len(), s[x].facets().map(|f| face_row[&k.position(&f).unwrap()])))
            .collect();
        z2::kernel(&cols)
            .into_iter()
            .map(|combo| BitVec::from_ones(len, combo.ones().map(|c| local[&in_i[c]])))
            .collect()
    };
    let boundaries: Vec<BitVec> = k
        .of_dim(d + 1)
        .into_iter()
        .filter(|&x| s[x].value <= aj)
        .map(|x| BitVec::from_ones(len, s[x].facets().map(|f| local[&k.position(&f).unwrap()])))
        .collect();
    let rank_b = z2::rank(&boundaries);
    let mut both = boundaries;
    both.extend(cycles);
    Ok(z2::rank(&both) - rank_b)
}

/// Multiplicity of the point `(a_i, a_j)` in the `d`-th diagram recovered
/// from persistent Betti numbers by inclusion-exclusion; `j = None` counts
/// essential points born at `a_i`. Requires `1 <= i < j`.
pub fn multiplicity(k: &SimplicialComplex, d: usize, i: usize, j: Option<usize>) -> Result<usize> {
    let m = steps(k).len();
    let b = |x: usize, y: usize| persistent_betti(k, d, x, y).map(|v| v as i64);
    let mu = match j {
        Some(j) => {
            if !(1 <= i && i < j) {
                return Err(Error::InvalidArgument(alloc::format!("multiplicity needs 1 <= i < j, got ({i}, {j})")));
            }
            (b(i, j - 1)? - b(i, j)?) - (b(i - 1, j - 1)? - b(i - 1, j)?)
        }
        None => {
            if i < 1 || i > m {
                return Err(Error::InvalidArgument(alloc::format!("step {i} out of range")));
            }
            b(i, m)? - b(i - 1, m)?
        }
    };
    Ok(usize::try_from(mu).expect("multiplicities are nonnegative"))
}

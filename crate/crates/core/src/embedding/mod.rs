//! Embedding functions over families of persistence diagrams.
//!
//! The `k` diagrams of one dimension are laid out as a matrix with one row
//! per vertex (dimension 0) or per edge (dimension 1) and two columns
//! `(birth, death)` per filtration. Embedders map that matrix to one output
//! vector per row: the local ones row by row, DeepSets with a pooled context
//! shared across rows.

mod deepsets;
mod local;
pub mod nn;

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::filtration::Activation;
use crate::persistence::{CycleSlot, DiagramPair};
pub use deepsets::{DeepSets, DeepSetsOutput};
pub use local::{LocalEmbedder, LocalKind};
use nn::{Dense, Mlp};

/// Diagram family of one dimension as a `rows × 2k` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramMatrix {
    rows: usize,
    k: usize,
    data: Vec<f64>,
    /// Dimension 1: row is a real cycle pair under at least one filtration.
    /// Dimension 0: always true.
    pub mask: Vec<bool>,
    /// Replacement for `∞`, one per filtration.
    pub infinity_substitutes: Vec<f64>,
}

impl DiagramMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>, mask: Vec<bool>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if !width.is_multiple_of(2) || rows.iter().any(|r| r.len() != width) || mask.len() != rows.len() {
            return Err(Error::SizeMismatch("diagram matrix rows must share an even width".into()));
        }
        let k = width / 2;
        Ok(DiagramMatrix {
            rows: rows.len(),
            k,
            data: rows.into_iter().flatten().collect(),
            mask,
            infinity_substitutes: alloc::vec![f64::INFINITY; k],
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of filtrations.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn width(&self) -> usize {
        2 * self.k
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.width()..(r + 1) * self.width()]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        let w = self.width();
        &mut self.data[r * w..(r + 1) * w]
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width() + c]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Copy with rows reordered so that new row `i` is old row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut out = self.clone();
        for (i, &p) in perm.iter().enumerate() {
            out.row_mut(i).copy_from_slice(self.row(p));
            out.mask[i] = self.mask[p];
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum InfinitySubstitute {
    /// Each filtration's own maximum value.
    #[default]
    MaxFiltration,
    Fixed(f64),
}

/// Lays out `k` diagrams of the same graph in dimension `dim`.
pub fn build_matrix(diagrams: &[DiagramPair], dim: usize, infinity: InfinitySubstitute) -> Result<DiagramMatrix> {
    let Some(first) = diagrams.first() else {
        return Err(Error::InvalidArgument("at least one diagram is required".into()));
    };
    if diagrams
        .iter()
        .any(|d| d.d0.len() != first.d0.len() || d.d1_by_edge.len() != first.d1_by_edge.len())
    {
        return Err(Error::SizeMismatch("diagrams come from graphs of different sizes".into()));
    }
    if dim > 1 {
        return Err(Error::InvalidArgument(alloc::format!("graph diagrams have dimensions 0 and 1, not {dim}")));
    }
    let k = diagrams.len();
    let subs: Vec<f64> = diagrams
        .iter()
        .map(|d| match infinity {
            InfinitySubstitute::MaxFiltration => d.max_filtration,
            InfinitySubstitute::Fixed(x) => x,
        })
        .collect();
    let rows = if dim == 0 { first.d0.len() } else { first.d1_by_edge.len() };
    let mut data = alloc::vec![0.0; rows * 2 * k];
    let mut mask = alloc::vec![dim == 0; rows];
    let fix = |x: f64, s: f64| if x == f64::INFINITY { s } else { x };
    for (i, d) in diagrams.iter().enumerate() {
        for r in 0..rows {
            let (b, de) = if dim == 0 {
                (d.d0[r].birth, d.d0[r].death)
            } else {
                let slot = d.d1_by_edge[r];
                if matches!(slot, CycleSlot::Cycle(_)) {
                    mask[r] = true;
                }
                slot.tuple()
            };
            data[r * 2 * k + 2 * i] = b;
            data[r * 2 * k + 2 * i + 1] = fix(de, subs[i]);
        }
    }
    Ok(DiagramMatrix { rows, k, data, mask, infinity_substitutes: subs })
}

/// An embedding function together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum EmbedderSpec {
    Local(LocalEmbedder),
    DeepSets(DeepSets),
}

impl EmbedderSpec {
    pub fn output_dim(&self) -> usize {
        match self {
            EmbedderSpec::Local(e) => e.output_dim(),
            EmbedderSpec::DeepSets(e) => e.output_dim(),
        }
    }

    /// Expected matrix width `2k`.
    pub fn input_width(&self) -> usize {
        match self {
            EmbedderSpec::Local(e) => 2 * e.k,
            EmbedderSpec::DeepSets(e) => e.phi.input_dim(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            EmbedderSpec::Local(e) => e.kind.name(),
            EmbedderSpec::DeepSets(_) => "deepsets",
        }
    }

    /// One output vector per matrix row.
    pub fn embed(&self, m: &DiagramMatrix) -> Result<Vec<Vec<f64>>> {
        match self {
            EmbedderSpec::Local(e) => embed_local(e, m),
            EmbedderSpec::DeepSets(e) => embed_deepsets(e, m).map(|o| o.rows),
        }
    }

    /// Gradient w.r.t. every matrix entry (row-major, like
    /// [`DiagramMatrix::data`]) given the gradient w.r.t. every output.
    pub fn backward(&self, m: &DiagramMatrix, upstream: &[Vec<f64>]) -> Result<Vec<f64>> {
        if upstream.len() != m.rows() || upstream.iter().any(|u| u.len() != self.output_dim()) {
            return Err(Error::SizeMismatch("upstream gradient shape".into()));
        }
        self.check_width(m)?;
        Ok(match self {
            EmbedderSpec::Local(e) => e.backward(m, upstream),
            EmbedderSpec::DeepSets(e) => e.backward(m, upstream),
        })
    }

    fn check_width(&self, m: &DiagramMatrix) -> Result<()> {
        if m.width() != self.input_width() && m.rows() > 0 {
            return Err(Error::SizeMismatch(alloc::format!(
                "embedder expects width {}, matrix has {}",
                self.input_width(),
                m.width()
            )));
        }
        Ok(())
    }

    /// Random parameters for a `k`-filtration embedder. Coordinates such as
    /// centres and sample positions are drawn from `range`.
    pub fn random(kind: EmbedderKind, k: usize, atoms: usize, output_dim: usize, range: (f64, f64), seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (lo, hi) = range;
        let span = (hi - lo).max(1e-6);
        let coord = |rng: &mut ChaCha8Rng| rng.gen_range(lo..=hi);
        let dense = |rng: &mut ChaCha8Rng, inp: usize, out: usize| {
            let scale = 1.0 / libm::sqrt(inp.max(1) as f64);
            Dense {
                weight: (0..out).map(|_| (0..inp).map(|_| rng.gen_range(-scale..scale)).collect()).collect(),
                bias: (0..out).map(|_| rng.gen_range(-0.1..0.1)).collect(),
            }
        };
        let local_kind = match kind {
            EmbedderKind::Triangle => LocalKind::Triangle { samples: (0..atoms).map(|_| coord(&mut rng)).collect() },
            EmbedderKind::Gaussian => LocalKind::Gaussian {
                centers: (0..atoms).map(|_| [coord(&mut rng), coord(&mut rng)]).collect(),
                sigma: span / 2.0,
            },
            EmbedderKind::Line => LocalKind::Line {
                lines: (0..atoms)
                    .map(|_| ([rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)], rng.gen_range(-1.0..1.0)))
                    .collect(),
            },
            EmbedderKind::RationalHat => LocalKind::RationalHat {
                centers: (0..atoms).map(|_| [coord(&mut rng), coord(&mut rng)]).collect(),
                radii: (0..atoms).map(|_| rng.gen_range(0.1 * span..span)).collect(),
            },
            EmbedderKind::DeepSets => {
                let hidden = atoms.max(1);
                let phi = Mlp {
                    first: dense(&mut rng, 2 * k, hidden),
                    second: dense(&mut rng, hidden, hidden),
                    activation: Activation::Sigmoid,
                };
                let rho = Mlp {
                    first: dense(&mut rng, hidden, hidden),
                    second: dense(&mut rng, hidden, hidden),
                    activation: Activation::Sigmoid,
                };
                let out = dense(&mut rng, 2 * hidden, output_dim);
                return EmbedderSpec::DeepSets(DeepSets { phi, rho, out });
            }
        };
        let mix = dense(&mut rng, k * local_kind.atoms(), output_dim);
        EmbedderSpec::Local(LocalEmbedder { kind: local_kind, k, mix })
    }

    /// Same shapes with every weight and bias set to zero.
    pub fn zeroed(&self) -> Self {
        fn zero(d: &Dense) -> Dense {
            Dense::zeros(d.input_dim(), d.output_dim())
        }
        match self {
            EmbedderSpec::Local(e) => EmbedderSpec::Local(LocalEmbedder { mix: zero(&e.mix), ..e.clone() }),
            EmbedderSpec::DeepSets(e) => EmbedderSpec::DeepSets(DeepSets {
                phi: Mlp { first: zero(&e.phi.first), second: zero(&e.phi.second), activation: e.phi.activation },
                rho: Mlp { first: zero(&e.rho.first), second: zero(&e.rho.second), activation: e.rho.activation },
                out: zero(&e.out),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedderKind {
    DeepSets,
    RationalHat,
    Triangle,
    Gaussian,
    Line,
}

impl EmbedderKind {
    pub const ALL: [EmbedderKind; 5] = [
        EmbedderKind::DeepSets,
        EmbedderKind::RationalHat,
        EmbedderKind::Triangle,
        EmbedderKind::Gaussian,
        EmbedderKind::Line,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EmbedderKind::DeepSets => "deepsets",
            EmbedderKind::RationalHat => "rational_hat",
            EmbedderKind::Triangle => "triangle",
            EmbedderKind::Gaussian => "gaussian",
            EmbedderKind::Line => "line",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

pub fn embed_local(e: &LocalEmbedder, m: &DiagramMatrix) -> Result<Vec<Vec<f64>>> {
    if m.width() != 2 * e.k && m.rows() > 0 {
        return Err(Error::SizeMismatch(alloc::format!("embedder expects width {}, matrix has {}", 2 * e.k, m.width())));
    }
    Ok((0..m.rows()).map(|r| e.forward_row(m.row(r))).collect())
}

pub fn embed_deepsets(e: &DeepSets, m: &DiagramMatrix) -> Result<DeepSetsOutput> {
    if m.width() != e.phi.input_dim() && m.rows() > 0 {
        return Err(Error::SizeMismatch(alloc::format!(
            "embedder expects width {}, matrix has {}",
            e.phi.input_dim(),
            m.width()
        )));
    }
    Ok(e.forward(m))
}

/// Residual update `x̃(v) = x(v) + ψ(v)`.
pub fn aggregate_dim0(x: &[Vec<f64>], psi0: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if x.len() != psi0.len() {
        return Err(Error::SizeMismatch(alloc::format!("{} attribute rows, {} embedding rows", x.len(), psi0.len())));
    }
    x.iter()
        .zip(psi0)
        .map(|(a, p)| {
            if a.len() != p.len() {
                return Err(Error::SizeMismatch(alloc::format!(
                    "embedding dimension {} differs from attribute dimension {}",
                    p.len(),
                    a.len()
                )));
            }
            Ok(a.iter().zip(p).map(|(u, v)| u + v).collect())
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PoolMode {
    #[default]
    Sum,
    Mean,
}

/// Masked sum or mean of per-edge embeddings. No unmasked rows gives the
/// zero vector.
pub fn pool_dim1(psi1: &[Vec<f64>], mask: &[bool], mode: PoolMode) -> Result<Vec<f64>> {
    if psi1.len() != mask.len() {
        return Err(Error::SizeMismatch(alloc::format!("{} rows, {} mask entries", psi1.len(), mask.len())));
    }
    let dim = psi1.first().map_or(0, Vec::len);
    let mut acc = alloc::vec![0.0; dim];
    let mut count = 0usize;
    for (row, _) in psi1.iter().zip(mask).filter(|(_, &m)| m) {
        if row.len() != dim {
            return Err(Error::SizeMismatch("ragged embedding rows".into()));
        }
        for (a, x) in acc.iter_mut().zip(row) {
            *a += x;
        }
        count += 1;
    }
    if mode == PoolMode::Mean && count > 0 {
        for a in &mut acc {
            *a /= count as f64;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::{degree_filtration, VertexFiltration};
    use crate::graph::Graph;
    use crate::persistence::ph_graph;
    use alloc::vec;

    fn worked_graph() -> Graph {
        Graph::new(5, [(0, 3), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn worked_example_dim0_rows() {
        let g = worked_graph();
        let d = ph_graph(&g, &degree_filtration(&g)).unwrap();
        let m = build_matrix(&[d], 0, InfinitySubstitute::MaxFiltration).unwrap();
        assert_eq!(
            m.to_rows(),
            vec![vec![1., 3.], vec![1., 3.], vec![3., 3.], vec![3., 3.], vec![2., 3.]]
        );
        assert!(m.mask.iter().all(|&x| x));
    }

    #[test]
    fn acyclic_dim1_is_all_dummy() {
        let g = Graph::path(4);
        let d = ph_graph(&g, &degree_filtration(&g)).unwrap();
        let m = build_matrix(&[d], 1, InfinitySubstitute::MaxFiltration).unwrap();
        assert_eq!(m.rows(), 3);
        assert!(m.data().iter().all(|&x| x == 0.0));
        assert!(m.mask.iter().all(|&x| !x));
    }

    #[test]
    fn duplicated_filtration_duplicates_columns() {
        let g = worked_graph();
        let f = VertexFiltration::new(vec![0.5, 0.1, 0.9, 0.3, 0.7]).unwrap();
        let d = ph_graph(&g, &f).unwrap();
        for dim in 0..2 {
            let m = build_matrix(&[d.clone(), d.clone()], dim, InfinitySubstitute::MaxFiltration).unwrap();
            for r in 0..m.rows() {
                assert_eq!(m.row(r)[0..2], m.row(r)[2..4]);
            }
        }
        let m = build_matrix(&[d], 1, InfinitySubstitute::Fixed(7.0)).unwrap();
        let cyc: Vec<usize> = (0..m.rows()).filter(|&r| m.mask[r]).collect();
        assert_eq!(cyc.len(), 1);
        assert_eq!(m.row(cyc[0])[1], 7.0);
    }

    #[test]
    fn rejects_mixed_graphs() {
        let a = ph_graph(&Graph::path(3), &VertexFiltration::constant(3, 0.).unwrap()).unwrap();
        let b = ph_graph(&Graph::path(4), &VertexFiltration::constant(4, 0.).unwrap()).unwrap();
        assert!(matches!(build_matrix(&[a, b], 0, InfinitySubstitute::MaxFiltration), Err(Error::SizeMismatch(_))));
        assert!(build_matrix(&[], 0, InfinitySubstitute::MaxFiltration).is_err());
    }

    #[test]
    fn residual_aggregation() {
        let x = vec![vec![1.0, 2.0]];
        assert_eq!(aggregate_dim0(&x, &[vec![0.0, 0.0]]).unwrap(), x);
        assert_eq!(aggregate_dim0(&[vec![0.0, 0.0]], &[vec![3.0, 4.0]]).unwrap(), vec![vec![3.0, 4.0]]);
        assert_eq!(aggregate_dim0(&x, &[vec![0.5, -2.0]]).unwrap(), vec![vec![1.5, 0.0]]);
        assert!(aggregate_dim0(&x, &[vec![0.5]]).is_err());
    }

    #[test]
    fn pooling() {
        let rows = vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![100.0, 100.0]];
        assert_eq!(pool_dim1(&rows, &[false; 3], PoolMode::Mean).unwrap(), vec![0.0, 0.0]);
        assert_eq!(pool_dim1(&rows, &[false; 3], PoolMode::Sum).unwrap(), vec![0.0, 0.0]);
        for mode in [PoolMode::Sum, PoolMode::Mean] {
            assert_eq!(pool_dim1(&rows, &[false, true, false], mode).unwrap(), vec![3.0, 4.0]);
        }
        assert_eq!(pool_dim1(&rows, &[true, true, false], PoolMode::Mean).unwrap(), vec![2.0, 3.0]);
        assert!(pool_dim1(&rows, &[true], PoolMode::Sum).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in EmbedderKind::ALL {
            assert_eq!(EmbedderKind::from_name(k.name()), Some(k));
        }
        assert_eq!(EmbedderKind::from_name("landscape"), None);
    }
}

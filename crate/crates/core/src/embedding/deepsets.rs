//! Set-level embedding `ρ(Σ φ(x))` with a per-row readout.
//!
//! Each row goes through `φ`; the unmasked rows are summed and
//! passed through `ρ`; the resulting context is appended to every `φ(x_r)` and
//! an affine readout produces the row output. Rows therefore see the rest of
//! the multiset through the context.

use alloc::vec::Vec;

use super::nn::{Dense, Mlp};
use super::DiagramMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct DeepSets {
    /// Per-row encoder, `2k → m`.
    pub phi: Mlp,
    /// Pooled-context encoder, `m → c`.
    pub rho: Mlp,
    /// Readout, `(m + c) → output_dim`.
    pub out: Dense,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeepSetsOutput {
    pub rows: Vec<Vec<f64>>,
    /// `ρ` of the pooled sum.
    pub context: Vec<f64>,
}

impl DeepSets {
    pub fn output_dim(&self) -> usize {
        self.out.output_dim()
    }

    /// Masked sum of `φ` over rows. Terms are added in lexicographic order of
    /// their values, so the result is bit-identical under row permutations.
    pub fn pool(&self, m: &DiagramMatrix) -> Vec<f64> {
        let mut terms: Vec<Vec<f64>> = (0..m.rows()).filter(|&r| m.mask[r]).map(|r| self.phi.forward(m.row(r))).collect();
        terms.sort_by(|a, b| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(core::cmp::Ordering::Equal)
        });
        let mut pooled = alloc::vec![0.0; self.phi.output_dim()];
        for t in &terms {
            for (p, x) in pooled.iter_mut().zip(t) {
                *p += x;
            }
        }
        pooled
    }

    pub fn forward(&self, m: &DiagramMatrix) -> DeepSetsOutput {
        let context = self.rho.forward(&self.pool(m));
        let rows = (0..m.rows())
            .map(|r| {
                let mut z = self.phi.forward(m.row(r));
                z.extend_from_slice(&context);
                self.out.forward(&z)
            })
            .collect();
        DeepSetsOutput { rows, context }
    }

    pub(super) fn backward(&self, m: &DiagramMatrix, upstream: &[Vec<f64>]) -> Vec<f64> {
        let width = self.phi.output_dim();
        let pooled = self.pool(m);
        let mut direct: Vec<Vec<f64>> = Vec::with_capacity(m.rows());
        let mut grad_context = alloc::vec![0.0; self.rho.output_dim()];
        for up in upstream {
            let gz = self.out.backward(up);
            direct.push(gz[..width].to_vec());
            for (a, g) in grad_context.iter_mut().zip(&gz[width..]) {
                *a += g;
            }
        }
        let grad_pooled = self.rho.backward(&pooled, &grad_context);
        let mut grad = alloc::vec![0.0; m.data().len()];
        for (r, d) in direct.iter_mut().enumerate() {
            if m.mask[r] {
                for (a, g) in d.iter_mut().zip(&grad_pooled) {
                    *a += g;
                }
            }
            let gx = self.phi.backward(m.row(r), d);
            grad[r * m.width()..(r + 1) * m.width()].copy_from_slice(&gx);
        }
        grad
    }
}

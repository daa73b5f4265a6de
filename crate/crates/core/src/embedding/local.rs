//! Point transformations applied to every `(birth, death)` point on its own.
//!
//! For a point `p = (b, d)`:
//!
//! * triangle: `max(0, min(t - b, d - t))` per sample position `t`
//! * Gaussian: `exp(-‖p - c‖² / (2σ²))` per centre `c`
//! * line: `⟨p, w⟩ + β` per line `(w, β)`
//! * rational hat: `1 / (1 + ‖p - c‖₁) - 1 / (1 + |r - ‖p - c‖₁|)` per `(c, r)`
//!
//! The values for all `k` filtrations and all atoms of a row are concatenated
//! (filtration-major) and mixed by a dense layer.

use alloc::vec::Vec;

use super::nn::Dense;
use super::DiagramMatrix;

#[derive(Debug, Clone, PartialEq)]
pub enum LocalKind {
    Triangle { samples: Vec<f64> },
    Gaussian { centers: Vec<[f64; 2]>, sigma: f64 },
    Line { lines: Vec<([f64; 2], f64)> },
    RationalHat { centers: Vec<[f64; 2]>, radii: Vec<f64> },
}

impl LocalKind {
    pub fn atoms(&self) -> usize {
        match self {
            LocalKind::Triangle { samples } => samples.len(),
            LocalKind::Gaussian { centers, .. } => centers.len(),
            LocalKind::Line { lines } => lines.len(),
            LocalKind::RationalHat { centers, .. } => centers.len(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LocalKind::Triangle { .. } => "triangle",
            LocalKind::Gaussian { .. } => "gaussian",
            LocalKind::Line { .. } => "line",
            LocalKind::RationalHat { .. } => "rational_hat",
        }
    }

    /// Values of every atom at point `(b, d)`.
    pub fn transform(&self, b: f64, d: f64) -> Vec<f64> {
        match self {
            LocalKind::Triangle { samples } => samples.iter().map(|&t| (t - b).min(d - t).max(0.0)).collect(),
            LocalKind::Gaussian { centers, sigma } => centers
                .iter()
                .map(|c| libm::exp(-(sq(b - c[0]) + sq(d - c[1])) / (2.0 * sigma * sigma)))
                .collect(),
            LocalKind::Line { lines } => lines.iter().map(|(w, beta)| w[0] * b + w[1] * d + beta).collect(),
            LocalKind::RationalHat { centers, radii } => centers
                .iter()
                .zip(radii)
                .map(|(c, &r)| {
                    let s = (b - c[0]).abs() + (d - c[1]).abs();
                    1.0 / (1.0 + s) - 1.0 / (1.0 + (r - s).abs())
                })
                .collect(),
        }
    }

    /// Partial derivatives `(∂/∂b, ∂/∂d)` of every atom at `(b, d)`. At kinks
    /// the one-sided derivative from the region the comparison favours is used.
    pub fn transform_grad(&self, b: f64, d: f64) -> Vec<(f64, f64)> {
        match self {
            LocalKind::Triangle { samples } => samples
                .iter()
                .map(|&t| {
                    let (rise, fall) = (t - b, d - t);
                    if rise.min(fall) <= 0.0 {
                        (0.0, 0.0)
                    } else if rise < fall {
                        (-1.0, 0.0)
                    } else {
                        (0.0, 1.0)
                    }
                })
                .collect(),
            LocalKind::Gaussian { centers, sigma } => {
                let s2 = sigma * sigma;
                centers
                    .iter()
                    .map(|c| {
                        let g = libm::exp(-(sq(b - c[0]) + sq(d - c[1])) / (2.0 * s2));
                        (-g * (b - c[0]) / s2, -g * (d - c[1]) / s2)
                    })
                    .collect()
            }
            LocalKind::Line { lines } => lines.iter().map(|(w, _)| (w[0], w[1])).collect(),
            LocalKind::RationalHat { centers, radii } => centers
                .iter()
                .zip(radii)
                .map(|(c, &r)| {
                    let s = (b - c[0]).abs() + (d - c[1]).abs();
                    let u = r - s;
                    let ds = -1.0 / sq(1.0 + s) - signum(u) / sq(1.0 + u.abs());
                    (ds * signum(b - c[0]), ds * signum(d - c[1]))
                })
                .collect(),
        }
    }

    /// Distance from `(b, d)` to the nearest kink of any atom; `∞` for
    /// smooth kinds.
    pub fn kink_distance(&self, b: f64, d: f64) -> f64 {
        match self {
            LocalKind::Triangle { samples } => samples
                .iter()
                .map(|&t| (t - b).abs().min((d - t).abs()).min(((t - b) - (d - t)).abs()))
                .fold(f64::INFINITY, f64::min),
            LocalKind::RationalHat { centers, radii } => centers
                .iter()
                .zip(radii)
                .map(|(c, &r)| {
                    let s = (b - c[0]).abs() + (d - c[1]).abs();
                    (b - c[0]).abs().min((d - c[1]).abs()).min((r - s).abs())
                })
                .fold(f64::INFINITY, f64::min),
            _ => f64::INFINITY,
        }
    }
}

fn sq(x: f64) -> f64 {
    x * x
}

fn signum(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// A local point transformation over `k` filtrations followed by a mix.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalEmbedder {
    pub kind: LocalKind,
    pub k: usize,
    /// `output_dim × (k · atoms)`.
    pub mix: Dense,
}

impl LocalEmbedder {
    pub fn output_dim(&self) -> usize {
        self.mix.output_dim()
    }

    /// Concatenated atom values of one row, before mixing.
    pub fn features(&self, row: &[f64]) -> Vec<f64> {
        (0..self.k).flat_map(|i| self.kind.transform(row[2 * i], row[2 * i + 1])).collect()
    }

    pub fn forward_row(&self, row: &[f64]) -> Vec<f64> {
        self.mix.forward(&self.features(row))
    }

    pub(super) fn backward(&self, m: &DiagramMatrix, upstream: &[Vec<f64>]) -> Vec<f64> {
        let a = self.kind.atoms();
        let mut grad = alloc::vec![0.0; m.data().len()];
        for (r, up) in upstream.iter().enumerate() {
            let gf = self.mix.backward(up);
            let row = m.row(r);
            for i in 0..self.k {
                let jac = self.kind.transform_grad(row[2 * i], row[2 * i + 1]);
                for (atom, (db, dd)) in jac.into_iter().enumerate() {
                    let g = gf[i * a + atom];
                    grad[r * m.width() + 2 * i] += g * db;
                    grad[r * m.width() + 2 * i + 1] += g * dd;
                }
            }
        }
        grad
    }

    /// Smallest distance from any matrix point to a kink of the transform.
    pub fn kink_distance(&self, m: &DiagramMatrix) -> f64 {
        (0..m.rows())
            .flat_map(|r| (0..self.k).map(move |i| (r, i)))
            .map(|(r, i)| self.kind.kink_distance(m.get(r, 2 * i), m.get(r, 2 * i + 1)))
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn gaussian_peak() {
        let g = LocalKind::Gaussian { centers: vec![[0.3, 0.8]], sigma: 0.5 };
        assert_eq!(g.transform(0.3, 0.8), vec![1.0]);
        assert!(g.transform(1.3, 0.8)[0] < 1.0);
    }

    #[test]
    fn triangle_apex() {
        let (b, d) = (1.0, 4.0);
        let t = LocalKind::Triangle { samples: vec![(b + d) / 2.0, 0.0, 5.0] };
        assert_eq!(t.transform(b, d), vec![1.5, 0.0, 0.0]);
    }

    #[test]
    fn rational_hat_at_center() {
        let h = LocalKind::RationalHat { centers: vec![[2.0, 3.0]], radii: vec![1.0] };
        assert_eq!(h.transform(2.0, 3.0), vec![0.5]);
        // On the ring ‖p - c‖₁ = r the second term is 1.
        assert_eq!(h.transform(3.0, 3.0), vec![0.5 - 1.0]);
    }

    #[test]
    fn line_is_affine() {
        let l = LocalKind::Line { lines: vec![([2.0, -1.0], 0.5)] };
        assert_eq!(l.transform(1.0, 3.0), vec![-0.5]);
        assert_eq!(l.transform_grad(1.0, 3.0), vec![(2.0, -1.0)]);
    }

    #[test]
    fn gradients_match_differences_away_from_kinks() {
        let kinds = [
            LocalKind::Triangle { samples: vec![0.7, 1.9, 3.3] },
            LocalKind::Gaussian { centers: vec![[0.2, 1.1], [1.5, 2.5]], sigma: 0.8 },
            LocalKind::RationalHat { centers: vec![[0.4, 0.9], [2.0, 2.0]], radii: vec![0.5, 1.7] },
        ];
        let (b, d) = (0.55, 2.45);
        let h = 1e-6;
        for kind in &kinds {
            assert!(kind.kink_distance(b, d) > 10.0 * h);
            let g = kind.transform_grad(b, d);
            for (atom, &(gb, gd)) in g.iter().enumerate() {
                let fb = (kind.transform(b + h, d)[atom] - kind.transform(b - h, d)[atom]) / (2.0 * h);
                let fd = (kind.transform(b, d + h)[atom] - kind.transform(b, d - h)[atom]) / (2.0 * h);
                assert!((fb - gb).abs() < 1e-7, "{} db", kind.name());
                assert!((fd - gd).abs() < 1e-7, "{} dd", kind.name());
            }
        }
    }
}

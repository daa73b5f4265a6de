use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::filtration::{dot, Activation};

/// Affine map `y = W x + b`, `W` row-major with shape `out × in`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    pub weight: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
}

impl Dense {
    pub fn new(weight: Vec<Vec<f64>>, bias: Vec<f64>) -> Result<Self> {
        let inp = weight.first().map_or(0, Vec::len);
        if weight.iter().any(|r| r.len() != inp) || bias.len() != weight.len() {
            return Err(Error::SizeMismatch("dense layer weight/bias shapes".into()));
        }
        Ok(Dense { weight, bias })
    }

    pub fn zeros(inp: usize, out: usize) -> Self {
        Dense { weight: alloc::vec![alloc::vec![0.0; inp]; out], bias: alloc::vec![0.0; out] }
    }

    pub fn input_dim(&self) -> usize {
        self.weight.first().map_or(0, Vec::len)
    }

    pub fn output_dim(&self) -> usize {
        self.weight.len()
    }

    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        self.weight.iter().zip(&self.bias).map(|(row, b)| dot(row, x) + b).collect()
    }

    /// Gradient w.r.t. the input given the gradient w.r.t. the output.
    pub fn backward(&self, grad_out: &[f64]) -> Vec<f64> {
        let mut g = alloc::vec![0.0; self.input_dim()];
        for (row, &go) in self.weight.iter().zip(grad_out) {
            for (gi, &w) in g.iter_mut().zip(row) {
                *gi += w * go;
            }
        }
        g
    }
}

/// Two dense layers with an activation in between.
#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    pub first: Dense,
    pub second: Dense,
    pub activation: Activation,
}

impl Mlp {
    pub fn new(first: Dense, second: Dense, activation: Activation) -> Result<Self> {
        if first.output_dim() != second.input_dim() {
            return Err(Error::SizeMismatch("mlp hidden widths disagree".into()));
        }
        Ok(Mlp { first, second, activation })
    }

    pub fn input_dim(&self) -> usize {
        self.first.input_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.second.output_dim()
    }

    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        let pre = self.first.forward(x);
        let h: Vec<f64> = pre.iter().map(|&z| self.activation.apply(z)).collect();
        self.second.forward(&h)
    }

    pub fn backward(&self, x: &[f64], grad_out: &[f64]) -> Vec<f64> {
        let pre = self.first.forward(x);
        let gh = self.second.backward(grad_out);
        let gpre: Vec<f64> = gh.iter().zip(&pre).map(|(g, &z)| g * self.activation.derivative(z)).collect();
        self.first.backward(&gpre)
    }
}

use super::basis;
use crate::{Error, Result};

/// A state profile `u(x) = Σ c_n √2 sin(nπx)` stored by its sine coefficients.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ModalProfile {
    coeffs: Vec<f64>,
}

impl ModalProfile {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a modal profile needs at least one coefficient"));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::invalid(format!("coefficient c_{} is not finite", i + 1)));
        }
        Ok(Self { coeffs })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            coeffs: vec![0.0; n.max(1)],
        }
    }

    /// Builds a profile of length `len` from sparse `(n, c_n)` pairs (1-based).
    pub fn from_modes(len: usize, modes: &[(usize, f64)]) -> Result<Self> {
        let mut coeffs = vec![0.0; len.max(1)];
        for &(n, c) in modes {
            if n == 0 || n > coeffs.len() {
                return Err(Error::invalid(format!(
                    "mode index {n} outside 1..={}",
                    coeffs.len()
                )));
            }
            coeffs[n - 1] += c;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Parseval: `‖u‖ = sqrt(Σ c_n²)`.
    pub fn l2_norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain {
                what: "x",
                value: x,
                domain: "[0, 1]",
            });
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * basis(i + 1, x))
            .sum())
    }

    /// `⟨self, other⟩` over shared indices.
    pub fn dot(&self, other: &[f64]) -> f64 {
        self.coeffs.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    /// Zero-pads or truncates to `n` coefficients.
    pub fn resized(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n.max(1), 0.0);
        Self { coeffs }
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| a * c).collect(),
        }
    }
}

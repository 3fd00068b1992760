use crate::spectral::{ModalProfile, Shape};
use crate::{Error, Result};

/// A state functional `K(u)` with a linear growth bound `|K(u)| ≤ P ‖u‖`.
#[derive(Debug, Clone, PartialEq)]
pub enum Functional {
    /// `A ‖u‖`.
    NormScaled(f64),
    /// `A ⟨ψ, u⟩`.
    InnerProduct(f64, Shape),
}

impl Functional {
    pub fn norm_scaled(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::invalid("functional amplitude must be finite"));
        }
        Ok(Self::NormScaled(a))
    }

    pub fn inner_product(a: f64, psi: Shape) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::invalid("functional amplitude must be finite"));
        }
        Ok(Self::InnerProduct(a, psi))
    }

    pub fn amplitude(&self) -> f64 {
        match self {
            Self::NormScaled(a) | Self::InnerProduct(a, _) => *a,
        }
    }

    /// The constant `P`.
    pub fn bound(&self) -> f64 {
        match self {
            Self::NormScaled(a) => a.abs(),
            Self::InnerProduct(a, psi) => a.abs() * psi.l2_norm(),
        }
    }

    /// Projects any shape onto `n_modes` so evaluation is a dot product.
    pub fn prepare(&self, n_modes: usize) -> Result<PreparedFunctional> {
        Ok(match self {
            Self::NormScaled(a) => PreparedFunctional::NormScaled(*a),
            Self::InnerProduct(a, psi) => {
                PreparedFunctional::InnerProduct(*a, psi.project(n_modes)?.into_coeffs())
            }
        })
    }

    pub fn evaluate(&self, u: &ModalProfile) -> Result<f64> {
        Ok(self.prepare(u.len())?.evaluate(u.coeffs(), u.l2_norm()))
    }
}

/// A functional bound to a mode count.
#[derive(Debug, Clone, PartialEq)]
pub enum PreparedFunctional {
    NormScaled(f64),
    InnerProduct(f64, Vec<f64>),
}

impl PreparedFunctional {
    /// `norm` is the state norm used by `NormScaled`; inner products use the
    /// retained coefficients.
    pub fn evaluate(&self, coeffs: &[f64], norm: f64) -> f64 {
        match self {
            Self::NormScaled(a) => a * norm,
            Self::InnerProduct(a, psi) => a * psi.iter().zip(coeffs).map(|(x, y)| x * y).sum::<f64>(),
        }
    }
}

//! Exact steady-state amplification of a static kernel.
//!
//! For a time-invariant input `v̄ = Σ v̄_n φ_n` the equilibrium of
//! `p w'' - q w + v̄ = 0`, `w(0) = 0`, `w(1) = ∫ k w` is
//!
//! ```text
//! w = A h + Σ v̄_n/λ_n φ_n,   A = Σ k̂_n v̄_n/λ_n / (h(1) - ∫ k h)
//! ```
//!
//! with `h = x` for `q = 0` and `h = sinh(μπx)` for `q > 0`, so `‖w‖² = v̄ᵀ G v̄`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::controllers::StaticKernel;
use crate::sim::PlantParams;
use crate::spectral::Shape;
use crate::{Error, Result};

/// `|h(1) - ∫ k h|` below this (relative to `h(1)`) is a singular kernel.
pub const DENOMINATOR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    /// `G` on the first `m` modes.
    pub form: DMatrix<f64>,
    pub denominator: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StaticGain {
    pub m: usize,
    /// `sqrt(λ_max(G))`.
    pub gain: f64,
    pub denominator: f64,
}

/// The homogeneous solution `h` vanishing at `x = 0`.
pub fn homogeneous_shape(plant: &PlantParams) -> Result<Shape> {
    if plant.q < 0.0 {
        return Err(Error::Domain {
            what: "q",
            value: plant.q,
            domain: "[0, inf)",
        });
    }
    if plant.q == 0.0 {
        Ok(Shape::linear())
    } else {
        Shape::sinh((plant.q / plant.p).sqrt())
    }
}

pub fn steady_state(k: &StaticKernel, plant: &PlantParams, m: usize) -> Result<SteadyState> {
    plant.validate()?;
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    let h = homogeneous_shape(plant)?;
    let h_one = h.value(1.0);
    let den = h_one - k.modal_product(&h);
    if den.abs() <= DENOMINATOR_TOL * h_one.abs() {
        return Err(Error::NonzeroEquilibrium(den));
    }
    let lambda: Vec<f64> = (1..=m).map(|n| plant.eigenvalue(n)).collect();
    let a = DVector::from_iterator(
        m,
        (0..m).map(|i| k.coeffs().get(i).copied().unwrap_or(0.0) / (lambda[i] * den)),
    );
    let g = DVector::from_iterator(m, (0..m).map(|i| h.coefficient(i + 1) / lambda[i]));
    let h_sq = h.l2_norm().powi(2);
    let mut form = DMatrix::from_diagonal(&DVector::from_iterator(
        m,
        lambda.iter().map(|l| 1.0 / (l * l)),
    ));
    form += &a * g.transpose() + &g * a.transpose() + (&a * a.transpose()) * h_sq;
    Ok(SteadyState {
        form,
        denominator: den,
    })
}

/// `sup ‖w‖/‖v̄‖` over inputs spanned by the first `m` modes.
pub fn static_gain_exact(k: &StaticKernel, plant: &PlantParams, m: usize) -> Result<StaticGain> {
    let ss = steady_state(k, plant, m)?;
    let top = ss
        .form
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(StaticGain {
        m,
        gain: top.max(0.0).sqrt(),
        denominator: ss.denominator,
    })
}

/// `‖w‖` for one input `v̄` given by its first modal coefficients.
pub fn steady_state_norm(k: &StaticKernel, plant: &PlantParams, input: &[f64]) -> Result<f64> {
    let ss = steady_state(k, plant, input.len())?;
    let v = DVector::from_column_slice(input);
    Ok((v.transpose() * &ss.form * &v)[(0, 0)].max(0.0).sqrt())
}

/// `1/(pπ² + q)`, the gain of the zero kernel.
pub fn zero_kernel_gain(plant: &PlantParams) -> f64 {
    1.0 / (plant.p * PI * PI + plant.q)
}

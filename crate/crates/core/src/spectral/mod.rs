//! Fourier-sine representation of profiles on `[0, 1]`.
//!
//! The orthonormal basis is `phi_n(x) = sqrt(2) sin(n pi x)`, `n >= 1`. Every
//! profile is stored by its coefficients in this basis, and every shape used
//! by the controllers or the nonlocal term knows its own projection onto it.

mod profile;
pub mod quadrature;
mod shape;

pub use profile::ModalProfile;
pub use shape::{Residual, Shape, ShapeKind, TabulatedShape, SINH_MAX};

use std::f64::consts::PI;

/// Below this distance from resonance `sine_overlap` returns its limit value.
pub const RESONANCE_TOL: f64 = 1e-9;

/// `∫₀¹ sin(w x) sin(n π x) dx`.
pub fn sine_overlap(w: f64, n: usize) -> f64 {
    let npi = n as f64 * PI;
    let minus = w - npi;
    let plus = w + npi;
    let resonant = if minus.abs() < RESONANCE_TOL {
        0.5
    } else {
        minus.sin() / (2.0 * minus)
    };
    let anti = if plus.abs() < RESONANCE_TOL {
        0.5
    } else {
        plus.sin() / (2.0 * plus)
    };
    resonant - anti
}

/// `⟨φ_n, φ_n'⟩` style helper: the basis function value `√2 sin(nπx)`.
#[inline]
pub fn basis(n: usize, x: f64) -> f64 {
    std::f64::consts::SQRT_2 * (n as f64 * PI * x).sin()
}

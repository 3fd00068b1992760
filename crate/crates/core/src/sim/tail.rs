//! Quasi-static energy of the modes beyond the retained `N`.
//!
//! A mode `m > N` relaxes at rate `λ_m` toward `g_m / λ_m`, where
//! `g_m = e_m U + Σ_j D_{j,m} F_j` collects the boundary input and the
//! nonlocal forcing. Its energy is therefore the quadratic form `zᵀ S z` in
//! `z = (U, F_1, ..., F_J)`.

use std::f64::consts::{PI, SQRT_2};

use super::config::PlantParams;
use crate::spectral::Shape;
use crate::{Error, Result};

/// Modes beyond `N` summed explicitly; the boundary series gets an integral
/// remainder past that.
pub const TAIL_EXTRA_MODES: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct TailForm {
    dim: usize,
    s: Vec<f64>,
}

impl TailForm {
    pub fn new(plant: &PlantParams, n_modes: usize, shapes: &[Shape]) -> Result<Self> {
        let first = n_modes + 1;
        let last = n_modes + TAIL_EXTRA_MODES;
        if plant.eigenvalue(first) <= 0.0 {
            return Err(Error::invalid(format!(
                "tail closure needs λ_m > 0 beyond N = {n_modes}"
            )));
        }
        let dim = shapes.len() + 1;
        let mut s = vec![0.0; dim * dim];
        let mut row = vec![0.0; dim];
        // smallest terms first
        for m in (first..=last).rev() {
            let inv = 1.0 / plant.eigenvalue(m);
            row[0] = plant.boundary_coeff(m) * inv;
            for (j, shape) in shapes.iter().enumerate() {
                row[j + 1] = overlap(shape, m) * inv;
            }
            for a in 0..dim {
                for b in a..dim {
                    s[a * dim + b] += row[a] * row[b];
                }
            }
        }
        s[0] += 2.0 / (PI * PI * (last as f64 + 0.5));
        for a in 0..dim {
            for b in 0..a {
                s[a * dim + b] = s[b * dim + a];
            }
        }
        Ok(Self { dim, s })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `S_{ab}`.
    pub fn entry(&self, a: usize, b: usize) -> f64 {
        self.s[a * self.dim + b]
    }

    /// `zᵀ S z`, clamped at zero.
    pub fn energy(&self, z: &[f64]) -> f64 {
        debug_assert_eq!(z.len(), self.dim);
        let mut acc = 0.0;
        for a in 0..self.dim {
            let row: f64 = self.s[a * self.dim..(a + 1) * self.dim]
                .iter()
                .zip(z)
                .map(|(s, z)| s * z)
                .sum();
            acc += z[a] * row;
        }
        acc.max(0.0)
    }
}

/// `⟨φ, φ_m⟩`; tabulated shapes use the leading asymptotic term.
fn overlap(shape: &Shape, m: usize) -> f64 {
    if shape.has_closed_form() {
        shape.coefficient(m)
    } else {
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        SQRT_2 * sign * shape.value(1.0) / (m as f64 * PI)
    }
}

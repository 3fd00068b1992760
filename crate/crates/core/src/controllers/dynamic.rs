use super::functional::{Functional, PreparedFunctional};
use super::kernel::StaticKernel;
use crate::spectral::{ModalProfile, Shape};
use crate::{Error, Result};

/// `|φ(0)|` above this is rejected.
const ORIGIN_TOL: f64 = 1e-12;

/// One separable term `φ_i(x) K_i(u)` together with its integrator rate `ω_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicTerm {
    pub shape: Shape,
    pub functional: Functional,
    pub omega: f64,
}

impl DynamicTerm {
    pub fn new(shape: Shape, functional: Functional, omega: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::Domain {
                what: "omega",
                value: omega,
                domain: "(0, inf)",
            });
        }
        let origin = shape.value(0.0);
        if origin.abs() > ORIGIN_TOL {
            return Err(Error::invalid(format!(
                "term shape must vanish at x = 0, got {origin}"
            )));
        }
        Ok(Self {
            shape,
            functional,
            omega,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Prepared {
    phi_hat: Vec<f64>,
    phi_one: f64,
    k_phi: f64,
    k_phi_modal: f64,
    functional: PreparedFunctional,
    omega_sq: f64,
}

/// The controller
///
/// ```text
/// U = Σ φ_i(1) ξ_i + ∫ k u - Σ ξ_i ∫ k φ_i,   ξ_i' = -ω_i² ξ_i + K_i(u)
/// ```
///
/// bound to a fixed number of retained modes. The integrator states live with
/// the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicController {
    kernel: StaticKernel,
    terms: Vec<DynamicTerm>,
    n_modes: usize,
    prepared: Vec<Prepared>,
}

impl DynamicController {
    pub fn new(kernel: StaticKernel, terms: Vec<DynamicTerm>, n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::invalid("controller needs at least one mode"));
        }
        let prepared = terms
            .iter()
            .map(|t| {
                Ok(Prepared {
                    phi_hat: t.shape.project(n_modes)?.into_coeffs(),
                    phi_one: t.shape.value(1.0),
                    k_phi: kernel.product(&t.shape),
                    k_phi_modal: kernel.modal_product(&t.shape),
                    functional: t.functional.prepare(n_modes)?,
                    omega_sq: t.omega * t.omega,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            kernel,
            terms,
            n_modes,
            prepared,
        })
    }

    pub fn kernel(&self) -> &StaticKernel {
        &self.kernel
    }

    pub fn terms(&self) -> &[DynamicTerm] {
        &self.terms
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn n_states(&self) -> usize {
        self.terms.len()
    }

    /// `⟨φ_i, φ_n⟩`, `n = 1..=N`.
    pub fn shape_coeffs(&self, i: usize) -> &[f64] {
        &self.prepared[i].phi_hat
    }

    /// `φ_i(1)`.
    pub fn boundary_value(&self, i: usize) -> f64 {
        self.prepared[i].phi_one
    }

    /// `∫ k φ_i` as used by the control law.
    pub fn kernel_product(&self, i: usize) -> f64 {
        self.prepared[i].k_phi
    }

    /// `∫ k φ_i - Σ_{n ≤ N_k} k̂_n ⟨φ_i, φ_n⟩`: the part of the product that the
    /// kernel's retained modes miss. Zero for kernels with finitely many modes.
    pub fn modal_tail(&self, i: usize) -> f64 {
        self.prepared[i].k_phi - self.prepared[i].k_phi_modal
    }

    pub fn omega_sq(&self, i: usize) -> f64 {
        self.prepared[i].omega_sq
    }

    fn check_states(&self, xi: &[f64]) {
        assert_eq!(
            xi.len(),
            self.terms.len(),
            "controller has {} states",
            self.terms.len()
        );
    }

    /// Boundary input from retained coefficients and integrator states.
    pub fn control(&self, coeffs: &[f64], xi: &[f64]) -> f64 {
        self.check_states(xi);
        let mut u = self.kernel.control(coeffs);
        for (p, x) in self.prepared.iter().zip(xi) {
            u += x * (p.phi_one - p.k_phi);
        }
        u
    }

    pub fn control_dynamic(&self, u: &ModalProfile, xi: &[f64]) -> f64 {
        self.control(u.coeffs(), xi)
    }

    /// `K_i(u)` for every term; `norm` feeds the norm-scaled functionals.
    pub fn functional_values(&self, coeffs: &[f64], norm: f64) -> Vec<f64> {
        self.prepared
            .iter()
            .map(|p| p.functional.evaluate(coeffs, norm))
            .collect()
    }

    /// `ξ_i' = -ω_i² ξ_i + K_i(u)`.
    pub fn state_derivative_with_norm(&self, coeffs: &[f64], norm: f64, xi: &[f64]) -> Vec<f64> {
        self.check_states(xi);
        self.prepared
            .iter()
            .zip(xi)
            .map(|(p, x)| -p.omega_sq * x + p.functional.evaluate(coeffs, norm))
            .collect()
    }

    pub fn state_derivative(&self, u: &ModalProfile, xi: &[f64]) -> Vec<f64> {
        self.state_derivative_with_norm(u.coeffs(), u.l2_norm(), xi)
    }
}

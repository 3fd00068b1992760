use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::special::i1_ratio;
use crate::spectral::quadrature::{CompositeRule, DEFAULT_PANELS, DEFAULT_POINTS};
use crate::spectral::{basis, ModalProfile, Shape, ShapeKind};
use crate::{Error, Result};

/// Largest `(r - q)/p` accepted for backstepping; keeps the Bessel argument
/// inside the series domain `[0, 60]`.
pub const BACKSTEPPING_MAX_RATE: f64 = 3600.0;

/// Panels of the rule used for pointwise kernel products.
const PRODUCT_PANELS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelKind {
    Zero,
    SingleMode { r: f64 },
    Backstepping { r: f64, p: f64, q: f64 },
    Custom,
}

/// A static boundary feedback `U = ∫ k(x) u(x) dx`, stored as `k̂_n = ⟨k, φ_n⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticKernel {
    coeffs: Vec<f64>,
    kind: KernelKind,
}

impl StaticKernel {
    pub fn zero(n_modes: usize) -> Self {
        Self {
            coeffs: vec![0.0; n_modes.max(1)],
            kind: KernelKind::Zero,
        }
    }

    /// `k(x) = -π r sin(πx)`.
    pub fn single_mode(r: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::Domain {
                what: "r",
                value: r,
                domain: "[0, inf)",
            });
        }
        if r == 0.0 {
            return Ok(Self::zero(1));
        }
        Ok(Self {
            coeffs: vec![-PI * r / SQRT_2],
            kind: KernelKind::SingleMode { r },
        })
    }

    /// `k(x) = -a x I₁(z)/z`, `z = sqrt(a(1 - x²))`, `a = (r - q)/p`, projected
    /// onto `n_modes` modes.
    pub fn backstepping(r: f64, p: f64, q: f64, n_modes: usize) -> Result<Self> {
        let panels = DEFAULT_PANELS.max(n_modes.next_power_of_two());
        Self::backstepping_with_panels(r, p, q, n_modes, panels)
    }

    /// As [`StaticKernel::backstepping`] with an explicit quadrature resolution.
    pub fn backstepping_with_panels(
        r: f64,
        p: f64,
        q: f64,
        n_modes: usize,
        panels: usize,
    ) -> Result<Self> {
        let a = backstepping_rate(r, p, q)?;
        if n_modes == 0 || panels == 0 {
            return Err(Error::invalid("backstepping needs at least one mode and panel"));
        }
        let rule = CompositeRule::new(panels, DEFAULT_POINTS);
        let values: Vec<f64> = rule
            .nodes()
            .iter()
            .map(|&x| backstepping_value(a, x))
            .collect::<Result<_>>()?;
        let coeffs = (1..=n_modes)
            .map(|n| rule.integrate_sampled(&values, |x| basis(n, x)))
            .collect();
        Ok(Self {
            coeffs,
            kind: KernelKind::Backstepping { r, p, q },
        })
    }

    /// A kernel given directly by its modal coefficients.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        let profile = ModalProfile::new(coeffs)?;
        Ok(Self {
            coeffs: profile.into_coeffs(),
            kind: KernelKind::Custom,
        })
    }

    /// The kernel `k = Σ k̂_n φ_n` projected from a shape.
    pub fn from_shape(shape: &Shape, n_modes: usize) -> Result<Self> {
        Self::from_coeffs(shape.project(n_modes)?.into_coeffs())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&k| k == 0.0)
    }

    /// Pointwise value, available when the kernel has a closed form.
    pub fn value(&self, x: f64) -> Option<f64> {
        match self.kind {
            KernelKind::Zero => Some(0.0),
            KernelKind::SingleMode { r } => Some(-PI * r * (PI * x).sin()),
            KernelKind::Backstepping { r, p, q } => {
                let a = backstepping_rate(r, p, q).ok()?;
                backstepping_value(a, x).ok()
            }
            KernelKind::Custom => None,
        }
    }

    /// `U = Σ k̂_n c_n` over shared indices.
    pub fn control(&self, coeffs: &[f64]) -> f64 {
        self.coeffs.iter().zip(coeffs).map(|(k, c)| k * c).sum()
    }

    pub fn control_static(&self, u: &ModalProfile) -> f64 {
        self.control(u.coeffs())
    }

    /// `Σ_{n ≤ N_k} k̂_n ⟨φ, φ_n⟩`.
    pub fn modal_product(&self, shape: &Shape) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, k)| k * shape.coefficient(i + 1))
            .sum()
    }

    /// `∫ k φ dx`. Exact for kernels with finitely many modes; quadrature of
    /// the closed form for backstepping kernels.
    pub fn product(&self, shape: &Shape) -> f64 {
        match self.kind {
            KernelKind::Backstepping { r, p, q } => {
                let a = match backstepping_rate(r, p, q) {
                    Ok(a) => a,
                    Err(_) => return self.modal_product(shape),
                };
                let k = |x: f64| backstepping_value(a, x).unwrap_or(0.0);
                match shape.kind() {
                    ShapeKind::Tabulated(t) => {
                        CompositeRule::standard().integrate_sampled(t.node_values(), k)
                    }
                    _ => CompositeRule::new(PRODUCT_PANELS, DEFAULT_POINTS)
                        .integrate(|x| k(x) * shape.value(x)),
                }
            }
            _ => self.modal_product(shape),
        }
    }
}

fn backstepping_rate(r: f64, p: f64, q: f64) -> Result<f64> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Domain {
            what: "r",
            value: r,
            domain: "[0, inf)",
        });
    }
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain {
            what: "p",
            value: p,
            domain: "(0, inf)",
        });
    }
    if !(q < 0.0 && q.is_finite()) {
        return Err(Error::Domain {
            what: "q",
            value: q,
            domain: "(-inf, 0)",
        });
    }
    let a = (r - q) / p;
    if a > BACKSTEPPING_MAX_RATE {
        return Err(Error::Domain {
            what: "(r - q)/p",
            value: a,
            domain: "(0, 3600]",
        });
    }
    Ok(a)
}

fn backstepping_value(a: f64, x: f64) -> Result<f64> {
    let z = (a * (1.0 - x * x)).max(0.0).sqrt();
    Ok(-a * x * i1_ratio(z)?)
}

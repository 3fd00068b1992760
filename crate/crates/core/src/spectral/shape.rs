use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::sync::Arc;

use super::quadrature::CompositeRule;
use super::{basis, sine_overlap, ModalProfile};
use crate::{Error, Result};

/// Largest `β` accepted by `Sinh(β)`; `sinh(2β)` overflows just above 355.
pub const SINH_MAX: f64 = 350.0;

/// A function on `[0, 1]`.
///
/// Closed forms (`sin βx`, `sinh βx`, `x`) carry exact projections, norms and
/// second derivatives. Tabulated shapes are sampled on the standard composite
/// Gauss-Legendre rule and only support quadrature-based operations.
#[derive(Debug, Clone, PartialEq)]
pub struct Shape(Repr);

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Sine(f64),
    Sinh(f64),
    Linear,
    Tabulated(Arc<TabulatedShape>),
}

/// Borrowed view of a shape for pattern matching.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeKind<'a> {
    Sine(f64),
    Sinh(f64),
    Linear,
    Tabulated(&'a TabulatedShape),
}

fn check_rate(beta: f64) -> Result<()> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::Domain {
            what: "beta",
            value: beta,
            domain: "[0, inf)",
        });
    }
    Ok(())
}

impl Shape {
    /// `sin(βx)`.
    pub fn sine(beta: f64) -> Result<Self> {
        check_rate(beta)?;
        Ok(Self(Repr::Sine(beta)))
    }

    /// `sinh(βx)`, with `β ≤ 350`.
    pub fn sinh(beta: f64) -> Result<Self> {
        check_rate(beta)?;
        if beta > SINH_MAX {
            return Err(Error::SinhOverflow(beta));
        }
        Ok(Self(Repr::Sinh(beta)))
    }

    /// `x`.
    pub fn linear() -> Self {
        Self(Repr::Linear)
    }

    pub fn tabulated(table: TabulatedShape) -> Self {
        Self(Repr::Tabulated(Arc::new(table)))
    }

    pub fn kind(&self) -> ShapeKind<'_> {
        match &self.0 {
            Repr::Sine(b) => ShapeKind::Sine(*b),
            Repr::Sinh(b) => ShapeKind::Sinh(*b),
            Repr::Linear => ShapeKind::Linear,
            Repr::Tabulated(t) => ShapeKind::Tabulated(t),
        }
    }

    pub fn has_closed_form(&self) -> bool {
        !matches!(self.0, Repr::Tabulated(_))
    }

    pub fn value(&self, x: f64) -> f64 {
        match &self.0 {
            Repr::Sine(b) => (b * x).sin(),
            Repr::Sinh(b) => (b * x).sinh(),
            Repr::Linear => x,
            Repr::Tabulated(t) => t.value(x),
        }
    }

    pub fn second_derivative(&self, x: f64) -> Result<f64> {
        match &self.0 {
            Repr::Sine(b) => Ok(-b * b * (b * x).sin()),
            Repr::Sinh(b) => Ok(b * b * (b * x).sinh()),
            Repr::Linear => Ok(0.0),
            Repr::Tabulated(_) => Err(Error::NoDerivative),
        }
    }

    /// `⟨s, φ_n⟩` for a single index.
    pub fn coefficient(&self, n: usize) -> f64 {
        let npi = n as f64 * PI;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        match &self.0 {
            Repr::Sine(b) => SQRT_2 * sine_overlap(*b, n),
            Repr::Sinh(b) => SQRT_2 * npi * sign * b.sinh() / (b * b + npi * npi),
            Repr::Linear => SQRT_2 * sign / npi,
            Repr::Tabulated(t) => t.coefficient(n),
        }
    }

    /// Coefficients `⟨s, φ_n⟩` for `n = 1..=n_modes`.
    pub fn project(&self, n_modes: usize) -> Result<ModalProfile> {
        if n_modes == 0 {
            return Err(Error::invalid("projection needs at least one mode"));
        }
        ModalProfile::new((1..=n_modes).map(|n| self.coefficient(n)).collect())
    }

    /// `‖s‖` on `[0, 1]`.
    pub fn l2_norm(&self) -> f64 {
        match &self.0 {
            Repr::Sine(b) => sine_norm_sq(*b).sqrt(),
            Repr::Sinh(b) => sinh_norm_sq(*b).sqrt(),
            Repr::Linear => 1.0 / 3f64.sqrt(),
            Repr::Tabulated(t) => t.l2_norm(),
        }
    }

    /// `p s'' - (q - w²) s`, which for closed forms is a multiple of `s`.
    pub fn residual_shape(&self, p: f64, q: f64, w: f64) -> Result<Residual> {
        let shift = w * w - q;
        let scale = match &self.0 {
            Repr::Sine(b) => shift - p * b * b,
            Repr::Sinh(b) => shift + p * b * b,
            Repr::Linear => shift,
            Repr::Tabulated(_) => return Err(Error::NoDerivative),
        };
        // cancellation noise from a canonical β = sqrt(shift/p)
        let scale = if scale.abs() <= 8.0 * f64::EPSILON * shift.abs() {
            0.0
        } else {
            scale
        };
        Ok(Residual {
            scale,
            base: self.clone(),
        })
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Sine(b) => write!(f, "sin({b}x)"),
            Repr::Sinh(b) => write!(f, "sinh({b}x)"),
            Repr::Linear => write!(f, "x"),
            Repr::Tabulated(_) => write!(f, "tabulated"),
        }
    }
}

/// `∫₀¹ sin²(βx) dx`.
fn sine_norm_sq(b: f64) -> f64 {
    if b < 0.1 {
        let b2 = b * b;
        b2 * (1.0 / 3.0 + b2 * (-1.0 / 15.0 + b2 * (2.0 / 315.0 - b2 / 2835.0)))
    } else {
        (2.0 * b - (2.0 * b).sin()) / (4.0 * b)
    }
}

/// `∫₀¹ sinh²(βx) dx`.
fn sinh_norm_sq(b: f64) -> f64 {
    if b < 0.1 {
        let b2 = b * b;
        b2 * (1.0 / 3.0 + b2 * (1.0 / 15.0 + b2 * (2.0 / 315.0 + b2 / 2835.0)))
    } else {
        ((2.0 * b).sinh() - 2.0 * b) / (4.0 * b)
    }
}

/// `scale · base`, the image of a closed-form shape under `p d²/dx² - (q - w²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub scale: f64,
    pub base: Shape,
}

impl Residual {
    pub fn norm(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.scale.abs() * self.base.l2_norm()
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        self.scale * self.base.value(x)
    }
}

/// A shape given by samples at the nodes of [`CompositeRule::standard`] plus
/// its endpoint values.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedShape {
    values: Vec<f64>,
    left: f64,
    right: f64,
}

impl TabulatedShape {
    pub fn from_fn<F: Fn(f64) -> f64>(f: F) -> Result<Self> {
        let rule = CompositeRule::standard();
        let values = rule.nodes().iter().map(|&x| f(x)).collect();
        Self::from_node_values(values, f(0.0), f(1.0))
    }

    pub fn from_node_values(values: Vec<f64>, left: f64, right: f64) -> Result<Self> {
        let expected = CompositeRule::standard().nodes().len();
        if values.len() != expected {
            return Err(Error::invalid(format!(
                "tabulated shape needs {expected} node values, got {}",
                values.len()
            )));
        }
        if values.iter().chain([&left, &right]).any(|v| !v.is_finite()) {
            return Err(Error::invalid("tabulated shape has non-finite samples"));
        }
        Ok(Self {
            values,
            left,
            right,
        })
    }

    pub fn node_values(&self) -> &[f64] {
        &self.values
    }

    fn coefficient(&self, n: usize) -> f64 {
        CompositeRule::standard().integrate_sampled(&self.values, |x| basis(n, x))
    }

    fn l2_norm(&self) -> f64 {
        CompositeRule::standard()
            .weights()
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// Degree-7 Lagrange interpolation on the containing panel.
    fn value(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return self.left;
        }
        if x >= 1.0 {
            return self.right;
        }
        let rule = CompositeRule::standard();
        let k = ((x * rule.panels as f64) as usize).min(rule.panels - 1);
        let lo = k * rule.points;
        let xs = &rule.nodes()[lo..lo + rule.points];
        let ys = &self.values[lo..lo + rule.points];
        let mut acc = 0.0;
        for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
            let mut li = 1.0;
            for (j, &xj) in xs.iter().enumerate() {
                if i != j {
                    li *= (x - xj) / (xi - xj);
                }
            }
            acc += li * yi;
        }
        acc
    }
}

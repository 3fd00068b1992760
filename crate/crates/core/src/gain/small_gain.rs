//! Small-gain conditions for closing the loop around a nonlinearity.

use std::f64::consts::PI;

use serde::Serialize;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    /// Left-hand side of the condition `lhs < 1`.
    pub lhs: f64,
}

impl Verdict {
    fn of(lhs: f64) -> Self {
        Self {
            pass: lhs < 1.0,
            lhs,
        }
    }
}

/// `M γ/(pπ²) < 1`, with the loop gain written as `γ/(pπ²)`.
pub fn small_gain_static(gamma: f64, p: f64, m: f64) -> Result<Verdict> {
    if !(gamma > 0.0) || !(p > 0.0) || !(m >= 0.0) {
        return Err(Error::invalid(format!(
            "static small-gain needs γ > 0, p > 0, M ≥ 0 (got {gamma}, {p}, {m})"
        )));
    }
    Ok(Verdict::of(m * gamma / (p * PI * PI)))
}

/// One separable term as seen by the dynamic condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermBound {
    /// `P_i` in `|K_i(u)| ≤ P_i ‖u‖`.
    pub bound: f64,
    pub omega: f64,
    /// `‖φ_i‖`.
    pub shape_norm: f64,
    /// `‖p φ_i'' - (q - ω_i²) φ_i‖`.
    pub residual_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignCheck {
    /// Gain numerator of the base kernel; `None` when unknown.
    pub gamma: Option<f64>,
    pub p: f64,
    pub q: f64,
    pub remainder: f64,
    pub terms: Vec<TermBound>,
}

impl DesignCheck {
    fn validate(&self) -> Result<()> {
        let norms_ok = self.terms.iter().all(|t| {
            t.bound >= 0.0 && t.shape_norm >= 0.0 && t.residual_norm >= 0.0 && t.omega > 0.0
        });
        if !norms_ok || !(self.p > 0.0) || !(self.remainder >= 0.0) {
            return Err(Error::invalid("design check has a negative norm or bad ω, p, M"));
        }
        Ok(())
    }

    /// `M + Σ ω_i⁻² P_i ‖residual_i‖`, the part multiplied by the gain.
    pub fn gain_weighted(&self) -> f64 {
        self.remainder
            + self
                .terms
                .iter()
                .map(|t| t.bound * t.residual_norm / (t.omega * t.omega))
                .sum::<f64>()
    }

    /// `Σ ω_i⁻² P_i ‖φ_i‖`.
    pub fn direct(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.bound * t.shape_norm / (t.omega * t.omega))
            .sum()
    }
}

/// `γ/(pπ²)(M + Σ ω⁻² P ‖res‖) + Σ ω⁻² P ‖φ‖ < 1`. `None` when the gain is
/// needed but unknown.
pub fn small_gain_dynamic(chk: &DesignCheck) -> Result<Option<Verdict>> {
    chk.validate()?;
    let weighted = chk.gain_weighted();
    let scaled = if weighted == 0.0 {
        0.0
    } else {
        match chk.gamma {
            Some(g) => g / (chk.p * PI * PI) * weighted,
            None => return Ok(None),
        }
    };
    Ok(Some(Verdict::of(scaled + chk.direct())))
}

/// `|A| < pπ²/(γ ‖φ‖)` for a single term `A φ(x) ‖u‖`.
pub fn static_amplitude_threshold(gamma: f64, p: f64, shape_norm: f64) -> f64 {
    p * PI * PI / (gamma * shape_norm)
}

/// `|A| < ω²/‖φ‖` for a single term with a canonical shape.
pub fn dynamic_amplitude_threshold(omega: f64, shape_norm: f64) -> f64 {
    omega * omega / shape_norm
}

/// Frequency above which the dynamic single-term threshold exceeds the
/// best static one, `sqrt(pπ³/sqrt(π² - 6))`.
pub fn crossover_frequency(p: f64) -> f64 {
    (p * PI.powi(3) / (PI * PI - 6.0).sqrt()).sqrt()
}

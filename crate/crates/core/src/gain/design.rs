//! Evaluates every applicable small-gain condition for a configured loop.

use std::f64::consts::PI;

use serde::Serialize;

use super::achievable::b_achievable;
use super::lower::g_lower;
use super::small_gain::{
    dynamic_amplitude_threshold, small_gain_dynamic, static_amplitude_threshold, DesignCheck,
    TermBound,
};
use crate::controllers::{KernelKind, StaticKernel};
use crate::sim::{ControlLaw, Nonlocal, PlantParams};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub applicable: bool,
    pub pass: Option<bool>,
    pub lhs: Option<f64>,
    /// Gain numerator `γ` (loop gain `γ/(pπ²)`) used by the condition.
    pub gamma: Option<f64>,
    /// Largest admissible `P` of a single nonlocal term, when meaningful.
    pub amplitude_threshold: Option<f64>,
    pub note: Option<String>,
}

impl Condition {
    fn skipped(name: &'static str, note: impl Into<String>) -> Self {
        Self {
            name,
            applicable: false,
            pass: None,
            lhs: None,
            gamma: None,
            amplitude_threshold: None,
            note: Some(note.into()),
        }
    }

    fn evaluated(name: &'static str, lhs: f64, gamma: Option<f64>) -> Self {
        Self {
            name,
            applicable: true,
            pass: Some(lhs < 1.0),
            lhs: Some(lhs),
            gamma,
            amplitude_threshold: None,
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignReport {
    pub conditions: Vec<Condition>,
    /// Condition that decides the verdict for the configured controller.
    pub deciding: &'static str,
    pub pass: bool,
}

impl DesignReport {
    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// `γ` of a static kernel when a closed-form gain is known.
pub fn kernel_gamma(k: &StaticKernel, plant: &PlantParams) -> Result<Option<f64>> {
    let ppi2 = plant.p * PI * PI;
    let lambda1 = ppi2 + plant.q;
    Ok(match k.kind() {
        KernelKind::Zero if lambda1 > 0.0 => Some(ppi2 / lambda1),
        KernelKind::SingleMode { r } => match plant.mu() {
            Some(mu) => Some(ppi2 * b_achievable(r, mu)?.value / lambda1),
            None => None,
        },
        _ => None,
    })
}

fn single_term_norm(nonlocal: &Nonlocal) -> Option<f64> {
    match nonlocal.terms.as_slice() {
        [t] if nonlocal.remainder == 0.0 => Some(t.shape.l2_norm()),
        _ => None,
    }
}

fn static_condition(
    name: &'static str,
    gamma: Option<f64>,
    plant: &PlantParams,
    growth: f64,
    single: Option<f64>,
    missing: &str,
) -> Condition {
    match gamma {
        Some(g) => {
            let mut c = Condition::evaluated(name, growth * g / (plant.p * PI * PI), Some(g));
            c.amplitude_threshold = single.map(|n| static_amplitude_threshold(g, plant.p, n));
            c
        }
        None => Condition::skipped(name, missing),
    }
}

pub fn design_check(plant: &PlantParams, nonlocal: &Nonlocal, law: &ControlLaw) -> Result<DesignReport> {
    plant.validate()?;
    let ppi2 = plant.p * PI * PI;
    let lambda1 = ppi2 + plant.q;
    // ‖f(u)‖ ≤ growth ‖u‖
    let growth = nonlocal.remainder
        + nonlocal
            .terms
            .iter()
            .map(|t| t.functional.bound() * t.shape.l2_norm())
            .sum::<f64>();
    let single = single_term_norm(nonlocal);
    let mut conditions = Vec::new();

    let zero_gamma = (lambda1 > 0.0).then(|| ppi2 / lambda1);
    conditions.push(static_condition(
        "open_loop_static",
        zero_gamma,
        plant,
        growth,
        single,
        "open loop is not exponentially stable (pπ² + q ≤ 0)",
    ));

    let base = law.kernel();
    conditions.push(match base {
        Some(k) => static_condition(
            "static_small_gain",
            kernel_gamma(k, plant)?,
            plant,
            growth,
            single,
            "no closed-form gain for this kernel",
        ),
        None => Condition::skipped("static_small_gain", "no feedback kernel"),
    });

    let fundamental = match plant.mu() {
        Some(mu) => Some(ppi2 * g_lower(1, mu)?.sqrt() / lambda1),
        None => None,
    };
    let mut limit = static_condition(
        "static_fundamental_limit",
        fundamental,
        plant,
        growth,
        single,
        "lower gain bound needs q ≥ 0",
    );
    if limit.applicable {
        limit.note = Some("fails means no static kernel can meet the static small-gain condition".into());
    }
    conditions.push(limit);

    match law {
        ControlLaw::Dynamic(ctrl) => {
            let mut terms = Vec::new();
            for t in ctrl.terms() {
                let residual = t.shape.residual_shape(plant.p, plant.q, t.omega)?;
                terms.push(TermBound {
                    bound: t.functional.bound(),
                    omega: t.omega,
                    shape_norm: t.shape.l2_norm(),
                    residual_norm: residual.norm(),
                });
            }
            let chk = DesignCheck {
                gamma: kernel_gamma(ctrl.kernel(), plant)?,
                p: plant.p,
                q: plant.q,
                remainder: nonlocal.remainder,
                terms: terms.clone(),
            };
            conditions.push(match small_gain_dynamic(&chk)? {
                Some(v) => Condition::evaluated("dynamic_small_gain", v.lhs, chk.gamma),
                None => Condition::skipped(
                    "dynamic_small_gain",
                    "residual or remainder present and the base kernel gain is unknown",
                ),
            });
            conditions.push(match terms.as_slice() {
                [t] if t.residual_norm == 0.0 && nonlocal.remainder == 0.0 => {
                    let mut c = Condition::evaluated(
                        "dynamic_single_term_threshold",
                        t.bound * t.shape_norm / (t.omega * t.omega),
                        None,
                    );
                    c.amplitude_threshold = Some(dynamic_amplitude_threshold(t.omega, t.shape_norm));
                    c
                }
                _ => Condition::skipped(
                    "dynamic_single_term_threshold",
                    "needs exactly one canonical term and M = 0",
                ),
            });
        }
        _ => {
            conditions.push(Condition::skipped("dynamic_small_gain", "no dynamic controller"));
            conditions.push(Condition::skipped(
                "dynamic_single_term_threshold",
                "no dynamic controller",
            ));
        }
    }

    let deciding = match law {
        ControlLaw::OpenLoop => "open_loop_static",
        ControlLaw::Static(_) => "static_small_gain",
        ControlLaw::Dynamic(_) => "dynamic_small_gain",
    };
    let pass = conditions
        .iter()
        .find(|c| c.name == deciding)
        .and_then(|c| c.pass)
        .unwrap_or(false);
    Ok(DesignReport {
        conditions,
        deciding,
        pass,
    })
}

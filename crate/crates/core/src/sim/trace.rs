use serde::Serialize;

use super::config::ControlLaw;
use crate::{Error, Result};

/// A recorded trajectory.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Trace {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    pub controls: Vec<f64>,
    pub xi: Vec<Vec<f64>>,
    /// Retained modal coefficients per sample, when requested.
    pub snapshots: Option<Vec<Vec<f64>>>,
}

impl Trace {
    pub fn new(snapshots: bool) -> Self {
        Self {
            snapshots: snapshots.then(Vec::new),
            ..Self::default()
        }
    }

    pub fn push(&mut self, t: f64, norm: f64, control: f64, xi: Vec<f64>, snapshot: Option<Vec<f64>>) {
        self.times.push(t);
        self.norms.push(norm);
        self.controls.push(control);
        self.xi.push(xi);
        if let (Some(all), Some(s)) = (self.snapshots.as_mut(), snapshot) {
            all.push(s);
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_time(&self) -> Option<f64> {
        self.times.last().copied()
    }

    pub fn initial_norm(&self) -> Option<f64> {
        self.norms.first().copied()
    }

    pub fn final_norm(&self) -> Option<f64> {
        self.norms.last().copied()
    }

    pub fn n_states(&self) -> usize {
        self.xi.first().map_or(0, Vec::len)
    }

    /// Samples with `t0 ≤ t ≤ t1`.
    pub fn window(&self, t0: f64, t1: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times
            .iter()
            .zip(&self.norms)
            .filter(move |(t, _)| **t >= t0 && **t <= t1)
            .map(|(t, n)| (*t, *n))
    }
}

/// Negated least-squares slope of `ln ‖u‖` over `[t0, t1]`.
pub fn decay_rate(tr: &Trace, t0: f64, t1: f64) -> Result<f64> {
    if !(t1 > t0) {
        return Err(Error::invalid(format!("empty window [{t0}, {t1}]")));
    }
    let pts: Vec<(f64, f64)> = tr.window(t0, t1).collect();
    if pts.len() < 2 {
        return Err(Error::invalid(format!(
            "window [{t0}, {t1}] holds {} samples, need 2",
            pts.len()
        )));
    }
    if let Some((t, n)) = pts.iter().find(|(_, n)| !(*n > 0.0)) {
        return Err(Error::invalid(format!("nonpositive norm {n} at t = {t}")));
    }
    let len = pts.len() as f64;
    let tm = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let ym = pts.iter().map(|p| p.1.ln()).sum::<f64>() / len;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (t, n) in &pts {
        let dx = t - tm;
        sxy += dx * (n.ln() - ym);
        sxx += dx * dx;
    }
    Ok(-sxy / sxx)
}

/// `max_t ‖u[t]‖ / ‖u[0]‖`.
pub fn overshoot(tr: &Trace) -> Result<f64> {
    let first = tr
        .initial_norm()
        .ok_or_else(|| Error::invalid("empty trace"))?;
    if first == 0.0 {
        return Err(Error::invalid("overshoot undefined for a zero initial state"));
    }
    let max = tr.norms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(max / first)
}

/// Largest violation over the samples of
///
/// ```text
/// w(t, 1) = Σ k̂_n ŵ_n,   w = u - Σ φ_i ξ_i
/// ```
///
/// with `w(t, 1) = U - Σ φ_i(1) ξ_i`.
pub fn verify_transformation(tr: &Trace, law: &ControlLaw) -> Result<f64> {
    let snaps = tr
        .snapshots
        .as_ref()
        .ok_or_else(|| Error::invalid("trace has no modal snapshots"))?;
    let mut worst: f64 = 0.0;
    for ((c, xi), u) in snaps.iter().zip(&tr.xi).zip(&tr.controls) {
        let residual = match law {
            ControlLaw::OpenLoop => *u,
            ControlLaw::Static(k) => u - k.control(c),
            ControlLaw::Dynamic(ctrl) => {
                let mut w = c.clone();
                let mut boundary = *u;
                for (i, x) in xi.iter().enumerate() {
                    boundary -= ctrl.boundary_value(i) * x;
                    for (wn, ph) in w.iter_mut().zip(ctrl.shape_coeffs(i)) {
                        *wn -= x * ph;
                    }
                }
                boundary - ctrl.kernel().control(&w)
            }
        };
        worst = worst.max(residual.abs());
    }
    Ok(worst)
}

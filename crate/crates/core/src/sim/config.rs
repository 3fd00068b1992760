use std::f64::consts::PI;

use crate::controllers::{DynamicController, Functional, StaticKernel};
use crate::spectral::{ModalProfile, Shape};
use crate::{Error, Result};

/// `u_t = p u_xx - q u + ...`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PlantParams {
    pub p: f64,
    pub q: f64,
}

impl PlantParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        let out = Self { p, q };
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p.is_finite()) {
            return Err(Error::Domain {
                what: "p",
                value: self.p,
                domain: "(0, inf)",
            });
        }
        if !self.q.is_finite() {
            return Err(Error::invalid("q must be finite"));
        }
        Ok(())
    }

    /// `λ_n = p n²π² + q`.
    pub fn eigenvalue(&self, n: usize) -> f64 {
        let npi = n as f64 * PI;
        self.p * npi * npi + self.q
    }

    /// `μ = sqrt(q/p)/π` for `q ≥ 0`.
    pub fn mu(&self) -> Option<f64> {
        (self.q >= 0.0).then(|| (self.q / self.p).sqrt() / PI)
    }

    /// Coefficient of `U` in the equation for `c_n`: `-√2 p nπ (-1)ⁿ`.
    pub fn boundary_coeff(&self, n: usize) -> f64 {
        let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
        sign * std::f64::consts::SQRT_2 * self.p * n as f64 * PI
    }
}

/// A signal `d(t)` with values in `[-1, 1]` multiplying the nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Disturbance {
    Constant(f64),
    /// `high` on the first half of each period, `low` on the second.
    Square { period: f64, high: f64, low: f64 },
    /// `amplitude · sin(2π freq t)`.
    Sinusoid { freq: f64, amplitude: f64 },
}

impl Default for Disturbance {
    fn default() -> Self {
        Self::Constant(1.0)
    }
}

impl Disturbance {
    pub fn validate(&self) -> Result<()> {
        let in_range = |v: f64| (-1.0..=1.0).contains(&v);
        let ok = match *self {
            Self::Constant(c) => in_range(c),
            Self::Square { period, high, low } => {
                period > 0.0 && period.is_finite() && in_range(high) && in_range(low)
            }
            Self::Sinusoid { freq, amplitude } => freq.is_finite() && in_range(amplitude),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "disturbance {self:?} must take values in [-1, 1]"
            )))
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Self::Constant(c) => c,
            Self::Square { period, high, low } => {
                if (t / period).fract() < 0.5 {
                    high
                } else {
                    low
                }
            }
            Self::Sinusoid { freq, amplitude } => amplitude * (2.0 * PI * freq * t).sin(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonlocalTerm {
    pub shape: Shape,
    pub functional: Functional,
}

/// `f(u) = Σ φ_i K_i(u)` scaled by a disturbance, plus an optional growth
/// constant `M` for the part of `f` not represented by the terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Nonlocal {
    pub terms: Vec<NonlocalTerm>,
    pub disturbance: Disturbance,
    pub remainder: f64,
}

impl Nonlocal {
    pub fn none() -> Self {
        Self::default()
    }

    /// `A sin(ωx) ‖u‖`.
    pub fn single_sine(a: f64, omega: f64) -> Result<Self> {
        Ok(Self {
            terms: vec![NonlocalTerm {
                shape: Shape::sine(omega)?,
                functional: Functional::norm_scaled(a)?,
            }],
            ..Self::default()
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ControlLaw {
    OpenLoop,
    Static(StaticKernel),
    Dynamic(DynamicController),
}

impl ControlLaw {
    pub fn n_states(&self) -> usize {
        match self {
            Self::Dynamic(c) => c.n_states(),
            _ => 0,
        }
    }

    pub fn kernel(&self) -> Option<&StaticKernel> {
        match self {
            Self::OpenLoop => None,
            Self::Static(k) => Some(k),
            Self::Dynamic(c) => Some(c.kernel()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub plant: PlantParams,
    pub nonlocal: Nonlocal,
    pub control: ControlLaw,
    pub n_modes: usize,
    pub dt: f64,
    pub horizon: f64,
    /// Zero-padded to `n_modes`.
    pub initial: ModalProfile,
    pub xi0: Vec<f64>,
    pub record_stride: usize,
    /// Time-invariant source `v(x)` by its coefficients.
    pub forcing: Option<ModalProfile>,
    pub snapshots: bool,
    /// Account for the quasi-static response of the unretained modes.
    pub tail_closure: bool,
}

impl SimConfig {
    /// A configuration with unit stride, zero integrator states, no forcing,
    /// no snapshots and the tail closure on.
    pub fn new(
        plant: PlantParams,
        nonlocal: Nonlocal,
        control: ControlLaw,
        n_modes: usize,
        dt: f64,
        horizon: f64,
        initial: ModalProfile,
    ) -> Self {
        let xi0 = vec![0.0; control.n_states()];
        Self {
            plant,
            nonlocal,
            control,
            n_modes,
            dt,
            horizon,
            initial,
            xi0,
            record_stride: 1,
            forcing: None,
            snapshots: false,
            tail_closure: true,
        }
    }

    pub fn n_steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        self.plant.validate()?;
        self.nonlocal.disturbance.validate()?;
        if self.n_modes == 0 {
            return Err(Error::invalid("N must be at least 1"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Domain {
                what: "dt",
                value: self.dt,
                domain: "(0, inf)",
            });
        }
        if !(self.horizon >= self.dt && self.horizon.is_finite()) {
            return Err(Error::invalid(format!(
                "horizon T = {} must be at least dt = {}",
                self.horizon, self.dt
            )));
        }
        if self.record_stride == 0 {
            return Err(Error::invalid("record_stride must be at least 1"));
        }
        if self.initial.len() > self.n_modes {
            return Err(Error::invalid(format!(
                "initial profile has {} modes but N = {}",
                self.initial.len(),
                self.n_modes
            )));
        }
        if let Some(v) = &self.forcing {
            if v.len() > self.n_modes {
                return Err(Error::invalid("forcing has more modes than N"));
            }
        }
        if self.xi0.len() != self.control.n_states() {
            return Err(Error::invalid(format!(
                "controller has {} states but xi0 has {}",
                self.control.n_states(),
                self.xi0.len()
            )));
        }
        if self.xi0.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("xi0 must be finite"));
        }
        if let ControlLaw::Dynamic(c) = &self.control {
            if c.n_modes() != self.n_modes {
                return Err(Error::invalid(format!(
                    "controller prepared for {} modes but N = {}",
                    c.n_modes(),
                    self.n_modes
                )));
            }
        }
        if !(self.nonlocal.remainder >= 0.0) {
            return Err(Error::invalid("remainder constant M must be nonnegative"));
        }
        Ok(())
    }
}

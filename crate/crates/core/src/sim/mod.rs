//! Closed-loop simulation in the sine basis.
//!
//! With `U(t) = u(t, 1)` the coefficients obey
//!
//! ```text
//! c_n' = -(p n²π² + q) c_n - √2 p nπ (-1)ⁿ U + d(t) f_n + v_n
//! ```
//!
//! where `f_n = Σ_i ⟨φ_i, φ_n⟩ K_i(u)`. The diagonal part is integrated
//! exactly (exponential Euler) and the coupling is frozen over each step.

mod config;
mod model;
mod tail;
mod trace;

pub use config::{ControlLaw, Disturbance, Nonlocal, NonlocalTerm, PlantParams, SimConfig};
pub use model::{phi_step, Coupling, Model, State, BLOWUP_NORM};
pub use tail::{TailForm, TAIL_EXTRA_MODES};
pub use trace::{decay_rate, overshoot, verify_transformation, Trace};

use crate::Result;

/// Report of a diverged run: the trace up to the last finite state.
#[derive(Debug, Clone)]
pub struct BlowUp {
    pub time: f64,
    pub trace: Trace,
}

/// Runs `cfg` to its horizon.
pub fn simulate(cfg: &SimConfig) -> Result<Trace> {
    Model::new(cfg)?.run()
}

//! Boundary feedback laws: static kernels `U = ∫ k u` and the dynamic
//! controller with integrator states that cancels a separable nonlinearity.

mod dynamic;
mod functional;
mod kernel;

pub use dynamic::{DynamicController, DynamicTerm};
pub use functional::{Functional, PreparedFunctional};
pub use kernel::{KernelKind, StaticKernel, BACKSTEPPING_MAX_RATE};

use crate::spectral::Shape;
use crate::{Error, Result};

/// `|q - w²|` below this counts as the linear case.
pub const LINEAR_TOL: f64 = 1e-12;

/// The shape annihilated by `p φ'' - (q - w²) φ` with `φ(0) = 0`.
pub fn canonical_shape(p: f64, q: f64, w: f64) -> Result<Shape> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::Domain {
            what: "p",
            value: p,
            domain: "(0, inf)",
        });
    }
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::Domain {
            what: "omega",
            value: w,
            domain: "(0, inf)",
        });
    }
    if !q.is_finite() {
        return Err(Error::invalid("q must be finite"));
    }
    let gap = w * w - q;
    if gap.abs() <= LINEAR_TOL {
        Ok(Shape::linear())
    } else if gap > 0.0 {
        Shape::sine((gap / p).sqrt())
    } else {
        Shape::sinh((-gap / p).sqrt())
    }
}

//! Spectral simulation and small-gain boundary feedback design for 1-D
//! semilinear parabolic PDEs of the form
//!
//! ```text
//! u_t = p u_xx - q u + f(u[t]),   u(t,0) = 0,   u(t,1) = U(t)
//! ```
//!
//! where `f` may be nonlocal (for instance `A sin(wx) ||u||`).
//!
//! The crate is organised as:
//!
//! - [`spectral`]: Fourier-sine profiles, closed-form shapes, overlaps, quadrature.
//! - [`special`]: modified Bessel function `I1` used by backstepping kernels.
//! - [`controllers`]: static kernels and the dynamic nonlinear boundary controller.
//! - [`sim`]: modal closed-loop simulator (exponential Euler) and trace analysis.
//! - [`gain`]: lower/achievable ISS gain bounds, exact static gains, small-gain checks.
//! - [`scenario`]: the versioned JSON scenario schema consumed by the CLI.
//!
//! Grid sweeps and Monte Carlo checks run on rayon when the `parallel`
//! feature is enabled (the default); see [`exec::Exec`].

pub mod controllers;
pub mod error;
pub mod exec;
pub mod gain;
pub mod scenario;
pub mod sim;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use exec::Exec;

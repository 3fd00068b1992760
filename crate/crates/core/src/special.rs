//! Modified Bessel function of the first kind, order one.

use crate::{Error, Result};

/// Upper end of the supported argument range for the power series.
pub const I1_MAX_ARG: f64 = 60.0;

/// Below this argument `i1_ratio` uses its two-term series.
pub const RATIO_TOL: f64 = 1e-4;

fn check(x: f64) -> Result<()> {
    if !(0.0..=I1_MAX_ARG).contains(&x) {
        return Err(Error::Domain {
            what: "x",
            value: x,
            domain: "[0, 60]",
        });
    }
    Ok(())
}

/// `I₁(x) = Σ (x/2)^{2k+1} / (k! (k+1)!)`.
pub fn bessel_i1(x: f64) -> Result<f64> {
    check(x)?;
    let h = 0.5 * x;
    let h2 = h * h;
    let mut term = h;
    let mut sum = term;
    let mut k = 0.0;
    while term > 1e-16 * sum {
        k += 1.0;
        term *= h2 / (k * (k + 1.0));
        sum += term;
    }
    Ok(sum)
}

/// `I₁'(x) = Σ (2k+1) (x/2)^{2k} / (2 k! (k+1)!)`.
pub fn bessel_i1_prime(x: f64) -> Result<f64> {
    check(x)?;
    let h = 0.5 * x;
    let h2 = h * h;
    // a_k = (x/2)^{2k} / (k! (k+1)!)
    let mut a = 1.0;
    let mut sum = 0.5;
    let mut k = 0.0;
    loop {
        k += 1.0;
        a *= h2 / (k * (k + 1.0));
        let term = 0.5 * (2.0 * k + 1.0) * a;
        sum += term;
        if term <= 1e-16 * sum {
            break;
        }
    }
    Ok(sum)
}

/// `I₁(z) / z`, continuous at `z = 0` where it equals `1/2`.
pub fn i1_ratio(z: f64) -> Result<f64> {
    check(z)?;
    if z <= RATIO_TOL {
        return Ok(0.5 + z * z / 16.0);
    }
    Ok(bessel_i1(z)? / z)
}

//! Kernel-independent lower bound on the achievable ISS gain.
//!
//! `g_m(μ)` is the largest eigenvalue of `D - c h hᵀ` with
//!
//! ```text
//! D_n = ((1+μ²)/(n²+μ²))²,  h_n = (-1)ⁿ (1+μ²) n/(n²+μ²)²,
//! c   = (8/π²) μπ sinh²(μπ)/(sinh(2μπ) - 2μπ)     (c = 6/π² at μ = 0)
//! ```

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::spectral::SINH_MAX;
use crate::{Error, Exec, Result};

/// Dense and secular routes must agree to this.
pub const EIGEN_AGREEMENT: f64 = 1e-10;

/// A diagonal-minus-rank-one matrix `diag(d) - c h hᵀ`, `d` strictly decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOne {
    pub d: Vec<f64>,
    pub c: f64,
    pub h: Vec<f64>,
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::Domain {
            what: "mu",
            value: mu,
            domain: "[0, inf)",
        });
    }
    if mu * PI > SINH_MAX {
        return Err(Error::SinhOverflow(mu * PI));
    }
    Ok(())
}

/// `sinh(x) - x` without cancellation for small `x`.
fn sinh_minus_identity(x: f64) -> f64 {
    if x >= 2.0 {
        return x.sinh() - x;
    }
    let x2 = x * x;
    let mut term = x * x2 / 6.0;
    let mut sum = term;
    let mut k = 3.0;
    while term > 1e-17 * sum {
        term *= x2 / ((k + 1.0) * (k + 2.0));
        sum += term;
        k += 2.0;
    }
    sum
}

/// The constant `c(μ)`.
pub fn rank_one_weight(mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let y = mu * PI;
    let ratio = if y < 0.1 {
        let y2 = y * y;
        0.75 + y2 * (0.1 + y2 * (-1.0 / 1050.0 + y2 * (-1.0 / 7875.0 + y2 * 89.0 / 6_063_750.0)))
    } else {
        let s = y.sinh();
        y * s * s / sinh_minus_identity(2.0 * y)
    };
    Ok(8.0 / (PI * PI) * ratio)
}

impl RankOne {
    pub fn for_gain(m: usize, mu: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("m must be at least 1"));
        }
        let c = rank_one_weight(mu)?;
        let mu2 = mu * mu;
        let scale = 1.0 + mu2;
        let mut d = Vec::with_capacity(m);
        let mut h = Vec::with_capacity(m);
        for k in 1..=m {
            let n = k as f64;
            let den = n * n + mu2;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            d.push((scale / den).powi(2));
            h.push(sign * scale * n / (den * den));
        }
        Ok(Self { d, c, h })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let h = DVector::from_column_slice(&self.h);
        DMatrix::from_diagonal(&DVector::from_column_slice(&self.d)) - (&h * h.transpose()) * self.c
    }

    /// `vᵀ (D - c h hᵀ) v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        let diag: f64 = self.d.iter().zip(v).map(|(d, x)| d * x * x).sum();
        let proj: f64 = self.h.iter().zip(v).map(|(h, x)| h * x).sum();
        diag - self.c * proj * proj
    }

    /// Largest eigenvalue by a dense symmetric eigensolve.
    pub fn largest_dense(&self) -> f64 {
        self.matrix()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest eigenvalue as the root of `1 = c Σ h_n²/(d_n - λ)` in `(d_2, d_1)`.
    pub fn largest_secular(&self) -> f64 {
        if self.dim() == 1 {
            return self.d[0] - self.c * self.h[0] * self.h[0];
        }
        let secular = |lambda: f64| {
            1.0 - self.c
                * self
                    .d
                    .iter()
                    .zip(&self.h)
                    .map(|(d, h)| h * h / (d - lambda))
                    .sum::<f64>()
        };
        // decreasing on the bracket, +inf at d_2 and -inf at d_1
        let (mut lo, mut hi) = (self.d[1], self.d[0]);
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return mid;
            }
            if secular(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
}

/// `g_m(μ)`, checked by two independent eigenvalue routes.
pub fn g_lower(m: usize, mu: f64) -> Result<f64> {
    let a = RankOne::for_gain(m, mu)?;
    let dense = a.largest_dense();
    let secular = a.largest_secular();
    if (dense - secular).abs() > EIGEN_AGREEMENT {
        return Err(Error::EigenMismatch { dense, secular });
    }
    Ok(secular)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaLower {
    pub mu: f64,
    /// `g_m(μ)` for `m = 1..=m_max`.
    pub g: Vec<f64>,
    /// `max_m sqrt(g_m(μ))`.
    pub value: f64,
    /// `g_{m_max} - g_{m_max - 1}`; zero when `m_max = 1`.
    pub last_increment: f64,
}

/// `max_{m ≤ m_max} sqrt(g_m(μ))`.
pub fn gamma_lower(mu: f64, m_max: usize) -> Result<GammaLower> {
    if m_max == 0 {
        return Err(Error::invalid("m_max must be at least 1"));
    }
    let g = (1..=m_max)
        .map(|m| g_lower(m, mu))
        .collect::<Result<Vec<_>>>()?;
    let value = g.iter().copied().fold(0.0f64, f64::max).sqrt();
    let last_increment = if m_max > 1 {
        g[m_max - 1] - g[m_max - 2]
    } else {
        0.0
    };
    Ok(GammaLower {
        mu,
        g,
        value,
        last_increment,
    })
}

/// Largest quadratic form over `samples` random unit vectors; a lower
/// certificate for `g_m(μ)`. Deterministic for a given `seed` whatever `exec`.
pub fn rayleigh_certificate(m: usize, mu: f64, samples: usize, seed: u64, exec: Exec) -> Result<f64> {
    const CHUNK: usize = 256;
    let a = RankOne::for_gain(m, mu)?;
    let chunks = samples.div_ceil(CHUNK);
    let best = exec.map_range(chunks, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let count = CHUNK.min(samples - k * CHUNK);
        let mut v = vec![0.0; m];
        let mut best = f64::NEG_INFINITY;
        for _ in 0..count {
            let norm = loop {
                for x in v.iter_mut() {
                    *x = rng.random_range(-1.0..1.0);
                }
                let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if n > 1e-12 {
                    break n;
                }
            };
            v.iter_mut().for_each(|x| *x /= norm);
            best = best.max(a.quadratic_form(&v));
        }
        best
    });
    Ok(best.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

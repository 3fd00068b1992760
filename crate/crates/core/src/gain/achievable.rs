//! Achievable gain of the single-mode feedback `U = -πr ∫ u sin(πx)`.
//!
//! ```text
//! b(r, μ) = (1+μ²)/2 · sqrt(min L(r,ω,λ) / ((μ²+ω)(4-ω)))
//! L(r,ω,λ) = λ⁻¹ max(λ(4-ω)/(1+r-ω) · (1 + r² S), 1)
//! S = Σ_{n≥2} n² / ((n²-ω)(n²-ω-λ(4-ω)))
//! ```
//!
//! minimised over `λ ∈ (0,1)`, `ω ∈ (-μ², min(4, 1+r))`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::{Error, Exec, Result};

pub const DEFAULT_SERIES_TERMS: usize = 2000;
pub const DEFAULT_GRID: usize = 200;
/// Inward shrink of the open optimisation domain.
pub const DOMAIN_SHRINK: f64 = 1e-6;
/// Golden-section stopping width.
pub const GOLDEN_TOL: f64 = 1e-8;

/// Two-sided enclosure of an infinite series value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

fn check_point(r: f64, omega: f64, lambda: f64) -> Result<()> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Domain {
            what: "r",
            value: r,
            domain: "[0, inf)",
        });
    }
    if !(omega < 4.0f64.min(1.0 + r)) || !omega.is_finite() {
        return Err(Error::Domain {
            what: "omega",
            value: omega,
            domain: "(-inf, min(4, 1 + r))",
        });
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::Domain {
            what: "lambda",
            value: lambda,
            domain: "(0, 1)",
        });
    }
    Ok(())
}

/// `Σ_{n≥2} n²/((n²-ω)(n²-a²))`, `a² = ω + λ(4-ω)`, bracketed after `n_terms`.
pub fn series_bracket(omega: f64, lambda: f64, n_terms: usize) -> Bracket {
    let a2 = omega + lambda * (4.0 - omega);
    let n_terms = n_terms.max(2);
    let mut partial = 0.0;
    // smallest terms first
    for n in (2..=n_terms).rev() {
        let n2 = (n * n) as f64;
        partial += n2 / ((n2 - omega) * (n2 - a2));
    }
    let big_n = n_terms as f64;
    let s_max = omega.max(a2).max(0.0).sqrt();
    let upper = 1.0 / (big_n - s_max);
    let s_min = omega.min(a2);
    let next = big_n + 1.0;
    let lower = if s_min >= 0.0 {
        1.0 / next
    } else {
        let t = (-s_min).sqrt();
        (next * next / (next * next + t * t)) / (next + t)
    };
    Bracket {
        lo: partial + lower,
        hi: partial + upper,
    }
}

fn l_from_series(r: f64, omega: f64, lambda: f64, s: f64) -> f64 {
    let lead = lambda * (4.0 - omega) / (1.0 + r - omega) * (1.0 + r * r * s);
    lead.max(1.0) / lambda
}

/// `L(r, ω, λ)` bracketed by the series tail bounds.
pub fn l_series(r: f64, omega: f64, lambda: f64, n_terms: usize) -> Result<Bracket> {
    check_point(r, omega, lambda)?;
    let s = series_bracket(omega, lambda, n_terms);
    Ok(Bracket {
        lo: l_from_series(r, omega, lambda, s.lo),
        hi: l_from_series(r, omega, lambda, s.hi),
    })
}

/// The closed-form majorant `L̃(r, ω, λ)` of `L`.
pub fn l_tilde(r: f64, omega: f64, lambda: f64) -> Result<f64> {
    check_point(r, omega, lambda)?;
    let s = 8.0 * (PI * PI - 6.0) / (3.0 * (4.0 - omega).powi(2) * (1.0 - lambda));
    Ok(l_from_series(r, omega, lambda, s))
}

/// Which `L` enters the objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LForm {
    /// Upper end of the series bracket with this many terms.
    Series(usize),
    /// The closed-form majorant.
    Tilde,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimizer {
    pub grid: usize,
    pub tol: f64,
    pub exec: Exec,
}

impl Default for Optimizer {
    fn default() -> Self {
        Self {
            grid: DEFAULT_GRID,
            tol: GOLDEN_TOL,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Achievable {
    pub r: f64,
    pub mu: f64,
    pub value: f64,
    pub omega_star: f64,
    pub lambda_star: f64,
    pub form: LForm,
    /// The bound at the best grid cell, before local refinement.
    pub grid_value: f64,
}

struct Objective {
    r: f64,
    mu2: f64,
    form: LForm,
}

impl Objective {
    fn eval(&self, omega: f64, lambda: f64) -> f64 {
        let l = match self.form {
            LForm::Tilde => l_tilde(self.r, omega, lambda),
            LForm::Series(n) => l_series(self.r, omega, lambda, n).map(|b| b.hi),
        };
        match l {
            Ok(l) => l / ((self.mu2 + omega) * (4.0 - omega)),
            Err(_) => f64::INFINITY,
        }
    }
}

/// Golden-section minimisation of `f` on `[a, b]`.
fn golden<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Minimises the objective for one `(r, μ)` with the given `L` form.
pub fn optimize(r: f64, mu: f64, form: LForm, opt: &Optimizer) -> Result<Achievable> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::Domain {
            what: "r",
            value: r,
            domain: "[0, inf)",
        });
    }
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::Domain {
            what: "mu",
            value: mu,
            domain: "[0, inf)",
        });
    }
    if opt.grid < 3 {
        return Err(Error::invalid("optimizer grid needs at least 3 points"));
    }
    let obj = Objective {
        r,
        mu2: mu * mu,
        form,
    };
    let w_lo = -obj.mu2 + DOMAIN_SHRINK;
    let w_hi = 4.0f64.min(1.0 + r) - DOMAIN_SHRINK;
    let (l_lo, l_hi) = (DOMAIN_SHRINK, 1.0 - DOMAIN_SHRINK);
    let ws = linspace(w_lo, w_hi, opt.grid);
    let ls = linspace(l_lo, l_hi, opt.grid);

    let cells = opt.exec.map_range(ws.len() * ls.len(), |k| {
        obj.eval(ws[k / ls.len()], ls[k % ls.len()])
    });
    let (mut best_k, mut best) = (0, f64::INFINITY);
    for (k, &v) in cells.iter().enumerate() {
        if v < best {
            best = v;
            best_k = k;
        }
    }
    let grid_best = best;
    let (i, j) = (best_k / ls.len(), best_k % ls.len());
    let (mut w_star, mut l_star) = (ws[i], ls[j]);

    let inner = |w: f64| golden(|l| obj.eval(w, l), l_lo, l_hi, opt.tol);
    // the λ-sampling of the grid can misplace the best ω row; walk the exact
    // profile min_λ to its local minimum before bracketing
    let profile = |i: usize| inner(ws[i]).1;
    let mut i = i;
    let mut here = profile(i);
    loop {
        let left = (i > 0).then(|| profile(i - 1)).filter(|&v| v < here);
        let right = (i + 1 < ws.len()).then(|| profile(i + 1)).filter(|&v| v < here);
        match (left, right) {
            (Some(l), Some(r)) if r < l => (i, here) = (i + 1, r),
            (Some(l), _) => (i, here) = (i - 1, l),
            (None, Some(r)) => (i, here) = (i + 1, r),
            (None, None) => break,
        }
    }
    if here < best {
        best = here;
        w_star = ws[i];
        l_star = inner(ws[i]).0;
    }
    let a = ws[i.saturating_sub(1)];
    let b = ws[(i + 1).min(ws.len() - 1)];
    let (w_ref, f_ref) = golden(|w| inner(w).1, a, b, opt.tol);
    if f_ref < best {
        let (l_ref, f_in) = inner(w_ref);
        if f_in <= best {
            best = f_in;
            w_star = w_ref;
            l_star = l_ref;
        }
    }
    if !best.is_finite() {
        return Err(Error::invalid(format!("objective has no finite value for r = {r}")));
    }
    Ok(Achievable {
        r,
        mu,
        value: 0.5 * (1.0 + obj.mu2) * best.sqrt(),
        omega_star: w_star,
        lambda_star: l_star,
        form,
        grid_value: 0.5 * (1.0 + obj.mu2) * grid_best.sqrt(),
    })
}

/// `b(r, μ)` with the series form of `L`.
pub fn b_achievable(r: f64, mu: f64) -> Result<Achievable> {
    optimize(r, mu, LForm::Series(DEFAULT_SERIES_TERMS), &Optimizer::default())
}

/// `ub(r)`: `b(r, 0)` with `L̃` in place of `L`.
pub fn ub(r: f64) -> Result<Achievable> {
    optimize(r, 0.0, LForm::Tilde, &Optimizer::default())
}

/// `ub(r)` on each `r`, parallel over `r`.
pub fn ub_sweep(rs: &[f64], opt: &Optimizer) -> Result<Vec<Achievable>> {
    let inner = Optimizer {
        exec: Exec::Sequential,
        ..*opt
    };
    opt.exec
        .map_slice(rs, |&r| optimize(r, 0.0, LForm::Tilde, &inner))
        .into_iter()
        .collect()
}

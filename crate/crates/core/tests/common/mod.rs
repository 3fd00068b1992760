//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use sgbc::spectral::ModalProfile;

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    // split first so oscillatory integrands are resolved before the error test
    let pieces = 64;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|k| {
            let lo = a + k as f64 * h;
            let hi = lo + h;
            let (flo, fhi) = (f(lo), f(hi));
            let (m, fm, whole) = simpson(&f, lo, flo, hi, fhi);
            recurse(&f, lo, flo, hi, fhi, m, fm, whole, tol / pieces as f64, 40)
        })
        .sum()
}

/// `∫₀¹ f`.
pub fn integral<F: Fn(f64) -> f64>(f: F) -> f64 {
    adaptive(f, 0.0, 1.0, 1e-13)
}

/// The initial condition of the open-loop reference run.
pub fn reference_profile(n: usize) -> ModalProfile {
    let mut modes = vec![(1, 1.0), (2, 2.0), (3, 0.1)];
    modes.extend((37..=42).map(|k| (k, 0.01)));
    ModalProfile::from_modes(n, &modes).unwrap()
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (|diff| = {:e} > {tol:e})", (a - b).abs());
}

pub fn assert_rel(a: f64, b: f64, tol: f64, what: &str) {
    let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    assert!(
        (a - b).abs() / scale <= tol,
        "{what}: {a} vs {b} (rel {:e} > {tol:e})",
        (a - b).abs() / scale
    );
}

/// A single-mode dynamic loop with sine terms written out directly from the
/// modal equations, for cross-integrator checks.
pub struct LoopOracle {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub n: usize,
    /// `(A, ω)` of the plant terms `A sin(ωx) ‖u‖`.
    pub plant: Vec<(f64, f64)>,
    /// `(A, ω)` of the controller terms.
    pub ctrl: Vec<(f64, f64)>,
    f_hat: Vec<Vec<f64>>,
    boundary: Vec<f64>,
}

impl LoopOracle {
    pub fn new(p: f64, q: f64, r: f64, n: usize, plant: Vec<(f64, f64)>, ctrl: Vec<(f64, f64)>) -> Self {
        use std::f64::consts::PI;
        let f_hat = plant
            .iter()
            .map(|&(_, w)| {
                (1..=n)
                    .map(|k| integral(|x| (w * x).sin() * sgbc::spectral::basis(k, x)))
                    .collect()
            })
            .collect();
        let boundary = ctrl
            .iter()
            .map(|&(_, w)| w.sin() - integral(|x| -PI * r * (PI * x).sin() * (w * x).sin()))
            .collect();
        Self { p, q, r, n, plant, ctrl, f_hat, boundary }
    }

    pub fn control(&self, c: &[f64], xi: &[f64]) -> f64 {
        let k1 = -std::f64::consts::PI * self.r / std::f64::consts::SQRT_2;
        k1 * c[0] + xi.iter().zip(&self.boundary).map(|(x, b)| x * b).sum::<f64>()
    }

    pub fn rhs(&self, c: &[f64], xi: &[f64]) -> (Vec<f64>, Vec<f64>) {
        use std::f64::consts::PI;
        let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
        let u = self.control(c, xi);
        let dc = (1..=self.n)
            .map(|k| {
                let kpi = k as f64 * PI;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let f: f64 = self
                    .plant
                    .iter()
                    .zip(&self.f_hat)
                    .map(|(&(a, _), hat)| a * norm * hat[k - 1])
                    .sum();
                -(self.p * kpi * kpi + self.q) * c[k - 1]
                    - std::f64::consts::SQRT_2 * self.p * kpi * sign * u
                    + f
            })
            .collect();
        let dxi = self
            .ctrl
            .iter()
            .zip(xi)
            .map(|(&(a, w), x)| -w * w * x + a * norm)
            .collect();
        (dc, dxi)
    }

    /// Classical RK4; returns the final `(c, ξ)`.
    pub fn rk4(&self, c0: &[f64], xi0: &[f64], dt: f64, steps: usize) -> (Vec<f64>, Vec<f64>) {
        let axpy = |x: &[f64], h: f64, d: &[f64]| -> Vec<f64> {
            x.iter().zip(d).map(|(a, b)| a + h * b).collect()
        };
        let (mut c, mut xi) = (c0.to_vec(), xi0.to_vec());
        for _ in 0..steps {
            let (k1c, k1x) = self.rhs(&c, &xi);
            let (k2c, k2x) = self.rhs(&axpy(&c, dt / 2.0, &k1c), &axpy(&xi, dt / 2.0, &k1x));
            let (k3c, k3x) = self.rhs(&axpy(&c, dt / 2.0, &k2c), &axpy(&xi, dt / 2.0, &k2x));
            let (k4c, k4x) = self.rhs(&axpy(&c, dt, &k3c), &axpy(&xi, dt, &k3x));
            for i in 0..c.len() {
                c[i] += dt / 6.0 * (k1c[i] + 2.0 * k2c[i] + 2.0 * k3c[i] + k4c[i]);
            }
            for i in 0..xi.len() {
                xi[i] += dt / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
            }
        }
        (c, xi)
    }

    /// The same loop as a library configuration, tail closure off.
    pub fn config(&self, initial: &[f64], dt: f64, horizon: f64) -> sgbc::sim::SimConfig {
        use sgbc::controllers::{DynamicController, DynamicTerm, Functional, StaticKernel};
        use sgbc::sim::{ControlLaw, Nonlocal, NonlocalTerm, PlantParams, SimConfig};
        use sgbc::spectral::Shape;
        let nonlocal = Nonlocal {
            terms: self
                .plant
                .iter()
                .map(|&(a, w)| NonlocalTerm {
                    shape: Shape::sine(w).unwrap(),
                    functional: Functional::NormScaled(a),
                })
                .collect(),
            ..Nonlocal::default()
        };
        let terms = self
            .ctrl
            .iter()
            .map(|&(a, w)| DynamicTerm::new(Shape::sine(w).unwrap(), Functional::NormScaled(a), w).unwrap())
            .collect();
        let ctrl =
            DynamicController::new(StaticKernel::single_mode(self.r).unwrap(), terms, self.n).unwrap();
        let mut cfg = SimConfig::new(
            PlantParams::new(self.p, self.q).unwrap(),
            nonlocal,
            ControlLaw::Dynamic(ctrl),
            self.n,
            dt,
            horizon,
            ModalProfile::new(initial.to_vec()).unwrap(),
        );
        cfg.tail_closure = false;
        cfg
    }
}

/// A random dynamic loop from a fixed seed.
pub fn random_loop(seed: u64, n: usize) -> (LoopOracle, Vec<f64>) {
    random_loop_scaled(seed, n, 2.0, 1.5, 20.0)
}

/// A random loop with `p ≤ 1`, `r ≤ 1` and `|A| ≤ 5`.
pub fn moderate_loop(seed: u64, n: usize) -> (LoopOracle, Vec<f64>) {
    random_loop_scaled(seed, n, 1.0, 1.0, 5.0)
}

fn random_loop_scaled(seed: u64, n: usize, p_max: f64, r_max: f64, a_max: f64) -> (LoopOracle, Vec<f64>) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let p = rng.random_range(0.5..p_max);
    let q = rng.random_range(-2.0..2.0);
    let r = rng.random_range(0.0..r_max);
    let w = rng.random_range(3.0..12.0);
    let plant = vec![(rng.random_range(-a_max..a_max), w)];
    let ctrl = vec![(plant[0].0, w)];
    let initial = (0..n)
        .map(|k| rng.random_range(-1.0..1.0) / (1.0 + k as f64).powi(2))
        .collect();
    (LoopOracle::new(p, q, r, n, plant, ctrl), initial)
}

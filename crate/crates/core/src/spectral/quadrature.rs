//! Composite Gauss-Legendre quadrature on `[0, 1]`.

use std::f64::consts::PI;
use std::sync::OnceLock;

pub const DEFAULT_PANELS: usize = 64;
pub const DEFAULT_POINTS: usize = 8;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A fixed composite rule: `panels` equal sub-intervals, `points` nodes each.
#[derive(Debug, Clone)]
pub struct CompositeRule {
    pub panels: usize,
    pub points: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl CompositeRule {
    pub fn new(panels: usize, points: usize) -> Self {
        let (gx, gw) = gauss_legendre(points);
        let h = 1.0 / panels as f64;
        let mut nodes = Vec::with_capacity(panels * points);
        let mut weights = Vec::with_capacity(panels * points);
        for k in 0..panels {
            let a = k as f64 * h;
            for (x, w) in gx.iter().zip(&gw) {
                nodes.push(a + 0.5 * h * (x + 1.0));
                weights.push(0.5 * h * w);
            }
        }
        Self {
            panels,
            points,
            nodes,
            weights,
        }
    }

    /// The 64-panel, 8-point rule shared by tabulated shapes.
    pub fn standard() -> &'static CompositeRule {
        static RULE: OnceLock<CompositeRule> = OnceLock::new();
        RULE.get_or_init(|| CompositeRule::new(DEFAULT_PANELS, DEFAULT_POINTS))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// `Σ w_j v_j g(x_j)` for values already sampled at the nodes.
    pub fn integrate_sampled<G: Fn(f64) -> f64>(&self, values: &[f64], g: G) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .zip(values)
            .map(|((&x, &w), &v)| w * v * g(x))
            .sum()
    }
}

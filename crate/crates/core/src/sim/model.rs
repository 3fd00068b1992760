use super::config::{ControlLaw, SimConfig};
use super::tail::TailForm;
use super::trace::Trace;
use super::BlowUp;
use crate::controllers::PreparedFunctional;
use crate::{Error, Result};

/// `‖u‖` above this aborts the run.
pub const BLOWUP_NORM: f64 = 1e12;

/// `|λ dt|` below this uses the series for `(1 - e^{-λ dt})/λ`.
const SERIES_TOL: f64 = 1e-6;

/// `(e^{-λ dt}, (1 - e^{-λ dt})/λ)`.
pub fn phi_step(lambda: f64, dt: f64) -> (f64, f64) {
    let x = lambda * dt;
    let decay = (-x).exp();
    let psi = if x.abs() < SERIES_TOL {
        dt * (1.0 - x / 2.0 + x * x / 6.0)
    } else {
        -(-x).exp_m1() / lambda
    };
    (decay, psi)
}

/// Modal coefficients, integrator states and the energy of the unretained modes.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub t: f64,
    pub c: Vec<f64>,
    pub xi: Vec<f64>,
    pub tail_sq: f64,
}

impl State {
    /// `‖u‖` including the unretained modes.
    pub fn norm(&self) -> f64 {
        (self.c.iter().map(|c| c * c).sum::<f64>() + self.tail_sq).sqrt()
    }
}

/// Everything on the right-hand side that is not the diagonal decay.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    /// Boundary input `U`.
    pub control: f64,
    /// `d(t)`.
    pub disturbance: f64,
    /// `K_j(u)` of the plant's nonlocal terms.
    pub nonlocal: Vec<f64>,
    /// `K_i(u)` of the controller's terms.
    pub controller: Vec<f64>,
    /// `g_n = e_n U + d f_n + v_n`.
    pub g: Vec<f64>,
}

/// A validated configuration with its per-mode constants precomputed.
#[derive(Debug, Clone)]
pub struct Model<'a> {
    cfg: &'a SimConfig,
    lambda: Vec<f64>,
    boundary: Vec<f64>,
    shapes_hat: Vec<Vec<f64>>,
    functionals: Vec<PreparedFunctional>,
    forcing: Vec<f64>,
    decay: Vec<f64>,
    psi: Vec<f64>,
    xi_decay: Vec<f64>,
    xi_psi: Vec<f64>,
    tail: Option<TailForm>,
}

impl<'a> Model<'a> {
    pub fn new(cfg: &'a SimConfig) -> Result<Self> {
        cfg.validate()?;
        let n = cfg.n_modes;
        let lambda: Vec<f64> = (1..=n).map(|k| cfg.plant.eigenvalue(k)).collect();
        let boundary = (1..=n).map(|k| cfg.plant.boundary_coeff(k)).collect();
        let shapes_hat = cfg
            .nonlocal
            .terms
            .iter()
            .map(|t| Ok(t.shape.project(n)?.into_coeffs()))
            .collect::<Result<_>>()?;
        let functionals = cfg
            .nonlocal
            .terms
            .iter()
            .map(|t| t.functional.prepare(n))
            .collect::<Result<_>>()?;
        let forcing = cfg
            .forcing
            .as_ref()
            .map(|v| v.resized(n).into_coeffs())
            .unwrap_or_else(|| vec![0.0; n]);
        let (decay, psi) = lambda.iter().map(|&l| phi_step(l, cfg.dt)).unzip();
        let (xi_decay, xi_psi) = match &cfg.control {
            ControlLaw::Dynamic(c) => (0..c.n_states())
                .map(|i| phi_step(c.omega_sq(i), cfg.dt))
                .unzip(),
            _ => (Vec::new(), Vec::new()),
        };
        let tail = if cfg.tail_closure {
            let shapes: Vec<_> = cfg.nonlocal.terms.iter().map(|t| t.shape.clone()).collect();
            Some(TailForm::new(&cfg.plant, n, &shapes)?)
        } else {
            None
        };
        Ok(Self {
            cfg,
            lambda,
            boundary,
            shapes_hat,
            functionals,
            forcing,
            decay,
            psi,
            xi_decay,
            xi_psi,
            tail,
        })
    }

    pub fn config(&self) -> &SimConfig {
        self.cfg
    }

    /// `λ_n = p n²π² + q`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.lambda
    }

    pub fn initial_state(&self) -> State {
        State {
            t: 0.0,
            c: self.cfg.initial.resized(self.cfg.n_modes).into_coeffs(),
            xi: self.cfg.xi0.clone(),
            tail_sq: 0.0,
        }
    }

    pub fn control(&self, s: &State) -> f64 {
        match &self.cfg.control {
            ControlLaw::OpenLoop => 0.0,
            ControlLaw::Static(k) => k.control(&s.c),
            ControlLaw::Dynamic(c) => c.control(&s.c, &s.xi),
        }
    }

    pub fn coupling(&self, s: &State) -> Coupling {
        let norm = s.norm();
        let control = self.control(s);
        let disturbance = self.cfg.nonlocal.disturbance.value(s.t);
        let nonlocal: Vec<f64> = self
            .functionals
            .iter()
            .map(|f| f.evaluate(&s.c, norm))
            .collect();
        let controller = match &self.cfg.control {
            ControlLaw::Dynamic(c) => c.functional_values(&s.c, norm),
            _ => Vec::new(),
        };
        let mut g: Vec<f64> = self
            .boundary
            .iter()
            .zip(&self.forcing)
            .map(|(e, v)| e * control + v)
            .collect();
        for (hat, k) in self.shapes_hat.iter().zip(&nonlocal) {
            let scale = disturbance * k;
            for (gn, h) in g.iter_mut().zip(hat) {
                *gn += scale * h;
            }
        }
        Coupling {
            control,
            disturbance,
            nonlocal,
            controller,
            g,
        }
    }

    /// `(dc/dt, dξ/dt)` at `s`.
    pub fn rhs(&self, s: &State) -> (Vec<f64>, Vec<f64>) {
        let cp = self.coupling(s);
        let dc = self
            .lambda
            .iter()
            .zip(&s.c)
            .zip(&cp.g)
            .map(|((l, c), g)| -l * c + g)
            .collect();
        let dxi = match &self.cfg.control {
            ControlLaw::Dynamic(c) => s
                .xi
                .iter()
                .enumerate()
                .map(|(i, x)| -c.omega_sq(i) * x + cp.controller[i])
                .collect(),
            _ => Vec::new(),
        };
        (dc, dxi)
    }

    /// One exponential-Euler step; returns the coupling frozen over it.
    pub fn step(&self, s: &mut State) -> Coupling {
        let cp = self.coupling(s);
        self.advance(s, &cp);
        cp
    }

    fn advance(&self, s: &mut State, cp: &Coupling) {
        for (((c, e), p), g) in s.c.iter_mut().zip(&self.decay).zip(&self.psi).zip(&cp.g) {
            *c = e * *c + p * g;
        }
        for (i, x) in s.xi.iter_mut().enumerate() {
            *x = self.xi_decay[i] * *x + self.xi_psi[i] * cp.controller[i];
        }
        if let Some(tail) = &self.tail {
            let mut z = Vec::with_capacity(tail.dim());
            z.push(cp.control);
            z.extend(cp.nonlocal.iter().map(|k| cp.disturbance * k));
            s.tail_sq = tail.energy(&z);
        }
    }

    fn record(&self, tr: &mut Trace, s: &State, control: f64) {
        let snap = self.cfg.snapshots.then(|| s.c.clone());
        tr.push(s.t, s.norm(), control, s.xi.clone(), snap);
    }

    pub fn run(&self) -> Result<Trace> {
        let cfg = self.cfg;
        let steps = cfg.n_steps();
        let mut s = self.initial_state();
        let mut tr = Trace::new(cfg.snapshots);
        for k in 0..steps {
            let cp = self.coupling(&s);
            if k % cfg.record_stride == 0 {
                self.record(&mut tr, &s, cp.control);
            }
            self.advance(&mut s, &cp);
            s.t = (k + 1) as f64 * cfg.dt;
            let norm = s.norm();
            let finite = norm.is_finite() && s.xi.iter().all(|x| x.is_finite());
            if !finite || norm > BLOWUP_NORM {
                if finite {
                    let u = self.control(&s);
                    if u.is_finite() {
                        self.record(&mut tr, &s, u);
                    }
                }
                return Err(Error::BlowUp(Box::new(BlowUp {
                    time: s.t,
                    trace: tr,
                })));
            }
        }
        let u = self.control(&s);
        self.record(&mut tr, &s, u);
        Ok(tr)
    }
}

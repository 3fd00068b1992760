//! Versioned JSON scenario files.
//!
//! Every section rejects unknown keys; parse errors carry the JSON path of
//! the offending key.

use serde::{Deserialize, Serialize};

use crate::controllers::{canonical_shape, DynamicController, DynamicTerm, Functional, StaticKernel};
use crate::sim::{ControlLaw, Disturbance, Nonlocal, NonlocalTerm, PlantParams, SimConfig};
use crate::spectral::{ModalProfile, Shape};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    pub plant: PlantSpec,
    #[serde(default)]
    pub nonlocal: NonlocalSpec,
    #[serde(default)]
    pub controller: ControllerSpec,
    pub sim: SimSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantSpec {
    pub p: f64,
    pub q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeSpec {
    /// The canonical shape for `(p, q, omega)`.
    #[default]
    Auto,
    Sine,
    Sinh,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionalSpec {
    /// `A ‖u‖`.
    #[default]
    Norm,
    /// `A ⟨ψ, u⟩`.
    InnerProduct { shape: ShapeSpec, beta: Option<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(rename = "A")]
    pub a: f64,
    pub omega: f64,
    #[serde(default)]
    pub shape: ShapeSpec,
    /// Rate of `sine`/`sinh` shapes; `sine` defaults to `omega`.
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default)]
    pub functional: FunctionalSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DisturbanceSpec {
    Constant {
        #[serde(default = "one")]
        level: f64,
    },
    Square {
        period: f64,
        #[serde(default = "one")]
        high: f64,
        #[serde(default = "minus_one")]
        low: f64,
    },
    Sinusoid {
        freq: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
}

fn one() -> f64 {
    1.0
}

fn minus_one() -> f64 {
    -1.0
}

fn yes() -> bool {
    true
}

impl Default for DisturbanceSpec {
    fn default() -> Self {
        Self::Constant { level: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonlocalSpec {
    #[serde(default)]
    pub terms: Vec<TermSpec>,
    #[serde(default)]
    pub disturbance: DisturbanceSpec,
    #[serde(default, rename = "remainder_M")]
    pub remainder: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControllerKind {
    #[default]
    Open,
    Static,
    Dynamic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelSpec {
    #[default]
    Zero,
    SingleMode,
    Backstepping,
}

/// `"nonlocal"` reuses the plant's terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ControllerTerms {
    Reuse(ReuseTag),
    Explicit(Vec<TermSpec>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReuseTag {
    Nonlocal,
}

impl Default for ControllerTerms {
    fn default() -> Self {
        Self::Reuse(ReuseTag::Nonlocal)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerSpec {
    #[serde(default)]
    pub kind: ControllerKind,
    #[serde(default)]
    pub kernel: KernelSpec,
    #[serde(default)]
    pub r: f64,
    /// Modes used to project a backstepping kernel; defaults to `sim.N`.
    #[serde(default)]
    pub kernel_modes: Option<usize>,
    #[serde(default)]
    pub terms: ControllerTerms,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub n: usize,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    pub modes: Vec<ModeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSpec {
    #[serde(rename = "N")]
    pub n: usize,
    pub dt: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(default = "stride")]
    pub record_stride: usize,
    pub initial: ProfileSpec,
    #[serde(default)]
    pub xi0: Vec<f64>,
    #[serde(default)]
    pub forcing: Option<ProfileSpec>,
    #[serde(default)]
    pub snapshots: bool,
    #[serde(default = "yes")]
    pub tail_closure: bool,
}

fn stride() -> usize {
    1
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Scenario { .. } => e,
        other => Error::Scenario {
            path: path.to_string(),
            message: other.to_string(),
        },
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let sc: Scenario = serde_path_to_error::deserialize(de).map_err(|e| Error::Scenario {
            path: match e.path().to_string() {
                p if p == "." => "(root)".to_string(),
                p => p,
            },
            message: e.inner().to_string(),
        })?;
        if sc.schema != SCHEMA_VERSION {
            return Err(Error::Scenario {
                path: "schema".into(),
                message: format!("unsupported schema {}, expected {SCHEMA_VERSION}", sc.schema),
            });
        }
        sc.build().map(|_| sc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn plant(&self) -> Result<PlantParams> {
        PlantParams::new(self.plant.p, self.plant.q).map_err(|e| at("plant", e))
    }

    /// Builds the simulation configuration, validating every section.
    pub fn build(&self) -> Result<SimConfig> {
        let plant = self.plant()?;
        let n = self.sim.n;
        if n == 0 {
            return Err(at("sim.N", Error::invalid("N must be at least 1")));
        }
        let nonlocal = self.nonlocal(&plant)?;
        let control = self.control(&plant, n)?;
        let initial = profile(&self.sim.initial, n).map_err(|e| at("sim.initial", e))?;
        let forcing = self
            .sim
            .forcing
            .as_ref()
            .map(|f| profile(f, n))
            .transpose()
            .map_err(|e| at("sim.forcing", e))?;
        let mut cfg = SimConfig::new(plant, nonlocal, control, n, self.sim.dt, self.sim.t, initial);
        if !self.sim.xi0.is_empty() {
            cfg.xi0 = self.sim.xi0.clone();
        }
        cfg.record_stride = self.sim.record_stride;
        cfg.forcing = forcing;
        cfg.snapshots = self.sim.snapshots;
        cfg.tail_closure = self.sim.tail_closure;
        cfg.validate().map_err(|e| at("sim", e))?;
        Ok(cfg)
    }

    fn nonlocal(&self, plant: &PlantParams) -> Result<Nonlocal> {
        let spec = &self.nonlocal;
        let terms = spec
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let path = format!("nonlocal.terms[{i}]");
                Ok(NonlocalTerm {
                    shape: term_shape(t, plant).map_err(|e| at(&path, e))?,
                    functional: functional(t).map_err(|e| at(&path, e))?,
                })
            })
            .collect::<Result<_>>()?;
        let disturbance = match spec.disturbance {
            DisturbanceSpec::Constant { level } => Disturbance::Constant(level),
            DisturbanceSpec::Square { period, high, low } => Disturbance::Square { period, high, low },
            DisturbanceSpec::Sinusoid { freq, amplitude } => Disturbance::Sinusoid { freq, amplitude },
        };
        disturbance
            .validate()
            .map_err(|e| at("nonlocal.disturbance", e))?;
        if !(spec.remainder >= 0.0 && spec.remainder.is_finite()) {
            return Err(at(
                "nonlocal.remainder_M",
                Error::invalid("remainder constant must be finite and nonnegative"),
            ));
        }
        Ok(Nonlocal {
            terms,
            disturbance,
            remainder: spec.remainder,
        })
    }

    /// The controller's static kernel, if any.
    pub fn kernel(&self, plant: &PlantParams, n: usize) -> Result<Option<StaticKernel>> {
        let c = &self.controller;
        if c.kind == ControllerKind::Open {
            return Ok(None);
        }
        let modes = c.kernel_modes.unwrap_or(n);
        let k = match c.kernel {
            KernelSpec::Zero => Ok(StaticKernel::zero(modes)),
            KernelSpec::SingleMode => StaticKernel::single_mode(c.r),
            KernelSpec::Backstepping => StaticKernel::backstepping(c.r, plant.p, plant.q, modes),
        }
        .map_err(|e| at("controller", e))?;
        Ok(Some(k))
    }

    fn control(&self, plant: &PlantParams, n: usize) -> Result<ControlLaw> {
        let c = &self.controller;
        let kernel = match self.kernel(plant, n)? {
            None => return Ok(ControlLaw::OpenLoop),
            Some(k) => k,
        };
        if c.kind == ControllerKind::Static {
            return Ok(ControlLaw::Static(kernel));
        }
        let (specs, base) = match &c.terms {
            ControllerTerms::Reuse(_) => (&self.nonlocal.terms, "nonlocal.terms"),
            ControllerTerms::Explicit(t) => (t, "controller.terms"),
        };
        let terms = specs
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let path = format!("{base}[{i}]");
                DynamicTerm::new(term_shape(t, plant)?, functional(t)?, t.omega).map_err(|e| at(&path, e))
            })
            .collect::<Result<Vec<_>>>()?;
        DynamicController::new(kernel, terms, n)
            .map(ControlLaw::Dynamic)
            .map_err(|e| at("controller", e))
    }
}

fn shape_of(spec: ShapeSpec, beta: Option<f64>, omega: f64, plant: &PlantParams) -> Result<Shape> {
    match spec {
        ShapeSpec::Auto => canonical_shape(plant.p, plant.q, omega),
        ShapeSpec::Sine => Shape::sine(beta.unwrap_or(omega)),
        ShapeSpec::Sinh => Shape::sinh(beta.ok_or_else(|| Error::invalid("sinh shape needs beta"))?),
        ShapeSpec::Linear => Ok(Shape::linear()),
    }
}

fn term_shape(t: &TermSpec, plant: &PlantParams) -> Result<Shape> {
    if !(t.omega > 0.0 && t.omega.is_finite()) {
        return Err(Error::Domain {
            what: "omega",
            value: t.omega,
            domain: "(0, inf)",
        });
    }
    shape_of(t.shape, t.beta, t.omega, plant)
}

fn functional(t: &TermSpec) -> Result<Functional> {
    match &t.functional {
        FunctionalSpec::Norm => Functional::norm_scaled(t.a),
        FunctionalSpec::InnerProduct { shape, beta } => {
            let psi = match shape {
                ShapeSpec::Auto => {
                    return Err(Error::invalid("inner-product shape cannot be auto"));
                }
                ShapeSpec::Sine => Shape::sine(beta.ok_or_else(|| Error::invalid("sine shape needs beta"))?)?,
                other => shape_of(*other, *beta, 1.0, &PlantParams { p: 1.0, q: 0.0 })?,
            };
            Functional::inner_product(t.a, psi)
        }
    }
}

fn profile(spec: &ProfileSpec, n: usize) -> Result<ModalProfile> {
    let modes: Vec<(usize, f64)> = spec.modes.iter().map(|m| (m.n, m.c)).collect();
    ModalProfile::from_modes(n, &modes)
}

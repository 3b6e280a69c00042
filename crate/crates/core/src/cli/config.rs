//! Experiment configuration files.
//!
//! Configurations are flat, sectioned key-value files in TOML syntax:
//!
//! ```toml
//! clustering = "13+2"
//!
//! [masses]
//! m1 = 1.0
//! m2 = 1.0
//! m3 = 1.0
//!
//! [potential]
//! kind = "morse"
//! depth = 1.0
//! width = 1.0
//! d0 = 1.0
//!
//! [initial]
//! kind = "reduced"
//! r = 1.2
//! s = 1.0
//! phi = 1.3
//! p_gamma = 0.25
//!
//! [integrator]
//! method = "rk4"
//! dt = 1e-3
//! n_steps = 10000
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::connection::{CoordinatePlane, ShapePath, ShapeRectangle};
use crate::dynamics::{Method, ReducedState, ReducedStateMu};
use crate::kinematics::{Clustering, MassTriple, ShapePoint, Vec3};
use crate::potentials::{
    shape_harmonic, PairForm, Pairwise, PairwiseSpec, PotentialModel, ZeroPotential,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Simulate,
    SimulateFull,
    Holonomy,
    LemmaCheck,
    Democracy,
    Checks,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Simulate => "simulate",
            ExperimentKind::SimulateFull => "simulate-full",
            ExperimentKind::Holonomy => "holonomy",
            ExperimentKind::LemmaCheck => "lemma-check",
            ExperimentKind::Democracy => "democracy",
            ExperimentKind::Checks => "checks",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Optional; must agree with the subcommand when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentKind>,
    #[serde(default = "default_clustering")]
    pub clustering: Clustering,
    #[serde(default)]
    pub masses: MassesSection,
    #[serde(default)]
    pub potential: PotentialSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialSection>,
    #[serde(default)]
    pub integrator: IntegratorSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default, rename = "loop", skip_serializing_if = "Option::is_none")]
    pub loop_spec: Option<LoopSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub democracy: Option<DemocracySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<ChecksSection>,
}

fn default_clustering() -> Clustering {
    Clustering::Pair13
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassesSection {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl Default for MassesSection {
    fn default() -> Self {
        Self {
            m1: 1.0,
            m2: 1.0,
            m3: 1.0,
        }
    }
}

/// A pair parameter shared by all pairs or given per pair `(12, 13, 23)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerPair {
    Same(f64),
    Each([f64; 3]),
}

impl PerPair {
    fn get(&self, i: usize) -> f64 {
        match self {
            PerPair::Same(x) => *x,
            PerPair::Each(xs) => xs[i],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PotentialSection {
    #[default]
    Zero,
    ShapeHarmonic {
        reference: [f64; 3],
        stiffness: [f64; 3],
    },
    Harmonic {
        k: PerPair,
        d0: PerPair,
    },
    Morse {
        depth: PerPair,
        width: PerPair,
        d0: PerPair,
    },
    LennardJones {
        epsilon: PerPair,
        sigma: PerPair,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialSection {
    Reduced {
        r: f64,
        s: f64,
        phi: f64,
        #[serde(default)]
        gamma: f64,
        #[serde(default)]
        p_r: f64,
        #[serde(default)]
        p_s: f64,
        #[serde(default)]
        p_phi: f64,
        #[serde(default)]
        p_gamma: f64,
    },
    ReducedMu {
        r: f64,
        s: f64,
        phi: f64,
        #[serde(default)]
        p_r: f64,
        #[serde(default)]
        p_s: f64,
        #[serde(default)]
        p_phi: f64,
        mu: f64,
    },
    Cartesian {
        positions: [[f64; 3]; 3],
        #[serde(default)]
        velocities: [[f64; 3]; 3],
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSection {
    pub method: Method,
    pub dt: f64,
    pub n_steps: usize,
}

impl Default for IntegratorSection {
    fn default() -> Self {
        Self {
            method: Method::Rk4,
            dt: 1e-3,
            n_steps: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
    #[serde(default = "one")]
    pub stride: usize,
    /// Reference direction for the fiber angle of full-space runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<[f64; 3]>,
}

fn one() -> usize {
    1
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            path: None,
            format: Format::Csv,
            stride: 1,
            reference: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopKind {
    Rectangle,
    Polygon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlaneLabel {
    #[serde(rename = "r-phi")]
    RPhi,
    #[serde(rename = "s-phi")]
    SPhi,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopSection {
    pub kind: LoopKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane: Option<PlaneLabel>,
    /// Value of the coordinate held fixed on a rectangle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<[f64; 2]>,
    /// Polygon vertices `(r, s, phi)`; the polygon is closed automatically.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<[f64; 3]>>,
    #[serde(default = "default_quadrature")]
    pub quadrature_points: usize,
    #[serde(default = "default_lift_dt")]
    pub lift_dt: f64,
    /// Body spin about `u1` of the non-horizontal control lift.
    #[serde(default = "default_control_spin")]
    pub control_spin: f64,
}

fn default_quadrature() -> usize {
    64
}

fn default_lift_dt() -> f64 {
    1e-4
}

fn default_control_spin() -> f64 {
    1e-2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemocracySection {
    pub from: Clustering,
    pub to: Clustering,
    /// Fixed configuration; a random one is drawn from the seed otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<[[f64; 3]; 3]>,
    #[serde(default = "one")]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksSection {
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_step")]
    pub step: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_samples() -> usize {
    100
}

fn default_step() -> f64 {
    1e-5
}

fn default_tolerance() -> f64 {
    1e-6
}

impl Default for ChecksSection {
    fn default() -> Self {
        Self {
            samples: default_samples(),
            step: default_step(),
            tolerance: default_tolerance(),
        }
    }
}

/// Initial condition resolved from the `[initial]` section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Reduced(ReducedState),
    ReducedMu(ReducedStateMu),
    Cartesian {
        positions: [Vec3; 3],
        velocities: [Vec3; 3],
    },
}

fn config_error(section: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("[{section}] {msg}"))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Resolved configuration in the same syntax it was read from.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.masses()?;
        self.potential()?;
        if let Some(initial) = &self.initial {
            self.resolve_initial(initial)?;
        }
        let integ = &self.integrator;
        if !(integ.dt > 0.0 && integ.dt.is_finite()) {
            return Err(config_error(
                "integrator",
                format!("dt = {} must be positive", integ.dt),
            ));
        }
        if self.output.stride < 1 {
            return Err(config_error("output", "stride must be at least 1"));
        }
        if let Some(reference) = self.output.reference {
            if Vec3::from(reference).norm() == 0.0 {
                return Err(config_error(
                    "output",
                    "reference direction must be nonzero",
                ));
            }
        }
        if self.loop_spec.is_some() {
            self.shape_loop()?;
        }
        if let Some(checks) = &self.checks {
            if !(checks.step > 0.0 && checks.tolerance > 0.0) {
                return Err(config_error(
                    "checks",
                    "step and tolerance must be positive",
                ));
            }
        }
        Ok(())
    }

    pub fn masses(&self) -> Result<MassTriple, CliError> {
        let m = &self.masses;
        MassTriple::new(m.m1, m.m2, m.m3).map_err(|e| config_error("masses", e))
    }

    pub fn potential(&self) -> Result<Box<dyn PotentialModel>, CliError> {
        let masses = self.masses()?;
        let pairwise = |forms: [PairForm; 3]| -> Result<Box<dyn PotentialModel>, CliError> {
            let spec = PairwiseSpec {
                forms,
                masses,
                clustering: self.clustering,
            };
            Ok(Box::new(
                Pairwise::new(spec).map_err(|e| config_error("potential", e))?,
            ))
        };
        match &self.potential {
            PotentialSection::Zero => Ok(Box::new(ZeroPotential)),
            PotentialSection::ShapeHarmonic {
                reference,
                stiffness,
            } => {
                let reference = ShapePoint::new(reference[0], reference[1], reference[2])
                    .map_err(|e| config_error("potential", e))?;
                Ok(Box::new(
                    shape_harmonic(reference, *stiffness)
                        .map_err(|e| config_error("potential", e))?,
                ))
            }
            PotentialSection::Harmonic { k, d0 } => {
                pairwise(std::array::from_fn(|i| PairForm::Harmonic {
                    k: k.get(i),
                    d0: d0.get(i),
                }))
            }
            PotentialSection::Morse { depth, width, d0 } => {
                pairwise(std::array::from_fn(|i| PairForm::Morse {
                    depth: depth.get(i),
                    width: width.get(i),
                    d0: d0.get(i),
                }))
            }
            PotentialSection::LennardJones { epsilon, sigma } => {
                pairwise(std::array::from_fn(|i| PairForm::LennardJones {
                    epsilon: epsilon.get(i),
                    sigma: sigma.get(i),
                }))
            }
        }
    }

    pub fn initial_state(&self) -> Result<InitialState, CliError> {
        let initial = self
            .initial
            .as_ref()
            .ok_or_else(|| CliError::Config("missing [initial] section".into()))?;
        self.resolve_initial(initial)
    }

    fn resolve_initial(&self, initial: &InitialSection) -> Result<InitialState, CliError> {
        let shape = |r: f64, s: f64, phi: f64| {
            ShapePoint::new(r, s, phi).map_err(|e| config_error("initial", e))
        };
        let finite = |xs: &[f64]| {
            if xs.iter().all(|x| x.is_finite()) {
                Ok(())
            } else {
                Err(config_error("initial", "values must be finite"))
            }
        };
        match *initial {
            InitialSection::Reduced {
                r,
                s,
                phi,
                gamma,
                p_r,
                p_s,
                p_phi,
                p_gamma,
            } => {
                finite(&[gamma, p_r, p_s, p_phi, p_gamma])?;
                Ok(InitialState::Reduced(ReducedState::new(
                    shape(r, s, phi)?,
                    gamma,
                    [p_r, p_s, p_phi, p_gamma],
                )))
            }
            InitialSection::ReducedMu {
                r,
                s,
                phi,
                p_r,
                p_s,
                p_phi,
                mu,
            } => {
                shape(r, s, phi)?;
                finite(&[p_r, p_s, p_phi, mu])?;
                Ok(InitialState::ReducedMu(ReducedStateMu {
                    r,
                    s,
                    phi,
                    p_r,
                    p_s,
                    p_phi,
                    mu,
                }))
            }
            InitialSection::Cartesian {
                positions,
                velocities,
            } => {
                finite(positions.as_flattened())?;
                finite(velocities.as_flattened())?;
                let positions = positions.map(Vec3::from);
                crate::kinematics::JacobiPair::from_positions(
                    &self.masses()?,
                    &positions,
                    self.clustering,
                )
                .map_err(|e| config_error("initial", e))?;
                Ok(InitialState::Cartesian {
                    positions,
                    velocities: velocities.map(Vec3::from),
                })
            }
        }
    }

    pub fn loop_section(&self) -> Result<&LoopSection, CliError> {
        self.loop_spec
            .as_ref()
            .ok_or_else(|| CliError::Config("missing [loop] section".into()))
    }

    /// The configured loop, plus its rectangle when it is one.
    pub fn shape_loop(&self) -> Result<(ShapePath, Option<ShapeRectangle>), CliError> {
        let spec = self.loop_section()?;
        if spec.quadrature_points < 2 {
            return Err(config_error("loop", "quadrature_points must be at least 2"));
        }
        if !(spec.lift_dt > 0.0 && spec.lift_dt <= 1.0) {
            return Err(config_error("loop", "lift_dt must lie in (0, 1]"));
        }
        match spec.kind {
            LoopKind::Rectangle => {
                let missing = |key: &str| config_error("loop", format!("rectangle needs '{key}'"));
                let fixed = spec.fixed.ok_or_else(|| missing("fixed"))?;
                let plane = match spec.plane.ok_or_else(|| missing("plane"))? {
                    PlaneLabel::RPhi => CoordinatePlane::RPhi { s: fixed },
                    PlaneLabel::SPhi => CoordinatePlane::SPhi { r: fixed },
                };
                let range = spec.range.ok_or_else(|| missing("range"))?;
                let phi = spec.phi.ok_or_else(|| missing("phi"))?;
                let rect = ShapeRectangle {
                    plane,
                    u: (range[0], range[1]),
                    phi: (phi[0], phi[1]),
                };
                let path = rect.boundary().map_err(|e| config_error("loop", e))?;
                Ok((path, Some(rect)))
            }
            LoopKind::Polygon => {
                let vertices = spec
                    .vertices
                    .as_ref()
                    .ok_or_else(|| config_error("loop", "polygon needs 'vertices'"))?;
                let points = vertices
                    .iter()
                    .map(|v| ShapePoint::new(v[0], v[1], v[2]))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| config_error("loop", e))?;
                let path = ShapePath::polygon(&points).map_err(|e| config_error("loop", e))?;
                Ok((path, None))
            }
        }
    }
}

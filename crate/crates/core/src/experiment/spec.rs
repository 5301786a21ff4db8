use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::histogram::BinSpec;
use crate::error::{QcaError, Result};
use crate::operator::{
    AngleMeasure, CouplingSchedule, MapConfig, RotationAngles, RotationMode, RotationSchedule,
    Topology, TopologyKind,
};
use crate::refdist::{ReferencePdf, Variable};

/// An angle written in units of π: a number (`0.25`) or a fraction string (`"2/9"`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PiAngle {
    Number(f64),
    Fraction(String),
}

impl PiAngle {
    pub fn multiple_of_pi(&self) -> Result<f64> {
        match self {
            PiAngle::Number(x) if x.is_finite() => Ok(*x),
            PiAngle::Number(x) => Err(QcaError::invalid(format!("angle {x} is not finite"))),
            PiAngle::Fraction(s) => {
                let bad = || QcaError::invalid(format!("cannot parse angle `{s}` (expected p/q)"));
                let (p, q) = s.split_once('/').ok_or_else(bad)?;
                let p: f64 = p.trim().parse().map_err(|_| bad())?;
                let q: f64 = q.trim().parse().map_err(|_| bad())?;
                let v = p / q;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(bad())
                }
            }
        }
    }

    pub fn radians(&self) -> Result<f64> {
        Ok(self.multiple_of_pi()? * PI)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyName {
    Chain,
    Ring,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingOverride {
    pub edge: usize,
    pub angle: PiAngle,
}

/// Coupling angles in units of π.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CouplingSpec {
    /// Same angle on every edge.
    Uniform(PiAngle),
    /// One angle per edge.
    PerEdge(Vec<PiAngle>),
    /// A default with a few edges changed.
    Overrides {
        default: PiAngle,
        overrides: Vec<CouplingOverride>,
    },
}

impl Default for CouplingSpec {
    fn default() -> Self {
        CouplingSpec::Uniform(PiAngle::Number(0.25))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeName {
    Qca,
    Circuit,
    Repeat,
    Homogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleMeasureName {
    #[default]
    Haar,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationSpec {
    pub mode: ModeName,
    /// Species count for `qca` mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub species: Option<usize>,
    #[serde(default)]
    pub angle_measure: AngleMeasureName,
    /// Explicit `[θ, φ, ψ]` triples in units of π instead of random ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<Vec<[PiAngle; 3]>>,
}

/// Map family with everything except the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapTemplate {
    pub qubits: usize,
    pub topology: TopologyName,
    #[serde(default)]
    pub couplings: CouplingSpec,
    pub rotations: RotationSpec,
    pub iterations: usize,
}

impl MapTemplate {
    pub fn to_config(&self, iterations: usize, seed: u64) -> Result<MapConfig> {
        let kind = match self.topology {
            TopologyName::Chain => TopologyKind::Chain,
            TopologyName::Ring => TopologyKind::Ring,
        };
        let topology = Topology::new(kind, self.qubits)?;
        let couplings = match &self.couplings {
            CouplingSpec::Uniform(a) => CouplingSchedule::constant(&topology, a.radians()?),
            CouplingSpec::PerEdge(list) => CouplingSchedule::new(
                list.iter()
                    .map(PiAngle::radians)
                    .collect::<Result<Vec<_>>>()?,
            )?,
            CouplingSpec::Overrides { default, overrides } => {
                let mut angles = vec![default.radians()?; topology.edge_count()];
                for o in overrides {
                    let slot = angles.get_mut(o.edge).ok_or_else(|| {
                        QcaError::invalid(format!("coupling override edge {} out of range", o.edge))
                    })?;
                    *slot = o.angle.radians()?;
                }
                CouplingSchedule::new(angles)?
            }
        };
        let mode = match (self.rotations.mode, self.rotations.species) {
            (ModeName::Qca, Some(k)) => RotationMode::PerSpeciesPerIteration { species: k },
            (ModeName::Qca, None) => return Err(QcaError::invalid("qca rotations need `species`")),
            (_, Some(_)) => {
                return Err(QcaError::invalid("`species` only applies to qca rotations"))
            }
            (ModeName::Circuit, None) => RotationMode::PerQubitPerIteration,
            (ModeName::Repeat, None) => RotationMode::PerQubitFixed,
            (ModeName::Homogeneous, None) => RotationMode::GlobalFixed,
        };
        let measure = match self.rotations.angle_measure {
            AngleMeasureName::Haar => AngleMeasure::Haar,
            AngleMeasureName::Uniform => AngleMeasure::Uniform,
        };
        let mut rotations = RotationSchedule::random(mode).with_measure(measure);
        if let Some(list) = &self.rotations.angles {
            let triples = list
                .iter()
                .map(|[t, f, p]| RotationAngles::new(t.radians()?, f.radians()?, p.radians()?))
                .collect::<Result<Vec<_>>>()?;
            rotations = rotations.with_angles(triples);
        }
        Ok(MapConfig {
            topology,
            couplings,
            rotations,
            iterations,
            seed,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    Spacings,
    EigvecElements,
    QDistribution,
    FidelityDecay,
    MirrorCheck,
}

/// A [`ReferencePdf`] stored in spec files by its name, e.g. `"cue2_s(15/32,17/32)"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefName(pub ReferencePdf);

impl Serialize for RefName {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RefName {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ReferencePdf::from_str(&s)
            .map(RefName)
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RefName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Binning {
    pub spacings: BinSpec,
    pub eigvec: BinSpec,
    pub q: BinSpec,
}

impl Default for Binning {
    fn default() -> Self {
        Binning {
            spacings: BinSpec::Linear {
                lo: 0.0,
                hi: 4.0,
                width: 0.1,
            },
            eigvec: BinSpec::Log {
                lo: 1e-6,
                hi: 20.0,
                bins: 73,
            },
            q: BinSpec::Linear {
                lo: 0.0,
                hi: 1.0,
                width: 0.02,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FidelitySettings {
    /// Strength of the `exp(iε Σ σz)` perturbation, in radians.
    pub epsilon: f64,
    pub steps: usize,
    /// Lower end of the fidelity range used for the exponential fit.
    pub fit_floor: f64,
}

impl Default for FidelitySettings {
    fn default() -> Self {
        FidelitySettings {
            epsilon: 0.05,
            steps: 300,
            fit_floor: 0.1,
        }
    }
}

fn default_alpha() -> f64 {
    0.01
}

/// One experiment: a map family, an ensemble and the statistics to collect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub map: MapTemplate,
    /// When non-empty, the experiment is repeated for each iteration count
    /// instead of `map.iterations`, with the same map seeds.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub iteration_sweep: Vec<usize>,
    pub ensemble_size: usize,
    pub master_seed: u64,
    pub statistics: Vec<Statistic>,
    #[serde(default)]
    pub spacing_refs: Vec<RefName>,
    #[serde(default)]
    pub eigvec_refs: Vec<RefName>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default)]
    pub binning: Binning,
    #[serde(default)]
    pub fidelity: FidelitySettings,
    /// Also write every sample to `raw_<statistic>.csv`.
    #[serde(default)]
    pub raw_output: bool,
    /// Default output directory; the command line `--out` takes precedence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| QcaError::invalid(format!("spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn wants(&self, stat: Statistic) -> bool {
        self.statistics.contains(&stat)
    }

    /// Iteration counts to run, in order.
    pub fn iteration_points(&self) -> Vec<usize> {
        if self.iteration_sweep.is_empty() {
            vec![self.map.iterations]
        } else {
            self.iteration_sweep.clone()
        }
    }

    /// Checks the whole spec; returns human-readable warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        if self.ensemble_size == 0 {
            return Err(QcaError::invalid("ensemble_size must be at least 1"));
        }
        if self.alpha != 0.01 && self.alpha != 0.05 {
            return Err(QcaError::invalid(format!(
                "alpha must be 0.01 or 0.05, got {}",
                self.alpha
            )));
        }
        self.binning.spacings.validate()?;
        self.binning.eigvec.validate()?;
        self.binning.q.validate()?;
        for (list, want, label) in [
            (&self.spacing_refs, Variable::Spacing, "spacing_refs"),
            (&self.eigvec_refs, Variable::EigvecElement, "eigvec_refs"),
        ] {
            for r in list.iter() {
                r.0.validate()?;
                if r.0.variable() != want {
                    return Err(QcaError::invalid(format!(
                        "{r} is not a valid entry of {label}"
                    )));
                }
            }
        }
        if self.wants(Statistic::FidelityDecay) {
            let f = &self.fidelity;
            if f.steps == 0 || !f.epsilon.is_finite() || !(f.fit_floor > 0.0 && f.fit_floor < 1.0) {
                return Err(QcaError::invalid(
                    "fidelity settings need steps ≥ 1, finite epsilon, 0 < fit_floor < 1",
                ));
            }
        }
        let mut warnings = Vec::new();
        for m in self.iteration_points() {
            let cfg = self.map.to_config(m, self.master_seed)?;
            for w in cfg.validate()? {
                let text = w.to_string();
                if !warnings.contains(&text) {
                    warnings.push(text);
                }
            }
        }
        Ok(warnings)
    }
}

use super::layer::SpeciesPattern;
use super::rotation::{AngleMeasure, RotationAngles};
use crate::error::{QcaError, Result};
use crate::rng::{angle_stream, FINAL_LAYER_STREAM};

/// How rotation triples are shared across qubits and iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationMode {
    /// QCA map: one triple per species per iteration, plus a final layer.
    PerSpeciesPerIteration { species: usize },
    /// Circuit-model map: one triple per qubit per iteration, plus a final layer.
    PerQubitPerIteration,
    /// Repeat map: one triple per qubit, reused every iteration and for the final layer.
    PerQubitFixed,
    /// Homogeneous map: a single triple for every qubit, iteration and the final layer.
    GlobalFixed,
}

impl RotationMode {
    /// Rotation triples per layer and whether layers share them.
    fn units(&self, n: usize) -> (usize, bool) {
        match *self {
            RotationMode::PerSpeciesPerIteration { species } => (species, false),
            RotationMode::PerQubitPerIteration => (n, false),
            RotationMode::PerQubitFixed => (n, true),
            RotationMode::GlobalFixed => (1, true),
        }
    }

    /// Number of independent rotation triples for `n` qubits and `m` iterations.
    pub fn triple_count(&self, n: usize, m: usize) -> usize {
        let (units, fixed) = self.units(n);
        if fixed {
            units
        } else {
            units * (m + 1)
        }
    }

    /// Which triple (within a layer) drives qubit `q`.
    fn unit_of(&self, q: usize) -> usize {
        match *self {
            RotationMode::PerSpeciesPerIteration { species } => q % species,
            RotationMode::PerQubitPerIteration | RotationMode::PerQubitFixed => q,
            RotationMode::GlobalFixed => 0,
        }
    }

    pub(crate) fn check(&self) -> Result<()> {
        if let RotationMode::PerSpeciesPerIteration { species } = *self {
            SpeciesPattern::periodic(species)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AngleSource {
    /// Drawn from the map seed.
    Random(AngleMeasure),
    /// Supplied triples, in layer order (iterations first, final layer last),
    /// units in increasing order within a layer. Fixed modes take one layer.
    Explicit(Vec<RotationAngles>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RotationSchedule {
    pub mode: RotationMode,
    pub source: AngleSource,
}

impl RotationSchedule {
    pub fn random(mode: RotationMode) -> Self {
        RotationSchedule {
            mode,
            source: AngleSource::Random(AngleMeasure::Haar),
        }
    }

    pub fn qca(species: usize) -> Self {
        Self::random(RotationMode::PerSpeciesPerIteration { species })
    }

    pub fn circuit() -> Self {
        Self::random(RotationMode::PerQubitPerIteration)
    }

    pub fn repeat() -> Self {
        Self::random(RotationMode::PerQubitFixed)
    }

    pub fn homogeneous() -> Self {
        Self::random(RotationMode::GlobalFixed)
    }

    pub fn with_measure(mut self, measure: AngleMeasure) -> Self {
        self.source = AngleSource::Random(measure);
        self
    }

    pub fn with_angles(mut self, angles: Vec<RotationAngles>) -> Self {
        self.source = AngleSource::Explicit(angles);
        self
    }
}

/// Every rotation triple of one map, and which triple each qubit of each
/// layer uses.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationPlan {
    triples: Vec<RotationAngles>,
    /// `layers[i][q]` indexes `triples`; the last layer is the final rotation.
    layers: Vec<Vec<usize>>,
}

impl RotationPlan {
    /// Resolves `schedule` for `n` qubits and `m` iterations, drawing each
    /// independent triple exactly once.
    pub fn resolve(schedule: &RotationSchedule, n: usize, m: usize, seed: u64) -> Result<Self> {
        schedule.mode.check()?;
        let (units, fixed) = schedule.mode.units(n);
        let expected = schedule.mode.triple_count(n, m);
        let triples: Vec<RotationAngles> = match &schedule.source {
            AngleSource::Explicit(angles) => {
                if angles.len() != expected {
                    return Err(QcaError::invalid(format!(
                        "rotation schedule needs {expected} explicit triples, got {}",
                        angles.len()
                    )));
                }
                angles.clone()
            }
            AngleSource::Random(measure) => {
                let stream_layers = if fixed { 1 } else { m + 1 };
                let mut out = Vec::with_capacity(expected);
                for layer in 0..stream_layers {
                    let stream = if !fixed && layer == m {
                        FINAL_LAYER_STREAM
                    } else {
                        layer as u64
                    };
                    for unit in 0..units {
                        let mut rng = angle_stream(seed, stream, unit);
                        out.push(RotationAngles::sample(*measure, &mut rng));
                    }
                }
                out
            }
        };
        let layers = (0..=m)
            .map(|layer| {
                let base = if fixed { 0 } else { layer * units };
                (0..n).map(|q| base + schedule.mode.unit_of(q)).collect()
            })
            .collect();
        Ok(RotationPlan { triples, layers })
    }

    /// The independent triples, in draw order.
    pub fn triples(&self) -> &[RotationAngles] {
        &self.triples
    }

    /// Per-qubit triples of iteration layer `i` (0-based); `i = m` is the final layer.
    pub fn layer(&self, i: usize) -> impl Iterator<Item = &RotationAngles> + '_ {
        self.layers[i].iter().map(move |&t| &self.triples[t])
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }
}

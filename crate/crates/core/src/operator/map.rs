use nalgebra::DMatrix;

use super::coupling::{nnc_phases, CouplingSchedule, Topology, TopologyKind};
use super::layer::{apply_diagonal, apply_layer};
use super::rotation::{rotation_gate, Gate2};
use super::schedule::{RotationMode, RotationPlan, RotationSchedule};
use crate::error::{QcaError, Result};
use crate::unitary::UnitaryMatrix;
use crate::C64;

/// Largest supported register; a 12-qubit map is a 4096×4096 dense matrix.
pub const MAX_QUBITS: usize = 12;

/// Everything that determines one map: identical configs give bit-identical unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct MapConfig {
    pub topology: Topology,
    pub couplings: CouplingSchedule,
    pub rotations: RotationSchedule,
    pub iterations: usize,
    pub seed: u64,
}

/// Legal configurations that probably do not do what was intended.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigWarning {
    /// The couplings differ from uniform only symmetrically about the chain
    /// center (e.g. only the center edge was changed), so mirror symmetry survives.
    SymmetricPerturbation,
}

impl std::fmt::Display for ConfigWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigWarning::SymmetricPerturbation => f.write_str(
                "coupling perturbation is mirror-symmetric (e.g. the center edge); \
                 the map keeps its mirror symmetry",
            ),
        }
    }
}

impl MapConfig {
    /// `k`-species QCA chain with uniform `π/4` couplings and Haar rotations.
    pub fn qca_chain(n: usize, species: usize, iterations: usize, seed: u64) -> Result<Self> {
        let topology = Topology::chain(n)?;
        Ok(MapConfig {
            couplings: CouplingSchedule::uniform(&topology),
            topology,
            rotations: RotationSchedule::qca(species),
            iterations,
            seed,
        })
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        MapConfig {
            seed,
            ..self.clone()
        }
    }

    pub fn with_iterations(&self, iterations: usize) -> Self {
        MapConfig {
            iterations,
            ..self.clone()
        }
    }

    pub fn qubits(&self) -> usize {
        self.topology.qubits()
    }

    pub fn dim(&self) -> usize {
        self.topology.dim()
    }

    /// Checks the config and reports non-fatal concerns.
    pub fn validate(&self) -> Result<Vec<ConfigWarning>> {
        let n = self.qubits();
        if n > MAX_QUBITS {
            return Err(QcaError::Capacity {
                qubits: n,
                max: MAX_QUBITS,
            });
        }
        self.couplings.check(&self.topology)?;
        self.rotations.mode.check()?;
        let mut warnings = Vec::new();
        if self.topology.kind() == TopologyKind::Chain
            && !self.couplings.is_uniform()
            && self.couplings.is_palindromic()
            && self.is_mirror_symmetric_rotation()
        {
            warnings.push(ConfigWarning::SymmetricPerturbation);
        }
        Ok(warnings)
    }

    /// Whether the rotation layers are invariant under qubit-order reversal.
    fn is_mirror_symmetric_rotation(&self) -> bool {
        match self.rotations.mode {
            RotationMode::GlobalFixed => true,
            RotationMode::PerSpeciesPerIteration { species } => {
                let n = self.qubits();
                (0..n).all(|q| q % species == (n - 1 - q) % species)
            }
            _ => false,
        }
    }
}

/// Builds `U = R_final · Π_{i=m..1} [U_nnc · R_i]`, with iteration 1 acting first.
pub fn build_map(config: &MapConfig) -> Result<UnitaryMatrix> {
    config.validate()?;
    let n = config.qubits();
    let m = config.iterations;
    let plan = RotationPlan::resolve(&config.rotations, n, m, config.seed)?;
    let phases: Vec<C64> = nnc_phases(&config.topology, &config.couplings)?
        .into_iter()
        .map(|p| C64::from_polar(1.0, p))
        .collect();
    let dim = config.dim();
    let mut u = DMatrix::<C64>::identity(dim, dim);
    let mut gates: Vec<Gate2> = Vec::with_capacity(n);
    for layer in 0..=m {
        gates.clear();
        gates.extend(plan.layer(layer).map(rotation_gate));
        apply_layer(&mut u, n, &gates);
        if layer < m {
            apply_diagonal(&mut u, &phases);
        }
    }
    Ok(UnitaryMatrix::new_unchecked(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::rotation::RotationAngles;
    use crate::operator::{nnc_unitary, species_rotation_layer, SpeciesPattern};

    #[test]
    fn zero_iterations_is_final_layer() {
        let cfg = MapConfig::qca_chain(3, 1, 0, 17).unwrap();
        let u = build_map(&cfg).unwrap();
        let plan = RotationPlan::resolve(&cfg.rotations, 3, 0, 17).unwrap();
        let layer = species_rotation_layer(
            3,
            &SpeciesPattern::periodic(1).unwrap(),
            &plan.triples()[..1],
        )
        .unwrap();
        assert!(u.max_abs_diff(&layer) < 1e-15);
    }

    #[test]
    fn composition_order() {
        // m = 1: U = R_final · U_nnc · R_1, checked by explicit products.
        let cfg = MapConfig::qca_chain(3, 1, 1, 4).unwrap();
        let plan = RotationPlan::resolve(&cfg.rotations, 3, 1, 4).unwrap();
        let pat = SpeciesPattern::periodic(1).unwrap();
        let r1 = species_rotation_layer(3, &pat, &plan.triples()[0..1]).unwrap();
        let rf = species_rotation_layer(3, &pat, &plan.triples()[1..2]).unwrap();
        let d = nnc_unitary(&cfg.topology, &cfg.couplings).unwrap();
        let expect = rf.compose(&d).unwrap().compose(&r1).unwrap();
        assert!(build_map(&cfg).unwrap().max_abs_diff(&expect) < 1e-13);
    }

    #[test]
    fn capacity_limit() {
        let cfg = MapConfig::qca_chain(13, 1, 1, 0).unwrap();
        assert!(matches!(
            build_map(&cfg),
            Err(QcaError::Capacity {
                qubits: 13,
                max: 12
            })
        ));
    }

    #[test]
    fn deterministic() {
        let cfg = MapConfig::qca_chain(5, 2, 6, 99).unwrap();
        assert_eq!(build_map(&cfg).unwrap(), build_map(&cfg).unwrap());
        assert_ne!(
            build_map(&cfg).unwrap(),
            build_map(&cfg.with_seed(100)).unwrap()
        );
    }

    #[test]
    fn center_perturbation_warns() {
        let mut cfg = MapConfig::qca_chain(8, 1, 4, 0).unwrap();
        cfg.couplings = CouplingSchedule::with_overrides(&cfg.topology, &[(3, 0.6)]).unwrap();
        assert_eq!(
            cfg.validate().unwrap(),
            vec![ConfigWarning::SymmetricPerturbation]
        );
        cfg.couplings = CouplingSchedule::with_overrides(&cfg.topology, &[(0, 0.6)]).unwrap();
        assert!(cfg.validate().unwrap().is_empty());
    }

    #[test]
    fn explicit_identity_homogeneous_map() {
        let mut cfg = MapConfig::qca_chain(4, 1, 0, 0).unwrap();
        cfg.rotations = RotationSchedule::homogeneous().with_angles(vec![RotationAngles::zero()]);
        assert_eq!(
            build_map(&cfg)
                .unwrap()
                .max_abs_diff(&UnitaryMatrix::identity(16)),
            0.0
        );
    }
}

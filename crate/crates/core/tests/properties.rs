//! Map construction properties over randomly drawn configurations.

mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use qca_core::operator::{
    build_map, mirror_commutator_norm, CouplingSchedule, MapConfig, RotationSchedule, Topology,
    TopologyKind,
};

use common::{dense_oracle, max_diff};

#[derive(Debug, Clone)]
enum Family {
    Qca(usize),
    Circuit,
    Repeat,
    Homogeneous,
}

impl Family {
    fn schedule(&self) -> RotationSchedule {
        match self {
            Family::Qca(k) => RotationSchedule::qca(*k),
            Family::Circuit => RotationSchedule::circuit(),
            Family::Repeat => RotationSchedule::repeat(),
            Family::Homogeneous => RotationSchedule::homogeneous(),
        }
    }
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (1usize..=3).prop_map(Family::Qca),
        Just(Family::Circuit),
        Just(Family::Repeat),
        Just(Family::Homogeneous),
    ]
}

prop_compose! {
    fn config(max_qubits: usize, max_iterations: usize)(
        n in 3..=max_qubits,
        ring in any::<bool>(),
        fam in family(),
        m in 0..=max_iterations,
        seed in any::<u64>(),
        tweak in proptest::option::of((0usize..16, -1.0f64..1.0)),
    ) -> MapConfig {
        let kind = if ring { TopologyKind::Ring } else { TopologyKind::Chain };
        let topology = Topology::new(kind, n).unwrap();
        let couplings = match tweak {
            Some((e, a)) => CouplingSchedule::with_overrides(&topology, &[(e % topology.edge_count(), a * PI)]).unwrap(),
            None => CouplingSchedule::uniform(&topology),
        };
        MapConfig { topology, couplings, rotations: fam.schedule(), iterations: m, seed }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn maps_are_unitary_and_reproducible(cfg in config(7, 24)) {
        let u = build_map(&cfg).unwrap();
        prop_assert!(u.unitarity_error() <= 1e-10, "error {}", u.unitarity_error());
        let again = build_map(&cfg).unwrap();
        prop_assert_eq!(u.as_matrix(), again.as_matrix());
    }

    #[test]
    fn small_maps_match_kronecker_oracle(cfg in config(3, 6)) {
        let u = build_map(&cfg).unwrap();
        let d = max_diff(u.as_matrix(), &dense_oracle(&cfg));
        prop_assert!(d <= 1e-12, "deviation {d:e}");
    }

    #[test]
    fn seeds_change_random_maps(cfg in config(5, 6), other in any::<u64>()) {
        prop_assume!(other != cfg.seed);
        let a = build_map(&cfg).unwrap();
        let b = build_map(&cfg.with_seed(other)).unwrap();
        prop_assert!(max_diff(a.as_matrix(), b.as_matrix()) > 1e-6);
    }
}

#[test]
fn two_qubit_maps_match_oracle() {
    for seed in 0..20 {
        let topology = Topology::chain(2).unwrap();
        let couplings = CouplingSchedule::uniform(&topology);
        let cfg = MapConfig {
            topology,
            couplings,
            rotations: RotationSchedule::circuit(),
            iterations: 3,
            seed,
        };
        assert!(max_diff(build_map(&cfg).unwrap().as_matrix(), &dense_oracle(&cfg)) <= 1e-12);
    }
}

#[test]
fn one_species_uniform_chains_are_mirror_symmetric() {
    for n in 3..=7 {
        for seed in 0..3 {
            let u = build_map(&MapConfig::qca_chain(n, 1, 9, seed).unwrap()).unwrap();
            assert!(mirror_commutator_norm(&u, n) <= 1e-12);
        }
    }
}

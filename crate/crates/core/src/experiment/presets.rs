use super::spec::{
    AngleMeasureName, Binning, CouplingOverride, CouplingSpec, ExperimentSpec, FidelitySettings,
    MapTemplate, ModeName, PiAngle, RefName, RotationSpec, Statistic, TopologyName,
};
use crate::operator::mirror_block_fractions;
use crate::refdist::ReferencePdf;

#[derive(Debug, Clone, PartialEq)]
pub struct PresetInfo {
    pub name: &'static str,
    pub description: &'static str,
}

const PRESETS: &[PresetInfo] = &[
    PresetInfo {
        name: "fig1",
        description: "k=1 QCA chain, n=8: Q of all 256 evolved basis states for 500 maps at m = 16, 24, 32, 40, against Haar states",
    },
    PresetInfo {
        name: "fig2",
        description: "100 one-species m=40 eight-qubit QCA chain maps: spacings vs CUE, mirror-symmetric CUE (15/32, 17/32) and Poisson; eigenvector elements vs CUE; mirror check; fidelity decay",
    },
    PresetInfo {
        name: "fig3",
        description: "k=2 (ABAB) QCA chain, n=8: Q for 500 maps at m = 16, 24, 32, 40, against Haar states",
    },
    PresetInfo {
        name: "fig4",
        description: "100 two-species m=40 QCA chain maps: spacings vs CUE and Poisson; eigenvector elements vs CUE",
    },
    PresetInfo {
        name: "fig5chain",
        description: "100 one-species m=40 QCA chains with the first coupling π/5 and all others π/4 (mirror symmetry broken)",
    },
    PresetInfo {
        name: "fig5ring",
        description: "100 one-species m=40 QCA rings, all couplings π/4 except for two, one π/5 and the other π/4.5",
    },
    PresetInfo {
        name: "fig5repeat",
        description: "100 m=40 repeat maps (per-qubit rotations fixed over iterations): spacings and eigenvector elements vs CUE and COE",
    },
    PresetInfo {
        name: "fig6sym",
        description: "100 m=40 homogeneous maps (one rotation for every qubit and iteration): spacings vs mirror-symmetric COE (15/32, 17/32)",
    },
    PresetInfo {
        name: "fig6",
        description: "100 m=40 homogeneous maps where one of the nearest neighbor couplings in the chain is π/5 while all the rest are π/4: spacings and eigenvector elements vs COE",
    },
    PresetInfo {
        name: "ringsym",
        description: "uniform-coupling one-species QCA ring, n=8: Q for 500 maps at m = 40 and 80, against Haar states",
    },
];

/// Names and one-line descriptions of the built-in experiments.
pub fn list_presets() -> &'static [PresetInfo] {
    PRESETS
}

const QUBITS: usize = 8;
const SEED: u64 = 20_050_101;

fn template(
    topology: TopologyName,
    couplings: CouplingSpec,
    mode: ModeName,
    species: Option<usize>,
) -> MapTemplate {
    MapTemplate {
        qubits: QUBITS,
        topology,
        couplings,
        rotations: RotationSpec {
            mode,
            species,
            angle_measure: AngleMeasureName::Haar,
            angles: None,
        },
        iterations: 40,
    }
}

fn one_override(edge: usize, angle: PiAngle) -> CouplingSpec {
    CouplingSpec::Overrides {
        default: PiAngle::Number(0.25),
        overrides: vec![CouplingOverride { edge, angle }],
    }
}

fn spec(
    name: &str,
    map: MapTemplate,
    ensemble: usize,
    statistics: Vec<Statistic>,
) -> ExperimentSpec {
    ExperimentSpec {
        name: name.to_string(),
        description: PRESETS
            .iter()
            .find(|p| p.name == name)
            .map(|p| p.description.to_string())
            .unwrap_or_default(),
        map,
        iteration_sweep: Vec::new(),
        ensemble_size: ensemble,
        master_seed: SEED,
        statistics,
        spacing_refs: Vec::new(),
        eigvec_refs: Vec::new(),
        alpha: 0.01,
        binning: Binning::default(),
        fidelity: FidelitySettings::default(),
        raw_output: false,
        output: None,
    }
}

fn refs(list: &[ReferencePdf]) -> Vec<RefName> {
    list.iter().copied().map(RefName).collect()
}

/// The built-in experiment called `name`.
pub fn preset(name: &str) -> Option<ExperimentSpec> {
    use Statistic::*;
    let (g1, g2) = mirror_block_fractions(QUBITS);
    let cue2 = ReferencePdf::Cue2S { g1, g2 };
    let coe2 = ReferencePdf::Coe2S { g1, g2 };
    let uniform = CouplingSpec::default;
    let spectral = || vec![Spacings, EigvecElements];
    let s = match name {
        "fig1" | "fig3" => {
            let k = if name == "fig1" { 1 } else { 2 };
            let mut s = spec(
                name,
                template(TopologyName::Chain, uniform(), ModeName::Qca, Some(k)),
                500,
                vec![QDistribution],
            );
            s.iteration_sweep = vec![16, 24, 32, 40];
            s
        }
        "fig2" => {
            let mut s = spec(
                name,
                template(TopologyName::Chain, uniform(), ModeName::Qca, Some(1)),
                100,
                vec![Spacings, EigvecElements, MirrorCheck, FidelityDecay],
            );
            s.spacing_refs = refs(&[
                ReferencePdf::CueS,
                cue2,
                ReferencePdf::Cue2SEqual,
                ReferencePdf::PoissonS,
            ]);
            s.eigvec_refs = refs(&[ReferencePdf::CueY]);
            s
        }
        "fig4" => {
            let mut s = spec(
                name,
                template(TopologyName::Chain, uniform(), ModeName::Qca, Some(2)),
                100,
                spectral(),
            );
            s.spacing_refs = refs(&[ReferencePdf::CueS, ReferencePdf::PoissonS]);
            s.eigvec_refs = refs(&[ReferencePdf::CueY]);
            s
        }
        "fig5chain" => {
            let couplings = one_override(0, PiAngle::Number(0.2));
            let mut s = spec(
                name,
                template(TopologyName::Chain, couplings, ModeName::Qca, Some(1)),
                100,
                vec![Spacings, EigvecElements, MirrorCheck],
            );
            s.spacing_refs = refs(&[ReferencePdf::CueS, cue2, ReferencePdf::PoissonS]);
            s.eigvec_refs = refs(&[ReferencePdf::CueY]);
            s
        }
        "fig5ring" => {
            let couplings = CouplingSpec::Overrides {
                default: PiAngle::Number(0.25),
                overrides: vec![
                    CouplingOverride {
                        edge: 0,
                        angle: PiAngle::Number(0.2),
                    },
                    CouplingOverride {
                        edge: 3,
                        angle: PiAngle::Fraction("2/9".into()),
                    },
                ],
            };
            let mut s = spec(
                name,
                template(TopologyName::Ring, couplings, ModeName::Qca, Some(1)),
                100,
                spectral(),
            );
            s.spacing_refs = refs(&[ReferencePdf::CueS, ReferencePdf::PoissonS]);
            s.eigvec_refs = refs(&[ReferencePdf::CueY]);
            s
        }
        "fig5repeat" => {
            let mut s = spec(
                name,
                template(TopologyName::Chain, uniform(), ModeName::Repeat, None),
                100,
                spectral(),
            );
            s.spacing_refs = refs(&[
                ReferencePdf::CueS,
                ReferencePdf::CoeS,
                ReferencePdf::PoissonS,
            ]);
            s.eigvec_refs = refs(&[ReferencePdf::CueY, ReferencePdf::CoeY]);
            s
        }
        "fig6sym" => {
            let mut s = spec(
                name,
                template(TopologyName::Chain, uniform(), ModeName::Homogeneous, None),
                100,
                spectral(),
            );
            s.spacing_refs = refs(&[coe2, ReferencePdf::Coe2SEqual, ReferencePdf::CoeS]);
            s.eigvec_refs = refs(&[ReferencePdf::CoeY]);
            s
        }
        "fig6" => {
            let couplings = one_override(0, PiAngle::Number(0.2));
            let mut s = spec(
                name,
                template(TopologyName::Chain, couplings, ModeName::Homogeneous, None),
                100,
                spectral(),
            );
            s.spacing_refs = refs(&[ReferencePdf::CoeS, coe2]);
            s.eigvec_refs = refs(&[ReferencePdf::CoeY]);
            s
        }
        "ringsym" => {
            let mut s = spec(
                name,
                template(TopologyName::Ring, uniform(), ModeName::Qca, Some(1)),
                500,
                vec![QDistribution],
            );
            s.iteration_sweep = vec![40, 80];
            s
        }
        _ => return None,
    };
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_preset_exists_and_validates() {
        assert!(list_presets().len() >= 7);
        for p in list_presets() {
            let s = preset(p.name).unwrap_or_else(|| panic!("missing preset {}", p.name));
            assert_eq!(s.name, p.name);
            s.validate().unwrap();
        }
        assert!(preset("fig7").is_none());
    }

    #[test]
    fn ring_couplings() {
        let s = preset("fig5ring").unwrap();
        let c = s.map.to_config(40, 0).unwrap().couplings;
        let pi = std::f64::consts::PI;
        let off: Vec<f64> = c
            .angles()
            .iter()
            .copied()
            .filter(|&a| a != pi / 4.0)
            .collect();
        assert_eq!(c.len(), 8);
        assert_eq!(off.len(), 2);
        assert!((off[0] - pi / 5.0).abs() < 1e-15);
        assert!((off[1] - pi / 4.5).abs() < 1e-15);
    }

    #[test]
    fn fig6_one_coupling_changed() {
        let s = preset("fig6").unwrap();
        let c = s.map.to_config(40, 0).unwrap().couplings;
        let pi = std::f64::consts::PI;
        assert_eq!(c.angles().iter().filter(|&&a| a == pi / 4.0).count(), 6);
        assert_eq!(
            c.angles()
                .iter()
                .filter(|&&a| (a - pi / 5.0).abs() < 1e-15)
                .count(),
            1
        );
    }

    #[test]
    fn figure_scales() {
        let s = preset("fig1").unwrap();
        assert_eq!(
            (s.ensemble_size, s.iteration_points()),
            (500, vec![16, 24, 32, 40])
        );
        let s = preset("fig2").unwrap();
        assert_eq!(
            (s.map.qubits, s.map.iterations, s.ensemble_size),
            (8, 40, 100)
        );
    }
}

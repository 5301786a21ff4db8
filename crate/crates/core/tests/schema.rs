//! The published JSON schema must accept exactly what the spec parser accepts.

use qca_core::experiment::{list_presets, preset, ExperimentSpec};
use serde_json::{json, Value};

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../docs/experiment-spec.schema.json"
    ))
    .expect("schema file");
    let schema: Value = serde_json::from_str(&text).expect("schema is JSON");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn full_spec() -> Value {
    json!({
        "name": "everything",
        "description": "all optional fields set",
        "map": {
            "qubits": 6,
            "topology": "ring",
            "couplings": {"default": 0.25, "overrides": [{"edge": 2, "angle": "2/9"}]},
            "rotations": {"mode": "qca", "species": 3, "angle_measure": "uniform"},
            "iterations": 7
        },
        "iteration_sweep": [3, 7],
        "ensemble_size": 4,
        "master_seed": 18446744073709551615u64,
        "statistics": ["spacings", "eigvec_elements", "q_distribution", "fidelity_decay", "mirror_check"],
        "spacing_refs": ["cue_s", "cue2_s(15/32,17/32)", "coe2_s(0.25,0.75)", "coe2_s_equal", "poisson_s"],
        "eigvec_refs": ["cue_y", "coe_y"],
        "alpha": 0.05,
        "binning": {
            "spacings": {"scale": "linear", "lo": 0.0, "hi": 3.0, "width": 0.25},
            "eigvec": {"scale": "log", "lo": 1e-4, "hi": 10.0, "bins": 20},
            "q": {"scale": "linear", "lo": 0.0, "hi": 1.0, "width": 0.1}
        },
        "fidelity": {"epsilon": 0.1, "steps": 20, "fit_floor": 0.2},
        "raw_output": true,
        "output": "out/everything"
    })
}

fn parses(v: &Value) -> bool {
    ExperimentSpec::from_json(&v.to_string()).is_ok()
}

#[test]
fn presets_and_full_spec_validate() {
    let v = validator();
    for p in list_presets() {
        let spec = serde_json::to_value(preset(p.name).unwrap()).unwrap();
        assert!(
            v.is_valid(&spec),
            "{}: {:?}",
            p.name,
            v.iter_errors(&spec)
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
        );
    }
    let full = full_spec();
    assert!(parses(&full));
    assert!(v.is_valid(&full));
    let round =
        serde_json::to_value(ExperimentSpec::from_json(&full.to_string()).unwrap()).unwrap();
    assert!(v.is_valid(&round));
}

#[test]
fn required_fields_agree() {
    let v = validator();
    let full = full_spec();
    for key in full.as_object().unwrap().keys() {
        let mut cut = full.clone();
        cut.as_object_mut().unwrap().remove(key);
        assert_eq!(v.is_valid(&cut), parses(&cut), "top-level `{key}`");
    }
    for key in full["map"].as_object().unwrap().keys() {
        let mut cut = full.clone();
        cut["map"].as_object_mut().unwrap().remove(key);
        assert_eq!(v.is_valid(&cut), parses(&cut), "map `{key}`");
    }
}

#[test]
fn unknown_fields_rejected_by_both() {
    let v = validator();
    for path in [
        &[][..],
        &["map"],
        &["map", "rotations"],
        &["binning"],
        &["fidelity"],
    ] {
        let mut doc = full_spec();
        let mut node = &mut doc;
        for p in path {
            node = &mut node[*p];
        }
        node.as_object_mut()
            .unwrap()
            .insert("extra".into(), json!(1));
        assert!(!v.is_valid(&doc), "{path:?}");
        assert!(!parses(&doc), "{path:?}");
    }
}

#[test]
fn enumerations_agree() {
    let v = validator();
    let cases: Vec<(&str, Value)> = vec![
        ("/map/topology", json!("star")),
        ("/map/rotations/mode", json!("random")),
        ("/statistics", json!(["spectrum"])),
        ("/eigvec_refs", json!(["cue_s"])),
        ("/spacing_refs", json!(["gue_s"])),
        (
            "/binning/q",
            json!({"scale": "cubic", "lo": 0, "hi": 1, "width": 0.1}),
        ),
        ("/map/couplings", json!(true)),
    ];
    for (ptr, bad) in cases {
        let mut doc = full_spec();
        *doc.pointer_mut(ptr).unwrap() = bad;
        assert!(!v.is_valid(&doc), "{ptr}");
        let rejected = ExperimentSpec::from_json(&doc.to_string())
            .and_then(|s| s.validate())
            .is_err();
        assert!(rejected, "{ptr}");
    }
    for (ptr, good) in [
        ("/map/couplings", json!(0.2)),
        (
            "/map/couplings",
            json!([0.25, "1/5", 0.25, 0.25, 0.25, 0.25]),
        ),
    ] {
        let mut doc = full_spec();
        *doc.pointer_mut(ptr).unwrap() = good;
        assert!(v.is_valid(&doc) && parses(&doc), "{ptr}");
    }
}

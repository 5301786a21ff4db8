//! Ensemble experiments: spec files, presets, execution and result files.

mod histogram;
mod presets;
mod run;
mod spec;

pub use histogram::{BinSpec, Histogram};
pub use presets::{list_presets, preset, PresetInfo};
pub use run::{
    run_experiment, FidelitySummary, MirrorSummary, PointResult, PointSummary, QSummary,
    ResultBundle, RunMetadata, SampleSummary,
};
pub use spec::{
    AngleMeasureName, Binning, CouplingOverride, CouplingSpec, ExperimentSpec, FidelitySettings,
    MapTemplate, ModeName, PiAngle, RefName, RotationSpec, Statistic, TopologyName,
};

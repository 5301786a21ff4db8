//! Elementary operators and the map-family constructor.

mod coupling;
mod layer;
mod map;
mod mirror;
mod rotation;
mod schedule;

pub use coupling::{nnc_phases, nnc_unitary, CouplingSchedule, Topology, TopologyKind};
pub use layer::{apply_single_qubit, species_rotation_layer, SpeciesPattern};
pub use map::{build_map, ConfigWarning, MapConfig, MAX_QUBITS};
pub use mirror::{
    mirror_block_dims, mirror_block_fractions, mirror_commutator_norm, mirror_index,
    mirror_permutation,
};
pub use rotation::{rotation_gate, su2_rotation, AngleMeasure, Gate2, RotationAngles};
pub use schedule::{AngleSource, RotationMode, RotationPlan, RotationSchedule};

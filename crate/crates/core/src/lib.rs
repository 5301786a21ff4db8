//! Quantum cellular automata (QCA) pseudo-random maps.
//!
//! The crate builds dense `2^n x 2^n` unitaries from layers of single-qubit
//! SU(2) rotations interleaved with a diagonal nearest-neighbour
//! `σz⊗σz` coupling, and measures how random the result looks:
//!
//! - [`spectral`]: unfolded eigenangle spacings, eigenvector-element
//!   statistics and fidelity decay,
//! - [`entanglement`]: the Meyer-Wallach `Q` measure over evolved basis states,
//! - [`refdist`]: circular-ensemble reference densities, exact CUE/COE
//!   samplers and Kolmogorov-Smirnov tests,
//! - [`experiment`]: ensemble runs with histogram/CSV output, used by the
//!   `qca` command-line tool.
//!
//! Ensembles are evaluated in parallel with rayon when the `parallel`
//! feature is enabled (the default); see [`par::Execution`].

pub mod entanglement;
pub mod error;
pub mod experiment;
pub mod operator;
pub mod par;
pub mod refdist;
pub mod rng;
pub mod spectral;
pub mod unitary;

pub use error::{QcaError, Result};
pub use nalgebra::Complex;
pub use unitary::{StateVector, UnitaryMatrix};

/// Double-precision complex amplitude.
pub type C64 = Complex<f64>;

use nalgebra::DMatrix;

use super::rotation::{rotation_gate, Gate2, RotationAngles};
use crate::error::{QcaError, Result};
use crate::unitary::UnitaryMatrix;
use crate::C64;

/// Species assignment along the lattice: qubit `j` belongs to species
/// `j mod k` (ABAB… for `k = 2`, ABCABC… for `k = 3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpeciesPattern {
    species: usize,
}

impl SpeciesPattern {
    pub const MAX_SPECIES: usize = 3;

    pub fn periodic(species: usize) -> Result<Self> {
        if !(1..=Self::MAX_SPECIES).contains(&species) {
            return Err(QcaError::invalid(format!(
                "species count must be 1, 2 or 3, got {species}"
            )));
        }
        Ok(SpeciesPattern { species })
    }

    pub fn species_count(&self) -> usize {
        self.species
    }

    pub fn species_of(&self, qubit: usize) -> usize {
        qubit % self.species
    }
}

/// Applies `gate` to `qubit` of the state held in `amps` (length `2^n`).
#[inline]
pub fn apply_single_qubit(amps: &mut [C64], n: usize, qubit: usize, gate: &Gate2) {
    debug_assert_eq!(amps.len(), 1 << n);
    let stride = 1usize << (n - 1 - qubit);
    let (g00, g01, g10, g11) = (gate[(0, 0)], gate[(0, 1)], gate[(1, 0)], gate[(1, 1)]);
    for block in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = g00 * x + g01 * y;
            *b = g10 * x + g11 * y;
        }
    }
}

/// Left-multiplies every column of `m` by `⊗_q gates[q]`.
pub(crate) fn apply_layer(m: &mut DMatrix<C64>, n: usize, gates: &[Gate2]) {
    debug_assert_eq!(gates.len(), n);
    let dim = m.nrows();
    for col in m.as_mut_slice().chunks_exact_mut(dim) {
        for (q, g) in gates.iter().enumerate() {
            apply_single_qubit(col, n, q, g);
        }
    }
}

/// Left-multiplies `m` by the diagonal `diag(phases)`.
pub(crate) fn apply_diagonal(m: &mut DMatrix<C64>, phases: &[C64]) {
    let dim = m.nrows();
    for col in m.as_mut_slice().chunks_exact_mut(dim) {
        for (z, p) in col.iter_mut().zip(phases) {
            *z *= p;
        }
    }
}

/// The tensor product giving every qubit the rotation of its species.
pub fn species_rotation_layer(
    n: usize,
    pattern: &SpeciesPattern,
    per_species: &[RotationAngles],
) -> Result<UnitaryMatrix> {
    if !(1..=super::MAX_QUBITS).contains(&n) {
        return Err(QcaError::Capacity {
            qubits: n,
            max: super::MAX_QUBITS,
        });
    }
    if per_species.len() != pattern.species_count() {
        return Err(QcaError::invalid(format!(
            "{} species need {} rotation triples, got {}",
            pattern.species_count(),
            pattern.species_count(),
            per_species.len()
        )));
    }
    let gates: Vec<Gate2> = (0..n)
        .map(|q| rotation_gate(&per_species[pattern.species_of(q)]))
        .collect();
    let mut m = DMatrix::identity(1 << n, 1 << n);
    apply_layer(&mut m, n, &gates);
    Ok(UnitaryMatrix::new_unchecked(m))
}

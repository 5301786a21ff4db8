//! Meyer-Wallach multipartite entanglement.

use crate::error::{QcaError, Result};
use crate::operator::{build_map, MapConfig};
use crate::par::{try_map_indexed, Execution};
use crate::refdist::haar_state;
use crate::rng::{aux_rng, member_seed, purpose};
use crate::unitary::StateVector;
use crate::C64;

/// One `Q` value and where it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QSample {
    pub q: f64,
    /// Computational basis state the map was applied to.
    pub source_state: usize,
    pub map_seed: u64,
}

/// `Tr ρ_j²` of qubit `j`, accumulated directly from amplitude pairs.
pub fn qubit_purity(amps: &[C64], n: usize, qubit: usize) -> f64 {
    let stride = 1usize << (n - 1 - qubit);
    let (mut p0, mut p1) = (0.0f64, 0.0f64);
    let mut coherence = C64::new(0.0, 0.0);
    for block in amps.chunks_exact(2 * stride) {
        let (lo, hi) = block.split_at(stride);
        for (a, b) in lo.iter().zip(hi) {
            p0 += a.norm_sqr();
            p1 += b.norm_sqr();
            coherence += a * b.conj();
        }
    }
    p0 * p0 + p1 * p1 + 2.0 * coherence.norm_sqr()
}

/// `Q = 2 − (2/n) Σ_j Tr ρ_j²` without normalization checks.
pub fn q_of_amplitudes(amps: &[C64], n: usize) -> f64 {
    let total: f64 = (0..n).map(|j| qubit_purity(amps, n, j)).sum();
    (2.0 - 2.0 * total / n as f64).clamp(0.0, 1.0)
}

/// Meyer-Wallach `Q` of a normalized pure state on `n ≥ 2` qubits.
pub fn meyer_wallach_q(state: &StateVector) -> Result<f64> {
    let n = state.qubits();
    if n < 2 {
        return Err(QcaError::invalid("Q needs at least 2 qubits"));
    }
    let norm = state.norm();
    if !((norm - 1.0).abs() <= 1e-8) {
        return Err(QcaError::invalid(format!(
            "state norm {norm} deviates from 1"
        )));
    }
    Ok(q_of_amplitudes(state.amplitudes(), n))
}

/// `Q` of every computational basis state evolved by `ensemble_size` maps.
///
/// Member `i` uses `config` with seed [`member_seed`]`(config.seed, i)`.
/// Samples are ordered by map, then by basis state.
pub fn q_distribution(
    config: &MapConfig,
    ensemble_size: usize,
    exec: Execution,
) -> Result<Vec<QSample>> {
    if ensemble_size == 0 {
        return Err(QcaError::invalid("ensemble size must be at least 1"));
    }
    config.validate()?;
    let n = config.qubits();
    let per_map = try_map_indexed(ensemble_size, exec, |i| {
        let seed = member_seed(config.seed, i as u64);
        let u = build_map(&config.with_seed(seed))?;
        Ok(map_q_samples(u.as_matrix().as_slice(), n, seed))
    })?;
    Ok(per_map.into_iter().flatten().collect())
}

/// `Q` of each column of a column-major `2^n × 2^n` matrix.
pub(crate) fn map_q_samples(columns: &[C64], n: usize, seed: u64) -> Vec<QSample> {
    columns
        .chunks_exact(1 << n)
        .enumerate()
        .map(|(b, col)| QSample {
            q: q_of_amplitudes(col, n),
            source_state: b,
            map_seed: seed,
        })
        .collect()
}

/// `Q` of `count` Haar-random states on `n` qubits.
pub fn haar_q_reference(n: usize, count: usize, seed: u64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(QcaError::invalid("Q needs at least 2 qubits"));
    }
    let mut rng = aux_rng(seed, purpose::HAAR_REFERENCE);
    Ok((0..count)
        .map(|_| q_of_amplitudes(haar_state(n, &mut rng).amplitudes(), n))
        .collect())
}

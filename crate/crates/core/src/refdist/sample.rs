use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::rng::{aux_rng, purpose};
use crate::unitary::{StateVector, UnitaryMatrix};
use crate::C64;

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random `N×N` unitary (CUE).
///
/// QR of a complex Ginibre matrix, with each column of `Q` multiplied by the
/// phase of the matching diagonal entry of `R` so the result is exactly Haar.
pub fn sample_cue(dim: usize, seed: u64) -> UnitaryMatrix {
    let mut rng = aux_rng(seed, purpose::MATRIX_SAMPLE);
    sample_cue_with(dim, &mut rng)
}

pub(crate) fn sample_cue_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> UnitaryMatrix {
    let ginibre = DMatrix::<C64>::from_fn(dim, dim, |_, _| complex_gaussian(rng));
    let qr = ginibre.qr();
    let r = qr.r();
    let mut q = qr.q();
    for (j, mut col) in q.column_iter_mut().enumerate() {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        col *= phase;
    }
    UnitaryMatrix::new_unchecked(q)
}

/// COE sample `W = UᵀU` with `U` drawn from CUE; `W` is symmetric and unitary.
pub fn sample_coe(dim: usize, seed: u64) -> UnitaryMatrix {
    let u = sample_cue(dim, seed).into_inner();
    let w = u.transpose() * &u;
    // Symmetrize the rounding so W = Wᵀ holds exactly.
    let w = (&w + w.transpose()) * C64::new(0.5, 0.0);
    UnitaryMatrix::new_unchecked(w)
}

/// Haar-random pure state on `n` qubits: a normalized complex Gaussian vector.
pub fn haar_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StateVector {
    let dim = 1usize << n;
    let v = DVector::<C64>::from_fn(dim, |_, _| complex_gaussian(rng));
    let norm = v.norm();
    StateVector::new(v / C64::new(norm, 0.0)).expect("power-of-two length")
}

use nalgebra::DMatrix;

use crate::unitary::UnitaryMatrix;
use crate::C64;

/// Basis index with its `n` qubit bits reversed.
pub fn mirror_index(b: usize, n: usize) -> usize {
    b.reverse_bits() >> (usize::BITS as usize - n)
}

/// Permutation matrix reversing qubit order.
pub fn mirror_permutation(n: usize) -> UnitaryMatrix {
    let dim = 1usize << n;
    let mut p = DMatrix::<C64>::zeros(dim, dim);
    for b in 0..dim {
        p[(mirror_index(b, n), b)] = C64::new(1.0, 0.0);
    }
    UnitaryMatrix::new_unchecked(p)
}

/// Dimensions `(even, odd)` of the ±1 eigenspaces of the mirror permutation:
/// `(2^n ± 2^⌈n/2⌉) / 2`.
pub fn mirror_block_dims(n: usize) -> (usize, usize) {
    let dim = 1usize << n;
    let palindromes = 1usize << n.div_ceil(2);
    ((dim + palindromes) / 2, (dim - palindromes) / 2)
}

/// Hilbert-space fractions `(g_odd, g_even)` of the two mirror blocks, smaller first.
pub fn mirror_block_fractions(n: usize) -> (f64, f64) {
    let (even, odd) = mirror_block_dims(n);
    let dim = (1usize << n) as f64;
    (odd as f64 / dim, even as f64 / dim)
}

/// `‖UP − PU‖_max` for the mirror permutation `P`, without forming `P`.
pub fn mirror_commutator_norm(u: &UnitaryMatrix, n: usize) -> f64 {
    let m = u.as_matrix();
    let dim = m.nrows();
    debug_assert_eq!(dim, 1 << n);
    let rev: Vec<usize> = (0..dim).map(|b| mirror_index(b, n)).collect();
    let mut worst = 0.0f64;
    for j in 0..dim {
        for i in 0..dim {
            // (UP)_ij = U_{i, r(j)}, (PU)_ij = U_{r(i), j}
            worst = worst.max((m[(i, rev[j])] - m[(rev[i], j)]).norm());
        }
    }
    worst
}

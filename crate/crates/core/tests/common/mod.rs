//! Independent dense reference implementation shared by the integration tests.

use nalgebra::DMatrix;
use qca_core::operator::{MapConfig, RotationPlan};
use qca_core::C64;

/// `[[e^{iφ}cosθ, e^{iψ}sinθ], [−e^{−iψ}sinθ, e^{−iφ}cosθ]]`, written out directly.
pub fn gate(t: f64, f: f64, p: f64) -> DMatrix<C64> {
    let e = |x: f64| C64::new(x.cos(), x.sin());
    DMatrix::from_row_slice(
        2,
        2,
        &[
            e(f) * t.cos(),
            e(p) * t.sin(),
            -e(-p) * t.sin(),
            e(-f) * t.cos(),
        ],
    )
}

pub fn kron(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    let (ar, ac, br, bc) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    DMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// The map as an explicit product of dense Kronecker layers and a diagonal
/// coupling built from σz eigenvalues, qubit 0 being the leftmost factor.
pub fn dense_oracle(cfg: &MapConfig) -> DMatrix<C64> {
    let n = cfg.qubits();
    let dim = 1usize << n;
    let plan = RotationPlan::resolve(&cfg.rotations, n, cfg.iterations, cfg.seed).unwrap();
    let layer = |i: usize| {
        plan.layer(i)
            .map(|a| gate(a.theta(), a.phi(), a.psi()))
            .reduce(|acc, g| kron(&acc, &g))
            .unwrap()
    };
    let z = |b: usize, q: usize| {
        if (b >> (n - 1 - q)) & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    let edges: Vec<(usize, usize)> = cfg.topology.edges().collect();
    let coupling = DMatrix::from_fn(dim, dim, |i, j| {
        if i != j {
            return C64::new(0.0, 0.0);
        }
        let phase: f64 = edges
            .iter()
            .zip(cfg.couplings.angles())
            .map(|(&(a, b), c)| c * z(i, a) * z(i, b))
            .sum();
        C64::new(phase.cos(), phase.sin())
    });
    let mut u = DMatrix::<C64>::identity(dim, dim);
    for i in 0..cfg.iterations {
        u = &coupling * layer(i) * u;
    }
    layer(cfg.iterations) * u
}

pub fn max_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

//! Eigenangle spacings, eigenvector-element statistics and fidelity decay.

use std::f64::consts::TAU;

use nalgebra::linalg::Schur;
use nalgebra::DMatrix;

use crate::error::{QcaError, Result};
use crate::unitary::{
    max_abs_diff, unitarity_error, StateVector, UnitaryMatrix, UNITARITY_REJECT_TOL,
};
use crate::C64;

/// Eigenvalues closer than this are treated as one degenerate cluster.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Eigenpairs of a unitary matrix.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    /// Eigenvalues `e^{iθ_k}`, in the column order of `eigenvectors`.
    pub eigenvalues: Vec<C64>,
    /// `θ_k ∈ [0, 2π)`, same order as `eigenvalues`.
    pub eigenangles: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub eigenvectors: DMatrix<C64>,
}

impl Eigendecomposition {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let mut scaled = self.eigenvectors.clone();
        for (mut col, lambda) in scaled.column_iter_mut().zip(&self.eigenvalues) {
            col *= *lambda;
        }
        scaled * self.eigenvectors.adjoint()
    }
}

/// Eigendecomposition through the complex Schur form `U = Q T Q†`.
///
/// A unitary matrix is normal, so `T` is diagonal up to rounding and the
/// Schur vectors are already an orthonormal eigenbasis. Columns belonging to
/// a degenerate cluster are re-orthonormalized afterwards.
pub fn eigendecompose(u: &UnitaryMatrix) -> Result<Eigendecomposition> {
    let m = u.as_matrix();
    let err = unitarity_error(m);
    if !(err <= UNITARITY_REJECT_TOL) {
        return Err(QcaError::invalid(format!(
            "matrix is not unitary: max |UU†−I| = {err:.3e}"
        )));
    }
    let dim = m.nrows();
    let schur = Schur::try_new(m.clone(), f64::EPSILON, 100 * dim.max(10)).ok_or_else(|| {
        QcaError::Numeric(format!("Schur iteration did not converge for N = {dim}"))
    })?;
    let (mut q, t) = schur.unpack();
    let eigenvalues: Vec<C64> = (0..dim).map(|k| t[(k, k)]).collect();
    orthonormalize_clusters(&mut q, &eigenvalues);
    let eigenangles = eigenvalues.iter().map(|z| wrap_angle(z.arg())).collect();
    let dec = Eigendecomposition {
        eigenvalues,
        eigenangles,
        eigenvectors: q,
    };
    let residual = max_abs_diff(&dec.reconstruct(), m);
    if !(residual <= 1e-8) {
        return Err(QcaError::Numeric(format!(
            "eigendecomposition residual {residual:.3e} exceeds 1e-8"
        )));
    }
    Ok(dec)
}

fn wrap_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Modified Gram-Schmidt (two passes) inside each cluster of near-equal eigenvalues.
fn orthonormalize_clusters(vectors: &mut DMatrix<C64>, eigenvalues: &[C64]) {
    let n = eigenvalues.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (eigenvalues[i] - eigenvalues[j]).norm() <= DEGENERACY_TOL {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let root = find(&mut parent, i);
        clusters[root].push(i);
    }
    for members in clusters.iter().filter(|c| c.len() > 1) {
        for _ in 0..2 {
            for (pos, &k) in members.iter().enumerate() {
                for &prev in &members[..pos] {
                    let overlap = vectors.column(prev).dotc(&vectors.column(k));
                    let proj = vectors.column(prev) * overlap;
                    let mut col = vectors.column_mut(k);
                    col -= proj;
                }
                let norm = vectors.column(k).norm();
                if norm > 0.0 {
                    vectors.column_mut(k).unscale_mut(norm);
                }
            }
        }
    }
}

/// Unfolded circular nearest-neighbour spacings.
///
/// The angles are sorted and each gap, including the closing gap across
/// `2π`, is rescaled by `N/2π`; the `N` spacings have mean 1.
pub fn spacings(eigenangles: &[f64]) -> Result<Vec<f64>> {
    let n = eigenangles.len();
    if n < 2 {
        return Err(QcaError::invalid(format!(
            "need at least 2 eigenangles, got {n}"
        )));
    }
    if eigenangles.iter().any(|a| !a.is_finite()) {
        return Err(QcaError::invalid("eigenangles must be finite"));
    }
    let mut sorted: Vec<f64> = eigenangles.iter().map(|&a| wrap_angle(a)).collect();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    let scale = n as f64 / TAU;
    let mut out: Vec<f64> = sorted.windows(2).map(|w| (w[1] - w[0]) * scale).collect();
    out.push((sorted[0] + TAU - sorted[n - 1]) * scale);
    Ok(out)
}

/// `y = N|v_ij|²` over all `N²` eigenvector components, column by column.
pub fn eigvec_elements(eigenvectors: &DMatrix<C64>) -> Result<Vec<f64>> {
    if !eigenvectors.is_square() {
        return Err(QcaError::invalid("eigenvector matrix must be square"));
    }
    let err = unitarity_error(&eigenvectors.adjoint());
    if !(err <= 1e-8) {
        return Err(QcaError::invalid(format!(
            "eigenvectors are not orthonormal: max |V†V−I| = {err:.3e}"
        )));
    }
    let n = eigenvectors.nrows() as f64;
    Ok(eigenvectors.iter().map(|z| n * z.norm_sqr()).collect())
}

/// Sorted eigenangles, spacings and eigenvector elements of one unitary.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub eigenangles: Vec<f64>,
    pub spacings: Vec<f64>,
    pub eigvec_elements: Vec<f64>,
}

impl SpectralData {
    pub fn from_unitary(u: &UnitaryMatrix) -> Result<Self> {
        let dec = eigendecompose(u)?;
        let mut eigenangles = dec.eigenangles.clone();
        eigenangles.sort_unstable_by(|a, b| a.total_cmp(b));
        Ok(SpectralData {
            spacings: spacings(&eigenangles)?,
            eigvec_elements: eigvec_elements(&dec.eigenvectors)?,
            eigenangles,
        })
    }
}

/// `exp(iε Σ_j σz^j)` on `n` qubits.
pub fn sigma_z_perturbation(n: usize, epsilon: f64) -> UnitaryMatrix {
    let phases: Vec<f64> = (0..1usize << n)
        .map(|b| {
            let ones = b.count_ones() as f64;
            epsilon * (n as f64 - 2.0 * ones)
        })
        .collect();
    UnitaryMatrix::from_phases(&phases)
}

/// `F(t) = |⟨ψ| U_p^{−t} U^t |ψ⟩|²` for `t = 1..=steps`, with `U_p = perturbation · U`.
pub fn fidelity_decay(
    u: &UnitaryMatrix,
    perturbation: &UnitaryMatrix,
    state: &StateVector,
    steps: usize,
) -> Result<Vec<f64>> {
    if u.dim() != perturbation.dim() || u.dim() != state.dim() {
        return Err(QcaError::invalid(format!(
            "dimension mismatch: map {}, perturbation {}, state {}",
            u.dim(),
            perturbation.dim(),
            state.dim()
        )));
    }
    if steps == 0 {
        return Err(QcaError::invalid("fidelity decay needs at least one step"));
    }
    if !((state.norm() - 1.0).abs() <= 1e-8) {
        return Err(QcaError::invalid("initial state is not normalized"));
    }
    for (name, op) in [("map", u), ("perturbation", perturbation)] {
        let err = op.unitarity_error();
        if !(err <= UNITARITY_REJECT_TOL) {
            return Err(QcaError::invalid(format!(
                "{name} is not unitary (error {err:.3e})"
            )));
        }
    }
    let perturbed = perturbation.compose(u)?;
    let mut ideal = state.clone();
    let mut noisy = state.clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        ideal = u.apply(&ideal)?;
        noisy = perturbed.apply(&noisy)?;
        out.push(noisy.inner(&ideal).norm_sqr().clamp(0.0, 1.0));
    }
    Ok(out)
}

/// Least-squares line through `(t, ln F(t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Fits `ln F` against `t` over the initial stretch with `F ≥ floor`,
/// including the implicit `F(0) = 1`. `fidelities[k]` is `F(k + 1)`.
pub fn log_linear_fit(fidelities: &[f64], floor: f64) -> Option<LogLinearFit> {
    let mut pts: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    for (k, &f) in fidelities.iter().enumerate() {
        if !(f >= floor) || f <= 0.0 {
            break;
        }
        pts.push(((k + 1) as f64, f.ln()));
    }
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy > 0.0 {
        (sxy * sxy) / (sxx * syy)
    } else {
        1.0
    };
    Some(LogLinearFit {
        slope,
        intercept,
        r_squared,
        points: pts.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refdist::sample_cue;
    use std::f64::consts::PI;

    #[test]
    fn identity_spectrum() {
        let dec = eigendecompose(&UnitaryMatrix::identity(8)).unwrap();
        assert!(dec.eigenangles.iter().all(|&a| a == 0.0));
        assert!(unitarity_error(&dec.eigenvectors) < 1e-12);
    }

    #[test]
    fn diagonal_spectrum() {
        let u = UnitaryMatrix::from_phases(&[0.0, PI / 2.0, PI, 3.0 * PI / 2.0]);
        let dec = eigendecompose(&u).unwrap();
        let mut angles = dec.eigenangles.clone();
        angles.sort_by(|a, b| a.total_cmp(b));
        for (a, e) in angles.iter().zip([0.0, PI / 2.0, PI, 3.0 * PI / 2.0]) {
            assert!((a - e).abs() < 1e-12);
        }
        // Standard basis vectors up to phase.
        for z in dec.eigenvectors.iter() {
            let p = z.norm_sqr();
            assert!(p < 1e-20 || (p - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn haar_reconstruction() {
        let u = sample_cue(64, 9);
        let dec = eigendecompose(&u).unwrap();
        assert!(max_abs_diff(&dec.reconstruct(), u.as_matrix()) <= 1e-8);
        assert!(unitarity_error(&dec.eigenvectors) <= 1e-8);
    }

    #[test]
    fn degenerate_clusters_orthonormal() {
        // Conjugate a highly degenerate diagonal by a Haar unitary.
        let v = sample_cue(16, 2).into_inner();
        let d = UnitaryMatrix::from_phases(&[
            0.3, 0.3, 0.3, 0.3, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0, 2.0, 4.0, 4.0, 5.0, 6.0,
        ]);
        let u = UnitaryMatrix::new_unchecked(&v * d.as_matrix() * v.adjoint());
        let dec = eigendecompose(&u).unwrap();
        assert!(unitarity_error(&dec.eigenvectors) <= 1e-10);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = DMatrix::<C64>::identity(4, 4) * C64::new(2.0, 0.0);
        assert!(matches!(
            eigendecompose(&UnitaryMatrix::new_unchecked(m)),
            Err(QcaError::InvalidArgument(_))
        ));
    }

    #[test]
    fn spacing_examples() {
        let s = spacings(&[0.0, PI / 2.0, PI, 3.0 * PI / 2.0]).unwrap();
        for v in s {
            assert!((v - 1.0).abs() < 1e-15);
        }
        assert_eq!(spacings(&[0.0; 4]).unwrap(), vec![0.0, 0.0, 0.0, 4.0]);
        assert!(spacings(&[1.0]).is_err());
    }

    #[test]
    fn eigvec_element_examples() {
        let y = eigvec_elements(&DMatrix::identity(4, 4)).unwrap();
        assert_eq!(y.iter().filter(|&&v| v == 4.0).count(), 4);
        assert_eq!(y.iter().filter(|&&v| v == 0.0).count(), 12);
        // Normalized Fourier basis: all |v_ij|² = 1/N.
        let n = 8;
        let f = DMatrix::from_fn(n, n, |i, j| {
            C64::from_polar(1.0 / (n as f64).sqrt(), TAU * (i * j) as f64 / n as f64)
        });
        for v in eigvec_elements(&f).unwrap() {
            assert!((v - 1.0).abs() < 1e-12);
        }
        let bad = DMatrix::<C64>::identity(4, 4) * C64::new(0.5, 0.0);
        assert!(eigvec_elements(&bad).is_err());
    }

    #[test]
    fn global_phase_invariance() {
        let u = sample_cue(32, 4);
        let shifted = UnitaryMatrix::new_unchecked(u.as_matrix() * C64::from_polar(1.0, 0.7));
        let mut a = SpectralData::from_unitary(&u).unwrap().spacings;
        let mut b = SpectralData::from_unitary(&shifted).unwrap().spacings;
        a.sort_by(|x, y| x.total_cmp(y));
        b.sort_by(|x, y| x.total_cmp(y));
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn fidelity_trivial_cases() {
        let u = sample_cue(16, 1);
        let psi = StateVector::basis(4, 3).unwrap();
        let f = fidelity_decay(&u, &UnitaryMatrix::identity(16), &psi, 20).unwrap();
        assert!(f.iter().all(|&x| (x - 1.0).abs() < 1e-12));
        let phase =
            UnitaryMatrix::new_unchecked(DMatrix::identity(16, 16) * C64::from_polar(1.0, 0.4));
        let f = fidelity_decay(&UnitaryMatrix::identity(16), &phase, &psi, 20).unwrap();
        assert!(f.iter().all(|&x| (x - 1.0).abs() < 1e-12));
        assert!(fidelity_decay(&u, &UnitaryMatrix::identity(8), &psi, 5).is_err());
    }

    #[test]
    fn sigma_z_perturbation_phases() {
        let p = sigma_z_perturbation(2, 0.1);
        let m = p.as_matrix();
        assert!((m[(0, 0)] - C64::from_polar(1.0, 0.2)).norm() < 1e-15);
        assert!((m[(1, 1)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((m[(3, 3)] - C64::from_polar(1.0, -0.2)).norm() < 1e-15);
    }

    #[test]
    fn exact_exponential_fit() {
        let f: Vec<f64> = (1..=50).map(|t| (-0.05 * t as f64).exp()).collect();
        let fit = log_linear_fit(&f, 0.1).unwrap();
        assert!((fit.slope + 0.05).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        // t = 0..=46; e^{-0.05·47} < 0.1.
        assert_eq!(fit.points, 47);
    }
}

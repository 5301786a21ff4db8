use std::f64::consts::TAU;

use nalgebra::{DMatrix, Matrix2};
use rand::Rng;

use crate::error::{QcaError, Result};
use crate::unitary::UnitaryMatrix;
use crate::C64;

/// A 2×2 single-qubit gate.
pub type Gate2 = Matrix2<C64>;

/// Euler-type angles `(θ, φ, ψ)` of an SU(2) rotation, each reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationAngles {
    theta: f64,
    phi: f64,
    psi: f64,
}

impl RotationAngles {
    pub fn new(theta: f64, phi: f64, psi: f64) -> Result<Self> {
        for (name, v) in [("theta", theta), ("phi", phi), ("psi", psi)] {
            if !v.is_finite() {
                return Err(QcaError::invalid(format!(
                    "rotation angle {name} = {v} is not finite"
                )));
            }
        }
        Ok(RotationAngles {
            theta: reduce(theta),
            phi: reduce(phi),
            psi: reduce(psi),
        })
    }

    pub const fn zero() -> Self {
        RotationAngles {
            theta: 0.0,
            phi: 0.0,
            psi: 0.0,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    /// Draws one triple. Consumes exactly three `f64` values from `rng`.
    pub fn sample<R: Rng + ?Sized>(measure: AngleMeasure, rng: &mut R) -> Self {
        let u: f64 = rng.random();
        let phi = TAU * rng.random::<f64>();
        let psi = TAU * rng.random::<f64>();
        let theta = match measure {
            // sin²θ uniform on [0, 1] makes |R_11|² uniform: Haar on SU(2).
            AngleMeasure::Haar => u.sqrt().asin(),
            AngleMeasure::Uniform => TAU * u,
        };
        RotationAngles {
            theta: reduce(theta),
            phi: reduce(phi),
            psi: reduce(psi),
        }
    }
}

fn reduce(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distribution of randomly drawn rotation angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AngleMeasure {
    /// φ, ψ uniform on `[0, 2π)` and `sin²θ` uniform on `[0, 1]`.
    #[default]
    Haar,
    /// All three angles uniform on `[0, 2π)`.
    Uniform,
}

/// The rotation
///
/// ```text
/// ⎛  e^{iφ} cos θ    e^{iψ} sin θ ⎞
/// ⎝ −e^{−iψ} sin θ   e^{−iφ} cos θ ⎠
/// ```
pub fn rotation_gate(angles: &RotationAngles) -> Gate2 {
    let (s, c) = angles.theta.sin_cos();
    let ephi = C64::from_polar(1.0, angles.phi);
    let epsi = C64::from_polar(1.0, angles.psi);
    Gate2::new(ephi * c, epsi * s, -epsi.conj() * s, ephi.conj() * c)
}

/// [`rotation_gate`] as a 2×2 [`UnitaryMatrix`].
pub fn su2_rotation(angles: &RotationAngles) -> Result<UnitaryMatrix> {
    let g = rotation_gate(angles);
    Ok(UnitaryMatrix::new_unchecked(DMatrix::from_fn(
        2,
        2,
        |i, j| g[(i, j)],
    )))
}

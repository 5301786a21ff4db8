use std::f64::consts::PI;

use super::pdf::ReferencePdf;
use super::quadrature::integrate;
use crate::error::Result;

const CELLS: usize = 4096;
const CELL_TOL: f64 = 1e-15;

/// Tabulated cumulative distribution of a [`ReferencePdf`].
///
/// The CDF is integrated cell by cell on a uniform grid in `u = √x`, where
/// every reference density (including the `y^{−1/2}` singularity of the COE
/// eigenvector law) becomes smooth: `F(x) = ∫_0^{√x} 2u p(u²) du`. Between
/// nodes it is evaluated by cubic Hermite interpolation using the exact
/// derivative, clamped to the node values so it stays monotone.
#[derive(Debug, Clone)]
pub struct ReferenceCdf {
    pdf: ReferencePdf,
    step: f64,
    u_max: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl ReferenceCdf {
    pub fn new(pdf: ReferencePdf) -> Result<Self> {
        pdf.validate()?;
        let x_max = support_bound(&pdf);
        let u_max = x_max.sqrt();
        let step = u_max / CELLS as f64;
        let g = |u: f64| integrand(&pdf, u);
        let mut values = Vec::with_capacity(CELLS + 1);
        let mut slopes = Vec::with_capacity(CELLS + 1);
        let mut acc = 0.0;
        values.push(0.0);
        slopes.push(g(0.0));
        for i in 0..CELLS {
            let (a, b) = (i as f64 * step, (i + 1) as f64 * step);
            acc += integrate(g, a, b, CELL_TOL);
            values.push(acc);
            slopes.push(g(b));
        }
        Ok(ReferenceCdf {
            pdf,
            step,
            u_max,
            values,
            slopes,
        })
    }

    pub fn pdf(&self) -> &ReferencePdf {
        &self.pdf
    }

    /// `P(X ≤ x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        let u = x.sqrt();
        if u >= self.u_max {
            return *self.values.last().unwrap_or(&1.0);
        }
        let pos = u / self.step;
        let i = (pos as usize).min(CELLS - 1);
        let t = pos - i as f64;
        let (f0, f1) = (self.values[i], self.values[i + 1]);
        let rise = f1 - f0;
        if rise <= 0.0 {
            return f0;
        }
        let (d0, d1) = (
            self.slopes[i] * self.step / rise,
            self.slopes[i + 1] * self.step / rise,
        );
        let t2 = t * t;
        let t3 = t2 * t;
        let w = (-2.0 * t3 + 3.0 * t2) + (t3 - 2.0 * t2 + t) * d0 + (t3 - t2) * d1;
        f0 + rise * w.clamp(0.0, 1.0)
    }

    /// Total tabulated mass.
    pub fn mass(&self) -> f64 {
        *self.values.last().unwrap_or(&0.0)
    }

    /// Smallest `x` with `F(x) ≥ p`, by bisection.
    pub fn quantile(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        let (mut lo, mut hi) = (0.0f64, self.u_max * self.u_max);
        if p >= self.mass() {
            return hi;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi.max(1e-300) {
                break;
            }
        }
        hi
    }
}

/// `2u p(u²)`, with its finite limit at `u = 0`.
fn integrand(pdf: &ReferencePdf, u: f64) -> f64 {
    if u == 0.0 {
        return match pdf {
            ReferencePdf::CoeY => (2.0 / PI).sqrt(),
            _ => 0.0,
        };
    }
    2.0 * u * pdf.density_unchecked(u * u)
}

/// Upper end of the table: doubled from 16 until the mass beyond it is negligible.
fn support_bound(pdf: &ReferencePdf) -> f64 {
    let mut x_max = 16.0f64;
    while x_max < 4096.0 {
        let tail = integrate(|x| pdf.density_unchecked(x), x_max, 2.0 * x_max, 1e-18);
        if tail < 1e-15 {
            break;
        }
        x_max *= 2.0;
    }
    x_max
}

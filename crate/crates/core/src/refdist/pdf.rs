use std::f64::consts::{FRAC_2_SQRT_PI, PI};
use std::fmt;
use std::str::FromStr;

use libm::erfc;

use crate::error::{QcaError, Result};

/// Which statistic a density describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    /// Unfolded nearest-neighbour spacing `s`.
    Spacing,
    /// Scaled eigenvector element `y = N|v|²`.
    EigvecElement,
}

/// Analytic reference densities.
///
/// The Wigner surmises use the normalizable decaying exponentials
/// `e^{−4s²/π}` and `e^{−πs²/4}`. The two-block densities describe the
/// superposition of two independent spectra occupying fractions `g1`,
/// `g2` of the Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferencePdf {
    /// `32s²/π² e^{−4s²/π}`
    CueS,
    /// Two independent CUE blocks.
    Cue2S { g1: f64, g2: f64 },
    /// Two equal CUE blocks.
    Cue2SEqual,
    /// `e^{−y}`
    CueY,
    /// `πs/2 e^{−πs²/4}`
    CoeS,
    /// `e^{−y/2} / √(2πy)`
    CoeY,
    /// Two independent COE blocks.
    Coe2S { g1: f64, g2: f64 },
    /// Two equal COE blocks.
    Coe2SEqual,
    /// `e^{−s}`, regular (integrable) spectra.
    PoissonS,
}

impl ReferencePdf {
    pub fn cue2(g1: f64, g2: f64) -> Result<Self> {
        check_fractions(g1, g2)?;
        Ok(ReferencePdf::Cue2S { g1, g2 })
    }

    pub fn coe2(g1: f64, g2: f64) -> Result<Self> {
        check_fractions(g1, g2)?;
        Ok(ReferencePdf::Coe2S { g1, g2 })
    }

    pub fn variable(&self) -> Variable {
        match self {
            ReferencePdf::CueY | ReferencePdf::CoeY => Variable::EigvecElement,
            _ => Variable::Spacing,
        }
    }

    /// Re-checks block fractions of values built without the constructors.
    pub fn validate(&self) -> Result<()> {
        match *self {
            ReferencePdf::Cue2S { g1, g2 } | ReferencePdf::Coe2S { g1, g2 } => {
                check_fractions(g1, g2)
            }
            _ => Ok(()),
        }
    }

    /// Density at `x ≥ 0`. `CoeY` is `+∞` at `x = 0`.
    pub fn density(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(QcaError::invalid(format!(
                "density argument must be ≥ 0, got {x}"
            )));
        }
        Ok(self.density_unchecked(x))
    }

    pub(crate) fn density_unchecked(&self, x: f64) -> f64 {
        match *self {
            ReferencePdf::CueS => cue_s(x),
            ReferencePdf::Cue2S { g1, g2 } => cue2_s(x, g1, g2),
            ReferencePdf::Cue2SEqual => cue2_s_equal(x),
            ReferencePdf::CueY => (-x).exp(),
            ReferencePdf::CoeS => coe_s(x),
            ReferencePdf::CoeY => (-x / 2.0).exp() / (2.0 * PI * x).sqrt(),
            ReferencePdf::Coe2S { g1, g2 } => coe2_s(x, g1, g2),
            ReferencePdf::Coe2SEqual => coe2_s_equal(x),
            ReferencePdf::PoissonS => (-x).exp(),
        }
    }

    /// Identifier usable in file names.
    pub fn file_stem(&self) -> String {
        self.to_string().replace(['(', ','], "_").replace(')', "")
    }
}

fn check_fractions(g1: f64, g2: f64) -> Result<()> {
    let ok = g1 > 0.0 && g1 < 1.0 && g2 > 0.0 && g2 < 1.0 && (g1 + g2 - 1.0).abs() <= 1e-12;
    if ok {
        Ok(())
    } else {
        Err(QcaError::invalid(format!(
            "block fractions must lie in (0, 1) and sum to 1, got ({g1}, {g2})"
        )))
    }
}

fn cue_s(s: f64) -> f64 {
    32.0 * s * s / (PI * PI) * (-4.0 * s * s / PI).exp()
}

fn coe_s(s: f64) -> f64 {
    PI * s / 2.0 * (-PI * s * s / 4.0).exp()
}

fn cue2_s(s: f64, g1: f64, g2: f64) -> f64 {
    // erf(2 g s / √π)
    let arg1 = g1 * s * FRAC_2_SQRT_PI;
    let arg2 = g2 * s * FRAC_2_SQRT_PI;
    let (erfc1, erfc2) = (erfc(arg1), erfc(arg2));
    let s2 = s * s;
    let a = 4.0 * s2 / PI;
    // 1 − erf1 − erf2 + erf1·erf2 = erfc1·erfc2, which keeps precision in the tail.
    let gap = 2.0 * g1 * g2 * erfc1 * erfc2;
    let (g1s, g2s) = (g1 * g1, g2 * g2);
    let pair =
        32.0 / (PI * PI) * s2 * (-a * (g1s + g2s)).exp() * (g1s * g1s + g1s * g2s + g2s * g2s);
    let cross = 8.0 / PI
        * g1
        * g2
        * s
        * (g1 * (-g1s * a).exp() * (1.0 - g1s * a) * erfc2
            + g2 * (-g2s * a).exp() * (1.0 - g2s * a) * erfc1);
    gap + pair + cross
}

fn cue2_s_equal(s: f64) -> f64 {
    let c = erfc(s / PI.sqrt());
    let s2 = s * s;
    0.5 * c * c
        + 6.0 / (PI * PI) * s2 * (-2.0 * s2 / PI).exp()
        + 2.0 / PI * s * (-s2 / PI).exp() * (1.0 - s2 / PI) * c
}

fn coe2_s(s: f64, g1: f64, g2: f64) -> f64 {
    let half_sqrt_pi = PI.sqrt() / 2.0;
    PI / 2.0 * s * g1.powi(3) * erfc(half_sqrt_pi * g2 * s) * (-PI * g1 * g1 * s * s / 4.0).exp()
        + PI / 2.0
            * s
            * g2.powi(3)
            * erfc(half_sqrt_pi * g1 * s)
            * (-PI * g2 * g2 * s * s / 4.0).exp()
        + 2.0 * g1 * g2 * (-PI * s * s * (g1 * g1 + g2 * g2) / 4.0).exp()
}

fn coe2_s_equal(s: f64) -> f64 {
    0.5 * (erfc(PI.sqrt() * s / 4.0) * PI * s / 4.0 * (-PI * s * s / 16.0).exp()
        + (-PI * s * s / 8.0).exp())
}

impl fmt::Display for ReferencePdf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReferencePdf::CueS => f.write_str("cue_s"),
            ReferencePdf::Cue2S { g1, g2 } => write!(f, "cue2_s({g1},{g2})"),
            ReferencePdf::Cue2SEqual => f.write_str("cue2_s_equal"),
            ReferencePdf::CueY => f.write_str("cue_y"),
            ReferencePdf::CoeS => f.write_str("coe_s"),
            ReferencePdf::CoeY => f.write_str("coe_y"),
            ReferencePdf::Coe2S { g1, g2 } => write!(f, "coe2_s({g1},{g2})"),
            ReferencePdf::Coe2SEqual => f.write_str("coe2_s_equal"),
            ReferencePdf::PoissonS => f.write_str("poisson_s"),
        }
    }
}

impl FromStr for ReferencePdf {
    type Err = QcaError;

    /// Parses `cue_s`, `cue2_s(g1,g2)`, …; fractions may be written `15/32`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let simple = match s {
            "cue_s" => Some(ReferencePdf::CueS),
            "cue2_s_equal" => Some(ReferencePdf::Cue2SEqual),
            "cue_y" => Some(ReferencePdf::CueY),
            "coe_s" => Some(ReferencePdf::CoeS),
            "coe_y" => Some(ReferencePdf::CoeY),
            "coe2_s_equal" => Some(ReferencePdf::Coe2SEqual),
            "poisson_s" => Some(ReferencePdf::PoissonS),
            _ => None,
        };
        if let Some(pdf) = simple {
            return Ok(pdf);
        }
        let unknown = || QcaError::invalid(format!("unknown reference distribution `{s}`"));
        let (head, rest) = s.split_once('(').ok_or_else(unknown)?;
        let args = rest.strip_suffix(')').ok_or_else(unknown)?;
        let (a, b) = args.split_once(',').ok_or_else(unknown)?;
        let (g1, g2) = (parse_fraction(a)?, parse_fraction(b)?);
        match head.trim() {
            "cue2_s" => ReferencePdf::cue2(g1, g2),
            "coe2_s" => ReferencePdf::coe2(g1, g2),
            _ => Err(unknown()),
        }
    }
}

fn parse_fraction(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || QcaError::invalid(format!("cannot parse block fraction `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            Ok(p / q)
        }
        None => s.parse().map_err(|_| bad()),
    }
}

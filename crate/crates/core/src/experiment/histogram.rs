use serde::{Deserialize, Serialize};

use crate::error::{QcaError, Result};

/// Bin layout of one statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scale", rename_all = "snake_case", deny_unknown_fields)]
pub enum BinSpec {
    /// Bins of fixed `width` covering `[lo, hi]`.
    Linear { lo: f64, hi: f64, width: f64 },
    /// `bins` logarithmically spaced bins covering `[lo, hi]`, `lo > 0`.
    Log { lo: f64, hi: f64, bins: usize },
}

const MAX_BINS: usize = 1_000_000;

impl BinSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            BinSpec::Linear { lo, hi, width } => {
                if !(width > 0.0) || !width.is_finite() {
                    return Err(QcaError::invalid(format!(
                        "bin width must be > 0, got {width}"
                    )));
                }
                if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
                    return Err(QcaError::invalid(format!(
                        "bin range [{lo}, {hi}] is empty"
                    )));
                }
                if (hi - lo) / width > MAX_BINS as f64 {
                    return Err(QcaError::invalid("too many bins"));
                }
            }
            BinSpec::Log { lo, hi, bins } => {
                if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() {
                    return Err(QcaError::invalid(format!(
                        "log bin range [{lo}, {hi}] is invalid"
                    )));
                }
                if bins == 0 || bins > MAX_BINS {
                    return Err(QcaError::invalid(format!(
                        "log binning needs 1..={MAX_BINS} bins, got {bins}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Interior bin edges, first to last.
    pub fn edges(&self) -> Vec<f64> {
        match *self {
            BinSpec::Linear { lo, hi, width } => {
                let count = ((hi - lo) / width).round().max(1.0) as usize;
                (0..=count)
                    .map(|i| {
                        if i == count {
                            hi
                        } else {
                            lo + i as f64 * width
                        }
                    })
                    .collect()
            }
            BinSpec::Log { lo, hi, bins } => {
                let (a, b) = (lo.ln(), hi.ln());
                (0..=bins)
                    .map(|i| match i {
                        0 => lo,
                        i if i == bins => hi,
                        i => (a + (b - a) * i as f64 / bins as f64).exp(),
                    })
                    .collect()
            }
        }
    }

    pub fn lo(&self) -> f64 {
        match *self {
            BinSpec::Linear { lo, .. } | BinSpec::Log { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> f64 {
        match *self {
            BinSpec::Linear { hi, .. } | BinSpec::Log { hi, .. } => hi,
        }
    }
}

/// Counts over `[−∞, e_0), [e_0, e_1), …, [e_last, ∞)`; the first and last
/// rows catch everything outside the configured range so the counts always
/// add up to the sample size.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn from_samples(spec: &BinSpec, samples: &[f64]) -> Self {
        let edges = spec.edges();
        let mut counts = vec![0u64; edges.len() + 1];
        for &x in samples {
            // Number of edges ≤ x picks the row.
            let row = edges.partition_point(|&e| e <= x);
            counts[row] += 1;
        }
        Histogram { edges, counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(left, right, count)` rows including the two open-ended ones.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, u64)> + '_ {
        let k = self.edges.len();
        self.counts.iter().enumerate().map(move |(i, &c)| {
            let left = if i == 0 {
                f64::NEG_INFINITY
            } else {
                self.edges[i - 1]
            };
            let right = if i == k { f64::INFINITY } else { self.edges[i] };
            (left, right, c)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn linear_edges() {
        let spec = BinSpec::Linear {
            lo: 0.0,
            hi: 4.0,
            width: 0.1,
        };
        let e = spec.edges();
        assert_eq!(e.len(), 41);
        assert_eq!(e[40], 4.0);
        assert!((e[13] - 1.3).abs() < 1e-12);
    }

    #[test]
    fn log_edges() {
        let spec = BinSpec::Log {
            lo: 1e-6,
            hi: 20.0,
            bins: 73,
        };
        let e = spec.edges();
        assert_eq!(e.len(), 74);
        assert_eq!(e[0], 1e-6);
        assert_eq!(e[73], 20.0);
        assert!(e.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn boundary_values() {
        let spec = BinSpec::Linear {
            lo: 0.0,
            hi: 1.0,
            width: 0.5,
        };
        let h = Histogram::from_samples(&spec, &[-1.0, 0.0, 0.49, 0.5, 1.0, 7.0]);
        assert_eq!(h.counts, vec![1, 2, 1, 2]);
        let rows: Vec<_> = h.rows().collect();
        assert_eq!(rows[0].0, f64::NEG_INFINITY);
        assert_eq!(rows[3], (1.0, f64::INFINITY, 2));
    }

    #[test]
    fn invalid_specs() {
        assert!(BinSpec::Linear {
            lo: 0.0,
            hi: 1.0,
            width: 0.0
        }
        .validate()
        .is_err());
        assert!(BinSpec::Linear {
            lo: 1.0,
            hi: 1.0,
            width: 0.1
        }
        .validate()
        .is_err());
        assert!(BinSpec::Log {
            lo: 0.0,
            hi: 1.0,
            bins: 5
        }
        .validate()
        .is_err());
        assert!(BinSpec::Log {
            lo: 0.1,
            hi: 1.0,
            bins: 0
        }
        .validate()
        .is_err());
    }

    proptest! {
        #[test]
        fn counts_sum_to_sample_size(xs in proptest::collection::vec(-10.0f64..50.0, 0..500), width in 0.01f64..2.0) {
            let spec = BinSpec::Linear { lo: 0.0, hi: 4.0, width };
            prop_assert_eq!(Histogram::from_samples(&spec, &xs).total(), xs.len() as u64);
            let log = BinSpec::Log { lo: 1e-6, hi: 20.0, bins: 30 };
            prop_assert_eq!(Histogram::from_samples(&log, &xs).total(), xs.len() as u64);
        }
    }
}

//! Circular-ensemble reference distributions, exact ensemble samplers and
//! goodness-of-fit tests.

mod cdf;
mod gof;
mod pdf;
mod quadrature;
mod sample;

pub use cdf::ReferenceCdf;
pub use gof::{
    kolmogorov_critical_value, kolmogorov_survival, ks_statistic, ks_test, ks_test_table,
    two_sample_ks, GofResult, MIN_SAMPLES,
};
pub use pdf::{ReferencePdf, Variable};
pub use quadrature::integrate;
pub use sample::{haar_state, sample_coe, sample_cue};

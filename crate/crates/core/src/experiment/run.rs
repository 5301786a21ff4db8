use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::histogram::{BinSpec, Histogram};
use super::spec::{ExperimentSpec, RefName, Statistic};
use crate::entanglement::{haar_q_reference, map_q_samples, QSample};
use crate::error::Result;
use crate::operator::{build_map, mirror_commutator_norm};
use crate::par::{try_map_indexed, Execution};
use crate::refdist::{
    haar_state, ks_test_table, two_sample_ks, GofResult, ReferenceCdf, ReferencePdf, Variable,
    MIN_SAMPLES,
};
use crate::rng::{aux_rng, member_seed, purpose};
use crate::spectral::{fidelity_decay, log_linear_fit, sigma_z_perturbation, SpectralData};

/// Number of points in each `curve_<name>.csv` table.
const CURVE_POINTS: usize = 801;

/// Commutator norms at or below this count as mirror symmetric.
const MIRROR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub count: usize,
    pub mean: f64,
    /// One test per configured reference; empty below 50 samples.
    pub tests: Vec<GofResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QSummary {
    pub count: usize,
    pub mean: f64,
    pub haar_mean: f64,
    /// Two-sample test against the Haar-state sample.
    pub test: Option<GofResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MirrorSummary {
    pub min_norm: f64,
    pub max_norm: f64,
    /// Maps whose commutator norm is at most 1e-10.
    pub symmetric_maps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelitySummary {
    pub epsilon: f64,
    pub steps: usize,
    /// Average over members of the per-member fit of `ln F(t)`.
    pub mean_r_squared: f64,
    pub mean_slope: f64,
    /// Members whose fidelity stayed above the floor long enough to fit.
    pub fitted_members: usize,
}

/// Summary of one iteration count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacings: Option<SampleSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigvec_elements: Option<SampleSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_distribution: Option<QSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror_check: Option<MirrorSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity_decay: Option<FidelitySummary>,
}

/// Pooled samples and summary for one iteration count.
#[derive(Debug, Clone)]
pub struct PointResult {
    pub summary: PointSummary,
    pub spacings: Vec<f64>,
    pub eigvec_elements: Vec<f64>,
    pub q: Vec<QSample>,
    /// `(map seed, commutator norm)` per member.
    pub mirror_norms: Vec<(u64, f64)>,
    /// `F(t)` per member.
    pub fidelities: Vec<Vec<f64>>,
}

impl PointResult {
    pub fn iterations(&self) -> usize {
        self.summary.iterations
    }

    /// `F(t)` averaged over members, for `t = 1..=steps`.
    pub fn mean_fidelity(&self) -> Vec<f64> {
        let Some(first) = self.fidelities.first() else {
            return Vec::new();
        };
        let k = self.fidelities.len() as f64;
        (0..first.len())
            .map(|t| self.fidelities.iter().map(|f| f[t]).sum::<f64>() / k)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub version: String,
    pub master_seed: u64,
    pub wall_time_seconds: f64,
    pub warnings: Vec<String>,
    pub spec: ExperimentSpec,
    pub points: Vec<PointSummary>,
}

#[derive(Debug, Clone)]
pub struct ResultBundle {
    pub metadata: RunMetadata,
    pub points: Vec<PointResult>,
    /// Haar-state `Q` reference, shared by all points.
    pub q_haar: Vec<f64>,
}

struct Member {
    seed: u64,
    spectral: Option<SpectralData>,
    q: Vec<QSample>,
    mirror: Option<f64>,
    fidelity: Option<Vec<f64>>,
}

fn evaluate_member(spec: &ExperimentSpec, iterations: usize, index: usize) -> Result<Member> {
    let seed = member_seed(spec.master_seed, index as u64);
    let cfg = spec.map.to_config(iterations, seed)?;
    let n = cfg.qubits();
    let u = build_map(&cfg)?;
    let spectral = if spec.wants(Statistic::Spacings) || spec.wants(Statistic::EigvecElements) {
        Some(SpectralData::from_unitary(&u)?)
    } else {
        None
    };
    let q = if spec.wants(Statistic::QDistribution) {
        map_q_samples(u.as_matrix().as_slice(), n, seed)
    } else {
        Vec::new()
    };
    let mirror = spec
        .wants(Statistic::MirrorCheck)
        .then(|| mirror_commutator_norm(&u, n));
    let fidelity = if spec.wants(Statistic::FidelityDecay) {
        let psi = haar_state(n, &mut aux_rng(seed, purpose::INITIAL_STATE));
        let pert = sigma_z_perturbation(n, spec.fidelity.epsilon);
        Some(fidelity_decay(&u, &pert, &psi, spec.fidelity.steps)?)
    } else {
        None
    };
    Ok(Member {
        seed,
        spectral,
        q,
        mirror,
        fidelity,
    })
}

fn mean(xs: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = xs.len();
    if n == 0 {
        return f64::NAN;
    }
    xs.sum::<f64>() / n as f64
}

fn sample_summary(samples: &[f64], tables: &[ReferenceCdf], alpha: f64) -> Result<SampleSummary> {
    let tests = if samples.len() >= MIN_SAMPLES {
        tables
            .iter()
            .map(|t| ks_test_table(samples, t, alpha))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(SampleSummary {
        count: samples.len(),
        mean: mean(samples.iter().copied()),
        tests,
    })
}

fn run_point(
    spec: &ExperimentSpec,
    iterations: usize,
    exec: Execution,
    spacing_tables: &[ReferenceCdf],
    eigvec_tables: &[ReferenceCdf],
    q_haar: &[f64],
) -> Result<PointResult> {
    let members = try_map_indexed(spec.ensemble_size, exec, |i| {
        evaluate_member(spec, iterations, i)
    })?;
    let mut spacings = Vec::new();
    let mut eigvec_elements = Vec::new();
    let mut q = Vec::new();
    let mut mirror_norms = Vec::new();
    let mut fidelities = Vec::new();
    for m in members {
        if let Some(sd) = m.spectral {
            if spec.wants(Statistic::Spacings) {
                spacings.extend(sd.spacings);
            }
            if spec.wants(Statistic::EigvecElements) {
                eigvec_elements.extend(sd.eigvec_elements);
            }
        }
        q.extend(m.q);
        if let Some(norm) = m.mirror {
            mirror_norms.push((m.seed, norm));
        }
        if let Some(f) = m.fidelity {
            fidelities.push(f);
        }
    }

    let mut summary = PointSummary {
        iterations,
        spacings: None,
        eigvec_elements: None,
        q_distribution: None,
        mirror_check: None,
        fidelity_decay: None,
    };
    if spec.wants(Statistic::Spacings) {
        summary.spacings = Some(sample_summary(&spacings, spacing_tables, spec.alpha)?);
    }
    if spec.wants(Statistic::EigvecElements) {
        summary.eigvec_elements =
            Some(sample_summary(&eigvec_elements, eigvec_tables, spec.alpha)?);
    }
    if spec.wants(Statistic::QDistribution) {
        let values: Vec<f64> = q.iter().map(|s| s.q).collect();
        let test = if values.len() >= MIN_SAMPLES {
            Some(two_sample_ks(&values, q_haar, spec.alpha, "haar_q")?)
        } else {
            None
        };
        summary.q_distribution = Some(QSummary {
            count: values.len(),
            mean: mean(values.iter().copied()),
            haar_mean: mean(q_haar.iter().copied()),
            test,
        });
    }
    if spec.wants(Statistic::MirrorCheck) {
        let norms = mirror_norms.iter().map(|p| p.1);
        summary.mirror_check = Some(MirrorSummary {
            min_norm: norms.clone().fold(f64::INFINITY, f64::min),
            max_norm: norms.clone().fold(0.0, f64::max),
            symmetric_maps: norms.filter(|&x| x <= MIRROR_TOL).count(),
        });
    }
    if spec.wants(Statistic::FidelityDecay) {
        let fits: Vec<_> = fidelities
            .iter()
            .filter_map(|f| log_linear_fit(f, spec.fidelity.fit_floor))
            .collect();
        summary.fidelity_decay = Some(FidelitySummary {
            epsilon: spec.fidelity.epsilon,
            steps: spec.fidelity.steps,
            mean_r_squared: mean(fits.iter().map(|f| f.r_squared)),
            mean_slope: mean(fits.iter().map(|f| f.slope)),
            fitted_members: fits.len(),
        });
    }
    Ok(PointResult {
        summary,
        spacings,
        eigvec_elements,
        q,
        mirror_norms,
        fidelities,
    })
}

fn tables(refs: &[RefName]) -> Result<Vec<ReferenceCdf>> {
    refs.iter().map(|r| ReferenceCdf::new(r.0)).collect()
}

/// Runs every iteration point of `spec`.
///
/// Map `i` of every point uses seed `member_seed(master_seed, i)`, so a sweep
/// compares the same maps truncated at different depths. Results do not
/// depend on `exec`.
pub fn run_experiment(spec: &ExperimentSpec, exec: Execution) -> Result<ResultBundle> {
    let start = Instant::now();
    let warnings = spec.validate()?;
    let spacing_tables = tables(&spec.spacing_refs)?;
    let eigvec_tables = tables(&spec.eigvec_refs)?;
    let q_haar = if spec.wants(Statistic::QDistribution) {
        haar_q_reference(
            spec.map.qubits,
            spec.ensemble_size << spec.map.qubits,
            spec.master_seed,
        )?
    } else {
        Vec::new()
    };
    let points = spec
        .iteration_points()
        .into_iter()
        .map(|m| run_point(spec, m, exec, &spacing_tables, &eigvec_tables, &q_haar))
        .collect::<Result<Vec<_>>>()?;
    let metadata = RunMetadata {
        version: env!("CARGO_PKG_VERSION").to_string(),
        master_seed: spec.master_seed,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        warnings,
        spec: spec.clone(),
        points: points.iter().map(|p| p.summary.clone()).collect(),
    };
    Ok(ResultBundle {
        metadata,
        points,
        q_haar,
    })
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn histogram_csv(h: &Histogram) -> String {
    let mut out = String::from("bin_left,bin_right,count\n");
    for (l, r, c) in h.rows() {
        let _ = writeln!(out, "{},{},{}", fmt_f(l), fmt_f(r), c);
    }
    out
}

fn curve_csv(pdf: &ReferencePdf, bins: &BinSpec) -> String {
    let (lo, hi) = (bins.lo(), bins.hi());
    let xs: Vec<f64> = match bins {
        BinSpec::Log { .. } => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..CURVE_POINTS)
                .map(|i| (a + (b - a) * i as f64 / (CURVE_POINTS - 1) as f64).exp())
                .collect()
        }
        BinSpec::Linear { .. } => {
            // The y densities may diverge at zero.
            let start = if lo <= 0.0 && pdf.variable() == Variable::EigvecElement {
                hi * 1e-6
            } else {
                lo.max(0.0)
            };
            (0..CURVE_POINTS)
                .map(|i| start + (hi - start) * i as f64 / (CURVE_POINTS - 1) as f64)
                .collect()
        }
    };
    let mut out = String::from("x,density\n");
    for x in xs {
        let _ = writeln!(out, "{},{}", fmt_f(x), fmt_f(pdf.density(x).unwrap_or(0.0)));
    }
    out
}

fn values_csv(header: &str, xs: &[f64]) -> String {
    let mut out = format!("{header}\n");
    for &x in xs {
        let _ = writeln!(out, "{}", fmt_f(x));
    }
    out
}

impl ResultBundle {
    /// Directory of point `k` below `root`: `root` itself for a single
    /// point, `root/m<iterations>` for sweeps.
    pub fn point_dir(&self, root: &Path, k: usize) -> PathBuf {
        if self.points.len() == 1 {
            root.to_path_buf()
        } else {
            root.join(format!("m{}", self.points[k].iterations()))
        }
    }

    /// Writes `metadata.json` and the per-statistic CSV files.
    pub fn write(&self, root: &Path) -> io::Result<()> {
        fs::create_dir_all(root)?;
        let spec = &self.metadata.spec;
        let meta = serde_json::to_string_pretty(&self.metadata).map_err(io::Error::other)?;
        fs::write(root.join("metadata.json"), meta + "\n")?;
        for (k, point) in self.points.iter().enumerate() {
            let dir = self.point_dir(root, k);
            fs::create_dir_all(&dir)?;
            let put = |name: &str, body: String| fs::write(dir.join(name), body);
            if spec.wants(Statistic::Spacings) {
                put(
                    "spacings.csv",
                    histogram_csv(&Histogram::from_samples(
                        &spec.binning.spacings,
                        &point.spacings,
                    )),
                )?;
                for r in &spec.spacing_refs {
                    put(
                        &format!("curve_{}.csv", r.0.file_stem()),
                        curve_csv(&r.0, &spec.binning.spacings),
                    )?;
                }
                if spec.raw_output {
                    put("raw_spacings.csv", values_csv("s", &point.spacings))?;
                }
            }
            if spec.wants(Statistic::EigvecElements) {
                let h = Histogram::from_samples(&spec.binning.eigvec, &point.eigvec_elements);
                put("eigvec.csv", histogram_csv(&h))?;
                for r in &spec.eigvec_refs {
                    put(
                        &format!("curve_{}.csv", r.0.file_stem()),
                        curve_csv(&r.0, &spec.binning.eigvec),
                    )?;
                }
                if spec.raw_output {
                    put("raw_eigvec.csv", values_csv("y", &point.eigvec_elements))?;
                }
            }
            if spec.wants(Statistic::QDistribution) {
                let values: Vec<f64> = point.q.iter().map(|s| s.q).collect();
                put(
                    "q.csv",
                    histogram_csv(&Histogram::from_samples(&spec.binning.q, &values)),
                )?;
                put(
                    "q_haar.csv",
                    histogram_csv(&Histogram::from_samples(&spec.binning.q, &self.q_haar)),
                )?;
                if spec.raw_output {
                    let mut out = String::from("map_index,map_seed,source_state,q\n");
                    let per_map = 1usize << spec.map.qubits;
                    for (i, s) in point.q.iter().enumerate() {
                        let _ = writeln!(
                            out,
                            "{},{},{},{}",
                            i / per_map,
                            s.map_seed,
                            s.source_state,
                            fmt_f(s.q)
                        );
                    }
                    put("raw_q.csv", out)?;
                    put("raw_q_haar.csv", values_csv("q", &self.q_haar))?;
                }
            }
            if spec.wants(Statistic::MirrorCheck) {
                let mut out = String::from("map_index,map_seed,commutator_norm\n");
                for (i, (seed, norm)) in point.mirror_norms.iter().enumerate() {
                    let _ = writeln!(out, "{i},{seed},{}", fmt_f(*norm));
                }
                put("mirror.csv", out)?;
            }
            if spec.wants(Statistic::FidelityDecay) {
                let mut out = String::from("t,mean_fidelity\n");
                let _ = writeln!(out, "0,{}", fmt_f(1.0));
                for (t, f) in point.mean_fidelity().iter().enumerate() {
                    let _ = writeln!(out, "{},{}", t + 1, fmt_f(*f));
                }
                put("fidelity.csv", out)?;
            }
        }
        Ok(())
    }
}

//! `qca`: run pseudo-random map ensemble experiments and write histogram/CSV results.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qca_core::experiment::{list_presets, preset, run_experiment, ExperimentSpec, ResultBundle};
use qca_core::par::Execution;
use qca_core::QcaError;

#[derive(Parser)]
#[command(
    name = "qca",
    version,
    about = "Quantum cellular automaton pseudo-random map experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON spec file.
    Run {
        #[arg(long)]
        spec: PathBuf,
        /// Output directory; defaults to the spec's `output` field.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the spec's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (1 runs sequentially).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run a built-in experiment.
    Preset {
        name: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List the built-in experiments.
    ListPresets,
    /// Check a spec file without running it.
    Validate {
        #[arg(long)]
        spec: PathBuf,
    },
}

enum Failure {
    Spec(String),
    Numeric(String),
    Io(String),
}

impl From<QcaError> for Failure {
    fn from(e: QcaError) -> Self {
        match e {
            QcaError::Numeric(_) => Failure::Numeric(e.to_string()),
            _ => Failure::Spec(e.to_string()),
        }
    }
}

fn load_spec(path: &Path) -> Result<ExperimentSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Spec(format!("{}: {e}", path.display())))?;
    Ok(ExperimentSpec::from_json(&text)?)
}

fn execution(threads: Option<usize>) -> Result<Execution, Failure> {
    match threads {
        None => Ok(Execution::Parallel),
        Some(0) => Err(Failure::Spec("--threads must be at least 1".into())),
        Some(1) => Ok(Execution::Sequential),
        Some(k) => Ok(Execution::Threads(k)),
    }
}

fn print_summary(bundle: &ResultBundle) {
    for point in &bundle.metadata.points {
        println!("m = {}", point.iterations);
        let spectral = [("s", &point.spacings), ("y", &point.eigvec_elements)];
        let tests = spectral.iter().flat_map(|(v, s)| {
            s.iter()
                .flat_map(move |s| s.tests.iter().map(move |t| (*v, t)))
        });
        let q = point
            .q_distribution
            .iter()
            .flat_map(|q| q.test.iter().map(|t| ("Q", t)));
        for (var, t) in tests.chain(q) {
            let verdict = if t.reject { "reject" } else { "accept" };
            println!(
                "  {var} vs {:<24} D = {:.5}  critical {:.5}  p = {:.3}  {verdict}",
                t.reference, t.statistic, t.critical_value, t.p_value
            );
        }
        if let Some(m) = &point.mirror_check {
            println!(
                "  mirror commutator norm: min {:.3e}, max {:.3e}",
                m.min_norm, m.max_norm
            );
        }
        if let Some(f) = &point.fidelity_decay {
            println!(
                "  fidelity decay: mean R² {:.4}, mean slope {:.5}",
                f.mean_r_squared, f.mean_slope
            );
        }
    }
}

fn execute(
    mut spec: ExperimentSpec,
    out: PathBuf,
    seed: Option<u64>,
    threads: Option<usize>,
) -> Result<(), Failure> {
    if let Some(seed) = seed {
        spec.master_seed = seed;
    }
    let exec = execution(threads)?;
    for w in spec.validate()? {
        eprintln!("warning: {w}");
    }
    let bundle = run_experiment(&spec, exec)?;
    bundle
        .write(&out)
        .map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    print_summary(&bundle);
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run {
            spec,
            out,
            seed,
            threads,
        } => {
            let spec = load_spec(&spec)?;
            let out = out
                .or_else(|| spec.output.as_ref().map(PathBuf::from))
                .ok_or_else(|| {
                    Failure::Spec("no output directory: pass --out or set `output`".into())
                })?;
            execute(spec, out, seed, threads)
        }
        Command::Preset {
            name,
            out,
            seed,
            threads,
        } => {
            let spec =
                preset(&name).ok_or_else(|| Failure::Spec(format!("unknown preset `{name}`")))?;
            execute(spec, out, seed, threads)
        }
        Command::ListPresets => {
            for p in list_presets() {
                println!("{:<11} {}", p.name, p.description);
            }
            Ok(())
        }
        Command::Validate { spec } => {
            let spec = load_spec(&spec)?;
            for w in spec.validate()? {
                eprintln!("warning: {w}");
            }
            println!("{}: ok", spec.name);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Spec(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numeric error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("io error: {msg}");
            ExitCode::from(1)
        }
    }
}

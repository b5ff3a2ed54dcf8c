//! Command-line driver: reproducible experiments and plot-data emission.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use landscan::config::{write_matrix_csv, RunConfig};
use landscan::error::Error;
use landscan::qsim;
use landscan::resources;
use landscan::{invsolve, landscape, linalg};

#[derive(Parser)]
#[command(name = "landscan", version, about = "Eigenvalue landscape scanning toolkit")]
struct Cli {
    /// Worker threads for the scan pools (default: available cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the collocation matrices and write them to the output dir.
    Build {
        #[arg(long)]
        config: PathBuf,
    },
    /// Solve by the matrix-inverse route and report energies.
    Inverse {
        #[arg(long)]
        config: PathBuf,
    },
    /// Classical landscape scan: sigma_min over the alpha window.
    Scan {
        #[arg(long)]
        config: PathBuf,
    },
    /// Randomized amplified scan simulation (requires a `quantum` section).
    Qscan {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        rounds: u64,
        /// Seed override (the config's quantum.seed otherwise).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Evaluate the cost estimates (requires a `resources` section).
    Resources {
        #[arg(long)]
        config: PathBuf,
    },
    /// Bisect for the basis size where the amplified scan becomes cheaper.
    Crossover {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 2)]
        lo: u64,
        #[arg(long, default_value_t = 1 << 30)]
        hi: u64,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // a failure here means a pool already exists; that is fine in-process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for validation problems, 3 for numerical failures.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidConfig(_)
        | Error::InvalidSpan(_)
        | Error::ShapeMismatch(_)
        | Error::OutOfDomain(_)
        | Error::Io(_)
        | Error::Serde(_)
        | Error::Parse(_) => 2,
        Error::NonFinite
        | Error::ConvergenceFailure(_)
        | Error::NotHermitian { .. }
        | Error::NotPositiveDefinite
        | Error::DegenerateRange
        | Error::TooLarge { .. }
        | Error::BudgetExceeded { .. } => 3,
    }
}

fn write_json<T: serde::Serialize>(value: &T, path: &std::path::Path) -> landscan::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn run(cmd: Command) -> landscan::Result<()> {
    match cmd {
        Command::Build { config } => {
            let cfg = RunConfig::from_file(&config)?;
            std::fs::create_dir_all(&cfg.output_dir)?;
            let sys = cfg.build_system()?;
            write_matrix_csv(&sys.b, &cfg.output_dir.join("b.csv"))?;
            write_matrix_csv(&sys.bpp, &cfg.output_dir.join("bpp.csv"))?;
            write_matrix_csv(&sys.vdiag, &cfg.output_dir.join("vdiag.csv"))?;
            let gram = sys.b.transpose() * &sys.b;
            let kappa = linalg::cond2(&gram)?;
            let meta = serde_json::json!({
                "n_basis": cfg.n_basis,
                "n_grid": cfg.n_grid,
                "span": cfg.span,
                "width_factor": cfg.width_factor,
                "basis_width": sys.basis.width,
                "kappa_gram": kappa,
            });
            write_json(&meta, &cfg.output_dir.join("build_meta.json"))?;
            println!("kappa(B^T B) = {kappa:.6e}");
            Ok(())
        }
        Command::Inverse { config } => {
            let cfg = RunConfig::from_file(&config)?;
            std::fs::create_dir_all(&cfg.output_dir)?;
            let sys = cfg.build_system()?;
            let report = invsolve::solve_by_inverse(&sys)?;
            write_json(&report, &cfg.output_dir.join("inverse_report.json"))?;
            println!(
                "status {:?}: {} real energies, {} complex, kappa = {:.3e}",
                report.status,
                report.energies.len(),
                report.complex_count,
                report.kappa
            );
            Ok(())
        }
        Command::Scan { config } => {
            let cfg = RunConfig::from_file(&config)?;
            std::fs::create_dir_all(&cfg.output_dir)?;
            let sys = cfg.build_system()?;
            let fam = cfg.residue_family(&sys)?;
            let scan = landscape::scan(&fam)?;
            landscape::write_scan_csv(&scan, &cfg.output_dir.join("landscape.csv"))?;
            let threshold = landscape::default_threshold(&scan);
            let dips = landscape::detect_dips(&scan, threshold)?;
            write_json(&dips, &cfg.output_dir.join("dips.json"))?;
            println!("{} dips below threshold {threshold:.3e}", dips.dips.len());
            Ok(())
        }
        Command::Qscan {
            config,
            rounds,
            seed,
        } => {
            let cfg = RunConfig::from_file(&config)?;
            std::fs::create_dir_all(&cfg.output_dir)?;
            let mut qcfg = cfg
                .quantum
                .clone()
                .ok_or_else(|| Error::InvalidConfig("qscan needs a `quantum` config section".into()))?;
            if let Some(s) = seed {
                qcfg.seed = s;
            }
            let sys = cfg.build_system()?;
            let alpha_grid = cfg.residue_family(&sys)?.alpha_grid;
            let ext = qsim::extend_rect(
                vec![(0, sys.m0.clone()), (1, -&sys.b)],
                alpha_grid,
            )?;
            let outcome = qsim::run_scan(&ext, &qcfg, rounds)?;
            write_samples_jsonl(&outcome, &cfg.output_dir.join("samples.jsonl"))?;
            let hits: Vec<f64> = outcome
                .samples
                .iter()
                .filter(|s| s.chi == 1)
                .map(|s| s.alpha)
                .collect();
            let counts = landscape::density_histogram(
                &hits,
                cfg.k_points.min(100),
                cfg.alpha_window.0,
                cfg.alpha_window.1,
            )?;
            write_histogram_csv(&counts, cfg.alpha_window, &cfg.output_dir.join("histogram.csv"))?;
            // statevector cross-check on instances small enough to simulate
            let sv_fraction = if qsim::qubit_count(&ext, &qcfg) <= qsim::statevector::MAX_QUBITS {
                let sv = qsim::statevector_oracle(&ext, &qcfg, 0, 4096)?;
                Some(sv.marked_set_size as f64 / sv.dimension as f64)
            } else {
                None
            };
            let meta = serde_json::json!({
                "rounds": rounds,
                "marked_set_size": outcome.marked_set_size,
                "dimension": outcome.dimension,
                "chi_one_count": hits.len(),
                "statevector_marked_fraction": sv_fraction,
            });
            write_json(&meta, &cfg.output_dir.join("qscan_meta.json"))?;
            println!(
                "{} samples, {} flagged, window holds {} of {} eigenstates",
                outcome.samples.len(),
                hits.len(),
                outcome.marked_set_size,
                outcome.dimension
            );
            Ok(())
        }
        Command::Resources { config } => {
            let cfg = RunConfig::from_file(&config)?;
            std::fs::create_dir_all(&cfg.output_dir)?;
            let inputs = cfg
                .resources
                .ok_or_else(|| Error::InvalidConfig("resources needs a `resources` section".into()))?;
            // block-encoding constants from the assembled matrices: the
            // identity pairs with M0, the diagonal alpha matrix with B
            let sys = cfg.build_system()?;
            let pairs = vec![
                (1.0, zeta_of(&sys.m0)),
                (
                    cfg.alpha_window.0.abs().max(cfg.alpha_window.1.abs()),
                    zeta_of(&sys.b),
                ),
            ];
            let report = resources::cost_report(&inputs, &pairs)?;
            write_json(&report, &cfg.output_dir.join("cost_report.json"))?;
            println!(
                "classical scan {:.3e}, amplified scan {:.3e}",
                report.classical_scan, report.quantum_scan
            );
            Ok(())
        }
        Command::Crossover { config, lo, hi } => {
            let cfg = RunConfig::from_file(&config)?;
            std::fs::create_dir_all(&cfg.output_dir)?;
            let inputs = cfg
                .resources
                .ok_or_else(|| Error::InvalidConfig("crossover needs a `resources` section".into()))?;
            let n_star = resources::crossover_n(&inputs, lo, hi)?;
            let out = serde_json::json!({ "n_star": n_star, "lo": lo, "hi": hi });
            write_json(&out, &cfg.output_dir.join("crossover.json"))?;
            match n_star {
                Some(n) => println!("crossover at N = {n}"),
                None => println!("no crossover in [{lo}, {hi}]"),
            }
            Ok(())
        }
    }
}

/// `d * max_norm` with d = densest row count of entries above noise level.
fn zeta_of(m: &nalgebra::DMatrix<f64>) -> f64 {
    let d = (0..m.nrows())
        .map(|r| (0..m.ncols()).filter(|&c| m[(r, c)].abs() > 1e-14).count())
        .max()
        .unwrap_or(0);
    resources::zeta_sparse(d as u64, m.amax())
}

fn write_samples_jsonl(
    outcome: &qsim::ScanOutcome,
    path: &std::path::Path,
) -> landscan::Result<()> {
    use std::io::Write;
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    for s in &outcome.samples {
        let record = serde_json::json!({
            "alpha": s.alpha,
            "lambda_tilde": s.lambda_tilde,
            "chi": s.chi,
            "xi": s.xi,
        });
        writeln!(f, "{record}")?;
    }
    Ok(())
}

fn write_histogram_csv(
    counts: &[u64],
    window: (f64, f64),
    path: &std::path::Path,
) -> landscan::Result<()> {
    use std::io::Write;
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "bin_lo,bin_hi,count")?;
    let width = (window.1 - window.0) / counts.len() as f64;
    for (i, c) in counts.iter().enumerate() {
        let lo = window.0 + width * i as f64;
        writeln!(f, "{},{},{}", lo, lo + width, c)?;
    }
    Ok(())
}

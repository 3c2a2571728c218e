use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use meansq_cli::config::ExperimentConfig;
use meansq_cli::scan::run_scan;
use meansq_cli::suites::run_suite;
use meansq_core::charsum::{auto_k_max, poisson_check_cached};
use meansq_core::euler::constants;
use meansq_core::gauss::{gauss_exact, gauss_naive, NAIVE_CAP};
use meansq_core::smoothfn::{SmoothWindow, TransformCache};
use serde_json::json;

/// Mean squares of real character sums: verification suites, prediction
/// constants, and (X, Y)-grid experiments.
#[derive(Parser)]
#[command(name = "meansq", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: gauss | poisson | oracle | euler | all
    Verify {
        suite: String,
        /// Also write the report as JSON to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compute C1, C2 and their ingredients; print and persist as JSON
    Constants {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output path (default constants.json)
        #[arg(long, default_value = "constants.json")]
        out: PathBuf,
    },
    /// Run the (X, Y = X^theta) scan described by a config file
    Scan {
        #[arg(long)]
        config: PathBuf,
    },
    /// Two-sided Poisson summation check at odd n
    Poisson {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        x: f64,
        /// Truncation of the dual sum; selected automatically when omitted
        #[arg(long)]
        k_max: Option<u64>,
    },
    /// Print G_m(k) exactly and (for small k) by definitional summation
    Gauss {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        k: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Verify { suite, json } => {
            let reports = run_suite(&suite).with_context(|| {
                format!("unknown suite '{suite}'; expected gauss | poisson | oracle | euler | all")
            })?;
            let mut all_pass = true;
            for r in &reports {
                r.print_human();
                all_pass &= r.pass;
            }
            if let Some(path) = json {
                std::fs::write(&path, serde_json::to_string_pretty(&reports)?)?;
                println!("report written to {}", path.display());
            }
            println!("verify {suite}: {}", if all_pass { "PASS" } else { "FAIL" });
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Constants { config, out } => {
            let cfg = match config {
                Some(path) => ExperimentConfig::load(&path)?,
                None => ExperimentConfig::default(),
            };
            cfg.validate()?;
            let phi = cfg.phi.build()?;
            let w = cfg.w.build()?;
            let c = constants(&phi, &w, cfg.prime_cutoff, cfg.a_max)?;
            let doc = json!({
                "C1": c.c1,
                "C2": c.c2,
                "h1_tilde_half": c.h1_tilde,
                "z2": {
                    "value": c.z2.value,
                    "raw_product": c.z2.raw_product,
                    "prime_cutoff": c.z2.prime_cutoff,
                    "tail_estimate": c.z2.tail_estimate,
                },
                "c2_sum": {
                    "value": c.c2_sum.value,
                    "direct_partial": c.c2_sum.direct_partial,
                    "a_max": c.c2_sum.a_max,
                    "prime_cutoff": c.c2_sum.prime_cutoff,
                },
                "cutoffs": { "prime_cutoff": cfg.prime_cutoff, "a_max": cfg.a_max },
                "windows": { "phi": cfg.phi, "w": cfg.w },
            });
            let pretty = serde_json::to_string_pretty(&doc)?;
            println!("{pretty}");
            std::fs::write(&out, pretty)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            if cfg.x_values.is_empty() {
                anyhow::bail!("config has no x_values to scan");
            }
            let records = run_scan(&cfg, false)?;
            println!(
                "scan complete: {} points -> {}.csv, {}.jsonl (checkpoint {})",
                records.len(),
                cfg.output,
                cfg.output,
                cfg.checkpoint
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Poisson { n, x, k_max } => {
            let cache = TransformCache::new(SmoothWindow::standard());
            let k_max = k_max.unwrap_or_else(|| auto_k_max(n, x, &cache, 1e-8));
            let rep = poisson_check_cached(n, x, &cache, k_max)?;
            println!(
                "n = {}, X = {}: lhs = {:.12e}, rhs = {:.12e}",
                rep.n, rep.x, rep.lhs, rep.rhs
            );
            println!(
                "abs_error = {:.3e}, k_max = {}, tail_bound = {:.3e}",
                rep.abs_error, rep.k_max, rep.tail_bound
            );
            Ok(if rep.abs_error < 1e-6 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Gauss { m, k } => {
            let tables = meansq_core::arith::build_sieves(k.clamp(4, 1 << 20))?;
            let exact = gauss_exact(m, k, &tables)?;
            println!(
                "G_{m}({k}) = {} * sqrt({}) = {:.12}",
                exact.coefficient(),
                exact.radicand(),
                exact.to_f64()
            );
            if k <= NAIVE_CAP {
                let naive = gauss_naive(m, k)?;
                println!(
                    "definitional sum: {:.12} + {:.3e} i (|diff| = {:.3e})",
                    naive.re,
                    naive.im,
                    (naive.re - exact.to_f64()).abs()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

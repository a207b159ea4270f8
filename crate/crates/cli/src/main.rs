//! Command-line front end: suite dispatch, kernel grid dumps, and report
//! output.
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
//! configuration error.

mod config;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{Overrides, RunConfig};
use starcyl_core::kernels::{
    diag_difference, eval_dw_cyl_closed, eval_e_cyl, eval_e_mink, NullPoint, TWO_PI,
};
use starcyl_core::suites::{run_suite, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "starcyl",
    about = "Verification suites for the chiral massless scalar field on the Einstein cylinder",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run named verification suites and write JSON reports.
    Verify {
        /// Suites to run (default: all of them).
        suites: Vec<String>,
        #[arg(long)]
        n_max: Option<i64>,
        /// Mode-sum truncation window K (must be >= 4·n_max).
        #[arg(long)]
        k_trunc: Option<i64>,
        /// Truncation order of the deformation-parameter series.
        #[arg(long)]
        hbar_order: Option<usize>,
        #[arg(long)]
        band_limit: Option<i64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Flat `key = value` config file; flags take precedence.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Write a kernel grid as CSV: columns (u_sep, v_sep, value).
    DumpKernel {
        /// One of: e-mink, e-cyl, w-cyl, diag-diff.
        name: String,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the available suite identifiers.
    ListSuites,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::ListSuites => {
            for name in SUITE_NAMES {
                println!("{name}");
            }
            Ok(true)
        }
        Command::Verify {
            suites,
            n_max,
            k_trunc,
            hbar_order,
            band_limit,
            seed,
            config,
            out_dir,
            format: ReportFormat::Json,
        } => {
            let flags = Overrides {
                n_max,
                k_trunc,
                hbar_order,
                band_limit,
                seed,
                out_dir,
            };
            let cfg = RunConfig::resolve(config.as_deref(), &flags).map_err(|e| e.to_string())?;
            let requested: Vec<String> = if suites.is_empty() {
                SUITE_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                suites
            };
            for name in &requested {
                if !SUITE_NAMES.contains(&name.as_str()) {
                    return Err(format!(
                        "unknown suite `{name}` (available: {})",
                        SUITE_NAMES.join(", ")
                    ));
                }
            }
            verify(&cfg, &requested)
        }
        Command::DumpKernel { name, grid, out } => {
            dump_kernel(&name, grid, &out)?;
            Ok(true)
        }
    }
}

fn verify(cfg: &RunConfig, suites: &[String]) -> Result<bool, String> {
    fs::create_dir_all(&cfg.out_dir)
        .map_err(|e| format!("cannot create {}: {e}", cfg.out_dir.display()))?;
    let params = cfg.run_params();
    let mut all_passed = true;
    for name in suites {
        let report = run_suite(name, &params)
            .expect("suite names validated above")
            .map_err(|e| format!("suite {name}: {e}"))?;
        let path = cfg.out_dir.join(format!("{name}.json"));
        write_atomic(&path, report.to_json_pretty().as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        let passed = report.passed();
        all_passed &= passed;
        let n_fail = report.checks.iter().filter(|c| !c.pass).count();
        println!(
            "suite {name}: {} ({} checks, {} failed) -> {}",
            if passed { "PASS" } else { "FAIL" },
            report.checks.len(),
            n_fail,
            path.display()
        );
    }
    let cfg_path = cfg.out_dir.join("effective-config.cfg");
    write_atomic(&cfg_path, cfg.to_string().as_bytes())
        .map_err(|e| format!("cannot write {}: {e}", cfg_path.display()))?;
    Ok(all_passed)
}

/// Atomic file write: temp file in the same directory, then rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn dump_kernel(name: &str, grid: usize, out: &Path) -> Result<(), String> {
    let value_fn: Box<dyn Fn(f64, f64) -> f64> = match name {
        "e-mink" => Box::new(|u, v| eval_e_mink(NullPoint::new(u, v), NullPoint::new(0.0, 0.0))),
        "e-cyl" => Box::new(|u, v| eval_e_cyl(NullPoint::new(u, v), NullPoint::new(0.0, 0.0))),
        "w-cyl" => Box::new(|u, _v| eval_dw_cyl_closed(u, 0.0, 1e-3).re),
        "diag-diff" => {
            Box::new(|u, _v| diag_difference(u).expect("midpoint grid stays inside the chart"))
        }
        other => {
            return Err(format!(
                "unknown kernel `{other}` (available: e-mink, e-cyl, w-cyl, diag-diff)"
            ))
        }
    };
    if grid == 0 {
        return Err("grid must be positive".to_string());
    }
    let mut csv = String::with_capacity(grid * grid * 64);
    csv.push_str("u_sep,v_sep,value\n");
    // midpoint samples over (-2π, 2π)², clear of the chart boundary
    let step = 2.0 * TWO_PI / grid as f64;
    for i in 0..grid {
        let u = -TWO_PI + (i as f64 + 0.5) * step;
        for j in 0..grid {
            let v = -TWO_PI + (j as f64 + 0.5) * step;
            let val = value_fn(u, v);
            csv.push_str(&format!("{u:.16e},{v:.16e},{val:.16e}\n"));
        }
    }
    write_atomic(out, csv.as_bytes()).map_err(|e| format!("cannot write {}: {e}", out.display()))
}

//! Command line front end: verify an instance file, run the built-in self
//! checks, or sweep a resolution ladder.
//!
//! A completed verification exits 0 whatever the residual says; the report
//! carries the verdict. Nonzero exit means the run itself failed (bad
//! document, improper intersection, degenerate metric) or a self check did
//! not pass.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use arakelov_p1::verify::{convergence, parse_instance, selftest, verify, InstanceSpec};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "arakelov-p1", version, about = "arithmetic Chern character verification on P1 over Z", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every term of the identity for one instance file.
    Verify {
        /// Instance document (JSON).
        file: PathBuf,
        /// Override the grid resolution from the file.
        #[arg(long, value_name = "N")]
        grid: Option<usize>,
        /// Override the residual tolerance from the file.
        #[arg(long, value_name = "T")]
        tol: Option<f64>,
        /// Also write the full report as JSON.
        #[arg(long, value_name = "OUT")]
        report: Option<PathBuf>,
    },
    /// Run the built-in cross checks and negative controls.
    Selftest {
        /// Only run suites whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Re-verify one instance over a ladder of grid resolutions.
    Convergence {
        /// Instance document (JSON).
        file: PathBuf,
        /// Comma-separated resolutions, e.g. 64,128,256.
        #[arg(long, value_name = "N,N,..", value_delimiter = ',', required = true)]
        grids: Vec<usize>,
    },
}

fn load(file: &PathBuf) -> Result<InstanceSpec, String> {
    let text = fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    parse_instance(&text).map_err(|e| e.to_string())
}

fn run_verify(
    file: &PathBuf,
    grid: Option<usize>,
    tol: Option<f64>,
    report_path: Option<&PathBuf>,
) -> Result<(), String> {
    let mut spec = load(file)?;
    if let Some(n) = grid {
        if !(8..=4096).contains(&n) {
            return Err(format!("grid resolution {n} outside 8..=4096"));
        }
        spec.grid.resolution = n;
    }
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(format!("tolerance {t} is not a positive real"));
        }
        spec.grid.tolerance = t;
    }
    let report = verify(&spec).map_err(|e| e.to_string())?;
    print!("{}", report.render_text());
    if let Some(path) = report_path {
        let json = report.to_json();
        fs::write(path, json).map_err(|e| format!("{}: {e}", path.display()))?;
        println!("report written to {}", path.display());
    }
    match &report.error {
        None => Ok(()),
        Some(e) => Err(format!("incomplete run: {e}")),
    }
}

fn run_selftest(filter: Option<&str>) -> Result<(), String> {
    let entries = selftest(filter);
    if entries.is_empty() {
        return Err(format!(
            "no suite matches filter {:?}",
            filter.unwrap_or_default()
        ));
    }
    let mut failed = 0usize;
    let mut suite = "";
    for e in &entries {
        if e.suite != suite {
            suite = e.suite;
            println!("{suite}");
        }
        let verdict = if e.passed { "PASS" } else { "FAIL" };
        println!("  {verdict} {} ({})", e.name, e.detail);
        if !e.passed {
            failed += 1;
        }
    }
    println!("{} checks, {} failed", entries.len(), failed);
    if failed == 0 {
        Ok(())
    } else {
        Err(format!("{failed} self checks failed"))
    }
}

fn run_convergence(file: &PathBuf, grids: &[usize]) -> Result<(), String> {
    let spec = load(file)?;
    let points = convergence(&spec, grids).map_err(|e| e.to_string())?;
    println!(
        "{:>6}  {:>14}  {:>14}  {:>14}  {:>14}  {:>11}",
        "grid", "lhs_c2", "rhs_c1c1", "bott_chern", "log_gamma", "residual"
    );
    for p in &points {
        let f = |v: Option<f64>| match v {
            Some(x) => format!("{x:>14.9}"),
            None => format!("{:>14}", "-"),
        };
        let r = match p.residual {
            Some(x) => format!("{x:>11.3e}"),
            None => format!("{:>11}", "-"),
        };
        println!(
            "{:>6}  {}  {}  {}  {:>14.9}  {}",
            p.resolution,
            f(p.lhs_c2),
            f(p.rhs_c1c1),
            f(p.rhs_bott_chern_integral),
            p.rhs_log_gamma,
            r
        );
        if let Some(e) = &p.error {
            println!("        incomplete: {e}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify {
            file,
            grid,
            tol,
            report,
        } => run_verify(file, *grid, *tol, report.as_ref()),
        Command::Selftest { filter } => run_selftest(filter.as_deref()),
        Command::Convergence { file, grids } => run_convergence(file, grids),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

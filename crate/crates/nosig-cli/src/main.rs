//! `nosig`: no-signaling bounds, comparison bounds, and an optimizing
//! oracle for minimum-error state discrimination, over JSON ensemble
//! files or built-in parametric families.
//!
//! Exit codes: 0 on success, 1 when a verification check or ordering
//! fails, 2 on malformed input.

mod detect;
mod input;
mod report;
mod reproduce;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nosig::discrim::{helstrom_two_state, l4_bound};
use nosig::nosignal::{qubit_ns_bound, spin_ns_bound, NoSignalBound};
use nosig::oracle::{optimize_povm, random_restarts};
use nosig::states::SpinSystem;
use nosig::{Complex64, ComplexMatrix, Ensemble};

use detect::detect_qubit_symmetry;
use report::{
    sig12, ClosedFormRecord, L4Record, NsBoundRecord, OracleRecord, Report, ReproduceOutput,
};

#[derive(Parser)]
#[command(name = "nosig", version, about = "No-signaling bounds for quantum state discrimination")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the built-in reference results and verify every number
    Reproduce(ReproduceArgs),
    /// Closed-form no-signaling bound for a parametric family
    Bound(BoundArgs),
    /// Compare all bounds and the oracle on an ensemble file
    Compare(CompareArgs),
    /// Run the POVM optimizer on an ensemble file
    Discriminate(DiscriminateArgs),
}

#[derive(Args, Clone)]
struct SolverOpts {
    /// Seed fixing all stochastic behavior (angles in radians throughout)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Oracle restarts: the uniform start plus seeded random starts
    #[arg(long, default_value_t = 5)]
    restarts: usize,
    /// Iteration cap per oracle run
    #[arg(long = "max-iters", default_value_t = 10_000)]
    max_iters: usize,
    /// Certificate-gap tolerance declaring oracle convergence
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Output format for stdout
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Also write the machine-readable output to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct ReproduceArgs {
    #[command(flatten)]
    solver: SolverOpts,
    /// Where the JSON report set is written
    #[arg(long, default_value = "reproduce.json")]
    out: PathBuf,
}

#[derive(Args)]
struct BoundArgs {
    #[command(subcommand)]
    family: BoundFamily,
}

#[derive(Subcommand)]
enum BoundFamily {
    /// N symmetric qubit states: Bloch radius r, polar angle theta
    Qubit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Spin-j family: alpha and the rotation angles of each state
    Spin {
        #[arg(long = "two-j")]
        two_j: u32,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',')]
        thetas: Vec<f64>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Ensemble file; accepted only when a symmetric family is recognized
    File {
        path: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Args)]
struct CompareArgs {
    /// Ensemble file to analyze
    path: Option<PathBuf>,
    /// Re-validate the orderings of a previously emitted report instead
    #[arg(long)]
    recheck: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverOpts,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct DiscriminateArgs {
    /// Ensemble file to optimize over
    path: PathBuf,
    /// Iteration cap
    #[arg(long = "max-iters", default_value_t = 10_000)]
    max_iters: usize,
    /// Certificate-gap tolerance declaring convergence
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    output: OutputOpts,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Reproduce(args) => cmd_reproduce(&args),
        Command::Bound(args) => cmd_bound(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Discriminate(args) => cmd_discriminate(&args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    if let Some(path) = out {
        std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn emit<T: Serialize>(value: &T, format: Format, table: &[String], output: &OutputOpts) -> Result<()> {
    match format {
        Format::Json => {
            let json = serde_json::to_string_pretty(value)?;
            println!("{json}");
            write_output(&output.out, &json)?;
        }
        Format::Table | Format::Csv => {
            for line in table {
                println!("{line}");
            }
            // --out always carries the machine-readable form.
            write_output(&output.out, &serde_json::to_string_pretty(value)?)?;
        }
    }
    Ok(())
}

fn cmd_reproduce(args: &ReproduceArgs) -> Result<i32> {
    let params = reproduce::ReproduceParams {
        seed: args.solver.seed,
        restarts: args.solver.restarts,
        max_iters: args.solver.max_iters,
        tol: args.solver.tol,
    };
    let output = reproduce::run(&params);

    // Key rows in full; the sweep is summarized on stdout and complete in
    // the JSON.
    for report in &output.reports {
        if !report.ensemble_id.starts_with("qubit_N") {
            for line in report.table_lines() {
                println!("{line}");
            }
            println!();
        }
    }
    let sweep_rows = output
        .reports
        .iter()
        .filter(|r| r.ensemble_id.starts_with("qubit_N"))
        .count();
    println!("qubit sweep: {sweep_rows} grid points (full rows in the JSON report)");
    println!();
    for check in &output.checks {
        println!(
            "[{}] {} - {}",
            if check.passed { "pass" } else { "FAIL" },
            check.name,
            check.detail
        );
    }

    let json = serde_json::to_string_pretty(&output)?;
    std::fs::write(&args.out, &json)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!();
    println!("wrote {}", args.out.display());

    if output.all_passed() {
        println!("all {} checks passed", output.checks.len());
        Ok(0)
    } else {
        let failed: Vec<&str> = output
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        println!("FAILED checks: {}", failed.join(", "));
        Ok(1)
    }
}

/// Serializable output of `bound`.
#[derive(Serialize)]
struct BoundReport {
    family: String,
    n_states: usize,
    dim: usize,
    success_upper: f64,
    error_lower: f64,
    construction: String,
}

impl BoundReport {
    fn new(family: String, n_states: usize, dim: usize, bound: &NoSignalBound, construction: &str) -> Self {
        Self {
            family,
            n_states,
            dim,
            success_upper: sig12(bound.success_upper),
            error_lower: sig12(bound.error_lower),
            construction: construction.to_string(),
        }
    }

    fn table(&self) -> Vec<String> {
        vec![
            format!("family {}  (N = {}, dim = {})", self.family, self.n_states, self.dim),
            format!(
                "  success_upper = {:.6}   error_lower = {:.6}   [{}]",
                self.success_upper, self.error_lower, self.construction
            ),
        ]
    }
}

fn cmd_bound(args: &BoundArgs) -> Result<i32> {
    let (report, output) = match &args.family {
        BoundFamily::Qubit { n, theta, r, output } => {
            let bound = qubit_ns_bound(*n, *theta, *r)?;
            (
                BoundReport::new(
                    format!("qubit(n={n}, theta={theta}, r={r})"),
                    *n,
                    2,
                    &bound,
                    "symmetric_qubit",
                ),
                output,
            )
        }
        BoundFamily::Spin {
            two_j,
            alpha,
            thetas,
            output,
        } => {
            let sys = SpinSystem::new(*two_j)?;
            let bound = spin_ns_bound(&sys, *alpha, thetas)?;
            (
                BoundReport::new(
                    format!("spin(two_j={two_j}, alpha={alpha})"),
                    thetas.len(),
                    sys.dim(),
                    &bound,
                    "spin_identical_average",
                ),
                output,
            )
        }
        BoundFamily::File { path, output } => {
            let ensemble = input::load_ensemble(path)?;
            let Some(sym) = detect_qubit_symmetry(&ensemble) else {
                bail!(
                    "{}: no recognized symmetry, so no canonical decomposition family \
                     exists for `bound`; use `nosig compare` for generic ensembles",
                    path.display()
                );
            };
            let bound = qubit_ns_bound(sym.n, sym.theta, sym.r)?;
            (
                BoundReport::new(
                    format!(
                        "file {} ~ qubit(n={}, theta={:.6}, r={:.6})",
                        path.display(),
                        sym.n,
                        sym.theta,
                        sym.r
                    ),
                    sym.n,
                    2,
                    &bound,
                    "symmetric_qubit",
                ),
                output,
            )
        }
    };
    emit(&report, output.format, &report.table(), output)?;
    Ok(0)
}

fn cmd_compare(args: &CompareArgs) -> Result<i32> {
    if let Some(report_path) = &args.recheck {
        return recheck_report(report_path);
    }
    let Some(path) = &args.path else {
        bail!("compare needs an ensemble file (or --recheck <report.json>)");
    };
    let ensemble = input::load_ensemble(path)?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "ensemble".into());
    let report = build_report(&id, &ensemble, &args.solver)?;

    let table = report.table_lines();
    match args.output.format {
        Format::Csv => {
            let csv = format!("{}\n{}\n", Report::CSV_HEADER, report.csv_row());
            print!("{csv}");
            write_output(&args.output.out, &csv)?;
        }
        format => emit(&report, format, &table, &args.output)?,
    }

    if report.orderings_ok() {
        Ok(0)
    } else {
        eprintln!("ordering violation: an achievable success exceeds a bound");
        Ok(1)
    }
}

/// Compute the full comparison record for one ensemble.
fn build_report(id: &str, ensemble: &Ensemble, solver: &SolverOpts) -> Result<Report> {
    let symmetry = detect_qubit_symmetry(ensemble);
    let ns_bound = symmetry
        .map(|sym| -> Result<NsBoundRecord> {
            let b = qubit_ns_bound(sym.n, sym.theta, sym.r)?;
            Ok(NsBoundRecord {
                success_upper: b.success_upper,
                error_lower: b.error_lower,
                construction: "symmetric_qubit".into(),
            })
        })
        .transpose()?;

    let l4 = l4_bound(ensemble)?;
    let oracle = random_restarts(
        ensemble,
        solver.restarts.max(1),
        solver.seed,
        solver.max_iters,
        solver.tol,
    )?;

    let closed_form = if ensemble.len() == 2 {
        Some(ClosedFormRecord {
            value: helstrom_two_state(ensemble.state(0), ensemble.state(1), ensemble.prior(0))?,
            formula: "helstrom".into(),
        })
    } else {
        symmetry.map(|sym| ClosedFormRecord {
            value: ((1.0 + sym.r * sym.theta.sin().abs()) / sym.n as f64).min(1.0),
            formula: "symmetric_qubit_optimal".into(),
        })
    };

    Ok(Report::new(
        id,
        ensemble.len(),
        ensemble.dim(),
        ns_bound,
        L4Record {
            error_lower: l4.error_lower,
            success_upper: l4.success_upper,
        },
        OracleRecord {
            success: oracle.success,
            certificate_gap: oracle.certificate_gap,
            converged: oracle.converged,
        },
        closed_form,
    ))
}

/// Re-validate the ordering invariants of an emitted report file. The
/// booleans are recomputed from the record's own numbers; any violation
/// or inconsistency exits 1.
fn recheck_report(path: &Path) -> Result<i32> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let reports: Vec<Report> = if let Ok(single) = serde_json::from_str::<Report>(&text) {
        vec![single]
    } else if let Ok(many) = serde_json::from_str::<Vec<Report>>(&text) {
        many
    } else if let Ok(repro) = serde_json::from_str::<ReproduceOutput>(&text) {
        repro.reports
    } else {
        bail!("{}: not a report, report list, or reproduce output", path.display());
    };

    let mut ok = true;
    for report in &reports {
        let derived = Report::derive_orderings(&report.ns_bound, &report.l4, &report.oracle);
        if !(derived.oracle_le_one_minus_l4 && derived.oracle_le_ns_bound) {
            ok = false;
            println!(
                "[FAIL] {}: oracle {} vs 1-L4 {} / ns {}",
                report.ensemble_id,
                report.oracle.success,
                report.l4.success_upper,
                report
                    .ns_bound
                    .as_ref()
                    .map(|b| b.success_upper.to_string())
                    .unwrap_or_else(|| "none".into()),
            );
        } else if derived != report.orderings {
            ok = false;
            println!(
                "[FAIL] {}: stored ordering flags disagree with the record's numbers",
                report.ensemble_id
            );
        } else {
            println!("[pass] {}", report.ensemble_id);
        }
    }
    Ok(if ok { 0 } else { 1 })
}

/// Serializable output of `discriminate`.
#[derive(Serialize)]
struct DiscriminateReport {
    success: f64,
    certificate_gap: f64,
    converged: bool,
    iterations: usize,
    povm: Vec<ComplexMatrix>,
}

fn cmd_discriminate(args: &DiscriminateArgs) -> Result<i32> {
    let ensemble = input::load_ensemble(&args.path)?;
    let result = optimize_povm(&ensemble, args.max_iters, args.tol)?;
    let povm: Vec<ComplexMatrix> = result
        .povm
        .elements()
        .iter()
        .map(|m| ComplexMatrix::from_fn(m.dim(), |i, j| {
            let z = m.get(i, j);
            Complex64::new(sig12(z.re), sig12(z.im))
        }))
        .collect();
    let report = DiscriminateReport {
        success: sig12(result.success),
        certificate_gap: sig12(result.certificate_gap),
        converged: result.converged,
        iterations: result.iterations,
        povm,
    };

    let mut table = vec![
        format!(
            "success = {:.6}   gap = {:.2e}   converged = {}   iterations = {}",
            report.success, report.certificate_gap, report.converged, report.iterations
        ),
        "POVM elements:".to_string(),
    ];
    for (k, m) in report.povm.iter().enumerate() {
        table.push(format!("  M_{k}:"));
        for i in 0..m.dim() {
            let row: Vec<String> = (0..m.dim())
                .map(|j| {
                    let z = m.get(i, j);
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            table.push(format!("    [{}]", row.join(", ")));
        }
    }
    emit(&report, args.output.format, &table, &args.output)?;
    Ok(0)
}

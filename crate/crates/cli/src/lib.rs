//! Library face of the `nccell` command-line workbench: suite runners,
//! reports, and the argv entry point.

pub mod report;
pub mod suites;

use clap::{Parser, Subcommand};
use nccell_core::boundary::{
    boundary_map, cone_cell, exponential_cell, index_cell, BoundaryInput, ModelId,
};
use nccell_core::linalg::{random_projection, SeedRng};
use nccell_core::presentations::{parse_presentation, print_presentation};
use nccell_core::reps::qc_rep_from_projections;
use nccell_core::symbolic::{parse_identity_file, prove_identity_line};
use nccell_core::toeplitz::parse_symbol;
use report::Report;
use std::time::Instant;
use suites::{run_suite, SuiteOpts};

#[derive(Parser)]
#[command(
    name = "nccell",
    about = "Workbench for noncommutative cells: presentations, *-polynomial proofs, and K-theory boundary maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a presentation file and echo its canonical form.
    Parse { file: String },
    /// Prove the identities in a file (`lhs == rhs  modulo <rules>` lines).
    Prove {
        file: String,
        #[arg(long)]
        json: Option<String>,
    },
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        dim: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<String>,
    },
    /// Compute one boundary map.
    Boundary {
        #[command(subcommand)]
        which: BoundaryCmd,
    },
}

#[derive(Subcommand)]
enum BoundaryCmd {
    /// Index cell on the Toeplitz model: ∂ of a unitary symbol.
    Index {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        json: Option<String>,
    },
    /// Exponential cell on the cone-grid model: ∂ of a seeded qC factory rep.
    Exp {
        #[arg(long, default_value_t = 6)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long)]
        json: Option<String>,
    },
    /// Cone cell: ∂ of a rank-r projection in M_n.
    Cone {
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<String>,
    },
}

/// Run the CLI; returns the process exit code.
/// 0 = all cases pass, 1 = case failure, 2 = usage error.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { 2 };
        }
    };
    match cli.command {
        Command::Parse { file } => cmd_parse(&file),
        Command::Prove { file, json } => cmd_prove(&file, json.as_deref()),
        Command::Verify { suite, trials, dim, tol, grid, seed, json } => {
            let opts = SuiteOpts { trials, dim, tol, grid, seed };
            cmd_verify(&suite, &opts, json.as_deref())
        }
        Command::Boundary { which } => match which {
            BoundaryCmd::Index { symbol, json } => cmd_boundary_index(&symbol, json.as_deref()),
            BoundaryCmd::Exp { dim, seed, grid, json } => {
                cmd_boundary_exp(dim, seed, grid, json.as_deref())
            }
            BoundaryCmd::Cone { size, rank, seed, json } => {
                cmd_boundary_cone(size, rank, seed, json.as_deref())
            }
        },
    }
}

fn cmd_parse(file: &str) -> i32 {
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {file}: {e}");
            return 2;
        }
    };
    match parse_presentation(&src) {
        Ok(p) => {
            print!("{}", print_presentation(&p));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_prove(file: &str, json: Option<&str>) -> i32 {
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {file}: {e}");
            return 2;
        }
    };
    let mut report = Report::new("prove");
    report.convention("file", file);
    match parse_identity_file(&src) {
        Ok(ids) => {
            for id in &ids {
                let t = Instant::now();
                match prove_identity_line(id) {
                    Ok(out) => {
                        let name = format!("line-{}", id.line);
                        if out.ok {
                            report.check_flag(&name, true, 0, t.elapsed().as_millis() as u64);
                        } else {
                            let cert = out
                                .certificate
                                .map(|(at, c)| format!("{at:?}: {c}"))
                                .unwrap_or_default();
                            report.check_flag(
                                &format!("{name} (residue {cert})"),
                                false,
                                0,
                                t.elapsed().as_millis() as u64,
                            );
                        }
                    }
                    Err(e) => {
                        report.check_flag(&format!("line-{}: {e}", id.line), false, 0, 0);
                    }
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    }
    emit(&[report], json)
}

fn cmd_verify(suite: &str, opts: &SuiteOpts, json: Option<&str>) -> i32 {
    match run_suite(suite, opts) {
        Ok(reports) => emit(&reports, json),
        Err(e) => {
            eprintln!("error: {e} (suites: {}, all)", suites::SUITE_NAMES.join(", "));
            2
        }
    }
}

fn cmd_boundary_index(symbol: &str, json: Option<&str>) -> i32 {
    let mut report = Report::new("boundary-index");
    let cell = index_cell();
    report.convention("sign", cell.sign_convention);
    report.convention("symbol", symbol);
    let t = Instant::now();
    match parse_symbol::<f64>(symbol) {
        Ok(u) => match boundary_map(&cell, ModelId::Toeplitz, &BoundaryInput::UnitarySymbol(u)) {
            Ok(out) => {
                report.convention("input_class", out.input_class);
                report.convention("class", out.output_class);
                report.check(
                    "drift",
                    out.diagnostics.drift,
                    1e-9,
                    0,
                    t.elapsed().as_millis() as u64,
                );
                report.check("relations", out.diagnostics.worst_residual, 1e-9, 0, 0);
            }
            Err(e) => report.check_flag(&format!("boundary: {e}"), false, 0, 0),
        },
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    }
    emit(&[report], json)
}

fn cmd_boundary_exp(dim: usize, seed: u64, grid: usize, json: Option<&str>) -> i32 {
    let mut report = Report::new("boundary-exp");
    let cell = exponential_cell();
    report.convention("sign", cell.sign_convention);
    report.convention("dim", dim as u64);
    report.convention("grid", grid as u64);
    let t = Instant::now();
    let mut rng = SeedRng::new(seed).split(0x657870);
    let outcome = (|| {
        let p = random_projection::<f64>(dim, 1 + rng.next_usize(dim), rng.next_u64())
            .map_err(|e| e.to_string())?;
        let q = random_projection::<f64>(dim, 1 + rng.next_usize(dim), rng.next_u64())
            .map_err(|e| e.to_string())?;
        let rep = qc_rep_from_projections(&p, &q).map_err(|e| e.to_string())?;
        let mut cell = cell.clone();
        cell.default_grid = grid;
        boundary_map(&cell, ModelId::ConeGrid, &BoundaryInput::QcRep(rep))
            .map_err(|e| e.to_string())
    })();
    match outcome {
        Ok(out) => {
            report.convention("input_class", out.input_class);
            report.convention("class", out.output_class);
            if let Some(g) = out.diagnostics.grid {
                report.convention("grid_used", g as u64);
            }
            report.check(
                "unitarity",
                out.diagnostics.worst_residual,
                1e-8,
                seed,
                t.elapsed().as_millis() as u64,
            );
            report.check_flag("class-matches-trace", out.output_class == out.input_class, seed, 0);
        }
        Err(e) => report.check_flag(&format!("boundary: {e}"), false, seed, 0),
    }
    emit(&[report], json)
}

fn cmd_boundary_cone(size: usize, rank: usize, seed: u64, json: Option<&str>) -> i32 {
    let mut report = Report::new("boundary-cone");
    let cell = cone_cell(size);
    report.convention("sign", cell.sign_convention);
    report.convention("size", size as u64);
    report.convention("rank", rank as u64);
    let t = Instant::now();
    let outcome = random_projection::<f64>(size, rank, seed)
        .map_err(|e| e.to_string())
        .and_then(|p| {
            boundary_map(&cell, ModelId::ConeGrid, &BoundaryInput::Projection(p))
                .map_err(|e| e.to_string())
        });
    match outcome {
        Ok(out) => {
            report.convention("input_class", out.input_class);
            report.convention("class", out.output_class);
            report.check_flag(
                "class-equals-rank",
                out.input_class == rank as i64 && out.output_class == rank as i64,
                seed,
                t.elapsed().as_millis() as u64,
            );
        }
        Err(e) => report.check_flag(&format!("boundary: {e}"), false, seed, 0),
    }
    emit(&[report], json)
}

/// Print text to stdout; optionally write JSON (single object for one
/// report, array otherwise). Exit code 0 iff every case passes.
fn emit(reports: &[Report], json: Option<&str>) -> i32 {
    for r in reports {
        print!("{}", r.render_text());
    }
    if let Some(path) = json {
        let payload = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        };
        match payload {
            Ok(text) => {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: cannot write {path}: {e}");
                    return 2;
                }
            }
            Err(e) => {
                eprintln!("error: JSON serialization failed: {e}");
                return 2;
            }
        }
    }
    if reports.iter().all(|r| r.all_pass()) {
        0
    } else {
        1
    }
}

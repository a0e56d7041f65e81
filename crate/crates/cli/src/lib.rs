//! Command dispatch for the `framing` binary.
//!
//! Exit codes: 0 success or solvable, 1 unsolvable or failed verification,
//! 2 parse or usage error, 3 validation failure, 4 capacity exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use framing_core::document::{self, render_certificate, render_diagram};
use framing_core::heegaard::{random_diagram_with, HeegaardDiagram};
use framing_core::quad_form::GAUSS_LIMIT;
use framing_core::solver::{self, Policy, SolveOutcome, TwistCertificate};
use framing_core::Error;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "framing",
    version,
    about = "Twist certificates for Heegaard diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a diagram document against the solver's hypotheses.
    Validate {
        file: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Find a set of a-curve twists that zeroes the form on every b-curve.
    Solve {
        file: PathBuf,
        /// Choose a minimum-weight twist set.
        #[arg(long)]
        minimal: bool,
        /// Print the certificate document instead of a summary.
        #[arg(long)]
        json: bool,
        /// Write the certificate document to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate by applying its twists.
    Verify {
        file: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Print the Gauss-sum invariant of the diagram's form.
    Invariant { file: PathBuf },
    /// Emit a random scrambled standard diagram.
    Generate {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random twists applied (default 4 * genus).
        #[arg(long)]
        scramble: Option<usize>,
        /// Force at least one nonzero b-curve target.
        #[arg(long)]
        nonzero_targets: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Validate { file, json } => cmd_validate(&file, json, out),
        Command::Solve {
            file,
            minimal,
            json,
            out: out_path,
        } => cmd_solve(&file, minimal, json, out_path.as_deref(), out),
        Command::Verify { file, cert } => cmd_verify(&file, &cert, out),
        Command::Invariant { file } => cmd_invariant(&file, out),
        Command::Generate {
            genus,
            seed,
            scramble,
            nonzero_targets,
        } => cmd_generate(genus, seed, scramble, nonzero_targets, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

fn io_fail(e: std::io::Error) -> Failure {
    fail(EXIT_USAGE, format!("write failed: {e}"))
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<HeegaardDiagram, Failure> {
    document::parse_diagram(&read(path)?)
        .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_valid_diagram(path: &Path) -> Result<HeegaardDiagram, Failure> {
    let diagram = load_diagram(path)?;
    let report = diagram.validate();
    if report.passed() {
        Ok(diagram)
    } else {
        Err(fail(
            EXIT_INVALID,
            format!("{}: diagram failed validation\n{report}", path.display()),
        ))
    }
}

fn core_fail(e: Error) -> Failure {
    let code = match e {
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::Validation(_) => EXIT_INVALID,
        _ => EXIT_USAGE,
    };
    fail(code, e.to_string())
}

#[derive(Serialize)]
struct ValidateJson<'a> {
    pass: bool,
    dimension: usize,
    curves: usize,
    lagrangian: bool,
    violations: &'a [framing_core::Violation],
    notes: &'a [String],
}

fn cmd_validate(path: &Path, json: bool, out: &mut dyn Write) -> CmdResult {
    let diagram = load_diagram(path)?;
    let report = diagram.validate();
    if json {
        let doc = ValidateJson {
            pass: report.passed(),
            dimension: diagram.dimension(),
            curves: diagram.curve_count(),
            lagrangian: diagram.is_lagrangian(),
            violations: &report.violations,
            notes: &report.notes,
        };
        let text = serde_json::to_string_pretty(&doc).expect("report serializes");
        writeln!(out, "{text}").map_err(io_fail)?;
    } else {
        write!(out, "{}: {report}", path.display()).map_err(io_fail)?;
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

#[derive(Serialize)]
struct UnsolvableJson {
    solvable: bool,
    eliminated_row: usize,
    witness: String,
}

fn cmd_solve(
    path: &Path,
    minimal: bool,
    json: bool,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let diagram = load_valid_diagram(path)?;
    let policy = if minimal {
        Policy::MinimalWeight
    } else {
        Policy::First
    };
    match solver::solve_twists(&diagram, policy).map_err(core_fail)? {
        SolveOutcome::Solved(cert) => {
            let text = render_certificate(&cert);
            if let Some(p) = out_path {
                fs::write(p, &text)
                    .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", p.display())))?;
            }
            if json {
                write!(out, "{text}").map_err(io_fail)?;
            } else {
                write_solution_summary(&cert, out).map_err(io_fail)?;
            }
            Ok(EXIT_OK)
        }
        SolveOutcome::Unsolvable(inc) => {
            if json {
                let doc = UnsolvableJson {
                    solvable: false,
                    eliminated_row: inc.eliminated_row,
                    witness: inc.witness.to_string(),
                };
                let text = serde_json::to_string_pretty(&doc).expect("serializes");
                writeln!(out, "{text}").map_err(io_fail)?;
            } else {
                let rows: Vec<usize> = inc.witness.iter_ones().collect();
                writeln!(
                    out,
                    "unsolvable: the sum of b-curves {rows:?} pairs to 0 with every \
                     a-curve but the form values of those b-curves sum to 1"
                )
                .map_err(io_fail)?;
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn write_solution_summary(cert: &TwistCertificate, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "solvable")?;
    writeln!(out, "  epsilon: {}", cert.epsilon)?;
    writeln!(out, "  twists: {:?}", cert.twist_indices())?;
    writeln!(
        out,
        "  alternatives: kernel dimension {}",
        cert.solution_family.len()
    )?;
    writeln!(
        out,
        "  transcript: {}",
        if cert.transcript.all_zero() {
            "all zero"
        } else {
            "NONZERO"
        }
    )
}

fn cmd_verify(path: &Path, cert_path: &Path, out: &mut dyn Write) -> CmdResult {
    let diagram = load_diagram(path)?;
    let cert = document::parse_certificate(&read(cert_path)?)
        .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", cert_path.display())))?;
    if cert.epsilon.len() != diagram.curve_count() {
        return Err(fail(
            EXIT_USAGE,
            format!(
                "certificate has {} entries but the diagram has {} curves",
                cert.epsilon.len(),
                diagram.curve_count()
            ),
        ));
    }
    let report =
        solver::verify_certificate(&diagram, &cert).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    write!(out, "{report}").map_err(io_fail)?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn cmd_invariant(path: &Path, out: &mut dyn Write) -> CmdResult {
    // The invariant depends on the form alone; curve hypotheses are not required.
    let diagram = load_diagram(path)?;
    let mut report = diagram.space().validate();
    report.merge(diagram.form().validate_with(0));
    if !report.passed() {
        return Err(fail(
            EXIT_INVALID,
            format!("{}: form failed validation\n{report}", path.display()),
        ));
    }
    let d = diagram.dimension();
    if d > GAUSS_LIMIT {
        return Err(fail(
            EXIT_CAPACITY,
            format!("dimension {d} exceeds the Gauss-sum limit {GAUSS_LIMIT}"),
        ));
    }
    let form = diagram.form();
    let sum = form.gauss_sum(GAUSS_LIMIT).map_err(core_fail)?;
    let beta = form
        .gauss_invariant()
        .map_err(|e| fail(EXIT_INVALID, e.to_string()))?;
    writeln!(out, "gauss invariant (mod 8): {beta}").map_err(io_fail)?;
    writeln!(out, "gauss sum: {sum}").map_err(io_fail)?;
    writeln!(out, "dimension: {d}").map_err(io_fail)?;
    writeln!(
        out,
        "a-system lagrangian: {}",
        if diagram.is_lagrangian() { "yes" } else { "no" }
    )
    .map_err(io_fail)?;
    Ok(EXIT_OK)
}

fn cmd_generate(
    genus: usize,
    seed: u64,
    scramble: Option<usize>,
    nonzero_targets: bool,
    out: &mut dyn Write,
) -> CmdResult {
    if genus < 1 {
        return Err(fail(EXIT_USAGE, "--genus must be at least 1"));
    }
    let diagram = random_diagram_with(seed, genus, scramble.unwrap_or(4 * genus), nonzero_targets)
        .map_err(core_fail)?;
    write!(out, "{}", render_diagram(&diagram)).map_err(io_fail)?;
    Ok(EXIT_OK)
}

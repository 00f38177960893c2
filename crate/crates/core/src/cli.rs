//! Command-line front end: every subcommand reads one JSON document and
//! writes one JSON document.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::conjspace::Ket;
use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix};
use crate::norms::{norm_report, trace_duality_max};
use crate::psum::{pi1_lower_bound, pi2_certify, SummingEstimate};
use crate::states::{gleason_from_table, gleason_reconstruct, schmidt, DensityOperator, MeasureTable};
use crate::teleport::teleport;
use crate::tensor::{kron, vec, TensorElement};
use crate::verify::{verify_suite, VerifyOptions, DEFAULT_PI1_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hilbertkit", version, about = "Hilbert-Schmidt, tensor and trace-class computations over JSON")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Read the JSON input from FILE instead of standard input.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,

    /// Seed for every randomized routine.
    #[arg(long, global = true, env = "HILBERTKIT_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Search budget for the p = 1 summing-norm estimate.
    #[arg(long, global = true)]
    pub budget: Option<usize>,

    /// Factor applied to every verification tolerance.
    #[arg(long, global = true, value_name = "FACTOR", default_value_t = 1.0)]
    pub tol: f64,

    /// Suppress diagnostics on standard error.
    #[arg(long, global = true)]
    pub quiet: bool,

    /// Corrupt one entry of the teleportation matrix before verifying.
    #[arg(long, global = true, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kronecker product of two matrices: {"a": M, "b": M}.
    Kron,
    /// Column-stacking vector of a matrix: {"matrix": M} or M.
    Vec,
    /// Schmidt decomposition of a bipartite element.
    Schmidt,
    /// Operator, Hilbert-Schmidt and nuclear norms: {"matrix": M} or M.
    Norms,
    /// Frobenius-ball maximizer of |tr(A·B)|: {"matrix": M} or M.
    Duality,
    /// Teleport a qubit: {"xi": [[re, im], [re, im]]}.
    Teleport,
    /// Density operator from a measure table or a known density.
    Gleason,
    /// Summing-norm estimate: {"matrix": M, "p": 1|2, "budget"?, "seed"?}.
    Psum,
    /// Run the self-check suite.
    Verify,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Wrapped { matrix: ComplexMatrix },
    Bare(ComplexMatrix),
}

impl MatrixInput {
    fn into_matrix(self) -> ComplexMatrix {
        match self {
            MatrixInput::Wrapped { matrix } | MatrixInput::Bare(matrix) => matrix,
        }
    }
}

#[derive(Deserialize)]
struct KronInput {
    a: ComplexMatrix,
    b: ComplexMatrix,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SchmidtInput {
    /// Kronecker vector of length `left_dim·right_dim`.
    Vector {
        state: Ket,
        left_dim: usize,
        right_dim: usize,
    },
    Element(TensorElement),
}

#[derive(Deserialize)]
struct TeleportInput {
    xi: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GleasonInput {
    Table(MeasureTable),
    /// The measure `P ↦ tr(P·D)` of a given density.
    Density {
        density: ComplexMatrix,
    },
}

#[derive(Deserialize)]
struct PsumInput {
    matrix: ComplexMatrix,
    p: f64,
    budget: Option<usize>,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct PsumOutput {
    #[serde(flatten)]
    estimate: SummingEstimate,
    /// Always true: the value is attained by the witness family.
    certified_lower_bound: bool,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence { .. } => EXIT_NO_CONVERGENCE,
        _ => EXIT_INVALID_INPUT,
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<String> {
    match &cli.input {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display()))),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::InvalidInput(format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<(serde_json::Value, i32)> {
    if let Command::Verify = cli.command {
        let options = VerifyOptions {
            seed: cli.seed,
            tol_factor: cli.tol,
            pi1_budget: cli.budget.unwrap_or(DEFAULT_PI1_BUDGET),
            inject_fault: cli.inject_fault,
        };
        let report = verify_suite(&options);
        let code = if report.all_passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
        return Ok((serde_json::to_value(report)?, code));
    }
    let text = read_input(cli, stdin)?;
    let value = match cli.command {
        Command::Kron => {
            let KronInput { a, b } = parse(&text)?;
            serde_json::to_value(kron(&a, &b))?
        }
        Command::Vec => serde_json::to_value(vec(&parse::<MatrixInput>(&text)?.into_matrix()))?,
        Command::Schmidt => {
            let z = match parse::<SchmidtInput>(&text)? {
                SchmidtInput::Vector { state, left_dim, right_dim } => {
                    TensorElement::from_matrix(&crate::tensor::unvec(&state, right_dim, left_dim)?)
                }
                SchmidtInput::Element(z) => z,
            };
            let form = schmidt(&z)?;
            json!({
                "rank": form.rank(),
                "weights": form.weights(),
                "coeffs": form.coeffs,
                "left": form.left,
                "right": form.right,
            })
        }
        Command::Norms => serde_json::to_value(norm_report(&parse::<MatrixInput>(&text)?.into_matrix())?)?,
        Command::Duality => serde_json::to_value(trace_duality_max(&parse::<MatrixInput>(&text)?.into_matrix())?)?,
        Command::Teleport => {
            let input: TeleportInput = parse(&text)?;
            let xi = Ket::new(input.xi.iter().map(|[re, im]| Complex::new(*re, *im)).collect())?;
            let run = teleport(&xi)?;
            json!({
                "w": run.w,
                "branches": run.branches,
                "equation_residual": run.equation_residual(&xi)?,
                "correction_residual": run.correction_residual(&xi),
            })
        }
        Command::Gleason => {
            let rec = match parse::<GleasonInput>(&text)? {
                GleasonInput::Table(table) => gleason_from_table(&table)?,
                GleasonInput::Density { density } => {
                    let d = DensityOperator::new(density)?;
                    let measure = |p: &ComplexMatrix| d.expectation(p).unwrap_or(f64::NAN);
                    gleason_reconstruct(&measure, d.dim)?
                }
            };
            serde_json::to_value(rec)?
        }
        Command::Psum => {
            let input: PsumInput = parse(&text)?;
            let estimate = if input.p == 2.0 {
                pi2_certify(&input.matrix)?
            } else if input.p == 1.0 {
                let budget = input.budget.or(cli.budget).unwrap_or(DEFAULT_PI1_BUDGET);
                if budget == 0 {
                    return Err(Error::InvalidInput("budget must be at least 1".into()));
                }
                pi1_lower_bound(&input.matrix, budget, input.seed.unwrap_or(cli.seed))?
            } else {
                return Err(Error::UnsupportedP(input.p));
            };
            serde_json::to_value(PsumOutput { estimate, certified_lower_bound: true })?
        }
        Command::Verify => unreachable!("handled above"),
    };
    Ok((value, EXIT_OK))
}

/// Parses `args` (including the program name) and runs one subcommand.
/// Returns the process exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        if !cli.quiet {
            let _ = writeln!(stderr, "error: --tol must be a positive finite factor");
        }
        return EXIT_INVALID_INPUT;
    }
    match execute(&cli, stdin) {
        Ok((value, code)) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
            let _ = writeln!(stdout, "{text}");
            if code == EXIT_VERIFY_FAILED && !cli.quiet {
                let _ = writeln!(stderr, "verify: one or more checks failed");
            }
            code
        }
        Err(e) => {
            if !cli.quiet {
                let _ = writeln!(stderr, "error: {e}");
            }
            exit_code(&e)
        }
    }
}

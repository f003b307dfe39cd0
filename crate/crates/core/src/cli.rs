//! The `wmpinv` command-line tool.
//!
//! Payload goes to standard output (or `--output`), diagnostics to standard
//! error. Exit status:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | unreadable input or bad flags |
//! | 2 | dimension mismatch |
//! | 3 | weight not symmetric positive definite |
//! | 4 | degenerate weight or zero-branch denominator |
//! | 5 | `verify`: some equation fails |
//! | 6 | `invert --algorithm both`: the recursions disagree |

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, OutputFormat, BENCH_NOTE};
use crate::error::{Error, Result};
use crate::matio::{
    random_matrix, random_spd, read_file, serialize_matrix, AnyMatrix, FileField, GenSpec,
};
use crate::matrix::Matrix;
use crate::partition::{lm_udwadia, wmp_wang, Algorithm, RecursionConfig};
use crate::scalar::{FieldKind, RatFun, Rational};
use crate::verify::{
    equivalence_check, float_threshold, penrose_residuals, Discrepancy, PenroseResiduals, Residual,
    FLOAT_RESIDUAL_REL,
};

pub const EXIT_VERIFY_FAILED: i32 = 5;
pub const EXIT_ENGINE_MISMATCH: i32 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "wmpinv",
    version,
    about = "Weighted Moore-Penrose inverses by column recursion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Wang,
    Udwadia,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FieldArg {
    Rational,
    Float,
    Ratfun,
}

impl From<FieldArg> for FieldKind {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Rational => FieldKind::Rational,
            FieldArg::Float => FieldKind::Float,
            FieldArg::Ratfun => FieldKind::RatFun,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the weighted inverse of a matrix file.
    Invert {
        /// m×n input matrix file.
        #[arg(long)]
        matrix: PathBuf,
        /// m×m left weight (default identity).
        #[arg(long)]
        left_weight: Option<PathBuf>,
        /// n×n right weight (default identity).
        #[arg(long)]
        right_weight: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        algorithm: AlgorithmArg,
        /// Relative zero threshold for float inputs.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Skip the positive-definiteness check on the weights.
        #[arg(long)]
        no_validate: bool,
        /// Write the inverse here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the four defining equations for a candidate inverse.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        inverse: PathBuf,
        #[arg(long)]
        left_weight: Option<PathBuf>,
        #[arg(long)]
        right_weight: Option<PathBuf>,
        /// Float residual threshold relative to max(1, ‖A‖_F).
        #[arg(long, default_value_t = FLOAT_RESIDUAL_REL)]
        tol: f64,
    },
    /// Generate a random matrix file.
    Gen {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        #[arg(long, default_value_t = 1.0)]
        prob1: f64,
        #[arg(long, default_value_t = 1.0)]
        prob2: f64,
        /// Emit a rows×rows symmetric positive definite matrix.
        #[arg(long)]
        spd: bool,
        /// Default: ratfun for positive degree, rational otherwise.
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time both recursions over a grid of sizes and degrees.
    Bench {
        /// Comma-separated ROWSxCOLS list.
        #[arg(long, default_value = "5x6,6x4,10x11,11x10")]
        sizes: String,
        #[arg(long, default_value = "1,2")]
        degrees: String,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
        #[arg(long, value_enum, default_value = "tsv")]
        format: FormatArg,
    },
}

/// Runs the tool with explicit streams and returns the exit status.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Invert {
            matrix,
            left_weight,
            right_weight,
            algorithm,
            tol,
            no_validate,
            output,
        } => {
            let cfg = RecursionConfig {
                zero_tol_rel: tol,
                algorithm: match algorithm {
                    AlgorithmArg::Wang => Algorithm::Wang,
                    AlgorithmArg::Udwadia => Algorithm::Udwadia,
                    AlgorithmArg::Both => Algorithm::Both,
                },
                validate_weights: !no_validate,
            };
            load_inputs(&matrix, left_weight.as_deref(), right_weight.as_deref())
                .and_then(|inputs| cmd_invert(inputs, &cfg, err))
                .and_then(|(text, code)| emit(&text, output.as_deref(), out).map(|_| code))
        }
        Command::Verify {
            matrix,
            inverse,
            left_weight,
            right_weight,
            tol,
        } => load_inputs(&matrix, left_weight.as_deref(), right_weight.as_deref())
            .and_then(|inputs| Ok((inputs, read_file(&inverse)?)))
            .and_then(|(inputs, x)| cmd_verify(inputs, x, tol, out)),
        Command::Gen {
            rows,
            cols,
            degree,
            prob1,
            prob2,
            spd,
            field,
            seed,
            output,
        } => cmd_gen(
            rows,
            cols,
            degree,
            prob1,
            prob2,
            spd,
            field.map(Into::into),
            seed,
        )
        .and_then(|text| emit(&text, output.as_deref(), out).map(|_| 0)),
        Command::Bench {
            sizes,
            degrees,
            trials,
            seed,
            field,
            format,
        } => {
            let format = match format {
                FormatArg::Tsv => OutputFormat::Tsv,
                FormatArg::Csv => OutputFormat::Csv,
            };
            cmd_bench(
                &sizes,
                &degrees,
                trials,
                seed,
                field.map(Into::into),
                format,
                out,
                err,
            )
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the tool on the process's arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

struct Inputs {
    a: AnyMatrix,
    left: Option<AnyMatrix>,
    right: Option<AnyMatrix>,
}

fn load_inputs(a: &Path, left: Option<&Path>, right: Option<&Path>) -> Result<Inputs> {
    Ok(Inputs {
        a: read_file(a)?,
        left: left.map(read_file).transpose()?,
        right: right.map(read_file).transpose()?,
    })
}

/// The field all operands are computed in: float if any operand is float,
/// rational functions if any is, rationals otherwise.
fn common_field<'a>(ms: impl IntoIterator<Item = &'a AnyMatrix>) -> Result<FieldKind> {
    let kinds: Vec<FieldKind> = ms.into_iter().map(AnyMatrix::field).collect();
    let has = |k| kinds.contains(&k);
    match (has(FieldKind::Float), has(FieldKind::RatFun)) {
        (true, true) => Err(Error::FieldMismatch {
            expected: FieldKind::Float.name(),
            got: FieldKind::RatFun.name(),
        }),
        (true, false) => Ok(FieldKind::Float),
        (false, true) => Ok(FieldKind::RatFun),
        (false, false) => Ok(FieldKind::Rational),
    }
}

struct Typed<T> {
    a: Matrix<T>,
    left: Matrix<T>,
    right: Matrix<T>,
}

fn typed<T: FileField>(inputs: Inputs) -> Result<Typed<T>> {
    let a: Matrix<T> = inputs.a.into_field()?;
    let (m, n) = a.shape();
    let left = inputs
        .left
        .map_or_else(|| Ok(Matrix::identity(m)), AnyMatrix::into_field)?;
    let right = inputs
        .right
        .map_or_else(|| Ok(Matrix::identity(n)), AnyMatrix::into_field)?;
    Ok(Typed { a, left, right })
}

fn cmd_invert(inputs: Inputs, cfg: &RecursionConfig, err: &mut dyn Write) -> Result<(String, i32)> {
    let field = common_field(
        [&inputs.a]
            .into_iter()
            .chain(&inputs.left)
            .chain(&inputs.right),
    )?;
    match field {
        FieldKind::Rational => invert_typed::<Rational>(typed(inputs)?, cfg, err),
        FieldKind::Float => invert_typed::<f64>(typed(inputs)?, cfg, err),
        FieldKind::RatFun => invert_typed::<RatFun>(typed(inputs)?, cfg, err),
    }
}

fn invert_typed<T: FileField>(
    t: Typed<T>,
    cfg: &RecursionConfig,
    err: &mut dyn Write,
) -> Result<(String, i32)> {
    match cfg.algorithm {
        Algorithm::Wang => Ok((
            serialize_matrix(&wmp_wang(&t.a, &t.left, &t.right, cfg)?),
            0,
        )),
        Algorithm::Udwadia => Ok((
            serialize_matrix(&lm_udwadia(&t.a, &t.left, &t.right, cfg)?),
            0,
        )),
        Algorithm::Both => {
            let report = equivalence_check(&t.a, &t.left, &t.right, cfg)?;
            let text = serialize_matrix(&report.wang);
            let tol = if T::KIND.is_exact() {
                0.0
            } else {
                float_threshold(report.wang.norm_f64())
            };
            let line = match report.gap {
                Discrepancy::Exact { equal: true } => "equivalent: exact".to_string(),
                Discrepancy::Exact { equal: false } => "equivalent: no".to_string(),
                Discrepancy::Float { max_entry, .. } => {
                    format!("equivalent: max gap {max_entry:.3e}")
                }
            };
            writeln!(err, "{line}")?;
            if !report.traces_match() {
                writeln!(err, "branch traces differ")?;
            }
            let ok = report.is_equivalent(tol);
            Ok((text, if ok { 0 } else { EXIT_ENGINE_MISMATCH }))
        }
    }
}

fn cmd_verify(inputs: Inputs, x: AnyMatrix, tol: f64, out: &mut dyn Write) -> Result<i32> {
    let field = common_field(
        [&inputs.a, &x]
            .into_iter()
            .chain(&inputs.left)
            .chain(&inputs.right),
    )?;
    let (res, norm_a) = match field {
        FieldKind::Rational => verify_typed::<Rational>(typed(inputs)?, x)?,
        FieldKind::Float => verify_typed::<f64>(typed(inputs)?, x)?,
        FieldKind::RatFun => verify_typed::<RatFun>(typed(inputs)?, x)?,
    };
    let threshold = tol * norm_a.max(1.0);
    for (label, r) in PenroseResiduals::LABELS.iter().zip(res.as_array()) {
        let verdict = if r.passes(threshold) { "PASS" } else { "FAIL" };
        match r {
            Residual::Exact { .. } => writeln!(out, "{label}\t{verdict}")?,
            Residual::Norm(v) => writeln!(out, "{label}\t{v:.3e}\t{verdict}")?,
        }
    }
    Ok(if res.passes(threshold) {
        0
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn verify_typed<T: FileField>(t: Typed<T>, x: AnyMatrix) -> Result<(PenroseResiduals, f64)> {
    let x: Matrix<T> = x.into_field()?;
    Ok((
        penrose_residuals(&t.a, &x, &t.left, &t.right)?,
        t.a.norm_f64(),
    ))
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    rows: usize,
    cols: Option<usize>,
    degree: usize,
    prob1: f64,
    prob2: f64,
    spd: bool,
    field: Option<FieldKind>,
    seed: u64,
) -> Result<String> {
    let field = field.unwrap_or_else(|| bench::default_field(degree));
    if spd {
        if degree > 0 {
            return Err(Error::InvalidSpec(
                "--spd generates constant matrices; drop --degree".into(),
            ));
        }
        if rows == 0 {
            return Err(Error::InvalidSpec("rows must be positive".into()));
        }
        return Ok(match field {
            FieldKind::Rational => serialize_matrix(&random_spd::<Rational>(rows, seed)),
            FieldKind::Float => serialize_matrix(&random_spd::<f64>(rows, seed)),
            FieldKind::RatFun => serialize_matrix(&random_spd::<RatFun>(rows, seed)),
        });
    }
    let cols = cols.ok_or_else(|| Error::InvalidSpec("--cols is required without --spd".into()))?;
    let spec = GenSpec {
        rows,
        cols,
        degree,
        prob1,
        prob2,
        seed,
        ..GenSpec::default()
    };
    Ok(match field {
        FieldKind::Rational => serialize_matrix(&random_matrix::<Rational>(&spec)?),
        FieldKind::Float => serialize_matrix(&random_matrix::<f64>(&spec)?),
        FieldKind::RatFun => serialize_matrix(&random_matrix::<RatFun>(&spec)?),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    sizes: &str,
    degrees: &str,
    trials: usize,
    seed: u64,
    field: Option<FieldKind>,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let sizes = bench::parse_sizes(sizes)?;
    let degrees = bench::parse_degrees(degrees)?;
    if trials == 0 {
        return Err(Error::InvalidSpec("--trials must be at least 1".into()));
    }
    writeln!(err, "{BENCH_NOTE}")?;
    bench::write_header(out, format)?;
    for &(rows, cols) in &sizes {
        for &degree in &degrees {
            for rec in bench::run_case(rows, cols, degree, field, trials, seed)? {
                bench::write_record(out, &rec, format)?;
            }
        }
    }
    Ok(0)
}

//! Timing harness over the experimental grid of sizes × degrees × both
//! recursions.
//!
//! Each case generates one input set (a random matrix and two random SPD
//! weights), checks that both recursions agree on it, and only then times
//! them. Validation and generation are outside the timed region.

use std::io::Write;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::matio::{random_matrix, random_spd, FileField, GenSpec};
use crate::matrix::Matrix;
use crate::partition::{sweep, Algorithm, ColumnRecursion, RecursionConfig, Udwadia, Wang};
use crate::scalar::{FieldKind, RatFun, Rational};
use crate::verify::{equivalence_check, float_threshold};

/// The (rows, cols, degree) grid of the reference timing study.
pub const TIMING_CASES: [(usize, usize, usize); 8] = [
    (5, 6, 1),
    (5, 6, 2),
    (6, 4, 5),
    (6, 4, 10),
    (10, 11, 1),
    (10, 11, 2),
    (11, 10, 1),
    (11, 10, 2),
];

/// Printed alongside every report.
pub const BENCH_NOTE: &str = "note: timings are for this build on this machine; \
reference timings from other hardware and runtimes are not reproduced. \
generator: prob1=1 prob2=1, coefficients in -10..=10";

pub const HEADER: [&str; 9] = [
    "rows",
    "cols",
    "degree",
    "field",
    "algorithm",
    "trials",
    "median_s",
    "mean_s",
    "seed",
];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub rows: usize,
    pub cols: usize,
    pub degree: usize,
    pub field: FieldKind,
    /// `Wang` or `Udwadia`.
    pub algorithm: Algorithm,
    pub trials: usize,
    pub median_seconds: f64,
    pub mean_seconds: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Tsv,
    Csv,
}

impl OutputFormat {
    fn separator(self) -> &'static str {
        match self {
            OutputFormat::Tsv => "\t",
            OutputFormat::Csv => ",",
        }
    }
}

/// Parses `5x6,6x4,...`.
pub fn parse_sizes(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.split_once(['x', 'X'])
                .and_then(|(r, c)| Some((r.parse().ok()?, c.parse().ok()?)))
                .filter(|&(r, c): &(usize, usize)| r > 0 && c > 0)
                .ok_or_else(|| {
                    Error::InvalidSpec(format!("malformed size '{tok}', expected ROWSxCOLS"))
                })
        })
        .collect()
}

/// Parses `1,2,...`.
pub fn parse_degrees(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("malformed degree '{tok}'")))
        })
        .collect()
}

/// Rational functions for positive degree, constant rationals otherwise.
pub fn default_field(degree: usize) -> FieldKind {
    if degree > 0 {
        FieldKind::RatFun
    } else {
        FieldKind::Rational
    }
}

/// Seeds of the matrix and of the left and right weights of one case.
pub fn case_seeds(seed: u64) -> [u64; 3] {
    [seed, seed.wrapping_add(1), seed.wrapping_add(2)]
}

/// The input set of one case: `(A, left weight, right weight)`.
pub fn case_inputs<T: FileField>(
    rows: usize,
    cols: usize,
    degree: usize,
    seed: u64,
) -> Result<(Matrix<T>, Matrix<T>, Matrix<T>)> {
    let [sa, sl, sr] = case_seeds(seed);
    let spec = GenSpec {
        rows,
        cols,
        degree,
        seed: sa,
        ..GenSpec::default()
    };
    Ok((
        random_matrix(&spec)?,
        random_spd(rows, sl),
        random_spd(cols, sr),
    ))
}

fn time_runs<T: FileField, R: ColumnRecursion>(
    a: &Matrix<T>,
    l: &Matrix<T>,
    r: &Matrix<T>,
    cfg: &RecursionConfig,
    trials: usize,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let start = Instant::now();
        let s = sweep::<T, R>(a, l, r, cfg, false)?;
        out.push(start.elapsed().as_secs_f64());
        std::hint::black_box(s);
    }
    Ok(out)
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn run_typed<T: FileField>(
    rows: usize,
    cols: usize,
    degree: usize,
    trials: usize,
    seed: u64,
) -> Result<[BenchRecord; 2]> {
    let (a, l, r) = case_inputs::<T>(rows, cols, degree, seed)?;
    let cfg = RecursionConfig::default();
    let report = equivalence_check(&a, &l, &r, &cfg)?;
    let tol = if T::KIND.is_exact() {
        0.0
    } else {
        float_threshold(report.wang.norm_f64())
    };
    if !report.is_equivalent(tol) {
        return Err(Error::EngineMismatch(format!(
            "{rows}x{cols} degree {degree}: gap {:?}, branch traces {}",
            report.gap,
            if report.traces_match() {
                "equal"
            } else {
                "differ"
            }
        )));
    }
    let timed_cfg = RecursionConfig {
        validate_weights: false,
        ..cfg
    };
    let record = |algorithm, mut times: Vec<f64>| BenchRecord {
        rows,
        cols,
        degree,
        field: T::KIND,
        algorithm,
        trials,
        mean_seconds: times.iter().sum::<f64>() / trials as f64,
        median_seconds: median(&mut times),
        seed,
    };
    let wang = time_runs::<T, Wang>(&a, &l, &r, &timed_cfg, trials)?;
    let udwadia = time_runs::<T, Udwadia>(&a, &l, &r, &timed_cfg, trials)?;
    Ok([
        record(Algorithm::Wang, wang),
        record(Algorithm::Udwadia, udwadia),
    ])
}

/// Generates, gates and times one (size, degree) case.
pub fn run_case(
    rows: usize,
    cols: usize,
    degree: usize,
    field: Option<FieldKind>,
    trials: usize,
    seed: u64,
) -> Result<[BenchRecord; 2]> {
    if trials == 0 {
        return Err(Error::InvalidSpec("trials must be at least 1".into()));
    }
    match field.unwrap_or_else(|| default_field(degree)) {
        FieldKind::RatFun => run_typed::<RatFun>(rows, cols, degree, trials, seed),
        FieldKind::Rational => run_typed::<Rational>(rows, cols, degree, trials, seed),
        FieldKind::Float => run_typed::<f64>(rows, cols, degree, trials, seed),
    }
}

/// Every (size, degree) pair in order, two records each.
pub fn run_bench(
    sizes: &[(usize, usize)],
    degrees: &[usize],
    field: Option<FieldKind>,
    trials: usize,
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::new();
    for &(rows, cols) in sizes {
        for &degree in degrees {
            out.extend(run_case(rows, cols, degree, field, trials, seed)?);
        }
    }
    Ok(out)
}

pub fn write_header(w: &mut dyn Write, format: OutputFormat) -> std::io::Result<()> {
    writeln!(w, "{}", HEADER.join(format.separator()))
}

pub fn write_record(
    w: &mut dyn Write,
    r: &BenchRecord,
    format: OutputFormat,
) -> std::io::Result<()> {
    let fields = [
        r.rows.to_string(),
        r.cols.to_string(),
        r.degree.to_string(),
        r.field.name().to_string(),
        r.algorithm.name().to_string(),
        r.trials.to_string(),
        format!("{:.6}", r.median_seconds),
        format!("{:.6}", r.mean_seconds),
        r.seed.to_string(),
    ];
    writeln!(w, "{}", fields.join(format.separator()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_parse() {
        assert_eq!(parse_sizes("5x6,6x4").unwrap(), vec![(5, 6), (6, 4)]);
        assert!(parse_sizes("5x").is_err());
        assert!(parse_sizes("5by6").is_err());
        assert!(parse_sizes("0x3").is_err());
        assert_eq!(parse_degrees("1, 2").unwrap(), vec![1, 2]);
        assert!(parse_degrees("a").is_err());
    }

    #[test]
    fn small_case_two_rows() {
        let recs = run_case(5, 6, 1, None, 3, 1).unwrap();
        assert_eq!(recs[0].algorithm, Algorithm::Wang);
        assert_eq!(recs[1].algorithm, Algorithm::Udwadia);
        for r in &recs {
            assert_eq!(r.field, FieldKind::RatFun);
            assert!(r.median_seconds > 0.0 && r.mean_seconds > 0.0);
        }
    }

    #[test]
    fn degree_needs_ratfun() {
        assert!(matches!(
            run_case(3, 3, 1, Some(FieldKind::Rational), 1, 0),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn record_format() {
        let r = BenchRecord {
            rows: 5,
            cols: 6,
            degree: 1,
            field: FieldKind::RatFun,
            algorithm: Algorithm::Wang,
            trials: 3,
            median_seconds: 0.5,
            mean_seconds: 0.25,
            seed: 7,
        };
        let mut out = Vec::new();
        write_header(&mut out, OutputFormat::Csv).unwrap();
        write_record(&mut out, &r, OutputFormat::Csv).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "rows,cols,degree,field,algorithm,trials,median_s,mean_s,seed\n\
             5,6,1,ratfun,wang,3,0.500000,0.250000,7\n"
        );
    }
}

//! Command-line front end: CSV ingestion, the projection-spec grammar,
//! orchestration of the computational modules, and report assembly.
//!
//! Subcommands: `bounds`, `crosscov`, `corr`, `divergence`, `selftest`.
//! Each invocation writes one structured report to stdout; diagnostics go
//! to stderr. Exit codes: 0 success, 2 parse/precondition, 3 dimension
//! mismatch, 4 invalid projection, 5 undefined divergence, 6 self-test
//! failure.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::basis::{BasisFamily, BasisKind};
use crate::divergence::{divergence_diagnostics, DivergenceDiagnostics};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::projection::{
    d_function, extremal_bounds, gram_schmidt, lagrange_defect, squaring_identity_defect,
    ProjectionSpec, REL_TOL,
};
use crate::report::{Report, Value};
use crate::series::Series;
use crate::stats::{best_split, conditional_corr, cross_cov_bound, p_correlation};
use crate::sum;

/// Seed used by `selftest` when neither `--seed` nor `CS_SHARP_SEED` is set.
pub const DEFAULT_SELFTEST_SEED: u64 = 0xC5_5EED;

/// Environment variable overriding the default self-test seed.
pub const SEED_ENV_VAR: &str = "CS_SHARP_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "cs-sharp",
    version,
    about = "Projection-sharpened Cauchy-Schwarz bounds, correlations, and divergences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Render the report as a flat table instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the bound chain |<x,y>| <= D(x,y|P) <= ||x|| ||y||.
    Bounds(BoundsArgs),
    /// Bound the lag-h sample cross-covariance by a split-norm refinement.
    Crosscov(CrosscovArgs),
    /// Classical and projection-sharpened correlation coefficients.
    Corr(CorrArgs),
    /// Estimate the Cauchy-Schwarz divergence between two samples.
    Divergence(DivergenceArgs),
    /// Run the built-in randomized identity and chain checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// CSV file holding the x series.
    pub x: PathBuf,
    /// CSV file holding the y series.
    pub y: PathBuf,
    /// Projection: identity | zero | prefix:K | mask:I,J,... | mean |
    /// span-x | basis:FILE. Mask indices are 1-based.
    #[arg(long, default_value = "mean")]
    pub projection: String,
    /// Column of the x file (name or 0-based index).
    #[arg(long, default_value = "0")]
    pub x_col: String,
    /// Column of the y file (name or 0-based index).
    #[arg(long, default_value = "0")]
    pub y_col: String,
}

#[derive(Debug, Args)]
pub struct CrosscovArgs {
    /// CSV file holding the x series.
    pub x: PathBuf,
    /// CSV file holding the y series.
    pub y: PathBuf,
    /// Forward lag h (1 <= h <= n-1).
    #[arg(long)]
    pub lag: usize,
    /// Split dimension: an integer k, `h` (k = h), or `auto` (minimize over
    /// k). Defaults to `h` when h <= n/2 and `auto` otherwise.
    #[arg(long)]
    pub split: Option<String>,
    /// Use the series as given instead of centering by their sample means.
    #[arg(long)]
    pub no_center: bool,
    #[arg(long, default_value = "0")]
    pub x_col: String,
    #[arg(long, default_value = "0")]
    pub y_col: String,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("conditioning").required(true).multiple(false)))]
pub struct CorrArgs {
    /// CSV file holding the x series.
    pub x: PathBuf,
    /// CSV file holding the y series.
    pub y: PathBuf,
    /// CSV file with one integer group label per observation.
    #[arg(long, group = "conditioning")]
    pub partition: Option<PathBuf>,
    /// Projection spec applied to the centered series (see `bounds`).
    #[arg(long, group = "conditioning")]
    pub projection: Option<String>,
    #[arg(long, default_value = "0")]
    pub x_col: String,
    #[arg(long, default_value = "0")]
    pub y_col: String,
    /// Column of the partition file (name or 0-based index).
    #[arg(long, default_value = "0")]
    pub partition_col: String,
}

#[derive(Debug, Args)]
pub struct DivergenceArgs {
    /// CSV file with the first sample.
    pub x: PathBuf,
    /// CSV file with the second sample.
    pub y: PathBuf,
    /// Truncation order N (coefficients 1..=2N are estimated).
    #[arg(long, default_value_t = 8)]
    pub n_coeffs: usize,
    /// Data range `a,b` mapped onto the unit interval, or `auto`
    /// (empirical min/max of both samples, padded by 5% of the span on
    /// each side).
    #[arg(long, default_value = "auto")]
    pub range: String,
    /// Basis family: cosine | trigonometric.
    #[arg(long, default_value = "cosine")]
    pub basis: String,
    #[arg(long, default_value = "0")]
    pub x_col: String,
    #[arg(long, default_value = "0")]
    pub y_col: String,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// RNG seed; overrides the CS_SHARP_SEED environment variable.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Result of one invocation: a report, or an error optionally accompanied
/// by a diagnostic report (undefined divergence and failed self-tests
/// still explain themselves on stdout).
pub enum Outcome {
    Success(Report),
    Failure {
        report: Option<Report>,
        error: Error,
    },
}

/// Runs one parsed invocation.
pub fn execute(command: &Command) -> Outcome {
    match command {
        Command::Bounds(args) => cmd_bounds(args).into(),
        Command::Crosscov(args) => cmd_crosscov(args).into(),
        Command::Corr(args) => cmd_corr(args).into(),
        Command::Divergence(args) => cmd_divergence(args),
        Command::Selftest(args) => cmd_selftest(args),
    }
}

impl From<Result<Report>> for Outcome {
    fn from(result: Result<Report>) -> Outcome {
        match result {
            Ok(report) => Outcome::Success(report),
            Err(error) => Outcome::Failure {
                report: None,
                error,
            },
        }
    }
}

// ---------------------------------------------------------------------------
// CSV ingestion
// ---------------------------------------------------------------------------

fn split_row(line: &str) -> Vec<String> {
    line.split(',').map(|f| f.trim().to_string()).collect()
}

fn data_rows(
    path: &Path,
    selector: &str,
    numeric_probe: bool,
) -> Result<(usize, Vec<Vec<String>>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    let mut rows: Vec<Vec<String>> = text
        .lines()
        .map(|l| l.trim_end_matches('\r'))
        .filter(|l| !l.trim().is_empty())
        .map(split_row)
        .collect();
    if rows.is_empty() {
        return Err(Error::EmptySample);
    }
    let column = match selector.parse::<usize>() {
        Ok(index) => {
            // optional header: drop the first row when the probe fails there
            let first = rows[0].get(index).ok_or_else(|| {
                Error::ParseError(format!("{}: row 1 has no column {index}", path.display()))
            })?;
            let is_data = if numeric_probe {
                first.parse::<f64>().is_ok()
            } else {
                first.parse::<i64>().is_ok()
            };
            if !is_data {
                rows.remove(0);
            }
            index
        }
        Err(_) => {
            let header = rows.remove(0);
            header
                .iter()
                .position(|name| name == selector)
                .ok_or_else(|| {
                    Error::ParseError(format!(
                        "{}: no column named '{selector}' in header",
                        path.display()
                    ))
                })?
        }
    };
    if rows.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok((column, rows))
}

/// Reads one real-valued column; every value must be a finite decimal.
pub fn read_series(path: &Path, selector: &str) -> Result<Series> {
    let (column, rows) = data_rows(path, selector, true)?;
    let mut values = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let field = row.get(column).ok_or_else(|| {
            Error::ParseError(format!(
                "{}: data row {} has no column {column}",
                path.display(),
                i + 1
            ))
        })?;
        let v: f64 = field.parse().map_err(|_| {
            Error::ParseError(format!(
                "{}: '{field}' at data row {} is not a number",
                path.display(),
                i + 1
            ))
        })?;
        if !v.is_finite() {
            return Err(Error::ParseError(format!(
                "{}: non-finite value at data row {}",
                path.display(),
                i + 1
            )));
        }
        values.push(v);
    }
    Series::new(values)
}

/// Reads one integer label column for partitions.
pub fn read_labels(path: &Path, selector: &str) -> Result<Vec<i64>> {
    let (column, rows) = data_rows(path, selector, false)?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let field = row.get(column).ok_or_else(|| {
                Error::ParseError(format!(
                    "{}: data row {} has no column {column}",
                    path.display(),
                    i + 1
                ))
            })?;
            field.parse::<i64>().map_err(|_| {
                Error::ParseError(format!(
                    "{}: '{field}' at data row {} is not an integer label",
                    path.display(),
                    i + 1
                ))
            })
        })
        .collect()
}

/// Reads a whitespace-separated n x m matrix as a list of m columns.
pub fn read_matrix_columns(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|f| {
                f.parse::<f64>().map_err(|_| {
                    Error::ParseError(format!(
                        "{}: '{f}' at line {} is not a number",
                        path.display(),
                        i + 1
                    ))
                })
            })
            .collect::<Result<_>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::ParseError(format!(
                    "{}: ragged matrix at line {}",
                    path.display(),
                    i + 1
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() || rows[0].is_empty() {
        return Err(Error::ParseError(format!(
            "{}: empty matrix",
            path.display()
        )));
    }
    let (n, m) = (rows.len(), rows[0].len());
    Ok((0..m)
        .map(|j| (0..n).map(|i| rows[i][j]).collect())
        .collect())
}

// ---------------------------------------------------------------------------
// Projection grammar
// ---------------------------------------------------------------------------

/// Parses the textual projection grammar against a reference series (used
/// by `span-x`): `identity | zero | prefix:K | mask:I,J,... | mean |
/// span-x | basis:FILE`.
pub fn parse_projection_spec(text: &str, reference: &Series) -> Result<ProjectionSpec> {
    match text {
        "identity" => return Ok(ProjectionSpec::Identity),
        "zero" => return Ok(ProjectionSpec::Zero),
        "mean" => return Ok(ProjectionSpec::MeanDirection),
        "span-x" => return ProjectionSpec::span_of(reference.clone()),
        _ => {}
    }
    if let Some(arg) = text.strip_prefix("prefix:") {
        let k: usize = arg
            .parse()
            .map_err(|_| Error::ParseError(format!("bad prefix length '{arg}'")))?;
        if k == 0 {
            return Err(Error::ParseError("prefix length must be >= 1".into()));
        }
        return Ok(ProjectionSpec::CoordinatePrefix(k));
    }
    if let Some(arg) = text.strip_prefix("mask:") {
        let mut indices = BTreeSet::new();
        for part in arg.split(',') {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::ParseError(format!("bad mask index '{part}'")))?;
            if i == 0 {
                return Err(Error::ParseError("mask indices are 1-based".into()));
            }
            indices.insert(i - 1);
        }
        return Ok(ProjectionSpec::CoordinateMask(indices));
    }
    if let Some(file) = text.strip_prefix("basis:") {
        let columns = read_matrix_columns(Path::new(file))?;
        return ProjectionSpec::orthonormal_columns(columns);
    }
    Err(Error::ParseError(format!("unknown projection '{text}'")))
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

fn input_summary(path: &Path, column: &str, series: &Series) -> Value {
    Value::object(vec![
        ("path", Value::str(path.display().to_string())),
        ("column", Value::str(column)),
        ("length", Value::int(series.len())),
        ("mean", Value::float(series.mean())),
    ])
}

fn report_frame(command: &str, options: Value, inputs: Value, results: Value) -> Report {
    Report::new(vec![
        ("command", Value::str(command)),
        ("version", Value::str(env!("CARGO_PKG_VERSION"))),
        ("options", options),
        ("inputs", inputs),
        ("results", results),
    ])
}

fn ratio_or_null(num: f64, denom: f64) -> Value {
    if denom > 0.0 {
        Value::float(num / denom)
    } else {
        Value::Null
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn cmd_bounds(args: &BoundsArgs) -> Result<Report> {
    let x = read_series(&args.x, &args.x_col)?;
    let y = read_series(&args.y, &args.y_col)?;
    let spec = parse_projection_spec(&args.projection, &x)?;
    let bound = d_function(&x, &y, &spec)?;
    let (lower, upper) = extremal_bounds(&x, &y)?;
    let results = Value::object(vec![
        ("inner", Value::float(bound.inner)),
        ("abs_inner", Value::float(bound.abs_inner)),
        ("d_value", Value::float(bound.d_value)),
        ("cs_value", Value::float(bound.cs_value)),
        ("p_norm_x", Value::float(bound.p_norm_x)),
        ("p_norm_y", Value::float(bound.p_norm_y)),
        ("residual_x", Value::float(bound.residual_x)),
        ("residual_y", Value::float(bound.residual_y)),
        ("lower_extreme", Value::float(lower)),
        ("upper_extreme", Value::float(upper)),
        ("d_over_cs", ratio_or_null(bound.d_value, bound.cs_value)),
        (
            "inner_over_d",
            ratio_or_null(bound.abs_inner, bound.d_value),
        ),
    ]);
    Ok(report_frame(
        "bounds",
        Value::object(vec![("projection", Value::str(&args.projection))]),
        Value::object(vec![
            ("x", input_summary(&args.x, &args.x_col, &x)),
            ("y", input_summary(&args.y, &args.y_col, &y)),
        ]),
        results,
    ))
}

fn cmd_crosscov(args: &CrosscovArgs) -> Result<Report> {
    let x = read_series(&args.x, &args.x_col)?;
    let y = read_series(&args.y, &args.y_col)?;
    let n = x.len();
    let lag = args.lag;
    let center = !args.no_center;
    // Default split policy: the lag itself while it is a valid split
    // (lag <= n/2), otherwise the optimal scan.
    let mode = match args.split.as_deref() {
        Some(text) => text.to_string(),
        None => {
            if lag <= n / 2 {
                "h".to_string()
            } else {
                "auto".to_string()
            }
        }
    };
    let split = match mode.as_str() {
        "h" => lag,
        "auto" => {
            let (k, _) = best_split(&x, &y, lag, center)?;
            k
        }
        text => text.parse::<usize>().map_err(|_| {
            Error::ParseError(format!("bad split '{text}' (expected k, 'h', or 'auto')"))
        })?,
    };
    let bound = cross_cov_bound(&x, &y, lag, split, center)?;
    let results = Value::object(vec![
        ("r_bar", Value::float(bound.r_bar)),
        ("d_bound", Value::float(bound.d_bound)),
        ("cs_bound", Value::float(bound.cs_bound)),
        ("lag", Value::int(bound.lag)),
        ("split", Value::int(bound.split)),
        ("split_mode", Value::str(&mode)),
        ("centered", Value::Bool(center)),
    ]);
    Ok(report_frame(
        "crosscov",
        Value::object(vec![
            ("lag", Value::int(lag)),
            ("split", Value::str(&mode)),
            ("center", Value::Bool(center)),
        ]),
        Value::object(vec![
            ("x", input_summary(&args.x, &args.x_col, &x)),
            ("y", input_summary(&args.y, &args.y_col, &y)),
        ]),
        results,
    ))
}

fn cmd_corr(args: &CorrArgs) -> Result<Report> {
    let x = read_series(&args.x, &args.x_col)?;
    let y = read_series(&args.y, &args.y_col)?;
    let (corr, conditioning) = match (&args.partition, &args.projection) {
        (Some(path), None) => {
            let labels = read_labels(path, &args.partition_col)?;
            let partition = Partition::new(&labels)?;
            if partition.len() != x.len() {
                return Err(Error::DimensionMismatch {
                    left: partition.len(),
                    right: x.len(),
                });
            }
            let groups = partition.group_count();
            (
                conditional_corr(&x, &y, &partition)?,
                Value::object(vec![
                    ("partition", Value::str(path.display().to_string())),
                    ("groups", Value::int(groups)),
                ]),
            )
        }
        (None, Some(text)) => {
            // the projection acts on the centered series; span-x therefore
            // spans the centered x
            let spec = parse_projection_spec(text, &x.centered())?;
            (
                p_correlation(&x, &y, &spec)?,
                Value::object(vec![("projection", Value::str(text))]),
            )
        }
        _ => {
            return Err(Error::ParseError(
                "exactly one of --partition / --projection is required".into(),
            ))
        }
    };
    let chain_lower = corr.rho.abs() <= corr.rho_p.abs() + 1e-12;
    let chain_upper = corr.rho_p.abs() <= 1.0;
    let results = Value::object(vec![
        ("rho", Value::float(corr.rho)),
        ("rho_p", Value::float(corr.rho_p)),
        ("d_denominator", Value::float(corr.d_denominator)),
        ("cov", Value::float(corr.cov)),
        ("abs_rho_le_abs_rho_p", Value::Bool(chain_lower)),
        ("abs_rho_p_le_one", Value::Bool(chain_upper)),
    ]);
    Ok(report_frame(
        "corr",
        conditioning,
        Value::object(vec![
            ("x", input_summary(&args.x, &args.x_col, &x)),
            ("y", input_summary(&args.y, &args.y_col, &y)),
        ]),
        results,
    ))
}

fn divergence_results(diag: &DivergenceDiagnostics, value: Option<f64>) -> Value {
    Value::object(vec![
        ("value", value.map(Value::float).unwrap_or(Value::Null)),
        ("t_hat_f", Value::float(diag.t_hat_f)),
        ("t_hat_g", Value::float(diag.t_hat_g)),
        ("r_hat_f", Value::float(diag.r_hat_f)),
        ("r_hat_g", Value::float(diag.r_hat_g)),
        ("denom", Value::float(diag.denom)),
        ("n_coeffs", Value::int(diag.n_coeffs)),
    ])
}

fn cmd_divergence(args: &DivergenceArgs) -> Outcome {
    let prepared = (|| -> Result<(Series, Series, BasisFamily)> {
        let x = read_series(&args.x, &args.x_col)?;
        let y = read_series(&args.y, &args.y_col)?;
        let kind = match args.basis.as_str() {
            "cosine" => BasisKind::Cosine,
            "trigonometric" | "trig" => BasisKind::Trigonometric,
            other => return Err(Error::ParseError(format!("unknown basis '{other}'"))),
        };
        let (lo, hi) =
            match args.range.as_str() {
                "auto" => auto_range(&x, &y),
                text => {
                    let parts: Vec<&str> = text.split(',').collect();
                    if parts.len() != 2 {
                        return Err(Error::ParseError(format!(
                            "bad range '{text}' (expected 'a,b' or 'auto')"
                        )));
                    }
                    let a: f64 = parts[0].trim().parse().map_err(|_| {
                        Error::ParseError(format!("bad range bound '{}'", parts[0]))
                    })?;
                    let b: f64 = parts[1].trim().parse().map_err(|_| {
                        Error::ParseError(format!("bad range bound '{}'", parts[1]))
                    })?;
                    (a, b)
                }
            };
        Ok((x, y, BasisFamily::new(kind, lo, hi)?))
    })();
    let (x, y, basis) = match prepared {
        Ok(p) => p,
        Err(error) => {
            return Outcome::Failure {
                report: None,
                error,
            }
        }
    };
    let diag = match divergence_diagnostics(&x, &y, &basis, args.n_coeffs) {
        Ok(d) => d,
        Err(error) => {
            return Outcome::Failure {
                report: None,
                error,
            }
        }
    };
    let (lo, hi) = basis.domain();
    let options = Value::object(vec![
        ("n_coeffs", Value::int(args.n_coeffs)),
        ("range", Value::str(&args.range)),
        ("basis", Value::str(basis.kind().name())),
        (
            "domain",
            Value::List(vec![Value::float(lo), Value::float(hi)]),
        ),
    ]);
    let inputs = Value::object(vec![
        ("x", input_summary(&args.x, &args.x_col, &x)),
        ("y", input_summary(&args.y, &args.y_col, &y)),
    ]);
    match diag.clone().into_estimate() {
        Ok(estimate) => Outcome::Success(report_frame(
            "divergence",
            options,
            inputs,
            divergence_results(&diag, Some(estimate.value)),
        )),
        Err(error) => Outcome::Failure {
            report: Some(report_frame(
                "divergence",
                options,
                inputs,
                divergence_results(&diag, None),
            )),
            error,
        },
    }
}

/// Empirical min/max over both samples, padded by 5% of the span on each
/// side (half a unit when the span is zero, so constant samples still map).
fn auto_range(x: &Series, y: &Series) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in x.as_slice().iter().chain(y.as_slice()) {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    let span = hi - lo;
    let pad = if span > 0.0 { 0.05 * span } else { 0.5 };
    (lo - pad, hi + pad)
}

// ---------------------------------------------------------------------------
// Self test
// ---------------------------------------------------------------------------

/// Maximum defects observed by the randomized self-test suites.
pub struct SelfTestSummary {
    pub seed: u64,
    pub cases: usize,
    pub max_chain_excess: f64,
    pub max_lagrange_defect: f64,
    pub max_squaring_defect: f64,
    pub chain_tol: f64,
    pub lagrange_tol: f64,
    pub squaring_tol: f64,
}

impl SelfTestSummary {
    pub fn passed(&self) -> bool {
        self.max_chain_excess <= self.chain_tol
            && self.max_lagrange_defect <= self.lagrange_tol
            && self.max_squaring_defect <= self.squaring_tol
    }
}

fn random_series(rng: &mut ChaCha8Rng, dim: usize) -> Series {
    Series::new((0..dim).map(|_| rng.random_range(-10.0..10.0)).collect()).expect("finite entries")
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Series {
    loop {
        let s = random_series(rng, dim);
        let norm = s.norm();
        if norm > 1e-6 {
            let values = s.as_slice().iter().map(|v| v / norm).collect();
            return Series::new(values).expect("finite entries");
        }
    }
}

/// Draws one projection spec at random, covering every variant that fits
/// the dimension (orthonormal column sets come from Gram-Schmidt applied
/// to Gaussian draws).
pub(crate) fn random_projection(rng: &mut ChaCha8Rng, dim: usize) -> ProjectionSpec {
    loop {
        match rng.random_range(0..8u32) {
            0 => return ProjectionSpec::Identity,
            1 => return ProjectionSpec::Zero,
            2 => return ProjectionSpec::CoordinatePrefix(rng.random_range(1..=dim)),
            3 => {
                let indices: BTreeSet<usize> = (0..dim)
                    .filter(|_| rng.random_range(0..2u32) == 1)
                    .collect();
                return ProjectionSpec::CoordinateMask(indices);
            }
            4 => return ProjectionSpec::MeanDirection,
            5 => {
                let v = random_series(rng, dim);
                if let Ok(spec) = ProjectionSpec::span_of(v) {
                    return spec;
                }
            }
            6 => {
                let m = rng.random_range(1..=dim);
                let columns: Vec<Vec<f64>> = (0..m)
                    .map(|_| (0..dim).map(|_| rng.sample(StandardNormal)).collect())
                    .collect();
                if let Ok(basis) = gram_schmidt(&columns) {
                    return ProjectionSpec::OrthonormalColumns(basis);
                }
            }
            _ => {
                let groups = rng.random_range(1..=dim.min(4)) as i64;
                let labels: Vec<i64> = (0..dim).map(|_| rng.random_range(0..groups)).collect();
                return ProjectionSpec::PartitionAveraging(
                    Partition::new(&labels).expect("nonempty labels"),
                );
            }
        }
    }
}

/// Runs the randomized suites: the bound chain, the cross-product-norm
/// identity, and the squaring identity, sweeping dimensions 1..=32.
pub fn run_selftest(seed: u64) -> SelfTestSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let squaring_tol = 1e-12;
    let mut summary = SelfTestSummary {
        seed,
        cases: 0,
        max_chain_excess: 0.0,
        max_lagrange_defect: 0.0,
        max_squaring_defect: 0.0,
        chain_tol: REL_TOL,
        lagrange_tol: REL_TOL,
        squaring_tol,
    };
    for dim in 1..=32usize {
        for _ in 0..12 {
            let x = random_series(&mut rng, dim);
            let y = random_series(&mut rng, dim);
            let spec = random_projection(&mut rng, dim);

            let r = d_function(&x, &y, &spec).expect("valid random spec");
            let scale = r.cs_value.max(f64::MIN_POSITIVE);
            let excess = (r.abs_inner - r.d_value).max(r.d_value - r.cs_value) / scale;
            summary.max_chain_excess = summary.max_chain_excess.max(excess);

            let lagrange = lagrange_defect(&x, &y).expect("same length");
            let nx = sum::norm_sq(x.as_slice());
            let ny = sum::norm_sq(y.as_slice());
            let direct = nx * ny - r.inner * r.inner;
            let defect = (lagrange - direct).abs() / (nx * ny).max(f64::MIN_POSITIVE);
            summary.max_lagrange_defect = summary.max_lagrange_defect.max(defect);

            let ux = random_unit(&mut rng, dim);
            let uy = random_unit(&mut rng, dim);
            let sq = squaring_identity_defect(&ux, &uy, &spec).expect("valid random spec");
            summary.max_squaring_defect = summary.max_squaring_defect.max(sq);

            summary.cases += 1;
        }
    }
    summary
}

fn cmd_selftest(args: &SelftestArgs) -> Outcome {
    let seed = match args.seed {
        Some(seed) => seed,
        None => match std::env::var(SEED_ENV_VAR) {
            Ok(text) => match text.parse::<u64>() {
                Ok(seed) => seed,
                Err(_) => {
                    return Outcome::Failure {
                        report: None,
                        error: Error::ParseError(format!(
                            "{SEED_ENV_VAR} must be an unsigned integer, got '{text}'"
                        )),
                    }
                }
            },
            Err(_) => DEFAULT_SELFTEST_SEED,
        },
    };
    let summary = run_selftest(seed);
    let results = Value::object(vec![
        ("cases", Value::int(summary.cases)),
        ("dimensions", Value::str("1..=32")),
        ("max_chain_excess", Value::float(summary.max_chain_excess)),
        ("chain_tol", Value::float(summary.chain_tol)),
        (
            "max_lagrange_defect",
            Value::float(summary.max_lagrange_defect),
        ),
        ("lagrange_tol", Value::float(summary.lagrange_tol)),
        (
            "max_squaring_defect",
            Value::float(summary.max_squaring_defect),
        ),
        ("squaring_tol", Value::float(summary.squaring_tol)),
        ("passed", Value::Bool(summary.passed())),
    ]);
    let report = report_frame(
        "selftest",
        Value::object(vec![("seed", Value::Int(summary.seed as i64))]),
        Value::Null,
        results,
    );
    if summary.passed() {
        Outcome::Success(report)
    } else {
        Outcome::Failure {
            report: Some(report),
            error: Error::SelfTestFailure("defects exceed tolerances".into()),
        }
    }
}

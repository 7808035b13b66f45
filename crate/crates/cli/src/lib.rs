//! Pipeline behind the `ohsawa` binary: parse a body spec, compute the
//! threshold, places and verdict, optionally the shell integrals and the
//! calculus checks, and write the report.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use ohsawa_core::newton_body::spec::BodySpec;
use ohsawa_core::polar_volume::{verdict_with, Outcome, SliceOptions, SingularityVerdict};
use ohsawa_core::shell_oracle::{
    calculus_checks, default_t_grid, series_csv, trend_classify, CheckReport, McOptions, Mode, Quantity,
    ShellEstimate, ShellOracle, TrendClass, TrendPoint, TrendReport, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use ohsawa_core::valuations::{lc_places, lct, LcPlaceSet, Lct};
use ohsawa_core::{Error, Execution};

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const DISAGREEMENT: i32 = 3;
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Spec(_)
            | Error::InvalidBody(_)
            | Error::DimensionMismatch { .. }
            | Error::UnboundedComplement
            | Error::InvalidWeight
            | Error::DiagonalMiss => exit::INVALID_INPUT,
            Error::RouteDisagreement(_) => exit::DISAGREEMENT,
            _ => exit::FAILURE,
        };
        CliError::new(code, e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    CsvBundle,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub shell: bool,
    pub checks: bool,
    pub t_grid: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            shell: false,
            checks: false,
            t_grid: default_t_grid(),
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BodyEcho {
    pub spec: Value,
    /// Whether the body admits the exact rational/analytic paths.
    pub exact: bool,
    /// Spec fields that were given as binary floats.
    pub inexact_fields: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub t_grid: Vec<f64>,
    /// Shell values are in the coordinates `x_i = log|z_i|^2`.
    pub measure: &'static str,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub body: BodyEcho,
    pub lct: Lct,
    pub lc_places: LcPlaceSet,
    pub verdict: SingularityVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shell_trend: Option<TrendReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volume_trend: Option<TrendReport>,
    /// Every shell evaluation, deterministic rows first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shell_series: Option<Vec<ShellEstimate>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub provenance: Provenance,
    #[serde(skip)]
    slices_csv: String,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `b,g_b,exact_flag,stderr` for the slices behind the verdict.
    pub fn slices_csv(&self) -> &str {
        &self.slices_csv
    }

    pub fn shell_csv(&self) -> String {
        series_csv(self.shell_series.as_deref().unwrap_or(&[]))
    }
}

pub fn read_spec(path: &Path) -> Result<BodySpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new(exit::INVALID_INPUT, format!("{}: {e}", path.display())))?;
    BodySpec::from_json(&text).map_err(|e| CliError::new(exit::INVALID_INPUT, format!("{}: {e}", path.display())))
}

pub fn run_analyze(path: &Path, opts: &AnalyzeOptions) -> Result<AnalysisReport, CliError> {
    let spec = read_spec(path)?;
    analyze_spec(&spec, opts)
}

pub fn analyze_spec(spec: &BodySpec, opts: &AnalyzeOptions) -> Result<AnalysisReport, CliError> {
    if opts.shell {
        validate_t_grid(&opts.t_grid)?;
    }
    let body = spec.build()?;
    body.require_bounded_complement()?;
    let lct = lct(&body)?;
    let places = lc_places(&body)?;
    let slice_opts = SliceOptions { samples: opts.samples, seed: opts.seed, exec: opts.exec };
    let verdict = verdict_with(&body, &slice_opts)?;
    let slices_csv = verdict.profile.as_ref().map(|p| p.to_csv()).unwrap_or_else(|| "b,g_b,exact_flag,stderr\n".into());

    let (mut shell_trend, mut volume_trend, mut shell_series) = (None, None, None);
    if opts.shell {
        let (s, i, rows) = shell_section(&body, opts)?;
        let expected = expected_trend(&verdict.outcome);
        if s.classification != expected {
            return Err(CliError::new(
                exit::DISAGREEMENT,
                format!(
                    "shell trend is {:?} but the verdict {} implies {:?}",
                    s.classification,
                    serde_json::to_string(&verdict.outcome).unwrap_or_default(),
                    expected
                )
                .to_lowercase(),
            ));
        }
        shell_trend = Some(s);
        volume_trend = Some(i);
        shell_series = Some(rows);
    }
    let mut notes = Vec::new();
    let checks = if opts.checks {
        match calculus_checks(&body) {
            Ok(c) => Some(c),
            Err(Error::Domain(m)) => {
                notes.push(m);
                None
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        body: BodyEcho { spec: spec.to_json(), exact: body.is_exact(), inexact_fields: spec.inexact_fields.clone() },
        lct,
        lc_places: places,
        verdict,
        shell_trend,
        volume_trend,
        shell_series,
        checks,
        notes,
        provenance: Provenance {
            tool: "ohsawa",
            version: env!("CARGO_PKG_VERSION"),
            seed: opts.seed,
            samples: opts.samples,
            t_grid: opts.t_grid.clone(),
            measure: "x_i = log|z_i|^2; integrals over the polydisc carry an extra factor pi^n",
        },
        slices_csv,
    })
}

fn expected_trend(outcome: &Outcome) -> TrendClass {
    match outcome {
        Outcome::Singular { .. } => TrendClass::Divergent,
        Outcome::NonSingular { .. } | Outcome::IntegrableLocus => TrendClass::Bounded,
    }
}

/// Trends of `S(t)` and `I(t)` plus every shell row. The deterministic path
/// decides the trends when it exists; the sampled series is always added.
fn shell_section(
    body: &ohsawa_core::NewtonBody,
    opts: &AnalyzeOptions,
) -> Result<(TrendReport, TrendReport, Vec<ShellEstimate>), CliError> {
    let oracle = ShellOracle::new(body)?;
    let mc = McOptions { samples: opts.samples, seed: opts.seed, exec: opts.exec };
    let ts = &opts.t_grid;
    let mode = if oracle.has_exact_path() { Mode::Exact } else { Mode::Mc };
    let shells = oracle.shell_series(ts, mode, &mc)?;
    let scaled = oracle.scaled_series(ts, mode, &mc)?;
    let s_points: Vec<TrendPoint> =
        shells.iter().map(|e| TrendPoint { t: e.t, value: e.value, stderr: e.stderr }).collect();
    let i_points: Vec<TrendPoint> =
        scaled.iter().map(|p| TrendPoint { t: p.s, value: p.scaled, stderr: p.stderr }).collect();
    let s = trend_classify(Quantity::Shell, &s_points)?;
    let i = trend_classify(Quantity::ScaledVolume, &i_points)?;
    if s.classification != i.classification {
        return Err(CliError::new(
            exit::DISAGREEMENT,
            format!("S(t) trend {:?} differs from I(t) trend {:?}", s.classification, i.classification).to_lowercase(),
        ));
    }
    let mut rows = shells;
    if mode == Mode::Exact {
        rows.extend(oracle.shell_series(ts, Mode::Mc, &mc)?);
    }
    Ok((s, i, rows))
}

/// Writes the report; returns the files written. With `out = None` the JSON
/// report goes to the returned string instead and no files are touched.
pub fn emit_report(report: &AnalysisReport, format: Format, out: Option<&Path>) -> Result<Vec<PathBuf>, CliError> {
    let Some(dir) = out else {
        return Ok(Vec::new());
    };
    let io = |p: &Path, e: std::io::Error| CliError::new(exit::FAILURE, format!("{}: {e}", p.display()));
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let mut files = vec![(dir.join("report.json"), report.to_json())];
    if format == Format::CsvBundle {
        files.push((dir.join("slices.csv"), report.slices_csv().to_string()));
        files.push((dir.join("shell.csv"), report.shell_csv()));
    }
    let mut written = Vec::new();
    for (path, text) in files {
        fs::write(&path, text).map_err(|e| io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

/// At least five levels below -1, decreasing by a constant factor.
pub fn validate_t_grid(ts: &[f64]) -> Result<(), CliError> {
    let bad = |m: &str| Err(CliError::new(exit::INVALID_INPUT, format!("t-grid: {m}")));
    if ts.len() < 5 {
        return bad("at least five levels are needed");
    }
    if ts.iter().any(|t| !(*t < -1.0)) {
        return bad("every level must be below -1");
    }
    let ratio = ts[1] / ts[0];
    if !(ratio > 1.0) || ts.windows(2).any(|w| ((w[1] / w[0]) / ratio - 1.0).abs() > 1e-9) {
        return bad("levels must decrease geometrically");
    }
    Ok(())
}

/// Parses `a,b,...` into a t-grid.
pub fn parse_t_grid(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|v| if v.is_empty() { Err("empty grid".into()) } else { Ok(v) })
}

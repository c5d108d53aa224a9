//! Command-line front end.
//!
//! Exit status: 0 success, 1 `verify` tolerance breach, 2 usage, parse or
//! I/O failure, 3 invalid model.

use crate::error::{Error, Result};
use crate::io;
use crate::lrt::{build_optimal_roc, build_optimal_roc_empirical, recover_regions};
use crate::model::ScoreModel;
use crate::oracle::{dominance_check, etas_at_scores, lrt_roc_at_pf, lrt_roc_direct, randomized_hull};
use crate::roc::{
    empirical_svt_roc, empirical_tolerance, is_concave, slope_profile, svt_roc, threshold_grid, CurveKind, RocCurve,
    ANALYTIC_CONCAVITY_TOL,
};
use clap::{Parser, ValueEnum};
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MODEL: i32 = 3;

/// Default `verify` tolerance on the largest pd gap.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// SVT ROC curve as CSV.
    Svt,
    /// Concavity report of the SVT curve as JSON.
    Concavity,
    /// Optimal ROC built from the SVT curve by segment summation, as CSV.
    Optimize,
    /// Optimal ROC computed directly from the densities, as CSV.
    Oracle,
    /// Upper convex hull of the SVT curve, as CSV.
    Hull,
    /// LRT decision region at `--eta`, as JSON.
    Regions,
    /// Constructed curve against the oracle, as JSON.
    Verify,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "lrtroc", version, about = "SVT ROC curves and Neyman-Pearson optimal ROC construction")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Model specification (JSON).
    #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
    pub model: Option<PathBuf>,

    /// Labeled scores (CSV with header `score,label`).
    #[arg(long)]
    pub samples: Option<PathBuf>,

    /// Points on the SVT threshold grid.
    #[arg(long, default_value_t = 2001)]
    pub n_points: usize,

    /// LRT threshold for `regions`.
    #[arg(long)]
    pub eta: Option<f64>,

    /// Concavity tolerance, or the gap tolerance for `verify`.
    #[arg(long)]
    pub tol: Option<f64>,

    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Constructed curve (CSV) for `verify`; built from the model when omitted.
    #[arg(long)]
    pub curve: Option<PathBuf>,
}

enum Source {
    Model(ScoreModel),
    Samples(Vec<f64>, Vec<f64>),
}

/// Maps a library error to an exit status.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidModel(_) | Error::DegenerateNullDensity | Error::PositiveMeasureLevelSet => EXIT_MODEL,
        _ => EXIT_USAGE,
    }
}

fn load_source(cfg: &RunConfig) -> Result<Source> {
    if let Some(path) = &cfg.model {
        let text = std::fs::read_to_string(path)?;
        let model = ScoreModel::from_json(&text)?;
        let report = model.validate();
        for w in report.warnings() {
            eprintln!("warning: {w}");
        }
        if !report.passed() {
            let v = io::validation_json(&report);
            return Err(Error::InvalidModel(format!("validation failed: {v}")));
        }
        return Ok(Source::Model(model));
    }
    let path = cfg
        .samples
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("one of --model or --samples is required".into()))?;
    let (h0, h1) = io::read_samples_csv(File::open(path)?)?;
    Ok(Source::Samples(h0, h1))
}

fn require_model<'a>(src: &'a Source, cmd: &str) -> Result<&'a ScoreModel> {
    match src {
        Source::Model(m) => Ok(m),
        Source::Samples(..) => Err(Error::InvalidArgument(format!("{cmd} requires --model"))),
    }
}

fn svt_curve(src: &Source, n: usize) -> Result<RocCurve> {
    match src {
        Source::Model(m) => svt_roc(m, n),
        Source::Samples(h0, h1) => empirical_svt_roc(h0, h1),
    }
}

fn optimal_curve(src: &Source, n: usize) -> Result<RocCurve> {
    let svt = svt_curve(src, n)?;
    match src {
        Source::Model(_) => build_optimal_roc(&svt, &slope_profile(&svt)?),
        Source::Samples(h0, h1) => build_optimal_roc_empirical(&svt, h0.len(), h1.len()),
    }
}

enum Output {
    Text(String),
    Json(serde_json::Value),
}

/// Executes one command and writes its output. Returns the exit status.
pub fn run(cfg: &RunConfig) -> Result<i32> {
    if let Some(tol) = cfg.tol {
        if !(tol >= 0.0) {
            return Err(Error::InvalidArgument(format!("--tol must be nonnegative, got {tol}")));
        }
    }
    let src = load_source(cfg)?;
    let n = cfg.n_points;
    let mut status = EXIT_OK;
    let output = match cfg.command {
        Command::Svt => Output::Text(io::curve_to_csv_string(&svt_curve(&src, n)?)),
        Command::Concavity => {
            let curve = svt_curve(&src, n)?;
            let tol = cfg.tol.unwrap_or(match &src {
                Source::Model(_) => ANALYTIC_CONCAVITY_TOL,
                Source::Samples(h0, h1) => empirical_tolerance(h0.len(), h1.len()),
            });
            Output::Json(io::concavity_json(&is_concave(&curve, tol)?, tol))
        }
        Command::Optimize => Output::Text(io::curve_to_csv_string(&optimal_curve(&src, n)?)),
        Command::Oracle => {
            let model = require_model(&src, "oracle")?;
            let etas = etas_at_scores(model, &threshold_grid(model, n));
            Output::Text(io::curve_to_csv_string(&lrt_roc_direct(model, &etas)?))
        }
        Command::Hull => Output::Text(io::curve_to_csv_string(&randomized_hull(&svt_curve(&src, n)?))),
        Command::Regions => {
            let model = require_model(&src, "regions")?;
            let eta = cfg.eta.ok_or_else(|| Error::InvalidArgument("regions requires --eta".into()))?;
            let svt = svt_roc(model, n)?;
            let region = recover_regions(&svt, &slope_profile(&svt)?, eta)?;
            Output::Json(io::region_json(eta, &region))
        }
        Command::Verify => {
            let model = require_model(&src, "verify")?;
            let tol = cfg.tol.unwrap_or(DEFAULT_VERIFY_TOL);
            let constructed = match &cfg.curve {
                Some(path) => io::read_curve_csv(File::open(path)?, CurveKind::LrtConstructed)?,
                None => optimal_curve(&src, n)?,
            };
            let oracle = lrt_roc_at_pf(model, &constructed.pfs())?;
            let report = dominance_check(&constructed, &oracle, tol);
            if !(report.max_abs_gap() <= tol) {
                status = EXIT_TOLERANCE;
            }
            Output::Json(io::dominance_json(&report))
        }
    };
    let bytes = match output {
        Output::Text(s) => s,
        Output::Json(v) => serde_json::to_string_pretty(&v).expect("json values serialize") + "\n",
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(status)
}

/// Parses arguments, runs, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags() {
        let cfg = RunConfig::try_parse_from(["lrtroc", "regions", "--model", "m.json", "--eta", "1"]).unwrap();
        assert_eq!(cfg.command, Command::Regions);
        assert_eq!(cfg.n_points, 2001);
        assert_eq!(cfg.eta, Some(1.0));
    }

    #[test]
    fn model_and_samples_are_exclusive() {
        assert!(RunConfig::try_parse_from(["lrtroc", "svt", "--model", "a", "--samples", "b"]).is_err());
        assert!(RunConfig::try_parse_from(["lrtroc", "svt"]).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::DegenerateNullDensity), EXIT_MODEL);
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_USAGE);
        assert_eq!(main_with_args(["lrtroc", "bogus"]), EXIT_USAGE);
        assert_eq!(main_with_args(["lrtroc", "svt", "--model", "/nonexistent/model.json"]), EXIT_USAGE);
    }
}

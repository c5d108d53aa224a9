//! File formats: curve CSV, labeled-sample CSV and the JSON reports.
//!
//! Non-finite numbers are written as the strings `"inf"`, `"-inf"` and
//! `"nan"` in JSON, and as `inf`/`-inf` in CSV.

use crate::error::{Error, Result};
use crate::model::ValidationReport;
use crate::oracle::DominanceReport;
use crate::region::DecisionRegion;
use crate::roc::{ConcavityReport, CurveKind, RocCurve, RocPoint};
use serde_json::{json, Value};
use std::io::{Read, Write};

/// 17 significant digits; parses back to the identical double.
pub fn format_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x:.16e}")
    }
}

fn parse_f64(field: &str, what: &str, line: u64) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("line {line}: {what} {field:?} is not a number")))
}

pub fn write_curve_csv<W: Write>(curve: &RocCurve, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["pf", "pd", "gamma"]).map_err(csv_err)?;
    for p in curve.points() {
        let gamma = p.gamma.map(format_f64).unwrap_or_default();
        w.write_record([format_f64(p.pf), format_f64(p.pd), gamma]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn curve_to_csv_string(curve: &RocCurve) -> String {
    let mut buf = Vec::new();
    write_curve_csv(curve, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is ascii")
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("{other:?}")),
    }
}

fn check_header(headers: &csv::StringRecord, want: &[&str]) -> Result<()> {
    let got: Vec<&str> = headers.iter().map(str::trim).collect();
    if got != want {
        return Err(Error::Parse(format!("expected header {}, got {}", want.join(","), got.join(","))));
    }
    Ok(())
}

/// Reads a curve written by [`write_curve_csv`] and validates it.
pub fn read_curve_csv<R: Read>(input: R, kind: CurveKind) -> Result<RocCurve> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    check_header(r.headers().map_err(csv_err)?, &["pf", "pd", "gamma"])?;
    let mut points = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 3 {
            return Err(Error::Parse(format!("line {line}: expected 3 fields")));
        }
        let pf = parse_f64(&rec[0], "pf", line)?;
        let pd = parse_f64(&rec[1], "pd", line)?;
        let gamma = match &rec[2] {
            "" => None,
            g => Some(parse_f64(g, "gamma", line)?),
        };
        points.push(RocPoint { pf, pd, gamma });
    }
    RocCurve::new(points, kind)
}

/// Labeled scores split by class: `(h0, h1)`.
pub fn read_samples_csv<R: Read>(input: R) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    check_header(r.headers().map_err(csv_err)?, &["score", "label"])?;
    let (mut h0, mut h1) = (Vec::new(), Vec::new());
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != 2 {
            return Err(Error::Parse(format!("line {line}: expected 2 fields")));
        }
        let score = parse_f64(&rec[0], "score", line)?;
        if !score.is_finite() {
            return Err(Error::Parse(format!("line {line}: score must be finite")));
        }
        match &rec[1] {
            "0" => h0.push(score),
            "1" => h1.push(score),
            other => return Err(Error::Parse(format!("line {line}: label {other:?} is not 0 or 1"))),
        }
    }
    Ok((h0, h1))
}

/// Number, or a string for non-finite values.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(format_f64(x))
    }
}

pub fn region_json(eta: f64, region: &DecisionRegion) -> Value {
    let intervals: Vec<Value> = region.intervals().iter().map(|&(a, b)| json!([num(a), num(b)])).collect();
    json!({ "eta": num(eta), "intervals": intervals })
}

pub fn concavity_json(report: &ConcavityReport, tol: f64) -> Value {
    json!({
        "concave": report.concave,
        "first_violation": report.first_violation.map(num),
        "max_violation": num(report.max_violation),
        "tol": num(tol),
    })
}

pub fn dominance_json(report: &DominanceReport) -> Value {
    json!({
        "max_gap": num(report.max_gap),
        "min_gap": num(report.min_gap),
        "violations": report.violations.iter().copied().map(num).collect::<Vec<_>>(),
        "auc_a": num(report.auc_a),
        "auc_b": num(report.auc_b),
    })
}

pub fn validation_json(report: &ValidationReport) -> Value {
    json!({
        "integral_f0": num(report.integral_f0),
        "integral_f1": num(report.integral_f1),
        "integrals_ok": report.integrals_ok,
        "f0_positive": report.f0_positive,
        "continuous": report.continuous,
        "flat_intervals": report.flat_intervals.iter().map(|&(a, b)| json!([num(a), num(b)])).collect::<Vec<_>>(),
        "passed": report.passed(),
        "warnings": report.warnings(),
    })
}

/// Reads an interval endpoint written by [`num`].
pub fn value_f64(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_round_trip() {
        let c = RocCurve::new(
            vec![
                RocPoint::tagged(0.0, 0.0, f64::INFINITY),
                RocPoint::tagged(0.1 + 0.2, 1.0 / 3.0, 0.7),
                RocPoint::tagged(1.0, 1.0, -1e-300),
            ],
            CurveKind::Svt,
        )
        .unwrap();
        let text = curve_to_csv_string(&c);
        assert!(text.starts_with("pf,pd,gamma\n"));
        assert!(text.contains(",inf\n"));
        let back = read_curve_csv(text.as_bytes(), CurveKind::Svt).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn untagged_curve_has_empty_gamma() {
        let c = RocCurve::new(vec![RocPoint::new(0.0, 0.0), RocPoint::new(1.0, 1.0)], CurveKind::Hull).unwrap();
        let text = curve_to_csv_string(&c);
        assert!(text.lines().nth(1).unwrap().ends_with(','));
        assert_eq!(read_curve_csv(text.as_bytes(), CurveKind::Hull).unwrap(), c);
    }

    #[test]
    fn rejects_bad_curves() {
        assert!(matches!(read_curve_csv("a,b,c\n".as_bytes(), CurveKind::Svt), Err(Error::Parse(_))));
        assert!(matches!(read_curve_csv("pf,pd,gamma\n0,x,\n".as_bytes(), CurveKind::Svt), Err(Error::Parse(_))));
        assert!(matches!(
            read_curve_csv("pf,pd,gamma\n0,0,\n0.5,0.2,\n0.4,0.9,\n1,1,\n".as_bytes(), CurveKind::Svt),
            Err(Error::InvalidCurve(_))
        ));
    }

    #[test]
    fn samples() {
        let (h0, h1) = read_samples_csv("score,label\n0.5,0\n1.5,1\n-2,0\n".as_bytes()).unwrap();
        assert_eq!(h0, vec![0.5, -2.0]);
        assert_eq!(h1, vec![1.5]);
        assert!(read_samples_csv("score,label\n0.5,2\n".as_bytes()).is_err());
        assert!(read_samples_csv("score,label\nnan,0\n".as_bytes()).is_err());
    }

    #[test]
    fn region_json_uses_inf_strings() {
        let r = DecisionRegion::new(vec![(f64::NEG_INFINITY, -1.0), (0.5, f64::INFINITY)]).unwrap();
        let v = region_json(1.0, &r);
        assert_eq!(v["intervals"][1][1], "inf");
        assert_eq!(v["intervals"][0][0], "-inf");
        assert_eq!(value_f64(&v["intervals"][1][0]), Some(0.5));
        assert_eq!(value_f64(&v["intervals"][1][1]), Some(f64::INFINITY));
    }
}

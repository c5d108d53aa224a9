//! Score-variable-threshold (SVT) ROC curves.
//!
//! An SVT with threshold `γ` decides H1 when `s ≥ γ`, so its operating
//! point is `(1 − F0(γ), 1 − F1(γ))`. Sweeping `γ` downward traces the
//! curve from `(0, 0)` to `(1, 1)`. The local slope of that curve at `γ`
//! is the likelihood ratio `f1(γ) / f0(γ)`, which [`slope_profile`]
//! estimates from secants without looking at the densities.

use crate::error::{Error, Result};
use crate::model::{Hypothesis, ScoreModel};
use crate::numeric::{bisect, interp, trapezoid};
use rayon::prelude::*;
use serde::Serialize;

/// Concavity tolerance for curves generated from analytic models.
pub const ANALYTIC_CONCAVITY_TOL: f64 = 1e-9;

/// Secant pairs narrower than this in `pf` are treated as vertical.
pub const MIN_PF_STEP: f64 = 1e-15;

/// Endpoint slack accepted when validating curves read from outside.
const ENDPOINT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Svt,
    LrtConstructed,
    LrtOracle,
    Hull,
    Empirical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub pf: f64,
    pub pd: f64,
    /// SVT threshold that produced this point, when known.
    pub gamma: Option<f64>,
}

impl RocPoint {
    pub fn new(pf: f64, pd: f64) -> Self {
        RocPoint { pf, pd, gamma: None }
    }

    pub fn tagged(pf: f64, pd: f64, gamma: f64) -> Self {
        RocPoint { pf, pd, gamma: Some(gamma) }
    }
}

/// Ordered `(pf, pd)` polyline from `(0, 0)` to `(1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    points: Vec<RocPoint>,
    kind: CurveKind,
}

impl RocCurve {
    /// Validates and wraps a point sequence.
    ///
    /// `pf` must be nondecreasing; a repeated `pf` is only allowed as a
    /// vertical step with strictly increasing `pd`.
    pub fn new(points: Vec<RocPoint>, kind: CurveKind) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCurve(msg));
        if points.len() < 2 {
            return bad("a curve needs at least two points".into());
        }
        for p in &points {
            if !(0.0..=1.0).contains(&p.pf) || !(0.0..=1.0).contains(&p.pd) {
                return bad(format!("point ({}, {}) outside the unit square", p.pf, p.pd));
            }
        }
        let tagged = points[0].gamma.is_some();
        if points.iter().any(|p| p.gamma.is_some() != tagged) {
            return bad("threshold tags must be present on all points or none".into());
        }
        for (i, w) in points.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            if b.pf < a.pf {
                return bad(format!("pf not increasing at index {}", i + 1));
            }
            if b.pd < a.pd {
                return bad(format!("pd decreasing at index {}", i + 1));
            }
            if b.pf == a.pf && b.pd == a.pd {
                return bad(format!("duplicate point at index {}", i + 1));
            }
            if let (Some(ga), Some(gb)) = (a.gamma, b.gamma) {
                if !(gb < ga) {
                    return bad(format!("thresholds not strictly decreasing at index {}", i + 1));
                }
            }
        }
        let (first, last) = (points[0], points[points.len() - 1]);
        if first.pf > ENDPOINT_TOL || first.pd > ENDPOINT_TOL {
            return bad(format!("curve starts at ({}, {}), expected (0, 0)", first.pf, first.pd));
        }
        if last.pf < 1.0 - ENDPOINT_TOL || last.pd < 1.0 - ENDPOINT_TOL {
            return bad(format!("curve ends at ({}, {}), expected (1, 1)", last.pf, last.pd));
        }
        Ok(RocCurve { points, kind })
    }

    /// Sorts, merges and end-caps a raw operating-point cloud into a curve.
    ///
    /// Points closer than `1e-12` in both coordinates merge, and a run of
    /// points at one `pf` keeps only its highest `pd` (at `pf = 0` the
    /// origin is kept as well). Tags are dropped.
    pub fn from_operating_points(mut raw: Vec<(f64, f64)>, kind: CurveKind) -> Result<Self> {
        raw.retain(|p| p.0.is_finite() && p.1.is_finite());
        for p in raw.iter_mut() {
            p.0 = p.0.clamp(0.0, 1.0);
            p.1 = p.1.clamp(0.0, 1.0);
        }
        raw.push((0.0, 0.0));
        raw.push((1.0, 1.0));
        raw.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for mut p in raw {
            let n = out.len();
            if let Some(last) = out.last_mut() {
                // Running max keeps pd monotone against summation noise.
                p.1 = p.1.max(last.1);
                if (p.0 - last.0).abs() < 1e-12 && (p.1 - last.1).abs() < 1e-12 {
                    continue;
                }
                if n >= 2 && p.0 == last.0 {
                    *out.last_mut().unwrap() = p;
                    continue;
                }
            }
            out.push(p);
        }
        let points = out.into_iter().map(|(pf, pd)| RocPoint::new(pf, pd)).collect();
        RocCurve::new(points, kind)
    }

    pub fn points(&self) -> &[RocPoint] {
        &self.points
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_tagged(&self) -> bool {
        self.points[0].gamma.is_some()
    }

    pub fn pfs(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.pf).collect()
    }

    pub fn pds(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.pd).collect()
    }

    /// Linearly interpolated `pd` at `pf`.
    pub fn pd_at(&self, pf: f64) -> f64 {
        interp(&self.pfs(), &self.pds(), pf)
    }

    /// Trapezoid area under the curve.
    pub fn auc(&self) -> f64 {
        trapezoid(&self.pfs(), &self.pds())
    }

    pub fn with_kind(mut self, kind: CurveKind) -> Self {
        self.kind = kind;
        self
    }
}

/// Threshold grid used by [`svt_roc`]: `n` values from the top of the
/// support to the bottom, spaced at equal steps of the pooled CDF
/// `(F0 + F1) / 2`.
pub fn threshold_grid(model: &ScoreModel, n: usize) -> Vec<f64> {
    let (lo, hi) = model.support();
    let pooled_sf = |s: f64| 0.5 * (model.sf(Hypothesis::H0, s) + model.sf(Hypothesis::H1, s));
    let pooled_cdf = |s: f64| 0.5 * (model.cdf(Hypothesis::H0, s) + model.cdf(Hypothesis::H1, s));
    let last = n - 1;
    (0..n)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return hi;
            }
            if k == last {
                return lo;
            }
            let q = k as f64 / last as f64;
            // Work on whichever tail keeps the target representable.
            if q <= 0.5 {
                bisect(lo, hi, 0.0, |s| pooled_sf(s) > q)
            } else {
                let p = (last - k) as f64 / last as f64;
                bisect(lo, hi, 0.0, |s| pooled_cdf(s) < p)
            }
        })
        .collect()
}

/// SVT ROC curve of `model`, sampled at `n_points` thresholds.
///
/// The end thresholds sit on the support bounds and their points are
/// pinned to `(0, 0)` and `(1, 1)`; the truncated tails carry at most
/// `tail_mass` each.
pub fn svt_roc(model: &ScoreModel, n_points: usize) -> Result<RocCurve> {
    if n_points < 3 {
        return Err(Error::InvalidArgument("n_points must be at least 3".into()));
    }
    if !model.f0_positive_on_interior() {
        return Err(Error::DegenerateNullDensity);
    }
    let gammas = threshold_grid(model, n_points);
    let last = n_points - 1;
    let raw: Vec<RocPoint> = gammas
        .par_iter()
        .enumerate()
        .map(|(k, &g)| match k {
            0 => RocPoint::tagged(0.0, 0.0, g),
            k if k == last => RocPoint::tagged(1.0, 1.0, g),
            _ => RocPoint::tagged(model.sf(Hypothesis::H0, g), model.sf(Hypothesis::H1, g), g),
        })
        .collect();

    let mut points: Vec<RocPoint> = Vec::with_capacity(raw.len());
    for p in raw {
        match points.last_mut() {
            Some(prev) if p.gamma >= prev.gamma => continue,
            Some(prev) if p.pf <= prev.pf => {
                // Floating-point plateau of the null tail: keep the
                // higher-pd end of the vertical step.
                if p.pd > prev.pd {
                    *prev = p;
                }
            }
            _ => points.push(p),
        }
    }
    if let Some(p) = points.last_mut() {
        *p = RocPoint::tagged(1.0, 1.0, p.gamma.unwrap_or(model.support().0));
    }
    RocCurve::new(points, CurveKind::Svt)
}

/// One secant of a curve, spanning curve indices `start..=end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeEntry {
    pub start: usize,
    pub end: usize,
    pub pf_mid: f64,
    pub gamma_mid: Option<f64>,
    pub slope: f64,
}

/// Secant slopes `dPD/dPF` along a curve, in curve order.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeProfile {
    entries: Vec<SlopeEntry>,
}

impl SlopeProfile {
    pub fn entries(&self) -> &[SlopeEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn slopes(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.slope).collect()
    }

    /// Largest finite slope, or `+inf` if a vertical step exists.
    pub fn max_slope(&self) -> f64 {
        self.entries.iter().map(|e| e.slope).fold(0.0, f64::max)
    }

    /// True when the entries tile `curve` end to end.
    pub fn matches(&self, curve: &RocCurve) -> bool {
        let Some(first) = self.entries.first() else {
            return false;
        };
        let last = self.entries[self.entries.len() - 1];
        first.start == 0
            && last.end + 1 == curve.len()
            && self.entries.windows(2).all(|w| w[0].end == w[1].start)
    }
}

fn midpoint(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => Some(0.5 * (a + b)),
        (Some(a), Some(b)) if a.is_finite() => Some(b),
        (Some(a), Some(_)) => Some(a),
        _ => None,
    }
}

/// Secant slopes between adjacent curve points.
///
/// Pairs whose `pf` step is below [`MIN_PF_STEP`] get slope `+inf`
/// (vertical), and consecutive vertical pairs are merged into one entry so
/// that the entries still tile the curve and no probability mass is lost.
pub fn slope_profile(curve: &RocCurve) -> Result<SlopeProfile> {
    let pts = curve.points();
    if pts.len() < 2 {
        return Err(Error::CurveTooShort);
    }
    let mut entries: Vec<SlopeEntry> = Vec::with_capacity(pts.len() - 1);
    for i in 0..pts.len() - 1 {
        let (a, b) = (pts[i], pts[i + 1]);
        let dpf = b.pf - a.pf;
        let dpd = b.pd - a.pd;
        let vertical = dpf < MIN_PF_STEP && dpd > 0.0;
        let slope = if vertical {
            f64::INFINITY
        } else if dpf > 0.0 {
            dpd / dpf
        } else {
            0.0
        };
        if let Some(prev) = entries.last_mut() {
            let repeat = dpf == 0.0 && dpd == 0.0;
            if repeat || (vertical && prev.slope == f64::INFINITY) {
                prev.end = i + 1;
                prev.pf_mid = 0.5 * (pts[prev.start].pf + b.pf);
                prev.gamma_mid = midpoint(pts[prev.start].gamma, b.gamma);
                continue;
            }
        }
        entries.push(SlopeEntry {
            start: i,
            end: i + 1,
            pf_mid: 0.5 * (a.pf + b.pf),
            gamma_mid: midpoint(a.gamma, b.gamma),
            slope,
        });
    }
    Ok(SlopeProfile { entries })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcavityReport {
    pub concave: bool,
    /// `pf` of the first vertex where the slope increases by more than `tol`.
    pub first_violation: Option<f64>,
    /// Largest slope increase between successive secants (0 if none).
    pub max_violation: f64,
}

/// Concavity test: successive secant slopes must not increase by more than
/// `tol`.
pub fn is_concave(curve: &RocCurve, tol: f64) -> Result<ConcavityReport> {
    let profile = slope_profile(curve)?;
    let pts = curve.points();
    let mut first_violation = None;
    let mut max_violation: f64 = 0.0;
    for w in profile.entries().windows(2) {
        let (a, b) = (w[0].slope, w[1].slope);
        let rise = if b == a { 0.0 } else { b - a };
        if rise > max_violation || rise.is_nan() {
            max_violation = if rise.is_nan() { f64::INFINITY } else { rise };
        }
        if (b > a + tol || rise.is_nan()) && first_violation.is_none() {
            first_violation = Some(pts[w[0].end].pf);
        }
    }
    Ok(ConcavityReport { concave: first_violation.is_none(), first_violation, max_violation })
}

/// Default concavity tolerance for an empirical curve, scaled to the
/// binomial noise of the smaller class.
pub fn empirical_tolerance(n_h0: usize, n_h1: usize) -> f64 {
    2.0 / (n_h0.min(n_h1).max(1) as f64).sqrt()
}

/// Empirical SVT ROC from labeled samples.
///
/// One threshold per distinct observed score; tied samples move together.
/// Points are tagged with their thresholds and `(0, 0)` carries `+inf`.
pub fn empirical_svt_roc(scores_h0: &[f64], scores_h1: &[f64]) -> Result<RocCurve> {
    if scores_h0.is_empty() || scores_h1.is_empty() {
        return Err(Error::NoSamples);
    }
    if scores_h0.iter().chain(scores_h1).any(|s| s.is_nan()) {
        return Err(Error::InvalidArgument("scores must not be NaN".into()));
    }
    let mut all: Vec<(f64, bool)> = scores_h0
        .iter()
        .map(|&s| (s, false))
        .chain(scores_h1.iter().map(|&s| (s, true)))
        .collect();
    all.sort_by(|a, b| b.0.total_cmp(&a.0));

    let (n0, n1) = (scores_h0.len() as f64, scores_h1.len() as f64);
    let (mut c0, mut c1) = (0usize, 0usize);
    let mut points = vec![RocPoint::tagged(0.0, 0.0, f64::INFINITY)];
    let mut i = 0;
    while i < all.len() {
        let v = all[i].0;
        while i < all.len() && all[i].0 == v {
            if all[i].1 {
                c1 += 1;
            } else {
                c0 += 1;
            }
            i += 1;
        }
        points.push(RocPoint::tagged(c0 as f64 / n0, c1 as f64 / n1, v));
    }

    // Collapse vertical stacks to their bottom and top points.
    let mut out: Vec<RocPoint> = Vec::with_capacity(points.len());
    for p in points {
        let n = out.len();
        if n >= 2 && out[n - 1].pf == p.pf && out[n - 2].pf == p.pf {
            out[n - 1] = p;
        } else {
            out.push(p);
        }
    }
    RocCurve::new(out, CurveKind::Empirical)
}

/// Coarsens a curve onto a `pf` lattice of width `bin_width`.
///
/// Keeps the first point, then at each lattice crossing the highest point
/// sharing the crossing `pf`, then the last point.
pub fn quantize_pf(curve: &RocCurve, bin_width: f64) -> Result<RocCurve> {
    if !(bin_width > 0.0) {
        return Err(Error::InvalidArgument("bin width must be positive".into()));
    }
    let pts = curve.points();
    let mut out = vec![pts[0]];
    let mut boundary = bin_width;
    let mut i = 1;
    while i < pts.len() - 1 {
        if pts[i].pf >= boundary {
            let mut j = i;
            while j + 1 < pts.len() - 1 && pts[j + 1].pf == pts[i].pf {
                j += 1;
            }
            out.push(pts[j]);
            boundary = (((pts[j].pf / bin_width).floor()) + 1.0) * bin_width;
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out.push(pts[pts.len() - 1]);
    out.dedup_by(|b, a| a.pf == b.pf && a.pd == b.pd);
    RocCurve::new(out, curve.kind())
}

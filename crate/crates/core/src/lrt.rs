//! Optimal (LRT) ROC construction from an SVT ROC curve alone.
//!
//! For a likelihood-ratio threshold `η`, the LRT decides H1 wherever
//! `f1(s)/f0(s) ≥ η`. Because the SVT curve's slope at threshold `γ`
//! equals that ratio, the LRT region at `η` is the union of the score
//! intervals whose SVT segments have slope at least `η`, and each such
//! interval contributes exactly its segment's `ΔPF` and `ΔPD`. Summing the
//! qualifying segments therefore gives the LRT operating point without
//! ever evaluating a density.

use crate::error::{Error, Result};
use crate::region::DecisionRegion;
use crate::roc::{empirical_tolerance, quantize_pf, slope_profile, CurveKind, RocCurve, SlopeProfile};
use rayon::prelude::*;

/// A maximal stretch of the SVT curve whose secant slopes all reach `η`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub pf_start: f64,
    pub pf_end: f64,
    pub pd_start: f64,
    pub pd_end: f64,
    /// Thresholds at the segment ends; `gamma_start > gamma_end`.
    pub gamma_start: Option<f64>,
    pub gamma_end: Option<f64>,
    /// Curve indices of the segment ends.
    pub(crate) first: usize,
    pub(crate) last: usize,
}

impl Segment {
    pub fn delta_pf(&self) -> f64 {
        self.pf_end - self.pf_start
    }

    pub fn delta_pd(&self) -> f64 {
        self.pd_end - self.pd_start
    }
}

/// LRT operating point at one threshold, with the segments it was summed from.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaPoint {
    pub eta: f64,
    pub pf: f64,
    pub pd: f64,
    pub segments: Vec<Segment>,
}

fn check_eta(eta: f64) -> Result<()> {
    if eta.is_nan() || eta < 0.0 {
        return Err(Error::InvalidArgument(format!("eta must be nonnegative, got {eta}")));
    }
    Ok(())
}

/// Maximal runs of consecutive profile entries with slope `≥ eta`.
pub fn segments_at(profile: &SlopeProfile, curve: &RocCurve, eta: f64) -> Result<Vec<Segment>> {
    check_eta(eta)?;
    if !profile.matches(curve) {
        return Err(Error::InconsistentInputs);
    }
    let pts = curve.points();
    let mut out = Vec::new();
    let mut run: Option<(usize, usize)> = None;
    let flush = |run: (usize, usize), out: &mut Vec<Segment>| {
        let (a, b) = (pts[run.0], pts[run.1]);
        out.push(Segment {
            pf_start: a.pf,
            pf_end: b.pf,
            pd_start: a.pd,
            pd_end: b.pd,
            gamma_start: a.gamma,
            gamma_end: b.gamma,
            first: run.0,
            last: run.1,
        });
    };
    for e in profile.entries() {
        if e.slope >= eta {
            run = Some(match run {
                Some((start, _)) => (start, e.end),
                None => (e.start, e.end),
            });
        } else if let Some(r) = run.take() {
            flush(r, &mut out);
        }
    }
    if let Some(r) = run {
        flush(r, &mut out);
    }
    Ok(out)
}

/// Sums segment increments into the LRT operating point at `eta`.
pub fn lrt_point(segments: &[Segment], eta: f64) -> Result<EtaPoint> {
    check_eta(eta)?;
    let mut order: Vec<&Segment> = segments.iter().collect();
    order.sort_by(|a, b| a.pf_start.total_cmp(&b.pf_start));
    if order.windows(2).any(|w| w[1].pf_start < w[0].pf_end) {
        return Err(Error::OverlappingSegments);
    }
    let pf: f64 = segments.iter().map(Segment::delta_pf).sum();
    let pd: f64 = segments.iter().map(Segment::delta_pd).sum();
    Ok(EtaPoint { eta, pf: pf.clamp(0.0, 1.0), pd: pd.clamp(0.0, 1.0), segments: segments.to_vec() })
}

/// Thresholds swept by [`build_optimal_roc`]: every distinct secant slope,
/// the midpoints between consecutive distinct slopes, and zero. Sorted
/// descending.
pub fn sweep_etas(profile: &SlopeProfile) -> Vec<f64> {
    let mut slopes = profile.slopes();
    slopes.sort_by(|a, b| b.total_cmp(a));
    slopes.dedup();
    let mut etas = slopes.clone();
    etas.extend(
        slopes
            .windows(2)
            .filter(|w| w[0].is_finite())
            .map(|w| 0.5 * (w[0] + w[1])),
    );
    etas.push(0.0);
    etas.sort_by(|a, b| b.total_cmp(a));
    etas.dedup();
    etas
}

/// One [`EtaPoint`] per swept threshold, in sweep order.
pub fn sweep(curve: &RocCurve, profile: &SlopeProfile) -> Result<Vec<EtaPoint>> {
    if curve.len() < 3 {
        return Err(Error::CurveTooShort);
    }
    if !profile.matches(curve) {
        return Err(Error::InconsistentInputs);
    }
    sweep_etas(profile)
        .into_par_iter()
        .map(|eta| lrt_point(&segments_at(profile, curve, eta)?, eta))
        .collect()
}

/// Optimal ROC curve reconstructed from an SVT curve and its slope profile.
pub fn build_optimal_roc(curve: &RocCurve, profile: &SlopeProfile) -> Result<RocCurve> {
    let points = sweep(curve, profile)?;
    RocCurve::from_operating_points(
        points.into_iter().map(|p| (p.pf, p.pd)).collect(),
        CurveKind::LrtConstructed,
    )
}

/// Construction for empirical step curves.
///
/// Raw empirical secants are 0 or vertical almost everywhere, so the curve
/// is first coarsened onto a `pf` lattice of width `1/√min(n_h0, n_h1)`.
pub fn build_optimal_roc_empirical(curve: &RocCurve, n_h0: usize, n_h1: usize) -> Result<RocCurve> {
    let bin = 0.5 * empirical_tolerance(n_h0, n_h1);
    let coarse = quantize_pf(curve, bin)?;
    if coarse.len() < 3 {
        // Too few samples to resolve any slope change.
        return Ok(coarse.with_kind(CurveKind::LrtConstructed));
    }
    let profile = slope_profile(&coarse)?;
    build_optimal_roc(&coarse, &profile)
}

/// LRT decision region at `eta`, read off the slope-versus-threshold graph.
///
/// Each qualifying segment maps to the score interval between its end
/// thresholds. The interval touching the curve's first point extends to
/// `+inf` and the one touching its last point to `-inf`.
pub fn recover_regions(curve: &RocCurve, profile: &SlopeProfile, eta: f64) -> Result<DecisionRegion> {
    if !curve.is_tagged() {
        return Err(Error::ThresholdsUnknown);
    }
    let last = curve.len() - 1;
    let intervals = segments_at(profile, curve, eta)?
        .into_iter()
        .map(|seg| {
            let hi = if seg.first == 0 { f64::INFINITY } else { seg.gamma_start.unwrap() };
            let lo = if seg.last == last { f64::NEG_INFINITY } else { seg.gamma_end.unwrap() };
            (lo, hi)
        })
        .collect();
    Ok(DecisionRegion::from_unsorted(intervals))
}

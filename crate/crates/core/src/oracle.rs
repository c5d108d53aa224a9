//! Ground truth computed directly from the densities.
//!
//! The LRT region `{s : Λ(s) ≥ η}` is found by bracketing sign changes of
//! `ln Λ(s) − ln η` on a dense uniform scan and bisecting each bracket.
//! Local extrema of the scanned ratio are refined and inserted as extra
//! scan nodes, so every scan cell is monotone and a pair of crossings can
//! never hide inside one cell.

use crate::error::{Error, Result};
use crate::model::{flat_runs, ScoreModel, SCAN_CELLS};
use crate::numeric::{bisect, trapezoid};
use crate::region::DecisionRegion;
use crate::roc::{CurveKind, RocCurve, RocPoint};
use rayon::prelude::*;
use serde::Serialize;

/// Relative bisection tolerance on region boundaries, in support widths.
pub const BOUNDARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
struct Piece {
    start: usize,
    end: usize,
    rising: bool,
}

/// Cached likelihood-ratio scan of one model.
#[derive(Debug, Clone)]
pub struct LrtOracle<'a> {
    model: &'a ScoreModel,
    nodes: Vec<f64>,
    log_lr: Vec<f64>,
    pieces: Vec<Piece>,
    /// `(ln Λ, lo, hi)` for each interval where the ratio is constant.
    flats: Vec<(f64, f64, f64)>,
    tol: f64,
}

fn monotone_pieces(values: &[f64]) -> Vec<Piece> {
    let mut pieces = Vec::new();
    let mut start = 0;
    let mut dir: Option<bool> = None;
    for i in 1..values.len() {
        let d = values[i] - values[i - 1];
        let step = if values[i] == values[i - 1] || d.is_nan() {
            None
        } else {
            Some(d > 0.0)
        };
        match (dir, step) {
            (_, None) => {}
            (None, Some(up)) => dir = Some(up),
            (Some(cur), Some(up)) if cur != up => {
                pieces.push(Piece { start, end: i - 1, rising: cur });
                start = i - 1;
                dir = Some(up);
            }
            _ => {}
        }
    }
    pieces.push(Piece { start, end: values.len() - 1, rising: dir.unwrap_or(true) });
    pieces
}

/// Golden-section search for the extremum of `f` on `[a, b]`.
fn golden_extremum<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, maximize: bool) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let better = |x: f64, y: f64| if maximize { x > y } else { x < y };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..100 {
        if b - a <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if better(fc, fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

impl<'a> LrtOracle<'a> {
    pub fn new(model: &'a ScoreModel) -> Self {
        let grid = model.scan_grid(SCAN_CELLS);
        let raw: Vec<f64> = grid.iter().map(|&s| model.log_likelihood_ratio(s)).collect();

        let flats = flat_runs(&grid, &raw, model.support_width() / 1000.0)
            .into_iter()
            .map(|(i, j)| (raw[i], grid[i], grid[j]))
            .collect();

        // Refine interior extrema and splice them in as nodes.
        let mut nodes = Vec::with_capacity(grid.len() + 8);
        let mut log_lr = Vec::with_capacity(grid.len() + 8);
        let pieces = monotone_pieces(&raw);
        let turning: Vec<(usize, bool)> = pieces.windows(2).map(|w| (w[0].end, w[0].rising)).collect();
        let mut extra: Vec<(f64, f64)> = turning
            .iter()
            .filter(|&&(i, _)| i > 0 && i + 1 < grid.len())
            .map(|&(i, maximize)| {
                let s = golden_extremum(|x| model.log_likelihood_ratio(x), grid[i - 1], grid[i + 1], maximize);
                (s, model.log_likelihood_ratio(s))
            })
            .collect();
        extra.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut k = 0;
        for (i, &s) in grid.iter().enumerate() {
            while k < extra.len() && extra[k].0 < s {
                if nodes.last().is_none_or(|&p| extra[k].0 > p) {
                    nodes.push(extra[k].0);
                    log_lr.push(extra[k].1);
                }
                k += 1;
            }
            if k < extra.len() && extra[k].0 == s {
                k += 1;
            }
            nodes.push(s);
            log_lr.push(raw[i]);
        }
        let pieces = monotone_pieces(&log_lr);
        LrtOracle {
            model,
            nodes,
            log_lr,
            pieces,
            flats,
            tol: BOUNDARY_TOL * model.support_width(),
        }
    }

    pub fn model(&self) -> &ScoreModel {
        self.model
    }

    /// Region `{s : Λ(s) ≥ eta}`, bisected to the default boundary tolerance.
    pub fn regions(&self, eta: f64) -> Result<DecisionRegion> {
        self.regions_with_tol(eta, self.tol)
    }

    fn regions_with_tol(&self, eta: f64, tol: f64) -> Result<DecisionRegion> {
        if eta.is_nan() || eta < 0.0 {
            return Err(Error::InvalidArgument(format!("eta must be nonnegative, got {eta}")));
        }
        if eta == 0.0 {
            return Ok(DecisionRegion::everything());
        }
        let level = eta.ln();
        if self
            .flats
            .iter()
            .any(|&(v, _, _)| v == level || (v - level).abs() <= 1e-9)
        {
            return Err(Error::PositiveMeasureLevelSet);
        }
        let llr = |s: f64| self.model.log_likelihood_ratio(s);
        let mut raw = Vec::new();
        for p in &self.pieces {
            let vals = &self.log_lr[p.start..=p.end];
            let nodes = &self.nodes[p.start..=p.end];
            let len = vals.len();
            if p.rising {
                let idx = vals.partition_point(|&v| v < level);
                if idx == len {
                    continue;
                }
                let lo = if idx == 0 {
                    nodes[0]
                } else {
                    bisect(nodes[idx - 1], nodes[idx], tol, |s| llr(s) < level)
                };
                raw.push((lo, nodes[len - 1]));
            } else {
                let count = vals.partition_point(|&v| v >= level);
                if count == 0 {
                    continue;
                }
                let hi = if count == len {
                    nodes[len - 1]
                } else {
                    bisect(nodes[count - 1], nodes[count], tol, |s| llr(s) >= level)
                };
                raw.push((nodes[0], hi));
            }
        }
        let (lo, hi) = self.model.support();
        let region = DecisionRegion::from_unsorted(raw);
        let intervals = region
            .intervals()
            .iter()
            .map(|&(a, b)| {
                (
                    if a <= lo { f64::NEG_INFINITY } else { a },
                    if b >= hi { f64::INFINITY } else { b },
                )
            })
            .collect();
        Ok(DecisionRegion::from_unsorted(intervals))
    }

    /// LRT operating point at `eta`.
    pub fn point(&self, eta: f64) -> Result<(f64, f64)> {
        Ok(self.regions(eta)?.probabilities(self.model))
    }

    /// Neyman-Pearson optimal `pd` subject to `pf = target`.
    ///
    /// Bisects on `ln η` for the LRT whose false-alarm rate brackets the
    /// target, then interpolates between the two bracketing operating
    /// points, which are adjacent on the optimal curve.
    pub fn optimal_pd_at(&self, target: f64) -> Result<f64> {
        if target <= 0.0 {
            return Ok(0.0);
        }
        if target >= 1.0 {
            return Ok(1.0);
        }
        let finite = self.log_lr.iter().copied().filter(|v| v.is_finite());
        let (min, max) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |acc, v| (acc.0.min(v), acc.1.max(v)));
        if !(min <= max) {
            return Err(Error::PositiveMeasureLevelSet);
        }
        let at = |t: f64| -> Result<(f64, f64)> {
            Ok(self.regions_with_tol(t.exp(), 0.0)?.probabilities(self.model))
        };
        let (mut lo, mut hi) = (min - 1.0, max + 1.0);
        let mut failure = None;
        let t = bisect(lo, hi, 0.0, |t| match at(t) {
            Ok((pf, _)) => pf > target,
            Err(e) => {
                failure.get_or_insert(e);
                false
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        // Re-bracket around the converged threshold.
        let step = 1e-12 * (1.0 + t.abs());
        lo = lo.max(t - step);
        hi = hi.min(t + step);
        let (pf_l, pd_l) = at(lo)?;
        let (pf_h, pd_h) = at(hi)?;
        if pf_l == pf_h {
            return Ok(pd_l.max(pd_h));
        }
        let w = ((target - pf_h) / (pf_l - pf_h)).clamp(0.0, 1.0);
        Ok(pd_h + w * (pd_l - pd_h))
    }
}

/// `D_LRT(η)` for a model, from a fresh scan.
pub fn lrt_regions_analytic(model: &ScoreModel, eta: f64) -> Result<DecisionRegion> {
    LrtOracle::new(model).regions(eta)
}

/// LRT ROC curve evaluated at the given thresholds.
pub fn lrt_roc_direct(model: &ScoreModel, etas: &[f64]) -> Result<RocCurve> {
    if etas.is_empty() {
        return Err(Error::InvalidArgument("at least one eta is required".into()));
    }
    let oracle = LrtOracle::new(model);
    let points: Vec<(f64, f64)> = etas.par_iter().map(|&eta| oracle.point(eta)).collect::<Result<_>>()?;
    RocCurve::from_operating_points(points, CurveKind::LrtOracle)
}

/// Default oracle thresholds: the likelihood ratio at each given score,
/// plus zero.
pub fn etas_at_scores(model: &ScoreModel, scores: &[f64]) -> Vec<f64> {
    let mut etas: Vec<f64> = scores.iter().map(|&s| model.likelihood_ratio(s)).filter(|e| e.is_finite()).collect();
    etas.push(0.0);
    etas.sort_by(|a, b| b.total_cmp(a));
    etas.dedup();
    etas
}

/// Optimal ROC curve sampled at exactly the given false-alarm rates.
pub fn lrt_roc_at_pf(model: &ScoreModel, pfs: &[f64]) -> Result<RocCurve> {
    let oracle = LrtOracle::new(model);
    let points: Vec<(f64, f64)> = pfs
        .par_iter()
        .map(|&pf| Ok((pf, oracle.optimal_pd_at(pf)?)))
        .collect::<Result<_>>()?;
    RocCurve::from_operating_points(points, CurveKind::LrtOracle)
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Least concave majorant of a curve: the upper convex hull of its points
/// together with `(0, 0)` and `(1, 1)`. Collinear interior points are not
/// vertices.
pub fn randomized_hull(curve: &RocCurve) -> RocCurve {
    let mut pts: Vec<RocPoint> = curve.points().to_vec();
    let first = pts[0];
    let last = pts[pts.len() - 1];
    let needs_caps = (first.pf, first.pd) != (0.0, 0.0) || (last.pf, last.pd) != (1.0, 1.0);
    if needs_caps {
        for p in pts.iter_mut() {
            p.gamma = None;
        }
        if (first.pf, first.pd) != (0.0, 0.0) {
            pts.insert(0, RocPoint::new(0.0, 0.0));
        }
        if (last.pf, last.pd) != (1.0, 1.0) {
            pts.push(RocPoint::new(1.0, 1.0));
        }
    }
    let mut hull: Vec<RocPoint> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 {
            let n = hull.len();
            let (o, a) = (hull[n - 2], hull[n - 1]);
            if cross((o.pf, o.pd), (a.pf, a.pd), (p.pf, p.pd)) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    RocCurve::new(hull, CurveKind::Hull).expect("hull of a valid curve is a valid curve")
}

/// Hull edges that bridge over input points: the stretches replaced by
/// randomizing between the edge's two end tests.
pub fn hull_chords(curve: &RocCurve, hull: &RocCurve) -> Vec<(RocPoint, RocPoint)> {
    let index_of = |p: &RocPoint| curve.points().iter().position(|q| q.pf == p.pf && q.pd == p.pd);
    hull.points()
        .windows(2)
        .filter(|w| match (index_of(&w[0]), index_of(&w[1])) {
            (Some(i), Some(j)) => j > i + 1,
            _ => true,
        })
        .map(|w| (w[0], w[1]))
        .collect()
}

/// Pointwise comparison of curve `a` against curve `b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    /// Largest `pd_a − pd_b` over the union `pf` grid.
    pub max_gap: f64,
    pub min_gap: f64,
    /// `pf` values where `pd_a < pd_b − tol`.
    pub violations: Vec<f64>,
    pub auc_a: f64,
    pub auc_b: f64,
}

impl DominanceReport {
    /// Largest absolute gap in either direction.
    pub fn max_abs_gap(&self) -> f64 {
        self.max_gap.abs().max(self.min_gap.abs())
    }
}

pub fn dominance_check(a: &RocCurve, b: &RocCurve, tol: f64) -> DominanceReport {
    let (ax, ay) = (a.pfs(), a.pds());
    let (bx, by) = (b.pfs(), b.pds());
    let mut grid: Vec<f64> = ax.iter().chain(&bx).copied().collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut max_gap = f64::NEG_INFINITY;
    let mut min_gap = f64::INFINITY;
    let mut violations = Vec::new();
    for &x in &grid {
        let gap = crate::numeric::interp(&ax, &ay, x) - crate::numeric::interp(&bx, &by, x);
        max_gap = max_gap.max(gap);
        min_gap = min_gap.min(gap);
        if gap < -tol {
            violations.push(x);
        }
    }
    DominanceReport {
        max_gap,
        min_gap,
        violations,
        auc_a: trapezoid(&ax, &ay),
        auc_b: trapezoid(&bx, &by),
    }
}

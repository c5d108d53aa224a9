//! Decision regions: the set of score values for which H1 is declared.

use crate::error::{Error, Result};
use crate::model::{Hypothesis, ScoreModel};

/// Finite union of disjoint closed score intervals, sorted ascending.
/// The outermost bounds may be infinite.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DecisionRegion {
    intervals: Vec<(f64, f64)>,
}

impl DecisionRegion {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(a, b) in &intervals {
            if a.is_nan() || b.is_nan() || !(a < b) {
                return Err(Error::InvalidArgument(format!("interval [{a}, {b}] has an empty interior")));
            }
        }
        if intervals.windows(2).any(|w| !(w[0].1 < w[1].0)) {
            return Err(Error::InvalidArgument("intervals must be sorted and disjoint".into()));
        }
        Ok(DecisionRegion { intervals })
    }

    /// Sorts and merges overlapping or touching intervals; degenerate ones
    /// are dropped.
    pub fn from_unsorted(mut raw: Vec<(f64, f64)>) -> Self {
        raw.retain(|&(a, b)| a < b);
        raw.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (a, b) in raw {
            match out.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => out.push((a, b)),
            }
        }
        DecisionRegion { intervals: out }
    }

    pub fn empty() -> Self {
        DecisionRegion::default()
    }

    pub fn everything() -> Self {
        DecisionRegion { intervals: vec![(f64::NEG_INFINITY, f64::INFINITY)] }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, s: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| s >= a && s <= b)
    }

    /// `(P_F, P_D)` of the test that decides H1 on this region, from the
    /// closed-form survival functions.
    pub fn probabilities(&self, model: &ScoreModel) -> (f64, f64) {
        let mass = |hyp: Hypothesis| -> f64 {
            self.intervals
                .iter()
                .map(|&(a, b)| {
                    let upper = if a == f64::NEG_INFINITY { 1.0 } else { model.sf(hyp, a) };
                    let lower = if b == f64::INFINITY { 0.0 } else { model.sf(hyp, b) };
                    (upper - lower).max(0.0)
                })
                .sum::<f64>()
                .min(1.0)
        };
        (mass(Hypothesis::H0), mass(Hypothesis::H1))
    }
}

//! Conditional score distributions under the two hypotheses.
//!
//! A [`ScoreModel`] pairs a null density `f0` with a positive density `f1`
//! drawn from a small catalog of analytic families, all of which have
//! closed-form CDFs. Every model carries a finite working support that
//! excludes at most `tail_mass` of either distribution per tail.

use crate::error::{Error, Result};
use crate::numeric::{self, std_normal_cdf, std_normal_pdf, std_normal_quantile, std_normal_sf};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DEFAULT_TAIL_MASS: f64 = 1e-9;

/// Number of scan cells used by the validation sweeps.
pub const SCAN_CELLS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hypothesis {
    H0,
    H1,
}

// Serialized form of a distribution: {"family": "...", "params": {...}}.

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistributionSpec {
    Gaussian(GaussianParams),
    GaussianMixture(MixtureParams),
    Uniform(UniformParams),
    PiecewiseLinear(PiecewiseParams),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianParams {
    pub mu: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponent {
    pub weight: f64,
    pub mu: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureParams {
    pub components: Vec<MixtureComponent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformParams {
    pub a: f64,
    pub b: f64,
}

/// Density knots `[x, f(x)]`, linearly interpolated and zero outside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiecewiseParams {
    pub knots: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub f0: DistributionSpec,
    pub f1: DistributionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_mass: Option<f64>,
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A validated univariate distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Gaussian { mu: f64, sigma: f64 },
    Mixture(Vec<MixtureComponent>),
    Uniform { a: f64, b: f64 },
    PiecewiseLinear(Vec<(f64, f64)>),
}

fn finite(v: f64, what: &str) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidModel(format!("{what} must be finite")))
    }
}

impl TryFrom<&DistributionSpec> for Distribution {
    type Error = Error;

    fn try_from(spec: &DistributionSpec) -> Result<Self> {
        match spec {
            DistributionSpec::Gaussian(p) => {
                finite(p.mu, "mu")?;
                if !(p.sigma > 0.0 && p.sigma.is_finite()) {
                    return Err(Error::InvalidModel("sigma must be positive".into()));
                }
                Ok(Distribution::Gaussian { mu: p.mu, sigma: p.sigma })
            }
            DistributionSpec::GaussianMixture(p) => {
                if p.components.is_empty() {
                    return Err(Error::InvalidModel("mixture needs at least one component".into()));
                }
                let mut total = 0.0;
                for c in &p.components {
                    finite(c.mu, "mu")?;
                    if !(c.sigma > 0.0 && c.sigma.is_finite()) {
                        return Err(Error::InvalidModel("sigma must be positive".into()));
                    }
                    if !(c.weight > 0.0 && c.weight.is_finite()) {
                        return Err(Error::InvalidModel("mixture weights must be positive".into()));
                    }
                    total += c.weight;
                }
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::InvalidModel(format!(
                        "mixture weights sum to {total}, expected 1"
                    )));
                }
                Ok(Distribution::Mixture(p.components.clone()))
            }
            DistributionSpec::Uniform(p) => {
                finite(p.a, "a")?;
                finite(p.b, "b")?;
                if !(p.b > p.a) {
                    return Err(Error::InvalidModel("uniform requires a < b".into()));
                }
                Ok(Distribution::Uniform { a: p.a, b: p.b })
            }
            DistributionSpec::PiecewiseLinear(p) => {
                if p.knots.len() < 2 {
                    return Err(Error::InvalidModel("piecewise_linear needs at least two knots".into()));
                }
                let knots: Vec<(f64, f64)> = p.knots.iter().map(|k| (k[0], k[1])).collect();
                for &(x, y) in &knots {
                    finite(x, "knot position")?;
                    finite(y, "knot density")?;
                    if y < 0.0 {
                        return Err(Error::InvalidModel("knot densities must be nonnegative".into()));
                    }
                }
                if knots.windows(2).any(|w| !(w[1].0 > w[0].0)) {
                    return Err(Error::InvalidModel("knot positions must be strictly increasing".into()));
                }
                let area: f64 = knots
                    .windows(2)
                    .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
                    .sum();
                if (area - 1.0).abs() > 1e-6 {
                    return Err(Error::InvalidModel(format!(
                        "piecewise_linear density has area {area}, expected 1"
                    )));
                }
                Ok(Distribution::PiecewiseLinear(knots))
            }
        }
    }
}

fn gauss_ln_pdf(mu: f64, sigma: f64, s: f64) -> f64 {
    let z = (s - mu) / sigma;
    -0.5 * z * z - sigma.ln() - 0.5 * (2.0 * PI).ln()
}

impl Distribution {
    pub fn pdf(&self, s: f64) -> f64 {
        match self {
            Distribution::Gaussian { mu, sigma } => std_normal_pdf((s - mu) / sigma) / sigma,
            Distribution::Mixture(cs) => cs
                .iter()
                .map(|c| c.weight * std_normal_pdf((s - c.mu) / c.sigma) / c.sigma)
                .sum(),
            Distribution::Uniform { a, b } => {
                if s >= *a && s <= *b {
                    1.0 / (b - a)
                } else {
                    0.0
                }
            }
            Distribution::PiecewiseLinear(knots) => piecewise_pdf(knots, s),
        }
    }

    /// Log density; `-inf` where the density vanishes. Gaussian families
    /// stay finite far past the point where `pdf` underflows.
    pub fn ln_pdf(&self, s: f64) -> f64 {
        match self {
            Distribution::Gaussian { mu, sigma } => gauss_ln_pdf(*mu, *sigma, s),
            Distribution::Mixture(cs) => {
                let terms: Vec<f64> = cs
                    .iter()
                    .map(|c| c.weight.ln() + gauss_ln_pdf(c.mu, c.sigma, s))
                    .collect();
                let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
            }
            _ => self.pdf(s).ln(),
        }
    }

    pub fn cdf(&self, s: f64) -> f64 {
        match self {
            Distribution::Gaussian { mu, sigma } => std_normal_cdf((s - mu) / sigma),
            Distribution::Mixture(cs) => cs
                .iter()
                .map(|c| c.weight * std_normal_cdf((s - c.mu) / c.sigma))
                .sum::<f64>()
                .min(1.0),
            Distribution::Uniform { a, b } => ((s - a) / (b - a)).clamp(0.0, 1.0),
            Distribution::PiecewiseLinear(knots) => piecewise_cdf(knots, s),
        }
    }

    /// Survival function `1 - F(s)`, computed directly where that keeps
    /// precision in the upper tail.
    pub fn sf(&self, s: f64) -> f64 {
        match self {
            Distribution::Gaussian { mu, sigma } => std_normal_sf((s - mu) / sigma),
            Distribution::Mixture(cs) => cs
                .iter()
                .map(|c| c.weight * std_normal_sf((s - c.mu) / c.sigma))
                .sum::<f64>()
                .min(1.0),
            Distribution::Uniform { a, b } => ((b - s) / (b - a)).clamp(0.0, 1.0),
            Distribution::PiecewiseLinear(knots) => (1.0 - piecewise_cdf(knots, s)).max(0.0),
        }
    }

    /// Interval outside which at most `tail` mass lies on each side.
    pub fn tail_bounds(&self, tail: f64) -> (f64, f64) {
        let z = -std_normal_quantile(tail);
        match self {
            Distribution::Gaussian { mu, sigma } => (mu - z * sigma, mu + z * sigma),
            Distribution::Mixture(cs) => cs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |acc, c| {
                (acc.0.min(c.mu - z * c.sigma), acc.1.max(c.mu + z * c.sigma))
            }),
            Distribution::Uniform { a, b } => (*a, *b),
            Distribution::PiecewiseLinear(knots) => (knots[0].0, knots[knots.len() - 1].0),
        }
    }

    /// Points where the density may fail to be smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Distribution::Gaussian { .. } | Distribution::Mixture(_) => Vec::new(),
            Distribution::Uniform { a, b } => vec![*a, *b],
            Distribution::PiecewiseLinear(knots) => knots.iter().map(|k| k.0).collect(),
        }
    }

    /// Points where the density jumps.
    pub fn discontinuities(&self) -> Vec<f64> {
        match self {
            Distribution::Gaussian { .. } | Distribution::Mixture(_) => Vec::new(),
            Distribution::Uniform { a, b } => vec![*a, *b],
            Distribution::PiecewiseLinear(knots) => {
                let mut out = Vec::new();
                let (first, last) = (knots[0], knots[knots.len() - 1]);
                if first.1 > 0.0 {
                    out.push(first.0);
                }
                if last.1 > 0.0 {
                    out.push(last.0);
                }
                out
            }
        }
    }
}

fn piecewise_pdf(knots: &[(f64, f64)], s: f64) -> f64 {
    let first = knots[0];
    let last = knots[knots.len() - 1];
    if s < first.0 || s > last.0 {
        return 0.0;
    }
    let hi = knots.partition_point(|k| k.0 <= s).min(knots.len() - 1).max(1);
    let (x0, y0) = knots[hi - 1];
    let (x1, y1) = knots[hi];
    y0 + (y1 - y0) * (s - x0) / (x1 - x0)
}

fn piecewise_cdf(knots: &[(f64, f64)], s: f64) -> f64 {
    let mut acc = 0.0;
    for w in knots.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if s <= x0 {
            break;
        }
        if s >= x1 {
            acc += 0.5 * (x1 - x0) * (y0 + y1);
        } else {
            let ys = y0 + (y1 - y0) * (s - x0) / (x1 - x0);
            acc += 0.5 * (s - x0) * (y0 + ys);
            break;
        }
    }
    acc.clamp(0.0, 1.0)
}

/// The hypothesis-testing problem: `S ~ f0` under H0 and `S ~ f1` under H1.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreModel {
    f0: Distribution,
    f1: Distribution,
    support: (f64, f64),
    tail_mass: f64,
}

impl ScoreModel {
    pub fn new(f0: Distribution, f1: Distribution, tail_mass: f64) -> Result<Self> {
        if !(tail_mass > 0.0 && tail_mass < 0.5) {
            return Err(Error::InvalidModel("tail_mass must lie in (0, 0.5)".into()));
        }
        let (lo0, hi0) = f0.tail_bounds(tail_mass);
        let (lo1, hi1) = f1.tail_bounds(tail_mass);
        let support = (lo0.min(lo1), hi0.max(hi1));
        Ok(ScoreModel { f0, f1, support, tail_mass })
    }

    pub fn from_spec(spec: &ModelSpec) -> Result<Self> {
        let f0 = Distribution::try_from(&spec.f0)?;
        let f1 = Distribution::try_from(&spec.f1)?;
        ScoreModel::new(f0, f1, spec.tail_mass.unwrap_or(DEFAULT_TAIL_MASS))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        ScoreModel::from_spec(&ModelSpec::from_json(text)?)
    }

    pub fn gaussian(mu: f64, sigma: f64) -> Distribution {
        Distribution::Gaussian { mu, sigma }
    }

    pub fn distribution(&self, hyp: Hypothesis) -> &Distribution {
        match hyp {
            Hypothesis::H0 => &self.f0,
            Hypothesis::H1 => &self.f1,
        }
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn support_width(&self) -> f64 {
        self.support.1 - self.support.0
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn density(&self, hyp: Hypothesis, s: f64) -> f64 {
        self.distribution(hyp).pdf(s)
    }

    pub fn cdf(&self, hyp: Hypothesis, s: f64) -> f64 {
        self.distribution(hyp).cdf(s)
    }

    pub fn sf(&self, hyp: Hypothesis, s: f64) -> f64 {
        self.distribution(hyp).sf(s)
    }

    /// `ln f1(s) - ln f0(s)`, with `+inf` where only `f0` vanishes and `0`
    /// where both do.
    pub fn log_likelihood_ratio(&self, s: f64) -> f64 {
        let l0 = self.f0.ln_pdf(s);
        let l1 = self.f1.ln_pdf(s);
        match (l0 == f64::NEG_INFINITY, l1 == f64::NEG_INFINITY) {
            (true, true) => 0.0,
            (true, false) => f64::INFINITY,
            (false, _) => l1 - l0,
        }
    }

    /// `f1(s) / f0(s)`. Returns `+inf` when `f0(s) = 0 < f1(s)` and `1` when
    /// both densities vanish.
    pub fn likelihood_ratio(&self, s: f64) -> f64 {
        self.log_likelihood_ratio(s).exp()
    }

    /// Uniform scan grid of `cells + 1` points over the support.
    pub(crate) fn scan_grid(&self, cells: usize) -> Vec<f64> {
        let (lo, hi) = self.support;
        let h = (hi - lo) / cells as f64;
        (0..=cells)
            .map(|i| if i == cells { hi } else { lo + h * i as f64 })
            .collect()
    }

    /// `f0 > 0` at every interior point of the validation scan.
    pub fn f0_positive_on_interior(&self) -> bool {
        let grid = self.scan_grid(SCAN_CELLS);
        grid[1..grid.len() - 1].iter().all(|&s| self.f0.ln_pdf(s) > f64::NEG_INFINITY)
    }

    pub fn validate(&self) -> ValidationReport {
        let (lo, hi) = self.support;
        let width = hi - lo;

        let integral = |d: &Distribution| {
            // Integrate well past the support, split at every kink.
            let a = lo - 0.5 * width;
            let b = hi + 0.5 * width;
            let mut cuts = vec![a, b];
            cuts.extend(self.f0.breakpoints().into_iter().filter(|&x| x > a && x < b));
            cuts.extend(self.f1.breakpoints().into_iter().filter(|&x| x > a && x < b));
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            cuts.windows(2)
                .map(|w| numeric::integrate(|s| d.pdf(s), w[0], w[1], 1e-12))
                .sum::<f64>()
        };
        let integral_f0 = integral(&self.f0);
        let integral_f1 = integral(&self.f1);

        let grid = self.scan_grid(SCAN_CELLS);
        let f0_positive = self.f0_positive_on_interior();

        let continuous = self
            .f0
            .discontinuities()
            .into_iter()
            .chain(self.f1.discontinuities())
            .all(|x| x <= lo || x >= hi);

        let log_lr: Vec<f64> = grid.iter().map(|&s| self.log_likelihood_ratio(s)).collect();
        let flat_intervals = flat_runs(&grid, &log_lr, width / 1000.0)
            .into_iter()
            .map(|(i, j)| (grid[i], grid[j]))
            .collect();

        ValidationReport {
            integral_f0,
            integral_f1,
            integrals_ok: (integral_f0 - 1.0).abs() <= 1e-6 && (integral_f1 - 1.0).abs() <= 1e-6,
            f0_positive,
            continuous,
            flat_intervals,
        }
    }
}

/// Maximal index runs `[i, j]` over which the log ratio stays within 1e-9
/// of its value at `i` and that span more than `min_width`.
pub(crate) fn flat_runs(grid: &[f64], log_lr: &[f64], min_width: f64) -> Vec<(usize, usize)> {
    let same = |a: f64, b: f64| a == b || (a - b).abs() <= 1e-9;
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=grid.len() {
        if i < grid.len() && same(log_lr[i], log_lr[start]) {
            continue;
        }
        let end = i - 1;
        if grid[end] - grid[start] > min_width {
            runs.push((start, end));
        }
        start = i;
    }
    runs
}

/// Outcome of the regularity checks. Never aborts; callers decide which
/// flags are fatal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub integral_f0: f64,
    pub integral_f1: f64,
    pub integrals_ok: bool,
    /// `f0 > 0` at every interior scan point of the support.
    pub f0_positive: bool,
    /// No density jumps strictly inside the support.
    pub continuous: bool,
    /// Score intervals on which the likelihood ratio is constant.
    pub flat_intervals: Vec<(f64, f64)>,
}

impl ValidationReport {
    pub fn level_sets_ok(&self) -> bool {
        self.flat_intervals.is_empty()
    }

    /// True when every check that downstream code depends on passed. Flat
    /// level sets only produce warnings.
    pub fn passed(&self) -> bool {
        self.integrals_ok && self.f0_positive && self.continuous
    }

    pub fn warnings(&self) -> Vec<String> {
        self.flat_intervals
            .iter()
            .map(|(a, b)| format!("likelihood ratio is constant on [{a}, {b}]"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixture_pm2() -> Distribution {
        Distribution::Mixture(vec![
            MixtureComponent { weight: 0.5, mu: -2.0, sigma: 1.0 },
            MixtureComponent { weight: 0.5, mu: 2.0, sigma: 1.0 },
        ])
    }

    fn std_vs(f1: Distribution) -> ScoreModel {
        ScoreModel::new(ScoreModel::gaussian(0.0, 1.0), f1, DEFAULT_TAIL_MASS).unwrap()
    }

    #[test]
    fn density_examples() {
        let m = std_vs(mixture_pm2());
        assert!((m.density(Hypothesis::H0, 0.0) - 0.398_942_28).abs() < 1e-8);
        assert!(m.density(Hypothesis::H0, 40.0) < 1e-300);
        // 0.5·φ(2) + 0.5·φ(−2) = φ(2) = exp(−2)/√(2π).
        let phi2 = (-2.0f64).exp() / (2.0 * PI).sqrt();
        assert!((m.density(Hypothesis::H1, 0.0) - phi2).abs() < 1e-15);
        assert!((phi2 - 0.053_990_97).abs() < 1e-8);
    }

    #[test]
    fn cdf_examples() {
        let m = std_vs(mixture_pm2());
        assert_eq!(m.cdf(Hypothesis::H0, 0.0), 0.5);
        assert!((m.cdf(Hypothesis::H1, 0.0) - 0.5).abs() < 1e-15);
        let u = Distribution::Uniform { a: 0.0, b: 1.0 };
        assert_eq!(u.cdf(0.25), 0.25);
        assert_eq!(u.cdf(-1.0), 0.0);
        assert_eq!(u.sf(2.0), 0.0);
    }

    #[test]
    fn likelihood_ratio_examples() {
        let shift = std_vs(ScoreModel::gaussian(1.0, 1.0));
        assert!((shift.likelihood_ratio(0.5) - 1.0).abs() < 1e-15);
        let same = std_vs(ScoreModel::gaussian(0.0, 1.0));
        for s in [-3.0, 0.0, 2.5] {
            assert_eq!(same.likelihood_ratio(s), 1.0);
        }
        let mix = std_vs(mixture_pm2());
        assert!((mix.likelihood_ratio(0.0) - (-2.0f64).exp()).abs() < 1e-15);
        assert!((mix.likelihood_ratio(0.0) - 0.135_335_28).abs() < 1e-8);
    }

    #[test]
    fn likelihood_ratio_sentinels() {
        let u = ScoreModel::new(
            Distribution::Uniform { a: 0.0, b: 1.0 },
            Distribution::Uniform { a: 0.0, b: 2.0 },
            DEFAULT_TAIL_MASS,
        )
        .unwrap();
        assert_eq!(u.likelihood_ratio(1.5), f64::INFINITY);
        assert_eq!(u.likelihood_ratio(5.0), 1.0);
        assert_eq!(u.likelihood_ratio(0.5), 0.5);
    }

    #[test]
    fn validate_examples() {
        let shift = std_vs(ScoreModel::gaussian(1.0, 1.0));
        let r = shift.validate();
        assert!(r.passed() && r.level_sets_ok(), "{r:?}");

        let mix = std_vs(mixture_pm2());
        let r = mix.validate();
        assert!(r.passed() && r.level_sets_ok(), "{r:?}");

        let flat = ScoreModel::new(
            Distribution::Uniform { a: 0.0, b: 1.0 },
            Distribution::Uniform { a: 0.0, b: 1.0 },
            DEFAULT_TAIL_MASS,
        )
        .unwrap();
        let r = flat.validate();
        assert!(r.passed());
        assert!(!r.level_sets_ok());
        assert_eq!(r.flat_intervals, vec![(0.0, 1.0)]);
    }

    #[test]
    fn validate_flags_null_gaps_and_jumps() {
        let gap = ScoreModel::new(
            Distribution::Uniform { a: 0.0, b: 1.0 },
            ScoreModel::gaussian(0.5, 0.1),
            DEFAULT_TAIL_MASS,
        )
        .unwrap();
        let r = gap.validate();
        assert!(!r.f0_positive);
        assert!(!r.continuous);
        assert!(!r.passed());
    }

    #[test]
    fn support_covers_both_tails() {
        let m = std_vs(mixture_pm2());
        let (lo, hi) = m.support();
        let z = -std_normal_quantile(DEFAULT_TAIL_MASS);
        assert!((hi - (2.0 + z)).abs() < 1e-12);
        assert!((lo + 2.0 + z).abs() < 1e-12);
        for hyp in [Hypothesis::H0, Hypothesis::H1] {
            assert!(m.cdf(hyp, lo) <= 2.0 * DEFAULT_TAIL_MASS);
            assert!(m.cdf(hyp, hi) >= 1.0 - 2.0 * DEFAULT_TAIL_MASS);
        }
    }

    #[test]
    fn piecewise_linear_family() {
        // Triangle on [0, 2] peaking at 1.
        let spec = DistributionSpec::PiecewiseLinear(PiecewiseParams {
            knots: vec![[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]],
        });
        let d = Distribution::try_from(&spec).unwrap();
        assert_eq!(d.pdf(0.5), 0.5);
        assert_eq!(d.cdf(1.0), 0.5);
        assert!((d.cdf(0.5) - 0.125).abs() < 1e-15);
        assert!((d.sf(1.5) - 0.125).abs() < 1e-15);
        assert_eq!(d.pdf(2.5), 0.0);
        assert!(d.discontinuities().is_empty());

        let bad = DistributionSpec::PiecewiseLinear(PiecewiseParams {
            knots: vec![[0.0, 1.0], [1.0, 1.0], [2.0, 1.0]],
        });
        assert!(Distribution::try_from(&bad).is_err());
    }

    #[test]
    fn json_model_spec() {
        let text = r#"{
            "f0": {"family": "gaussian", "params": {"mu": 0, "sigma": 1}},
            "f1": {"family": "gaussian_mixture", "params": {"components": [
                {"weight": 0.5, "mu": -2, "sigma": 1},
                {"weight": 0.5, "mu": 2, "sigma": 1}]}},
            "tail_mass": 1e-9
        }"#;
        let m = ScoreModel::from_json(text).unwrap();
        assert_eq!(m.distribution(Hypothesis::H1), &mixture_pm2());

        let unknown_top = r#"{"f0": {"family": "gaussian", "params": {"mu": 0, "sigma": 1}},
            "f1": {"family": "gaussian", "params": {"mu": 1, "sigma": 1}}, "extra": 1}"#;
        assert!(ScoreModel::from_json(unknown_top).is_err());
        let unknown_param = r#"{"f0": {"family": "gaussian", "params": {"mu": 0, "sigma": 1, "nu": 2}},
            "f1": {"family": "gaussian", "params": {"mu": 1, "sigma": 1}}}"#;
        assert!(ScoreModel::from_json(unknown_param).is_err());
        let unknown_family_key = r#"{"f0": {"family": "gaussian", "params": {"mu": 0, "sigma": 1}, "x": 0},
            "f1": {"family": "gaussian", "params": {"mu": 1, "sigma": 1}}}"#;
        assert!(ScoreModel::from_json(unknown_family_key).is_err());
        let bad_family = r#"{"f0": {"family": "cauchy", "params": {}},
            "f1": {"family": "gaussian", "params": {"mu": 1, "sigma": 1}}}"#;
        assert!(ScoreModel::from_json(bad_family).is_err());
        let bad_sigma = r#"{"f0": {"family": "gaussian", "params": {"mu": 0, "sigma": 0}},
            "f1": {"family": "gaussian", "params": {"mu": 1, "sigma": 1}}}"#;
        assert!(matches!(ScoreModel::from_json(bad_sigma), Err(Error::InvalidModel(_))));
    }
}

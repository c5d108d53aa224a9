use lrtroc::io::{curve_to_csv_string, read_curve_csv};
use lrtroc::{dominance_check, svt_roc, CurveKind, Distribution, Hypothesis, MixtureComponent, RocCurve, RocPoint, ScoreModel};
use proptest::prelude::*;

fn gaussian() -> impl Strategy<Value = Distribution> {
    (-3.0..3.0f64, 0.3..3.0f64).prop_map(|(mu, sigma)| ScoreModel::gaussian(mu, sigma))
}

fn mixture() -> impl Strategy<Value = Distribution> {
    prop::collection::vec((0.1..1.0f64, -4.0..4.0f64, 0.3..2.0f64), 1..4).prop_map(|parts| {
        let total: f64 = parts.iter().map(|p| p.0).sum();
        Distribution::Mixture(
            parts
                .into_iter()
                .map(|(w, mu, sigma)| MixtureComponent { weight: w / total, mu, sigma })
                .collect(),
        )
    })
}

fn smooth() -> impl Strategy<Value = Distribution> {
    prop_oneof![gaussian(), mixture()]
}

fn model() -> impl Strategy<Value = ScoreModel> {
    (smooth(), smooth()).prop_map(|(f0, f1)| ScoreModel::new(f0, f1, 1e-9).unwrap())
}

fn affine(d: &Distribution, a: f64, b: f64) -> Distribution {
    match d {
        Distribution::Gaussian { mu, sigma } => Distribution::Gaussian { mu: a * mu + b, sigma: a * sigma },
        Distribution::Mixture(parts) => Distribution::Mixture(
            parts
                .iter()
                .map(|c| MixtureComponent { weight: c.weight, mu: a * c.mu + b, sigma: a * c.sigma })
                .collect(),
        ),
        other => other.clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cdf_is_monotone_and_differentiates_to_density(m in model(), us in prop::collection::vec(0.01..0.99f64, 100)) {
        let (lo, hi) = m.support();
        let w = hi - lo;
        for hyp in [Hypothesis::H0, Hypothesis::H1] {
            let mut prev = 0.0;
            for i in 0..=10_000 {
                let s = lo + w * i as f64 / 10_000.0;
                let c = m.cdf(hyp, s);
                prop_assert!(c >= prev);
                prev = c;
            }
            prop_assert!(m.cdf(hyp, lo) <= 2e-9);
            prop_assert!(m.cdf(hyp, hi) >= 1.0 - 2e-9);
            let h = 1e-5 * w;
            for &u in &us {
                let s = lo + u * w;
                let numeric = (m.cdf(hyp, s + h) - m.cdf(hyp, s - h)) / (2.0 * h);
                prop_assert!((numeric - m.density(hyp, s)).abs() <= 1e-5, "s={s}");
            }
        }
    }

    #[test]
    fn ratio_times_null_density_is_alternative_density(m in model(), u in 0.0..1.0f64) {
        let (lo, hi) = m.support();
        let s = lo + u * (hi - lo);
        let f0 = m.density(Hypothesis::H0, s);
        let f1 = m.density(Hypothesis::H1, s);
        prop_assume!(f0 > 1e-300 && f1 > 1e-300);
        let got = m.likelihood_ratio(s) * f0;
        prop_assert!((got - f1).abs() <= 1e-12 * f1, "{got} vs {f1}");
    }

    #[test]
    fn svt_curve_is_invariant_under_affine_rescaling(m in model(), a in 0.2..5.0f64, b in -10.0..10.0f64) {
        let f0 = affine(m.distribution(Hypothesis::H0), a, b);
        let f1 = affine(m.distribution(Hypothesis::H1), a, b);
        let moved = ScoreModel::new(f0, f1, 1e-9).unwrap();
        let c = svt_roc(&m, 201).unwrap();
        let d = svt_roc(&moved, 201).unwrap();
        let gap = dominance_check(&c, &d, 0.0).max_abs_gap();
        prop_assert!(gap <= 1e-12, "gap {gap}");
    }

    #[test]
    fn curve_csv_round_trips_bitwise(raw in prop::collection::vec((0.0..1.0f64, 0.0..1.0f64, -1e6..1e6f64), 0..40)) {
        let mut pf: Vec<f64> = raw.iter().map(|r| r.0).collect();
        let mut pd: Vec<f64> = raw.iter().map(|r| r.1).collect();
        let mut gamma: Vec<f64> = raw.iter().map(|r| r.2).collect();
        pf.sort_by(f64::total_cmp);
        pd.sort_by(f64::total_cmp);
        gamma.sort_by(|a, b| b.total_cmp(a));
        let mut pts = vec![RocPoint::tagged(0.0, 0.0, f64::INFINITY)];
        for i in 0..pf.len() {
            let p = RocPoint::tagged(pf[i], pd[i], gamma[i]);
            let last = pts.last().unwrap();
            if (p.pf, p.pd) != (last.pf, last.pd) && p.gamma < last.gamma {
                pts.push(p);
            }
        }
        pts.push(RocPoint::tagged(1.0, 1.0, f64::NEG_INFINITY));
        let curve = RocCurve::new(pts, CurveKind::Svt).unwrap();
        let text = curve_to_csv_string(&curve);
        let back = read_curve_csv(text.as_bytes(), CurveKind::Svt).unwrap();
        for (p, q) in curve.points().iter().zip(back.points()) {
            prop_assert_eq!(p.pf.to_bits(), q.pf.to_bits());
            prop_assert_eq!(p.pd.to_bits(), q.pd.to_bits());
            prop_assert_eq!(p.gamma.map(f64::to_bits), q.gamma.map(f64::to_bits));
        }
        prop_assert_eq!(back.len(), curve.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn trapezoid_auc_converges_under_refinement(m in model()) {
        for n in [250usize, 500, 1000] {
            let coarse = svt_roc(&m, n).unwrap().auc();
            let fine = svt_roc(&m, 2 * n).unwrap().auc();
            let bound = 4.0 / (n * n) as f64;
            prop_assert!((fine - coarse).abs() <= bound, "n={n}: {} > {bound}", (fine - coarse).abs());
        }
    }
}

#[test]
fn piecewise_cdf_matches_density_away_from_knots() {
    let tri = Distribution::PiecewiseLinear(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
    let m = ScoreModel::new(tri.clone(), tri, 1e-9).unwrap();
    let h = 1e-5 * m.support_width();
    for &s in &[0.2, 0.7, 1.3, 1.9] {
        let numeric = (m.cdf(Hypothesis::H0, s + h) - m.cdf(Hypothesis::H0, s - h)) / (2.0 * h);
        assert!((numeric - m.density(Hypothesis::H0, s)).abs() <= 1e-5);
    }
}

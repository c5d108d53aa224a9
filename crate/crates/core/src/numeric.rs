//! Small numerical kernels shared by the model, curve and oracle code.

use libm::erfc;
use statrs::function::erf::erfc_inv;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal density.
pub fn std_normal_pdf(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

/// Standard normal CDF, evaluated through `erfc` so the lower tail keeps
/// full relative precision.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal survival function `1 - Φ(z)`.
pub fn std_normal_sf(z: f64) -> f64 {
    0.5 * erfc(z * FRAC_1_SQRT_2)
}

/// Standard normal quantile for `p` in `(0, 1)`.
pub fn std_normal_quantile(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    let z = -SQRT_2 * erfc_inv(2.0 * p);
    if !z.is_finite() {
        return z;
    }
    // One Halley step against the accurate CDF.
    let e = if p < 0.5 { std_normal_cdf(z) - p } else { (1.0 - p) - std_normal_sf(z) };
    let u = e / std_normal_pdf(z);
    if !u.is_finite() {
        return z;
    }
    z - u / (1.0 + 0.5 * z * u)
}

/// Locates the boundary of a monotone predicate on `[lo, hi]`.
///
/// `below(lo)` is assumed true and `below(hi)` false; the returned point
/// lies within `tol` of the switch. Halving stops early once the bracket
/// can no longer shrink in floating point.
pub fn bisect<F>(mut lo: f64, mut hi: f64, tol: f64, mut below: F) -> f64
where
    F: FnMut(f64) -> bool,
{
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    if !(b > a) {
        return 0.0;
    }
    // Seed with a uniform partition so narrow features are not skipped by
    // the first coarse Simpson estimate.
    const PIECES: usize = 64;
    let h = (b - a) / PIECES as f64;
    let mut total = 0.0;
    for k in 0..PIECES {
        let x0 = a + h * k as f64;
        let x1 = if k + 1 == PIECES { b } else { x0 + h };
        let f0 = f(x0);
        let f1 = f(x1);
        let m = 0.5 * (x0 + x1);
        let fm = f(m);
        let whole = simpson(x0, x1, f0, fm, f1);
        total += refine(&f, x0, x1, f0, fm, f1, whole, tol / PIECES as f64, 40);
    }
    total
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Trapezoid rule over a polyline.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| (x[1] - x[0]) * 0.5 * (y[0] + y[1]))
        .sum()
}

/// Piecewise-linear interpolation at `x` over nondecreasing `xs`.
///
/// Values outside the abscissa range clamp to the end ordinates. At a
/// repeated abscissa (vertical step) the upper ordinate is returned.
pub fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n == 0 {
        return f64::NAN;
    }
    if x <= xs[0] {
        // Top of any vertical stack sitting at the first abscissa.
        let last_equal = xs.partition_point(|&v| v <= xs[0]);
        return if x < xs[0] { ys[0] } else { ys[last_equal - 1] };
    }
    if x >= xs[n - 1] {
        return ys[n - 1];
    }
    // First index with xs[i] > x.
    let hi = xs.partition_point(|&v| v <= x);
    let lo = hi - 1;
    if xs[lo] == x {
        return ys[lo];
    }
    let t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    ys[lo] + t * (ys[hi] - ys[lo])
}

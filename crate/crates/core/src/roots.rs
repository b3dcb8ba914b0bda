//! Scalar root location by dense scan plus bisection.

/// Bisect a sign change of `f` on `[lo, hi]` down to `xtol`.
///
/// Assumes `f(lo)` and `f(hi)` have opposite (nonzero) signs; non-finite
/// values are treated by their sign.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        if hi - lo <= xtol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if (fmid > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Find roots of `f` on `[lo, hi]`: scan `n` points, bisect every
/// sign-change bracket, and keep exact zeros hit by the scan.
///
/// Tangential roots without a sign change are not detected. Roots closer
/// than `2*xtol` are merged.
pub fn find_roots_scan<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    n: usize,
    xtol: f64,
) -> Vec<f64> {
    assert!(n >= 2 && hi > lo);
    let dx = (hi - lo) / (n - 1) as f64;
    let mut roots = Vec::new();
    let mut prev_x = lo;
    let mut prev_v = f(lo);
    if prev_v == 0.0 {
        roots.push(lo);
    }
    for i in 1..n {
        let x = lo + i as f64 * dx;
        let v = f(x);
        if v == 0.0 {
            roots.push(x);
        } else if prev_v != 0.0 && !prev_v.is_nan() && !v.is_nan() && (v > 0.0) != (prev_v > 0.0) {
            roots.push(bisect(f, prev_x, x, xtol));
        }
        prev_x = x;
        prev_v = v;
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 2.0 * xtol);
    roots
}

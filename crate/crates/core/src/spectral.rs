//! The spectral density S(x) = (1/π)·f(x)/((x-g(x))² + f(x)²) and its
//! integral over the real line.
//!
//! S concentrates into near-Lorentzian peaks at roots of x - g(x) = 0 with
//! width set by f there, so the improper integral is pre-seeded with a fine
//! subdivision around every such root before adaptive refinement. Points
//! where f vanishes *and* x = g(x) are delta points: S is pointwise
//! undefined there, carries no mass, and is reported for diagnostics.

use std::f64::consts::{FRAC_1_PI, FRAC_PI_2};

use crate::catalog::{DecayClass, Support, TransformPair};
use crate::quadrature::{DomainMapping, QuadResult, QuadratureSpec, adaptive};
use crate::roots::find_roots_scan;

/// Pointwise spectral density value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralValue {
    Regular(f64),
    /// f(x) = 0 and x = g(x): pointwise undefined, measure zero.
    DeltaPoint,
}

impl SpectralValue {
    /// The value used under an integral sign; delta points contribute nothing.
    pub fn value_or_zero(self) -> f64 {
        match self {
            SpectralValue::Regular(v) => v,
            SpectralValue::DeltaPoint => 0.0,
        }
    }
}

/// Evaluate S(x). Encoded infinities in g (logarithmic divergences) take
/// the limit S → 0.
pub fn spectral_density(pair: &TransformPair, x: f64) -> SpectralValue {
    let fx = pair.f(x);
    let gx = pair.g(x);
    if !gx.is_finite() {
        return SpectralValue::Regular(0.0);
    }
    let d = x - gx;
    if fx == 0.0 {
        return if d == 0.0 {
            SpectralValue::DeltaPoint
        } else {
            SpectralValue::Regular(0.0)
        };
    }
    SpectralValue::Regular(FRAC_1_PI * fx / (d * d + fx * fx))
}

/// A root of x - g(x) = 0 with the local width scale of S.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub location: f64,
    pub half_width: f64,
}

const PEAK_XTOL: f64 = 1e-12;
const MIN_HALF_WIDTH: f64 = 1e-8;
const SCAN_POINTS: usize = 16_384;

/// Locate all sign-change roots of x - g(x) in `[-search_radius,
/// search_radius]` by dense scan plus bisection. The half-width at a root r
/// is max(f(r), 1e-8), the Lorentzian width scale of S near r.
pub fn locate_peaks(pair: &TransformPair, search_radius: f64) -> Vec<Peak> {
    assert!(search_radius > 0.0 && search_radius.is_finite());
    let r = |x: f64| x - pair.g(x);
    find_roots_scan(&r, -search_radius, search_radius, SCAN_POINTS, PEAK_XTOL)
        .into_iter()
        .map(|root| Peak {
            location: root,
            half_width: pair.f(root).max(MIN_HALF_WIDTH),
        })
        .collect()
}

/// Integral of S plus diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub integral: f64,
    pub err_estimate: f64,
    pub peaks: Vec<Peak>,
    pub subdivisions_used: usize,
    /// Roots of x - g(x) = 0 at which f vanishes.
    pub delta_roots: Vec<f64>,
    pub converged: bool,
}

/// Search radius for peak location: every root of x - g satisfies
/// |x| ≤ sup|g|, estimated on a probe grid.
fn auto_search_radius(pair: &TransformPair) -> f64 {
    let mut sup = 0.0_f64;
    let mut probe = |x: f64| {
        let g = pair.g(x).abs();
        if g.is_finite() {
            sup = sup.max(g);
        }
    };
    let mut x = 1e-3;
    while x <= 1e6 {
        probe(x);
        probe(-x);
        x *= 1.333_521_432_163_324; // 10^(1/8)
    }
    for i in 0..=256 {
        let x = -10.0 + i as f64 * (20.0 / 256.0);
        probe(x);
    }
    (1.3 * sup + 1.0).clamp(10.0, 1e6)
}

/// Map x-space subdivision points into u-space (x = tan u), clamped away
/// from the endpoints.
fn seed_points_tan(xs: &[f64], u_max: f64) -> Vec<f64> {
    xs.iter().map(|&x| x.atan().clamp(-u_max, u_max)).collect()
}

/// Fine subdivision around each peak: 16 intervals across ±half_width.
fn peak_seed_xs(peaks: &[Peak], into: &mut Vec<f64>) {
    for p in peaks {
        let step = p.half_width / 8.0;
        for k in -8..=8 {
            into.push(p.location + k as f64 * step);
        }
        // A few wing points catch the Lorentzian shoulders.
        for m in [2.0, 4.0, 16.0, 64.0] {
            into.push(p.location - m * p.half_width);
            into.push(p.location + m * p.half_width);
        }
    }
}

/// Integrate S over the real line.
///
/// Compact-support pairs integrate over the support only (S ≡ 0 off
/// support except at delta points, which carry no mass — this is exactly
/// how the integral can fall below 1). Full-line pairs map through
/// x = tan(u); non-decaying pairs substitute x = y² on the half line first,
/// which tames the x^(-1/2) density tail.
pub fn spectral_integral(pair: &TransformPair, spec: &QuadratureSpec) -> SpectralReport {
    let radius = auto_search_radius(pair);
    let peaks = locate_peaks(pair, radius);
    let delta_roots: Vec<f64> = peaks
        .iter()
        .filter(|p| pair.f(p.location) == 0.0)
        .map(|p| p.location)
        .collect();

    let result = match (pair.support, pair.decay_class) {
        (Support::Compact { lo, hi }, _) => integrate_support(pair, &peaks, lo, hi, spec),
        (Support::FullLine, DecayClass::NonDecaying) => {
            integrate_sqrt_substituted(pair, &peaks, spec)
        }
        (Support::FullLine, _) => integrate_tan_mapped(pair, &peaks, spec, Side::Both),
    };

    let integral = result.value.max(0.0);
    SpectralReport {
        integral,
        err_estimate: result.err_estimate,
        peaks,
        subdivisions_used: result.subdivisions,
        delta_roots,
        converged: result.converged,
    }
}

/// ∫₀^∞ S dx alone (tan-mapped); used by symmetry checks. Compact pairs
/// integrate over the positive part of their support.
pub fn spectral_integral_half_line(pair: &TransformPair, spec: &QuadratureSpec) -> QuadResult {
    let radius = auto_search_radius(pair);
    let peaks = locate_peaks(pair, radius);
    match pair.support {
        Support::Compact { lo, hi } => integrate_support(pair, &peaks, lo.max(0.0), hi, spec),
        Support::FullLine => integrate_tan_mapped(pair, &peaks, spec, Side::PositiveOnly),
    }
}

fn integrate_support(
    pair: &TransformPair,
    peaks: &[Peak],
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> QuadResult {
    let mut pts = vec![lo, hi];
    for &s in &pair.singular_points {
        if s > lo && s < hi {
            pts.push(s);
        }
    }
    let mut seeds = Vec::new();
    peak_seed_xs(peaks, &mut seeds);
    pts.extend(seeds.into_iter().filter(|&x| x > lo && x < hi));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let f = |x: f64| spectral_density(pair, x).value_or_zero();
    adaptive(&f, &pts, spec)
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Both,
    PositiveOnly,
}

fn integrate_tan_mapped(
    pair: &TransformPair,
    peaks: &[Peak],
    spec: &QuadratureSpec,
    side: Side,
) -> QuadResult {
    let u_max = FRAC_PI_2 - 1e-12;
    let u_min = match side {
        Side::Both => -u_max,
        Side::PositiveOnly => 0.0,
    };

    let mut xs = vec![0.0];
    peak_seed_xs(peaks, &mut xs);
    for &s in &pair.singular_points {
        xs.push(s);
        // Bracket kinks and divergences of g tightly from both sides.
        for d in [1e-6, 1e-3, 0.1] {
            xs.push(s - d);
            xs.push(s + d);
        }
    }
    for k in -2..=4 {
        let p = 10.0_f64.powi(k);
        xs.push(p);
        xs.push(-p);
    }
    let mut pts = seed_points_tan(&xs, u_max);
    pts.push(u_min);
    pts.push(u_max);
    pts.retain(|&u| (u_min..=u_max).contains(&u));
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let f = |u: f64| {
        let t = u.tan();
        spectral_density(pair, t).value_or_zero() * (1.0 + t * t)
    };
    let mut result = adaptive(&f, &pts, spec);

    // Truncation beyond |x| = tan(u_max) ~ 1e12: the u-space integrand is
    // decaying there, so the remaining sliver bounds the lost mass.
    let tail = 2.0 * (f(u_max).abs() + f(u_min).abs()) * (FRAC_PI_2 - u_max);
    result.err_estimate += tail;
    result.converged = result.converged
        && result.err_estimate <= spec.abs_tol.max(spec.rel_tol * result.value.abs());
    result
}

/// Non-decaying route: ∫_ℝ S dx = 2∫₀^∞ S dx = 2∫₀^∞ S(y²)·2y dy with
/// y = tan(v). The y-space density is bounded even when S itself diverges
/// like x^(-1/2) at the origin.
fn integrate_sqrt_substituted(
    pair: &TransformPair,
    peaks: &[Peak],
    spec: &QuadratureSpec,
) -> QuadResult {
    let v_max = FRAC_PI_2 - 1e-12;
    let mut ys = vec![0.0];
    for p in peaks {
        if p.location >= 0.0 {
            for m in [0.25, 1.0, 4.0] {
                let x = p.location + m * p.half_width;
                ys.push(x.max(0.0).sqrt());
                let x = p.location - m * p.half_width;
                ys.push(x.max(0.0).sqrt());
            }
        }
    }
    for k in -8..=6 {
        ys.push(10.0_f64.powi(k));
    }
    let mut pts: Vec<f64> = ys.iter().map(|&y| y.atan().clamp(0.0, v_max)).collect();
    pts.push(0.0);
    pts.push(v_max);
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let f = |v: f64| {
        let y = v.tan();
        let x = y * y;
        4.0 * y * (1.0 + y * y) * spectral_density(pair, x).value_or_zero()
    };
    let mut result = adaptive(&f, &pts, spec);
    let tail = 2.0 * f(v_max).abs() * (FRAC_PI_2 - v_max);
    result.err_estimate += tail;
    result.converged = result.converged
        && result.err_estimate <= spec.abs_tol.max(spec.rel_tol * result.value.abs());
    result
}

/// Effective integration domain honored by [`spectral_integral`]: compact
/// supports always integrate over the support, everything else maps the
/// full line. Exposed so callers can confirm which route a pair takes.
pub fn effective_mapping(pair: &TransformPair) -> DomainMapping {
    match pair.support {
        Support::Compact { .. } => DomainMapping::SupportOnly,
        Support::FullLine => DomainMapping::TanFullLine,
    }
}

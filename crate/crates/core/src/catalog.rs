//! The catalog of analytic transform pairs.
//!
//! Every member is a nonnegative even function f together with its closed
//! form Hilbert transform g under the kernel convention
//!
//! ```text
//! g(x) = (1/π) PV ∫ f(t) / (x - t) dt,
//! ```
//!
//! which is fixed once here and anchored by the Lorentzian pair
//! f = α/(x²+1) ⇒ g = +αx/(x²+1). All g formulas are written as α times an
//! α-free core so scale linearity holds to rounding.

use std::f64::consts::{FRAC_1_PI, LN_2};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::dawson::dawson_scaled;

/// √(2/π), the prefactor of the Gaussian pair's transform.
pub const SQRT_2_OVER_PI: f64 = 0.7978845608028654;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Sqrt,
    Lorentzian,
    RationalPeak,
    Gaussian,
    Valley,
    Rectangle,
    Triangle,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::Sqrt,
        FamilyId::Lorentzian,
        FamilyId::RationalPeak,
        FamilyId::Gaussian,
        FamilyId::Valley,
        FamilyId::Rectangle,
        FamilyId::Triangle,
    ];

    /// True only for the valley family, whose shape takes the extra
    /// parameter b.
    pub fn requires_b(self) -> bool {
        matches!(self, FamilyId::Valley)
    }

    pub fn parse(name: &str) -> Option<FamilyId> {
        match name.to_ascii_lowercase().as_str() {
            "sqrt" => Some(FamilyId::Sqrt),
            "lorentzian" => Some(FamilyId::Lorentzian),
            "rational-peak" | "rational_peak" | "rationalpeak" => Some(FamilyId::RationalPeak),
            "gaussian" => Some(FamilyId::Gaussian),
            "valley" => Some(FamilyId::Valley),
            "rectangle" => Some(FamilyId::Rectangle),
            "triangle" => Some(FamilyId::Triangle),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Sqrt => "sqrt",
            FamilyId::Lorentzian => "lorentzian",
            FamilyId::RationalPeak => "rational-peak",
            FamilyId::Gaussian => "gaussian",
            FamilyId::Valley => "valley",
            FamilyId::Rectangle => "rectangle",
            FamilyId::Triangle => "triangle",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("alpha must be a positive finite number, got {0}")]
    NonPositiveAlpha(String),
    #[error("b must be a positive finite number, got {0}")]
    NonPositiveB(String),
    #[error("family {0} does not take a b parameter")]
    UnexpectedB(FamilyId),
    #[error("family valley requires a b parameter")]
    MissingB,
}

/// A parameterized catalog member: family shape plus scale α (and b for
/// the valley family).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogFamily {
    pub family_id: FamilyId,
    pub alpha: f64,
    pub b: Option<f64>,
}

impl CatalogFamily {
    pub fn new(family_id: FamilyId, alpha: f64, b: Option<f64>) -> Result<Self, CatalogError> {
        let fam = CatalogFamily {
            family_id,
            alpha,
            b,
        };
        fam.validate()?;
        Ok(fam)
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(CatalogError::NonPositiveAlpha(format!("{}", self.alpha)));
        }
        match (self.family_id.requires_b(), self.b) {
            (true, None) => return Err(CatalogError::MissingB),
            (true, Some(b)) if !(b > 0.0 && b.is_finite()) => {
                return Err(CatalogError::NonPositiveB(format!("{b}")));
            }
            (false, Some(_)) => return Err(CatalogError::UnexpectedB(self.family_id)),
            _ => {}
        }
        Ok(())
    }

    /// Build the evaluators and metadata for this member.
    pub fn resolve(&self) -> Result<TransformPair, CatalogError> {
        self.validate()?;
        let alpha = self.alpha;
        let (f, g): (Evaluator, Evaluator) = match self.family_id {
            FamilyId::Sqrt => (
                Arc::new(move |x: f64| alpha * x.abs().sqrt()),
                Arc::new(move |x: f64| -(alpha * (x.abs().sqrt() * x.signum()))),
            ),
            FamilyId::Lorentzian => (
                Arc::new(move |x: f64| alpha / (x * x + 1.0)),
                Arc::new(move |x: f64| alpha * (x / (x * x + 1.0))),
            ),
            FamilyId::RationalPeak => (
                Arc::new(move |x: f64| {
                    let s = x * x + 1.0;
                    alpha * (x * x / (s * s))
                }),
                Arc::new(move |x: f64| {
                    let s = x * x + 1.0;
                    alpha * (x * (x * x - 1.0) / (2.0 * s * s))
                }),
            ),
            FamilyId::Gaussian => (
                Arc::new(move |x: f64| alpha * (-0.5 * x * x).exp()),
                Arc::new(move |x: f64| alpha * (SQRT_2_OVER_PI * dawson_scaled(x))),
            ),
            FamilyId::Valley => {
                let b = self.b.expect("validated");
                (
                    Arc::new(move |x: f64| {
                        let s = x * x + 1.0;
                        alpha * ((x * x + b) / (s * s))
                    }),
                    Arc::new(move |x: f64| {
                        let s = x * x + 1.0;
                        alpha * (x / (2.0 * s * s) * (x * x * (b + 1.0) + 3.0 * b - 1.0))
                    }),
                )
            }
            FamilyId::Rectangle => (
                Arc::new(move |x: f64| if x.abs() <= 1.0 { alpha } else { 0.0 }),
                // Log-divergent at x = ±1; IEEE evaluation yields the signed
                // infinity consumed downstream as S → 0.
                Arc::new(move |x: f64| alpha * (FRAC_1_PI * ((1.0 + x) / (1.0 - x)).abs().ln())),
            ),
            FamilyId::Triangle => (
                Arc::new(move |x: f64| alpha * (1.0 - x.abs()).max(0.0)),
                Arc::new(move |x: f64| {
                    // Removable singularities at 0 and ±1 take their limits.
                    if x == 0.0 {
                        return 0.0;
                    }
                    if x.abs() == 1.0 {
                        return alpha * (FRAC_1_PI * 2.0 * LN_2) * x.signum();
                    }
                    let up = (1.0 + x) * (1.0 + x).abs().ln();
                    let down = (1.0 - x) * (1.0 - x).abs().ln();
                    let origin = 2.0 * x * x.abs().ln();
                    alpha * (FRAC_1_PI * (up - down - origin))
                }),
            ),
        };

        let (support, decay_class, singular_points) = match self.family_id {
            FamilyId::Sqrt => (Support::FullLine, DecayClass::NonDecaying, vec![]),
            FamilyId::Lorentzian | FamilyId::RationalPeak | FamilyId::Valley => {
                (Support::FullLine, DecayClass::Polynomial, vec![])
            }
            FamilyId::Gaussian => (Support::FullLine, DecayClass::Exponential, vec![]),
            FamilyId::Rectangle => (
                Support::Compact { lo: -1.0, hi: 1.0 },
                DecayClass::Compact,
                vec![-1.0, 1.0],
            ),
            FamilyId::Triangle => (
                Support::Compact { lo: -1.0, hi: 1.0 },
                DecayClass::Compact,
                vec![-1.0, 0.0, 1.0],
            ),
        };

        Ok(TransformPair {
            f,
            g,
            support,
            f_parity: Parity::Even,
            g_parity: Parity::Odd,
            decay_class,
            singular_points,
        })
    }
}

impl fmt::Display for CatalogFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b {
            Some(b) => write!(f, "{}(alpha={}, b={})", self.family_id, self.alpha, b),
            None => write!(f, "{}(alpha={})", self.family_id, self.alpha),
        }
    }
}

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    FullLine,
    Compact { lo: f64, hi: f64 },
}

impl Support {
    pub fn is_compact(self) -> bool {
        matches!(self, Support::Compact { .. })
    }

    fn union(self, other: Support) -> Support {
        match (self, other) {
            (Support::Compact { lo: a, hi: b }, Support::Compact { lo: c, hi: d }) => {
                Support::Compact {
                    lo: a.min(c),
                    hi: b.max(d),
                }
            }
            _ => Support::FullLine,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DecayClass {
    /// Grows or stays bounded away from zero; numerical transforms refuse it.
    NonDecaying,
    Polynomial,
    Exponential,
    Compact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A function together with its Hilbert transform and domain metadata.
///
/// Evaluators are pure and stateless; a resolved pair may be shared freely
/// across threads.
#[derive(Clone)]
pub struct TransformPair {
    f: Evaluator,
    g: Evaluator,
    pub support: Support,
    pub f_parity: Parity,
    pub g_parity: Parity,
    pub decay_class: DecayClass,
    /// Points where g has a removable or logarithmic feature.
    pub singular_points: Vec<f64>,
}

impl TransformPair {
    /// Evaluate f; exactly zero outside compact support.
    pub fn f(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    /// Evaluate g; removable singular points return their limit value and
    /// logarithmic divergences return a signed infinity.
    pub fn g(&self, x: f64) -> f64 {
        (self.g)(x)
    }

    /// Pointwise sum of two pairs. The Hilbert transform is linear, so
    /// (f1 + f2, g1 + g2) is again a transform pair.
    pub fn sum(&self, other: &TransformPair) -> TransformPair {
        let (f1, f2) = (Arc::clone(&self.f), Arc::clone(&other.f));
        let (g1, g2) = (Arc::clone(&self.g), Arc::clone(&other.g));
        let mut singular = self.singular_points.clone();
        singular.extend_from_slice(&other.singular_points);
        singular.sort_by(f64::total_cmp);
        singular.dedup();
        TransformPair {
            f: Arc::new(move |x| f1(x) + f2(x)),
            g: Arc::new(move |x| g1(x) + g2(x)),
            support: self.support.union(other.support),
            f_parity: Parity::Even,
            g_parity: Parity::Odd,
            decay_class: self.decay_class.min(other.decay_class),
            singular_points: singular,
        }
    }
}

impl fmt::Debug for TransformPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransformPair")
            .field("support", &self.support)
            .field("decay_class", &self.decay_class)
            .field("singular_points", &self.singular_points)
            .finish_non_exhaustive()
    }
}

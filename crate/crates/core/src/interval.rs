//! Closed bounded intervals on the real line with Minkowski arithmetic and the
//! delta metric.
//!
//! An [`Interval`] is stored as `(center, radius)`. Lower and upper bounds are
//! derived on demand.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute slack allowed when checking `lower <= upper` (and `radius >= 0`)
/// on external input. Values inside the slack are clamped to a point interval.
pub const BOUNDS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum IntervalError {
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    BoundsInverted { lower: f64, upper: f64 },
    #[error("radius {0} is negative")]
    NegativeRadius(f64),
    #[error("interval endpoints must be finite")]
    NonFinite,
}

/// A non-empty compact interval `[center - radius, center + radius]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    center: f64,
    radius: f64,
}

impl Interval {
    /// The degenerate interval `[0, 0]`.
    pub const ZERO: Interval = Interval {
        center: 0.0,
        radius: 0.0,
    };

    /// Builds an interval from its bounds. Inversions up to
    /// [`BOUNDS_TOLERANCE`] collapse to a point at the midpoint.
    pub fn from_bounds(lower: f64, upper: f64) -> Result<Self, IntervalError> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(IntervalError::NonFinite);
        }
        if lower > upper + BOUNDS_TOLERANCE {
            return Err(IntervalError::BoundsInverted { lower, upper });
        }
        let center = 0.5 * (lower + upper);
        let radius = (0.5 * (upper - lower)).max(0.0);
        Ok(Self { center, radius })
    }

    /// Builds an interval from center and radius. Radii in
    /// `[-BOUNDS_TOLERANCE, 0)` are clamped to zero.
    pub fn from_center_radius(center: f64, radius: f64) -> Result<Self, IntervalError> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(IntervalError::NonFinite);
        }
        if radius < -BOUNDS_TOLERANCE {
            return Err(IntervalError::NegativeRadius(radius));
        }
        Ok(Self {
            center,
            radius: radius.max(0.0),
        })
    }

    /// The point interval `[x, x]`.
    pub fn point(x: f64) -> Self {
        Self { center: x, radius: 0.0 }
    }

    #[inline]
    pub fn center(&self) -> f64 {
        self.center
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        self.radius
    }

    #[inline]
    pub fn lower(&self) -> f64 {
        self.center - self.radius
    }

    #[inline]
    pub fn upper(&self) -> f64 {
        self.center + self.radius
    }

    /// Minkowski sum `A + B = {a + b}`.
    pub fn minkowski_add(self, other: Interval) -> Interval {
        Interval {
            center: self.center + other.center,
            radius: self.radius + other.radius,
        }
    }

    /// Scalar multiple `kA = {k a}`; the radius scales by `|k|`.
    pub fn scale(self, k: f64) -> Interval {
        Interval {
            center: k * self.center,
            radius: k.abs() * self.radius,
        }
    }

    /// Hukuhara difference `A ⊖ B`: the interval `C` with `B + C = A`.
    /// Returns `None` when `B` is wider than `A`.
    pub fn hukuhara_diff(self, other: Interval) -> Option<Interval> {
        if self.radius < other.radius {
            return None;
        }
        Some(Interval {
            center: self.center - other.center,
            radius: self.radius - other.radius,
        })
    }

    /// Delta distance, the L2 distance between support functions:
    /// `sqrt((Δcenter)^2 + (Δradius)^2)`.
    pub fn delta_distance(self, other: Interval) -> f64 {
        (self.center - other.center).hypot(self.radius - other.radius)
    }

    /// Squared delta distance.
    pub fn delta_distance_sq(self, other: Interval) -> f64 {
        let dc = self.center - other.center;
        let dr = self.radius - other.radius;
        dc * dc + dr * dr
    }

    /// Delta norm `sqrt(center^2 + radius^2)`, i.e. the distance to `[0, 0]`.
    pub fn delta_norm(self) -> f64 {
        self.center.hypot(self.radius)
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        self.minkowski_add(rhs)
    }
}

impl Mul<Interval> for f64 {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        rhs.scale(self)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower(), self.upper())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::from_bounds(lo, hi).unwrap()
    }

    // Bounds form of the squared distance: ½[(ΔL)² + (ΔU)²].
    fn delta_sq_from_bounds(a: Interval, b: Interval) -> f64 {
        let dl = a.lower() - b.lower();
        let du = a.upper() - b.upper();
        0.5 * (dl * dl + du * du)
    }

    #[test]
    fn from_bounds_examples() {
        let a = iv(0.0, 2.0);
        assert_eq!((a.center(), a.radius()), (1.0, 1.0));
        let p = iv(3.0, 3.0);
        assert_eq!((p.center(), p.radius()), (3.0, 0.0));
        let c = iv(-1.0, 5.0);
        assert_eq!((c.center(), c.radius()), (2.0, 3.0));
    }

    #[test]
    fn inverted_bounds_rejected_beyond_tolerance() {
        assert!(matches!(
            Interval::from_bounds(1.0, 0.0),
            Err(IntervalError::BoundsInverted { .. })
        ));
        let clamped = Interval::from_bounds(1.0 + 5e-10, 1.0).unwrap();
        assert_eq!(clamped.radius(), 0.0);
        assert!(matches!(
            Interval::from_bounds(f64::NAN, 1.0),
            Err(IntervalError::NonFinite)
        ));
        assert!(matches!(
            Interval::from_center_radius(0.0, -0.5),
            Err(IntervalError::NegativeRadius(_))
        ));
    }

    #[test]
    fn minkowski_and_scaling_examples() {
        assert_eq!(iv(0.0, 2.0) + iv(1.0, 3.0), iv(1.0, 5.0));
        assert_eq!(iv(0.0, 2.0) + Interval::ZERO, iv(0.0, 2.0));
        assert_eq!(iv(-1.0, 1.0) + iv(-2.0, 2.0), iv(-3.0, 3.0));
        assert_eq!(2.0 * iv(1.0, 3.0), iv(2.0, 6.0));
        assert_eq!(-1.0 * iv(1.0, 3.0), iv(-3.0, -1.0));
        assert_eq!(0.0 * iv(1.0, 3.0), iv(0.0, 0.0));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(iv(0.0, 2.0).delta_distance(iv(0.0, 2.0)), 0.0);
        let d = iv(0.0, 2.0).delta_distance(iv(1.0, 3.0));
        assert!((d - delta_sq_from_bounds(iv(0.0, 2.0), iv(1.0, 3.0)).sqrt()).abs() < 1e-15);
        assert!((d - 1.0).abs() < 1e-15);
        let d = iv(0.0, 0.0).delta_distance(iv(3.0, 3.0));
        assert!((d - 3.0).abs() < 1e-15);

        assert_eq!(Interval::ZERO.delta_norm(), 0.0);
        assert_eq!(iv(3.0, 3.0).delta_norm(), 3.0);
        let sym = iv(-1.0, 1.0);
        let oracle = (0.5 * (sym.lower().powi(2) + sym.upper().powi(2))).sqrt();
        assert!((sym.delta_norm() - oracle).abs() < 1e-15);
        assert!((sym.delta_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hukuhara_examples() {
        let c = iv(1.0, 5.0).hukuhara_diff(iv(0.0, 2.0)).unwrap();
        assert_eq!(c, iv(1.0, 3.0));
        assert_eq!(iv(0.0, 2.0) + c, iv(1.0, 5.0));
        let a = iv(-2.5, 7.0);
        assert_eq!(a.hukuhara_diff(a), Some(Interval::ZERO));
        assert_eq!(iv(0.0, 2.0).hukuhara_diff(iv(-2.0, 2.0)), None);
    }

    fn interval() -> impl Strategy<Value = Interval> {
        (-1e3..1e3f64, 0.0..1e3f64).prop_map(|(c, r)| Interval::from_center_radius(c, r).unwrap())
    }

    proptest! {
        #[test]
        fn distance_matches_bounds_form(a in interval(), b in interval()) {
            let d2 = a.delta_distance(b).powi(2);
            let oracle = delta_sq_from_bounds(a, b);
            prop_assert!((d2 - oracle).abs() <= 1e-12 * oracle.max(1e-300) + 1e-18);
        }

        #[test]
        fn hukuhara_round_trip(a in interval(), b in interval()) {
            let (wide, narrow) = if a.radius() >= b.radius() { (a, b) } else { (b, a) };
            let c = wide.hukuhara_diff(narrow).unwrap();
            let back = narrow + c;
            // exact in radius; center up to one rounding of (a - b) + b
            prop_assert!((back.center() - wide.center()).abs() <= f64::EPSILON * wide.center().abs().max(narrow.center().abs()));
            prop_assert!((back.radius() - wide.radius()).abs() <= f64::EPSILON * wide.radius());
        }

        #[test]
        fn scaling_is_a_similarity(a in interval(), b in interval(), k in -50.0..50.0f64) {
            let lhs = (k * a).delta_distance(k * b);
            let rhs = k.abs() * a.delta_distance(b);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300) + 1e-12);
        }

        #[test]
        fn metric_axioms(a in interval(), b in interval(), c in interval()) {
            let ab = a.delta_distance(b);
            prop_assert!(ab >= 0.0);
            prop_assert_eq!(ab, b.delta_distance(a));
            prop_assert!(a.delta_distance(c) <= ab + b.delta_distance(c) + 1e-12 * (1.0 + ab));
        }

        #[test]
        fn bounds_view_round_trip(c in -1e6..1e6f64, r in 0.0..1e6f64) {
            let a = Interval::from_center_radius(c, r).unwrap();
            let b = Interval::from_bounds(a.lower(), a.upper()).unwrap();
            let scale = c.abs() + r;
            prop_assert!((a.center() - b.center()).abs() <= f64::EPSILON * scale);
            prop_assert!((a.radius() - b.radius()).abs() <= f64::EPSILON * scale);
        }
    }
}

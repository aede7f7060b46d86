use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A value in the extended real line `R ∪ {∞}`.
///
/// Infinity is a tagged marker rather than an IEEE infinity, so that
/// `∞ - ∞` is a typed error instead of a silent NaN. Finite payloads are
/// guaranteed not to be NaN, which makes the ordering total.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinite,
}

impl ExtendedReal {
    /// Wraps a finite number. Panics on NaN or IEEE infinities; those never
    /// denote legitimate filtration values.
    pub fn finite(value: f64) -> Self {
        assert!(value.is_finite(), "ExtendedReal::finite({value})");
        ExtendedReal::Finite(value)
    }

    pub const INFINITY: ExtendedReal = ExtendedReal::Infinite;

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedReal::Infinite)
    }

    /// The finite payload, if any.
    pub fn value(&self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(*v),
            ExtendedReal::Infinite => None,
        }
    }

    pub fn expect_finite(&self) -> Result<f64> {
        self.value().ok_or(Error::NotFinite)
    }

    /// Collapses to `f64`, mapping the marker to `f64::INFINITY`. Handy for
    /// display and comparisons against plain floats.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedReal::Finite(v) => *v,
            ExtendedReal::Infinite => f64::INFINITY,
        }
    }

    /// `∞ - ∞` is rejected; all other cases follow the usual conventions
    /// (`∞ - finite = ∞`, `finite - ∞` has no place in this crate and is
    /// rejected as well since the result would leave `R ∪ {∞}`).
    pub fn try_sub(self, rhs: ExtendedReal) -> Result<ExtendedReal> {
        match (self, rhs) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => Ok(ExtendedReal::finite(a - b)),
            (ExtendedReal::Infinite, ExtendedReal::Finite(_)) => Ok(ExtendedReal::Infinite),
            (_, ExtendedReal::Infinite) => Err(Error::IndeterminateInfinity),
        }
    }
}

/// `finite + finite` is finite and anything plus `∞` is `∞`; addition is
/// total on `R ∪ {∞}`.
impl std::ops::Add for ExtendedReal {
    type Output = ExtendedReal;

    fn add(self, rhs: ExtendedReal) -> ExtendedReal {
        match (self, rhs) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => ExtendedReal::finite(a + b),
            _ => ExtendedReal::Infinite,
        }
    }
}

impl Eq for ExtendedReal {}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedReal {
    /// Total order: every finite value is below `∞`.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => {
                a.partial_cmp(b).expect("finite values are never NaN")
            }
            (ExtendedReal::Finite(_), ExtendedReal::Infinite) => Ordering::Less,
            (ExtendedReal::Infinite, ExtendedReal::Finite(_)) => Ordering::Greater,
            (ExtendedReal::Infinite, ExtendedReal::Infinite) => Ordering::Equal,
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(v: f64) -> Self {
        if v == f64::INFINITY {
            ExtendedReal::Infinite
        } else {
            ExtendedReal::finite(v)
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::Infinite => write!(f, "inf"),
        }
    }
}

/// A point of the extended plane `(R ∪ {∞})²`.
///
/// Points of improper vertical contours may have `y = ∞` and points of
/// improper horizontal contours may have `x = ∞`; proper-contour points are
/// finite in both coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtendedPoint {
    pub x: ExtendedReal,
    pub y: ExtendedReal,
}

impl ExtendedPoint {
    pub fn new(x: ExtendedReal, y: ExtendedReal) -> Self {
        ExtendedPoint { x, y }
    }

    pub fn finite(x: f64, y: f64) -> Self {
        ExtendedPoint {
            x: ExtendedReal::finite(x),
            y: ExtendedReal::finite(y),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Both coordinates as plain floats; requires a finite point.
    pub fn coords(&self) -> Result<(f64, f64)> {
        Ok((self.x.expect_finite()?, self.y.expect_finite()?))
    }
}

impl fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{ExtendedPoint, ExtendedReal};

/// Parameter `(a, b)` of a filtering line.
///
/// For `a` in `]0,1[` the line is `r_(a,b) = { t(a, 1-a) + (b, -b) : t ∈ R }`,
/// a line of slope `(1-a)/a > 0`. The boundary values follow the set
/// definitions: `r_(0,b)` is the vertical line `{x = b}` and `r_(1,b)` is the
/// horizontal line `{y = -b}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineParam {
    a: f64,
    b: f64,
}

impl LineParam {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !(0.0..=1.0).contains(&a) {
            return Err(Error::SlopeOutOfRange(a));
        }
        if !b.is_finite() {
            return Err(Error::NonFiniteNumber(b));
        }
        Ok(LineParam { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// True for the interior parameters `0 < a < 1`.
    pub fn is_interior(&self) -> bool {
        self.a > 0.0 && self.a < 1.0
    }

    /// Point of the line at parameter `t`: `t(a, 1-a) + (b, -b)`.
    pub fn point_at(&self, t: f64) -> (f64, f64) {
        (t * self.a + self.b, t * (1.0 - self.a) - self.b)
    }

    /// Ordinate of the line at abscissa `x`; requires `a > 0`.
    pub fn y_at(&self, x: f64) -> Result<f64> {
        if self.a == 0.0 {
            return Err(Error::BoundarySlope(self.a));
        }
        Ok((1.0 - self.a) * (x - self.b) / self.a - self.b)
    }

    /// Abscissa of the line at ordinate `y`; requires `a < 1`.
    pub fn x_at(&self, y: f64) -> Result<f64> {
        if self.a == 1.0 {
            return Err(Error::BoundarySlope(self.a));
        }
        Ok(self.b + self.a * (y + self.b) / (1.0 - self.a))
    }

    /// Signed residual of the line equation `(1-a)(x - b) - a(y + b)` at a
    /// point. Zero iff the point lies on the line (for every `a` in `[0,1]`).
    pub fn residual(&self, x: f64, y: f64) -> f64 {
        (1.0 - self.a) * (x - self.b) - self.a * (y + self.b)
    }
}

impl fmt::Display for LineParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={})", self.a, self.b)
    }
}

/// Closed segment `[(a,b), (a',b')]` in parameter space, read as the rotation
/// (or translation) taking `r_(a,b)` to `r_(a',b')`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationSegment {
    pub from: LineParam,
    pub to: LineParam,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationKind {
    Clockwise,
    CounterClockwise,
    Translation,
}

impl RotationSegment {
    pub fn new(from: LineParam, to: LineParam) -> Self {
        RotationSegment { from, to }
    }

    /// Clockwise iff `a < a'`, counter-clockwise iff `a' < a`, translation
    /// iff `a = a'`.
    pub fn kind(&self) -> RotationKind {
        if self.from.a() < self.to.a() {
            RotationKind::Clockwise
        } else if self.from.a() > self.to.a() {
            RotationKind::CounterClockwise
        } else {
            RotationKind::Translation
        }
    }

    /// Point of the segment at `s` in `[0,1]`.
    pub fn at(&self, s: f64) -> LineParam {
        let a = self.from.a() + s * (self.to.a() - self.from.a());
        let b = self.from.b() + s * (self.to.b() - self.from.b());
        LineParam::new(a.clamp(0.0, 1.0), b).expect("interpolant stays in range")
    }
}

/// The restriction `φ_(a,b)(x) = max{ (φ₁(x)-b)/a, (φ₂(x)+b)/(1-a) }` of a
/// two-component value along the line; defined for interior `a` only.
pub fn restrict_value(phi1: f64, phi2: f64, line: LineParam) -> Result<ExtendedReal> {
    if !line.is_interior() {
        return Err(Error::BoundarySlope(line.a()));
    }
    let first = (phi1 - line.b()) / line.a();
    let second = (phi2 + line.b()) / (1.0 - line.a());
    Ok(ExtendedReal::finite(first.max(second)))
}

/// The normalised restriction `φ*_(a,b) = min{a, 1-a}·φ_(a,b)`, extended to
/// the closed interval by its continuity limits: `max{φ₁-b, 0}` at `a = 0`
/// and `max{0, φ₂+b}` at `a = 1`.
pub fn normalized_value(phi1: f64, phi2: f64, line: LineParam) -> f64 {
    let (a, b) = (line.a(), line.b());
    if a == 0.0 {
        (phi1 - b).max(0.0)
    } else if a == 1.0 {
        (phi2 + b).max(0.0)
    } else {
        let restricted = ((phi1 - b) / a).max((phi2 + b) / (1.0 - a));
        a.min(1.0 - a) * restricted
    }
}

/// The unique parameter `(a, b)` whose line passes through a finite point:
/// `b = (1-a)·x_P - a·y_P`.
pub fn line_through(a: f64, point: ExtendedPoint) -> Result<LineParam> {
    let (x, y) = point.coords()?;
    LineParam::new(a, (1.0 - a) * x - a * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(a: f64, b: f64) -> LineParam {
        LineParam::new(a, b).unwrap()
    }

    #[test]
    fn restrict_direct_substitution() {
        // max{6, 2}
        assert_eq!(
            restrict_value(3.0, 1.0, line(0.5, 0.0)).unwrap(),
            ExtendedReal::finite(6.0)
        );
        // max{4, 8}
        assert_eq!(
            restrict_value(2.0, 5.0, line(0.25, 1.0)).unwrap(),
            ExtendedReal::finite(8.0)
        );
    }

    #[test]
    fn restrict_zero_on_base_point() {
        for a in [0.1, 0.25, 0.5, 0.9] {
            for b in [-2.0, 0.0, 1.5] {
                let v = restrict_value(b, -b, line(a, b)).unwrap();
                assert_eq!(v, ExtendedReal::finite(0.0));
            }
        }
    }

    #[test]
    fn restrict_rejects_boundary_slopes() {
        assert!(matches!(
            restrict_value(1.0, 1.0, line(0.0, 0.0)),
            Err(Error::BoundarySlope(_))
        ));
        assert!(matches!(
            restrict_value(1.0, 1.0, line(1.0, 0.0)),
            Err(Error::BoundarySlope(_))
        ));
    }

    #[test]
    fn normalized_interior_and_boundary() {
        assert_eq!(normalized_value(3.0, 1.0, line(0.5, 0.0)), 3.0);
        // a = 0 closed form ignores phi2
        assert_eq!(normalized_value(3.0, 123.0, line(0.0, 1.0)), 2.0);
        assert_eq!(normalized_value(3.0, -456.0, line(0.0, 1.0)), 2.0);
        // a = 1 closed form ignores phi1
        assert_eq!(normalized_value(99.0, -0.25, line(1.0, 1.0)), 0.75);
        assert_eq!(normalized_value(99.0, -3.0, line(1.0, 1.0)), 0.0);
    }

    #[test]
    fn normalized_converges_to_boundary_closed_form() {
        // numerical limit oracle for the a -> 0 extension
        let expected = normalized_value(3.0, 1.0, line(0.0, 1.0));
        assert_eq!(expected, 2.0);
        let mut last_gap = f64::INFINITY;
        for k in 1..=6 {
            let a = 10f64.powi(-k);
            let v = normalized_value(3.0, 1.0, line(a, 1.0));
            let gap = (v - expected).abs();
            assert!(gap <= last_gap + 1e-15, "gap grew at a = {a}");
            last_gap = gap;
        }
        assert!(last_gap < 1e-5, "limit not reached: gap {last_gap}");
    }

    #[test]
    fn normalized_equals_scaled_restriction() {
        for a in [0.05, 0.3, 0.5, 0.77, 0.95] {
            for b in [-1.0, 0.0, 0.4] {
                for (p1, p2) in [(0.0, 0.0), (3.0, 1.0), (-2.0, 5.0), (0.1, -0.1)] {
                    let l = line(a, b);
                    let direct = normalized_value(p1, p2, l);
                    let scaled =
                        a.min(1.0 - a) * restrict_value(p1, p2, l).unwrap().value().unwrap();
                    assert_eq!(direct, scaled);
                }
            }
        }
    }

    #[test]
    fn normalized_monotone_in_components() {
        let l = line(0.3, 0.2);
        let base = normalized_value(1.0, 2.0, l);
        assert!(normalized_value(1.5, 2.0, l) >= base);
        assert!(normalized_value(1.0, 2.5, l) >= base);
    }

    #[test]
    fn line_through_examples() {
        let p = ExtendedPoint::finite(2.0, 2.0);
        assert_eq!(line_through(0.5, p).unwrap().b(), 0.0);
        let p = ExtendedPoint::finite(3.0, 7.0);
        assert_eq!(line_through(0.0, p).unwrap().b(), 3.0);
        let p = ExtendedPoint::finite(4.0, 0.0);
        assert_eq!(line_through(0.25, p).unwrap().b(), 3.0);
    }

    #[test]
    fn line_through_membership() {
        for a in [0.1, 0.25, 0.5, 0.8] {
            for (x, y) in [(4.0, 0.0), (-1.0, 2.5), (0.0, 0.0), (10.0, -10.0)] {
                let l = line_through(a, ExtendedPoint::finite(x, y)).unwrap();
                assert!(l.residual(x, y).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn line_through_rejects_infinite_points() {
        let p = ExtendedPoint::new(ExtendedReal::finite(1.0), ExtendedReal::Infinite);
        assert!(line_through(0.5, p).is_err());
    }

    #[test]
    fn normalized_value_is_lipschitz_in_parameters() {
        // branchwise bound for |values| <= m and |b| <= bound:
        // |d/db| <= 1 and |d/da| <= 4(m + bound) on either half of [0, 1]
        let (m, bound) = (2.0f64, 1.5f64);
        let lip = 1.0f64.max(4.0 * (m + bound));
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            // xorshift, plenty for sampling test points
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..2000 {
            let p1 = m * (2.0 * next() - 1.0);
            let p2 = m * (2.0 * next() - 1.0);
            let a1 = next();
            let a2 = next();
            let b1 = bound * (2.0 * next() - 1.0);
            let b2 = bound * (2.0 * next() - 1.0);
            let v1 = normalized_value(p1, p2, line(a1, b1));
            let v2 = normalized_value(p1, p2, line(a2, b2));
            let allowed = lip * ((a1 - a2).abs() + (b1 - b2).abs());
            assert!(
                (v1 - v2).abs() <= allowed + 1e-12,
                "|{v1} - {v2}| > {allowed} at a=({a1},{a2}), b=({b1},{b2}), phi=({p1},{p2})"
            );
        }
    }

    #[test]
    fn rotation_kinds() {
        let seg = RotationSegment::new(line(0.2, 0.0), line(0.4, 1.0));
        assert_eq!(seg.kind(), RotationKind::Clockwise);
        let seg = RotationSegment::new(line(0.4, 0.0), line(0.2, 1.0));
        assert_eq!(seg.kind(), RotationKind::CounterClockwise);
        let seg = RotationSegment::new(line(0.4, 0.0), line(0.4, 1.0));
        assert_eq!(seg.kind(), RotationKind::Translation);
        assert_eq!(seg.at(0.5).b(), 0.5);
    }
}

//! Intersection of filtering lines with contours: the canonical operator for
//! interior slopes and its sequential-limit extension at `a ∈ {0, 1}`.

use crate::error::{Error, Result};
use crate::geometry::{ExtendedPoint, ExtendedReal, LineParam};
use crate::grid::{Contour, ContourKind, ENDPOINT_SNAP};

/// An intersection point, with provenance on proper contours.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Intersection {
    pub point: ExtendedPoint,
    /// Polyline segment containing the point, for proper contours.
    pub segment: Option<usize>,
    /// Set when the point snaps to a polyline endpoint (within
    /// [`ENDPOINT_SNAP`]); endpoint crossings feed the rotation-obstruction
    /// curve set.
    pub at_endpoint: bool,
}

impl Intersection {
    fn finite(x: f64, y: f64) -> Self {
        Intersection {
            point: ExtendedPoint::finite(x, y),
            segment: None,
            at_endpoint: false,
        }
    }
}

/// Canonical intersection of `r_(a,b)` with a contour, for `0 < a < 1`.
///
/// A line of positive slope meets a monotone polyline in at most one point;
/// the crossing is located by a monotone scan of the signed line residual.
/// A polyline segment lying exactly on the line is reported as a degenerate
/// input.
pub fn intersect(line: LineParam, contour: &Contour) -> Result<Option<Intersection>> {
    if !line.is_interior() {
        return Err(Error::BoundarySlope(line.a()));
    }
    match &contour.kind {
        ContourKind::ImproperVertical { x0, y0 } => {
            let y = line.y_at(*x0)?;
            if y >= *y0 {
                let mut hit = Intersection::finite(*x0, y);
                hit.at_endpoint = (y - y0).abs() <= ENDPOINT_SNAP;
                Ok(Some(hit))
            } else {
                Ok(None)
            }
        }
        ContourKind::ImproperHorizontal { x0, y0 } => {
            let x = line.x_at(*y0)?;
            if x >= *x0 {
                let mut hit = Intersection::finite(x, *y0);
                hit.at_endpoint = (x - x0).abs() <= ENDPOINT_SNAP;
                Ok(Some(hit))
            } else {
                Ok(None)
            }
        }
        ContourKind::Proper { polyline } => proper_crossing(line, polyline),
    }
}

/// The residual `h(P) = (1-a)(x_P - b) - a(y_P + b)` is non-decreasing along
/// the stored orientation (x non-decreasing, y non-increasing), so a sign
/// change brackets the unique crossing.
fn proper_crossing(line: LineParam, polyline: &[(f64, f64)]) -> Result<Option<Intersection>> {
    let h: Vec<f64> = polyline
        .iter()
        .map(|&(x, y)| line.residual(x, y))
        .collect();
    let first = h[0];
    let last = *h.last().unwrap();
    if first > 0.0 || last < 0.0 {
        return Ok(None);
    }
    // first index with h >= 0
    let mut lo = 0usize;
    let mut hi = h.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if h[mid] >= 0.0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let k = lo;
    let point = if h[k] == 0.0 {
        if k + 1 < h.len() && h[k + 1] == 0.0 {
            return Err(Error::AmbiguousIntersection);
        }
        polyline[k]
    } else {
        debug_assert!(k > 0 && h[k - 1] < 0.0 && h[k] > 0.0);
        let (p0, p1) = (polyline[k - 1], polyline[k]);
        let t = h[k - 1] / (h[k - 1] - h[k]);
        (p0.0 + t * (p1.0 - p0.0), p0.1 + t * (p1.1 - p0.1))
    };

    let segment = if h[k] == 0.0 {
        Some(k.min(polyline.len() - 2))
    } else {
        Some(k - 1)
    };
    let (start, end) = (polyline[0], *polyline.last().unwrap());
    let near = |p: (f64, f64), q: (f64, f64)| {
        (p.0 - q.0).abs() <= ENDPOINT_SNAP && (p.1 - q.1).abs() <= ENDPOINT_SNAP
    };
    let (point, at_endpoint) = if near(point, start) {
        (start, true)
    } else if near(point, end) {
        (end, true)
    } else {
        (point, false)
    };
    Ok(Some(Intersection {
        point: ExtendedPoint::finite(point.0, point.1),
        segment,
        at_endpoint,
    }))
}

/// Number of sign changes of the line residual along a proper contour;
/// always 0 or 1 for valid monotone polylines.
pub fn crossing_count(line: LineParam, contour: &Contour) -> usize {
    let Some(polyline) = contour.polyline() else {
        return 0;
    };
    let mut count = 0;
    let mut prev: Option<bool> = None;
    for &(x, y) in polyline {
        let h = line.residual(x, y);
        let sign = h > 0.0;
        if h != 0.0 {
            if let Some(p) = prev {
                if p != sign {
                    count += 1;
                }
            }
            prev = Some(sign);
        }
    }
    count
}

/// The extended intersection operator: canonical for `0 < a < 1`, and the
/// closed-form sequential limits at the boundary.
///
/// At `a = 0` (vertical line `{x = b}`): a proper contour keeps its
/// canonical crossing; a vertical improper contour on the right of the line
/// (or on it) escapes to `(x0, ∞)` and disappears on the left; a horizontal
/// improper contour hits `(b, y0)` when `b ≥ x0`. At `a = 1` the rules are
/// symmetric with `(∞, y0)` escapes.
pub fn hat_intersect(line: LineParam, contour: &Contour) -> Result<Option<Intersection>> {
    let (a, b) = (line.a(), line.b());
    if line.is_interior() {
        return intersect(line, contour);
    }
    if a == 0.0 {
        match &contour.kind {
            ContourKind::ImproperVertical { x0, y0: _ } => {
                if *x0 >= b {
                    Ok(Some(Intersection {
                        point: ExtendedPoint::new(
                            ExtendedReal::finite(*x0),
                            ExtendedReal::Infinite,
                        ),
                        segment: None,
                        at_endpoint: false,
                    }))
                } else {
                    Ok(None)
                }
            }
            ContourKind::ImproperHorizontal { x0, y0 } => {
                if b >= *x0 {
                    let mut hit = Intersection::finite(b, *y0);
                    hit.at_endpoint = (b - x0).abs() <= ENDPOINT_SNAP;
                    Ok(Some(hit))
                } else {
                    Ok(None)
                }
            }
            ContourKind::Proper { polyline } => vertical_line_crossing(b, polyline),
        }
    } else {
        let y_line = -b;
        match &contour.kind {
            ContourKind::ImproperHorizontal { x0: _, y0 } => {
                if *y0 >= y_line {
                    Ok(Some(Intersection {
                        point: ExtendedPoint::new(
                            ExtendedReal::Infinite,
                            ExtendedReal::finite(*y0),
                        ),
                        segment: None,
                        at_endpoint: false,
                    }))
                } else {
                    Ok(None)
                }
            }
            ContourKind::ImproperVertical { x0, y0 } => {
                if y_line >= *y0 {
                    let mut hit = Intersection::finite(*x0, y_line);
                    hit.at_endpoint = (y_line - y0).abs() <= ENDPOINT_SNAP;
                    Ok(Some(hit))
                } else {
                    Ok(None)
                }
            }
            ContourKind::Proper { polyline } => horizontal_line_crossing(y_line, polyline),
        }
    }
}

fn vertical_line_crossing(b: f64, polyline: &[(f64, f64)]) -> Result<Option<Intersection>> {
    let x_first = polyline[0].0;
    let x_last = polyline.last().unwrap().0;
    if b < x_first || b > x_last {
        return Ok(None);
    }
    for (k, w) in polyline.windows(2).enumerate() {
        let (p0, p1) = (w[0], w[1]);
        if p0.0 <= b && b <= p1.0 {
            if p0.0 == p1.0 {
                return Err(Error::AmbiguousIntersection);
            }
            let t = (b - p0.0) / (p1.0 - p0.0);
            let point = (b, p0.1 + t * (p1.1 - p0.1));
            return Ok(finish_boundary_crossing(point, k, polyline));
        }
    }
    Ok(None)
}

fn horizontal_line_crossing(y: f64, polyline: &[(f64, f64)]) -> Result<Option<Intersection>> {
    // y is non-increasing along the stored orientation
    let y_first = polyline[0].1;
    let y_last = polyline.last().unwrap().1;
    if y > y_first || y < y_last {
        return Ok(None);
    }
    for (k, w) in polyline.windows(2).enumerate() {
        let (p0, p1) = (w[0], w[1]);
        if p1.1 <= y && y <= p0.1 {
            if p0.1 == p1.1 {
                return Err(Error::AmbiguousIntersection);
            }
            let t = (y - p0.1) / (p1.1 - p0.1);
            let point = (p0.0 + t * (p1.0 - p0.0), y);
            return Ok(finish_boundary_crossing(point, k, polyline));
        }
    }
    Ok(None)
}

fn finish_boundary_crossing(
    point: (f64, f64),
    segment: usize,
    polyline: &[(f64, f64)],
) -> Option<Intersection> {
    let (start, end) = (polyline[0], *polyline.last().unwrap());
    let near = |p: (f64, f64), q: (f64, f64)| {
        (p.0 - q.0).abs() <= ENDPOINT_SNAP && (p.1 - q.1).abs() <= ENDPOINT_SNAP
    };
    let (point, at_endpoint) = if near(point, start) {
        (start, true)
    } else if near(point, end) {
        (end, true)
    } else {
        (point, false)
    };
    Some(Intersection {
        point: ExtendedPoint::finite(point.0, point.1),
        segment: Some(segment),
        at_endpoint,
    })
}

/// The unique slope parameter `A = (x0 - b) / (x0 + y0)` at which the line
/// family `r_(·,b)` starts meeting the horizontal improper contour
/// `{x ≥ x0, y = y0}`: the intersection is nonempty exactly for `a ∈ [A, 1[`.
pub fn threshold_slope(contour: &Contour, b: f64) -> Result<f64> {
    let ContourKind::ImproperHorizontal { x0, y0 } = contour.kind else {
        return Err(Error::Precondition(
            "threshold slope is defined for horizontal improper contours".to_string(),
        ));
    };
    if !(x0 > b && y0 > -b) {
        return Err(Error::Precondition(format!(
            "threshold slope requires x0 > b and y0 > -b, got x0={x0}, y0={y0}, b={b}"
        )));
    }
    Ok((x0 - b) / (x0 + y0))
}

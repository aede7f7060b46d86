//! Extended Pareto grids: contours of a two-component function in the value
//! plane, the extended intersection operator with filtering lines, and the
//! grid-based prediction of persistence-diagram coordinates.

mod analytic;
mod format;
mod intersect;

pub use analytic::{analytic_sphere_grid, analytic_torus_grid};
pub use format::{load_grid, parse_grid, save_grid, write_grid};
pub use intersect::{crossing_count, hat_intersect, intersect, threshold_slope, Intersection};

use crate::diagram::PersistenceDiagram;
use crate::error::{Error, Result};
use crate::geometry::{ExtendedPoint, LineParam};

/// Intersections closer than this to a polyline endpoint snap to the
/// endpoint and are flagged; endpoint crossings feed the curve set of
/// rotation obstructions.
pub const ENDPOINT_SNAP: f64 = 1e-9;

/// Which of the two filtering functions a contour belongss to inside a
/// merged contour set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctionTag {
    First,
    Second,
}

impl FunctionTag {
    pub fn label(&self) -> &'static str {
        match self {
            FunctionTag::First => "1",
            FunctionTag::Second => "2",
        }
    }
}

/// Direction of a contour at a point, as a homogeneous slope `(s : t)` with
/// `m = s/t`; vertical directions are `(-1, 0)`. Keeping the pair instead of
/// a bare `f64` makes every slope-dependent formula well defined in the
/// vertical limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentDir {
    pub s: f64,
    pub t: f64,
}

impl TangentDir {
    pub fn from_slope(m: f64) -> Self {
        TangentDir { s: m, t: 1.0 }
    }

    pub const VERTICAL: TangentDir = TangentDir { s: -1.0, t: 0.0 };
    pub const HORIZONTAL: TangentDir = TangentDir { s: 0.0, t: 1.0 };

    pub fn slope(&self) -> f64 {
        if self.t == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.s / self.t
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ContourKind {
    /// A monotone arc sampled as a polyline, stored with non-decreasing `x`
    /// and non-increasing `y`.
    Proper { polyline: Vec<(f64, f64)> },
    /// The half-line `{x = x0, y ≥ y0}` (reaching `(x0, ∞)`).
    ImproperVertical { x0: f64, y0: f64 },
    /// The half-line `{x ≥ x0, y = y0}` (reaching `(∞, y0)`).
    ImproperHorizontal { x0: f64, y0: f64 },
}

/// One contour of an extended Pareto grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Contour {
    pub kind: ContourKind,
    pub tag: FunctionTag,
}

impl Contour {
    /// Builds a proper contour, validating monotonicity: along the
    /// parametrization one coordinate must be non-increasing and the other
    /// non-decreasing, so no segment has strictly positive slope. The stored
    /// orientation is normalised to non-decreasing `x`.
    pub fn proper(points: Vec<(f64, f64)>, tag: FunctionTag) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidContour(
                "proper contour needs at least two points".to_string(),
            ));
        }
        for &(x, y) in &points {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::InvalidContour(format!(
                    "non-finite polyline point ({x}, {y})"
                )));
            }
        }
        let mut polyline: Vec<(f64, f64)> = Vec::with_capacity(points.len());
        for p in points {
            if polyline.last() != Some(&p) {
                polyline.push(p);
            }
        }
        if polyline.len() < 2 {
            return Err(Error::InvalidContour(
                "proper contour collapses to a single point".to_string(),
            ));
        }
        let forward = polyline
            .windows(2)
            .all(|w| w[1].0 >= w[0].0 && w[1].1 <= w[0].1);
        let backward = polyline
            .windows(2)
            .all(|w| w[1].0 <= w[0].0 && w[1].1 >= w[0].1);
        if !forward && !backward {
            return Err(Error::InvalidContour(
                "polyline has a segment of strictly positive slope".to_string(),
            ));
        }
        if backward && !forward {
            polyline.reverse();
        }
        Ok(Contour {
            kind: ContourKind::Proper { polyline },
            tag,
        })
    }

    pub fn improper_vertical(x0: f64, y0: f64, tag: FunctionTag) -> Self {
        Contour {
            kind: ContourKind::ImproperVertical { x0, y0 },
            tag,
        }
    }

    pub fn improper_horizontal(x0: f64, y0: f64, tag: FunctionTag) -> Self {
        Contour {
            kind: ContourKind::ImproperHorizontal { x0, y0 },
            tag,
        }
    }

    pub fn is_proper(&self) -> bool {
        matches!(self.kind, ContourKind::Proper { .. })
    }

    pub fn polyline(&self) -> Option<&[(f64, f64)]> {
        match &self.kind {
            ContourKind::Proper { polyline } => Some(polyline),
            _ => None,
        }
    }

    /// Endpoints of a proper contour.
    pub fn endpoints(&self) -> Option<[(f64, f64); 2]> {
        self.polyline().map(|p| [p[0], *p.last().unwrap()])
    }

    /// Tangent direction of the polyline segment `k` (proper contours), or
    /// the constant direction of an improper half-line.
    pub fn tangent(&self, segment: usize) -> TangentDir {
        match &self.kind {
            ContourKind::Proper { polyline } => {
                let (p0, p1) = (polyline[segment], polyline[segment + 1]);
                let (dx, dy) = (p1.0 - p0.0, p1.1 - p0.1);
                if dx > 0.0 {
                    TangentDir::from_slope(dy / dx)
                } else {
                    TangentDir::VERTICAL
                }
            }
            ContourKind::ImproperVertical { .. } => TangentDir::VERTICAL,
            ContourKind::ImproperHorizontal { .. } => TangentDir::HORIZONTAL,
        }
    }
}

/// A finite list of contours.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ExtendedParetoGrid {
    pub contours: Vec<Contour>,
}

impl ExtendedParetoGrid {
    pub fn new(contours: Vec<Contour>) -> Self {
        ExtendedParetoGrid { contours }
    }

    pub fn len(&self) -> usize {
        self.contours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contours.is_empty()
    }

    /// Translates every contour in the value plane.
    pub fn translated(&self, dx: f64, dy: f64) -> Self {
        let contours = self
            .contours
            .iter()
            .map(|c| {
                let kind = match &c.kind {
                    ContourKind::Proper { polyline } => ContourKind::Proper {
                        polyline: polyline.iter().map(|&(x, y)| (x + dx, y + dy)).collect(),
                    },
                    ContourKind::ImproperVertical { x0, y0 } => ContourKind::ImproperVertical {
                        x0: x0 + dx,
                        y0: y0 + dy,
                    },
                    ContourKind::ImproperHorizontal { x0, y0 } => ContourKind::ImproperHorizontal {
                        x0: x0 + dx,
                        y0: y0 + dy,
                    },
                };
                Contour { kind, tag: c.tag }
            })
            .collect();
        ExtendedParetoGrid { contours }
    }
}

/// Reference to a contour within a (grid, grid) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContourRef {
    pub side: FunctionTag,
    pub index: usize,
}

impl std::fmt::Display for ContourRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.side.label(), self.index)
    }
}

/// A grid-predicted value for one finite coordinate of a diagram point.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionCandidate {
    pub w: f64,
    pub source: ContourRef,
    pub intersection: ExtendedPoint,
}

/// Transforms of the extended intersections of `line` with a single grid:
/// every candidate coordinate `min{1, (1-a)/a}(x - b)` (equivalently
/// `min{1, a/(1-a)}(y + b)` where both are defined).
pub fn position_candidates_for(
    grid: &ExtendedParetoGrid,
    side: FunctionTag,
    line: LineParam,
) -> Result<Vec<PositionCandidate>> {
    let a = line.a();
    let b = line.b();
    let mut out = Vec::new();
    for (index, contour) in grid.contours.iter().enumerate() {
        let Some(hit) = hat_intersect(line, contour)? else {
            continue;
        };
        let w = match (hit.point.x.value(), hit.point.y.value()) {
            (Some(x), _) if a < 1.0 => {
                let factor = if a == 0.0 { 1.0 } else { (1.0f64).min((1.0 - a) / a) };
                factor * (x - b)
            }
            (_, Some(y)) if a > 0.0 => (1.0f64).min(a / (1.0 - a)) * (y + b),
            _ => continue,
        };
        out.push(PositionCandidate {
            w,
            source: ContourRef { side, index },
            intersection: hit.point,
        });
    }
    Ok(out)
}

/// Candidates merged over the two grids of a function pair.
pub fn position_candidates(
    grid1: &ExtendedParetoGrid,
    grid2: &ExtendedParetoGrid,
    line: LineParam,
) -> Result<Vec<PositionCandidate>> {
    let mut out = position_candidates_for(grid1, FunctionTag::First, line)?;
    out.extend(position_candidates_for(grid2, FunctionTag::Second, line)?);
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct PositionViolation {
    pub degree: usize,
    pub coordinate: f64,
    pub best_gap: f64,
}

/// Report of checking diagram coordinates against grid candidates.
#[derive(Clone, Debug, Default)]
pub struct PositionReport {
    pub checked: usize,
    pub violations: Vec<PositionViolation>,
}

impl PositionReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every finite coordinate of every non-trivial diagram point
/// matches some candidate `w` within `tol`. The check is containment of
/// coordinates, not a pairing: the grid may offer more candidates than the
/// diagram uses.
pub fn position_check(
    diagram: &PersistenceDiagram,
    candidates: &[PositionCandidate],
    tol: f64,
) -> PositionReport {
    let mut report = PositionReport::default();
    for point in diagram.points() {
        for coordinate in point.finite_coords() {
            report.checked += 1;
            let best_gap = candidates
                .iter()
                .map(|c| (c.w - coordinate).abs())
                .fold(f64::INFINITY, f64::min);
            // an empty candidate list leaves best_gap infinite
            if best_gap.is_nan() || best_gap > tol {
                report.violations.push(PositionViolation {
                    degree: diagram.degree(),
                    coordinate,
                    best_gap,
                });
            }
        }
    }
    report
}

//! Special and ultraspecial parameter values, the curve set of rotation
//! obstructions, and the assembly of the reduced candidate set.
//!
//! A parameter `(a, b)` is special when two different pairs of contours of
//! the merged grid produce coincident (possibly 2-scaled) coordinate gaps on
//! the filtering line; at such parameters the optimal matching between the
//! diagrams can change abruptly. Ultraspecial values have three pairwise
//! coincident gaps. Together with the zero set of the gap-gradient
//! parallelism residual (and the lines through contour endpoints) they form
//! the candidate set that supplements slope-1 lines.

mod curve_c;
mod format;
mod sample;

pub use curve_c::{curve_c_factored, curve_c_residual, ContourTangent, CurveCQuadruple};
pub use format::{load_candidates, parse_candidates, save_candidates, write_candidates};
pub use sample::{approximate_curve_c, assemble_u, sample_special_set, ParamRegion};

use crate::error::{Error, Result};
use crate::geometry::LineParam;
use crate::grid::{intersect, Contour, ContourRef, ExtendedParetoGrid, FunctionTag, Intersection};

/// The merged contour set of a function pair.
#[derive(Clone, Copy, Debug)]
pub struct GridPair<'a> {
    pub first: &'a ExtendedParetoGrid,
    pub second: &'a ExtendedParetoGrid,
}

impl<'a> GridPair<'a> {
    pub fn new(first: &'a ExtendedParetoGrid, second: &'a ExtendedParetoGrid) -> Self {
        GridPair { first, second }
    }

    pub fn contour(&self, r: ContourRef) -> &'a Contour {
        match r.side {
            FunctionTag::First => &self.first.contours[r.index],
            FunctionTag::Second => &self.second.contours[r.index],
        }
    }

    pub fn refs(&self) -> impl Iterator<Item = ContourRef> + 'a {
        let n1 = self.first.len();
        let n2 = self.second.len();
        (0..n1)
            .map(|index| ContourRef {
                side: FunctionTag::First,
                index,
            })
            .chain((0..n2).map(|index| ContourRef {
                side: FunctionTag::Second,
                index,
            }))
    }

    pub fn len(&self) -> usize {
        self.first.len() + self.second.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Canonical intersections of all merged contours with an interior line.
    pub fn intersections(&self, line: LineParam) -> Result<Vec<(ContourRef, Intersection)>> {
        let mut out = Vec::with_capacity(self.len());
        for r in self.refs() {
            if let Some(hit) = intersect(line, self.contour(r))? {
                out.push((r, hit));
            }
        }
        Ok(out)
    }
}

/// Unordered pair of distinct contours of the merged set. Overlapping
/// geometry is allowed; distinctness is by reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContourPair {
    pub a: ContourRef,
    pub b: ContourRef,
}

impl ContourPair {
    pub fn new(a: ContourRef, b: ContourRef) -> Result<Self> {
        if a == b {
            return Err(Error::Precondition(format!(
                "contour pair needs two distinct contours, got {a} twice"
            )));
        }
        Ok(if a <= b {
            ContourPair { a, b }
        } else {
            ContourPair { a: b, b: a }
        })
    }
}

impl std::fmt::Display for ContourPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Evidence that two pairs of contours are `(a,b)`-special: their scaled
/// coordinate gaps coincide within the detection tolerance.
#[derive(Clone, Debug)]
pub struct SpecialWitness {
    pub param: LineParam,
    pub pair_a: ContourPair,
    pub pair_b: ContourPair,
    /// Scaling coefficients, each 1 or 2.
    pub coeffs: (u8, u8),
    pub axis: Axis,
    pub residual: f64,
}

/// Three pairwise-distinct pairs whose scaled gaps share a common value.
#[derive(Clone, Debug)]
pub struct UltraspecialWitness {
    pub param: LineParam,
    pub pairs: [ContourPair; 3],
    pub coeffs: [u8; 3],
    pub axis: Axis,
    /// Largest pairwise gap among the three matched values.
    pub spread: f64,
}

/// `|coordinate gap|` of the two intersection points of a contour pair on
/// the given axis; `None` when either intersection is missing.
pub fn pair_gap(
    grids: &GridPair,
    line: LineParam,
    pair: ContourPair,
    axis: Axis,
) -> Result<Option<f64>> {
    let Some(p) = intersect(line, grids.contour(pair.a))? else {
        return Ok(None);
    };
    let Some(q) = intersect(line, grids.contour(pair.b))? else {
        return Ok(None);
    };
    let coord = |hit: &Intersection| match axis {
        Axis::X => hit.point.x.value(),
        Axis::Y => hit.point.y.value(),
    };
    match (coord(&p), coord(&q)) {
        (Some(u), Some(v)) => Ok(Some((u - v).abs())),
        _ => Ok(None),
    }
}

fn axes_for(a: f64) -> &'static [Axis] {
    if a < 0.5 {
        &[Axis::X]
    } else if a > 0.5 {
        &[Axis::Y]
    } else {
        &[Axis::X, Axis::Y]
    }
}

/// One scaled gap value `c·|gap|` of a contour pair.
#[derive(Clone, Copy, Debug)]
struct ScaledGap {
    value: f64,
    pair_idx: usize,
    coeff: u8,
}

struct GapTable {
    pairs: Vec<ContourPair>,
    scaled: Vec<ScaledGap>,
}

/// Gap values of all intersecting contour pairs on one axis, with both
/// coefficient scalings, sorted by scaled value.
fn gap_table(hits: &[(ContourRef, Intersection)], axis: Axis) -> GapTable {
    let coord = |hit: &Intersection| match axis {
        Axis::X => hit.point.x.value(),
        Axis::Y => hit.point.y.value(),
    };
    let mut pairs = Vec::new();
    let mut scaled = Vec::new();
    for i in 0..hits.len() {
        for j in (i + 1)..hits.len() {
            let (Some(u), Some(v)) = (coord(&hits[i].1), coord(&hits[j].1)) else {
                continue;
            };
            let gap = (u - v).abs();
            let pair_idx = pairs.len();
            pairs.push(ContourPair::new(hits[i].0, hits[j].0).expect("distinct refs"));
            for coeff in [1u8, 2u8] {
                scaled.push(ScaledGap {
                    value: coeff as f64 * gap,
                    pair_idx,
                    coeff,
                });
            }
        }
    }
    scaled.sort_by(|p, q| p.value.partial_cmp(&q.value).unwrap());
    GapTable { pairs, scaled }
}

/// All special witnesses at `(a, b)`: pairs-of-pairs with `|c₁·gapA -
/// c₂·gapB| ≤ tol` on the axis mandated by `a` (both axes at `a = 1/2`),
/// plus double-point witnesses where one intersection point lies on two
/// distinct contours.
pub fn is_special(grids: &GridPair, line: LineParam, tol: f64) -> Result<Vec<SpecialWitness>> {
    if !line.is_interior() {
        return Err(Error::BoundarySlope(line.a()));
    }
    let hits = grids.intersections(line)?;
    let mut witnesses = Vec::new();

    for &axis in axes_for(line.a()) {
        let table = gap_table(&hits, axis);
        let scaled = &table.scaled;
        for i in 0..scaled.len() {
            for j in (i + 1)..scaled.len() {
                if scaled[j].value - scaled[i].value > tol {
                    break;
                }
                if scaled[i].pair_idx == scaled[j].pair_idx {
                    continue;
                }
                witnesses.push(SpecialWitness {
                    param: line,
                    pair_a: table.pairs[scaled[i].pair_idx],
                    pair_b: table.pairs[scaled[j].pair_idx],
                    coeffs: (scaled[i].coeff, scaled[j].coeff),
                    axis,
                    residual: scaled[j].value - scaled[i].value,
                });
            }
        }
    }

    // Double points: one intersection point on two distinct contours makes
    // (a,b) special as soon as the line meets the grids somewhere else.
    for i in 0..hits.len() {
        for j in (i + 1)..hits.len() {
            let (p, q) = (hits[i].1.point, hits[j].1.point);
            let (Ok((px, py)), Ok((qx, qy))) = (p.coords(), q.coords()) else {
                continue;
            };
            if (px - qx).abs() > tol || (py - qy).abs() > tol {
                continue;
            }
            if let Some((other, _)) = hits
                .iter()
                .find(|(r, h)| *r != hits[i].0 && *r != hits[j].0 && h.point != p)
            {
                for &axis in axes_for(line.a()) {
                    witnesses.push(SpecialWitness {
                        param: line,
                        pair_a: ContourPair::new(hits[i].0, *other).unwrap(),
                        pair_b: ContourPair::new(hits[j].0, *other).unwrap(),
                        coeffs: (1, 1),
                        axis,
                        residual: 0.0,
                    });
                }
            }
        }
    }

    Ok(witnesses)
}

/// First triple of pairwise-distinct pairs whose scaled gaps share a common
/// value within `tol`, if any.
pub fn is_ultraspecial(
    grids: &GridPair,
    line: LineParam,
    tol: f64,
) -> Result<Option<UltraspecialWitness>> {
    if !line.is_interior() {
        return Err(Error::BoundarySlope(line.a()));
    }
    let hits = grids.intersections(line)?;
    for &axis in axes_for(line.a()) {
        let table = gap_table(&hits, axis);
        let scaled = &table.scaled;
        for i in 0..scaled.len() {
            let mut found: Vec<&ScaledGap> = vec![&scaled[i]];
            for item in scaled.iter().skip(i + 1) {
                if item.value - scaled[i].value > tol {
                    break;
                }
                if found.iter().all(|g| g.pair_idx != item.pair_idx) {
                    found.push(item);
                    if found.len() == 3 {
                        return Ok(Some(UltraspecialWitness {
                            param: line,
                            pairs: [
                                table.pairs[found[0].pair_idx],
                                table.pairs[found[1].pair_idx],
                                table.pairs[found[2].pair_idx],
                            ],
                            coeffs: [found[0].coeff, found[1].coeff, found[2].coeff],
                            axis,
                            spread: found[2].value - found[0].value,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Kind marker for emitted candidate-set samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateKind {
    Special,
    Ultraspecial,
    CurveC,
    EndpointFamily,
}

impl CandidateKind {
    pub fn label(&self) -> &'static str {
        match self {
            CandidateKind::Special => "special",
            CandidateKind::Ultraspecial => "ultraspecial",
            CandidateKind::CurveC => "curveC",
            CandidateKind::EndpointFamily => "endpointFamily",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "special" => Some(CandidateKind::Special),
            "ultraspecial" => Some(CandidateKind::Ultraspecial),
            "curveC" => Some(CandidateKind::CurveC),
            "endpointFamily" => Some(CandidateKind::EndpointFamily),
            _ => None,
        }
    }
}

/// A sampled point of one of the candidate sets.
#[derive(Clone, Debug)]
pub struct CandidatePoint {
    pub param: LineParam,
    pub kind: CandidateKind,
    pub residual: f64,
    pub contours: Vec<ContourRef>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Contour;

    fn line(a: f64, b: f64) -> LineParam {
        LineParam::new(a, b).unwrap()
    }

    /// Three equidistant parallel vertical improper contours.
    fn parallel_grids() -> (ExtendedParetoGrid, ExtendedParetoGrid) {
        let g1 = ExtendedParetoGrid::new(vec![
            Contour::improper_vertical(0.0, -10.0, FunctionTag::First),
            Contour::improper_vertical(1.0, -10.0, FunctionTag::First),
        ]);
        let g2 = ExtendedParetoGrid::new(vec![Contour::improper_vertical(
            2.0,
            -10.0,
            FunctionTag::Second,
        )]);
        (g1, g2)
    }

    #[test]
    fn pair_gap_of_vertical_contours_is_line_independent() {
        let g1 = ExtendedParetoGrid::new(vec![
            Contour::improper_vertical(1.0, -100.0, FunctionTag::First),
            Contour::improper_vertical(3.0, -100.0, FunctionTag::First),
        ]);
        let g2 = ExtendedParetoGrid::default();
        let grids = GridPair::new(&g1, &g2);
        let pair = ContourPair::new(
            ContourRef {
                side: FunctionTag::First,
                index: 0,
            },
            ContourRef {
                side: FunctionTag::First,
                index: 1,
            },
        )
        .unwrap();
        for (a, b) in [(0.3, 0.0), (0.5, 1.0), (0.7, -2.0)] {
            let gap = pair_gap(&grids, line(a, b), pair, Axis::X).unwrap().unwrap();
            assert!((gap - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pair_gap_missing_intersection_is_none() {
        let g1 = ExtendedParetoGrid::new(vec![
            Contour::improper_vertical(1.0, -10.0, FunctionTag::First),
            Contour::improper_vertical(3.0, 1000.0, FunctionTag::First),
        ]);
        let g2 = ExtendedParetoGrid::default();
        let grids = GridPair::new(&g1, &g2);
        let pair = ContourPair::new(
            ContourRef {
                side: FunctionTag::First,
                index: 0,
            },
            ContourRef {
                side: FunctionTag::First,
                index: 1,
            },
        )
        .unwrap();
        assert!(pair_gap(&grids, line(0.5, 0.0), pair, Axis::X)
            .unwrap()
            .is_none());
    }

    #[test]
    fn three_parallel_contours_are_special_and_ultraspecial() {
        let (g1, g2) = parallel_grids();
        let grids = GridPair::new(&g1, &g2);
        for (a, b) in [(0.3, 0.0), (0.5, 0.5), (0.7, -0.3)] {
            let w = is_special(&grids, line(a, b), 1e-9).unwrap();
            // dist(1,2) = dist(2,3) and dist(1,3) = 2 dist(1,2)
            assert!(!w.is_empty());
            assert!(w
                .iter()
                .any(|x| x.coeffs == (1, 1) && x.residual == 0.0));
            assert!(w.iter().any(|x| x.coeffs.0 != x.coeffs.1));
            let u = is_ultraspecial(&grids, line(a, b), 1e-9).unwrap();
            let u = u.expect("equidistant contours are ultraspecial");
            assert_eq!(u.spread, 0.0);
        }
    }

    #[test]
    fn distinct_gaps_are_not_special() {
        let g1 = ExtendedParetoGrid::new(vec![
            Contour::improper_vertical(0.0, -10.0, FunctionTag::First),
            Contour::improper_vertical(1.0, -10.0, FunctionTag::First),
            Contour::improper_vertical(4.5, -10.0, FunctionTag::First),
        ]);
        let g2 = ExtendedParetoGrid::default();
        let grids = GridPair::new(&g1, &g2);
        // gaps 1, 3.5, 4.5; scaled {1,2,3.5,4.5,7,9}: all distinct
        let w = is_special(&grids, line(0.4, 0.0), 1e-9).unwrap();
        assert!(w.is_empty());
        assert!(is_ultraspecial(&grids, line(0.4, 0.0), 1e-9)
            .unwrap()
            .is_none());
    }

    #[test]
    fn double_point_is_special() {
        // a proper contour ending exactly on a vertical improper contour,
        // plus a third contour so the line meets the grid elsewhere
        let g1 = ExtendedParetoGrid::new(vec![
            Contour::proper(vec![(0.0, 2.0), (1.0, 1.0)], FunctionTag::First).unwrap(),
            Contour::improper_vertical(1.0, 1.0, FunctionTag::First),
        ]);
        let g2 = ExtendedParetoGrid::new(vec![Contour::improper_vertical(
            5.0,
            -100.0,
            FunctionTag::Second,
        )]);
        let grids = GridPair::new(&g1, &g2);
        // slope-1 line through (1,1): both contours meet it at (1,1)
        let w = is_special(&grids, line(0.5, 0.0), 1e-9).unwrap();
        assert!(w.iter().any(|x| x.residual == 0.0));
    }

    #[test]
    fn ultraspecial_implies_at_least_three_special_witnesses() {
        let (g1, g2) = parallel_grids();
        let grids = GridPair::new(&g1, &g2);
        let l = line(0.35, 0.2);
        if is_ultraspecial(&grids, l, 1e-9).unwrap().is_some() {
            let w = is_special(&grids, l, 1e-9).unwrap();
            assert!(w.len() >= 3, "got {} witnesses", w.len());
        }
    }
}

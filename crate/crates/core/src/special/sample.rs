//! Sampled approximations of the special set, the ultraspecial set, the
//! rotation-obstruction curve set and their union `U`.
//!
//! The continuous sets are loci in the `(a, b)` strip; the samplers scan a
//! rectangular grid, keep the cells where the defining predicate fires (with
//! one bisection refinement around special hits) and detect the curve set as
//! the sign-change cells of the tangent-model residual, one quadruple of
//! contours at a time. Endpoint crossings contribute one closed-form
//! parameter family per proper-contour endpoint.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{line_through, ExtendedPoint, LineParam};
use crate::grid::{intersect, ContourRef, Intersection};
use crate::special::curve_c::ContourTangent;
use crate::special::{is_special, is_ultraspecial, CandidateKind, CandidatePoint, GridPair};

/// Rectangle in the `(a, b)` parameter strip.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamRegion {
    pub a_min: f64,
    pub a_max: f64,
    pub b_min: f64,
    pub b_max: f64,
}

impl ParamRegion {
    pub fn new(a_min: f64, a_max: f64, b_min: f64, b_max: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a_min) || !(0.0..=1.0).contains(&a_max) || a_min > a_max {
            return Err(Error::Precondition(format!(
                "invalid slope range [{a_min}, {a_max}]"
            )));
        }
        if !b_min.is_finite() || !b_max.is_finite() || b_min > b_max {
            return Err(Error::Precondition(format!(
                "invalid offset range [{b_min}, {b_max}]"
            )));
        }
        Ok(ParamRegion {
            a_min,
            a_max,
            b_min,
            b_max,
        })
    }

    /// The full strip over `[-cbar, cbar]`.
    pub fn strip(cbar: f64) -> Self {
        ParamRegion {
            a_min: 0.0,
            a_max: 1.0,
            b_min: -cbar,
            b_max: cbar,
        }
    }

    /// The strip with a slope margin excluding the boundary values.
    pub fn interior(cbar: f64, margin: f64) -> Self {
        ParamRegion {
            a_min: margin,
            a_max: 1.0 - margin,
            b_min: -cbar,
            b_max: cbar,
        }
    }

    pub fn contains(&self, a: f64, b: f64) -> bool {
        (self.a_min..=self.a_max).contains(&a) && (self.b_min..=self.b_max).contains(&b)
    }
}

/// Uniform sampling lattice over a region.
#[derive(Clone, Copy, Debug)]
struct Lattice {
    region: ParamRegion,
    na: usize,
    nb: usize,
}

impl Lattice {
    fn new(region: ParamRegion, resolution: (usize, usize)) -> Result<Self> {
        let (na, nb) = resolution;
        if na < 2 || nb < 2 {
            return Err(Error::Precondition(format!(
                "sampling resolution ({na}, {nb}) must be at least 2 per axis"
            )));
        }
        Ok(Lattice {
            region,
            na,
            nb,
        })
    }

    fn a_at(&self, i: usize) -> f64 {
        self.region.a_min
            + (self.region.a_max - self.region.a_min) * i as f64 / (self.na - 1) as f64
    }

    fn b_at(&self, j: usize) -> f64 {
        self.region.b_min
            + (self.region.b_max - self.region.b_min) * j as f64 / (self.nb - 1) as f64
    }

    fn da(&self) -> f64 {
        (self.region.a_max - self.region.a_min) / (self.na - 1) as f64
    }

    fn db(&self) -> f64 {
        (self.region.b_max - self.region.b_min) / (self.nb - 1) as f64
    }

    fn cells(&self) -> usize {
        self.na * self.nb
    }

    fn split(&self, cell: usize) -> (usize, usize) {
        (cell / self.nb, cell % self.nb)
    }

    fn line(&self, cell: usize) -> LineParam {
        let (i, j) = self.split(cell);
        LineParam::new(self.a_at(i), self.b_at(j)).expect("lattice stays in range")
    }
}

fn require_interior(region: &ParamRegion) -> Result<()> {
    if region.a_min <= 0.0 || region.a_max >= 1.0 {
        return Err(Error::Precondition(format!(
            "special-set sampling needs a strictly interior slope range, got [{}, {}]",
            region.a_min, region.a_max
        )));
    }
    Ok(())
}

fn dedup_candidates(mut points: Vec<CandidatePoint>) -> Vec<CandidatePoint> {
    points.sort_by(|p, q| {
        let ka = (p.param.a(), p.param.b(), p.kind.label());
        let kb = (q.param.a(), q.param.b(), q.kind.label());
        ka.partial_cmp(&kb).unwrap()
    });
    points.dedup_by(|p, q| {
        p.param.a() == q.param.a() && p.param.b() == q.param.b() && p.kind == q.kind
    });
    points
}

fn special_candidate(grids: &GridPair, line: LineParam, tol: f64) -> Option<CandidatePoint> {
    let witnesses = is_special(grids, line, tol).ok()?;
    let best = witnesses
        .into_iter()
        .min_by(|u, v| u.residual.partial_cmp(&v.residual).unwrap())?;
    Some(CandidatePoint {
        param: line,
        kind: CandidateKind::Special,
        residual: best.residual,
        contours: vec![best.pair_a.a, best.pair_a.b, best.pair_b.a, best.pair_b.b],
    })
}

/// Grid scan of the special set: keeps parameters where some witness fires,
/// then refines each hit by one bisection step along each axis.
pub fn sample_special_set(
    grids: &GridPair,
    region: ParamRegion,
    resolution: (usize, usize),
    tol: f64,
) -> Result<Vec<CandidatePoint>> {
    require_interior(&region)?;
    let lattice = Lattice::new(region, resolution)?;

    let hits: Vec<CandidatePoint> = (0..lattice.cells())
        .into_par_iter()
        .filter_map(|cell| special_candidate(grids, lattice.line(cell), tol))
        .collect();

    let (da, db) = (lattice.da() / 2.0, lattice.db() / 2.0);
    let refined: Vec<CandidatePoint> = hits
        .par_iter()
        .flat_map_iter(|hit| {
            let (a, b) = (hit.param.a(), hit.param.b());
            [(a - da, b), (a + da, b), (a, b - db), (a, b + db)]
                .into_iter()
                .filter(|&(a2, b2)| region.contains(a2, b2) && a2 > 0.0 && a2 < 1.0)
                .filter_map(|(a2, b2)| {
                    special_candidate(grids, LineParam::new(a2, b2).ok()?, tol)
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let mut all = hits;
    all.extend(refined);
    Ok(dedup_candidates(all))
}

/// Ultraspecial cells of the lattice.
fn sample_ultraspecial(
    grids: &GridPair,
    lattice: &Lattice,
    tol: f64,
) -> Vec<CandidatePoint> {
    (0..lattice.cells())
        .into_par_iter()
        .filter_map(|cell| {
            let line = lattice.line(cell);
            let w = is_ultraspecial(grids, line, tol).ok()??;
            let mut contours: Vec<ContourRef> = w
                .pairs
                .iter()
                .flat_map(|p| [p.a, p.b])
                .collect();
            contours.dedup();
            Some(CandidatePoint {
                param: line,
                kind: CandidateKind::Ultraspecial,
                residual: w.spread,
                contours,
            })
        })
        .collect()
}

/// Tangent data of every merged contour at one lattice cell, or `None`
/// where the contour misses the line (or the intersection degenerates).
fn tangent_at(
    grids: &GridPair,
    r: ContourRef,
    line: LineParam,
) -> Option<ContourTangent> {
    let contour = grids.contour(r);
    let hit: Intersection = intersect(line, contour).ok()??;
    let ExtendedPoint { x, y } = hit.point;
    let anchor = (x.value()?, y.value()?);
    let dir = contour.tangent(hit.segment.unwrap_or(0));
    ContourTangent::new(dir, anchor).ok()
}

/// Per-pair linear gap value and its partial derivatives on the lattice.
struct PairField {
    /// `pair index * cells + cell`; NaN where undefined.
    value: Vec<f64>,
    grad_a: Vec<f64>,
    grad_b: Vec<f64>,
    pairs: Vec<(ContourRef, ContourRef)>,
}

fn pair_fields(grids: &GridPair, lattice: &Lattice) -> PairField {
    let refs: Vec<ContourRef> = grids.refs().collect();
    let n = refs.len();
    let cells = lattice.cells();

    // per-contour location fields under the tangent model
    let mut loc: Vec<(f64, f64, f64)> = vec![(f64::NAN, f64::NAN, f64::NAN); n * cells];
    let rows: Vec<Vec<(f64, f64, f64)>> = (0..cells)
        .into_par_iter()
        .map(|cell| {
            let line = lattice.line(cell);
            let use_x = line.a() <= 0.5;
            refs.iter()
                .map(|&r| {
                    let Some(t) = tangent_at(grids, r, line) else {
                        return (f64::NAN, f64::NAN, f64::NAN);
                    };
                    let (s, tt) = (t.dir.s, t.dir.t);
                    let n_hat = s * t.anchor.0 - tt * t.anchor.1;
                    let k_hat = s + tt;
                    let d_hat = line.a() * k_hat - tt;
                    if d_hat.abs() < 1e-12 {
                        return (f64::NAN, f64::NAN, f64::NAN);
                    }
                    let (a, b) = (line.a(), line.b());
                    if use_x {
                        (
                            (n_hat * a - tt * b) / d_hat,
                            tt * (b * k_hat - n_hat) / (d_hat * d_hat),
                            -tt / d_hat,
                        )
                    } else {
                        (
                            ((1.0 - a) * n_hat - b * s) / d_hat,
                            s * (b * k_hat - n_hat) / (d_hat * d_hat),
                            -s / d_hat,
                        )
                    }
                })
                .collect()
        })
        .collect();
    for (cell, row) in rows.into_iter().enumerate() {
        for (k, v) in row.into_iter().enumerate() {
            loc[k * cells + cell] = v;
        }
    }

    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((refs[i], refs[j]));
        }
    }
    let mut value = vec![f64::NAN; pairs.len() * cells];
    let mut grad_a = vec![f64::NAN; pairs.len() * cells];
    let mut grad_b = vec![f64::NAN; pairs.len() * cells];
    let mut pair_idx = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for cell in 0..cells {
                let (vi, ai, bi) = loc[i * cells + cell];
                let (vj, aj, bj) = loc[j * cells + cell];
                value[pair_idx * cells + cell] = vi - vj;
                grad_a[pair_idx * cells + cell] = ai - aj;
                grad_b[pair_idx * cells + cell] = bi - bj;
            }
            pair_idx += 1;
        }
    }
    PairField {
        value,
        grad_a,
        grad_b,
        pairs,
    }
}

/// Sign-change cells of the residual over all admissible quadruples, as a
/// per-cell flag with the smallest attained |residual|.
fn curve_zero_cells(fields: &PairField, lattice: &Lattice) -> Vec<f64> {
    let cells = lattice.cells();
    let np = fields.pairs.len();
    let quad_marks: Vec<Vec<(u32, f64)>> = (0..np)
        .into_par_iter()
        .map(|p| {
            let mut marks: Vec<(u32, f64)> = Vec::new();
            for q in (p + 1)..np {
                let f = &fields.value[p * cells..(p + 1) * cells];
                let g = &fields.value[q * cells..(q + 1) * cells];
                let fa = &fields.grad_a[p * cells..(p + 1) * cells];
                let ga = &fields.grad_a[q * cells..(q + 1) * cells];
                let fb = &fields.grad_b[p * cells..(p + 1) * cells];
                let gb = &fields.grad_b[q * cells..(q + 1) * cells];
                let residual =
                    |c: usize| f[c] * g[c] * (ga[c] * fb[c] - fa[c] * gb[c]);
                for i in 0..lattice.na {
                    for j in 0..lattice.nb {
                        let c = i * lattice.nb + j;
                        let r = residual(c);
                        if r == 0.0 {
                            marks.push((c as u32, 0.0));
                            continue;
                        }
                        // right and upper neighbours within the same form
                        let mut check = |c2: usize, same_form: bool| {
                            if !same_form {
                                return;
                            }
                            let r2 = residual(c2);
                            if (r > 0.0 && r2 < 0.0) || (r < 0.0 && r2 > 0.0) {
                                marks.push((c as u32, r.abs().min(r2.abs())));
                                marks.push((c2 as u32, r.abs().min(r2.abs())));
                            }
                        };
                        if j + 1 < lattice.nb {
                            check(c + 1, true);
                        }
                        if i + 1 < lattice.na {
                            let same =
                                (lattice.a_at(i) <= 0.5) == (lattice.a_at(i + 1) <= 0.5);
                            check(c + lattice.nb, same);
                        }
                    }
                }
            }
            marks
        })
        .collect();

    let mut best = vec![f64::INFINITY; cells];
    for marks in quad_marks {
        for (cell, r) in marks {
            let cell = cell as usize;
            if r < best[cell] {
                best[cell] = r;
            }
        }
    }
    best
}

/// Parameter families of lines through proper-contour endpoints, sampled
/// over the slope grid: `b(a) = (1-a)·x_P - a·y_P`.
fn endpoint_families(
    grids: &GridPair,
    lattice: &Lattice,
) -> Vec<CandidatePoint> {
    let mut out = Vec::new();
    for r in grids.refs() {
        let Some(endpoints) = grids.contour(r).endpoints() else {
            continue;
        };
        for p in endpoints {
            for i in 0..lattice.na {
                let a = lattice.a_at(i);
                let Ok(line) = line_through(a, ExtendedPoint::finite(p.0, p.1)) else {
                    continue;
                };
                if lattice.region.contains(a, line.b()) {
                    out.push(CandidatePoint {
                        param: line,
                        kind: CandidateKind::EndpointFamily,
                        residual: 0.0,
                        contours: vec![r],
                    });
                }
            }
        }
    }
    out
}

/// Sampled approximation of the rotation-obstruction curve set: sign-change
/// cells of the tangent-model residual over all admissible quadruples, plus
/// the endpoint families.
pub fn approximate_curve_c(
    grids: &GridPair,
    region: ParamRegion,
    resolution: (usize, usize),
) -> Result<Vec<CandidatePoint>> {
    require_interior(&region)?;
    let lattice = Lattice::new(region, resolution)?;
    let fields = pair_fields(grids, &lattice);
    let zero = curve_zero_cells(&fields, &lattice);

    let mut out: Vec<CandidatePoint> = zero
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_finite())
        .map(|(cell, &r)| CandidatePoint {
            param: lattice.line(cell),
            kind: CandidateKind::CurveC,
            residual: r,
            contours: Vec::new(),
        })
        .collect();
    out.extend(endpoint_families(grids, &lattice));
    Ok(dedup_candidates(out))
}

/// The candidate set `U = USp ∪ (C ∩ Sp)`, intersected at the sampling-cell
/// level.
pub fn assemble_u(
    grids: &GridPair,
    region: ParamRegion,
    resolution: (usize, usize),
    tol: f64,
) -> Result<Vec<CandidatePoint>> {
    require_interior(&region)?;
    let lattice = Lattice::new(region, resolution)?;

    let special: Vec<Option<CandidatePoint>> = (0..lattice.cells())
        .into_par_iter()
        .map(|cell| special_candidate(grids, lattice.line(cell), tol))
        .collect();

    let ultra = sample_ultraspecial(grids, &lattice, tol);

    let fields = pair_fields(grids, &lattice);
    let zero = curve_zero_cells(&fields, &lattice);
    let mut curve_mask: Vec<Option<CandidateKind>> = zero
        .iter()
        .map(|r| r.is_finite().then_some(CandidateKind::CurveC))
        .collect();
    for p in endpoint_families(grids, &lattice) {
        let j = ((p.param.b() - region.b_min) / lattice.db()).round() as isize;
        let i = ((p.param.a() - region.a_min) / lattice.da()).round() as isize;
        if i >= 0 && (i as usize) < lattice.na && j >= 0 && (j as usize) < lattice.nb {
            let cell = i as usize * lattice.nb + j as usize;
            curve_mask[cell].get_or_insert(CandidateKind::EndpointFamily);
        }
    }

    let mut out: Vec<CandidatePoint> = ultra;
    for (cell, kind) in curve_mask.iter().enumerate() {
        let (Some(kind), Some(sp)) = (kind, &special[cell]) else {
            continue;
        };
        out.push(CandidatePoint {
            param: sp.param,
            kind: *kind,
            residual: sp.residual,
            contours: sp.contours.clone(),
        });
    }
    Ok(dedup_candidates(out))
}

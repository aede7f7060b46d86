//! Persistence diagrams, the extended metric on cornerpoints, persistent
//! Betti numbers reconstruction and multiplicity boxes.

mod bottleneck;
mod format;

pub use bottleneck::{bottleneck, InfiniteCostReason, Matching};
pub use format::{load_diagrams, parse_diagrams, save_diagrams, write_diagrams};

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::ExtendedReal;

/// A cornerpoint of a persistence diagram.
///
/// `Proper` points have finite birth and death with `birth < death`,
/// `Essential` points never die, and `Delta` is the trivial cornerpoint on
/// the diagonal. `Delta` carries conventional multiplicity infinity; it is a
/// marker used in matchings and is never enumerated inside a diagram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PointKind {
    Proper { birth: f64, death: f64 },
    Essential { birth: f64 },
    Delta,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagramPoint {
    pub kind: PointKind,
    pub multiplicity: u32,
}

impl DiagramPoint {
    /// A proper cornerpoint; requires `birth < death`, both finite.
    pub fn proper(birth: f64, death: f64, multiplicity: u32) -> Self {
        assert!(
            birth.is_finite() && death.is_finite() && birth < death,
            "proper cornerpoint requires finite birth < death, got ({birth}, {death})"
        );
        assert!(multiplicity > 0);
        DiagramPoint {
            kind: PointKind::Proper { birth, death },
            multiplicity,
        }
    }

    /// An essential cornerpoint `(birth, ∞)`.
    pub fn essential(birth: f64, multiplicity: u32) -> Self {
        assert!(birth.is_finite() && multiplicity > 0);
        DiagramPoint {
            kind: PointKind::Essential { birth },
            multiplicity,
        }
    }

    pub fn delta() -> Self {
        DiagramPoint {
            kind: PointKind::Delta,
            multiplicity: 1,
        }
    }

    pub fn is_delta(&self) -> bool {
        matches!(self.kind, PointKind::Delta)
    }

    pub fn birth(&self) -> Option<f64> {
        match self.kind {
            PointKind::Proper { birth, .. } | PointKind::Essential { birth } => Some(birth),
            PointKind::Delta => None,
        }
    }

    pub fn death(&self) -> Option<ExtendedReal> {
        match self.kind {
            PointKind::Proper { death, .. } => Some(ExtendedReal::finite(death)),
            PointKind::Essential { .. } => Some(ExtendedReal::Infinite),
            PointKind::Delta => None,
        }
    }

    /// The finite coordinates of the point (birth, and death when proper).
    pub fn finite_coords(&self) -> Vec<f64> {
        match self.kind {
            PointKind::Proper { birth, death } => vec![birth, death],
            PointKind::Essential { birth } => vec![birth],
            PointKind::Delta => vec![],
        }
    }

    fn with_multiplicity(&self, multiplicity: u32) -> Self {
        DiagramPoint {
            kind: self.kind,
            multiplicity,
        }
    }

    fn sort_key(&self) -> (u8, f64, f64) {
        match self.kind {
            PointKind::Proper { birth, death } => (0, birth, death),
            PointKind::Essential { birth } => (1, birth, f64::INFINITY),
            PointKind::Delta => (2, f64::INFINITY, f64::INFINITY),
        }
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        let a = self.sort_key();
        let b = other.sort_key();
        a.0.cmp(&b.0)
            .then(a.1.partial_cmp(&b.1).unwrap())
            .then(a.2.partial_cmp(&b.2).unwrap())
    }
}

impl fmt::Display for DiagramPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PointKind::Proper { birth, death } => write!(f, "({birth}, {death})")?,
            PointKind::Essential { birth } => write!(f, "({birth}, inf)")?,
            PointKind::Delta => write!(f, "delta")?,
        }
        if self.multiplicity != 1 {
            write!(f, "x{}", self.multiplicity)?;
        }
        Ok(())
    }
}

/// The extended metric on cornerpoints.
///
/// Proper-proper distances take `min{max{|u-u'|, |v-v'|}, max{(v-u)/2,
/// (v'-u')/2}}`, essential points compare by birth, a proper point is half
/// its persistence away from `Delta`, and every essential/proper or
/// essential/`Delta` pairing is at infinite distance.
pub fn point_distance(p: &DiagramPoint, q: &DiagramPoint) -> ExtendedReal {
    use PointKind::*;
    match (p.kind, q.kind) {
        (
            Proper {
                birth: u,
                death: v,
            },
            Proper {
                birth: u2,
                death: v2,
            },
        ) => {
            let shift = (u - u2).abs().max((v - v2).abs());
            let collapse = ((v - u) / 2.0).max((v2 - u2) / 2.0);
            ExtendedReal::finite(shift.min(collapse))
        }
        (Essential { birth: u }, Essential { birth: u2 }) => ExtendedReal::finite((u - u2).abs()),
        (Proper { birth, death }, Delta) | (Delta, Proper { birth, death }) => {
            ExtendedReal::finite((death - birth) / 2.0)
        }
        (Delta, Delta) => ExtendedReal::finite(0.0),
        _ => ExtendedReal::Infinite,
    }
}

/// A persistence diagram in a fixed homology degree: a finite multiset of
/// cornerpoints. The trivial cornerpoint `Delta` is implicitly present in
/// every diagram. Zero-persistence pairs are dropped at construction since
/// they coincide with `Delta`.
#[derive(Clone, Debug, PartialEq)]
pub struct PersistenceDiagram {
    degree: usize,
    points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    /// Builds a diagram, dropping zero-persistence pairs, merging equal
    /// points into multiplicities and sorting.
    pub fn new(degree: usize, points: impl IntoIterator<Item = DiagramPoint>) -> Self {
        let mut pts: Vec<DiagramPoint> = points
            .into_iter()
            .filter(|p| !p.is_delta())
            .collect();
        pts.sort_by(|a, b| a.cmp_key(b));
        let mut merged: Vec<DiagramPoint> = Vec::with_capacity(pts.len());
        for p in pts {
            match merged.last_mut() {
                Some(last) if last.kind == p.kind => last.multiplicity += p.multiplicity,
                _ => merged.push(p),
            }
        }
        PersistenceDiagram {
            degree,
            points: merged,
        }
    }

    pub fn empty(degree: usize) -> Self {
        PersistenceDiagram {
            degree,
            points: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Distinct cornerpoints with multiplicities.
    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One entry per multiplicity copy.
    pub fn expanded(&self) -> impl Iterator<Item = DiagramPoint> + '_ {
        self.points
            .iter()
            .flat_map(|p| (0..p.multiplicity).map(move |_| p.with_multiplicity(1)))
    }

    /// Total essential multiplicity.
    pub fn essential_count(&self) -> u64 {
        self.points
            .iter()
            .filter(|p| matches!(p.kind, PointKind::Essential { .. }))
            .map(|p| p.multiplicity as u64)
            .sum()
    }

    pub fn proper_count(&self) -> u64 {
        self.points
            .iter()
            .filter(|p| matches!(p.kind, PointKind::Proper { .. }))
            .map(|p| p.multiplicity as u64)
            .sum()
    }

    /// Persistent Betti number reconstructed by point counting: cornerpoints
    /// born no later than `u` and dying strictly after `v`.
    pub fn pbnf(&self, u: f64, v: f64) -> Result<u64> {
        if u >= v {
            return Err(Error::Precondition(format!(
                "pbnf requires u < v, got ({u}, {v})"
            )));
        }
        let mut count = 0u64;
        for p in &self.points {
            let alive = match p.kind {
                PointKind::Proper { birth, death } => birth <= u && death > v,
                PointKind::Essential { birth } => birth <= u,
                PointKind::Delta => false,
            };
            if alive {
                count += p.multiplicity as u64;
            }
        }
        Ok(count)
    }

    /// Total multiplicity of the `eps`-box centered at `(u, v)`: the
    /// four-term alternating sum of persistent Betti numbers.
    pub fn multiplicity_box(&self, u: f64, v: f64, eps: f64) -> Result<i64> {
        if eps <= 0.0 || u + eps >= v - eps {
            return Err(Error::Precondition(format!(
                "multiplicity box requires eps > 0 and u + eps < v - eps, got (u={u}, v={v}, eps={eps})"
            )));
        }
        let b = |x, y| self.pbnf(x, y).map(|n| n as i64);
        Ok(b(u + eps, v - eps)? - b(u - eps, v - eps)? + b(u - eps, v + eps)?
            - b(u + eps, v + eps)?)
    }
}

/// Free-function form of [`PersistenceDiagram::pbnf`].
pub fn pbnf_from_diagram(d: &PersistenceDiagram, u: f64, v: f64) -> Result<u64> {
    d.pbnf(u, v)
}

/// Free-function form of [`PersistenceDiagram::multiplicity_box`].
pub fn multiplicity_box(d: &PersistenceDiagram, u: f64, v: f64, eps: f64) -> Result<i64> {
    d.multiplicity_box(u, v, eps)
}

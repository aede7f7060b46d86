//! Matching distance between 2-parameter sublevel-set filtrations.
//!
//! A 2-parameter filtering function is restricted to the family of filtering
//! lines `r_(a,b)` of positive slope (the foliation method). Every line yields
//! a 1-parameter persistence diagram, and the matching distance between two
//! functions is the supremum over lines of the bottleneck distance between the
//! corresponding diagrams.
//!
//! The crate provides:
//!
//! * exact bottleneck distances with an optimal matching ([`diagram`]),
//! * persistence of bifiltered simplicial complexes along filtering lines
//!   ([`complex`]),
//! * extended Pareto grids, the extended intersection operator and the
//!   grid-based prediction of diagram coordinates ([`grid`]),
//! * detection of special and ultraspecial parameter values and the curve set
//!   that obstructs rotations of the filtering line ([`special`]),
//! * matching-distance estimators over the full parameter strip and over the
//!   reduced candidate set of slope-1 lines plus special values
//!   ([`estimate`]).

pub mod complex;
pub mod diagram;
pub mod error;
pub mod estimate;
pub mod geometry;
pub mod grid;
pub mod special;
pub mod util;

pub use complex::BifilteredComplex;
pub use diagram::{DiagramPoint, Matching, PersistenceDiagram};
pub use error::Error;
pub use estimate::{EstimateReport, EstimatorConfig};
pub use geometry::{ExtendedPoint, ExtendedReal, LineParam, RotationSegment};
pub use grid::{Contour, ExtendedParetoGrid, PositionCandidate};
pub use special::{CandidateKind, CandidatePoint, GridPair};

//! Extended-real arithmetic, filtering-line parameters and the one-parameter
//! restriction formulas of the foliation method.

mod extended;
mod line;

pub use extended::{ExtendedPoint, ExtendedReal};
pub use line::{
    line_through, normalized_value, restrict_value, LineParam, RotationKind, RotationSegment,
};

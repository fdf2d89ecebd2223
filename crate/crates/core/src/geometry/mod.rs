//! Charts, vector fields, shifted (anti)cotangent bundles and their canonical brackets.

mod chart;
mod cotangent;
mod vector_field;

pub use chart::Chart;
pub(crate) use cotangent::bracket_raw;
pub use cotangent::{
    canonical_bracket, restrict_to_base, shifted_anticotangent, shifted_cotangent, transfer_fiber, CotangentChart,
    FiberKind,
};
pub use vector_field::VectorField;

use crate::error::Result;

pub fn commutator(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    x.commutator(y)
}

pub fn is_homological(q: &VectorField) -> bool {
    q.is_homological()
}

//! Exact arithmetic over supercommuting variables graded by parity and weight.

mod expr;
mod series;
mod var;

pub use expr::{parse_series, parse_series_at};
pub(crate) use series::sign_of;
pub use series::{normalize_product, rat, ratio, Monomial, Rational, Series, Term};
pub use var::{Bigrading, GradedVariable, Parity, Weight};

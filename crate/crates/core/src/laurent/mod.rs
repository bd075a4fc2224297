//! Exact arithmetic on rational functions in `u = L^{1/r}`.

mod expansion;
mod motive;
mod poly;
mod text;

pub use expansion::{expand, poincare, LaurentExpansion, PoincareSeries};
pub use motive::{Degree, MotiveValue};
pub use poly::Poly;
pub use text::parse_motive;

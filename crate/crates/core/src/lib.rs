//! Exact stringy motives of log terminal surface singularities with finite
//! group actions, computed from resolution dual graphs.

pub mod catalog;
pub mod dcc;
pub mod dualgraph;
pub mod equivariant;
pub mod error;
pub mod laurent;
pub mod stringy;

pub use error::{Error, Result};
pub use laurent::{Degree, LaurentExpansion, MotiveValue, PoincareSeries};

//! Exact combinatorics of extended affine Weyl groups.

pub mod error;
pub mod poly;
pub mod root_system;
pub mod weyl;
pub mod admissible;
pub mod poincare;
pub mod kumar;
pub mod charts;
pub mod cli;

pub use error::{Error, Result};
pub use poly::{MultiPoly, QPoly, Rat};
pub use root_system::{AffineRoot, Family, RootDatum};
pub use weyl::{Weyl, WeylElt};
pub use admissible::{EnhancedCoxeterDatum, IntersectionMax};

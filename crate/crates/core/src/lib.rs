//! Dirac particle in the field of a magnetic monopole on anti-de Sitter space.
//!
//! Units are ħ = c = curvature radius = 1 throughout, except in `flat_limit`
//! and in the usual-units helpers of `spectrum`.

pub mod angular;
pub mod dual;
pub mod error;
pub mod fd;
pub mod field_check;
pub mod flat_limit;
pub mod hypergeom;
pub mod ode;
pub mod radial_exact;
pub mod radial_numeric;
pub mod spectrum;
pub mod tolerances;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

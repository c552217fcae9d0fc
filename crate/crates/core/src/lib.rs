//! Interpolation Jack and Macdonald polynomials of types A and BC with exact
//! arithmetic: binomial and Littlewood-Richardson coefficients by several
//! independent routes, and checkers for their positivity properties.

pub mod coefficients;
pub mod error;
pub mod exactalg;
pub mod families;
pub mod interpolation;
pub mod partitions;
pub mod positivity;

pub use error::{Error, Result};
pub use exactalg::{MPoly, RationalFunction, Var};
pub use families::{Family, FamilyConfig};
pub use partitions::{Cell, Partition, SaturatedChain};

//! Exact arithmetic: integer polynomials in the parameter variables,
//! canonical rational functions, and positivity-cone certification.

pub mod cone;
pub mod gcd;
pub mod mpoly;
pub mod ratfunc;

pub use cone::{cone_check, CertBudget, Certificate, Cone, PositivityVerdict, Status, Witness};
pub use gcd::{gcd, gcd_cofactors};
pub use mpoly::{MPoly, Monomial, Var, NVARS};
pub use ratfunc::RationalFunction;

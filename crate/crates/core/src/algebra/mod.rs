//! Exact arithmetic: integer matrices, univariate and Laurent polynomials,
//! and cyclotomic fields.

pub mod cyclo;
pub mod laurent;
pub mod matrix;
pub mod unipoly;

pub use cyclo::{cyclo_rank, laurent_substitute_subtorus, CycloField, CycloNumber, CycloPoly};
pub use laurent::{multivariate_minor_gcd, LaurentPoly};
pub use matrix::{elementary_divisors, is_prime, smith_normal_form, IntMatrix, SnfResult};
pub use unipoly::{cyclotomic_poly, euler_phi, integer_char_poly, UniPoly};

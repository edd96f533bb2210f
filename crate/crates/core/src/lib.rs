//! Alexander matrices, strata and polynomials of finitely presented groups,
//! first Betti numbers of finite abelian covers, and largeness certificates.
//!
//! ```
//! use alexlarge::covers::{betti_via_oracle, betti_via_strata};
//! use alexlarge::fox::alexander_polynomial;
//! use alexlarge::presentation::{make_quotient, Presentation};
//!
//! let p: Presentation = "< a, b | a b a b^-1 a^-1 b^-1 >".parse()?;
//! assert_eq!(alexander_polynomial(&p).term_strings(), ["1*t^2", "-1*t^1", "1*t^0"]);
//! let q = make_quotient(&p, &[vec![1], vec![1]], &[6])?;
//! assert_eq!(betti_via_strata(&p, &q)?, 3);
//! assert_eq!(betti_via_oracle(&p, &q), 3);
//! # Ok::<(), alexlarge::Error>(())
//! ```

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod covers;
pub mod error;
pub mod fox;
pub mod largeness;
pub mod presentation;

pub use error::{Error, Result};

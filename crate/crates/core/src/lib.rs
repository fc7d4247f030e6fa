//! Exact q-series engine for orbifold trace functions of free-fermion
//! vertex operator superalgebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: exact truncated q-series over cyclotomic fields
//! - [`modforms`]: Bernoulli polynomials, Eisenstein series, the twisted
//!   P/Q/P̄ families and Dedekind η quotients
//! - [`bracket`]: change-of-variable coefficients of the square-bracket modes
//! - [`fock`]: twisted free-fermion modules and their graded traces
//! - [`sl2`]: modular group actions and the numeric transformation verifier
//! - [`suites`]: named verification suites shared by the CLI and the tests

pub mod bracket;
pub mod error;
pub mod fock;
pub mod modforms;
pub mod report;
pub mod series;
pub mod sl2;
pub mod suites;
pub mod tolerances;

pub use error::{Error, Result};
pub use report::VerificationReport;

//! Degree bounds and minimal generators for homogeneous dimension-2 toric ideals.
//!
//! The toric ideal of the matrix with rows `(1, …, 1)` and `(a_1, …, a_n)` is
//! generated in degrees at most `r + s`, where `r ≥ s` are the two largest
//! successive differences of the `a_i`. This crate makes that statement
//! executable:
//!
//! - [`values`]: the exponent set `V` and its gap profile.
//! - [`multisets`]: sorted integer multisets with bidegree and spread statistics.
//! - [`complex`]: the families `Π(q,c)` and the components of the complex
//!   generated by their supports.
//! - [`walks`]: the expansion and criss-cross walks that produce checkable
//!   connectivity certificates.
//! - [`ideal`]: degree bound, generator bidegrees and an exact rank oracle.
//! - [`cli`]: argument parsing and output rendering for the `toric-gens` binary.

pub mod cli;
pub mod complex;
mod error;
pub mod ideal;
pub mod multisets;
pub mod values;
pub mod walks;

pub use error::{Error, Result};

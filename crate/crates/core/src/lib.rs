//! Exact q-series computation: truncated multivariate power series with
//! rational coefficients, q-Pochhammer symbols, basic hypergeometric series,
//! the q-derivative and the Rogers-Ramanujan operator `R(yD_q)`, the
//! Stieltjes-Wigert families, and a harness that checks q-series identities
//! coefficient by coefficient modulo a truncation ideal.

#![allow(clippy::cloned_ref_to_slice_refs)]

pub mod error;
pub mod harness;
pub mod rational;
pub mod qcalculus;
pub mod qoperators;
pub mod series;
pub mod swpoly;

pub use error::{Result, SeriesError};
pub use rational::Rational;
pub use series::{Monomial, Series, TruncationSpec, VarTable, Witness, UNBOUNDED};

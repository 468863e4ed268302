//! Exact truncated q-series and the truncated pentagonal-number identities.
//!
//! - [`series`]: truncated Laurent series in `q` over `Q[t]`, `t = q^m`.
//! - [`qfunctions`]: q-Pochhammer symbols, Gaussian binomials, q-brackets.
//! - [`identities`]: the identity catalogue and its verification engine.
//! - [`telescoping`]: q-Zeilberger certificates: checking and discovery.

pub mod coefficient;
pub mod error;
pub mod identities;
pub mod qfunctions;
pub mod series;
pub mod telescoping;

pub use coefficient::Coefficient;
pub use error::{Error, Result};
pub use series::{Monomial, Series, SeriesJson, EXACT};

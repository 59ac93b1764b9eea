//! Continued fractions of rational and algebraic formal power series over
//! prime finite fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`ffpoly`]: the field `F_p`, dense polynomials in `F_p[T]`, and a parser
//!   for polynomial and equation expressions.
//! * [`laurent`]: truncated Laurent series in `1/T`.
//! * [`cfcore`]: words of partial quotients, continuants and the
//!   continued-fraction algorithms on rationals and series.
//! * [`algebraic`]: expansion of roots of algebraic equations.
//! * [`families`]: generators for named expansions.
//! * [`measure`]: irrationality-measure estimates from degree sequences.

pub mod algebraic;
pub mod cfcore;
mod error;
pub mod families;
pub mod ffpoly;
pub mod laurent;
pub mod measure;

pub use error::{Error, Result};

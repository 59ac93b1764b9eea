//! Arithmetic in `F_p` and `F_p[T]`, plus the expression parser.

mod field;
pub(crate) mod mul;
mod parse;
mod poly;

pub use field::{Fp, PrimeField};
pub use parse::{
    parse_constant, parse_equation, parse_poly, parse_poly_with, parse_rational, parse_x_fraction, Bindings,
};
pub use poly::Poly;

//! Roots of polynomial equations over `F_p(T)`: expansion engines and
//! constructors of hyperquadratic and quadratic equations.

mod certified;
mod construct;
mod direct;
mod equation;
mod frobenius;
mod hensel;

pub use certified::{
    expand_root_certified, expand_root_certified_from_seed, expand_root_certified_with_budget, DEFAULT_PRECISION_BUDGET,
};
pub use construct::{
    hyperquadratic_from_prefix, hyperquadratic_relation, quadratic_from_periodic, unbounded_predicate,
    verify_derivative_relation,
};
pub use direct::expand_root_direct;
pub use equation::{AlgebraicEquation, HyperquadraticEquation};
pub use frobenius::expand_root_frobenius;
pub use hensel::{hensel_root, root_series};

use super::equation::AlgebraicEquation;
use super::hensel::{hensel_root, root_series};
use crate::cfcore::expand::expand_series;
use crate::cfcore::{cf_eval, Word};
use crate::ffpoly::Poly;
use crate::laurent::LaurentSeries;
use crate::{Error, Result};

/// Default cap on the number of series coefficients the certified engine
/// may compute.
pub const DEFAULT_PRECISION_BUDGET: usize = 1 << 24;

const START_PRECISION: usize = 64;

/// First `count` partial quotients of the root, each certified by the
/// precision of the series it was read from.
pub fn expand_root_certified(eq: &AlgebraicEquation, count: usize) -> Result<Word> {
    expand_root_certified_with_budget(eq, count, DEFAULT_PRECISION_BUDGET)
}

/// [`expand_root_certified`] with an explicit precision budget.
pub fn expand_root_certified_with_budget(eq: &AlgebraicEquation, count: usize, budget: usize) -> Result<Word> {
    if count == 0 {
        return Ok(Word::empty(eq.field()));
    }
    let n = START_PRECISION.min(budget);
    certify(eq, root_series(eq, n)?, count, budget)
}

/// [`expand_root_certified_with_budget`] for the root Newton's iteration
/// reaches from `seed`, which need not be the dominant root.
pub fn expand_root_certified_from_seed(
    eq: &AlgebraicEquation,
    seed: &LaurentSeries,
    count: usize,
    budget: usize,
) -> Result<Word> {
    if count == 0 {
        return Ok(Word::empty(eq.field()));
    }
    let n = START_PRECISION.min(budget);
    certify(eq, hensel_root(eq, seed, n)?, count, budget)
}

fn certify(eq: &AlgebraicEquation, mut series: LaurentSeries, count: usize, budget: usize) -> Result<Word> {
    let mut n = series.precision();
    loop {
        let (w, certified, zero_tail) = expand_series(&series);
        if certified >= count {
            return Ok(w.truncated(count));
        }
        if zero_tail && is_root(eq, &w) {
            return Ok(w.truncated(count));
        }
        if n >= budget {
            return Err(Error::PrecisionBudgetExceeded { budget, certified });
        }
        n = (2 * n).min(budget);
        series = hensel_root(eq, &series, n)?;
    }
}

/// Whether the value of `w` is an exact root of `eq`.
fn is_root(eq: &AlgebraicEquation, w: &Word) -> bool {
    let (num, den) = cf_eval(w);
    // sum c_i num^i den^(n-i), by Horner's rule in num
    let coeffs = eq.coeffs();
    let mut acc = coeffs[eq.degree()].clone();
    let mut den_pow = Poly::one(eq.field());
    for c in coeffs[..eq.degree()].iter().rev() {
        den_pow = &den_pow * &den;
        acc = &(&acc * &num) + &(c * &den_pow);
    }
    acc.is_zero()
}

use super::direct::expand_root_direct;
use super::equation::AlgebraicEquation;
use crate::cfcore::cf_eval;
use crate::laurent::LaurentSeries;
use crate::{Error, Result};

/// Newton steps without progress tolerated before giving up.
const MAX_STALLS: usize = 4;
const MAX_ITERATIONS: usize = 96;
const GUARD: usize = 8;

/// `x` with its known coefficients extended by zeros (or cut) to `n`
/// coefficients, treated as exact from then on.
fn pad(x: &LaurentSeries, n: usize) -> LaurentSeries {
    let mut c = x.coeffs().to_vec();
    c.resize(n, 0);
    LaurentSeries::from_coeffs(x.field(), x.top(), c)
}

/// Root of `eq` near `seed` to `precision` coefficients, by Newton iteration
/// `x <- x - P(x)/P'(x)` with precision doubling.
///
/// Every round evaluates the residual on the current approximation taken as
/// exact, so the number of correct leading coefficients is measured rather
/// than assumed. Equations with `P' = 0` of the form `c_r x^r + c_0` are
/// solved by reading off every `r`-th coefficient of `-c_0/c_r`.
pub fn hensel_root(eq: &AlgebraicEquation, seed: &LaurentSeries, precision: usize) -> Result<LaurentSeries> {
    if eq.derivative_coeffs().iter().all(|c| c.is_zero()) {
        return transport_root(eq, precision);
    }
    if seed.is_zero() {
        return Err(Error::InvalidParameter("Newton seed must be nonzero".into()));
    }
    let mut x = seed.clone();
    let mut w = seed.precision().max(GUARD);
    let mut best: i64 = i64::MIN;
    let mut stalls = 0;
    for _ in 0..MAX_ITERATIONS {
        let xe = pad(&x, w);
        let t = xe.top();
        let v = eq.eval_series(&xe);
        let d = eq.eval_derivative_series(&xe);
        if d.is_zero() {
            return Err(Error::SingularRoot);
        }
        // the correction v/d has top v.top - d.top, so it is only computed
        // when it is needed
        let delta_top = if v.is_zero() { v.order() } else { v.top() } - d.top();
        let digits = t - delta_top;
        if digits >= precision as i64 {
            return Ok(pad(&xe, precision));
        }
        let delta = if v.is_zero() { None } else { Some(v.div(&d)?) };
        if digits > best {
            best = digits;
            stalls = 0;
        } else {
            stalls += 1;
            if stalls > MAX_STALLS {
                return Err(Error::NoConvergence);
            }
        }
        // precision lost to cancellation in P(x), relative to the target
        let loss = max_term_top(eq, t).saturating_sub(d.top() + t).max(0) as usize;
        let target = (4 * digits.max(1) as usize).min(precision);
        // the update is limited by the width it was computed at, so the
        // width at least doubles
        let next_w = (target + loss + GUARD).max((2 * w).min(precision + loss + GUARD));
        if let Some(s) = delta {
            x = xe.sub(&s);
            if x.is_zero() {
                return Err(Error::NoConvergence);
            }
        }
        w = next_w;
    }
    Err(Error::NoConvergence)
}

/// `max_i (deg c_i + i t)`, the size of the largest term of `P(x)` when
/// `|x| = T^t`.
fn max_term_top(eq: &AlgebraicEquation, t: i64) -> i64 {
    eq.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| c.deg_or_neg() + i as i64 * t)
        .max()
        .unwrap_or(0)
}

/// Root of `c_r x^r + c_0 = 0` with `r` a power of `p`: `x^r = g` forces
/// `g`'s exponents to be multiples of `r`, and then `x` has the same
/// coefficients at the divided exponents.
fn transport_root(eq: &AlgebraicEquation, precision: usize) -> Result<LaurentSeries> {
    let f = eq.field();
    let c = eq.coeffs();
    let r = eq.degree();
    let binomial = f.is_power_of_p(r as u64) && c[1..r].iter().all(|u| u.is_zero());
    if !binomial || c[0].is_zero() {
        return Err(Error::SingularRoot);
    }
    let g = LaurentSeries::from_rational(&-&c[0], &c[r], r * precision)?;
    let ri = r as i64;
    if g.top().rem_euclid(ri) != 0 {
        return Err(Error::InvalidParameter(
            "x^r = g has no root: leading exponent not divisible by r".into(),
        ));
    }
    let mut coeffs = Vec::with_capacity(precision);
    for (k, &v) in g.coeffs().iter().enumerate() {
        if k % r == 0 {
            coeffs.push(v);
        } else if v != 0 {
            return Err(Error::InvalidParameter("x^r = g has no root in F_p((1/T))".into()));
        }
    }
    coeffs.truncate(precision);
    Ok(LaurentSeries::from_coeffs(f, g.top() / ri, coeffs))
}

/// Series of the root found by the direct engine, to `precision`
/// coefficients. The first two partial quotients seed Newton's iteration; a
/// root whose expansion terminates is returned exactly.
pub fn root_series(eq: &AlgebraicEquation, precision: usize) -> Result<LaurentSeries> {
    if eq.derivative_coeffs().iter().all(|c| c.is_zero()) {
        return transport_root(eq, precision);
    }
    let prefix = expand_root_direct(eq, 2)?;
    let (n, d) = cf_eval(&prefix);
    if prefix.len() < 2 {
        return LaurentSeries::from_rational(&n, &d, precision);
    }
    // |alpha - n/d| = |d|^-2 |a_3|^-1, so n/d carries at least this many digits
    let top = n.deg_or_neg() - d.deg_or_neg();
    let digits = (top + 2 * d.deg_or_neg() + 1).max(1) as usize;
    let seed = LaurentSeries::from_rational(&n, &d, digits)?;
    hensel_root(eq, &seed, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::{Bindings, Poly, PrimeField};

    fn eq(text: &str, p: u64) -> AlgebraicEquation {
        AlgebraicEquation::parse(text, PrimeField::new(p).unwrap(), &Bindings::new()).unwrap()
    }

    #[test]
    fn cube_root_in_characteristic_two() {
        let f = PrimeField::new(2).unwrap();
        let e = eq("x^3 - (1 + 1/t)", 2);
        let seed = LaurentSeries::from_coeffs(f, 0, vec![1]);
        let s = hensel_root(&e, &seed, 6).unwrap();
        assert_eq!(s.precision(), 6);
        // oracle: cube the truncated answer
        let cube = s.mul(&s).mul(&s);
        let want = LaurentSeries::from_rational(&Poly::from_ints(f, &[1, 1]), &Poly::t(f), 6).unwrap();
        assert!(cube.agrees_with(&want));
        assert_eq!(s.coeffs(), &[1, 1, 1, 1, 0, 0][..]);
    }

    #[test]
    fn mahler_series() {
        let p = 3;
        let f = PrimeField::new(p).unwrap();
        let e = eq("x - 1/t - x^3", p);
        let seed = LaurentSeries::from_coeffs(f, -1, vec![1]);
        let s = hensel_root(&e, &seed, 100).unwrap();
        for k in 1..=100i64 {
            let want = [1, 3, 9, 27, 81].contains(&k) as u32;
            assert_eq!(s.coeff(-k).unwrap().value(), want, "T^-{k}");
        }
    }

    #[test]
    fn robbins_quartic_root_starts_as_stated() {
        for p in [2, 3, 5, 7, 11, 13] {
            let e = eq("x^4 + x^2 - t*x + 1", p);
            let s = root_series(&e, 200).unwrap();
            assert_eq!(s.top(), -1);
            assert_eq!(s.precision(), 200);
            assert_eq!(s.coeff(-1).unwrap().value(), 1);
            assert_eq!(s.coeff(-2).unwrap().value(), 0);
            assert_eq!(s.coeff(-3).unwrap().value(), 1);
            let v = e.eval_series(&s);
            assert!(v.is_zero() && v.order() <= -200, "p = {p}");
        }
    }

    #[test]
    fn pure_frobenius_equation() {
        let e = eq("t^5*x^5 - t^10 - 1", 5);
        let s = root_series(&e, 20).unwrap();
        assert_eq!(s.top(), 1);
        let mut want = [0u32; 20];
        want[0] = 1;
        want[2] = 1;
        assert_eq!(s.coeffs(), &want[..]);
        assert!(root_series(&eq("x^5 - t", 5), 10).is_err());
    }
}

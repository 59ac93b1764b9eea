use std::collections::HashMap;
use std::fmt;

use crate::ffpoly::{parse_equation, Bindings, Fp, Poly, PrimeField};
use crate::laurent::LaurentSeries;
use crate::{Error, Result};

/// Polynomial equation `sum c_i x^i = 0` with `c_i` in `F_p[T]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicEquation {
    coeffs: Vec<Poly>,
    field: PrimeField,
}

impl AlgebraicEquation {
    /// Coefficients ascending in `x`. Trailing zero coefficients are dropped;
    /// the remaining degree must be at least 1.
    pub fn new(field: PrimeField, mut coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidParameter(
                "equation must have degree at least 1 in x".into(),
            ));
        }
        Ok(Self { coeffs, field })
    }

    pub fn parse(text: &str, field: PrimeField, bindings: &Bindings) -> Result<Self> {
        Self::new(field, parse_equation(text, field, bindings)?)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &Poly {
        &self.coeffs[self.degree()]
    }

    /// Formal derivative in `x`, as a coefficient list (may be all zero).
    pub fn derivative_coeffs(&self) -> Vec<Poly> {
        let f = self.field;
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(f.elem(i as i64)))
            .collect()
    }

    /// `P(u)` for a polynomial `u`.
    pub fn eval_poly(&self, u: &Poly) -> Poly {
        let mut acc = Poly::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * u) + c;
        }
        acc
    }

    /// `P(x)` on a series, with honest precision.
    pub fn eval_series(&self, x: &LaurentSeries) -> LaurentSeries {
        eval_coeffs_series(&self.coeffs, x)
    }

    /// `P'(x)` on a series.
    pub fn eval_derivative_series(&self, x: &LaurentSeries) -> LaurentSeries {
        eval_coeffs_series(&self.derivative_coeffs(), x)
    }

    /// Whether `other` equals `self` times a nonzero constant.
    pub fn proportional_to(&self, other: &Self) -> bool {
        if self.field != other.field || self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        let lc = |e: &Self| e.leading().leading().expect("nonzero leading coefficient");
        let (u, v) = (lc(self), lc(other));
        let vi = v.inv().expect("nonzero");
        let ratio = u * vi;
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a == b.scale(ratio))
    }

    /// The equation as a hyperquadratic relation `A x^(r+1) + B x^r + C x + D`
    /// when its support allows it.
    pub fn as_hyperquadratic(&self) -> Option<HyperquadraticEquation> {
        let n = self.degree();
        let f = self.field;
        let zero = Poly::zero(f);
        let c = |i: usize| self.coeffs.get(i).cloned().unwrap_or_else(|| zero.clone());
        let support: Vec<usize> = (0..=n).filter(|&i| !self.coeffs[i].is_zero()).collect();
        let candidates = [n.checked_sub(1), Some(n)];
        for r in candidates.into_iter().flatten() {
            if r == 0 || !f.is_power_of_p(r as u64) {
                continue;
            }
            let allowed = [0, 1, r, r + 1];
            if support.iter().all(|i| allowed.contains(i)) {
                let (a, b) = if r == 1 { (c(2), zero.clone()) } else { (c(r + 1), c(r)) };
                let hq = HyperquadraticEquation {
                    a,
                    b,
                    c: c(1),
                    d: c(0),
                    r,
                };
                if hq.to_equation().ok().as_ref() == Some(self) {
                    return Some(hq);
                }
            }
        }
        None
    }
}

impl fmt::Display for AlgebraicEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let xs = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{xs}")?;
            } else {
                write!(f, "({c})*{xs}")?;
            }
        }
        write!(f, " = 0")
    }
}

/// `sum c_i x^i` on a series. Powers `x^k` with `p | k` are Frobenius images
/// of `x^(k/p)`, which costs no multiplication.
pub(crate) fn eval_coeffs_series(coeffs: &[Poly], x: &LaurentSeries) -> LaurentSeries {
    let f = x.field();
    let p = f.modulus() as usize;
    let mut memo: HashMap<usize, LaurentSeries> = HashMap::new();
    fn power(k: usize, p: usize, x: &LaurentSeries, memo: &mut HashMap<usize, LaurentSeries>) -> LaurentSeries {
        if k == 1 {
            return x.clone();
        }
        if let Some(s) = memo.get(&k) {
            return s.clone();
        }
        let s = if k.is_multiple_of(p) {
            power(k / p, p, x, memo)
                .pow_frobenius(p as u64)
                .expect("p is a power of p")
        } else {
            power(k - 1, p, x, memo).mul(x)
        };
        memo.insert(k, s.clone());
        s
    }
    let mut acc: Option<LaurentSeries> = None;
    for (i, c) in coeffs.iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let term = power(i, p, x, &mut memo).mul_poly(c);
        acc = Some(match acc {
            Some(a) => a.add(&term),
            None => term,
        });
    }
    let c0 = coeffs.first().cloned().unwrap_or_else(|| Poly::zero(f));
    match acc {
        Some(a) => a.add_poly(&c0),
        // an x-free sum is exact; report it with the relative precision of x
        None if c0.is_zero() => LaurentSeries::zero(f, x.order()),
        None => LaurentSeries::from_poly(&c0, c0.deg_or_neg() - x.precision() as i64),
    }
}

/// `A x^(r+1) + B x^r + C x + D = 0` with `r` a power of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperquadraticEquation {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
    pub r: usize,
}

impl HyperquadraticEquation {
    pub fn new(a: Poly, b: Poly, c: Poly, d: Poly, r: usize) -> Result<Self> {
        let f = a.field();
        if [&b, &c, &d].iter().any(|u| u.field() != f) {
            return Err(Error::FieldMismatch);
        }
        if !f.is_power_of_p(r as u64) {
            return Err(Error::NotAFrobeniusPower(r as u64));
        }
        if a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero() {
            return Err(Error::InvalidParameter("all coefficients are zero".into()));
        }
        Ok(Self { a, b, c, d, r })
    }

    pub fn field(&self) -> PrimeField {
        self.a.field()
    }

    /// `A D - B C`, the determinant of the linear fractional part.
    pub fn determinant(&self) -> Poly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn to_equation(&self) -> Result<AlgebraicEquation> {
        let f = self.field();
        let r = self.r;
        let mut coeffs = vec![Poly::zero(f); r + 2];
        coeffs[r + 1] = &coeffs[r + 1] + &self.a;
        coeffs[r] = &coeffs[r] + &self.b;
        coeffs[1] = &coeffs[1] + &self.c;
        coeffs[0] = &coeffs[0] + &self.d;
        AlgebraicEquation::new(f, coeffs)
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub(crate) fn binom_mod_p(mut n: usize, mut k: usize, f: PrimeField) -> u32 {
    let p = f.modulus() as usize;
    let mut acc = 1u32;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = f.mul(acc, small_binom(nd, kd, f));
        n /= p;
        k /= p;
    }
    acc
}

fn small_binom(n: usize, k: usize, f: PrimeField) -> u32 {
    let k = k.min(n - k);
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = f.mul(num, ((n - i) % f.modulus() as usize) as u32);
        den = f.mul(den, ((i + 1) % f.modulus() as usize) as u32);
    }
    f.mul(num, f.inv(den).expect("digits below p"))
}

/// `P(x + q)` as a coefficient list, skipping binomials that vanish mod `p`.
pub(crate) fn taylor_shift(coeffs: &[Poly], q: &Poly) -> Vec<Poly> {
    let f = q.field();
    let p = f.modulus() as usize;
    let n = coeffs.len() - 1;
    let mut memo: HashMap<usize, Poly> = HashMap::new();
    memo.insert(0, Poly::one(f));
    fn power(e: usize, p: usize, q: &Poly, memo: &mut HashMap<usize, Poly>) -> Poly {
        if let Some(v) = memo.get(&e) {
            return v.clone();
        }
        let v = if e.is_multiple_of(p) {
            power(e / p, p, q, memo).compose_power(p)
        } else {
            &power(e - 1, p, q, memo) * q
        };
        memo.insert(e, v.clone());
        v
    }
    let mut out = vec![Poly::zero(f); n + 1];
    if q.is_zero() {
        return coeffs.to_vec();
    }
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, slot) in out.iter_mut().enumerate().take(i + 1) {
            let b = binom_mod_p(i, k, f);
            if b == 0 {
                continue;
            }
            let qp = power(i - k, p, q, &mut memo);
            let term = (c * &qp).scale(Fp::from_raw(b, f));
            *slot = &*slot + &term;
        }
    }
    out
}

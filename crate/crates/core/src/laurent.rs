//! Truncated Laurent series in `1/T` over `F_p`.
//!
//! A series is stored as its top exponent and a run of known coefficients
//! going down from it. Everything at or below [`LaurentSeries::order`] is
//! unknown. The absolute value `|a| = |T|^top` is represented only through
//! the integer `top`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ffpoly::mul::{inv_series, mul_trunc};
use crate::ffpoly::{Fp, Poly, PrimeField};
use crate::{Error, Result};

/// An element of `F_p((1/T))` known up to `O(T^order)`.
///
/// `coeffs[k]` is the coefficient of `T^(top - k)`. A nonzero series has a
/// nonzero leading coefficient. The zero series has no known nonzero
/// coefficient: all exponents above its order are zero, the rest unknown.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    top: i64,
    coeffs: Vec<u32>,
    field: PrimeField,
}

/// JSON shape `{top, precision, coeffs}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub top: i64,
    pub precision: usize,
    pub coeffs: Vec<u32>,
}

impl LaurentSeries {
    /// Builds a series from raw residues, dropping leading zeros. If every
    /// coefficient is zero the result is the zero series with the same order.
    pub fn from_coeffs(field: PrimeField, top: i64, coeffs: Vec<u32>) -> Self {
        let mut s = LaurentSeries { top, coeffs, field };
        s.normalize();
        s
    }

    /// The zero series known above exponent `order`.
    pub fn zero(field: PrimeField, order: i64) -> Self {
        LaurentSeries {
            top: order,
            coeffs: Vec::new(),
            field,
        }
    }

    /// A polynomial viewed as a series, known down to exponent `order + 1`.
    pub fn from_poly(u: &Poly, order: i64) -> Self {
        let f = u.field();
        let Some(d) = u.degree() else {
            return Self::zero(f, order);
        };
        let top = d as i64;
        if top <= order {
            return Self::zero(f, order);
        }
        let n = (top - order) as usize;
        let coeffs = (0..n)
            .map(|k| {
                let e = top - k as i64;
                if e >= 0 {
                    u.coeffs()[e as usize]
                } else {
                    0
                }
            })
            .collect();
        Self::from_coeffs(f, top, coeffs)
    }

    /// The series of `p / q` with `precision` coefficients from its top.
    pub fn from_rational(p: &Poly, q: &Poly, precision: usize) -> Result<Self> {
        let f = q.field();
        if p.field() != f {
            return Err(Error::FieldMismatch);
        }
        let dq = q.degree().ok_or(Error::DivisionByZero)?;
        let Some(dp) = p.degree() else {
            return Ok(Self::zero(f, -(precision as i64)));
        };
        let rp: Vec<u32> = p.coeffs().iter().rev().take(precision).copied().collect();
        let rq: Vec<u32> = q.coeffs().iter().rev().take(precision).copied().collect();
        let inv = inv_series(&rq, precision, f.modulus());
        let mut coeffs = mul_trunc(&rp, &inv, precision, f.modulus());
        coeffs.resize(precision, 0);
        Ok(Self::from_coeffs(f, dp as i64 - dq as i64, coeffs))
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|&c| c != 0);
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.top -= k as i64;
            }
            None => {
                self.top -= self.coeffs.len() as i64;
                self.coeffs.clear();
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Exponent of the leading term (for the zero series, its order).
    pub fn top(&self) -> i64 {
        self.top
    }

    /// Number of known coefficients from the top.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponents `<= order` are unknown.
    pub fn order(&self) -> i64 {
        self.top - self.coeffs.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Known coefficients, from `T^top` downward.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `T^e`, or `None` when `e <= order`.
    pub fn coeff(&self, e: i64) -> Option<Fp> {
        if e <= self.order() {
            return None;
        }
        let v = if e > self.top {
            0
        } else {
            self.coeffs[(self.top - e) as usize]
        };
        Some(self.field.elem(v as i64))
    }

    /// Forgets everything at or below exponent `order`.
    pub fn truncate_order(&self, order: i64) -> Self {
        if order <= self.order() {
            return self.clone();
        }
        if order >= self.top {
            return Self::zero(self.field, order);
        }
        let keep = (self.top - order) as usize;
        Self::from_coeffs(self.field, self.top, self.coeffs[..keep].to_vec())
    }

    /// Keeps the first `n` coefficients.
    pub fn truncate(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.truncate_order(self.top - n as i64)
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        LaurentSeries {
            top: self.top,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| if c == 0 { 0 } else { f.modulus() - c })
                .collect(),
            field: f,
        }
    }

    pub fn scale(&self, c: Fp) -> Self {
        let f = self.field;
        if c.is_zero() {
            return Self::zero(f, self.order());
        }
        LaurentSeries {
            top: self.top,
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c.value())).collect(),
            field: f,
        }
    }

    /// `self * T^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            top: self.top + k,
            coeffs: self.coeffs.clone(),
            field: self.field,
        }
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        assert_eq!(self.field, other.field, "field mismatch in series arithmetic");
        let f = self.field;
        let order = self.order().max(other.order());
        let top = self.top.max(other.top);
        if top <= order {
            return Self::zero(f, order);
        }
        let n = (top - order) as usize;
        let mut out = vec![0u32; n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            let idx = top - self.top + k as i64;
            if idx >= n as i64 {
                break;
            }
            out[idx as usize] = c;
        }
        for (k, &c) in other.coeffs.iter().enumerate() {
            let idx = top - other.top + k as i64;
            if idx >= n as i64 {
                break;
            }
            let d = &mut out[idx as usize];
            *d = if negate { f.sub(*d, c) } else { f.add(*d, c) };
        }
        Self::from_coeffs(f, top, out)
    }

    /// Sum, known above the larger of the two orders. Total cancellation
    /// yields the zero series.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    /// Product. The relative precision is the smaller of the two.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "field mismatch in series arithmetic");
        let f = self.field;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(f, self.order() + other.order()),
            (true, false) => return Self::zero(f, self.order() + other.top),
            (false, true) => return Self::zero(f, other.order() + self.top),
            _ => {}
        }
        let n = self.precision().min(other.precision());
        let coeffs = mul_trunc(&self.coeffs, &other.coeffs, n, f.modulus());
        LaurentSeries {
            top: self.top + other.top,
            coeffs,
            field: f,
        }
    }

    /// Multiplicative inverse, with the same relative precision.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::PrecisionExhausted);
        }
        let n = self.precision();
        let coeffs = inv_series(&self.coeffs, n, self.field.modulus());
        Ok(LaurentSeries {
            top: -self.top,
            coeffs,
            field: self.field,
        })
    }

    /// Quotient, known to the smaller of the two relative precisions. The
    /// divisor is cut to that precision before it is inverted.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(self.mul(&other.inv()?));
        }
        let n = self.precision().min(other.precision());
        Ok(self.mul(&other.truncate(n).inv()?))
    }

    /// Multiplies by a polynomial, which is known exactly. The zero
    /// polynomial gives the zero series known as far as `self`.
    pub fn mul_poly(&self, u: &Poly) -> Self {
        let Some(d) = u.degree() else {
            return Self::zero(self.field, self.order());
        };
        let rev: Vec<u32> = u.coeffs().iter().rev().copied().collect();
        if self.is_zero() {
            return Self::zero(self.field, self.order() + d as i64);
        }
        let n = self.precision();
        let coeffs = mul_trunc(&self.coeffs, &rev, n, self.field.modulus());
        LaurentSeries {
            top: self.top + d as i64,
            coeffs,
            field: self.field,
        }
    }

    /// `self + u` for an exactly known polynomial `u`.
    pub fn add_poly(&self, u: &Poly) -> Self {
        self.add(&Self::from_poly(u, self.order()))
    }

    /// `self - u` for an exactly known polynomial `u`.
    pub fn sub_poly(&self, u: &Poly) -> Self {
        self.sub(&Self::from_poly(u, self.order()))
    }

    /// The polynomial part `[a]`: the terms with nonnegative exponent.
    pub fn poly_part(&self) -> Result<Poly> {
        if self.top < 0 {
            return Ok(Poly::zero(self.field));
        }
        if self.order() >= 0 {
            return Err(Error::InsufficientPrecision);
        }
        let mut asc: Vec<u32> = self.coeffs[..=self.top as usize].to_vec();
        asc.reverse();
        Ok(Poly::from_raw(asc, self.field))
    }

    /// `a - [a]`, the part of negative exponent.
    pub fn frac(&self) -> Result<Self> {
        if self.top < 0 {
            return Ok(self.clone());
        }
        if self.order() >= 0 {
            return Err(Error::InsufficientPrecision);
        }
        let rest = self.coeffs[self.top as usize + 1..].to_vec();
        Ok(Self::from_coeffs(self.field, -1, rest))
    }

    /// `a^r` for `r` a power of `p`: exponents are multiplied by `r`,
    /// coefficients unchanged.
    pub fn pow_frobenius(&self, r: u64) -> Result<Self> {
        if !self.field.is_power_of_p(r) {
            return Err(Error::NotAFrobeniusPower(r));
        }
        let r_i = r as i64;
        if self.is_zero() {
            return Ok(Self::zero(self.field, self.order() * r_i));
        }
        let r = r as usize;
        let mut coeffs = vec![0u32; self.coeffs.len() * r];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * r] = c;
        }
        Ok(LaurentSeries {
            top: self.top * r_i,
            coeffs,
            field: self.field,
        })
    }

    /// Smallest period (and for it, the smallest preperiod) with which the
    /// known coefficients repeat, counted from the top. At least three full
    /// periods must be visible. The zero series reports `(0, 1)`.
    pub fn detect_period(&self) -> Option<(usize, usize)> {
        if self.is_zero() {
            return Some((0, 1));
        }
        find_period(&self.coeffs)
    }

    /// Formal derivative in `T`.
    pub fn derivative(&self) -> Self {
        let f = self.field;
        let p = f.modulus() as i64;
        if self.is_zero() {
            return Self::zero(f, self.order() - 1);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let e = (self.top - k as i64).rem_euclid(p) as u32;
                f.mul(c, e)
            })
            .collect();
        Self::from_coeffs(f, self.top - 1, coeffs)
    }

    /// Equality of the coefficients known in both series.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            top: self.top,
            precision: self.precision(),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn from_json(field: PrimeField, json: &SeriesJson) -> Result<Self> {
        if json.coeffs.len() != json.precision {
            return Err(Error::InvalidParameter(
                "precision does not match coefficient count".into(),
            ));
        }
        if json.coeffs.iter().any(|&c| c >= field.modulus()) {
            return Err(Error::InvalidParameter("coefficient out of range".into()));
        }
        Ok(Self::from_coeffs(field, json.top, json.coeffs.clone()))
    }
}

/// Smallest period with at least three visible repetitions, and the least
/// preperiod for it.
pub(crate) fn find_period(c: &[u32]) -> Option<(usize, usize)> {
    let n = c.len();
    for per in 1..=n / 3 {
        let mut start = 0;
        for i in (0..n - per).rev() {
            if c[i] != c[i + per] {
                start = i + 1;
                break;
            }
        }
        if n - start >= 3 * per {
            return Some((start, per));
        }
    }
    None
}

impl fmt::Display for LaurentSeries {
    /// `c*t^i + ... + O(t^j)`, descending, zero coefficients skipped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.top - k as i64;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, c) => write!(f, "{c}*t^{e}")?,
            }
            write!(f, " + ")?;
        }
        write!(f, "O(t^{})", self.order())
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({} over {})", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(f: PrimeField, c: &[i64]) -> Poly {
        Poly::from_ints(f, c)
    }

    #[test]
    fn geometric_expansion() {
        let f = field(5);
        let s = LaurentSeries::from_rational(&poly(f, &[0, 1]), &poly(f, &[-1, 1]), 4).unwrap();
        assert_eq!(s.top(), 0);
        assert_eq!(s.coeffs(), &[1, 1, 1, 1]);
        assert_eq!(s.to_string(), "1 + t^-1 + t^-2 + t^-3 + O(t^-4)");
        let one = LaurentSeries::from_rational(&poly(f, &[0, 0, 1]), &poly(f, &[0, 0, 1]), 3).unwrap();
        assert_eq!(one.coeffs(), &[1, 0, 0]);
    }

    #[test]
    fn inverse_of_t_minus_one() {
        let f = field(2);
        let s = LaurentSeries::from_poly(&poly(f, &[1, 1]), -4);
        assert_eq!(s.precision(), 5);
        let i = s.inv().unwrap();
        assert_eq!(i.top(), -1);
        assert_eq!(i.coeffs(), &[1, 1, 1, 1, 1]);
        assert!(s.mul(&i).agrees_with(&LaurentSeries::from_poly(&Poly::one(f), -5)));
    }

    #[test]
    fn cancellation_renormalizes() {
        let f = field(3);
        let a = LaurentSeries::from_coeffs(f, 1, vec![1, 0, 1, 0, 0, 0, 0, 0, 0, 0]);
        let b = LaurentSeries::from_coeffs(f, 1, vec![2, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let s = a.add(&b);
        assert_eq!(s.top(), -1);
        assert_eq!(s.coeffs()[0], 1);
        let z = a.sub(&a);
        assert!(z.is_zero());
        assert_eq!(z.inv(), Err(Error::PrecisionExhausted));
    }

    #[test]
    fn polynomial_part() {
        let f = field(3);
        let s = LaurentSeries::from_rational(&poly(f, &[0, 0, 0, 0, 1]), &poly(f, &[2, 0, 1]), 8).unwrap();
        assert_eq!(s.poly_part().unwrap().to_string(), "t^2 + 1");
        let small = LaurentSeries::from_coeffs(f, -1, vec![1, 2]);
        assert!(small.poly_part().unwrap().is_zero());
        let short = LaurentSeries::from_coeffs(f, 3, vec![1, 2]);
        assert_eq!(short.poly_part(), Err(Error::InsufficientPrecision));
    }

    #[test]
    fn frobenius_powers() {
        let f = field(2);
        let s = LaurentSeries::from_coeffs(f, 0, vec![1, 1, 0, 0]);
        let sq = s.pow_frobenius(2).unwrap();
        assert_eq!(sq.precision(), 8);
        assert!(sq.agrees_with(&s.mul(&s)));
        assert_eq!(sq.coeffs()[..3], [1, 0, 1]);
        assert_eq!(s.pow_frobenius(1).unwrap(), s);
        assert_eq!(s.pow_frobenius(3), Err(Error::NotAFrobeniusPower(3)));
    }

    #[test]
    fn periods() {
        let f = field(5);
        let s = LaurentSeries::from_rational(&poly(f, &[0, 1]), &poly(f, &[-1, 1]), 50).unwrap();
        assert_eq!(s.detect_period(), Some((0, 1)));
        assert_eq!(LaurentSeries::zero(f, 0).detect_period(), Some((0, 1)));
        let g = field(3);
        let s = LaurentSeries::from_rational(&Poly::one(g), &poly(g, &[1, 0, 1]), 100).unwrap();
        let (_, per) = s.detect_period().unwrap();
        // T has order 4 modulo T^2 + 1 over F_3
        assert_eq!(4 % per, 0);
    }

    #[test]
    fn derivative_of_geometric_series() {
        let f = field(7);
        let n = 30;
        let s = LaurentSeries::from_rational(&poly(f, &[0, 1]), &poly(f, &[-1, 1]), n).unwrap();
        let d = s.derivative();
        let want = LaurentSeries::from_rational(&poly(f, &[-1]), &poly(f, &[1, -2, 1]), n - 1).unwrap();
        assert!(d.agrees_with(&want));
        assert!(LaurentSeries::from_poly(&Poly::one(f), -5).derivative().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let f = field(13);
        let s = LaurentSeries::from_coeffs(f, 2, vec![3, 0, 12, 1]);
        let j = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(j, r#"{"top":2,"precision":4,"coeffs":[3,0,12,1]}"#);
        let back: SeriesJson = serde_json::from_str(&j).unwrap();
        assert_eq!(LaurentSeries::from_json(f, &back).unwrap(), s);
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Fp, PrimeField};
use super::mul;
use crate::{Error, Result};

/// Below this quotient length long division is done term by term.
const FAST_DIVISION_THRESHOLD: usize = 64;

/// A dense polynomial in `F_p[T]`.
///
/// Coefficients are stored in ascending order with no trailing zeros, so the
/// zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u32>,
    field: PrimeField,
}

impl Poly {
    pub fn zero(field: PrimeField) -> Self {
        Self {
            coeffs: Vec::new(),
            field,
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field.one())
    }

    /// The indeterminate `T`.
    pub fn t(field: PrimeField) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn constant(c: Fp) -> Self {
        Self::from_raw(vec![c.value()], c.field())
    }

    /// `c * T^k`.
    pub fn monomial(c: Fp, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero(c.field());
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c.value();
        Self {
            coeffs,
            field: c.field(),
        }
    }

    /// Builds a polynomial from ascending integer coefficients, reducing each
    /// modulo `p`.
    pub fn from_ints(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::from_raw(coeffs.iter().map(|&c| field.elem(c).value()).collect(), field)
    }

    /// Builds a polynomial from ascending residues, which must lie in `[0, p)`.
    pub fn from_raw(mut coeffs: Vec<u32>, field: PrimeField) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.modulus()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs, field }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Ascending residues; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer, with `-1` standing in for the zero
    /// polynomial. Suitable only where the caller treats `-1` as "below every
    /// real degree".
    pub fn deg_or_neg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of `T^k`.
    pub fn coeff(&self, k: usize) -> Fp {
        Fp::from_raw(self.coeffs.get(k).copied().unwrap_or(0), self.field)
    }

    pub fn leading(&self) -> Option<Fp> {
        self.coeffs.last().map(|&c| Fp::from_raw(c, self.field))
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn scale(&self, c: Fp) -> Poly {
        assert_eq!(c.field(), self.field, "field mismatch");
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        Poly {
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c.value())).collect(),
            field: f,
        }
    }

    /// `self * T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            coeffs,
            field: self.field,
        }
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(l.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Euclidean division `self = q * v + r` with `deg r < deg v`.
    pub fn divrem(&self, v: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(v)?;
        let dv = v.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field;
        let du = match self.degree() {
            Some(d) if d >= dv => d,
            _ => return Ok((Poly::zero(f), self.clone())),
        };
        let qlen = du - dv + 1;
        if qlen >= FAST_DIVISION_THRESHOLD && dv >= FAST_DIVISION_THRESHOLD {
            return Ok(self.divrem_newton(v));
        }
        let p = f.modulus();
        let lead_inv = f.inv(v.coeffs[dv]).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![0u32; qlen];
        let vnz: Vec<(usize, u32)> = v.coeffs[..dv]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        for k in (0..qlen).rev() {
            let top = r[k + dv];
            if top == 0 {
                continue;
            }
            let c = f.mul(top, lead_inv);
            q[k] = c;
            r[k + dv] = 0;
            let neg = (p - c) as u64;
            for &(i, vi) in &vnz {
                let t = r[k + i] as u64 + neg * vi as u64;
                r[k + i] = (t % p as u64) as u32;
            }
        }
        r.truncate(dv);
        Ok((Poly::from_raw(q, f), Poly::from_raw(r, f)))
    }

    /// Division through a Newton inverse of the reversed divisor.
    fn divrem_newton(&self, v: &Poly) -> (Poly, Poly) {
        let f = self.field;
        let p = f.modulus();
        let du = self.coeffs.len() - 1;
        let dv = v.coeffs.len() - 1;
        let qlen = du - dv + 1;
        let rev_u: Vec<u32> = self.coeffs.iter().rev().take(qlen).copied().collect();
        let rev_v: Vec<u32> = v.coeffs.iter().rev().copied().collect();
        let inv = mul::inv_series(&rev_v, qlen, p);
        let mut rq = mul::mul_trunc(&rev_u, &inv, qlen, p);
        rq.resize(qlen, 0);
        rq.reverse();
        let q = Poly::from_raw(rq, f);
        let r = self - &(&q * v);
        (q, r)
    }

    pub fn quo(&self, v: &Poly) -> Result<Poly> {
        Ok(self.divrem(v)?.0)
    }

    pub fn rem(&self, v: &Poly) -> Result<Poly> {
        Ok(self.divrem(v)?.1)
    }

    /// Exact quotient, or `None` when `v` does not divide `self`.
    pub fn div_exact(&self, v: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divrem(v)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, v: &Poly) -> Result<Poly> {
        self.check_field(v)?;
        if self.is_zero() && v.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = v.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal derivative in `T`.
    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(c, (k as u64 % f.modulus() as u64) as u32))
            .collect();
        Poly::from_raw(coeffs, f)
    }

    /// `self(T^r)`. For `r` a power of `p` this equals `self^r`, since the
    /// coefficients lie in the prime field.
    pub fn compose_power(&self, r: usize) -> Poly {
        if self.is_zero() || r == 1 {
            return self.clone();
        }
        let mut coeffs = vec![0u32; (self.coeffs.len() - 1) * r + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * r] = c;
        }
        Poly {
            coeffs,
            field: self.field,
        }
    }

    /// `self^r` for `r = p^t`, computed coefficient-wise.
    pub fn frobenius(&self, r: u64) -> Result<Poly> {
        if !self.field.is_power_of_p(r) {
            return Err(Error::NotAFrobeniusPower(r));
        }
        Ok(self.compose_power(r as usize))
    }

    /// Value at `x` by Horner's rule.
    pub fn eval(&self, x: Fp) -> Fp {
        let f = self.field;
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| f.add(f.mul(acc, x.value()), c));
        Fp::from_raw(v, f)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn add_impl(&self, other: &Poly, negate: bool) -> Poly {
        assert_eq!(self.field, other.field, "field mismatch in polynomial arithmetic");
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = self.coeffs.clone();
        out.resize(n, 0);
        for (d, &s) in out.iter_mut().zip(&other.coeffs) {
            *d = if negate { f.sub(*d, s) } else { f.add(*d, s) };
        }
        Poly::from_raw(out, f)
    }
}

impl fmt::Display for Poly {
    /// Canonical form: descending powers, `c*t^k`, coefficient 1 elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({} over {})", self, self.field)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.add_impl(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "field mismatch in polynomial arithmetic");
        Poly::from_raw(mul::mul(&self.coeffs, &rhs.coeffs, self.field.modulus()), self.field)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.field;
        Poly {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            field: f,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

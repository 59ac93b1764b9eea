use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::Error;

/// The prime field `F_p`.
///
/// Only the modulus is stored; elements and polynomials carry a copy of it so
/// that mixing fields is detected at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Largest supported modulus. Products of two residues fit in a `u64`.
    pub const MAX_MODULUS: u64 = (1 << 31) - 1;

    pub fn new(p: u64) -> Result<Self, Error> {
        if !(2..=Self::MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer into the field.
    pub fn elem(self, v: i64) -> Fp {
        Fp {
            value: v.rem_euclid(self.p as i64) as u32,
            field: self,
        }
    }

    pub fn zero(self) -> Fp {
        Fp { value: 0, field: self }
    }

    pub fn one(self) -> Fp {
        Fp {
            value: 1 % self.p,
            field: self,
        }
    }

    #[inline]
    pub(crate) fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub(crate) fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub(crate) fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub(crate) fn pow(self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (Fermat).
    pub(crate) fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// Returns `t` when `r = p^t`.
    pub fn log_p(self, r: u64) -> Option<u32> {
        if r == 0 {
            return None;
        }
        let mut r = r;
        let mut t = 0;
        while r.is_multiple_of(self.p as u64) {
            r /= self.p as u64;
            t += 1;
        }
        (r == 1).then_some(t)
    }

    pub fn is_power_of_p(self, r: u64) -> bool {
        self.log_p(r).is_some()
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_p`, stored as its residue in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    field: PrimeField,
}

impl Fp {
    pub(crate) fn from_raw(value: u32, field: PrimeField) -> Self {
        debug_assert!(value < field.p);
        Self { value, field }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Fp> {
        self.field.inv(self.value).map(|v| Fp::from_raw(v, self.field))
    }

    pub fn pow(self, e: u64) -> Fp {
        Fp::from_raw(self.field.pow(self.value, e), self.field)
    }

    /// `self^k` for a signed exponent; `None` for negative powers of zero.
    pub fn powi(self, k: i64) -> Option<Fp> {
        if k >= 0 {
            Some(self.pow(k as u64))
        } else {
            self.inv().map(|i| i.pow(k.unsigned_abs()))
        }
    }

    fn check(self, other: Fp) {
        assert_eq!(self.field, other.field, "field mismatch in F_p arithmetic");
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp::from_raw(self.field.add(self.value, rhs.value), self.field)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp::from_raw(self.field.sub(self.value, rhs.value), self.field)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp::from_raw(self.field.mul(self.value, rhs.value), self.field)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::from_raw(self.field.neg(self.value), self.field)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

//! Executable form of the continuant identities.

use super::continuant::{continuant_derived, continuant_from_left, continuant_of, continuant_truncated, convergents};
use super::word::Word;
use crate::ffpoly::{Fp, Poly, PrimeField};

/// One identity evaluated on a concrete word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Outcome of [`identity_suite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.holds).map(|c| c.name).collect()
    }
}

fn sign(f: PrimeField, e: usize) -> Poly {
    if e.is_multiple_of(2) {
        Poly::one(f)
    } else {
        Poly::constant(-f.one())
    }
}

/// Value of a raw term sequence as a fraction, folded from the back with
/// plain fraction arithmetic (no continuants involved).
fn fold_value(f: PrimeField, terms: &[Poly]) -> (Poly, Poly) {
    let mut num = Poly::one(f);
    let mut den = Poly::zero(f);
    for a in terms.iter().rev() {
        // a + den/num
        let n = &(a * &num) + &den;
        den = num;
        num = n;
    }
    (num, den)
}

fn frac_eq(a: &(Poly, Poly), b: &(Poly, Poly)) -> bool {
    &a.0 * &b.1 == &b.0 * &a.1
}

/// Checks the continuant identities on the letters of `w` (the head is
/// ignored), splitting `w = A, B` at `split` for the concatenation laws and
/// using `y` for the scaling laws.
///
/// Identities whose hypotheses are not met by the word (for instance the
/// determinant law on a word of length 0) are omitted from the report.
pub fn identity_suite(w: &Word, split: usize, y: Fp) -> IdentityReport {
    let f = w.field();
    let a = w.letters();
    let n = a.len();
    let split = split.min(n);
    let k = |s: &[Poly]| continuant_of(f, s);
    let mut checks = Vec::new();
    let mut push = |name, holds| checks.push(IdentityCheck { name, holds });

    let full = k(a);
    push("left and right recurrences", full == continuant_from_left(f, a));

    if n >= 1 {
        let direct = fold_value(f, a);
        push(
            "value as continuant ratio",
            frac_eq(&direct, &(full.clone(), continuant_derived(f, a))),
        );
        let mut rev = a.to_vec();
        rev.reverse();
        push(
            "reversed value",
            frac_eq(&fold_value(f, &rev), &(full.clone(), continuant_truncated(f, a))),
        );
    }

    let (ap, bp) = a.split_at(split);
    let rhs4 = &(&k(ap) * &k(bp)) + &(&continuant_truncated(f, ap) * &continuant_derived(f, bp));
    push("concatenation", full == rhs4);

    if n >= 1 {
        let wd = &a[1..];
        let lhs = &(&full * &continuant_truncated(f, wd)) - &(&k(wd) * &continuant_truncated(f, a));
        push("determinant", lhs == sign(f, n));
    }

    let conv = convergents(&Word::raw(f, None, a.to_vec()));
    let mut ok6 = true;
    let (mut xp, mut yp) = (Poly::one(f), Poly::zero(f));
    for (i, c) in conv.iter().enumerate() {
        if &(&c.x * &yp) - &(&c.y * &xp) != sign(f, i + 1) {
            ok6 = false;
        }
        xp = c.x.clone();
        yp = c.y.clone();
    }
    push("convergent determinants", ok6);

    if split >= 1 {
        let lhs = &(&full * &k(&ap[1..])) - &(&k(ap) * &k(&a[1..]));
        let rhs = &sign(f, split - 1) * &continuant_derived(f, bp);
        push("split determinant", lhs == rhs);
    }

    if split < n {
        let m = split;
        let x = |j: usize| k(&a[..j]);
        let yk = |j: usize| continuant_derived(f, &a[..j]);
        let lhs = &(&x(n) * &yk(m)) - &(&yk(n) * &x(m));
        let tail = if m + 1 < n { k(&a[m + 1..]) } else { Poly::one(f) };
        let rhs = if m == 0 { -&yk(n) } else { &sign(f, m - 1) * &tail };
        push("mixed convergents", lhs == rhs);
    }

    let mut rev = a.to_vec();
    rev.reverse();
    push("<W*> = <W>", k(&rev) == full);

    if let Ok(scaled) = w.scale(y) {
        let ks = k(scaled.letters());
        let expect = if n.is_multiple_of(2) {
            full.clone()
        } else {
            full.scale(y)
        };
        push("<y.W> law", ks == expect);
        if n >= 1 {
            let v = fold_value(f, scaled.letters());
            let base = fold_value(f, a);
            push("y[W] = [y.W]", &v.0 * &base.1 == &base.0.scale(y) * &v.1);
        }
    }

    if n >= 2 {
        push("appended letter", appended_letter(f, &a[..n - 1], &a[n - 1]));
    }

    IdentityReport { checks }
}

/// `[V, x] = [V] + y  <=>  y <V'> (x <V'> + <(V')''>) = (-1)^(|V| - 1)`:
/// solves for `y` both ways and checks each against the other side.
fn appended_letter(f: PrimeField, v: &[Poly], x: &Poly) -> bool {
    let mut vx = v.to_vec();
    vx.push(x.clone());
    let lhs = fold_value(f, &vx);
    let base = fold_value(f, v);
    // y = [V, x] - [V]
    let yn = &(&lhs.0 * &base.1) - &(&base.0 * &lhs.1);
    let yd = &lhs.1 * &base.1;
    let vd = &v[1..];
    let kd = continuant_of(f, vd);
    let factor = &kd * &(&(x * &kd) + &continuant_truncated(f, vd));
    let s = sign(f, v.len() - 1);
    let forward = &yn * &factor == &s * &yd;
    // y' = (-1)^(|V|-1) / factor, then [V] + y' must equal [V, x]
    if factor.is_zero() {
        return false;
    }
    let sum = (&(&base.0 * &factor) + &(&s * &base.1), &base.1 * &factor);
    forward && frac_eq(&sum, &lhs)
}

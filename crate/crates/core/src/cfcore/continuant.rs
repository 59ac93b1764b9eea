use super::word::Word;
use crate::ffpoly::{Poly, PrimeField};

/// Continuant `<a_1, ..., a_n>` of a raw sequence, by the forward recurrence
/// `K_{k+1} = a_{k+1} K_k + K_{k-1}`. The empty sequence gives 1.
pub fn continuant_of(field: PrimeField, terms: &[Poly]) -> Poly {
    let mut prev = Poly::zero(field);
    let mut cur = Poly::one(field);
    for a in terms {
        let next = &(a * &cur) + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Continuant expanded from the left end, `<W> = w_1 <W'> + <W''>`-style
/// recursion unrolled from the back. Equal to [`continuant_of`]; kept as an
/// independent evaluation order.
pub fn continuant_from_left(field: PrimeField, terms: &[Poly]) -> Poly {
    // suffix continuants: s_k = <a_k, ..., a_n>, s_{n+1} = 1, s_{n+2} = 0
    let mut next = Poly::zero(field);
    let mut cur = Poly::one(field);
    for a in terms.iter().rev() {
        let s = &(a * &cur) + &next;
        next = std::mem::replace(&mut cur, s);
    }
    cur
}

/// Continuant of the derived word `W'` (first term removed). By convention
/// the derived word of the empty word has continuant 0.
pub fn continuant_derived(field: PrimeField, terms: &[Poly]) -> Poly {
    if terms.is_empty() {
        Poly::zero(field)
    } else {
        continuant_of(field, &terms[1..])
    }
}

/// Continuant of `W''` (last term removed), 0 for the empty word.
pub fn continuant_truncated(field: PrimeField, terms: &[Poly]) -> Poly {
    if terms.is_empty() {
        Poly::zero(field)
    } else {
        continuant_of(field, &terms[..terms.len() - 1])
    }
}

/// `<W>` over all terms of the word, head included when present.
pub fn continuant(w: &Word) -> Poly {
    continuant_of(w.field(), &w.terms())
}

/// Value of the word as `(numerator, denominator)`: `(<W>, <W'>)` over the
/// letters, with the head folded in as `a_0 + 1/[W]` when present.
pub fn cf_eval(w: &Word) -> (Poly, Poly) {
    let f = w.field();
    let terms = w.terms();
    (continuant_of(f, &terms), continuant_derived(f, &terms))
}

/// A convergent `x_k / y_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentPair {
    pub x: Poly,
    pub y: Poly,
}

/// Convergents `(x_k, y_k)` for `k = 1..n`, from the seeds
/// `(x_0, x_1) = (1, a_1)` and `(y_0, y_1) = (0, 1)`. The head, when present,
/// plays the role of `a_1`.
pub fn convergents(w: &Word) -> Vec<ConvergentPair> {
    let f = w.field();
    let mut out = Vec::with_capacity(w.len() + 1);
    let (mut xp, mut yp) = (Poly::zero(f), Poly::one(f));
    let (mut x, mut y) = (Poly::one(f), Poly::zero(f));
    for a in w.terms() {
        let nx = &(&a * &x) + &xp;
        let ny = &(&a * &y) + &yp;
        xp = std::mem::replace(&mut x, nx);
        yp = std::mem::replace(&mut y, ny);
        out.push(ConvergentPair {
            x: x.clone(),
            y: y.clone(),
        });
    }
    out
}

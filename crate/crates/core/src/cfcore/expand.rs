use super::continuant::continuant_of;
use super::word::Word;
use crate::ffpoly::Poly;
use crate::laurent::LaurentSeries;
use crate::{Error, Result};

/// Series longer than this are expanded by peeling letters off a truncated
/// copy first and then applying them to the whole series in one step.
const CHUNKED_MIN_PRECISION: usize = 512;

/// Continued fraction of `p / q` by Euclid's algorithm.
///
/// When `deg p <= deg q` the first quotient has degree `<= 0` and becomes the
/// head of the word (possibly 0).
pub fn euclid_cf(p: &Poly, q: &Poly) -> Result<Word> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let f = q.field();
    let mut terms = Vec::new();
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (quo, rem) = a.divrem(&b)?;
        terms.push(quo);
        a = b;
        b = rem;
    }
    Ok(split_head(f, p.deg_or_neg() <= q.deg_or_neg(), terms))
}

fn split_head(f: crate::ffpoly::PrimeField, has_head: bool, mut terms: Vec<Poly>) -> Word {
    if has_head && !terms.is_empty() {
        let head = terms.remove(0);
        Word::raw(f, Some(head), terms)
    } else {
        Word::raw(f, None, terms)
    }
}

/// Continued fraction of a truncated series.
///
/// Runs `a_k = [z_k]`, `z_{k+1} = 1/(z_k - a_k)` with exact precision
/// tracking, stopping when the polynomial part of a complete quotient is no
/// longer determined or when the remaining tail is zero to the known
/// precision. Returns the word and the number of letters (head excluded)
/// certified for every series sharing the known coefficients: letter `k` is
/// certified when `order <= -2 deg(q_k) - 1`, with `q_k` the denominator of
/// the `k`-th convergent.
pub fn cf_of_series(a: &LaurentSeries) -> (Word, usize) {
    let (w, certified, _) = expand_series(a);
    (w, certified)
}

/// [`cf_of_series`] plus whether the expansion ended on a tail that is zero to
/// the known precision (as opposed to running out of precision).
pub(crate) fn expand_series(a: &LaurentSeries) -> (Word, usize, bool) {
    let f = a.field();
    if a.is_zero() {
        return (Word::empty(f), 0, true);
    }
    let mut terms = Vec::new();
    let zero_tail = expand_terms(a.clone(), &mut terms);
    let has_head = a.top() < 1;
    let order = a.order();
    let mut certified = 0;
    let mut den_degree: i64 = 0;
    for (k, t) in terms.iter().enumerate() {
        if k > 0 {
            den_degree += t.deg_or_neg().max(0);
        }
        if order > -2 * den_degree - 1 {
            break;
        }
        if !(has_head && k == 0) {
            certified += 1;
        }
    }
    (split_head(f, has_head, terms), certified, zero_tail)
}

/// Appends letters of `z` to `out`; true when stopped on a zero tail.
fn expand_terms(mut z: LaurentSeries, out: &mut Vec<Poly>) -> bool {
    loop {
        if z.precision() > CHUNKED_MIN_PRECISION {
            let mut part = Vec::new();
            expand_terms(z.truncate(z.precision() / 2), &mut part);
            if !part.is_empty() {
                let next = complete_quotient(&z, &part);
                out.extend(part);
                match next {
                    Some(n) => {
                        z = n;
                        continue;
                    }
                    None => return true,
                }
            }
        }
        let Ok(q) = z.poly_part() else { return false };
        let rest = z.frac().expect("precision checked by poly_part");
        out.push(q);
        if rest.is_zero() {
            return true;
        }
        z = rest.inv().expect("nonzero series");
    }
}

/// Complete quotient after `terms`: with `z = [terms, z']`,
/// `z' = (x_{j-1} - y_{j-1} z) / (y_j z - x_j)`.
/// `None` when the denominator vanishes to the known precision. With no
/// terms, `z` itself is returned.
pub fn complete_quotient(z: &LaurentSeries, terms: &[Poly]) -> Option<LaurentSeries> {
    let f = z.field();
    let j = terms.len();
    if j == 0 {
        return Some(z.clone());
    }
    let x1 = continuant_of(f, terms);
    let x0 = continuant_of(f, &terms[..j - 1]);
    let y1 = continuant_of(f, &terms[1..]);
    let y0 = if j >= 2 {
        continuant_of(f, &terms[1..j - 1])
    } else {
        Poly::zero(f)
    };
    let den = z.mul_poly(&y1).sub_poly(&x1);
    if den.is_zero() {
        return None;
    }
    let num = z.mul_poly(&y0).neg().add_poly(&x0);
    num.div(&den).ok()
}

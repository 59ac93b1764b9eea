use super::equation::{taylor_shift, AlgebraicEquation};
use crate::cfcore::Word;
use crate::ffpoly::Poly;
use crate::{Error, Result};

/// Partial quotients of the dominant root by repeated translation and
/// inversion of the equation.
///
/// Each step takes `q = (-c_(n-1)) div c_n`, replaces `P(x)` by
/// `x^n P(q + 1/x)` and continues. A first quotient of degree `< 1` becomes
/// the head of the word. The expansion stops early, with the exact root's
/// last quotient included, when `P(q) = 0`.
pub fn expand_root_direct(eq: &AlgebraicEquation, count: usize) -> Result<Word> {
    let f = eq.field();
    let n = eq.degree();
    let mut coeffs = eq.coeffs().to_vec();
    let mut head: Option<Poly> = None;
    let mut letters: Vec<Poly> = Vec::new();
    let mut first = true;
    while letters.len() < count {
        let lead = &coeffs[n];
        if lead.is_zero() {
            return Err(Error::DegenerateLeading);
        }
        let q = (-&coeffs[n - 1]).quo(lead)?;
        let is_head = q.deg_or_neg() < 1;
        if is_head && !first {
            return Err(Error::DominantRootViolation {
                position: letters.len() + 1,
            });
        }
        let shifted = taylor_shift(&coeffs, &q);
        let exact = shifted[0].is_zero();
        if is_head {
            head = Some(q);
        } else {
            letters.push(q);
        }
        first = false;
        if exact {
            break;
        }
        coeffs = shifted;
        coeffs.reverse();
    }
    Word::new(f, head, letters)
}

use super::direct::expand_root_direct;
use super::equation::HyperquadraticEquation;
use crate::cfcore::Word;
use crate::{Error, Result};

/// Letters taken from the direct engine before the transducer runs.
const BOOTSTRAP: usize = 8;

/// Partial quotients of the root of a hyperquadratic equation by streaming
/// the continued fraction of `alpha^r` through `alpha = (-B b - D)/(A b + C)`
/// where `b = alpha^r`.
///
/// The letters of `alpha^r` are the letters of `alpha` with `T` replaced by
/// `T^r`, so the expansion feeds on its own output. A bootstrap prefix from
/// the direct engine starts the stream and is checked against the
/// transducer's output. With `max_input_degree` set, the run stops before
/// absorbing a letter of larger degree and returns the letters produced so
/// far. Requires `r > 1`: for `r = 1` the stream is not causal.
pub fn expand_root_frobenius(
    hq: &HyperquadraticEquation,
    count: usize,
    max_input_degree: Option<usize>,
) -> Result<Word> {
    if hq.r < 2 {
        return Err(Error::InvalidParameter("the transducer needs r > 1".into()));
    }
    let eq = hq.to_equation()?;
    let f = eq.field();
    if count == 0 {
        return Ok(Word::empty(f));
    }
    let boot = expand_root_direct(&eq, BOOTSTRAP)?;
    if boot.len() < BOOTSTRAP {
        return Ok(boot.truncated(count));
    }
    let has_head = boot.head().is_some();
    let mut terms = boot.terms();
    let known = terms.len();
    let target = count + has_head as usize;
    let r = hq.r;

    // alpha = (a b + b_) / (c b + d) with b the unread part of alpha^r
    let (mut a, mut b, mut c, mut d) = (-&hq.b, -&hq.d, hq.a.clone(), hq.c.clone());
    let mut read = 0usize;
    let mut emitted = 0usize;
    while emitted < target {
        let tail_ready = !(has_head && read == 0);
        if tail_ready && !c.is_zero() {
            let d_beta = terms.get(read).map_or(r as i64, |u| r as i64 * u.deg_or_neg());
            let dc = c.deg_or_neg();
            let det = &(&a * &d) - &(&b * &c);
            if d.deg_or_neg() < dc + d_beta && det.deg_or_neg() < 2 * dc + d_beta {
                let q = a.quo(&c)?;
                let is_head = has_head && emitted == 0;
                if !is_head && q.deg_or_neg() < 1 {
                    return Err(Error::InconsistentExpansion { position: emitted });
                }
                if emitted < known {
                    if q != terms[emitted] {
                        return Err(Error::InconsistentExpansion { position: emitted });
                    }
                } else {
                    terms.push(q.clone());
                }
                let na = &a - &(&q * &c);
                let nb = &b - &(&q * &d);
                a = std::mem::replace(&mut c, na);
                b = std::mem::replace(&mut d, nb);
                emitted += 1;
                continue;
            }
        }
        let Some(next) = terms.get(read) else {
            return Err(Error::NoConvergence);
        };
        let input_degree = next.deg_or_neg().max(0) as usize * r;
        if max_input_degree.is_some_and(|cap| input_degree > cap) {
            break;
        }
        let u = next.compose_power(r);
        let na = &(&a * &u) + &b;
        let nc = &(&c * &u) + &d;
        b = std::mem::replace(&mut a, na);
        d = std::mem::replace(&mut c, nc);
        read += 1;
    }
    terms.truncate(emitted);
    let (head, letters) = if has_head && !terms.is_empty() {
        let rest = terms.split_off(1);
        (terms.pop(), rest)
    } else {
        (None, terms)
    };
    let mut w = Word::new(f, head, letters)?;
    if w.len() > count {
        w = w.truncated(count);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::AlgebraicEquation;
    use crate::ffpoly::{Bindings, PrimeField};

    fn pb(p: u64, a: i64, b: i64) -> HyperquadraticEquation {
        let f = PrimeField::new(p).unwrap();
        let mut env = Bindings::new();
        env.insert("a".into(), f.elem(a));
        env.insert("b".into(), f.elem(b));
        let text = format!("b*t*x^{} - (a*b*t^2+1)*(x^{p}+x) + a^2*b*t^3 + (2*a+1/b)*t", p + 1);
        AlgebraicEquation::parse(&text, f, &env)
            .unwrap()
            .as_hyperquadratic()
            .unwrap()
    }

    #[test]
    fn matches_direct_engine() {
        for (p, a, b) in [(3, 1, 1), (5, 1, 2), (7, 1, 2), (7, 3, 5)] {
            let hq = pb(p, a, b);
            let e = hq.to_equation().unwrap();
            let want = expand_root_direct(&e, 30).unwrap();
            assert_eq!(expand_root_frobenius(&hq, 30, None).unwrap(), want, "p = {p}");
        }
    }

    #[test]
    fn quadratic_is_rejected() {
        let f = PrimeField::new(5).unwrap();
        let hq = AlgebraicEquation::parse("x^2 - t*x - 1", f, &Bindings::new())
            .unwrap()
            .as_hyperquadratic()
            .unwrap();
        assert!(matches!(
            expand_root_frobenius(&hq, 20, None),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn degree_cap_stops_early() {
        let hq = pb(7, 1, 2);
        let w = expand_root_frobenius(&hq, 100, Some(300)).unwrap();
        assert!(w.len() < 100);
        assert!(w.len() >= 12);
    }
}

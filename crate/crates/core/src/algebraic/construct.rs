use super::equation::{eval_coeffs_series, AlgebraicEquation, HyperquadraticEquation};
use super::hensel::root_series;
use crate::cfcore::{continuant_of, Word};
use crate::ffpoly::{parse_x_fraction, Bindings, Poly, PrimeField};
use crate::laurent::LaurentSeries;
use crate::{Error, Result};

/// Extra coefficients computed beyond the requested precision when a check
/// involves a derivative or a division.
const EXTRA_PRECISION: usize = 16;

/// Convergent continuants `(x_l, x_(l-1), y_l, y_(l-1))` of a term sequence,
/// with `x_(-1) = 0`, `x_0 = 1`, `y_(-1) = 1`, `y_0 = 0` for the empty one.
fn last_convergents(f: PrimeField, terms: &[Poly]) -> (Poly, Poly, Poly, Poly) {
    let l = terms.len();
    if l == 0 {
        return (Poly::one(f), Poly::zero(f), Poly::zero(f), Poly::one(f));
    }
    let x1 = continuant_of(f, terms);
    let x0 = continuant_of(f, &terms[..l - 1]);
    let y1 = continuant_of(f, &terms[1..]);
    let y0 = if l >= 2 {
        continuant_of(f, &terms[1..l - 1])
    } else {
        Poly::zero(f)
    };
    (x1, x0, y1, y0)
}

/// Relation `A x^(r+1) + B x^r + C x + D = 0` satisfied by
/// `alpha = [prefix, alpha_(l+1)]` when `alpha^r = P alpha_(l+1) + Q`.
pub fn hyperquadratic_relation(prefix: &Word, p: &Poly, q: &Poly, r: usize) -> Result<HyperquadraticEquation> {
    let f = prefix.field();
    let terms = prefix.terms();
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (x1, x0, y1, y0) = last_convergents(f, &terms);
    let a = y1.clone();
    let b = -&x1;
    let c = &(&y0 * p) - &(&y1 * q);
    let d = &(&x1 * q) - &(&x0 * p);
    HyperquadraticEquation::new(a, b, c, d, r)
}

/// The equation of [`hyperquadratic_relation`] as a polynomial in `x`.
pub fn hyperquadratic_from_prefix(prefix: &Word, p: &Poly, q: &Poly, r: usize) -> Result<AlgebraicEquation> {
    hyperquadratic_relation(prefix, p, q, r)?.to_equation()
}

/// Quadratic equation of `[prefix, period, period, ...]`.
///
/// The purely periodic tail `beta` satisfies
/// `Y_k beta^2 + (Y_(k-1) - X_k) beta - X_(k-1) = 0`, and
/// `beta = (x_(l-1) - y_(l-1) alpha) / (y_l alpha - x_l)`.
pub fn quadratic_from_periodic(prefix: &Word, period: &Word) -> Result<AlgebraicEquation> {
    let f = prefix.field();
    if period.field() != f {
        return Err(Error::FieldMismatch);
    }
    if period.head().is_some() {
        return Err(Error::InvalidParameter("the period cannot have a head".into()));
    }
    if period.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (xk, xk0, yk, yk0) = last_convergents(f, period.letters());
    let (x1, x0, y1, y0) = last_convergents(f, &prefix.terms());
    // N = n0 + n1 alpha, M = m0 + m1 alpha
    let (n0, n1) = (x0, -&y0);
    let (m0, m1) = (-&x1, y1);
    let sq = |a0: &Poly, a1: &Poly, b0: &Poly, b1: &Poly| [a0 * b0, &(a0 * b1) + &(a1 * b0), a1 * b1];
    let nn = sq(&n0, &n1, &n0, &n1);
    let nm = sq(&n0, &n1, &m0, &m1);
    let mm = sq(&m0, &m1, &m0, &m1);
    let mid = &yk0 - &xk;
    let coeffs = (0..3)
        .map(|i| &(&(&yk * &nn[i]) + &(&mid * &nm[i])) - &(&xk0 * &mm[i]))
        .collect();
    AlgebraicEquation::new(f, coeffs)
}

/// `r > 1 + deg(UZ - VW)`, the condition under which the partial quotients
/// of a root of `x = (U x^r + V)/(W x^r + Z)` have unbounded degrees.
pub fn unbounded_predicate(u: &Poly, v: &Poly, w: &Poly, z: &Poly, r: usize) -> Result<bool> {
    let det = &(u * z) - &(v * w);
    match det.degree() {
        None => Err(Error::DegenerateTransformation),
        Some(d) => Ok(r as u64 > 1 + d as u64),
    }
}

/// Checks `alpha' = R(alpha)` on the root's series, with `R` a rational
/// expression in `x` (standing for `alpha`) and `T`. True when both sides
/// agree on at least `precision` coefficients.
pub fn verify_derivative_relation(
    eq: &AlgebraicEquation,
    relation: &str,
    bindings: &Bindings,
    precision: usize,
) -> Result<bool> {
    let f = eq.field();
    let (num, den) = parse_x_fraction(relation, f, bindings)?;
    let alpha = root_series(eq, precision + EXTRA_PRECISION)?;
    let lhs = alpha.derivative();
    let inv_den = LaurentSeries::from_rational(&Poly::one(f), &den, precision + EXTRA_PRECISION)?;
    let rhs = if num.is_empty() {
        LaurentSeries::zero(f, alpha.order())
    } else {
        eval_coeffs_series(&num, &alpha).mul(&inv_den)
    };
    let diff = lhs.sub(&rhs);
    let top = if lhs.is_zero() { rhs.top() } else { lhs.top() };
    Ok(diff.is_zero() && top - diff.order() >= precision as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{expand_root_certified, expand_root_certified_from_seed, expand_root_direct};
    use crate::ffpoly::parse_poly;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn word(f: PrimeField, head: Option<&str>, letters: &[&str]) -> Word {
        let h = head.map(|s| parse_poly(s, f).unwrap());
        Word::new(f, h, letters.iter().map(|s| parse_poly(s, f).unwrap()).collect()).unwrap()
    }

    fn eq(text: &str, f: PrimeField) -> AlgebraicEquation {
        AlgebraicEquation::parse(text, f, &Bindings::new()).unwrap()
    }

    #[test]
    fn phi_from_prefix() {
        let f = field(5);
        let e = hyperquadratic_from_prefix(&word(f, None, &["t"]), &Poly::one(f), &Poly::zero(f), 1).unwrap();
        assert_eq!(e, eq("x^2 - t*x - 1", f));
    }

    #[test]
    fn pb_from_prefix_up_to_unit() {
        for p in [3u64, 5, 7, 11, 13] {
            let f = field(p);
            for (a, b) in [(1i64, 1i64), (1, 2), (2, 3)] {
                let (af, bf) = (f.elem(a), f.elem(b));
                if af.is_zero() || bf.is_zero() {
                    continue;
                }
                let prefix = Word::from_letters(f, vec![Poly::t(f).scale(af), Poly::t(f).scale(bf)]).unwrap();
                let pp = parse_poly("t^2 - 1", f).unwrap();
                let q = Poly::t(f).scale(af + bf.inv().unwrap());
                let got = hyperquadratic_from_prefix(&prefix, &pp, &q, p as usize).unwrap();
                let mut env = Bindings::new();
                env.insert("a".into(), af);
                env.insert("b".into(), bf);
                let text = format!("b*t*x^{} - (a*b*t^2+1)*(x^{p}+x) + a^2*b*t^3 + (2*a+1/b)*t", p + 1);
                let want = AlgebraicEquation::parse(&text, f, &env).unwrap();
                assert!(got.proportional_to(&want), "p = {p}, (a, b) = ({a}, {b})");
            }
        }
    }

    #[test]
    fn prefix_round_trip_p13() {
        let f = field(13);
        let prefix = word(f, Some("0"), &["t", "12*t", "7*t", "11*t", "8*t", "5*t"]);
        let pp = parse_poly("(t^2+8)^4", f).unwrap();
        let q = parse_poly("8*t^7 + t^5 + 9*t^3 + 7*t", f).unwrap();
        // beta = 1/alpha has no head
        let beta = word(f, None, &["t", "12*t", "7*t", "11*t", "8*t", "5*t"]);
        let e = hyperquadratic_from_prefix(&beta, &pp, &q, 13).unwrap();
        let w = expand_root_direct(&e, 10).unwrap();
        assert_eq!(
            w.to_string(),
            "[t, 12*t, 7*t, 11*t, 8*t, 5*t, t^5 + 7*t^3 + 3*t, 3*t, 9*t, 4*t]"
        );
        assert_eq!(&w.letters()[..6], prefix.letters());
    }

    #[test]
    fn quadratics_from_periods() {
        let f = field(5);
        let empty = Word::empty(f);
        assert_eq!(
            quadratic_from_periodic(&empty, &word(f, None, &["t"])).unwrap(),
            eq("x^2 - t*x - 1", f)
        );
        assert_eq!(
            quadratic_from_periodic(&empty, &word(f, None, &["2*t"])).unwrap(),
            eq("x^2 - 2*t*x - 1", f)
        );
        let e = quadratic_from_periodic(&word(f, None, &["t"]), &word(f, None, &["t"])).unwrap();
        assert!(expand_root_certified(&e, 12)
            .unwrap()
            .letters()
            .iter()
            .all(|u| *u == Poly::t(f)));
        // a root that is not the dominant one, reached from a seed
        let prefix = word(f, None, &["t^2", "4*t + 1"]);
        let period = word(f, None, &["t", "3*t"]);
        let e = quadratic_from_periodic(&prefix, &period).unwrap();
        let approx = word(f, None, &["t^2", "4*t + 1", "t", "3*t"]);
        let (n, d) = crate::cfcore::cf_eval(&approx);
        let seed = LaurentSeries::from_rational(&n, &d, 6).unwrap();
        let w = expand_root_certified_from_seed(&e, &seed, 8, 1 << 12).unwrap();
        assert_eq!(w.to_string(), "[t^2, 4*t + 1, t, 3*t, t, 3*t, t, 3*t]");
    }

    #[test]
    fn unbounded_degrees_condition() {
        let f = field(3);
        let one = Poly::one(f);
        let zero = Poly::zero(f);
        assert!(unbounded_predicate(&one, &zero, &zero, &one, 3).unwrap());
        assert!(!unbounded_predicate(&one, &zero, &zero, &one, 1).unwrap());
        assert_eq!(
            unbounded_predicate(&one, &one, &one, &one, 3),
            Err(Error::DegenerateTransformation)
        );
    }

    #[test]
    fn derivative_relations() {
        let quartic = "x^4 + x^2 - t*x + 1";
        assert!(verify_derivative_relation(&eq(quartic, field(3)), "(x^3 - x)/t", &Bindings::new(), 200).unwrap());
        assert!(verify_derivative_relation(
            &eq(quartic, field(13)),
            "(2*x^2 - t*x/4 + 1)/(9*t^2 - 6)",
            &Bindings::new(),
            200
        )
        .unwrap());
        assert!(!verify_derivative_relation(&eq(quartic, field(13)), "(x^3 - x)/t", &Bindings::new(), 200).unwrap());
        assert!(verify_derivative_relation(&eq("x - t", field(7)), "1", &Bindings::new(), 50).unwrap());
    }
}

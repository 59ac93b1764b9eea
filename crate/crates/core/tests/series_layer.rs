//! Series-level identities: roots, Frobenius transport, derivative relations
//! and complete quotients, each checked to a fixed number of coefficients.

use formal_cf::algebraic::{hensel_root, root_series, verify_derivative_relation, AlgebraicEquation};
use formal_cf::cfcore::{cf_eval, cf_of_series, complete_quotient, Word};
use formal_cf::families::{family_word, fibonacci_poly, robbins3_word, FamilySpec};
use formal_cf::ffpoly::{parse_poly, Bindings, Poly, PrimeField};
use formal_cf::laurent::LaurentSeries;

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn eq(text: &str, p: u64) -> AlgebraicEquation {
    AlgebraicEquation::parse(text, field(p), &Bindings::new()).unwrap()
}

fn poly(text: &str, p: u64) -> Poly {
    parse_poly(text, field(p)).unwrap()
}

/// `d` vanishes on at least `n` coefficients below `top`.
fn vanishes(d: &LaurentSeries, top: i64, n: usize) -> bool {
    d.is_zero() && top - d.order() >= n as i64
}

fn power(s: &LaurentSeries, e: usize) -> LaurentSeries {
    let mut acc = s.clone();
    for _ in 1..e {
        acc = acc.mul(s);
    }
    acc
}

#[test]
fn cube_root_over_f2() {
    let f = field(2);
    let seed = LaurentSeries::from_poly(&Poly::one(f), -4);
    let s = hensel_root(&eq("x^3 - 1 - 1/t", 2), &seed, 220).unwrap();
    let rhs = LaurentSeries::from_rational(&poly("t + 1", 2), &Poly::t(f), 220).unwrap();
    assert!(vanishes(&power(&s, 3).sub(&rhs), 0, 200));
    assert_eq!(&s.coeffs()[..12], &[1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1]);
}

#[test]
fn fifth_power_by_frobenius_transport() {
    let (num, den) = (poly("t^2", 5), poly("t^2 - 3*t + 2", 5));
    let s = LaurentSeries::from_rational(&num, &den, 50).unwrap();
    let by_product = power(&s, 5);
    // (u/v)^5 = u(T^5)/v(T^5) over F_5
    let transported = LaurentSeries::from_rational(&num.compose_power(5), &den.compose_power(5), 50).unwrap();
    assert!(vanishes(&by_product.sub(&transported), 0, 50));
    let frob = s.pow_frobenius(5).unwrap();
    assert!(vanishes(&frob.truncate(50).sub(&transported), 0, 50));
    // nonzero coefficients sit at exponents divisible by 5
    for (k, &c) in transported.coeffs().iter().enumerate() {
        assert!(c == 0 || k % 5 == 0);
    }
}

#[test]
fn derivative_relations_of_the_quartic() {
    let none = Bindings::new();
    let quartic = "x^4 + x^2 - t*x + 1";
    assert!(verify_derivative_relation(&eq(quartic, 3), "(x^3 - x)/t", &none, 200).unwrap());
    assert!(verify_derivative_relation(&eq(quartic, 13), "(2*x^2 - t*x/4 + 1)/(9*t^2 - 6)", &none, 200).unwrap());
    assert!(!verify_derivative_relation(&eq(quartic, 5), "(x^3 - x)/t", &none, 200).unwrap());
}

#[test]
fn quartic_p13_is_hyperquadratic() {
    let alpha = root_series(&eq("x^4 + x^2 - t*x + 1", 13), 240).unwrap();
    let hq = eq("9*t*x^14 - (t^2+1)*x^13 + (t^6+t^4+11*t^2+1)*x - (t^5+2*t^3+2*t)", 13);
    // terms have size at most |T|^5
    assert!(vanishes(&hq.eval_series(&alpha), 5, 200));
}

#[test]
fn modified_quartic_p7_chain() {
    let p = 7;
    let alpha = root_series(&eq("x^4 + x^2 - t*x - 1/12", p), 400).unwrap();
    let beta = alpha.inv().unwrap();
    let octic = eq("(2*t^2+2)*x^8 + (3*t^3+5*t)*x^7 + 4*t*x + 1", p);
    assert!(vanishes(&octic.eval_series(&beta), 10, 200));

    let (w, certified) = cf_of_series(&beta);
    assert!(certified >= 10);
    let letters = w.letters();
    assert_eq!(
        Word::from_letters(field(p), letters[..10].to_vec())
            .unwrap()
            .to_string(),
        "[2*t, 6*t, 6*t, 3*t^3 + 6*t, 5*t, 3*t, 4*t, 2*t, 4*t^3 + t, t]"
    );
    let q = poly("(t^2 - 1)^2", p);
    let b4 = complete_quotient(&beta, &letters[..3]).unwrap();
    let lhs = beta.pow_frobenius(7).unwrap();
    let rhs = b4
        .mul_poly(&q.scale(field(p).elem(3)))
        .add_poly(&poly("4*t^3 + 2*t", p));
    assert!(vanishes(&lhs.sub(&rhs), 7, 200));

    let b2 = complete_quotient(&beta, &letters[..1]).unwrap();
    let b9 = complete_quotient(&beta, &letters[..8]).unwrap();
    let lhs = b2.pow_frobenius(7).unwrap();
    let printed = b9.mul_poly(&q).neg().add_poly(&poly("3*t^3 + 5*t", p));
    // the relation as printed misses a factor 2: the leading terms are 6T^7 and 3T^7
    assert_eq!(lhs.sub(&printed).top(), 7);
    let doubled = printed.scale(field(p).elem(2));
    assert!(vanishes(&lhs.sub(&doubled), 7, 200));
}

/// Series of a word's value from one of its convergents.
fn word_series(w: &Word, precision: usize) -> LaurentSeries {
    let (n, d) = cf_eval(w);
    LaurentSeries::from_rational(&n, &d, precision).unwrap()
}

#[test]
fn square_of_mahler_dual_is_w_infinity_at_t_squared() {
    let f = field(3);
    let beta = root_series(&eq("x^4 - t*x^3 - 1", 3), 260).unwrap();
    let w = robbins3_word(200);
    let doubled: Vec<Poly> = w.letters().iter().map(|a| a.compose_power(2)).collect();
    let rhs = word_series(&Word::from_letters(f, doubled).unwrap(), 260);
    assert!(vanishes(&beta.mul(&beta).sub(&rhs), 2, 200));
    // the same series from the word [T, T^3, T^9, ...]
    let mahler_dual = family_word(&FamilySpec::MahlerDual { p: 3, r: 3 }, 6).unwrap();
    assert!(vanishes(
        &word_series(&mahler_dual, 200).sub(&beta.truncate(200)),
        1,
        200
    ));
}

#[test]
fn mahler_approximations() {
    for r in [2u64, 3, 5] {
        let f = field(r);
        let seed = LaurentSeries::from_coeffs(f, -1, vec![1]);
        let prec = (r.pow(4) + 20) as usize;
        let alpha = hensel_root(&eq(&format!("x - 1/t - x^{r}"), r), &seed, prec).unwrap();
        for n in 1..=3u32 {
            let v = Poly::monomial(f.one(), r.pow(n - 1) as usize);
            let mut u = Poly::zero(f);
            for k in 0..n {
                u = &u + &Poly::monomial(f.one(), (r.pow(n - 1) - r.pow(k)) as usize);
            }
            let approx = LaurentSeries::from_rational(&u, &v, prec).unwrap();
            let diff = alpha.sub(&approx);
            // |alpha - U_n/V_n| = |V_n|^(-r)
            assert_eq!(diff.top(), -(r.pow(n) as i64), "r = {r}, n = {n}");
            assert_eq!(diff.top(), -(r as i64) * v.degree().unwrap() as i64);
        }
    }
}

#[test]
fn golden_ratio_powers() {
    for p in [2u64, 3, 5, 7] {
        let f = field(p);
        let phi = root_series(&eq("x^2 - t*x - 1", p), 120).unwrap();
        let mut pow = phi.clone();
        for k in 1..=8usize {
            pow = pow.mul(&phi);
            // Phi^(k+1) = Phi F_k + F_(k-1)
            let rhs = phi.mul_poly(&fibonacci_poly(k, f)).add_poly(&fibonacci_poly(k - 1, f));
            assert!(vanishes(&pow.sub(&rhs), (k + 1) as i64, 100), "p = {p}, k = {k}");
        }
    }
}

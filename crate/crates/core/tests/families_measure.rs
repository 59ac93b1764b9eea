//! Families against their equations, and degree-measure invariants.

use formal_cf::algebraic::hyperquadratic_from_prefix;
use formal_cf::cfcore::Word;
use formal_cf::families::{
    family_degrees, family_equation, fibonacci_poly, schmidt_word, theta_b, theta_b_degree, theta_word, FamilySpec,
};
use formal_cf::ffpoly::{Poly, PrimeField};
use formal_cf::measure::{degree_sequence_for_measure, nu_closed_form, nu_estimate, nu_estimate_degrees, to_f64};
use num_rational::Ratio;
use proptest::prelude::*;

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn fibonacci_at_r_minus_one() {
    for (p, r) in [
        (3u64, 3usize),
        (3, 9),
        (3, 27),
        (5, 5),
        (5, 25),
        (7, 7),
        (11, 11),
        (13, 13),
    ] {
        let f = field(p);
        let want = Poly::from_ints(f, &[4, 0, 1]).pow(((r - 1) / 2) as u64);
        assert_eq!(fibonacci_poly(r - 1, f), want, "p = {p}, r = {r}");
    }
}

#[test]
fn theta_b_are_monic_with_the_recurrence_degrees() {
    for p in [3u64, 5, 7, 11, 13] {
        let bs = theta_b(field(p), 6).unwrap();
        for (n, b) in bs.iter().enumerate() {
            assert_eq!(b.leading(), Some(field(p).one()), "p = {p}, n = {n}");
            assert_eq!(
                b.degree().unwrap() as u128,
                theta_b_degree(p, n as u64),
                "p = {p}, n = {n}"
            );
        }
    }
}

#[test]
fn theta_equation_from_its_first_two_letters() {
    // theta = [aT, bT, theta_3] with theta^p = (T^2 - 1) theta_3 + (a + 1/b) T
    for p in [3u64, 5, 7, 11, 13] {
        let f = field(p);
        for (a, b) in [
            (1i64, 1i64),
            (1, 2),
            (2, (p - 1) as i64),
            ((p - 1) as i64, 3 % p as i64),
        ] {
            let (af, bf) = (f.elem(a), f.elem(b));
            if bf.is_zero() {
                continue;
            }
            let prefix = Word::from_letters(f, vec![Poly::t(f).scale(af), Poly::t(f).scale(bf)]).unwrap();
            let q = Poly::t(f).scale(af + bf.inv().unwrap());
            let built = hyperquadratic_from_prefix(&prefix, &Poly::from_ints(f, &[-1, 0, 1]), &q, p as usize).unwrap();
            let eq = family_equation(&FamilySpec::Theta { p, a, b }).unwrap();
            assert!(built.proportional_to(&eq), "p = {p}, (a, b) = ({a}, {b})");
        }
    }
}

#[test]
fn theta_degrees_follow_the_word() {
    for p in [3u64, 5, 7] {
        let w = theta_word(p, 1, 2, 30).unwrap();
        let from_word: Vec<u64> = w.letters().iter().map(|a| a.degree().unwrap() as u64).collect();
        assert_eq!(
            family_degrees(&FamilySpec::Theta { p, a: 1, b: 2 }, 30).unwrap(),
            from_word
        );
    }
}

#[test]
fn theta_tail_approaches_the_closed_form() {
    for p in [5u64, 7, 13] {
        let spec = FamilySpec::Theta { p, a: 1, b: 1 };
        let degrees = family_degrees(&spec, 300).unwrap();
        let est = nu_estimate_degrees(&degrees, 100).unwrap();
        let target = to_f64(nu_closed_form(&spec).unwrap());
        let got = to_f64(est.nu_tail());
        assert!((got - target).abs() < 0.15, "p = {p}: tail {got}, closed form {target}");
    }
}

#[test]
fn schmidt_word_measure() {
    // blocks (T, 2T) then their cubes: deg a_n = 3^k, measure 2 + limsup ratio
    let f = field(3);
    let base = Word::from_letters(f, vec![Poly::t(f), Poly::t(f).scale(f.elem(2))]).unwrap();
    let w = schmidt_word(&base, 3, 20).unwrap();
    let est = nu_estimate(&w, 10).unwrap();
    for (k, a) in w.letters().iter().enumerate() {
        assert_eq!(a.degree().unwrap(), 3usize.pow((k / 2) as u32));
    }
    // the first letter of a block against the sum before it: 3^k / (3^k - 1)
    assert_eq!(est.ratio_at(19).unwrap(), Ratio::new(19683, 19682));
    // the last 10 ratios start at n = 11, the block of degree 3^5
    assert_eq!(est.tail_sup, Ratio::new(243, 242));
    // degrees 1, 1, 3: the ratio 3/2 at n = 3 is the largest
    assert_eq!(est.running_sup, Ratio::new(3, 2));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn measure_invariants(degrees in prop::collection::vec(1u64..50, 2..80), window in 1usize..60) {
        let est = nu_estimate_degrees(&degrees, window).unwrap();
        prop_assert_eq!(est.ratios.len(), degrees.len() - 1);
        prop_assert!(est.tail_sup <= est.running_sup);
        prop_assert!(est.nu_tail() >= Ratio::from_integer(2));
        prop_assert_eq!(est.nu_lower(), Ratio::from_integer(2) + est.running_sup);
        let mut sum = 0u128;
        for (k, r) in est.ratios.iter().enumerate() {
            sum += degrees[k] as u128;
            prop_assert_eq!(*r, Ratio::new(degrees[k + 1] as u128, sum));
        }
    }

    #[test]
    fn constructed_sequences_reach_their_target(num in 1u128..8, den in 1u128..5) {
        let excess = Ratio::new(num, den);
        let (degrees, est) = degree_sequence_for_measure(Ratio::from_integer(2) + excess, 20).unwrap();
        // each degree is the rounded excess times the sum before it
        let sum: u128 = degrees[..19].iter().map(|&d| d as u128).sum();
        let last = *est.ratios.last().unwrap();
        let gap = if last > excess { last - excess } else { excess - last };
        prop_assert!(gap <= Ratio::new(1, 2 * sum));
    }
}

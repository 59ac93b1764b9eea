//! Continuant identities on random words.

use std::time::Instant;

use formal_cf::cfcore::{continuant, identity_suite, Word};
use formal_cf::ffpoly::{Poly, PrimeField};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(f: PrimeField, rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(0..=8);
    let letters = (0..len)
        .map(|_| {
            let deg = rng.gen_range(1..=3);
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..f.modulus() as i64)).collect();
            c.push(rng.gen_range(1..f.modulus() as i64));
            Poly::from_ints(f, &c)
        })
        .collect();
    Word::from_letters(f, letters).unwrap()
}

#[test]
fn hundred_thousand_random_words() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checks = 0usize;
    let mut failures = Vec::new();
    for k in 0..100_000 {
        let f = PrimeField::new([2u64, 3, 5, 13][k % 4]).unwrap();
        let w = random_word(f, &mut rng);
        let split = rng.gen_range(0..=w.len());
        let y = f.elem(rng.gen_range(1..f.modulus() as i64));
        let report = identity_suite(&w, split, y);
        checks += report.checks.len();
        for name in report.failures() {
            failures.push(format!("{name} on {w} split {split}"));
        }
    }
    println!("{checks} checks in {:?}", start.elapsed());
    assert!(failures.is_empty(), "{:?}", &failures[..failures.len().min(10)]);
    assert!(checks >= 100_000);
}

fn word_strategy() -> impl Strategy<Value = (Word, usize, i64)> {
    (
        prop::sample::select(vec![2u64, 3, 5, 13]),
        prop::collection::vec(prop::collection::vec(0i64..13, 1..4), 0..9),
        any::<usize>(),
        1i64..13,
    )
        .prop_map(|(p, raw, split, y)| {
            let f = PrimeField::new(p).unwrap();
            let letters = raw
                .into_iter()
                .map(|mut c| {
                    c.push(1);
                    Poly::from_ints(f, &c)
                })
                .collect::<Vec<_>>();
            let n = letters.len();
            (Word::from_letters(f, letters).unwrap(), split % (n + 1), y)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn every_identity_holds((w, split, y) in word_strategy()) {
        let f = w.field();
        let y = f.elem(y);
        prop_assume!(!y.is_zero());
        let report = identity_suite(&w, split, y);
        prop_assert!(report.all_hold(), "{:?}", report.failures());
    }

    #[test]
    fn reversal_and_scaling((w, _split, y) in word_strategy()) {
        let f = w.field();
        let y = f.elem(y);
        prop_assume!(!y.is_zero());
        prop_assert_eq!(continuant(&w.reverse()), continuant(&w));
        let scaled = continuant(&w.scale(y).unwrap());
        let want = if w.len() % 2 == 0 { continuant(&w) } else { continuant(&w).scale(y) };
        prop_assert_eq!(scaled, want);
        prop_assert_eq!(w.scale(f.one()).unwrap(), w);
    }
}

#[test]
fn two_letter_determinant_is_one() {
    let f = PrimeField::new(5).unwrap();
    let w = Word::from_letters(f, vec![Poly::from_ints(f, &[1, 2]), Poly::from_ints(f, &[3, 0, 1])]).unwrap();
    let r = identity_suite(&w, 0, f.elem(2));
    let det = r.checks.iter().find(|c| c.name == "determinant").unwrap();
    assert!(det.holds);
    let mixed = r.checks.iter().find(|c| c.name == "mixed convergents").unwrap();
    assert!(mixed.holds);
}

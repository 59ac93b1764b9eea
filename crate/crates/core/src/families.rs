//! Named expansions and equations: Fibonacci polynomials, Mahler's example
//! and its dual, words of the form `[a_1, ..., a_l, alpha^r]`, the
//! Mills-Robbins quartic and its relatives, and the conjectural expansion of
//! the roots of the equation parametrised by `(p, a, b)`.

use crate::algebraic::{
    expand_root_certified, expand_root_certified_from_seed, hyperquadratic_from_prefix, AlgebraicEquation,
    DEFAULT_PRECISION_BUDGET,
};
use crate::cfcore::Word;
use crate::ffpoly::{Bindings, Fp, Poly, PrimeField};
use crate::laurent::LaurentSeries;
use crate::{Error, Result};

/// A named family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// Root of `x^2 - T x - 1`, expansion `[T, T, T, ...]`.
    Phi { p: u64 },
    /// The polynomial `F_n`.
    FibonacciPoly { p: u64, n: usize },
    /// Mahler's series `sum T^(-r^n)`, root of `x = 1/T + x^r`.
    Mahler { p: u64, r: usize },
    /// `[T, T^r, T^(r^2), ...]`, root of `x = T + 1/x^r`.
    MahlerDual { p: u64, r: usize },
    /// `[a_1, ..., a_l, alpha^r]` for a base word `a_1, ..., a_l`.
    Schmidt { base: Word, r: usize },
    /// The word `W_infinity` over `F_3`.
    Robbins3Word,
    /// Polynomials `A_k` and exponents `i(n)` of the `p = 13` quartic.
    Quartic13Support,
    /// `theta_(a,b)` over `F_p`.
    Theta { p: u64, a: i64, b: i64 },
    /// `x^4 + x^2 - T x + 1` over `F_p`.
    Robbins { p: u64 },
    /// `x^4 + x^2 - T x - 1/12` over `F_p`, `p > 3`.
    ModifiedRobbins { p: u64 },
    /// `(x^2 - 1)^((r+1)/2) - T x^r` over `F_p`, `r` an odd power of `p`.
    Gamma { p: u64, r: usize },
    /// `alpha = [T, T, T, alpha_4]` with `alpha^5 = (T^2-1)^2 alpha_4 + 3T^3 + T`
    /// over `F_5`.
    TripleT,
}

impl FamilySpec {
    /// The family's field.
    pub fn field(&self) -> Result<PrimeField> {
        let p = match self {
            FamilySpec::Phi { p }
            | FamilySpec::FibonacciPoly { p, .. }
            | FamilySpec::Mahler { p, .. }
            | FamilySpec::MahlerDual { p, .. }
            | FamilySpec::Theta { p, .. }
            | FamilySpec::Robbins { p }
            | FamilySpec::ModifiedRobbins { p }
            | FamilySpec::Gamma { p, .. } => *p,
            FamilySpec::Schmidt { base, .. } => return Ok(base.field()),
            FamilySpec::Robbins3Word => 3,
            FamilySpec::Quartic13Support => 13,
            FamilySpec::TripleT => 5,
        };
        PrimeField::new(p)
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Phi { .. } => "phi",
            FamilySpec::FibonacciPoly { .. } => "fibonacci_poly",
            FamilySpec::Mahler { .. } => "mahler",
            FamilySpec::MahlerDual { .. } => "mahler_dual",
            FamilySpec::Schmidt { .. } => "schmidt",
            FamilySpec::Robbins3Word => "robbins3",
            FamilySpec::Quartic13Support => "quartic13_support",
            FamilySpec::Theta { .. } => "theta",
            FamilySpec::Robbins { .. } => "robbins",
            FamilySpec::ModifiedRobbins { .. } => "modified_robbins",
            FamilySpec::Gamma { .. } => "gamma",
            FamilySpec::TripleT => "triple_t",
        }
    }
}

/// `F_n` from `F_0 = 1`, `F_1 = T`, `F_(n+1) = T F_n + F_(n-1)`.
pub fn fibonacci_poly(n: usize, field: PrimeField) -> Poly {
    let t = Poly::t(field);
    let (mut prev, mut cur) = (Poly::one(field), t.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&t * &cur) + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn check_frobenius_power(f: PrimeField, r: usize) -> Result<()> {
    if r < 2 || !f.is_power_of_p(r as u64) {
        return Err(Error::NotAFrobeniusPower(r as u64));
    }
    Ok(())
}

/// `a_1, ..., a_l, a_1^r, ..., a_l^r, a_1^(r^2), ...` cut to `letters`.
pub fn schmidt_word(base: &Word, r: usize, letters: usize) -> Result<Word> {
    let f = base.field();
    check_frobenius_power(f, r)?;
    if base.head().is_some() {
        return Err(Error::InvalidParameter("the base word cannot have a head".into()));
    }
    if base.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out = Vec::with_capacity(letters);
    let mut block = base.letters().to_vec();
    while out.len() < letters {
        for a in &block {
            if out.len() == letters {
                break;
            }
            out.push(a.clone());
        }
        block = block.iter().map(|a| a.compose_power(r)).collect();
    }
    Word::from_letters(f, out)
}

/// Prefix of `W_infinity` over `F_3`, from `W_0 = ()`, `W_1 = T` and
/// `W_n = W_(n-1), 2T, W_(n-2)^(3), 2T, W_(n-1)`.
pub fn robbins3_word(letters: usize) -> Word {
    let f = PrimeField::new(3).expect("3 is prime");
    let two_t = Poly::t(f).scale(f.elem(2));
    let mut older: Vec<Poly> = Vec::new();
    let mut last = vec![Poly::t(f)];
    while last.len() < letters {
        let mut next = last.clone();
        next.push(two_t.clone());
        next.extend(older.iter().map(|a| a.compose_power(3)));
        next.push(two_t.clone());
        next.extend(last.iter().cloned());
        older = std::mem::replace(&mut last, next);
    }
    last.truncate(letters);
    Word::from_letters(f, last).expect("letters have degree at least 1")
}

/// Largest `e` with `9^e | m`; 0 when `9` does not divide `m`.
pub fn v9(mut m: u64) -> u32 {
    let mut e = 0;
    while m != 0 && m.is_multiple_of(9) {
        m /= 9;
        e += 1;
    }
    e
}

/// `A_0, ..., A_(k_max)` over `F_13` with `A_0 = T`,
/// `A_(k+1) = [A_k^13 / (T^2 + 8)^4]`, and `i(n) = v_9(4n - 1)` for
/// `n = 1..=n_max`.
pub fn quartic13_support(k_max: usize, n_max: usize) -> (Vec<Poly>, Vec<u32>) {
    let f = PrimeField::new(13).expect("13 is prime");
    let d = Poly::from_ints(f, &[8, 0, 1]).pow(4);
    let mut a = vec![Poly::t(f)];
    for _ in 0..k_max {
        let next = a
            .last()
            .expect("nonempty")
            .compose_power(13)
            .quo(&d)
            .expect("nonzero divisor");
        a.push(next);
    }
    let i = (1..=n_max as u64).map(|n| v9(4 * n - 1)).collect();
    (a, i)
}

/// The pair `(m, i)` with `n = m^2 - m + i`, `1 <= i <= 2m`.
pub fn theta_indices(n: u64) -> (u64, u64) {
    assert!(n >= 1, "indices start at 1");
    // smallest m with m^2 + m >= n
    let mut m = ((n as f64).sqrt() as u64).max(1);
    while m > 1 && (m - 1) * m >= n {
        m -= 1;
    }
    while m * m + m < n {
        m += 1;
    }
    (m, n - (m * m - m))
}

/// `lambda_n` for `theta_(a,b)`.
pub fn theta_lambda(a: Fp, b: Fp, n: u64) -> Result<Fp> {
    let (m, i) = theta_indices(n);
    let b_pow = if i % 2 == 0 {
        b
    } else {
        b.inv().ok_or(Error::ZeroScalar)?
    };
    Ok(if i == 1 {
        a
    } else if i <= m {
        -b_pow
    } else {
        b_pow
    })
}

/// `j(n)` for `theta_(a,b)`.
pub fn theta_j(n: u64) -> u64 {
    let (m, i) = theta_indices(n);
    if i <= m {
        m - i
    } else {
        i - m - 1
    }
}

/// `deg B_n`, from `b_0 = 1`, `b_n = p b_(n-1) + 2 (-1)^n`.
pub fn theta_b_degree(p: u64, n: u64) -> u128 {
    let mut b: i128 = 1;
    for k in 1..=n {
        b = p as i128 * b + if k % 2 == 0 { 2 } else { -2 };
    }
    b as u128
}

/// `B_0, ..., B_n` from `B_0 = T`, `B_1 = (T^p - T)/(T^2 - 1)`,
/// `B_k = B_(k-1)^p (T^2 - 1)^((-1)^k)`, every division checked exact.
pub fn theta_b(field: PrimeField, n: usize) -> Result<Vec<Poly>> {
    let p = field.modulus() as usize;
    let q = Poly::from_ints(field, &[-1, 0, 1]);
    let mut out = vec![Poly::t(field)];
    for k in 1..=n {
        let next = if k == 1 {
            let num = &Poly::monomial(field.one(), p) - &Poly::t(field);
            num.div_exact(&q)?.ok_or(Error::NonDivisible { n: 1 })?
        } else {
            let base = out[k - 1].compose_power(p);
            if k % 2 == 0 {
                &base * &q
            } else {
                base.div_exact(&q)?.ok_or(Error::NonDivisible { n: k })?
            }
        };
        out.push(next);
    }
    Ok(out)
}

fn theta_field(p: u64, a: i64, b: i64) -> Result<(PrimeField, Fp, Fp)> {
    let f = PrimeField::new(p)?;
    if p < 3 {
        return Err(Error::InvalidParameter("theta needs an odd prime".into()));
    }
    let (a, b) = (f.elem(a), f.elem(b));
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidParameter("theta needs a, b nonzero in F_p".into()));
    }
    Ok((f, a, b))
}

/// Letters `lambda_n B_(j(n))` of `theta_(a,b)` for `n = 1..=letters`.
pub fn theta_word(p: u64, a: i64, b: i64, letters: usize) -> Result<Word> {
    theta_word_within(p, a, b, letters, None)
}

/// [`theta_word`], stopping before the first letter of degree above
/// `max_degree` when a cap is given.
pub fn theta_word_within(p: u64, a: i64, b: i64, letters: usize, max_degree: Option<u128>) -> Result<Word> {
    let (f, af, bf) = theta_field(p, a, b)?;
    let mut count = letters;
    if let Some(cap) = max_degree {
        count = (1..=letters as u64)
            .take_while(|&n| theta_b_degree(p, theta_j(n)) <= cap)
            .count();
    }
    let j_max = (1..=count as u64).map(theta_j).max().unwrap_or(0);
    let bs = theta_b(f, j_max as usize)?;
    let mut out = Vec::with_capacity(count);
    for n in 1..=count as u64 {
        out.push(bs[theta_j(n) as usize].scale(theta_lambda(af, bf, n)?));
    }
    Word::from_letters(f, out)
}

fn parse(text: &str, f: PrimeField, env: &Bindings) -> Result<AlgebraicEquation> {
    AlgebraicEquation::parse(text, f, env)
}

/// Defining equation of a family.
pub fn family_equation(spec: &FamilySpec) -> Result<AlgebraicEquation> {
    let f = spec.field()?;
    let none = Bindings::new();
    match spec {
        FamilySpec::Phi { .. } => parse("x^2 - t*x - 1", f, &none),
        FamilySpec::Mahler { r, .. } => {
            check_frobenius_power(f, *r)?;
            parse(&format!("x - 1/t - x^{r}"), f, &none)
        }
        FamilySpec::MahlerDual { r, .. } => {
            check_frobenius_power(f, *r)?;
            parse(&format!("x^{} - t*x^{r} - 1", r + 1), f, &none)
        }
        FamilySpec::Schmidt { base, r } => {
            check_frobenius_power(f, *r)?;
            hyperquadratic_from_prefix(base, &Poly::one(f), &Poly::zero(f), *r)
        }
        FamilySpec::Robbins3Word => family_equation(&FamilySpec::Gamma { p: 3, r: 3 }),
        FamilySpec::Theta { p, a, b } => {
            let (f, af, bf) = theta_field(*p, *a, *b)?;
            let mut env = Bindings::new();
            env.insert("a".into(), af);
            env.insert("b".into(), bf);
            let text = format!("b*t*x^{} - (a*b*t^2+1)*(x^{p}+x) + a^2*b*t^3 + (2*a+1/b)*t", p + 1);
            parse(&text, f, &env)
        }
        FamilySpec::Robbins { .. } => parse("x^4 + x^2 - t*x + 1", f, &none),
        FamilySpec::ModifiedRobbins { p } => {
            if *p <= 3 {
                return Err(Error::InvalidParameter("1/12 needs p > 3".into()));
            }
            parse("x^4 + x^2 - t*x - 1/12", f, &none)
        }
        FamilySpec::Gamma { r, .. } => {
            if r % 2 == 0 || !f.is_power_of_p(*r as u64) || *r < 2 {
                return Err(Error::InvalidParameter("gamma needs r an odd power of p".into()));
            }
            parse(&format!("(x^2 - 1)^{} - t*x^{r}", r.div_ceil(2)), f, &none)
        }
        FamilySpec::TripleT => {
            let t = Poly::t(f);
            let prefix = Word::from_letters(f, vec![t.clone(), t.clone(), t])?;
            let pp = Poly::from_ints(f, &[-1, 0, 1]).pow(2);
            let q = Poly::from_ints(f, &[0, 1, 0, 3]);
            hyperquadratic_from_prefix(&prefix, &pp, &q, 5)
        }
        FamilySpec::FibonacciPoly { .. } | FamilySpec::Quartic13Support => Err(Error::UnsupportedFamily(format!(
            "{} has no defining equation",
            spec.name()
        ))),
    }
}

/// First `letters` partial quotients of a family's expansion. Families given
/// by a formula are generated from it; the others are expanded from their
/// equation with the certified engine.
pub fn family_word(spec: &FamilySpec, letters: usize) -> Result<Word> {
    let f = spec.field()?;
    match spec {
        FamilySpec::Phi { .. } => Word::from_letters(f, vec![Poly::t(f); letters]),
        FamilySpec::MahlerDual { r, .. } => {
            let base = Word::from_letters(f, vec![Poly::t(f)])?;
            schmidt_word(&base, *r, letters)
        }
        FamilySpec::Schmidt { base, r } => schmidt_word(base, *r, letters),
        FamilySpec::Robbins3Word => Ok(robbins3_word(letters)),
        FamilySpec::Theta { p, a, b } => theta_word(*p, *a, *b, letters),
        FamilySpec::Mahler { .. } => {
            // not the dominant root: start Newton's iteration at 1/T
            let eq = family_equation(spec)?;
            let seed = LaurentSeries::from_coeffs(f, -1, vec![1]);
            expand_root_certified_from_seed(&eq, &seed, letters, DEFAULT_PRECISION_BUDGET)
        }
        FamilySpec::FibonacciPoly { .. } | FamilySpec::Quartic13Support => Err(Error::UnsupportedFamily(format!(
            "{} is not a continued fraction",
            spec.name()
        ))),
        _ => expand_root_certified(&family_equation(spec)?, letters),
    }
}

/// Degrees of the first `letters` partial quotients. Families with a degree
/// formula are not expanded, so long prefixes stay cheap.
pub fn family_degrees(spec: &FamilySpec, letters: usize) -> Result<Vec<u64>> {
    let overflow = || Error::InvalidParameter("degree does not fit in 64 bits".into());
    let scaled = |d: u64, r: usize, k: usize| -> Result<u64> {
        (r as u64)
            .checked_pow(k as u32)
            .and_then(|x| x.checked_mul(d))
            .ok_or_else(overflow)
    };
    match spec {
        FamilySpec::Phi { .. } => Ok(vec![1; letters]),
        FamilySpec::MahlerDual { p, r } => {
            check_frobenius_power(PrimeField::new(*p)?, *r)?;
            (0..letters).map(|k| scaled(1, *r, k)).collect()
        }
        FamilySpec::Schmidt { base, r } => {
            check_frobenius_power(base.field(), *r)?;
            if base.is_empty() || base.head().is_some() {
                return Err(Error::InvalidParameter(
                    "the base word must be nonempty without a head".into(),
                ));
            }
            let d = base.degrees();
            (0..letters)
                .map(|k| scaled(d[k % d.len()] as u64, *r, k / d.len()))
                .collect()
        }
        FamilySpec::Theta { p, a, b } => {
            theta_field(*p, *a, *b)?;
            (1..=letters as u64)
                .map(|n| u64::try_from(theta_b_degree(*p, theta_j(n))).map_err(|_| overflow()))
                .collect()
        }
        _ => Ok(family_word(spec, letters)?
            .degrees()
            .iter()
            .map(|&d| d as u64)
            .collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::expand_root_direct;
    use crate::ffpoly::parse_poly;

    #[test]
    fn fibonacci_values() {
        let f = PrimeField::new(5).unwrap();
        assert!(fibonacci_poly(0, f).is_one());
        assert_eq!(fibonacci_poly(1, f), Poly::t(f));
        assert_eq!(fibonacci_poly(4, f).to_string(), "t^4 + 3*t^2 + 1");
    }

    #[test]
    fn schmidt_words() {
        let f = PrimeField::new(3).unwrap();
        let base = Word::from_letters(f, vec![Poly::t(f)]).unwrap();
        assert_eq!(schmidt_word(&base, 3, 4).unwrap().to_string(), "[t, t^3, t^9, t^27]");
        let f5 = PrimeField::new(5).unwrap();
        let base = Word::from_letters(f5, vec![parse_poly("t^3 + 1", f5).unwrap(), Poly::t(f5)]).unwrap();
        assert_eq!(schmidt_word(&base, 5, 6).unwrap().degrees(), vec![3, 1, 15, 5, 75, 25]);
        assert_eq!(schmidt_word(&base, 5, 2).unwrap(), base);
        assert!(schmidt_word(&base, 3, 2).is_err());
    }

    #[test]
    fn degree_formulas_match_words() {
        let f5 = PrimeField::new(5).unwrap();
        let base = Word::from_letters(f5, vec![parse_poly("t^3 + 1", f5).unwrap(), Poly::t(f5)]).unwrap();
        let specs = [
            FamilySpec::Phi { p: 3 },
            FamilySpec::MahlerDual { p: 3, r: 3 },
            FamilySpec::Schmidt { base, r: 5 },
            FamilySpec::Theta { p: 5, a: 1, b: 2 },
            FamilySpec::Theta { p: 7, a: 3, b: 5 },
        ];
        for spec in &specs {
            let w = family_word(spec, 7).unwrap();
            let d: Vec<u64> = w.degrees().iter().map(|&d| d as u64).collect();
            assert_eq!(family_degrees(spec, 7).unwrap(), d, "{}", spec.name());
        }
        assert_eq!(
            family_degrees(&FamilySpec::MahlerDual { p: 3, r: 3 }, 20).unwrap()[19],
            3u64.pow(19)
        );
        assert!(family_degrees(&FamilySpec::MahlerDual { p: 3, r: 3 }, 60).is_err());
    }

    #[test]
    fn robbins3_prefix() {
        assert_eq!(
            robbins3_word(10).to_string(),
            "[t, 2*t, 2*t, t, 2*t, t^3, 2*t, t, 2*t, 2*t]"
        );
        assert_eq!(robbins3_word(4).to_string(), "[t, 2*t, 2*t, t]");
    }

    #[test]
    fn quartic13_support_data() {
        let (a, i) = quartic13_support(2, 7);
        let d: Vec<usize> = a.iter().map(|u| u.degree().unwrap()).collect();
        assert_eq!(d, vec![1, 5, 57]);
        assert_eq!(i[0], 0);
        assert_eq!(i[6], 1);
    }

    #[test]
    fn theta_sequences() {
        let f = PrimeField::new(7).unwrap();
        let (a, b) = (f.elem(3), f.elem(5));
        let binv = b.inv().unwrap();
        let want = [a, b, a, -b, binv, b, a, -b, -binv, b, binv, b, a];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(theta_lambda(a, b, n as u64 + 1).unwrap(), *w, "n = {}", n + 1);
        }
        let js: Vec<u64> = (1..=13).map(theta_j).collect();
        assert_eq!(js, vec![0, 0, 1, 0, 0, 1, 2, 1, 0, 0, 1, 2, 3]);
        for n in 1..=10_000u64 {
            let (m, i) = theta_indices(n);
            assert!(1 <= i && i <= 2 * m && n == m * m - m + i);
        }
    }

    #[test]
    fn theta_b_polynomials() {
        for p in [3u64, 5, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            let bs = theta_b(f, if p == 13 { 4 } else { 6 }).unwrap();
            for (n, b) in bs.iter().enumerate() {
                assert_eq!(b.degree().unwrap() as u128, theta_b_degree(p, n as u64));
                assert!(b.leading().unwrap() == f.one());
            }
        }
        let d: Vec<u128> = (0..10).map(|n| theta_b_degree(7, n)).collect();
        assert_eq!(d, vec![1, 5, 37, 257, 1801, 12605, 88237, 617657, 4323601, 30265205]);
    }

    #[test]
    fn theta_word_matches_pb_p7_prefix() {
        let w = theta_word(7, 1, 2, 12).unwrap();
        let e = family_equation(&FamilySpec::Theta { p: 7, a: 1, b: 2 }).unwrap();
        assert_eq!(w, expand_root_direct(&e, 12).unwrap());
        let capped = theta_word_within(7, 1, 2, 12, Some(5)).unwrap();
        assert_eq!(capped.len(), 6);
    }

    #[test]
    fn equations() {
        let g = family_equation(&FamilySpec::Gamma { p: 3, r: 3 }).unwrap();
        let f = PrimeField::new(3).unwrap();
        assert_eq!(
            g,
            AlgebraicEquation::parse("x^4 - t*x^3 + x^2 + 1", f, &Bindings::new()).unwrap()
        );
        let m = family_equation(&FamilySpec::ModifiedRobbins { p: 5 }).unwrap();
        assert_eq!(m.coeffs()[0].to_string(), "2");
        assert!(matches!(
            family_equation(&FamilySpec::Quartic13Support),
            Err(Error::UnsupportedFamily(_))
        ));
        assert!(family_equation(&FamilySpec::ModifiedRobbins { p: 3 }).is_err());
    }

    #[test]
    fn words_from_equations() {
        let w = family_word(&FamilySpec::TripleT, 10).unwrap();
        assert_eq!(w.to_string(), "[t, t, t, t, 4*t, 4*t, 4*t, 4*t, t, 2*t]");
        let g = family_word(&FamilySpec::Gamma { p: 5, r: 5 }, 10).unwrap();
        assert_eq!(g.to_string(), "[t, 2*t, 2*t, 2*t, 2*t, t, 2*t, 4*t^3 + 4*t, 4*t, t]");
        let r3 = family_word(&FamilySpec::Gamma { p: 3, r: 3 }, 40).unwrap();
        assert_eq!(r3, robbins3_word(40));
        let mahler = family_word(&FamilySpec::Mahler { p: 3, r: 3 }, 4).unwrap();
        assert!(mahler.head().is_some());
        let dual = family_word(&FamilySpec::MahlerDual { p: 3, r: 3 }, 4).unwrap();
        let e = family_equation(&FamilySpec::MahlerDual { p: 3, r: 3 }).unwrap();
        assert_eq!(expand_root_certified(&e, 4).unwrap(), dual);
    }
}

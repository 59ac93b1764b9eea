//! Multiplication kernels on raw coefficient slices (ascending powers,
//! residues in `[0, p)`).
//!
//! Schoolbook is used for short operands, Karatsuba in the middle range and a
//! number-theoretic transform over up to three word-size primes, recombined by
//! CRT, for long ones.

const KARATSUBA_THRESHOLD: usize = 32;
const NTT_THRESHOLD: usize = 384;

/// Full product of `a` and `b` modulo `p`, of length `a.len() + b.len() - 1`
/// (empty if either input is empty). The result is not trimmed.
pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let short = a.len().min(b.len());
    if short < KARATSUBA_THRESHOLD {
        return schoolbook(a, b, p);
    }
    if short >= NTT_THRESHOLD {
        if let Some(v) = ntt_mul(a, b, p) {
            return v;
        }
    }
    karatsuba(a, b, p)
}

/// First `n` coefficients of `a * b`.
pub(crate) fn mul_trunc(a: &[u32], b: &[u32], n: usize, p: u32) -> Vec<u32> {
    let a = &a[..a.len().min(n)];
    let b = &b[..b.len().min(n)];
    let mut v = mul(a, b, p);
    v.truncate(n);
    v
}

/// Inverse of the power series `f` modulo `x^n`; `f[0]` must be invertible.
pub(crate) fn inv_series(f: &[u32], n: usize, p: u32) -> Vec<u32> {
    assert!(!f.is_empty() && f[0] != 0, "series inverse needs a unit constant term");
    let pp = p as u64;
    let mut g = vec![pow_mod(f[0] as u64, pp - 2, pp) as u32];
    let mut len = 1;
    while len < n {
        let next = (2 * len).min(n);
        let mut e = mul_trunc(&f[..f.len().min(next)], &g, next, p);
        for c in e.iter_mut() {
            *c = if *c == 0 { 0 } else { p - *c };
        }
        e.resize(next, 0);
        e[0] = ((e[0] as u64 + 2) % pp) as u32;
        g = mul_trunc(&g, &e, next, p);
        g.resize(next, 0);
        len = next;
    }
    g.truncate(n);
    g
}

/// Number of products `< (p-1)^2` that can be summed in a `u64` before
/// reduction is needed.
fn lazy_budget(p: u32) -> usize {
    let m = ((p as u64 - 1) * (p as u64 - 1)).max(1);
    ((u64::MAX - m) / m).min(1 << 24) as usize
}

fn schoolbook(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (s, l) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let pp = p as u64;
    let budget = lazy_budget(p);
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    let mut pending = 0;
    for (i, &c) in s.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if pending == budget {
            acc.iter_mut().for_each(|x| *x %= pp);
            pending = 0;
        }
        let c = c as u64;
        for (dst, &y) in acc[i..i + l.len()].iter_mut().zip(l) {
            *dst += c * y as u64;
        }
        pending += 1;
    }
    acc.into_iter().map(|x| (x % pp) as u32).collect()
}

fn add_into(dst: &mut [u32], src: &[u32], p: u32) {
    for (d, &s) in dst.iter_mut().zip(src) {
        let t = *d as u64 + s as u64;
        *d = if t >= p as u64 { (t - p as u64) as u32 } else { t as u32 };
    }
}

fn sub_into(dst: &mut [u32], src: &[u32], p: u32) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = if *d >= s {
            *d - s
        } else {
            (*d as u64 + p as u64 - s as u64) as u32
        };
    }
}

fn sum_halves(lo: &[u32], hi: &[u32], p: u32) -> Vec<u32> {
    let mut v = lo.to_vec();
    if hi.len() > v.len() {
        v.resize(hi.len(), 0);
    }
    add_into(&mut v, hi, p);
    v
}

fn karatsuba(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return schoolbook(a, b, p);
    }
    let k = a.len().max(b.len()) / 2;
    if a.len() <= k || b.len() <= k {
        return unbalanced(a, b, p);
    }
    let (a0, a1) = a.split_at(k);
    let (b0, b1) = b.split_at(k);
    let z0 = karatsuba(a0, b0, p);
    let z2 = karatsuba(a1, b1, p);
    let mut z1 = karatsuba(&sum_halves(a0, a1, p), &sum_halves(b0, b1, p), p);
    sub_into(&mut z1, &z0, p);
    sub_into(&mut z1, &z2, p);
    let mut out = vec![0u32; a.len() + b.len() - 1];
    add_into(&mut out, &z0, p);
    add_into(&mut out[2 * k..], &z2, p);
    let n = out.len() - k;
    add_into(&mut out[k..], &z1[..z1.len().min(n)], p);
    out
}

fn unbalanced(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (s, l) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (idx, chunk) in l.chunks(s.len()).enumerate() {
        let prod = karatsuba(s, chunk, p);
        add_into(&mut out[idx * s.len()..], &prod, p);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// NTT-friendly primes `c * 2^k + 1` with a primitive root, and the largest
/// supported transform length exponent.
const NTT_PRIMES: [(u64, u64, u32); 3] = [(2_013_265_921, 31, 27), (469_762_049, 3, 26), (167_772_161, 3, 25)];

fn ntt<const M: u64, const G: u64>(a: &mut [u64], invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut roots = Vec::with_capacity(n / 2);
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(G, (M - 1) / len as u64, M);
        if invert {
            w = pow_mod(w, M - 2, M);
        }
        let half = len / 2;
        roots.clear();
        let mut x = 1u64;
        for _ in 0..half {
            roots.push(x);
            x = x * w % M;
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((u, v), &r) in lo.iter_mut().zip(hi.iter_mut()).zip(&roots) {
                let t = *v * r % M;
                let s = *u;
                *u = if s + t >= M { s + t - M } else { s + t };
                *v = if s >= t { s - t } else { s + M - t };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv_n = pow_mod(n as u64, M - 2, M);
        for x in a.iter_mut() {
            *x = *x * inv_n % M;
        }
    }
}

/// Cyclic convolution modulo `M`, the modulus fixed at compile time so that
/// reductions avoid hardware division.
fn convolve<const M: u64, const G: u64>(a: &[u32], b: &[u32], size: usize) -> Vec<u64> {
    let mut fa = vec![0u64; size];
    for (d, &s) in fa.iter_mut().zip(a) {
        *d = s as u64 % M;
    }
    let mut fb = vec![0u64; size];
    for (d, &s) in fb.iter_mut().zip(b) {
        *d = s as u64 % M;
    }
    ntt::<M, G>(&mut fa, false);
    ntt::<M, G>(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % M;
    }
    drop(fb);
    ntt::<M, G>(&mut fa, true);
    fa.truncate(a.len() + b.len() - 1);
    fa
}

fn convolve_mod(a: &[u32], b: &[u32], size: usize, prime: usize) -> Vec<u64> {
    const P0: (u64, u64) = (NTT_PRIMES[0].0, NTT_PRIMES[0].1);
    const P1: (u64, u64) = (NTT_PRIMES[1].0, NTT_PRIMES[1].1);
    const P2: (u64, u64) = (NTT_PRIMES[2].0, NTT_PRIMES[2].1);
    match prime {
        0 => convolve::<{ P0.0 }, { P0.1 }>(a, b, size),
        1 => convolve::<{ P1.0 }, { P1.1 }>(a, b, size),
        _ => convolve::<{ P2.0 }, { P2.1 }>(a, b, size),
    }
}

/// NTT product, or `None` when the exact convolution does not fit the
/// available primes.
fn ntt_mul(a: &[u32], b: &[u32], p: u32) -> Option<Vec<u32>> {
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    let bound = a.len().min(b.len()) as u128 * ((p as u128 - 1) * (p as u128 - 1));
    let mut modulus = 1u128;
    let mut count = 0;
    while count < NTT_PRIMES.len() && bound >= modulus {
        modulus *= NTT_PRIMES[count].0 as u128;
        count += 1;
    }
    if bound >= modulus {
        return None;
    }
    if NTT_PRIMES[..count].iter().any(|&(_, _, k)| size > 1usize << k) {
        return None;
    }
    let pp = p as u64;
    let residues: Vec<Vec<u64>> = (0..count).map(|i| convolve_mod(a, b, size, i)).collect();
    let out = match count {
        1 => residues[0].iter().map(|&x| (x % pp) as u32).collect(),
        2 => {
            let (m1, m2) = (NTT_PRIMES[0].0, NTT_PRIMES[1].0);
            let inv = pow_mod(m1 % m2, m2 - 2, m2);
            residues[0]
                .iter()
                .zip(&residues[1])
                .map(|(&r1, &r2)| {
                    let t = (r2 + m2 - r1 % m2) % m2 * inv % m2;
                    ((r1 as u128 + m1 as u128 * t as u128) % pp as u128) as u32
                })
                .collect()
        }
        _ => {
            let (m1, m2, m3) = (NTT_PRIMES[0].0, NTT_PRIMES[1].0, NTT_PRIMES[2].0);
            let inv12 = pow_mod(m1 % m2, m2 - 2, m2);
            let m12 = m1 as u128 * m2 as u128;
            let inv123 = pow_mod((m12 % m3 as u128) as u64, m3 - 2, m3);
            (0..out_len)
                .map(|i| {
                    let (r1, r2, r3) = (residues[0][i], residues[1][i], residues[2][i]);
                    let t2 = (r2 + m2 - r1 % m2) % m2 * inv12 % m2;
                    let x12 = r1 as u128 + m1 as u128 * t2 as u128;
                    let t3 = (r3 as u128 + m3 as u128 - x12 % m3 as u128) % m3 as u128;
                    let t3 = (t3 as u64) * inv123 % m3;
                    ((x12 + m12 * t3 as u128) % pp as u128) as u32
                })
                .collect()
        }
    };
    Some(out)
}

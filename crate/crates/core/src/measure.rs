//! Irrationality measure from partial quotient degrees:
//! `nu = 2 + limsup deg(a_(n+1)) / (deg(a_1) + ... + deg(a_n))`.
//!
//! Finite data only bounds the limsup, so estimates report the maximum of all
//! ratios (a lower bound for `nu - 2` on this prefix) and the maximum over a
//! trailing window (a proxy for the limsup).

use std::fmt::Write as _;

use num_rational::Ratio;

use crate::cfcore::Word;
use crate::families::FamilySpec;
use crate::{Error, Result};

/// Window used when none is given.
pub const DEFAULT_WINDOW: usize = 50;

/// Degree ratios of a word and their suprema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureEstimate {
    /// `deg(a_n)` for `n = 1..`.
    pub degrees: Vec<u64>,
    /// `deg(a_n) / (deg(a_1) + ... + deg(a_(n-1)))` for `n = 2..`.
    pub ratios: Vec<Ratio<u128>>,
    /// Maximum of all ratios.
    pub running_sup: Ratio<u128>,
    /// Maximum of the last `window` ratios.
    pub tail_sup: Ratio<u128>,
    pub window: usize,
}

impl MeasureEstimate {
    /// The ratio with numerator `deg(a_n)`, for `n >= 2`.
    pub fn ratio_at(&self, n: usize) -> Option<Ratio<u128>> {
        n.checked_sub(2).and_then(|k| self.ratios.get(k)).copied()
    }

    /// `2 + running_sup`.
    pub fn nu_lower(&self) -> Ratio<u128> {
        Ratio::from_integer(2) + self.running_sup
    }

    /// `2 + tail_sup`.
    pub fn nu_tail(&self) -> Ratio<u128> {
        Ratio::from_integer(2) + self.tail_sup
    }

    /// Rows `n,degree,ratio,nu_lower`: the ratio has numerator `deg(a_n)` and
    /// `nu_lower` is 2 plus the running maximum of the ratios up to `n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,degree,ratio,nu_lower\n");
        let mut sup = Ratio::from_integer(0u128);
        for (k, d) in self.degrees.iter().enumerate() {
            let n = k + 1;
            match self.ratio_at(n) {
                Some(r) => {
                    sup = sup.max(r);
                    let _ = writeln!(out, "{n},{d},{:.6},{:.6}", to_f64(r), 2.0 + to_f64(sup));
                }
                None => {
                    let _ = writeln!(out, "{n},{d},,");
                }
            }
        }
        out
    }
}

/// Floating value of a ratio, for display.
pub fn to_f64(r: Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Estimate from a word's letters (the head is ignored).
pub fn nu_estimate(w: &Word, window: usize) -> Result<MeasureEstimate> {
    let degrees: Vec<u64> = w.degrees().iter().map(|&d| d as u64).collect();
    nu_estimate_degrees(&degrees, window)
}

/// Estimate from a degree sequence `deg(a_1), deg(a_2), ...`.
pub fn nu_estimate_degrees(degrees: &[u64], window: usize) -> Result<MeasureEstimate> {
    if degrees.len() < 2 {
        return Err(Error::InvalidParameter("at least two letters are needed".into()));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidParameter("letters must have positive degree".into()));
    }
    let mut ratios = Vec::with_capacity(degrees.len() - 1);
    let mut sum: u128 = 0;
    for pair in degrees.windows(2) {
        sum += pair[0] as u128;
        ratios.push(Ratio::new(pair[1] as u128, sum));
    }
    let running_sup = *ratios.iter().max().expect("nonempty");
    let window = window.max(1);
    let tail_sup = *ratios[ratios.len().saturating_sub(window)..]
        .iter()
        .max()
        .expect("nonempty");
    Ok(MeasureEstimate {
        degrees: degrees.to_vec(),
        ratios,
        running_sup,
        tail_sup,
        window,
    })
}

/// Exact `nu` for the families where it is known in closed form.
pub fn nu_closed_form(spec: &FamilySpec) -> Result<Ratio<u128>> {
    let two = Ratio::from_integer(2u128);
    match spec {
        FamilySpec::Theta { p, .. } => {
            let p = *p as u128;
            Ok(two + Ratio::new((p - 1) * (p - 1), 2 * p))
        }
        FamilySpec::MahlerDual { r, .. } => Ok(Ratio::from_integer(*r as u128 + 1)),
        FamilySpec::Mahler { r, .. } => Ok(Ratio::from_integer(*r as u128)),
        FamilySpec::Phi { .. } | FamilySpec::Robbins3Word | FamilySpec::Robbins { p: 3 } => Ok(two),
        FamilySpec::Robbins { p: 13 } | FamilySpec::Quartic13Support => Ok(Ratio::new(8, 3)),
        FamilySpec::TripleT => Ok(Ratio::new(18, 7)),
        _ => Err(Error::NoClosedForm(spec.name().into())),
    }
}

/// Degrees `u_1 = 1`, `u_(n+1) = round((target - 2)(u_1 + ... + u_n))`
/// (halves rounded up, at least 1), whose measure tends to `target`.
pub fn degree_sequence_for_measure(target: Ratio<u128>, length: usize) -> Result<(Vec<u64>, MeasureEstimate)> {
    let two = Ratio::from_integer(2u128);
    if target <= two {
        return Err(Error::InvalidParameter("target must exceed 2".into()));
    }
    if length < 2 {
        return Err(Error::InvalidParameter("length must be at least 2".into()));
    }
    let excess = target - two;
    let mut u: Vec<u64> = vec![1];
    let mut sum: u128 = 1;
    while u.len() < length {
        let x = excess * Ratio::from_integer(sum);
        let rounded = (x + Ratio::new(1, 2)).floor().to_integer().max(1);
        let next = u64::try_from(rounded).map_err(|_| Error::InvalidParameter("degrees overflow".into()))?;
        u.push(next);
        sum = sum
            .checked_add(next as u128)
            .ok_or_else(|| Error::InvalidParameter("degrees overflow".into()))?;
    }
    let est = nu_estimate_degrees(&u, DEFAULT_WINDOW)?;
    Ok((u, est))
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ffpoly::{parse_poly, Fp, Poly, PrimeField};
use crate::{Error, Result};

/// A finite word of partial quotients `a_1, ..., a_n`, optionally preceded by
/// a head `a_0`.
///
/// Letters have positive degree; the head may be any polynomial, including 0.
/// Its value is `a_0 + 1/[a_1, ..., a_n]` (or `[a_1, ..., a_n]` without head).
#[derive(Clone, PartialEq, Eq)]
pub struct Word {
    field: PrimeField,
    head: Option<Poly>,
    letters: Vec<Poly>,
}

/// JSON shape of a word: `{"head": "...", "letters": ["...", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<String>,
    pub letters: Vec<String>,
}

impl Word {
    /// Checked constructor: every letter must have positive degree.
    pub fn new(field: PrimeField, head: Option<Poly>, letters: Vec<Poly>) -> Result<Self> {
        if head.as_ref().is_some_and(|h| h.field() != field) {
            return Err(Error::FieldMismatch);
        }
        for (i, a) in letters.iter().enumerate() {
            if a.field() != field {
                return Err(Error::FieldMismatch);
            }
            if a.degree().unwrap_or(0) == 0 {
                return Err(Error::InvalidParameter(format!("letter {} has degree < 1", i + 1)));
            }
        }
        Ok(Word { field, head, letters })
    }

    pub fn from_letters(field: PrimeField, letters: Vec<Poly>) -> Result<Self> {
        Self::new(field, None, letters)
    }

    /// Unchecked constructor for internal callers whose letters are known to
    /// have positive degree (or that deliberately work with raw sequences).
    pub(crate) fn raw(field: PrimeField, head: Option<Poly>, letters: Vec<Poly>) -> Self {
        Word { field, head, letters }
    }

    pub fn empty(field: PrimeField) -> Self {
        Word {
            field,
            head: None,
            letters: Vec::new(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn head(&self) -> Option<&Poly> {
        self.head.as_ref()
    }

    pub fn letters(&self) -> &[Poly] {
        &self.letters
    }

    pub fn into_parts(self) -> (Option<Poly>, Vec<Poly>) {
        (self.head, self.letters)
    }

    /// Number of letters, not counting the head.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// All terms in order: the head (if any) followed by the letters.
    pub fn terms(&self) -> Vec<Poly> {
        self.head.iter().chain(&self.letters).cloned().collect()
    }

    pub fn push(&mut self, a: Poly) {
        self.letters.push(a);
    }

    pub fn truncated(&self, n: usize) -> Word {
        Word {
            field: self.field,
            head: self.head.clone(),
            letters: self.letters[..n.min(self.letters.len())].to_vec(),
        }
    }

    /// Degrees of the letters (the head is excluded).
    pub fn degrees(&self) -> Vec<usize> {
        self.letters.iter().map(|a| a.degree().unwrap_or(0)).collect()
    }

    /// Leading coefficients of the letters.
    pub fn leading_coefficients(&self) -> Vec<u32> {
        self.letters
            .iter()
            .map(|a| a.leading().map_or(0, |c| c.value()))
            .collect()
    }

    /// `W*`: the letters in reverse order. The head, if any, is dropped.
    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            field: self.field,
            head: None,
            letters,
        }
    }

    /// `y . W = y a_1, y^-1 a_2, y a_3, ...`; the head is not scaled.
    pub fn scale(&self, y: Fp) -> Result<Word> {
        let yi = y.inv().ok_or(Error::ZeroScalar)?;
        let letters = self
            .letters
            .iter()
            .enumerate()
            .map(|(i, a)| a.scale(if i % 2 == 0 { y } else { yi }))
            .collect();
        Ok(Word {
            field: self.field,
            head: None,
            letters,
        })
    }

    pub fn to_json(&self) -> WordJson {
        WordJson {
            head: self.head.as_ref().map(ToString::to_string),
            letters: self.letters.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_json(field: PrimeField, json: &WordJson) -> Result<Self> {
        let head = json.head.as_deref().map(|h| parse_poly(h, field)).transpose()?;
        let letters = json
            .letters
            .iter()
            .map(|a| parse_poly(a, field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, head, letters)
    }
}

/// `[d1, d2, ...]`, the layout used by the degree tables.
pub fn format_list<T: fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for Word {
    /// `[a_0, a_1, ..., a_n]`, head first when present.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_list(&self.terms()))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Word(head={:?}, {})",
            self.head.as_ref().map(ToString::to_string),
            format_list(&self.letters)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_constant_letters() {
        let f = PrimeField::new(5).unwrap();
        assert!(Word::from_letters(f, vec![Poly::one(f)]).is_err());
        assert!(Word::new(f, Some(Poly::one(f)), vec![Poly::t(f)]).is_ok());
    }

    #[test]
    fn json_shape() {
        let f = PrimeField::new(3).unwrap();
        let w = Word::new(f, Some(Poly::zero(f)), vec![Poly::t(f), Poly::from_ints(f, &[0, 2])]).unwrap();
        let j = serde_json::to_string(&w.to_json()).unwrap();
        assert_eq!(j, r#"{"head":"0","letters":["t","2*t"]}"#);
        let back: WordJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Word::from_json(f, &back).unwrap(), w);
        let plain = Word::from_letters(f, vec![Poly::t(f)]).unwrap();
        assert_eq!(serde_json::to_string(&plain.to_json()).unwrap(), r#"{"letters":["t"]}"#);
        assert_eq!(w.to_string(), "[0, t, 2*t]");
        assert_eq!(format_list(&w.degrees()), "[1, 1]");
    }

    #[test]
    fn zero_scalar_rejected() {
        let f = PrimeField::new(7).unwrap();
        let w = Word::from_letters(f, vec![Poly::t(f)]).unwrap();
        assert_eq!(w.scale(f.zero()), Err(Error::ZeroScalar));
        assert_eq!(w.scale(f.one()).unwrap(), w);
    }
}

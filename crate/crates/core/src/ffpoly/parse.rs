//! Expression parser for polynomials, rational functions in `T`, and
//! equations in `x` with coefficients in `F_p[T]`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! equation := expr ('=' expr)?
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := ('+' | '-') unary | power
//! power    := atom ('^' integer)?
//! atom     := integer | 't' | 'T' | 'x' | 'X' | name | '(' expr ')'
//! ```
//!
//! Integers are reduced modulo `p`. Names other than the two variables must
//! be bound to field constants. Division is allowed only by expressions free
//! of `x`; everything else is evaluated exactly in `F_p(T)[x]`.

use std::collections::HashMap;

use super::field::{Fp, PrimeField};
use super::poly::Poly;
use crate::{Error, Result};

/// Named field constants substituted while parsing.
pub type Bindings = HashMap<String, Fp>;

/// Degree cap guarding against accidental huge powers.
const MAX_DEGREE: u64 = 1 << 28;

/// Parses a polynomial in `T`.
pub fn parse_poly(text: &str, field: PrimeField) -> Result<Poly> {
    parse_poly_with(text, field, &Bindings::new())
}

pub fn parse_poly_with(text: &str, field: PrimeField, bindings: &Bindings) -> Result<Poly> {
    let (num, den) = parse_rational(text, field, bindings)?;
    if !den.is_constant() {
        return Err(syntax(0, "expression is not a polynomial"));
    }
    let inv = den.leading().and_then(Fp::inv).ok_or(Error::DivisionByZero)?;
    Ok(num.scale(inv))
}

/// Parses an element of `F_p(T)`, returned as `(numerator, denominator)` in
/// lowest terms with a monic denominator.
pub fn parse_rational(text: &str, field: PrimeField, bindings: &Bindings) -> Result<(Poly, Poly)> {
    let value = Parser::new(text, field, bindings)?.parse_all(false)?;
    if value.coeffs.len() > 1 {
        return Err(syntax(0, "unexpected variable x"));
    }
    let r = value.coeffs.into_iter().next().unwrap_or_else(|| Rat::zero(field));
    Ok((r.num, r.den))
}

/// Parses a field constant such as `2*a + 1/b`.
pub fn parse_constant(text: &str, field: PrimeField, bindings: &Bindings) -> Result<Fp> {
    let p = parse_poly_with(text, field, bindings)?;
    if !p.is_constant() {
        return Err(syntax(0, "expression is not a constant"));
    }
    Ok(p.coeff(0))
}

/// Parses a polynomial equation in `x`. An `lhs = rhs` form is read as
/// `lhs - rhs`. Denominators are cleared, so the result is a list of
/// coefficients in `F_p[T]`, ascending in the power of `x`, with no trailing
/// zero entries.
pub fn parse_equation(text: &str, field: PrimeField, bindings: &Bindings) -> Result<Vec<Poly>> {
    Ok(parse_x_fraction(text, field, bindings)?.0)
}

/// Parses an element of `F_p(T)[x]` as `(numerator coefficients, common
/// denominator in T)`. The numerator is ascending in `x` with no trailing
/// zero entries; the denominator is monic.
pub fn parse_x_fraction(text: &str, field: PrimeField, bindings: &Bindings) -> Result<(Vec<Poly>, Poly)> {
    let value = Parser::new(text, field, bindings)?.parse_all(true)?;
    let mut den = Poly::one(field);
    for c in &value.coeffs {
        let g = den.gcd(&c.den)?;
        den = &den * &c.den.quo(&g)?;
    }
    let mut out: Vec<Poly> = value
        .coeffs
        .iter()
        .map(|c| &c.num * &den.quo(&c.den).expect("nonzero denominator"))
        .collect();
    while out.last().is_some_and(Poly::is_zero) {
        out.pop();
    }
    Ok((out, den))
}

fn syntax(pos: usize, msg: &str) -> Error {
    Error::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

/// Element of `F_p(T)` kept in lowest terms with a monic denominator.
#[derive(Clone, Debug)]
struct Rat {
    num: Poly,
    den: Poly,
}

impl Rat {
    fn zero(f: PrimeField) -> Self {
        Rat {
            num: Poly::zero(f),
            den: Poly::one(f),
        }
    }

    fn poly(p: Poly) -> Self {
        let f = p.field();
        Rat {
            num: p,
            den: Poly::one(f),
        }
    }

    fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = num.field();
        if num.is_zero() {
            return Ok(Rat::zero(f));
        }
        let g = num.gcd(&den)?;
        let (num, den) = (num.quo(&g)?, den.quo(&g)?);
        let l = den.leading().and_then(Fp::inv).expect("nonzero");
        Ok(Rat {
            num: num.scale(l),
            den: den.scale(l),
        })
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, o: &Rat) -> Rat {
        if self.den == o.den {
            return Rat::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        Rat::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }

    fn mul(&self, o: &Rat) -> Rat {
        if self.den.is_one() && o.den.is_one() {
            return Rat::poly(&self.num * &o.num);
        }
        Rat::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }

    fn neg(&self) -> Rat {
        Rat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Result<Rat> {
        Rat::new(self.den.clone(), self.num.clone())
    }
}

/// Element of `F_p(T)[x]`, ascending in `x`.
#[derive(Clone, Debug)]
struct XPoly {
    coeffs: Vec<Rat>,
}

impl XPoly {
    fn constant(r: Rat) -> Self {
        let mut v = XPoly { coeffs: vec![r] };
        v.trim();
        v
    }

    fn x(f: PrimeField) -> Self {
        XPoly {
            coeffs: vec![Rat::zero(f), Rat::poly(Poly::one(f))],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
    }

    fn degree_x(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn add(&self, o: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        let mut v = XPoly { coeffs };
        v.trim();
        v
    }

    fn neg(&self) -> XPoly {
        XPoly {
            coeffs: self.coeffs.iter().map(Rat::neg).collect(),
        }
    }

    fn mul(&self, o: &XPoly, f: PrimeField) -> XPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return XPoly { coeffs: Vec::new() };
        }
        let mut coeffs = vec![Rat::zero(f); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        let mut v = XPoly { coeffs };
        v.trim();
        v
    }

    fn t_degree(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.num.deg_or_neg().max(c.den.deg_or_neg()).max(0) as u64)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Op(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    field: PrimeField,
    bindings: &'a Bindings,
}

impl<'a> Parser<'a> {
    fn new(text: &str, field: PrimeField, bindings: &'a Bindings) -> Result<Self> {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (at, c) = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let mut v: u64 = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i].1 as u64 - '0' as u64))
                        .ok_or_else(|| syntax(at, "integer literal too large"))?;
                    i += 1;
                }
                toks.push((Tok::Num(v), at));
            } else if c.is_alphabetic() || c == '_' {
                let mut s = String::new();
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    s.push(chars[i].1);
                    i += 1;
                }
                toks.push((Tok::Ident(s), at));
            } else if "+-*/^()=".contains(c) || c == '\u{2212}' {
                toks.push((Tok::Op(if c == '\u{2212}' { '-' } else { c }), at));
                i += 1;
            } else {
                return Err(syntax(at, &format!("unexpected character '{c}'")));
            }
        }
        if toks.is_empty() {
            return Err(Error::EmptyInput);
        }
        toks.push((Tok::End, text.len()));
        Ok(Parser {
            toks,
            pos: 0,
            field,
            bindings,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn parse_all(mut self, allow_eq: bool) -> Result<XPoly> {
        let lhs = self.expr()?;
        let value = if allow_eq && *self.peek() == Tok::Op('=') {
            self.bump();
            let rhs = self.expr()?;
            lhs.add(&rhs.neg())
        } else {
            lhs
        };
        match self.peek() {
            Tok::End => Ok(value),
            _ => Err(syntax(self.at(), "unexpected token")),
        }
    }

    fn expr(&mut self) -> Result<XPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<XPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs, self.field);
                }
                Tok::Op('/') => {
                    self.bump();
                    let at = self.at();
                    let rhs = self.unary()?;
                    if rhs.coeffs.len() > 1 {
                        return Err(syntax(at, "division by an expression in x"));
                    }
                    let d = rhs.coeffs.first().ok_or(Error::DivisionByZero)?.inv()?;
                    acc = acc.mul(&XPoly::constant(d), self.field);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<XPoly> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<XPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.at();
        let e = match self.bump() {
            Tok::Num(e) => e,
            Tok::Op('(') => match (self.bump(), self.bump()) {
                (Tok::Num(e), Tok::Op(')')) => e,
                _ => return Err(syntax(at, "exponent must be a nonnegative integer")),
            },
            _ => return Err(syntax(at, "exponent must be a nonnegative integer")),
        };
        let grow = base.t_degree().max(base.degree_x() as u64);
        if grow.saturating_mul(e) > MAX_DEGREE {
            return Err(syntax(at, "exponent too large"));
        }
        let mut acc = XPoly::constant(Rat::poly(Poly::one(self.field)));
        let mut b = base;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, self.field);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, self.field);
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<XPoly> {
        let at = self.at();
        let f = self.field;
        match self.bump() {
            Tok::Num(v) => {
                let c = f.elem((v % f.modulus() as u64) as i64);
                Ok(XPoly::constant(Rat::poly(Poly::constant(c))))
            }
            Tok::Ident(name) => match name.as_str() {
                "t" | "T" => Ok(XPoly::constant(Rat::poly(Poly::t(f)))),
                "x" | "X" => Ok(XPoly::x(f)),
                _ => match self.bindings.get(&name) {
                    Some(&c) if c.field() == f => Ok(XPoly::constant(Rat::poly(Poly::constant(c)))),
                    Some(_) => Err(Error::FieldMismatch),
                    None => Err(syntax(at, &format!("unbound name '{name}'"))),
                },
            },
            Tok::Op('(') => {
                let v = self.expr()?;
                match self.bump() {
                    Tok::Op(')') => Ok(v),
                    _ => Err(syntax(self.toks[self.pos.saturating_sub(1)].1, "expected ')'")),
                }
            }
            Tok::End => Err(syntax(at, "unexpected end of input")),
            _ => Err(syntax(at, "expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn parses_canonical_output() {
        let f = field(17);
        let u = parse_poly("t^5 + 6*t^3 + 4*t", f).unwrap();
        assert_eq!(u, Poly::from_ints(f, &[0, 4, 0, 6, 0, 1]));
        assert_eq!(u.to_string(), "t^5 + 6*t^3 + 4*t");
    }

    #[test]
    fn zero_and_reduction() {
        assert!(parse_poly("0", field(5)).unwrap().is_zero());
        assert!(parse_poly("14*t", field(7)).unwrap().is_zero());
        assert_eq!(parse_poly("(T^2-1)^6", field(17)).unwrap().degree(), Some(12));
        assert_eq!(parse_poly("-t \u{2212} 1", field(5)).unwrap().to_string(), "4*t + 4");
    }

    #[test]
    fn errors_carry_positions() {
        let f = field(5);
        assert_eq!(parse_poly("", f), Err(Error::EmptyInput));
        assert_eq!(parse_poly("   ", f), Err(Error::EmptyInput));
        assert!(matches!(parse_poly("t + $", f), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("t +", f), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("(t", f), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("t/(t+1)", f), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("y", f), Err(Error::Syntax { pos: 0, .. })));
        assert_eq!(parse_poly("1/(t-t)", f), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_values() {
        let f = field(3);
        let (n, d) = parse_rational("t^4/(t^2+2)", f, &Bindings::new()).unwrap();
        assert_eq!(n.to_string(), "t^4");
        assert_eq!(d.to_string(), "t^2 + 2");
        let (n, d) = parse_rational("(t^2-1)/(t-1)", f, &Bindings::new()).unwrap();
        assert_eq!((n.to_string(), d.to_string()), ("t + 1".into(), "1".into()));
    }

    #[test]
    fn equations_with_bindings() {
        let f = field(7);
        let mut b = Bindings::new();
        b.insert("a".into(), f.elem(1));
        b.insert("b".into(), f.elem(2));
        let c = parse_constant("2*a+1/b", f, &b).unwrap();
        assert_eq!(c.value(), 6);
        b.insert("c".into(), c);
        let eq = parse_equation("b*t*x^8-(a*b*t^2+1)*(x^7+x)+a^2*b*t^3+c*t", f, &b).unwrap();
        assert_eq!(eq.len(), 9);
        assert_eq!(eq[8].to_string(), "2*t");
        assert_eq!(eq[7].to_string(), "5*t^2 + 6");
        assert_eq!(eq[1].to_string(), "5*t^2 + 6");
        assert_eq!(eq[0].to_string(), "2*t^3 + 6*t");
        assert!(eq[2..7].iter().all(Poly::is_zero));
    }

    #[test]
    fn equation_denominators_are_cleared() {
        let f = field(5);
        let eq = parse_equation("x^4+x^2-t*x-1/12", f, &Bindings::new()).unwrap();
        // 1/12 = 3 in F_5
        assert_eq!(eq[0].to_string(), "2");
        assert_eq!(eq[4].to_string(), "1");
        let eq = parse_equation("x/t = 1", f, &Bindings::new()).unwrap();
        assert_eq!(eq[1].to_string(), "1");
        assert_eq!(eq[0].to_string(), "4*t");
    }
}

//! Textual form of motives: `7*L + 1`, `L^(1/2) + 1`, `1/(L + 1)`.
//!
//! Grammar accepted by [`parse_motive`]:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exp)?
//! atom   := integer | 'L' | '(' expr ')'
//! exp    := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! ```
//!
//! Fractional exponents are only allowed on `L`. The renderer emits a
//! subset of this grammar, so `parse_motive(&v.to_string()) == v`.

use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use super::motive::MotiveValue;
use super::poly::Poly;
use crate::error::{Error, Result};

pub(crate) fn write_monomial(
    f: &mut fmt::Formatter<'_>,
    symbol: char,
    coeff: &BigInt,
    exp: Rational64,
) -> fmt::Result {
    if exp.is_zero() {
        return write!(f, "{coeff}");
    }
    if !coeff.is_one() {
        write!(f, "{coeff}*")?;
    }
    if exp.is_one() {
        write!(f, "{symbol}")
    } else if exp.is_integer() && exp.is_positive() {
        write!(f, "{symbol}^{exp}")
    } else {
        write!(f, "{symbol}^({exp})")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly, r: u32) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let terms: Vec<_> = p.support().collect();
    for (i, (k, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        write_monomial(f, 'L', &c.abs(), Rational64::new(*k as i64, r as i64))?;
    }
    Ok(())
}

impl fmt::Display for MotiveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.root_index();
        let (num, den) = (self.numerator(), self.denominator());
        if den.is_one() {
            return write_poly(f, num, r);
        }
        if num.term_count() > 1 {
            f.write_str("(")?;
            write_poly(f, num, r)?;
            f.write_str(")")?;
        } else {
            write_poly(f, num, r)?;
        }
        f.write_str("/")?;
        let bare = den.term_count() == 1 && (den.degree() == Some(0) || den.lead().unwrap().is_one());
        if bare {
            write_poly(f, den, r)
        } else {
            f.write_str("(")?;
            write_poly(f, den, r)?;
            f.write_str(")")
        }
    }
}

impl std::str::FromStr for MotiveValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_motive(s)
    }
}

/// Parses the expression grammar described in the module docs.
pub fn parse_motive(input: &str) -> Result<MotiveValue> {
    let mut p = Parser {
        chars: input.chars().peekable(),
    };
    let v = p.expr()?;
    p.skip_ws();
    match p.chars.peek() {
        None => Ok(v),
        Some(c) => Err(Error::Parse(format!("unexpected `{c}` in `{input}`"))),
    }
}

struct Parser<'a> {
    chars: Peekable<Chars<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.chars.peek() == Some(&c) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<MotiveValue> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MotiveValue> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MotiveValue> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MotiveValue> {
        self.skip_ws();
        if self.chars.peek() == Some(&'L') {
            self.chars.next();
            if self.eat('^') {
                return Ok(MotiveValue::l_power(self.exponent()?));
            }
            return Ok(MotiveValue::l());
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            if !e.is_integer() {
                return Err(Error::Parse(format!(
                    "fractional exponent {e} on a non-L base"
                )));
            }
            let e = i32::try_from(e.to_integer())
                .map_err(|_| Error::Parse("exponent too large".into()))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MotiveValue> {
        self.skip_ws();
        match self.chars.peek() {
            Some('(') => {
                self.chars.next();
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(MotiveValue::integer(self.integer()?)),
            Some(c) => Err(Error::Parse(format!("unexpected `{c}`"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some(c) = self.chars.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(*c);
            self.chars.next();
        }
        if digits.is_empty() {
            return Err(Error::Parse("expected an integer".into()));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_integer(&mut self) -> Result<i64> {
        i64::try_from(self.integer()?).map_err(|_| Error::Parse("exponent too large".into()))
    }

    fn exponent(&mut self) -> Result<Rational64> {
        if self.eat('(') {
            let neg = self.eat('-');
            let n = self.small_integer()?;
            let d = if self.eat('/') { self.small_integer()? } else { 1 };
            self.expect(')')?;
            if d == 0 {
                return Err(Error::Parse("zero denominator in exponent".into()));
            }
            let e = Rational64::new(n, d);
            Ok(if neg { -e } else { e })
        } else {
            let neg = self.eat('-');
            let n = self.small_integer()?;
            Ok(Rational64::from_integer(if neg { -n } else { n }))
        }
    }
}

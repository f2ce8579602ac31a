//! Canonical text forms.
//!
//! Bracket terms print as `c*A^i*B^j*d^k` with unit coefficients and `^1`
//! omitted, sorted descending: `A^2*d + 2*A*B + B^2*d`. Jones terms print as
//! `c*t^(p/q)` with the fraction reduced, or `t^k` for whole exponents.

use std::fmt::{self, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{Monomial, MultiPoly, OnePoly, PolyError, QuarterPoly, Var};

fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a BigInt, Vec<String>)>,
{
    let mut first = true;
    for (c, factors) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                f.write_char('-')?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let mut parts: Vec<String> = Vec::with_capacity(factors.len() + 1);
        if !abs.is_one() || factors.is_empty() {
            parts.push(abs.to_string());
        }
        parts.extend(factors);
        f.write_str(&parts.join("*"))?;
    }
    if first {
        f.write_char('0')?;
    }
    Ok(())
}

fn int_factor(sym: char, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(sym.to_string()),
        _ => Some(format!("{sym}^{e}")),
    }
}

fn quarter_factor(q: i64) -> Option<String> {
    let g = q.gcd(&4);
    let (p, r) = (q / g, 4 / g);
    if r == 1 {
        int_factor('t', p)
    } else {
        Some(format!("t^({p}/{r})"))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms()
                .map(|(m, c)| (c, Var::ALL.iter().filter_map(|&v| int_factor(v.symbol(), m.exp(v) as i64)).collect())),
        )
    }
}

impl fmt::Display for OnePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(e, c)| (c, int_factor('A', e).into_iter().collect())))
    }
}

impl fmt::Display for QuarterPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(e, c)| (c, quarter_factor(e).into_iter().collect())))
    }
}

/// A parsed term: coefficient plus `(symbol, numerator, denominator)` factors.
type RawTerm = (BigInt, Vec<(char, i64, i64)>);

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Self { src: s.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small_int(&mut self) -> Result<i64, PolyError> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let v: i64 = d.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<(i64, i64), PolyError> {
        if self.eat(b'(') {
            let p = self.small_int()?;
            let q = if self.eat(b'/') { self.small_int()? } else { 1 };
            if q <= 0 {
                return Err(self.err("denominator must be positive"));
            }
            if !self.eat(b')') {
                return Err(self.err("expected `)`"));
            }
            Ok((p, q))
        } else {
            Ok((self.small_int()?, 1))
        }
    }

    fn factor(&mut self) -> Result<(char, i64, i64), PolyError> {
        let c = self.peek().ok_or_else(|| self.err("expected a variable"))?;
        if !c.is_ascii_alphabetic() {
            return Err(self.err(format!("expected a variable, found `{}`", c as char)));
        }
        self.pos += 1;
        let (p, q) = if self.eat(b'^') { self.exponent()? } else { (1, 1) };
        Ok((c as char, p, q))
    }

    fn term(&mut self, sign: bool) -> Result<RawTerm, PolyError> {
        let mut coeff = BigInt::one();
        let mut factors = Vec::new();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = self.digits()?.parse::<BigInt>().map_err(|_| self.err("bad coefficient"))?;
            if !self.eat(b'*') {
                return Ok((if sign { -coeff } else { coeff }, factors));
            }
        }
        loop {
            factors.push(self.factor()?);
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((if sign { -coeff } else { coeff }, factors))
    }

    fn terms(mut self) -> Result<Vec<RawTerm>, PolyError> {
        let mut out = Vec::new();
        self.skip_ws();
        let mut sign = self.eat(b'-');
        loop {
            self.skip_ws();
            out.push(self.term(sign)?);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => sign = false,
                Some(b'-') => sign = true,
                Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

impl FromStr for MultiPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = MultiPoly::zero();
        for (c, factors) in Parser::new(s).terms()? {
            let mut m = Monomial::ONE;
            for (sym, num, den) in factors {
                let v = Var::from_symbol(sym)
                    .ok_or(PolyError::Parse { pos: 0, msg: format!("unknown variable `{sym}`") })?;
                if den != 1 {
                    return Err(PolyError::Parse { pos: 0, msg: "fractional exponent in a bracket polynomial".into() });
                }
                m.0[v.idx()] +=
                    i32::try_from(num).map_err(|_| PolyError::Parse { pos: 0, msg: "exponent out of range".into() })?;
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}

impl FromStr for OnePoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = OnePoly::zero();
        for (c, factors) in Parser::new(s).terms()? {
            let mut e = 0;
            for (sym, num, den) in factors {
                if sym != 'A' || den != 1 {
                    return Err(PolyError::Parse { pos: 0, msg: format!("unexpected factor `{sym}`") });
                }
                e += num;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl FromStr for QuarterPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = QuarterPoly::zero();
        for (c, factors) in Parser::new(s).terms()? {
            let mut q = 0;
            for (sym, num, den) in factors {
                if sym != 't' || 4 % den != 0 {
                    return Err(PolyError::Parse {
                        pos: 0,
                        msg: format!("unexpected factor `{sym}` or exponent denominator {den}"),
                    });
                }
                q += num * (4 / den);
            }
            p.add_term(q, c);
        }
        Ok(p)
    }
}

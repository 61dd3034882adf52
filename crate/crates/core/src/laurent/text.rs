//! Textual form: `c * t1^e1 ... tn^en` terms joined by `+` / `-`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CoeffDomain, LaurentPoly, Monomial};
use crate::{Error, Result};

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        // descending graded-lex
        terms.sort_by(|(a, _), (b, _)| {
            let da: i64 = a.iter().sum();
            let db: i64 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let constant = e.iter().all(|&x| x == 0);
            if constant {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag} * ")?;
            }
            let mut first = true;
            for (j, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                if x == 1 {
                    write!(f, "t{}", j + 1)?;
                } else {
                    write!(f, "t{}^{}", j + 1, x)?;
                }
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn unsigned(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn signed_i64(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self
            .unsigned()
            .ok_or_else(|| self.err("expected an integer exponent"))?;
        let v: i64 = v.try_into().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }
}

impl LaurentPoly {
    /// Parses the textual form. Variables are `t1..tn`; a bare `t` is
    /// accepted when `num_vars == 1`. Coefficients are reduced into `domain`.
    pub fn parse(src: &str, num_vars: usize, domain: CoeffDomain) -> Result<LaurentPoly> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = LaurentPoly::zero(num_vars, domain);
        let mut first = true;
        loop {
            let sign = match lx.peek() {
                None if first => return Err(lx.err("empty polynomial")),
                None => break,
                Some(b'+') => {
                    lx.pos += 1;
                    1
                }
                Some(b'-') => {
                    lx.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return Err(lx.err(format!("expected '+' or '-', found '{}'", c as char))),
            };
            first = false;
            let (c, e) = parse_term(&mut lx, num_vars)?;
            out.add_term(e, c * sign);
        }
        Ok(out)
    }
}

fn parse_term(lx: &mut Lexer<'_>, num_vars: usize) -> Result<(BigInt, Monomial)> {
    let mut coeff = BigInt::one();
    let mut exps = vec![0i64; num_vars];
    let mut seen_any = false;
    if let Some(c) = lx.unsigned() {
        coeff = c;
        seen_any = true;
        if lx.peek() == Some(b'*') {
            lx.pos += 1;
        }
    }
    loop {
        match lx.peek() {
            Some(b't') => {
                lx.pos += 1;
                let idx = match lx.src.get(lx.pos) {
                    Some(d) if d.is_ascii_digit() => {
                        let v = lx.unsigned().unwrap();
                        let v: usize = v.try_into().map_err(|_| lx.err("variable index out of range"))?;
                        if v == 0 || v > num_vars {
                            return Err(lx.err(format!("variable t{v} outside t1..t{num_vars}")));
                        }
                        v - 1
                    }
                    _ if num_vars == 1 => 0,
                    _ => return Err(lx.err("bare 't' needs a variable index")),
                };
                let mut e = 1i64;
                if lx.peek() == Some(b'^') {
                    lx.pos += 1;
                    e = lx.signed_i64()?;
                }
                exps[idx] += e;
                seen_any = true;
                if lx.peek() == Some(b'*') {
                    lx.pos += 1;
                }
            }
            Some(d) if d.is_ascii_digit() && seen_any => {
                // trailing numeric factor, e.g. "t1 * 3"
                let c = lx.unsigned().unwrap();
                coeff *= c;
            }
            _ => break,
        }
    }
    if !seen_any {
        return Err(lx.err("expected a coefficient or a variable"));
    }
    if coeff.is_zero() {
        exps.iter_mut().for_each(|x| *x = 0);
    }
    Ok((coeff, exps))
}

//! Raw complex files.
//!
//! ```text
//! free_rank = 1
//! torsion.orders = 2
//! ranks = 1 2 1
//! boundary 1            # C_1 -> C_0, rows are cells of C_1
//! entry 1 1 = 1 (1) [0] -1 (0) [0]
//! entry 2 1 = 1 (0) [1] -1 (0) [0]
//! boundary 2
//! entry 1 2 = 3 (0) [0] 3 (0) [1]
//! ```
//!
//! Entries are `coef (e1,...,en) [r1,...,rk]` triples; omitted entries are
//! zero. An optional `characteristic = p` line selects `F_p` coefficients.

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::{GroupRingComplex, GroupRingElem};
use crate::presentations::AbelianTarget;
use crate::{CoeffDomain, Error, Matrix, Result};

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Scanner<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col0 + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn integer(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
            .count();
        let tok = &rest[..len];
        if tok.is_empty() || tok == "-" || tok == "+" {
            return Err(self.err("expected an integer"));
        }
        self.pos += len;
        Ok(tok)
    }

    fn list<T: std::str::FromStr>(&mut self, open: char, close: char) -> Result<Vec<T>> {
        self.expect(open)?;
        let mut out = Vec::new();
        self.skip_ws();
        if self.src[self.pos..].starts_with(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            let start = self.pos;
            let tok = self.integer()?;
            out.push(tok.parse().map_err(|_| {
                Error::parse(self.line, self.col0 + start, format!("integer '{tok}' out of range"))
            })?);
            self.skip_ws();
            if self.src[self.pos..].starts_with(',') {
                self.pos += 1;
            } else {
                self.expect(close)?;
                return Ok(out);
            }
        }
    }
}

fn parse_entry(s: &mut Scanner<'_>, target: &AbelianTarget, domain: CoeffDomain) -> Result<GroupRingElem> {
    let mut terms = Vec::new();
    if s.src[s.pos..].trim() == "0" {
        return Ok(GroupRingElem::zero(target, domain));
    }
    while !s.done() {
        let c: BigInt = s.integer()?.parse().map_err(|_| s.err("bad coefficient"))?;
        let at = s.pos;
        let free: Vec<i64> = s.list('(', ')')?;
        let torsion: Vec<i64> = s.list('[', ']')?;
        let g = target
            .element(free, torsion)
            .map_err(|e| Error::parse(s.line, s.col0 + at, e.to_string()))?;
        terms.push((g, c));
    }
    Ok(GroupRingElem::from_terms(target, domain, terms))
}

/// Parses a raw complex; `∂∘∂ = 0` is enforced by [`GroupRingComplex::new`].
pub fn parse_raw_complex(src: &str) -> Result<GroupRingComplex> {
    let mut free_rank: Option<usize> = None;
    let mut orders: Vec<u64> = Vec::new();
    let mut domain = CoeffDomain::Integers;
    let mut ranks: Option<Vec<usize>> = None;
    let mut target: Option<AbelianTarget> = None;
    let mut matrices: Vec<Option<Matrix<GroupRingElem>>> = Vec::new();
    let mut current: Option<usize> = None;

    for (k, raw) in src.lines().enumerate() {
        let number = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let head = trimmed.split_whitespace().next().unwrap_or("");
        let after_key = |key_end: usize| -> (usize, &str) {
            let rest = &trimmed[key_end..];
            let rest = rest.trim_start().strip_prefix('=').unwrap_or(rest);
            (indent + trimmed.len() - rest.len() + 1, rest)
        };
        let ints = |col: usize, s: &str| -> Result<Vec<u64>> {
            s.split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(number, col, format!("expected integers, found '{t}'"))))
                .collect()
        };
        let key = trimmed.split(|c: char| c == '=' || c.is_whitespace()).next().unwrap_or("");
        match key {
            "free_rank" | "torsion.orders" | "ranks" | "characteristic" => {
                if target.is_some() {
                    return Err(Error::parse(number, indent + 1, format!("'{key}' after the first boundary block")));
                }
                let (col, rest) = after_key(key.len());
                let v = ints(col, rest)?;
                match key {
                    "free_rank" => {
                        free_rank = Some(*v.first().ok_or_else(|| Error::parse(number, col, "missing value"))? as usize)
                    }
                    "torsion.orders" => orders = v,
                    "characteristic" => {
                        let p = *v.first().ok_or_else(|| Error::parse(number, col, "missing value"))?;
                        domain = CoeffDomain::for_characteristic(p);
                        if p != 0 {
                            crate::scalar::check_characteristic(p)?;
                        }
                    }
                    _ => ranks = Some(v.into_iter().map(|x| x as usize).collect()),
                }
            }
            "boundary" => {
                let (Some(n), Some(rk)) = (free_rank, ranks.as_ref()) else {
                    return Err(Error::parse(number, indent + 1, "'boundary' before 'free_rank' and 'ranks'"));
                };
                if target.is_none() {
                    target = Some(AbelianTarget::new(n, orders.clone())?);
                    matrices = vec![None; rk.len().saturating_sub(1)];
                }
                let t = target.as_ref().expect("set above");
                let (col, rest) = after_key(head.len());
                let v = ints(col, rest)?;
                let i = match v.as_slice() {
                    [i] if *i >= 1 && (*i as usize) < rk.len() => *i as usize,
                    _ => return Err(Error::parse(number, col, format!("boundary index must be in 1..{}", rk.len()))),
                };
                if matrices[i - 1].is_some() {
                    return Err(Error::parse(number, col, format!("duplicate boundary {i}")));
                }
                matrices[i - 1] = Some(Matrix::filled(rk[i], rk[i - 1], GroupRingElem::zero(t, domain)));
                current = Some(i - 1);
            }
            "entry" => {
                let (Some(t), Some(i)) = (target.as_ref(), current) else {
                    return Err(Error::parse(number, indent + 1, "'entry' outside a boundary block"));
                };
                let Some(eq) = trimmed.find('=') else {
                    return Err(Error::parse(number, indent + 1, "expected 'entry <row> <col> = <terms>'"));
                };
                let idx = ints(indent + 7, &trimmed[5..eq])?;
                let m = matrices[i].as_mut().expect("current block exists");
                let (r, c) = match idx.as_slice() {
                    [r, c] if *r >= 1 && *c >= 1 && (*r as usize) <= m.rows() && (*c as usize) <= m.cols() => {
                        (*r as usize - 1, *c as usize - 1)
                    }
                    _ => {
                        return Err(Error::parse(
                            number,
                            indent + 7,
                            format!("entry index out of range for a {}x{} block", m.rows(), m.cols()),
                        ))
                    }
                };
                let mut s = Scanner {
                    src: &trimmed[eq + 1..],
                    pos: 0,
                    line: number,
                    col0: indent + eq + 2,
                };
                let e = parse_entry(&mut s, t, domain)?;
                m.set(r, c, e);
            }
            other => return Err(Error::parse(number, indent + 1, format!("unknown key '{other}'"))),
        }
    }
    let (Some(n), Some(ranks)) = (free_rank, ranks) else {
        return Err(Error::parse(1, 1, "missing 'free_rank' or 'ranks'"));
    };
    let target = match target {
        Some(t) => t,
        None => AbelianTarget::new(n, orders)?,
    };
    let boundaries = (0..ranks.len().saturating_sub(1))
        .map(|i| {
            matrices
                .get(i)
                .cloned()
                .flatten()
                .unwrap_or_else(|| Matrix::filled(ranks[i + 1], ranks[i], GroupRingElem::zero(&target, domain)))
        })
        .collect();
    GroupRingComplex::new(target, domain, ranks, boundaries)
}

/// Prints in the format read by [`parse_raw_complex`]; zero entries are omitted.
pub fn write_raw_complex(c: &GroupRingComplex) -> String {
    let mut s = String::new();
    let t = c.target();
    let _ = writeln!(s, "free_rank = {}", t.free_rank());
    if t.has_torsion() {
        let o: Vec<String> = t.torsion_orders().iter().map(u64::to_string).collect();
        let _ = writeln!(s, "torsion.orders = {}", o.join(" "));
    }
    if c.domain().characteristic() != 0 {
        let _ = writeln!(s, "characteristic = {}", c.domain().characteristic());
    }
    let r: Vec<String> = c.ranks().iter().map(usize::to_string).collect();
    let _ = writeln!(s, "ranks = {}", r.join(" "));
    for (i, b) in c.boundaries().iter().enumerate() {
        let _ = writeln!(s, "boundary {}", i + 1);
        for row in 0..b.rows() {
            for col in 0..b.cols() {
                let e = b.get(row, col);
                if !e.is_zero() {
                    let _ = writeln!(s, "entry {} {} = {e}", row + 1, col + 1);
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{circle_complex, presentation_complex, torsion_reduce};
    use crate::presentations::{orbifold_epimorphism, orbifold_presentation, Epimorphism, GroupPresentation, OrbifoldType, Word};

    #[test]
    fn round_trips() {
        let torus = GroupPresentation::new(2, vec![Word::commutator(&Word::power(0, 1), &Word::power(1, 1))]).unwrap();
        let c = presentation_complex(&torus, &Epimorphism::free_abelianization(&torus).unwrap()).unwrap();
        assert_eq!(parse_raw_complex(&write_raw_complex(&c)).unwrap(), c);

        let tau = OrbifoldType::new(0, 2, vec![4], Some(vec![2])).unwrap();
        let h = AbelianTarget::new(1, vec![2]).unwrap();
        let c = presentation_complex(&orbifold_presentation(&tau), &orbifold_epimorphism(&tau, &h).unwrap()).unwrap();
        let text = write_raw_complex(&c);
        assert!(text.contains("torsion.orders = 2"));
        assert_eq!(parse_raw_complex(&text).unwrap(), c);
        let r = torsion_reduce(&c);
        assert_eq!(parse_raw_complex(&write_raw_complex(&r)).unwrap(), r);

        let k = circle_complex(1, 0).tensor(&circle_complex(1, 0)).unwrap();
        assert_eq!(parse_raw_complex(&write_raw_complex(&k)).unwrap(), k);
    }

    #[test]
    fn hand_written() {
        let src = "free_rank = 1\nranks = 1 1\nboundary 1\nentry 1 1 = 1 (1) [] -1 (0) []\n";
        let c = parse_raw_complex(src).unwrap();
        assert_eq!(c, circle_complex(1, 0));
    }

    #[test]
    fn errors() {
        let e = parse_raw_complex("free_rank = 1\nranks = 1 1\nboundary 1\nentry 1 1 = 1 (1 [] \n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = parse_raw_complex("free_rank = 1\nranks = 1 1\nboundary 1\nentry 2 1 = 1 (1) []\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, column: 7, .. }), "{e}");
        // ∂∘∂ ≠ 0
        let src = "free_rank = 1\nranks = 1 1 1\nboundary 1\nentry 1 1 = 1 (0) []\nboundary 2\nentry 1 1 = 1 (0) []\n";
        assert!(matches!(parse_raw_complex(src), Err(Error::Constraint(_))));
    }
}

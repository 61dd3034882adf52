//! Line-oriented presentation files.
//!
//! ```text
//! # Z * Z/6
//! generators = 2
//! relator = g2 g2 g2 g2 g2 g2
//! torsion.orders = 2
//! nu.free = 1
//! nu.free = 0
//! nu.torsion = 0
//! nu.torsion = 1
//! ```
//!
//! `nu.free` / `nu.torsion` give one line per generator in order. Without
//! any `nu.*` lines, ν is the projection onto the free abelianization.

use std::fmt::Write as _;

use super::{AbelianTarget, Epimorphism, GroupPresentation, HElem, Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub presentation: GroupPresentation,
    pub nu: Epimorphism,
}

struct Line<'a> {
    number: usize,
    value_column: usize,
    value: &'a str,
}

impl Line<'_> {
    fn err(&self, offset: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.number, self.value_column + offset, msg)
    }

    /// Whitespace-separated tokens with their column offsets.
    fn tokens(&self) -> impl Iterator<Item = (usize, &str)> {
        let base = self.value.as_ptr() as usize;
        self.value.split_whitespace().map(move |t| (t.as_ptr() as usize - base, t))
    }

    fn integers<T: std::str::FromStr>(&self) -> Result<Vec<T>> {
        self.tokens()
            .map(|(off, t)| t.parse().map_err(|_| self.err(off, format!("expected an integer, found '{t}'"))))
            .collect()
    }
}

fn parse_word(line: &Line<'_>, generators: usize) -> Result<Word> {
    let mut letters = Vec::new();
    for (off, tok) in line.tokens() {
        if tok == "1" {
            continue;
        }
        let body = tok
            .strip_prefix('g')
            .ok_or_else(|| line.err(off, format!("expected a letter like g3 or g3^-1, found '{tok}'")))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e),
            None => (body, "1"),
        };
        let g: usize = idx
            .parse()
            .map_err(|_| line.err(off, format!("invalid generator index '{idx}'")))?;
        if g == 0 || g > generators {
            return Err(line.err(off, format!("generator g{g} out of range 1..={generators}")));
        }
        let e: i64 = exp
            .parse()
            .map_err(|_| line.err(off + 2 + idx.len(), format!("invalid exponent '{exp}'")))?;
        let l = if e < 0 { Letter::inv(g - 1) } else { Letter::new(g - 1) };
        letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
    }
    Ok(Word::new(letters))
}

/// Parses a presentation file; errors carry 1-based line and column.
pub fn parse_presentation_file(src: &str) -> Result<PresentationFile> {
    let mut generators: Option<usize> = None;
    let mut relator_lines = Vec::new();
    let mut orders: Option<Vec<u64>> = None;
    let mut free_lines = Vec::new();
    let mut torsion_lines = Vec::new();
    let mut last_line = 0;

    for (k, raw) in src.lines().enumerate() {
        let number = k + 1;
        last_line = number;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(Error::parse(number, col, "expected 'key = value'"));
        };
        let key = content[..eq].trim();
        let rest = &content[eq + 1..];
        let lead = rest.len() - rest.trim_start().len();
        let line = Line {
            number,
            value_column: eq + 2 + lead,
            value: rest.trim(),
        };
        match key {
            "generators" => {
                if generators.is_some() {
                    return Err(Error::parse(number, 1, "duplicate 'generators' line"));
                }
                let v: Vec<usize> = line.integers()?;
                if v.len() != 1 {
                    return Err(line.err(0, "expected a single generator count"));
                }
                generators = Some(v[0]);
            }
            "relator" => {
                let Some(count) = generators else {
                    return Err(Error::parse(number, 1, "'relator' before 'generators'"));
                };
                relator_lines.push(parse_word(&line, count)?);
            }
            "torsion.orders" => {
                let v: Vec<u64> = line.integers()?;
                if let Some(off) = v.iter().position(|&d| d < 2) {
                    return Err(line.err(
                        line.tokens().nth(off).map_or(0, |t| t.0),
                        "torsion orders must be at least 2",
                    ));
                }
                orders = Some(v);
            }
            "nu.free" => free_lines.push((number, line.integers::<i64>()?)),
            "nu.torsion" => torsion_lines.push((number, line.integers::<i64>()?)),
            other => return Err(Error::parse(number, 1, format!("unknown key '{other}'"))),
        }
    }

    let Some(k) = generators else {
        return Err(Error::parse(last_line.max(1), 1, "missing 'generators = k' line"));
    };
    let presentation = GroupPresentation::new(k, relator_lines)?;
    let orders = orders.unwrap_or_default();

    if free_lines.is_empty() && torsion_lines.is_empty() {
        if !orders.is_empty() {
            return Err(Error::parse(last_line, 1, "torsion.orders given without nu lines"));
        }
        let nu = Epimorphism::free_abelianization(&presentation)?;
        return Ok(PresentationFile { presentation, nu });
    }
    if free_lines.len() != k {
        let at = free_lines.last().map_or(last_line, |l| l.0);
        return Err(Error::parse(at, 1, format!("{} nu.free lines for {k} generators", free_lines.len())));
    }
    let n = free_lines[0].1.len();
    if let Some((num, _)) = free_lines.iter().find(|l| l.1.len() != n) {
        return Err(Error::parse(*num, 1, format!("nu.free lines must all have {n} entries")));
    }
    let torsion: Vec<Vec<i64>> = if orders.is_empty() && torsion_lines.is_empty() {
        vec![Vec::new(); k]
    } else {
        if torsion_lines.len() != k {
            let at = torsion_lines.last().map_or(last_line, |l| l.0);
            return Err(Error::parse(at, 1, format!("{} nu.torsion lines for {k} generators", torsion_lines.len())));
        }
        if let Some((num, _)) = torsion_lines.iter().find(|l| l.1.len() != orders.len()) {
            return Err(Error::parse(*num, 1, format!("nu.torsion lines must have {} entries", orders.len())));
        }
        torsion_lines.into_iter().map(|l| l.1).collect()
    };
    let target = AbelianTarget::new(n, orders)?;
    let images = free_lines
        .into_iter()
        .zip(torsion)
        .map(|((_, f), t)| target.element(f, t))
        .collect::<Result<Vec<HElem>>>()?;
    let nu = Epimorphism::new(&presentation, target, images)?;
    Ok(PresentationFile { presentation, nu })
}

/// Prints in the format read by [`parse_presentation_file`].
pub fn write_presentation_file(file: &PresentationFile) -> String {
    let mut s = String::new();
    let p = &file.presentation;
    let _ = writeln!(s, "generators = {}", p.generator_count());
    for r in p.relators() {
        let _ = writeln!(s, "relator = {r}");
    }
    let target = file.nu.target();
    if target.has_torsion() {
        let orders: Vec<String> = target.torsion_orders().iter().map(u64::to_string).collect();
        let _ = writeln!(s, "torsion.orders = {}", orders.join(" "));
    }
    let join = |v: Vec<String>| v.join(" ");
    for img in file.nu.images() {
        let _ = writeln!(s, "nu.free = {}", join(img.free.iter().map(i64::to_string).collect()));
    }
    if target.has_torsion() {
        for img in file.nu.images() {
            let _ = writeln!(s, "nu.torsion = {}", join(img.torsion.iter().map(u64::to_string).collect()));
        }
    }
    s
}

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::elimination::determinant;
use crate::laurent::{gcd, normal_form};
use crate::{Error, LaurentPoly, PolyMatrix, Result};

/// Random subsets tried before systematic enumeration.
const RANDOM_PROBES: usize = 16;

/// Gcd (in normal form) of all nonzero `r x r` minors of `m`. Stops early
/// once the running gcd is a unit; fails with [`Error::Budget`] if more than
/// `budget` minors would be needed.
pub fn gcd_of_minors(m: &PolyMatrix, r: usize, budget: usize, seed: u64) -> Result<LaurentPoly> {
    let (rows, cols) = m.shape();
    if r == 0 || r > rows.min(cols) {
        return Err(Error::constraint(format!(
            "minor size {r} outside 1..={} for a {rows}x{cols} matrix",
            rows.min(cols)
        )));
    }
    let num_vars = m.get(0, 0).num_vars();
    let domain = m.get(0, 0).domain();
    let zero = LaurentPoly::zero(num_vars, domain);
    let mut acc: Option<LaurentPoly> = None;
    let mut evaluated = 0usize;
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();

    let mut visit = |rs: Vec<usize>, cs: Vec<usize>, acc: &mut Option<LaurentPoly>| -> Result<bool> {
        if !seen.insert((rs.clone(), cs.clone())) {
            return Ok(false);
        }
        evaluated += 1;
        if evaluated > budget {
            return Err(Error::Budget(budget));
        }
        let sub = m.submatrix(&rs, &cs).into_rows();
        let det = determinant(sub, zero.clone());
        if det.is_zero() {
            return Ok(false);
        }
        let g = match acc.take() {
            None => normal_form(&det),
            Some(g) => gcd(&g, &det)?,
        };
        let unit = g.is_unit();
        *acc = Some(g);
        Ok(unit)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = binomial(rows, r).saturating_mul(binomial(cols, r));
    for _ in 0..RANDOM_PROBES.min(total as usize) {
        let mut rs = sample(&mut rng, rows, r).into_vec();
        let mut cs = sample(&mut rng, cols, r).into_vec();
        rs.sort_unstable();
        cs.sort_unstable();
        if visit(rs, cs, &mut acc)? {
            return Ok(acc.unwrap());
        }
    }
    for rs in combinations(rows, r) {
        for cs in combinations(cols, r) {
            if visit(rs.clone(), cs, &mut acc)? {
                return Ok(acc.unwrap());
            }
        }
    }
    acc.ok_or_else(|| Error::compute(format!("all {r}x{r} minors vanish; the rank is smaller than {r}")))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Lexicographic k-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CoeffDomain;

    fn pm(rows: &[&[&str]], n: usize) -> PolyMatrix {
        let cols = rows[0].len();
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| LaurentPoly::parse(s, n, CoeffDomain::Integers).unwrap()).collect())
                .collect(),
            cols,
        )
    }

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n, CoeffDomain::Integers).unwrap()
    }

    #[test]
    fn combination_count() {
        assert_eq!(combinations(5, 2).count(), 10);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(binomial(6, 3), 20);
    }

    #[test]
    fn examples() {
        assert_eq!(gcd_of_minors(&pm(&[&["0", "6"]], 1), 1, 100, 1).unwrap(), p("6", 1));
        assert_eq!(gcd_of_minors(&pm(&[&["t2 - 1"], &["1 - t1"]], 2), 1, 100, 1).unwrap(), p("1", 2));
        assert_eq!(gcd_of_minors(&pm(&[&["1", "0"], &["0", "1"]], 2), 2, 100, 1).unwrap(), p("1", 2));
    }

    #[test]
    fn errors() {
        let m = pm(&[&["t1 - 1", "t1^2 - 1"], &["2 t1 - 2", "2 t1^2 - 2"]], 1);
        assert!(matches!(gcd_of_minors(&m, 2, 100, 1), Err(Error::Compute(_))));
        assert_eq!(gcd_of_minors(&m, 1, 100, 1).unwrap(), p("t1 - 1", 1));
        assert!(matches!(gcd_of_minors(&m, 1, 2, 1), Err(Error::Budget(2))));
        assert!(gcd_of_minors(&m, 3, 100, 1).is_err());
    }
}

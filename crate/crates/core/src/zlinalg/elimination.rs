use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::scalar::Field;
use crate::LaurentPoly;

/// Integral domain with exact division, as needed by fraction-free elimination.
pub trait ExactDomain: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other`, where the quotient is known to exist.
    fn div_exact(&self, other: &Self) -> Self;
}

impl ExactDomain for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
        q
    }
}

impl ExactDomain for LaurentPoly {
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        LaurentPoly::div_exact(self, other).expect("inexact Bareiss division")
    }
}

/// Fraction-free elimination with full pivoting. Returns the rank and the
/// signed last pivot (the determinant when the input is square and regular).
fn bareiss<T: ExactDomain>(mut a: Vec<Vec<T>>, cols: usize) -> (usize, Option<T>, bool) {
    let rows = a.len();
    let mut prev: Option<T> = None;
    let mut sign_flip = false;
    let mut r = 0;
    while r < rows.min(cols) {
        let mut pivot = None;
        'find: for j in r..cols {
            for (i, row) in a.iter().enumerate().skip(r) {
                if !row[j].is_zero() {
                    pivot = Some((i, j));
                    break 'find;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != r {
            a.swap(pi, r);
            sign_flip = !sign_flip;
        }
        if pj != r {
            for row in a.iter_mut() {
                row.swap(pj, r);
            }
            sign_flip = !sign_flip;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            for j in r + 1..cols {
                let mut v = prow[r].mul(&row[j]).sub(&row[r].mul(&prow[j]));
                if let Some(p) = &prev {
                    if !v.is_zero() {
                        v = v.div_exact(p);
                    }
                }
                row[j] = v;
            }
        }
        prev = Some(a[r][r].clone());
        r += 1;
    }
    (r, prev, sign_flip)
}

/// Rank over the fraction field of an integral domain.
pub fn bareiss_rank<T: ExactDomain>(rows: Vec<Vec<T>>, cols: usize) -> usize {
    bareiss(rows, cols).0
}

/// Determinant of a square matrix over an integral domain; `zero` is
/// returned for singular input.
pub fn determinant<T: ExactDomain>(rows: Vec<Vec<T>>, zero: T) -> T {
    let n = rows.len();
    if n == 0 {
        panic!("determinant of an empty matrix needs a context-specific one");
    }
    let (r, last, flip) = bareiss(rows, n);
    if r < n {
        return zero;
    }
    let d = last.unwrap();
    if flip {
        d.neg()
    } else {
        d
    }
}

/// Rank by Gaussian elimination over a field.
pub fn rank_over_field<F: Field>(mut a: Vec<Vec<F>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for j in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pi) = (rank..rows).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        a.swap(pi, rank);
        let inv = a[rank][j].inv();
        let (head, tail) = a.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[j].is_zero() {
                continue;
            }
            let f = row[j].clone() * inv.clone();
            for k in j..cols {
                if !prow[k].is_zero() {
                    row[k] = row[k].clone() - f.clone() * prow[k].clone();
                }
            }
        }
        rank += 1;
    }
    rank
}

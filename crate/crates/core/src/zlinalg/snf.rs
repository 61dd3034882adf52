use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::identity;
use crate::IntMatrix;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// non-negative entries `d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &BigInt, from: usize) {
        let (ri, rj) = two_rows(&mut self.a, i, j);
        for k in from..ri.len() {
            if !rj[k].is_zero() {
                ri[k] -= q * &rj[k];
            }
        }
        if let Some(u) = &mut self.u {
            let (ui, uj) = two_rows(u, i, j);
            for k in 0..ui.len() {
                if !uj[k].is_zero() {
                    ui[k] -= q * &uj[k];
                }
            }
        }
    }

    /// col_i -= q * col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &BigInt, from: usize) {
        for row in self.a.iter_mut().skip(from) {
            if !row[j].is_zero() {
                let t = q * &row[j];
                row[i] -= t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    let t = q * &row[j];
                    row[i] -= t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                    if x.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let k = self.rows.min(self.cols);
        for t in 0..k {
            let Some((pi, pj)) = self.min_entry(t) else {
                return;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // clear column t below the pivot
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_axpy(i, t, &q, t);
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                // clear row t right of the pivot
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_axpy(j, t, &q, t);
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    let (pi, pj) = self.min_in_cross(t);
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                // divisibility of the remaining block
                let mut offender = None;
                'scan: for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        if !self.a[i][j].is_multiple_of(&self.a[t][t]) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        // row_t += row_i, then reduce again
                        self.row_axpy(t, i, &BigInt::from(-1), t);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }

    /// Smallest nonzero entry in row t / column t (from t on).
    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut bv = self.a[t][t].abs();
        for i in t..self.rows {
            let x = self.a[i][t].abs();
            if !x.is_zero() && (bv.is_zero() || x < bv) {
                bv = x;
                best = (i, t);
            }
        }
        for j in t..self.cols {
            let x = self.a[t][j].abs();
            if !x.is_zero() && (bv.is_zero() || x < bv) {
                bv = x;
                best = (t, j);
            }
        }
        best
    }
}

fn two_rows<T>(m: &mut [Vec<T>], i: usize, j: usize) -> (&mut Vec<T>, &Vec<T>) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = m.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = m.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}

fn to_rows(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    a.clone().into_rows()
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = a.shape();
    let mut w = Work {
        a: to_rows(a),
        u: Some(identity(rows).into_rows()),
        v: Some(identity(cols).into_rows()),
        rows,
        cols,
    };
    w.run();
    let d = IntMatrix::from_rows(w.a, cols);
    let u = IntMatrix::from_rows(w.u.unwrap(), rows);
    let v = IntMatrix::from_rows(w.v.unwrap(), cols);
    let out = SmithDecomposition { u, d, v };
    #[cfg(debug_assertions)]
    {
        debug_assert_eq!(
            super::int_matmul(&super::int_matmul(&out.u, a), &out.v),
            out.d,
            "Smith contract U·A·V = D"
        );
    }
    out
}

/// Diagonal of the Smith normal form (length `min(rows, cols)`), without transforms.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = a.shape();
    let mut w = Work {
        a: to_rows(a),
        u: None,
        v: None,
        rows,
        cols,
    };
    w.run();
    (0..rows.min(cols)).map(|i| w.a[i][i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::super::int_matrix;
    use super::*;

    fn diag(a: &IntMatrix) -> Vec<i64> {
        smith_normal_form(a)
            .diagonal()
            .into_iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn identity_is_fixed() {
        assert_eq!(diag(&identity(3)), vec![1, 1, 1]);
    }

    #[test]
    fn two_by_two_examples() {
        assert_eq!(diag(&int_matrix(2, 2, &[2, 4, 6, 8])), vec![2, 4]);
        assert_eq!(diag(&int_matrix(2, 2, &[2, 0, 0, 3])), vec![1, 6]);
    }

    #[test]
    fn rectangular_and_zero() {
        assert_eq!(diag(&int_matrix(2, 3, &[0, 0, 0, 0, 0, 0])), vec![0, 0]);
        assert_eq!(diag(&int_matrix(3, 2, &[0, 4, 6, 0, 0, 10])), vec![2, 6]);
        assert_eq!(elementary_divisors(&int_matrix(1, 2, &[0, 5])), vec![BigInt::from(5)]);
    }
}

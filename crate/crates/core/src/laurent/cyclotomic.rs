use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{CoeffDomain, LaurentPoly, Monomial};
use crate::{Error, Result};

/// Dense coefficients (constant term first) of the cyclotomic polynomial Φ_k.
pub fn cyclotomic_coefficients(k: u64) -> Vec<BigInt> {
    assert!(k >= 1, "cyclotomic index must be positive");
    // Φ_k = (x^k - 1) / prod_{d | k, d < k} Φ_d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); k as usize + 1];
    num[0] = BigInt::from(-1);
    num[k as usize] = BigInt::one();
    for d in 1..k {
        if k.is_multiple_of(d) {
            num = divide_monic(&num, &cyclotomic_coefficients(d));
        }
    }
    num
}

fn divide_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

/// `t^shift · Φ_index(t^direction)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenCyclotomicFactor {
    pub shift: Monomial,
    pub direction: Monomial,
    pub index: u64,
}

impl GenCyclotomicFactor {
    pub fn new(shift: Monomial, direction: Monomial, index: u64) -> Result<Self> {
        if direction.iter().all(|&x| x == 0) {
            return Err(Error::constraint("generalized cyclotomic direction must be nonzero"));
        }
        if shift.len() != direction.len() {
            return Err(Error::mismatch("shift and direction lengths differ"));
        }
        if index == 0 {
            return Err(Error::constraint("cyclotomic index must be positive"));
        }
        Ok(GenCyclotomicFactor {
            shift,
            direction,
            index,
        })
    }

    /// Factor without a monomial shift.
    pub fn along(direction: Monomial, index: u64) -> Result<Self> {
        Self::new(vec![0; direction.len()], direction, index)
    }

    pub fn expand(&self) -> LaurentPoly {
        let n = self.direction.len();
        let coeffs = cyclotomic_coefficients(self.index);
        let mut out = LaurentPoly::zero(n, CoeffDomain::Integers);
        for (i, c) in coeffs.into_iter().enumerate() {
            let e = self
                .shift
                .iter()
                .zip(&self.direction)
                .map(|(m, d)| m + i as i64 * d)
                .collect();
            out.add_term(e, c);
        }
        out
    }
}

/// `c · prod_i t^{m_i} Φ_{k_i}(t^{n_i})` in `num_vars` variables.
pub fn expand_gencyclotomic_product(
    num_vars: usize,
    c: impl Into<BigInt>,
    factors: &[GenCyclotomicFactor],
) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::constant(num_vars, CoeffDomain::Integers, c);
    for f in factors {
        if f.direction.len() != num_vars {
            return Err(Error::mismatch(format!(
                "factor in {} variables for a product in {num_vars}",
                f.direction.len()
            )));
        }
        acc = &acc * &f.expand();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n, CoeffDomain::Integers).unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        let v = |k| cyclotomic_coefficients(k).into_iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(v(1), vec![-1, 1]);
        assert_eq!(v(2), vec![1, 1]);
        assert_eq!(v(4), vec![1, 0, 1]);
        assert_eq!(v(6), vec![1, -1, 1]);
        assert_eq!(v(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_coefficients(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn product_examples() {
        let f = GenCyclotomicFactor::along(vec![1, 1], 1).unwrap();
        assert_eq!(expand_gencyclotomic_product(2, 1, &[f]).unwrap(), p("t1 t2 - 1", 2));
        assert_eq!(expand_gencyclotomic_product(2, 6, &[]).unwrap(), p("6", 2));
        let fs = [
            GenCyclotomicFactor::along(vec![1, 0], 2).unwrap(),
            GenCyclotomicFactor::along(vec![0, 1], 1).unwrap(),
        ];
        assert_eq!(
            expand_gencyclotomic_product(2, 1, &fs).unwrap(),
            &p("t1 + 1", 2) * &p("t2 - 1", 2)
        );
    }

    #[test]
    fn shifted_negative_direction() {
        let f = GenCyclotomicFactor::new(vec![1, 0], vec![-1, 2], 3).unwrap();
        assert_eq!(f.expand(), p("t1 + t2^2 + t1^-1 t2^4", 2));
        assert!(GenCyclotomicFactor::along(vec![0, 0], 1).is_err());
    }
}

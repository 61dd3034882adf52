//! Exact linear algebra: Smith normal form over the integers, fraction-free
//! elimination over integral domains, ranks over fraction fields of Laurent
//! rings and gcds of minors.

mod elimination;
mod minors;
mod rank;
mod snf;

pub use elimination::{bareiss_rank, determinant, rank_over_field, ExactDomain};
pub use minors::gcd_of_minors;
pub use rank::{int_rank, int_rank_mod_p, rank_over_fractions, RankMode};
pub use snf::{elementary_divisors, smith_normal_form, SmithDecomposition};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::IntMatrix;

pub fn identity(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
}

pub fn int_matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.mul_with(b, &BigInt::zero())
}

pub fn int_matrix(rows: usize, cols: usize, data: &[i64]) -> IntMatrix {
    IntMatrix::from_vec(rows, cols, data.iter().map(|&v| BigInt::from(v)).collect())
}

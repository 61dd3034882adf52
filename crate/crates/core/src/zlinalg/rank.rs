use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::elimination::{bareiss_rank, rank_over_field};
use crate::gf::{Gf, GfContext};
use crate::scalar::{prev_prime, Field, Fp};
use crate::{CoeffDomain, IntMatrix, LaurentPoly, PolyMatrix};

/// How to compute a rank over the fraction field of a Laurent ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    /// Evaluate the variables at independent random points of a large field
    /// and keep the maximal rank seen.
    MonteCarlo { seed: u64, trials: u32 },
    /// Fraction-free elimination with polynomial pivots.
    Exact,
}

impl Default for RankMode {
    fn default() -> Self {
        RankMode::MonteCarlo { seed: 0x5eed, trials: 3 }
    }
}

/// Evaluation points are drawn from `[1, 2^40]`.
const SAMPLE_BOUND: u64 = 1 << 40;

/// Rank of a matrix of Laurent polynomials over the fraction field of its
/// entry ring.
pub fn rank_over_fractions(m: &PolyMatrix, mode: RankMode) -> usize {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return 0;
    }
    match mode {
        RankMode::Exact => bareiss_rank(m.clone().into_rows(), cols),
        RankMode::MonteCarlo { seed, trials } => {
            let num_vars = m.get(0, 0).num_vars();
            let domain = m.get(0, 0).domain();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let full = rows.min(cols);
            let mut best = 0;
            for _ in 0..trials.max(1) {
                let r = match domain {
                    CoeffDomain::Integers => {
                        let point: Vec<u64> = (0..num_vars).map(|_| rng.gen_range(1..=SAMPLE_BOUND)).collect();
                        // two large primes; each evaluation is a lower bound
                        let r1 = eval_rank_fp(m, &point, prev_prime(1 << 61));
                        let r2 = eval_rank_fp(m, &point, prev_prime(1 << 59));
                        r1.max(r2)
                    }
                    CoeffDomain::PrimeField(p) => {
                        let ctx = GfContext::with_min_size(p, SAMPLE_BOUND as u128);
                        let point: Vec<Gf> = (0..num_vars)
                            .map(|_| loop {
                                let g = ctx.random(&mut rng);
                                if !g.is_zero() {
                                    break g;
                                }
                            })
                            .collect();
                        eval_rank_gf(m, &point, &ctx)
                    }
                };
                best = best.max(r);
                if best == full {
                    break;
                }
            }
            best
        }
    }
}

fn power<F: Field>(base: &F, inv: &F, e: i64, one: &F) -> F {
    let (b, mut k) = if e >= 0 { (base, e as u64) } else { (inv, (-e) as u64) };
    let mut acc = one.clone();
    let mut sq = b.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * sq.clone();
        }
        sq = sq.clone() * sq;
        k >>= 1;
    }
    acc
}

fn eval_entry<F: Field>(h: &LaurentPoly, point: &[F], inverses: &[F], zero: &F, one: &F, coeff: impl Fn(&BigInt) -> F) -> F {
    h.evaluate_with(zero.clone(), coeff, |j, e| power(&point[j], &inverses[j], e, one))
}

fn eval_rank_fp(m: &PolyMatrix, point: &[u64], q: u64) -> usize {
    let pt: Vec<Fp> = point.iter().map(|&v| Fp::new(v, q)).collect();
    let inv: Vec<Fp> = pt.iter().map(|x| x.inv()).collect();
    let zero = Fp::new(0, q);
    let one = Fp::new(1, q);
    let rows = m
        .map(|h| eval_entry(h, &pt, &inv, &zero, &one, |c| Fp::from_bigint(c, q)))
        .into_rows();
    rank_over_field(rows)
}

fn eval_rank_gf(m: &PolyMatrix, point: &[Gf], ctx: &std::sync::Arc<GfContext>) -> usize {
    let inv: Vec<Gf> = point.iter().map(|x| x.inv()).collect();
    let zero = ctx.from_i64(0);
    let one = ctx.from_i64(1);
    let p = ctx.characteristic();
    let rows = m
        .map(|h| {
            eval_entry(h, point, &inv, &zero, &one, |c| {
                ctx.from_i64(Fp::from_bigint(c, p).value() as i64)
            })
        })
        .into_rows();
    rank_over_field(rows)
}

/// Rank over Q of an integer matrix (exact, fraction-free).
pub fn int_rank(m: &IntMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    bareiss_rank(m.clone().into_rows(), m.cols())
}

/// Rank over F_p of an integer matrix, by elimination in F_p.
pub fn int_rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    rank_over_field(m.map(|c| Fp::from_bigint(c, p)).into_rows())
}

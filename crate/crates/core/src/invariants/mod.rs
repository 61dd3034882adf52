//! Asymptotic Betti numbers `α_i`, Alexander polynomials `Δ_i`, torsion
//! growth `M_i`, and the closed-form orbifold predictions.

mod cyclotomic_field;
mod predict;
mod table;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use cyclotomic_field::{Cyclotomic, CyclotomicContext};
pub use predict::{orbifold_complex, predict_alpha1, predict_m1, standard_target, M1Prediction};
pub use table::{limit_table, LimitRow, Prediction};

use crate::complexes::{torsion_reduce, GroupRingComplex};
use crate::mahler::{mahler, MahlerMethod, MahlerParams, MahlerResult};
use crate::scalar::check_characteristic;
use crate::zlinalg::{gcd_of_minors, rank_over_field, rank_over_fractions, RankMode};
use crate::{CoeffDomain, Error, LaurentPoly, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlphaMethod {
    /// Rank over the fraction field of the Laurent ring.
    GenericRank,
    /// Normalised Betti number of a finite cover.
    CoverLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaResult {
    pub degree: usize,
    pub characteristic: u64,
    pub value: Rational,
    pub method: AlphaMethod,
}

/// Knobs shared by the invariant computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComputeOptions {
    pub rank: RankMode,
    /// Maximum number of minors evaluated by [`alexander_poly`].
    pub budget: usize,
    pub seed: u64,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            rank: RankMode::default(),
            budget: 200_000,
            seed: 0x5eed,
        }
    }
}

fn check_degree(c: &GroupRingComplex, i: usize) -> Result<()> {
    if i > c.dimension() {
        return Err(Error::constraint(format!(
            "degree {i} outside the complex (top degree {})",
            c.dimension()
        )));
    }
    Ok(())
}

/// Dimension of `H_i` over the fraction field of `K[Z^n]`, for a complex
/// with trivial torsion.
fn generic_dimension(c: &GroupRingComplex, i: usize, p: u64, mode: RankMode) -> Result<usize> {
    let c = c.to_domain(CoeffDomain::for_characteristic(p))?;
    let incoming = rank_over_fractions(&c.poly_boundary(i)?, mode);
    let outgoing = if i == 0 {
        0
    } else {
        rank_over_fractions(&c.poly_boundary(i - 1)?, mode)
    };
    Ok(c.rank(i) - incoming - outgoing)
}

/// `α_i(X^ν, K)` for `K = Q` (`p = 0`) or `F_p`: the generic rank, after
/// replacing the torsion part by its regular representation and dividing by
/// `|T|`.
pub fn alpha(c: &GroupRingComplex, i: usize, p: u64, opts: &ComputeOptions) -> Result<AlphaResult> {
    check_degree(c, i)?;
    if p != 0 {
        check_characteristic(p)?;
    }
    let size = c.target().torsion_size();
    let reduced = torsion_reduce(c);
    let dim = generic_dimension(&reduced, i, p, opts.rank)?;
    Ok(AlphaResult {
        degree: i,
        characteristic: p,
        value: BigRational::new(BigInt::from(dim), BigInt::from(size)),
        method: AlphaMethod::GenericRank,
    })
}

/// `Δ_i`: gcd of the maximal nonvanishing minors of `∂: C_{i+1} → C_i`,
/// in normal form; `1` when that map has rank 0.
pub fn alexander_poly(c: &GroupRingComplex, i: usize, opts: &ComputeOptions) -> Result<LaurentPoly> {
    check_degree(c, i)?;
    if c.target().has_torsion() {
        return Err(Error::constraint("Δ_i needs trivial torsion; apply torsion_reduce first"));
    }
    if c.domain() != CoeffDomain::Integers {
        return Err(Error::constraint("Δ_i needs an integral complex"));
    }
    let m = c.poly_boundary(i)?;
    let n = c.target().free_rank();
    let r = rank_over_fractions(&m, opts.rank);
    if r == 0 {
        return Ok(LaurentPoly::one(n, CoeffDomain::Integers));
    }
    gcd_of_minors(&m, r, opts.budget, opts.seed)
}

/// `M_i = M(Δ_i)` of the torsion-reduced complex divided by `|T|`.
///
/// `method = None` picks Jensen for one variable and the torus rule
/// otherwise; the leading-coefficient route must be requested (and
/// attested in `params`).
pub fn m_invariant(
    c: &GroupRingComplex,
    i: usize,
    method: Option<MahlerMethod>,
    params: &MahlerParams,
    opts: &ComputeOptions,
) -> Result<MahlerResult> {
    let size = c.target().torsion_size() as f64;
    let reduced = torsion_reduce(c);
    let delta = alexander_poly(&reduced, i, opts)?;
    let method = method.unwrap_or(if delta.num_vars() == 1 {
        MahlerMethod::Jensen1Var
    } else {
        MahlerMethod::NumericTorus
    });
    let r = mahler(&delta, method, params)?;
    Ok(MahlerResult {
        value: r.value / size,
        error_estimate: r.error_estimate / size,
        ..r
    })
}

/// Generic dimension of `H_i` on the component of `Hom(H, C^*)` indexed by
/// the character `χ` of `T` (`s_k ↦ ζ_{d_k}^{χ_k}`), over `Q`.
///
/// Torsion generators become exact elements of `Q(ζ_M)`, `M = lcm d_k`;
/// the free variables are specialised at random integers, which can only
/// lower ranks, so the maximum over `trials` evaluations is kept.
pub fn component_dimension(c: &GroupRingComplex, i: usize, chi: &[u64], opts: &ComputeOptions) -> Result<usize> {
    check_degree(c, i)?;
    let t = c.target();
    if chi.len() != t.torsion_rank() {
        return Err(Error::constraint(format!(
            "character has {} exponents for {} torsion factors",
            chi.len(),
            t.torsion_rank()
        )));
    }
    if c.domain() != CoeffDomain::Integers {
        return Err(Error::constraint("component dimensions are computed in characteristic 0"));
    }
    let orders = t.torsion_orders();
    let big_m = orders.iter().fold(1u64, |a, &d| num_integer::lcm(a, d));
    let ctx = CyclotomicContext::new(big_m);
    let (seed, trials) = match opts.rank {
        RankMode::MonteCarlo { seed, trials } => (seed, trials.max(1)),
        RankMode::Exact => (opts.seed, 4),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = t.free_rank();
    let rank_of = |k: usize, point: &[BigRational]| -> usize {
        if k >= c.boundaries().len() {
            return 0;
        }
        let b = &c.boundaries()[k];
        if b.rows() == 0 || b.cols() == 0 {
            return 0;
        }
        let rows = b
            .map(|e| {
                e.terms().iter().fold(ctx.from_integer(&BigInt::from(0)), |acc, (g, coeff)| {
                    let zeta_exp: i64 = g
                        .torsion
                        .iter()
                        .zip(chi)
                        .zip(orders)
                        .map(|((&x, &a), &d)| (x * a % d * (big_m / d)) as i64)
                        .sum();
                    let mono = g.free.iter().zip(point).fold(BigRational::one(), |m, (&e, v)| {
                        let pw = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
                        if e < 0 {
                            m / pw
                        } else {
                            m * pw
                        }
                    });
                    acc + ctx.zeta_power(zeta_exp) * ctx.from_rational(mono * BigRational::from_integer(coeff.clone()))
                })
            })
            .into_rows();
        rank_over_field(rows)
    };
    let mut best_in = 0;
    let mut best_out = 0;
    for _ in 0..trials {
        let point: Vec<BigRational> = (0..n)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(2i64..=1 << 20))))
            .collect();
        best_in = best_in.max(rank_of(i, &point));
        if i > 0 {
            best_out = best_out.max(rank_of(i - 1, &point));
        }
    }
    Ok(c.rank(i) - best_in - best_out)
}

/// All characters of `T` in mixed-radix order.
pub fn characters(t: &crate::presentations::AbelianTarget) -> Vec<Vec<u64>> {
    (0..t.torsion_size() as usize).map(|k| t.torsion_from_index(k)).collect()
}

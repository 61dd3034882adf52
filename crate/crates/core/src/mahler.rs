//! Mahler measures of integer Laurent polynomials.
//!
//! Three routes: Jensen's formula on numerically isolated roots (one
//! variable), a randomly shifted rank-1 lattice rule on the torus (any number
//! of variables), and `log |leading coefficient|` under a generic weight,
//! which is only meaningful for polynomials known to be products of
//! generalized cyclotomics times a constant.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Float, FloatConst, NumCast, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::laurent::gcd;
use crate::scalar::bigint_abs_log;
use crate::{CoeffDomain, Error, LaurentPoly, Real, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MahlerMethod {
    Jensen1Var,
    NumericTorus,
    LeadingCoefficient,
}

impl MahlerMethod {
    pub fn name(self) -> &'static str {
        match self {
            MahlerMethod::Jensen1Var => "jensen",
            MahlerMethod::NumericTorus => "numeric",
            MahlerMethod::LeadingCoefficient => "leading",
        }
    }
}

impl std::str::FromStr for MahlerMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jensen" => Ok(MahlerMethod::Jensen1Var),
            "numeric" => Ok(MahlerMethod::NumericTorus),
            "leading" => Ok(MahlerMethod::LeadingCoefficient),
            _ => Err(Error::parse(1, 1, format!("unknown Mahler method '{s}' (jensen, numeric, leading)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MahlerResult {
    pub value: Real,
    pub error_estimate: Real,
    pub method: MahlerMethod,
    /// Set when the leading-coefficient route was used under the caller's
    /// attestation that it applies.
    pub attested: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MahlerParams {
    /// Lattice-rule points per random shift.
    pub points: usize,
    /// Independent random shifts; their spread gives the error estimate.
    pub shifts: usize,
    pub seed: u64,
    /// Caller attests that `h` is an Alexander polynomial of a smooth
    /// quasi-projective pair (required by the leading-coefficient route).
    pub attested: bool,
}

impl Default for MahlerParams {
    fn default() -> Self {
        MahlerParams {
            points: 1 << 14,
            shifts: 16,
            seed: 0x5eed,
            attested: false,
        }
    }
}

/// Samples with `|h| < 10^-300` are clamped; more than this fraction fails.
const HARD_FLOOR: f64 = 1e-300;
const FLOOR_FRACTION: f64 = 1e-3;

pub fn mahler(h: &LaurentPoly, method: MahlerMethod, params: &MahlerParams) -> Result<MahlerResult> {
    if h.domain() != CoeffDomain::Integers {
        return Err(Error::mismatch("Mahler measure needs integer coefficients"));
    }
    if h.is_zero() {
        return Err(Error::constraint("Mahler measure of the zero polynomial"));
    }
    match method {
        MahlerMethod::Jensen1Var => jensen(h),
        MahlerMethod::NumericTorus => numeric_torus(h, params),
        MahlerMethod::LeadingCoefficient => leading_coefficient_route(h, params),
    }
}

/// A weight drawn from `[-10^6, 10^6]^n` that separates all monomials of `h`.
pub fn generic_weight(h: &LaurentPoly, seed: u64) -> Result<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let w: Vec<i64> = (0..h.num_vars()).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
        if h.leading_coefficient(&w).is_ok() {
            return Ok(w);
        }
    }
    Err(Error::compute("no generic weight found after 32 draws"))
}

fn leading_coefficient_route(h: &LaurentPoly, params: &MahlerParams) -> Result<MahlerResult> {
    if !params.attested {
        return Err(Error::constraint(
            "the leading-coefficient route needs an attestation that h is an Alexander polynomial of a \
             smooth quasi-projective pair",
        ));
    }
    let w = generic_weight(h, params.seed)?;
    let c = h.leading_coefficient(&w)?;
    Ok(MahlerResult {
        value: bigint_abs_log(&c),
        error_estimate: 0.0,
        method: MahlerMethod::LeadingCoefficient,
        attested: true,
    })
}

// ---------------------------------------------------------------- Jensen

fn dense(h: &LaurentPoly) -> Vec<BigInt> {
    let s = h.strip_monomial();
    let deg = s.terms().keys().map(|e| e[0]).max().unwrap_or(0) as usize;
    let mut c = vec![BigInt::zero(); deg + 1];
    for (e, v) in s.terms() {
        c[e[0] as usize] = v.clone();
    }
    c
}

fn derivative(h: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        1,
        CoeffDomain::Integers,
        h.terms().iter().map(|(e, c)| (vec![e[0] - 1], c * e[0])),
    )
}

/// `M(f) = log |lc f| + Σ_roots log⁺|z|`, with the root sum split over
/// `f = sqfree(f) · gcd(f, f')` so Aberth only sees simple roots.
fn jensen(h: &LaurentPoly) -> Result<MahlerResult> {
    if h.num_vars() != 1 {
        return Err(Error::constraint(format!(
            "Jensen's formula needs one variable, got {}",
            h.num_vars()
        )));
    }
    let f = h.strip_monomial();
    let lead = dense(&f).last().cloned().expect("nonzero");
    let mut value = bigint_abs_log(&lead);
    let mut err = 0.0;
    let mut g = f;
    while g.terms().keys().any(|e| e[0] > 0) {
        let d = gcd(&g, &derivative(&g))?;
        let sqfree = g.div_exact(&d).ok_or_else(|| Error::compute("gcd does not divide"))?;
        let (v, e) = root_sum(&dense(&sqfree))?;
        value += v;
        err += e;
        g = d;
    }
    Ok(MahlerResult {
        value,
        error_estimate: err,
        method: MahlerMethod::Jensen1Var,
        attested: false,
    })
}

/// `Σ log⁺|z|` over the (simple) roots with an a-posteriori bound.
fn root_sum(c: &[BigInt]) -> Result<(f64, f64)> {
    let deg = c.len() - 1;
    if deg == 0 {
        return Ok((0.0, 0.0));
    }
    // scale so the largest coefficient has magnitude ~1
    let scale = c.iter().map(bigint_abs_log).fold(f64::NEG_INFINITY, f64::max);
    let coeffs: Vec<f64> = c
        .iter()
        .map(|x| {
            if x.is_zero() {
                0.0
            } else {
                let s = if x.is_negative() { -1.0 } else { 1.0 };
                s * (bigint_abs_log(x) - scale).exp()
            }
        })
        .collect();
    let roots = aberth(&coeffs, 500).ok_or_else(|| Error::compute("root finder did not converge"))?;
    let mut sum = 0.0;
    let mut err = 0.0;
    for z in &roots {
        let r = inclusion_radius(&coeffs, *z);
        let m = z.norm();
        sum += m.ln().max(0.0);
        // log⁺ is 1/|z|-Lipschitz outside the unit disk and flat inside
        let lip = 1.0 / (m - r).max(1e-12).min(1.0);
        err += (r * lip).min(1e3);
    }
    Ok((sum, err))
}

fn horner<F: Float>(c: &[F], z: Complex<F>) -> (Complex<F>, Complex<F>) {
    let mut p = Complex::new(F::zero(), F::zero());
    let mut dp = Complex::new(F::zero(), F::zero());
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + Complex::new(a, F::zero());
    }
    (p, dp)
}

/// Radius of a disk about `z` guaranteed to contain a root: `n |p/p'|`,
/// inflated by the rounding error of evaluating `p`.
fn inclusion_radius<F: Float>(c: &[F], z: Complex<F>) -> F {
    let n: F = NumCast::from(c.len() - 1).expect("degree fits");
    let (p, dp) = horner(c, z);
    let m = z.norm();
    let bound = c.iter().rev().fold(F::zero(), |acc, a| acc * m + a.abs());
    let rounding = bound * F::epsilon() * NumCast::from(4 * c.len()).expect("fits");
    let dpn = dp.norm();
    if dpn.is_zero() {
        return F::infinity();
    }
    n * (p.norm() + rounding) / dpn
}

/// Aberth–Ehrlich iteration for the roots of `Σ c_k z^k`.
pub fn aberth<F: Float + FloatConst>(c: &[F], max_iter: usize) -> Option<Vec<Complex<F>>> {
    let deg = c.len().checked_sub(1)?;
    let lead = c[deg];
    if lead.is_zero() {
        return None;
    }
    let c: Vec<F> = c.iter().map(|&a| a / lead).collect();
    // initial guesses on a circle of the Cauchy-type radius
    let radius = c[..deg]
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let e: F = NumCast::from(deg - k).expect("fits");
            a.abs().powf(F::one() / e)
        })
        .fold(F::zero(), F::max)
        .max(F::epsilon());
    let two_pi = F::PI() + F::PI();
    let offset: F = NumCast::from(0.4).expect("fits");
    let mut z: Vec<Complex<F>> = (0..deg)
        .map(|k| {
            let kf: F = NumCast::from(k).expect("fits");
            let nf: F = NumCast::from(deg).expect("fits");
            Complex::from_polar(radius, two_pi * kf / nf + offset)
        })
        .collect();
    let tol = F::epsilon() * NumCast::from(8.0).expect("fits");
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..deg {
            let (p, dp) = horner(&c, z[i]);
            if p.norm().is_zero() {
                continue;
            }
            let ratio = p / dp;
            let s = (0..deg)
                .filter(|&j| j != i)
                .fold(Complex::new(F::zero(), F::zero()), |acc, j| acc + (z[i] - z[j]).inv());
            let w = ratio / (Complex::new(F::one(), F::zero()) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] = z[i] - w;
            if w.norm() > tol * z[i].norm().max(F::one()) {
                converged = false;
            }
        }
        if converged {
            return Some(z);
        }
    }
    // accept if every point is numerically a root anyway
    z.iter()
        .all(|&zi| inclusion_radius(&c, zi) < NumCast::from(1e-6).expect("fits"))
        .then_some(z)
}

// ---------------------------------------------------------------- torus

/// Generator of an `R_d` Kronecker sequence: `α_j = φ_d^{-j}` where
/// `φ_d^{d+1} = φ_d + 1`.
fn kronecker_generator<F: Float>(d: usize) -> Vec<F> {
    let mut phi = F::one() + F::one();
    let exp: F = NumCast::from(d + 1).expect("fits");
    for _ in 0..64 {
        phi = (F::one() + phi).powf(F::one() / exp);
    }
    (1..=d).map(|j| phi.powi(-(j as i32))).collect()
}

/// Torus average of `log |h|` generic over the float type.
///
/// Returns `(mean, standard error over shifts, floored fraction)`.
pub fn torus_log_average<F>(terms: &[(Vec<i64>, F)], num_vars: usize, points: usize, shifts: &[Vec<F>]) -> (F, F, F)
where
    F: Float + FloatConst + Send + Sync,
{
    let alpha = kronecker_generator::<F>(num_vars.max(1));
    let two_pi = F::PI() + F::PI();
    let floor: F = NumCast::from(HARD_FLOOR).expect("fits");
    let per_shift: Vec<(F, usize)> = shifts
        .par_iter()
        .map(|shift| {
            let mut acc = F::zero();
            let mut floored = 0usize;
            for k in 0..points {
                let kf: F = NumCast::from(k).expect("fits");
                let x: Vec<F> = (0..num_vars).map(|j| (shift[j] + kf * alpha[j]).fract()).collect();
                let mut v = Complex::new(F::zero(), F::zero());
                for (e, c) in terms {
                    let phase = e
                        .iter()
                        .zip(&x)
                        .fold(F::zero(), |a, (&ej, &xj)| a + <F as NumCast>::from(ej).expect("fits") * xj);
                    v = v + Complex::from_polar(*c, two_pi * phase.fract());
                }
                let m = v.norm();
                if m < floor {
                    floored += 1;
                    acc = acc + floor.ln();
                } else {
                    acc = acc + m.ln();
                }
            }
            (acc / NumCast::from(points).expect("fits"), floored)
        })
        .collect();
    let s: F = NumCast::from(per_shift.len()).expect("fits");
    let mean = per_shift.iter().fold(F::zero(), |a, &(m, _)| a + m) / s;
    let var = if per_shift.len() > 1 {
        per_shift.iter().fold(F::zero(), |a, &(m, _)| a + (m - mean) * (m - mean)) / (s - F::one())
    } else {
        F::zero()
    };
    let floored: usize = per_shift.iter().map(|&(_, f)| f).sum();
    let frac = <F as NumCast>::from(floored).expect("fits") / (s * NumCast::from(points).expect("fits"));
    (mean, (var / s).sqrt(), frac)
}

fn numeric_torus(h: &LaurentPoly, params: &MahlerParams) -> Result<MahlerResult> {
    if let Some(c) = h.constant_value() {
        return Ok(MahlerResult {
            value: bigint_abs_log(&c),
            error_estimate: 0.0,
            method: MahlerMethod::NumericTorus,
            attested: false,
        });
    }
    if params.points == 0 || params.shifts == 0 {
        return Err(Error::constraint("numeric Mahler measure needs points > 0 and shifts > 0"));
    }
    // normalise coefficients; the scale is added back exactly
    let scale = h.terms().values().map(bigint_abs_log).fold(f64::NEG_INFINITY, f64::max);
    let terms: Vec<(Vec<i64>, f64)> = h
        .terms()
        .iter()
        .map(|(e, c)| {
            let s = if c.is_negative() { -1.0 } else { 1.0 };
            (e.clone(), s * (bigint_abs_log(c) - scale).exp())
        })
        .collect();
    let n = h.num_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let shifts: Vec<Vec<f64>> = (0..params.shifts).map(|_| (0..n).map(|_| rng.gen::<f64>()).collect()).collect();
    let (mean, stderr, floored) = torus_log_average(&terms, n, params.points, &shifts);
    if floored > FLOOR_FRACTION {
        return Err(Error::compute(format!(
            "{:.3}% of torus samples fell below |h| < 1e-300",
            100.0 * floored
        )));
    }
    Ok(MahlerResult {
        value: mean + scale,
        error_estimate: stderr,
        method: MahlerMethod::NumericTorus,
        attested: false,
    })
}

/// `log |c|` as an `f64` for a (possibly huge) integer.
pub fn log_abs(c: &BigInt) -> f64 {
    bigint_abs_log(c)
}

//! Closed-form values for orbifold-effective epimorphisms.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complexes::{presentation_complex, GroupRingComplex};
use crate::presentations::{orbifold_epimorphism, orbifold_presentation, AbelianTarget, OrbifoldType};
use crate::{Error, Rational, Result};

fn divides(p: u64, x: u64) -> bool {
    p != 0 && x.is_multiple_of(p)
}

fn divisors_for(tau: &OrbifoldType, torsion_present: bool) -> Result<Option<&[u64]>> {
    match (torsion_present, tau.divisors()) {
        (false, _) => Ok(None),
        (true, Some(ms)) => Ok(Some(ms)),
        (true, None) => Err(Error::constraint("torsion case needs the meridian orders m_j")),
    }
}

/// `α_1` from the orbifold type. Free case:
/// `2g + r − 2 + #{j : p | μ_j}`; torsion case:
/// `2g + r − 2 + Σ (1 − 1/m_j) + Σ_{p | μ_j/m_j} 1/m_j`. `p = 0` divides nothing.
pub fn predict_alpha1(tau: &OrbifoldType, p: u64, torsion_present: bool) -> Result<Rational> {
    let base = BigRational::from_integer(BigInt::from(2 * tau.genus() as i64 + tau.punctures() as i64 - 2));
    let mu = tau.multiplicities();
    Ok(match divisors_for(tau, torsion_present)? {
        None => base + BigRational::from_integer(BigInt::from(mu.iter().filter(|&&m| divides(p, m)).count())),
        Some(ms) => mu.iter().zip(ms).fold(base, |acc, (&mu_j, &m_j)| {
            let inv = BigRational::new(BigInt::from(1), BigInt::from(m_j));
            let mut acc = acc + (BigRational::from_integer(1.into()) - &inv);
            if divides(p, mu_j / m_j) {
                acc += inv;
            }
            acc
        }),
    })
}

/// `M_1` with its exact symbolic form.
#[derive(Clone, Debug, PartialEq)]
pub struct M1Prediction {
    pub value: f64,
    /// e.g. `log 6`, `1/2 log 3 + log 4`, or `0`.
    pub symbolic: String,
}

/// Free case `Σ log μ_j`; torsion case `Σ (1/m_j) log(μ_j/m_j)`.
pub fn predict_m1(tau: &OrbifoldType, torsion_present: bool) -> Result<M1Prediction> {
    let ones = vec![1u64; tau.s()];
    let ms = divisors_for(tau, torsion_present)?.unwrap_or(&ones);
    let mut value = 0.0;
    let mut parts = Vec::new();
    for (&mu, &m) in tau.multiplicities().iter().zip(ms) {
        let q = mu / m;
        if q == 1 {
            continue;
        }
        value += (q as f64).ln() / m as f64;
        parts.push(if m == 1 { format!("log {q}") } else { format!("1/{m} log {q}") });
    }
    Ok(M1Prediction {
        value,
        symbolic: if parts.is_empty() { "0".to_string() } else { parts.join(" + ") },
    })
}

/// `Z^n ⊕ T` used by the standard orbifold pipeline: `n` is the number of
/// non-meridian generators and, in the torsion case, `T = ⊕ Z/m_j` over the
/// meridians with `m_j > 1` (all but the last one when `r = 0`, whose image
/// is forced by the surface relation).
pub fn standard_target(tau: &OrbifoldType, torsion_present: bool) -> Result<AbelianTarget> {
    let n = tau.free_rank();
    match divisors_for(tau, torsion_present)? {
        None => Ok(AbelianTarget::free(n)),
        Some(ms) => {
            let take = if tau.punctures() == 0 { ms.len().saturating_sub(1) } else { ms.len() };
            AbelianTarget::new(n, ms[..take].iter().copied().filter(|&m| m > 1).collect())
        }
    }
}

/// Presentation complex of `π_1^orb(τ)` over the standard target.
pub fn orbifold_complex(tau: &OrbifoldType, torsion_present: bool) -> Result<GroupRingComplex> {
    let target = standard_target(tau, torsion_present)?;
    let nu = if torsion_present {
        orbifold_epimorphism(tau, &target)?
    } else {
        orbifold_epimorphism(&tau.with_divisors(None)?, &target)?
    };
    presentation_complex(&orbifold_presentation(tau), &nu)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn predictions() {
        let t = OrbifoldType::new(0, 2, vec![6], None).unwrap();
        assert_eq!(predict_alpha1(&t, 5, false).unwrap(), q(0, 1));
        assert_eq!(predict_alpha1(&t, 0, false).unwrap(), q(0, 1));
        assert_eq!(predict_alpha1(&t, 2, false).unwrap(), q(1, 1));
        let t2 = t.with_divisors(Some(vec![2])).unwrap();
        assert_eq!(predict_alpha1(&t2, 3, true).unwrap(), q(1, 1));
        assert_eq!(predict_alpha1(&t2, 2, true).unwrap(), q(1, 2));
        assert!(predict_alpha1(&t, 3, true).is_err());
        let torus = OrbifoldType::new(1, 0, vec![], None).unwrap();
        for p in [0, 2, 3] {
            assert_eq!(predict_alpha1(&torus, p, false).unwrap(), q(0, 1));
        }

        let m = predict_m1(&t, false).unwrap();
        assert!((m.value - 6f64.ln()).abs() < 1e-15);
        assert_eq!(m.symbolic, "log 6");
        let m = predict_m1(&t2, true).unwrap();
        assert!((m.value - 0.5 * 3f64.ln()).abs() < 1e-15);
        assert_eq!(m.symbolic, "1/2 log 3");
        assert_eq!(predict_m1(&torus, false).unwrap().symbolic, "0");
    }

    #[test]
    fn standard_targets() {
        let t = OrbifoldType::new(0, 2, vec![6], Some(vec![3])).unwrap();
        assert_eq!(standard_target(&t, true).unwrap(), AbelianTarget::new(1, vec![3]).unwrap());
        assert_eq!(standard_target(&t, false).unwrap(), AbelianTarget::free(1));
        let c = orbifold_complex(&t, true).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 1]);
    }
}

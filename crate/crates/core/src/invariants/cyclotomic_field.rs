//! Exact arithmetic in `Q(ζ_M) = Q[x]/(Φ_M)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::laurent::cyclotomic_coefficients;
use crate::scalar::Field;

#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicContext {
    order: u64,
    /// `Φ_M`, constant term first, monic.
    modulus: Vec<BigRational>,
}

impl CyclotomicContext {
    pub fn new(order: u64) -> Arc<Self> {
        let modulus = cyclotomic_coefficients(order.max(1))
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        Arc::new(CyclotomicContext {
            order: order.max(1),
            modulus,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `[Q(ζ_M) : Q] = φ(M)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn from_integer(self: &Arc<Self>, c: &BigInt) -> Cyclotomic {
        self.from_rational(BigRational::from_integer(c.clone()))
    }

    pub fn from_rational(self: &Arc<Self>, c: BigRational) -> Cyclotomic {
        Cyclotomic::reduce(self, vec![c])
    }

    /// `ζ_M^k` for any integer `k`.
    pub fn zeta_power(self: &Arc<Self>, k: i64) -> Cyclotomic {
        let e = k.rem_euclid(self.order as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Cyclotomic::reduce(self, c)
    }
}

/// Element of `Q(ζ_M)` as a reduced residue polynomial in `ζ`.
#[derive(Clone, PartialEq)]
pub struct Cyclotomic {
    ctx: Arc<CyclotomicContext>,
    coeffs: Vec<BigRational>,
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Remainder (and quotient) of `a` by `b` in `Q[x]`; `b` nonzero and trimmed.
fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead_inv;
        if Zero::is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = &r[i + j] - &(&c * bj);
        }
        q[i] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Zero::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

impl Cyclotomic {
    fn reduce(ctx: &Arc<CyclotomicContext>, c: Vec<BigRational>) -> Self {
        let (_, r) = divrem(&c, &ctx.modulus);
        Cyclotomic {
            ctx: ctx.clone(),
            coeffs: r,
        }
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    /// Coefficients in the power basis `1, ζ, ..., ζ^{φ(M)-1}`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.ctx.order, other.ctx.order, "elements of different cyclotomic fields");
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, other: Cyclotomic) -> Cyclotomic {
        self.check(&other);
        let neg: Vec<BigRational> = other.coeffs.iter().map(|c| -c).collect();
        Cyclotomic {
            coeffs: poly_sub(&self.coeffs, &neg),
            ctx: self.ctx,
        }
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, other: Cyclotomic) -> Cyclotomic {
        self.check(&other);
        Cyclotomic {
            coeffs: poly_sub(&self.coeffs, &other.coeffs),
            ctx: self.ctx,
        }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, other: Cyclotomic) -> Cyclotomic {
        self.check(&other);
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        Cyclotomic::reduce(&self.ctx, prod)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ctx: self.ctx,
        }
    }
}

impl Field for Cyclotomic {
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Extended Euclid against `Φ_M`.
    fn inv(&self) -> Self {
        assert!(!self.coeffs.is_empty(), "inverse of zero");
        // invariant: s_i · self ≡ r_i (mod Φ)
        let (mut r0, mut r1) = (self.ctx.modulus.clone(), self.coeffs.clone());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant since Φ_M is irreducible
        let c = r1[0].recip();
        let scaled: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Cyclotomic::reduce(&self.ctx, scaled)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| if k == 0 { c.to_string() } else { format!("({c})·ζ{}^{k}", self.ctx.order) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

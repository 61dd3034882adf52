//! Finite extension fields GF(p^k), used to evaluate polynomial matrices at
//! generic points when the characteristic is small.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::scalar::Field;

/// Dense polynomial over F_p, little-endian coefficients, no trailing zeros.
type Coeffs = Vec<u64>;

fn trim(mut a: Coeffs) -> Coeffs {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::scalar::Fp::new(a, p).inv().value()
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` by the nonzero polynomial `m`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Coeffs {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let f = mulmod(r[top], lead_inv, p);
        if f != 0 {
            let shift = top - dm;
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mulmod(f, c, p)) % p;
            }
        }
        r = trim(r);
    }
    r
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Coeffs {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test for a monic `f` of degree k over F_p.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 0..k / 2 {
        xp = poly_powmod(&xp, p, f, p);
        let g = poly_gcd(f, &poly_sub(&xp, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The field F_p[x]/(f) for a fixed monic irreducible f.
#[derive(Debug, PartialEq, Eq)]
pub struct GfContext {
    p: u64,
    modulus: Coeffs,
}

impl GfContext {
    /// Builds GF(p^k), choosing the irreducible modulus deterministically.
    pub fn new(p: u64, k: usize) -> Arc<Self> {
        assert!(k >= 1);
        if k == 1 {
            return Arc::new(GfContext {
                p,
                modulus: vec![0, 1],
            });
        }
        // scan x^k + x + c, then x^k + x^2 + a x + c, ... in a fixed order
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(p ^ (k as u64) << 32);
        loop {
            let mut f: Coeffs = (0..k).map(|_| rng.gen_range(0..p)).collect();
            f.push(1);
            if f[0] != 0 && is_irreducible(&f, p) {
                return Arc::new(GfContext { p, modulus: f });
            }
        }
    }

    /// Smallest extension of F_p with at least `min_size` elements.
    pub fn with_min_size(p: u64, min_size: u128) -> Arc<Self> {
        let mut k = 1usize;
        let mut size = p as u128;
        while size < min_size {
            k += 1;
            size = size.saturating_mul(p as u128);
        }
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<u64>) -> Gf {
        let p = self.p;
        let c = trim(coeffs.into_iter().map(|v| v % p).collect());
        Gf {
            ctx: Arc::clone(self),
            coeffs: poly_rem(&c, &self.modulus, p),
        }
    }

    pub fn from_i64(self: &Arc<Self>, v: i64) -> Gf {
        let r = (v as i128).rem_euclid(self.p as i128) as u64;
        self.element(vec![r])
    }

    pub fn random<R: Rng>(self: &Arc<Self>, rng: &mut R) -> Gf {
        let coeffs = (0..self.degree()).map(|_| rng.gen_range(0..self.p)).collect();
        self.element(coeffs)
    }
}

/// Element of GF(p^k).
#[derive(Clone, PartialEq, Eq)]
pub struct Gf {
    ctx: Arc<GfContext>,
    coeffs: Coeffs,
}

impl Gf {
    pub fn context(&self) -> &Arc<GfContext> {
        &self.ctx
    }

    pub fn pow(&self, mut e: u64) -> Gf {
        let mut acc = self.ctx.element(vec![1]);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf{:?}", self.coeffs)
    }
}

impl Add for Gf {
    type Output = Gf;
    fn add(self, rhs: Gf) -> Gf {
        let p = self.ctx.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + rhs.coeffs.get(i).copied().unwrap_or(0)) % p
            })
            .collect();
        Gf {
            ctx: self.ctx,
            coeffs: trim(c),
        }
    }
}

impl Sub for Gf {
    type Output = Gf;
    fn sub(self, rhs: Gf) -> Gf {
        let c = poly_sub(&self.coeffs, &rhs.coeffs, self.ctx.p);
        Gf {
            ctx: self.ctx,
            coeffs: c,
        }
    }
}

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        let p = self.ctx.p;
        let c = self.coeffs.iter().map(|&v| (p - v) % p).collect();
        Gf {
            ctx: self.ctx,
            coeffs: c,
        }
    }
}

impl Mul for Gf {
    type Output = Gf;
    fn mul(self, rhs: Gf) -> Gf {
        let p = self.ctx.p;
        let prod = poly_mul(&self.coeffs, &rhs.coeffs, p);
        let c = poly_rem(&prod, &self.ctx.modulus, p);
        Gf {
            ctx: self.ctx,
            coeffs: c,
        }
    }
}

impl Field for Gf {
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn inv(&self) -> Gf {
        assert!(!self.coeffs.is_empty(), "inverse of zero in GF(p^k)");
        let p = self.ctx.p;
        // extended Euclid: s*a + t*m = g
        let (mut r0, mut r1) = (self.ctx.modulus.clone(), self.coeffs.clone());
        let (mut s0, mut s1): (Coeffs, Coeffs) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert_eq!(r0.len(), 1);
        let scale = inv_mod(r0[0], p);
        let c: Coeffs = s0.iter().map(|&v| mulmod(v, scale, p)).collect();
        self.ctx.element(c)
    }
}

fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Coeffs, Coeffs) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let f = mulmod(r[top], lead_inv, p);
        let shift = top - db;
        q[shift] = f;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - mulmod(f, c, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn gf_field_axioms_small() {
        let ctx = GfContext::new(2, 8);
        assert_eq!(ctx.degree(), 8);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = ctx.random(&mut rng);
            let b = ctx.random(&mut rng);
            if !a.is_zero() {
                assert_eq!((a.clone() * a.inv()), ctx.element(vec![1]));
            }
            assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            assert_eq!((a.clone() + b.clone()) - b, a);
        }
    }

    #[test]
    fn frobenius_order() {
        // every element satisfies a^(p^k) = a
        let ctx = GfContext::new(3, 5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = ctx.random(&mut rng);
            assert_eq!(a.pow(243), a);
        }
    }

    #[test]
    fn min_size_extension() {
        let ctx = GfContext::with_min_size(2, 1 << 40);
        assert_eq!(ctx.degree(), 40);
        let ctx = GfContext::with_min_size(5, 1 << 40);
        assert!(5u128.pow(ctx.degree() as u32) >= 1 << 40);
    }
}

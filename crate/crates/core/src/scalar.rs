//! Scalar abstractions shared by the elimination kernels.
//!
//! Exact fields (`Fp`, [`Gf`](crate::gf::Gf), [`Rational`], the cyclotomic
//! field used for character specialisation) implement [`Field`]; numeric
//! routines are generic over [`num_traits::Float`].

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact field arithmetic. Elements may carry their own context (a modulus,
/// an extension polynomial), so there is no context-free `zero()`.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// Largest modulus accepted by [`Fp`]; products are formed in `u128`.
pub const MAX_WORD_PRIME: u64 = 1 << 62;

/// Element of a prime field with a single machine-word modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!((2..MAX_WORD_PRIME).contains(&modulus));
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        Fp::new((value as i128).rem_euclid(m) as u64, modulus)
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        let r = value.mod_floor(&BigInt::from(modulus));
        Fp::new(r.to_u64().unwrap_or(0), modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u128 + rhs.value as u128;
        Fp {
            value: (s % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let value = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.modulus - (rhs.value - self.value)
        };
        Fp {
            value,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let prod = self.value as u128 * rhs.value as u128;
        Fp {
            value: (prod % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp {
                value: self.modulus - self.value,
                modulus: self.modulus,
            }
        }
    }
}

impl Field for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero in F_{}", self.modulus);
        // extended Euclid on i128 to avoid relying on primality for pow
        let (mut a, mut b) = (self.value as i128, self.modulus as i128);
        let (mut x0, mut x1) = (1i128, 0i128);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        assert_eq!(a, 1, "{} is not invertible mod {}", self.value, self.modulus);
        Fp::new(x0.rem_euclid(self.modulus as i128) as u64, self.modulus)
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `bound`.
pub fn prev_prime(bound: u64) -> u64 {
    let mut n = bound - 1;
    while !is_prime_u64(n) {
        n -= 1;
    }
    n
}

/// Returns the characteristic as a `u64`, rejecting composites.
pub fn check_characteristic(p: u64) -> crate::Result<u64> {
    if p == 0 || is_prime_u64(p) {
        Ok(p)
    } else {
        Err(crate::Error::constraint(format!(
            "characteristic {p} is neither 0 nor a prime"
        )))
    }
}

pub(crate) fn bigint_abs_log(v: &BigInt) -> f64 {
    let a = v.abs();
    if let Some(f) = a.to_f64() {
        if f.is_finite() {
            return f.ln();
        }
    }
    // huge: split off the top 64 bits
    let bits = a.bits();
    let shift = bits.saturating_sub(64);
    let top = (&a >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

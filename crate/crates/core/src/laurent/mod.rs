//! Sparse multivariate Laurent polynomials over the integers or a prime field.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vector, so iteration is
//! in lexicographic order and the last key is the lex-leading monomial.

mod cyclotomic;
mod division;
mod gcd;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub use cyclotomic::{cyclotomic_coefficients, expand_gencyclotomic_product, GenCyclotomicFactor};
pub use gcd::{gcd, gcd_all, normal_form};

pub type Monomial = Vec<i64>;

/// Coefficient ring of a [`LaurentPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffDomain {
    Integers,
    PrimeField(u64),
}

impl CoeffDomain {
    /// 0 for the integers, p for F_p.
    pub fn characteristic(self) -> u64 {
        match self {
            CoeffDomain::Integers => 0,
            CoeffDomain::PrimeField(p) => p,
        }
    }

    pub fn for_characteristic(p: u64) -> Self {
        if p == 0 {
            CoeffDomain::Integers
        } else {
            CoeffDomain::PrimeField(p)
        }
    }

    pub(crate) fn reduce(self, c: BigInt) -> BigInt {
        match self {
            CoeffDomain::Integers => c,
            CoeffDomain::PrimeField(p) => c.mod_floor(&BigInt::from(p)),
        }
    }

    /// Inverse of a nonzero coefficient; `None` over the integers unless it is ±1.
    pub(crate) fn inverse(self, c: &BigInt) -> Option<BigInt> {
        match self {
            CoeffDomain::Integers => {
                if c.is_one() || (-c).is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            CoeffDomain::PrimeField(p) => {
                let f = crate::scalar::Fp::from_bigint(c, p);
                if f.value() == 0 {
                    None
                } else {
                    Some(BigInt::from(crate::scalar::Field::inv(&f).value()))
                }
            }
        }
    }

    /// `a / b` in the coefficient ring when it exists.
    pub(crate) fn divide(self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        match self {
            CoeffDomain::Integers => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(q)
            }
            CoeffDomain::PrimeField(_) => self.inverse(b).map(|inv| self.reduce(a * inv)),
        }
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffDomain::Integers => write!(f, "Z"),
            CoeffDomain::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// Element of `Z[t1^±, ..., tn^±]` or `F_p[t1^±, ..., tn^±]`. No stored
/// coefficient is zero; prime-field coefficients live in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    num_vars: usize,
    domain: CoeffDomain,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(num_vars: usize, domain: CoeffDomain) -> Self {
        LaurentPoly {
            num_vars,
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize, domain: CoeffDomain) -> Self {
        Self::constant(num_vars, domain, BigInt::one())
    }

    pub fn constant(num_vars: usize, domain: CoeffDomain, c: impl Into<BigInt>) -> Self {
        Self::monomial(num_vars, domain, c, vec![0; num_vars])
    }

    pub fn monomial(num_vars: usize, domain: CoeffDomain, c: impl Into<BigInt>, exps: Monomial) -> Self {
        assert_eq!(exps.len(), num_vars, "exponent vector length");
        let mut p = Self::zero(num_vars, domain);
        p.add_term(exps, c.into());
        p
    }

    /// The variable `t_{j+1}` (zero-based index `j`).
    pub fn var(num_vars: usize, domain: CoeffDomain, j: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[j] = 1;
        Self::monomial(num_vars, domain, 1, e)
    }

    pub fn from_terms<I, C>(num_vars: usize, domain: CoeffDomain, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(num_vars, domain);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length");
            p.add_term(e, c.into());
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The constant term, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<BigInt> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_default())
    }

    pub fn coefficient(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Units of the Laurent ring: a single term with invertible coefficient.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .values()
                .all(|c| self.domain.inverse(c).is_some())
    }

    pub(crate) fn add_term(&mut self, exps: Monomial, c: BigInt) {
        let c = self.domain.reduce(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.domain.reduce(o.get() + c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::mismatch(format!(
                "Laurent polynomials in {} and {} variables",
                self.num_vars, other.num_vars
            )));
        }
        if self.domain != other.domain {
            return Err(Error::mismatch(format!(
                "coefficient domains {} and {}",
                self.domain, other.domain
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.num_vars, self.domain);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.num_vars, self.domain);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.num_vars);
        LaurentPoly {
            num_vars: self.num_vars,
            domain: self.domain,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.num_vars, self.domain);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Per-variable minimum exponents (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Monomial {
        let mut m: Option<Monomial> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.num_vars])
    }

    pub fn max_exponents(&self) -> Monomial {
        let mut m: Option<Monomial> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.num_vars])
    }

    /// Divides out the largest monomial factor, so every variable has minimal exponent 0.
    pub fn strip_monomial(&self) -> Self {
        let m: Monomial = self.min_exponents().iter().map(|x| -x).collect();
        self.shift(&m)
    }

    /// Gcd of the integer coefficients (non-negative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Leading term under graded-lex (total degree first, then lex).
    pub fn grlex_leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by(|(a, _), (b, _)| {
            let da: i64 = a.iter().sum();
            let db: i64 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        })
    }

    /// Coefficient of the weight-maximal term. Fails if two terms attain the
    /// maximal weight, in which case a fresh weight should be drawn.
    pub fn leading_coefficient(&self, weight: &[i64]) -> Result<BigInt> {
        if weight.len() != self.num_vars {
            return Err(Error::mismatch(format!(
                "weight of length {} for {} variables",
                weight.len(),
                self.num_vars
            )));
        }
        if self.is_zero() {
            return Err(Error::compute("leading coefficient of the zero polynomial"));
        }
        let w = |e: &Monomial| -> i128 { e.iter().zip(weight).map(|(a, b)| *a as i128 * *b as i128).sum() };
        let mut best: Option<(i128, &BigInt)> = None;
        let mut tie = false;
        for (e, c) in &self.terms {
            let v = w(e);
            match best {
                Some((b, _)) if v < b => {}
                Some((b, _)) if v == b => tie = true,
                _ => {
                    best = Some((v, c));
                    tie = false;
                }
            }
        }
        if tie {
            return Err(Error::compute(
                "weight is not generic for this polynomial (two terms share the maximal weight); draw a new weight",
            ));
        }
        Ok(best.map(|(_, c)| c.clone()).unwrap())
    }

    /// `h(t^{a_1}, ..., t^{a_n})` as a one-variable Laurent polynomial.
    pub fn substitute_power(&self, a: &[i64]) -> Result<Self> {
        if a.len() != self.num_vars {
            return Err(Error::mismatch(format!(
                "substitution vector of length {} for {} variables",
                a.len(),
                self.num_vars
            )));
        }
        let mut out = Self::zero(1, self.domain);
        for (e, c) in &self.terms {
            let d: i64 = e.iter().zip(a).map(|(x, y)| x * y).sum();
            out.add_term(vec![d], c.clone());
        }
        Ok(out)
    }

    /// Reduces integer coefficients modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Self {
        let domain = CoeffDomain::PrimeField(p);
        let mut out = Self::zero(self.num_vars, domain);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Same polynomial viewed in the given domain (identity when equal).
    pub fn to_domain(&self, domain: CoeffDomain) -> Self {
        match domain {
            d if d == self.domain => self.clone(),
            CoeffDomain::PrimeField(p) => self.reduce_mod(p),
            CoeffDomain::Integers => {
                // lift representatives in [0, p)
                LaurentPoly {
                    num_vars: self.num_vars,
                    domain,
                    terms: self.terms.clone(),
                }
            }
        }
    }

    /// Evaluates with `t_j` replaced by the caller-supplied powers.
    pub fn evaluate_with<F>(&self, zero: F, mut coeff: impl FnMut(&BigInt) -> F, mut power: impl FnMut(usize, i64) -> F) -> F
    where
        F: Clone + Add<Output = F> + Mul<Output = F>,
    {
        let mut acc = zero;
        for (e, c) in &self.terms {
            let mut t = coeff(c);
            for (j, &k) in e.iter().enumerate() {
                if k != 0 {
                    t = t * power(j, k);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Coefficients with respect to variable `v`: `h = sum_k c_k t_v^k`,
    /// where each `c_k` has exponent 0 in `t_v`.
    pub(crate) fn coefficients_in(&self, v: usize) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[v];
            let mut e2 = e.clone();
            e2[v] = 0;
            out.entry(k)
                .or_insert_with(|| LaurentPoly::zero(self.num_vars, self.domain))
                .add_term(e2, c.clone());
        }
        out
    }

    pub(crate) fn degree_in(&self, v: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[v]).max()
    }

    /// Embeds into a ring with more variables (new variables appended).
    pub fn extend_vars(&self, num_vars: usize) -> Self {
        assert!(num_vars >= self.num_vars);
        LaurentPoly {
            num_vars,
            domain: self.domain,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.resize(num_vars, 0);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Applies an integer linear change of monomials `e -> M e` (rows of `map`
    /// give the new exponents), landing in `target_vars` variables.
    pub fn monomial_map(&self, map: &[Vec<i64>], target_vars: usize) -> Self {
        let mut out = Self::zero(target_vars, self.domain);
        for (e, c) in &self.terms {
            let ne: Monomial = (0..target_vars)
                .map(|r| map[r].iter().zip(e).map(|(a, b)| a * b).sum())
                .collect();
            out.add_term(ne, c.clone());
        }
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}; {}]({})", self.num_vars, self.domain, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> CoeffDomain {
        let _ = n;
        CoeffDomain::Integers
    }

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n, z(n)).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("t1 - 1", 1) * &p("t1 + 1", 1), p("t1^2 - 1", 1));
    }

    #[test]
    fn additive_identity() {
        let h = p("3 t1 t2^-1 - 2", 2);
        assert_eq!(&h + &LaurentPoly::zero(2, CoeffDomain::Integers), h);
    }

    #[test]
    fn hand_expansion_with_negative_exponent() {
        assert_eq!(&p("t1 t2^-1 + 2", 2) * &p("t2", 2), p("t1 + 2 t2", 2));
    }

    #[test]
    fn mismatch_is_rejected() {
        let a = p("t1", 1);
        let b = p("t1", 2);
        assert!(matches!(a.checked_add(&b), Err(Error::Mismatch(_))));
        let c = a.reduce_mod(5);
        assert!(matches!(a.checked_mul(&c), Err(Error::Mismatch(_))));
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(p("t1 t2 - 1", 2).substitute_power(&[1, 1]).unwrap(), p("t1^2 - 1", 1));
        assert_eq!(p("7", 3).substitute_power(&[4, -2, 9]).unwrap(), p("7", 1));
        assert_eq!(p("t1^2 + t2", 2).substitute_power(&[1, 2]).unwrap(), p("2 t1^2", 1));
        assert!(p("t1", 2).substitute_power(&[1]).is_err());
    }

    #[test]
    fn leading_coefficient_examples() {
        assert_eq!(p("5", 2).leading_coefficient(&[3, -8]).unwrap(), BigInt::from(5));
        let h = &p("6 t1 t2 - 6", 2) * &p("t1 - 1", 2);
        assert_eq!(h.leading_coefficient(&[3, 1]).unwrap(), BigInt::from(6));
        assert_eq!(p("2 t1 + 3 t2", 2).leading_coefficient(&[1, 2]).unwrap(), BigInt::from(3));
        assert!(p("2 t1 + 3 t2", 2).leading_coefficient(&[1, 1]).is_err());
    }

    #[test]
    fn prime_field_wraps() {
        let d = CoeffDomain::PrimeField(3);
        let a = LaurentPoly::constant(1, d, 2);
        assert!((&a + &a - LaurentPoly::constant(1, d, 1)).is_zero());
        assert_eq!(LaurentPoly::constant(1, d, -1).constant_value(), Some(BigInt::from(2)));
    }
}

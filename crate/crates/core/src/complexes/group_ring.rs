use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::presentations::{AbelianTarget, HElem};
use crate::{CoeffDomain, Error, LaurentPoly, Result};

/// Element of the group ring `Z[H]` (or `F_p[H]`) for `H = Z^n ⊕ T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElem {
    target: AbelianTarget,
    domain: CoeffDomain,
    terms: BTreeMap<HElem, BigInt>,
}

impl GroupRingElem {
    pub fn zero(target: &AbelianTarget, domain: CoeffDomain) -> Self {
        GroupRingElem {
            target: target.clone(),
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(target: &AbelianTarget, domain: CoeffDomain) -> Self {
        Self::group_element(target, domain, &target.identity())
    }

    pub fn group_element(target: &AbelianTarget, domain: CoeffDomain, g: &HElem) -> Self {
        Self::term(target, domain, 1, g)
    }

    pub fn term(target: &AbelianTarget, domain: CoeffDomain, c: impl Into<BigInt>, g: &HElem) -> Self {
        let mut out = Self::zero(target, domain);
        out.add_term(g.clone(), c.into());
        out
    }

    pub fn from_terms(
        target: &AbelianTarget,
        domain: CoeffDomain,
        terms: impl IntoIterator<Item = (HElem, BigInt)>,
    ) -> Self {
        let mut out = Self::zero(target, domain);
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    pub fn target(&self) -> &AbelianTarget {
        &self.target
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn terms(&self) -> &BTreeMap<HElem, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, g: HElem, c: BigInt) {
        let c = self.domain.reduce(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.domain.reduce(o.get() + c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.target != other.target || self.domain != other.domain {
            return Err(Error::mismatch(format!(
                "group ring elements over {} / {} and {} / {}",
                self.target, self.domain, other.target, other.domain
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.target, self.domain);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(self.target.add(a, b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.target, self.domain);
        for (g, v) in &self.terms {
            out.add_term(g.clone(), v * c);
        }
        out
    }

    /// Coefficients reduced into `F_p`.
    pub fn reduce_mod(&self, p: u64) -> Self {
        Self::from_terms(&self.target, CoeffDomain::PrimeField(p), self.terms.clone())
    }

    pub fn to_domain(&self, domain: CoeffDomain) -> Self {
        match domain {
            d if d == self.domain => self.clone(),
            CoeffDomain::PrimeField(p) => self.reduce_mod(p),
            CoeffDomain::Integers => GroupRingElem {
                target: self.target.clone(),
                domain,
                terms: self.terms.clone(),
            },
        }
    }

    /// The Laurent polynomial in the free variables; requires trivial torsion.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        if self.target.has_torsion() {
            return Err(Error::constraint(
                "group ring element has torsion; apply torsion reduction first",
            ));
        }
        Ok(LaurentPoly::from_terms(
            self.target.free_rank(),
            self.domain,
            self.terms.iter().map(|(g, c)| (g.free.clone(), c.clone())),
        ))
    }

    pub fn from_laurent(h: &LaurentPoly) -> Self {
        let target = AbelianTarget::free(h.num_vars());
        Self::from_terms(
            &target,
            h.domain(),
            h.terms().iter().map(|(e, c)| {
                (
                    HElem {
                        free: e.clone(),
                        torsion: Vec::new(),
                    },
                    c.clone(),
                )
            }),
        )
    }

    /// Splits by torsion component: `self = sum_τ L_τ(t) · s^τ`.
    pub fn torsion_components(&self) -> BTreeMap<Vec<u64>, LaurentPoly> {
        let n = self.target.free_rank();
        let mut out: BTreeMap<Vec<u64>, LaurentPoly> = BTreeMap::new();
        for (g, c) in &self.terms {
            let entry = out
                .entry(g.torsion.clone())
                .or_insert_with(|| LaurentPoly::zero(n, self.domain));
            *entry = &*entry + &LaurentPoly::monomial(n, self.domain, c.clone(), g.free.clone());
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Augmentation `sum of coefficients`.
    pub fn augmentation(&self) -> BigInt {
        self.domain.reduce(self.terms.values().sum())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(g, c)| c.is_one() && self.target.is_identity(g))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a GroupRingElem> for &'a GroupRingElem {
            type Output = GroupRingElem;
            fn $m(self, rhs: &'a GroupRingElem) -> GroupRingElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for GroupRingElem {
            type Output = GroupRingElem;
            fn $m(self, rhs: GroupRingElem) -> GroupRingElem {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        self.scale(&BigInt::from(-1))
    }
}

/// `coef (e1,...,en) [r1,...,rk]` triples separated by spaces; `0` when empty.
impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let join = |v: Vec<String>| v.join(",");
        for (k, (g, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "{c} ({}) [{}]",
                join(g.free.iter().map(|x| x.to_string()).collect()),
                join(g.torsion.iter().map(|x| x.to_string()).collect())
            )?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElem[{}]({})", self.target, self)
    }
}

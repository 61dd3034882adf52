use num_bigint::BigInt;
use num_traits::Zero;

use super::{LaurentPoly, Monomial};

impl LaurentPoly {
    /// Exact quotient `self / divisor` in the Laurent ring, or `None` when the
    /// divisor does not divide. Panics if `divisor` is zero.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        assert_eq!(self.num_vars, divisor.num_vars);
        assert_eq!(self.domain, divisor.domain);
        if self.is_zero() {
            return Some(self.clone());
        }
        let alpha = self.min_exponents();
        let beta = divisor.min_exponents();
        let a = self.strip_monomial();
        let b = divisor.strip_monomial();
        let q = poly_div_exact(&a, &b)?;
        let shift: Monomial = alpha.iter().zip(&beta).map(|(x, y)| x - y).collect();
        Some(q.shift(&shift))
    }

    /// True when `divisor` divides `self` in the Laurent ring.
    pub fn divisible_by(&self, divisor: &LaurentPoly) -> bool {
        self.div_exact(divisor).is_some()
    }
}

/// Lex long division of polynomials with non-negative exponents.
fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let n = a.num_vars;
    let amax = a.max_exponents();
    let bmax = b.max_exponents();
    let bound: Monomial = amax.iter().zip(&bmax).map(|(x, y)| x - y).collect();
    if bound.iter().any(|&d| d < 0) {
        return None;
    }
    let (lm_b, lc_b) = b.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
    let mut r = a.clone();
    let mut q = LaurentPoly::zero(n, a.domain);
    while let Some((lm_r, lc_r)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let e: Monomial = lm_r.iter().zip(&lm_b).map(|(x, y)| x - y).collect();
        if e.iter().zip(&bound).any(|(x, bd)| *x < 0 || x > bd) {
            return None;
        }
        let c: BigInt = a.domain.divide(&lc_r, &lc_b)?;
        if c.is_zero() {
            return None;
        }
        for (eb, cb) in &b.terms {
            let m: Monomial = eb.iter().zip(&e).map(|(x, y)| x + y).collect();
            r.add_term(m, -(cb * &c));
        }
        q.add_term(e, c);
    }
    Some(q)
}

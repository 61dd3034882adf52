//! Multivariate gcd over the integers by recursion on the main variable:
//! content/primitive-part splitting plus a primitive pseudo-remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CoeffDomain, LaurentPoly};
use crate::{Error, Result};

/// Canonical associate: minimal exponent 0 in every variable and a positive
/// graded-lex leading coefficient. The integer content is kept. Over `F_p`
/// every nonzero constant is a unit, so the result is monic instead.
pub fn normal_form(h: &LaurentPoly) -> LaurentPoly {
    if h.is_zero() {
        return h.clone();
    }
    let s = h.strip_monomial();
    if let CoeffDomain::PrimeField(p) = s.domain() {
        let lead = s.grlex_leading().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::one);
        let p = BigInt::from(p);
        // p is prime, so lead^(p-2) is the inverse
        return s.scale(&lead.modpow(&(&p - 2u32), &p));
    }
    let negative = s.grlex_leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
    if negative {
        -&s
    } else {
        s
    }
}

/// Gcd in `Z[t^±]`, returned in [`normal_form`].
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    if a.num_vars() != b.num_vars() || a.domain() != b.domain() {
        return Err(Error::mismatch("gcd of polynomials from different rings"));
    }
    if a.domain() != CoeffDomain::Integers {
        return Err(Error::mismatch("gcd is implemented for integer coefficients only"));
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::compute("gcd(0, 0) is undefined"));
    }
    if a.is_zero() {
        return Ok(normal_form(b));
    }
    if b.is_zero() {
        return Ok(normal_form(a));
    }
    let g = poly_gcd(&a.strip_monomial(), &b.strip_monomial(), a.num_vars());
    Ok(normal_form(&g))
}

/// Gcd of a sequence, skipping zeros. Errors if every element is zero.
pub fn gcd_all<'a>(items: impl IntoIterator<Item = &'a LaurentPoly>) -> Result<LaurentPoly> {
    let mut acc: Option<LaurentPoly> = None;
    for h in items {
        if h.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => normal_form(h),
            Some(g) => gcd(&g, h)?,
        });
    }
    acc.ok_or_else(|| Error::compute("gcd of an all-zero family"))
}

/// Gcd of nonzero polynomials (non-negative exponents) that only involve
/// variables `0..active`.
///
/// Monomials are units in the Laurent ring, so every intermediate result is
/// shifted back to minimal exponent 0; otherwise spurious powers of `t_v`
/// inflate the degrees the remainder sequence runs on.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly, active: usize) -> LaurentPoly {
    let (a, b) = (&a.strip_monomial(), &b.strip_monomial());
    heuristic_gcd(a, b, active).unwrap_or_else(|| prs_gcd(a, b, active))
}

/// Primitive remainder sequence in the main variable, recursing on contents.
fn prs_gcd(a: &LaurentPoly, b: &LaurentPoly, active: usize) -> LaurentPoly {
    let n = a.num_vars();
    if active == 0 {
        let g = a.content().gcd(&b.content());
        return LaurentPoly::constant(n, CoeffDomain::Integers, g);
    }
    let v = active - 1;
    if a.degree_in(v) == Some(0) && b.degree_in(v) == Some(0) {
        return poly_gcd(a, b, v);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = poly_gcd(&ca, &cb, v);
    let mut f = a.div_exact(&ca).expect("content divides").strip_monomial();
    let mut g = b.div_exact(&cb).expect("content divides").strip_monomial();
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.is_zero() {
            return &c * &f;
        }
        if g.degree_in(v) == Some(0) {
            return c;
        }
        let r = pseudo_remainder(&f, &g, v);
        f = g;
        g = if r.is_zero() {
            r
        } else {
            let cr = content_in(&r, v);
            r.div_exact(&cr).expect("content divides").strip_monomial()
        };
    }
}

/// Heuristic gcd in the polynomial ring `Z[t_0, …, t_{active-1}]`: evaluate
/// the main variable at a large integer `ξ`, recurse, and read the gcd off
/// the `ξ`-adic expansion of the result. A candidate is only returned after
/// trial division, so a `None` just means "fall back to remainder sequences".
fn heuristic_gcd(a: &LaurentPoly, b: &LaurentPoly, active: usize) -> Option<LaurentPoly> {
    let n = a.num_vars();
    if active == 0 {
        return Some(LaurentPoly::constant(n, CoeffDomain::Integers, a.content().gcd(&b.content())));
    }
    let v = active - 1;
    if a.degree_in(v) == Some(0) && b.degree_in(v) == Some(0) {
        return heuristic_gcd(a, b, v);
    }
    let common = a.content().gcd(&b.content());
    let f = a.scale_div(&common);
    let g = b.scale_div(&common);
    let norm = |h: &LaurentPoly| h.terms().values().map(|c| c.abs()).max().unwrap_or_default();
    // ground leading coefficient: lex order with t_v most significant
    let ground_lc = |h: &LaurentPoly| {
        h.terms()
            .iter()
            .max_by(|(x, _), (y, _)| x[..active].iter().rev().cmp(y[..active].iter().rev()))
            .map(|(_, c)| c.abs())
            .unwrap_or_else(BigInt::one)
    };
    let (fnorm, gnorm) = (norm(&f), norm(&g));
    let bound: BigInt = 2 * fnorm.clone().min(gnorm.clone()) + 29;
    let mut xi = std::cmp::max(
        bound.clone().min(99 * bound.sqrt()),
        2 * std::cmp::min(&fnorm / ground_lc(&f), &gnorm / ground_lc(&g)) + 2,
    );
    for _ in 0..6 {
        let ff = evaluate_main(&f, v, &xi);
        let gg = evaluate_main(&g, v, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h) = heuristic_gcd(&ff, &gg, v) {
                let cand = primitive(&interpolate(&h, v, &xi));
                if poly_divides(&f, &cand) && poly_divides(&g, &cand) {
                    return Some(cand.scale(&common));
                }
                // the cofactor of f often interpolates when h does not
                if let Some(cff) = ff.div_exact(&h) {
                    let cff = primitive(&interpolate(&cff, v, &xi));
                    if let Some(cand) = polynomial_quotient(&f, &cff) {
                        if poly_divides(&g, &cand) {
                            return Some(cand.scale(&common));
                        }
                    }
                }
            }
        }
        xi = 73794 * &xi * xi.sqrt().sqrt() / 27011;
    }
    None
}

/// `h(t_v = ξ)`, a polynomial in the remaining variables.
fn evaluate_main(h: &LaurentPoly, v: usize, xi: &BigInt) -> LaurentPoly {
    let mut out = LaurentPoly::zero(h.num_vars(), h.domain());
    for (e, c) in h.terms() {
        let mut e2 = e.clone();
        e2[v] = 0;
        out.add_term(e2, c * num_traits::pow(xi.clone(), e[v] as usize));
    }
    out
}

/// Symmetric `ξ`-adic expansion of every coefficient into powers of `t_v`.
fn interpolate(h: &LaurentPoly, v: usize, xi: &BigInt) -> LaurentPoly {
    let half = xi / 2;
    let mut out = LaurentPoly::zero(h.num_vars(), h.domain());
    for (e, c) in h.terms() {
        let mut c = c.clone();
        let mut k = 0;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            c = (&c - &d) / xi;
            let mut e2 = e.clone();
            e2[v] = k;
            out.add_term(e2, d);
            k += 1;
        }
    }
    out
}

fn primitive(h: &LaurentPoly) -> LaurentPoly {
    let c = h.content();
    if c.is_zero() || c.is_one() {
        h.clone()
    } else {
        h.scale_div(&c)
    }
}

/// `f / h` when it is a polynomial (no negative exponents).
fn polynomial_quotient(f: &LaurentPoly, h: &LaurentPoly) -> Option<LaurentPoly> {
    if h.is_zero() {
        return None;
    }
    f.div_exact(h).filter(|q| q.min_exponents().iter().all(|&e| e >= 0))
}

fn poly_divides(f: &LaurentPoly, h: &LaurentPoly) -> bool {
    polynomial_quotient(f, h).is_some()
}

/// Gcd of the coefficients of `h` viewed as a polynomial in `t_v`.
fn content_in(h: &LaurentPoly, v: usize) -> LaurentPoly {
    let coeffs = h.coefficients_in(v);
    let mut it = coeffs.values();
    let mut acc = it.next().cloned().expect("nonzero polynomial");
    for c in it {
        if acc.is_one() {
            break;
        }
        acc = poly_gcd(&acc, c, v);
    }
    let positive = acc
        .terms()
        .iter()
        .next_back()
        .map(|(_, c)| c.is_positive())
        .unwrap_or(true);
    if positive {
        acc
    } else {
        -&acc
    }
}

/// `lc(g)^k f mod g` in the main variable `t_v`, up to a power of `lc(g)`.
fn pseudo_remainder(f: &LaurentPoly, g: &LaurentPoly, v: usize) -> LaurentPoly {
    let dg = g.degree_in(v).unwrap();
    let gc = g.coefficients_in(v);
    let lc = gc[&dg].clone();
    let mut r = f.clone();
    while let Some(dr) = r.degree_in(v) {
        if dr < dg || r.is_zero() {
            break;
        }
        let lr = r.coefficients_in(v)[&dr].clone();
        let mut shift = vec![0i64; r.num_vars()];
        shift[v] = dr - dg;
        r = &(&r * &lc) - &(&lr * &g.shift(&shift));
        if r.is_zero() {
            break;
        }
        // keep coefficients small
        let cont: BigInt = r.content();
        if !cont.is_one() {
            r = r.scale_div(&cont);
        }
    }
    r
}

impl LaurentPoly {
    /// Exact division of every coefficient by an integer.
    pub(crate) fn scale_div(&self, d: &BigInt) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.num_vars(), self.domain());
        for (e, c) in self.terms() {
            debug_assert!((c % d).is_zero());
            out.add_term(e.clone(), c / d);
        }
        out
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use l2inv::complexes::{parse_raw_complex, presentation_complex, write_raw_complex, GroupRingComplex};
use l2inv::covers::{betti, finite_cover_complex, Lattice};
use l2inv::invariants::{alexander_poly, ComputeOptions};
use l2inv::laurent::{gcd, normal_form};
use l2inv::mahler::generic_weight;
use l2inv::presentations::{
    orbifold_epimorphism, orbifold_presentation, parse_presentation_file, write_presentation_file, AbelianTarget,
    Epimorphism, GroupPresentation, Letter, OrbifoldType, PresentationFile, Word,
};
use l2inv::zlinalg::{gcd_of_minors, rank_over_fractions, RankMode};
use l2inv::{CoeffDomain, LaurentPoly, Matrix, PolyMatrix};

fn poly(n: usize, domain: CoeffDomain) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, n), -5i64..=5), 0..6)
        .prop_map(move |terms| LaurentPoly::from_terms(n, domain, terms))
}

fn domain() -> impl Strategy<Value = CoeffDomain> {
    prop_oneof![
        Just(CoeffDomain::Integers),
        Just(CoeffDomain::for_characteristic(2)),
        Just(CoeffDomain::for_characteristic(5)),
    ]
}

fn triple() -> impl Strategy<Value = (LaurentPoly, LaurentPoly, LaurentPoly)> {
    (1usize..=3, domain()).prop_flat_map(|(n, d)| (poly(n, d), poly(n, d), poly(n, d)))
}

fn integer_triple() -> impl Strategy<Value = (LaurentPoly, LaurentPoly, LaurentPoly)> {
    let d = CoeffDomain::Integers;
    (1usize..=3).prop_flat_map(move |n| (poly(n, d), poly(n, d), poly(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn gcd_divides_and_absorbs_common_factor((a, b, c) in integer_triple()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        prop_assume!(!c.is_zero());
        let g = gcd(&a, &b).unwrap();
        if !g.is_zero() {
            prop_assert!(a.divisible_by(&g));
            prop_assert!(b.divisible_by(&g));
        }
        let gc = gcd(&(&a * &c), &(&b * &c)).unwrap();
        prop_assert!(gc.divisible_by(&c), "gcd {} not divisible by {}", gc, c);
    }

    #[test]
    fn substitution_is_a_ring_map(
        (a, b, _) in triple(),
        exps in prop::collection::vec(-3i64..=3, 3),
    ) {
        let e = &exps[..a.num_vars()];
        let s = |h: &LaurentPoly| h.substitute_power(e).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn normal_form_is_idempotent_and_unit_invariant(
        (a, _, _) in triple(),
        shift in prop::collection::vec(-3i64..=3, 3),
    ) {
        let nf = normal_form(&a);
        prop_assert_eq!(normal_form(&nf), nf.clone());
        let moved = -&a.shift(&shift[..a.num_vars()]);
        prop_assert_eq!(normal_form(&moved), nf);
    }

    #[test]
    fn parse_inverts_display((a, _, _) in triple()) {
        prop_assert_eq!(LaurentPoly::parse(&a.to_string(), a.num_vars(), a.domain()).unwrap(), a);
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, domain: CoeffDomain, terms: usize) -> LaurentPoly {
    LaurentPoly::from_terms(
        n,
        domain,
        (0..rng.gen_range(0..=terms)).map(|_| ((0..n).map(|_| rng.gen_range(-1..=2)).collect(), rng.gen_range(-3i64..=3))),
    )
}

/// A matrix of deliberately low rank: a product of random thin factors.
fn random_low_rank(rng: &mut ChaCha8Rng, n: usize, domain: CoeffDomain, size: usize) -> PolyMatrix {
    let (r, c, k) = (rng.gen_range(1..=size), rng.gen_range(1..=size), rng.gen_range(1..=size - 1));
    let a = Matrix::from_fn(r, k, |_, _| random_poly(rng, n, domain, 2));
    let b = Matrix::from_fn(k, c, |_, _| random_poly(rng, n, domain, 2));
    a.mul_with(&b, &LaurentPoly::zero(n, domain))
}

#[test]
fn monte_carlo_rank_matches_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..150 {
        let n = rng.gen_range(1..=3);
        let d = [CoeffDomain::Integers, CoeffDomain::for_characteristic(2), CoeffDomain::for_characteristic(3)]
            [case % 3];
        let m = random_low_rank(&mut rng, n, d, 6);
        let exact = rank_over_fractions(&m, RankMode::Exact);
        let mc = rank_over_fractions(&m, RankMode::MonteCarlo { seed: case as u64, trials: 2 });
        assert_eq!(exact, mc, "case {case} over {d}");
    }
}

#[test]
fn gcd_of_minors_is_invariant_under_row_and_column_operations() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let d = CoeffDomain::Integers;
    for _ in 0..60 {
        let n = rng.gen_range(1..=2);
        let m = random_low_rank(&mut rng, n, d, 4);
        let r = rank_over_fractions(&m, RankMode::default());
        if r == 0 {
            continue;
        }
        let before = gcd_of_minors(&m, r, 100_000, 1).unwrap();
        let mut rows = m.clone().into_rows();
        // add a polynomial multiple of one row to another, then scale a row by a unit
        if rows.len() > 1 {
            let f = random_poly(&mut rng, n, d, 2);
            let src = rows[0].clone();
            for (x, y) in rows[1].iter_mut().zip(&src) {
                *x = &*x + &(&f * y);
            }
        }
        let unit = -&LaurentPoly::var(n, d, 0);
        let last = rows.len() - 1;
        rows[last].iter_mut().for_each(|x| *x = &*x * &unit);
        let moved = Matrix::from_fn(m.rows(), m.cols(), |i, j| rows[i][j].clone()).transpose();
        let after = gcd_of_minors(&moved, r, 100_000, 2).unwrap();
        assert_eq!(normal_form(&before), normal_form(&after), "on\n{m:?}");
    }
}

fn orbifold_grid() -> Vec<OrbifoldType> {
    let mut out = Vec::new();
    for g in 0..=1 {
        for r in 0..=3 {
            if g == 0 && r <= 1 {
                continue;
            }
            for mu in [vec![], vec![2], vec![2, 3], vec![4, 6]] {
                out.push(OrbifoldType::new(g, r, mu, None).unwrap());
            }
        }
    }
    out
}

/// Composing ν with `a: Z^n → Z` substitutes `t_j ↦ t^{a_j}` in Δ₁.
///
/// With punctures the substitution commutes with taking Δ₁ on the nose. For
/// closed surfaces the composed ∂₂ can lose rank, and then the composed Δ₁
/// only has the substituted one as a divisor, with the same leading
/// coefficient.
#[test]
fn substitution_compatibility() {
    let opts = ComputeOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for tau in orbifold_grid().into_iter().filter(|t| t.free_rank() >= 2) {
        let p = orbifold_presentation(&tau);
        let nu = orbifold_epimorphism(&tau, &AbelianTarget::free(tau.free_rank())).unwrap();
        let delta = alexander_poly(&presentation_complex(&p, &nu).unwrap(), 1, &opts).unwrap();
        for _ in 0..4 {
            let a: Vec<i64> = loop {
                let a: Vec<i64> = (0..tau.free_rank()).map(|_| rng.gen_range(-4..=4)).collect();
                if a.iter().fold(0i64, |g, x| g.gcd(x)) == 1 {
                    break a;
                }
            };
            let composed = nu.compose_free(&p, std::slice::from_ref(&a)).unwrap();
            let got = normal_form(&alexander_poly(&presentation_complex(&p, &composed).unwrap(), 1, &opts).unwrap());
            let want = normal_form(&delta.substitute_power(&a).unwrap());
            if tau.punctures() >= 1 {
                assert_eq!(got, want, "{tau}, a = {a:?}");
            } else {
                assert!(got.divisible_by(&want), "{tau}, a = {a:?}: {got} vs {want}");
                let lc = |h: &LaurentPoly| h.leading_coefficient(&[1]).unwrap();
                assert_eq!(num_traits::Signed::abs(&lc(&got)), num_traits::Signed::abs(&lc(&want)));
            }
        }
    }
}

#[test]
fn leading_coefficient_does_not_depend_on_generic_weight() {
    let opts = ComputeOptions::default();
    for tau in orbifold_grid() {
        let p = orbifold_presentation(&tau);
        let nu = orbifold_epimorphism(&tau, &AbelianTarget::free(tau.free_rank())).unwrap();
        let delta = alexander_poly(&presentation_complex(&p, &nu).unwrap(), 1, &opts).unwrap();
        let lcs: Vec<BigInt> = (0..5)
            .map(|s| {
                let w = generic_weight(&delta, s).unwrap();
                num_traits::Signed::abs(&delta.leading_coefficient(&w).unwrap())
            })
            .collect();
        assert!(lcs.windows(2).all(|w| w[0] == w[1]), "{tau}: {lcs:?}");
    }
}

fn random_presentation(rng: &mut ChaCha8Rng) -> GroupPresentation {
    let k = rng.gen_range(1..=3);
    let relators = (0..rng.gen_range(0..=2))
        .map(|_| {
            Word::new(
                (0..rng.gen_range(1..=6))
                    .map(|_| {
                        let g = rng.gen_range(0..k);
                        if rng.gen() {
                            Letter::inv(g)
                        } else {
                            Letter::new(g)
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    GroupPresentation::new(k, relators).unwrap()
}

fn random_complex(rng: &mut ChaCha8Rng) -> Option<GroupRingComplex> {
    let p = random_presentation(rng);
    let nu = Epimorphism::free_abelianization(&p).ok()?;
    if nu.target().free_rank() == 0 || nu.target().free_rank() > 2 {
        return None;
    }
    presentation_complex(&p, &nu).ok()
}

#[test]
fn covers_multiply_euler_characteristic_and_reduce_mod_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut seen = 0;
    while seen < 40 {
        let Some(c) = random_complex(&mut rng) else { continue };
        let n = c.target().free_rank();
        let lattice = Lattice::random(n, 4, rng.gen()).unwrap();
        let cover = finite_cover_complex(&c, &lattice).unwrap();
        let index: i64 = lattice.index().try_into().unwrap();
        assert_eq!(cover.euler_characteristic(), index * c.euler_characteristic());
        for i in 0..=c.dimension() {
            let b0 = betti(&cover, i, 0).unwrap();
            for p in [2, 3, 5] {
                assert!(b0 <= betti(&cover, i, p).unwrap());
            }
        }
        let alt: i64 = (0..=c.dimension())
            .map(|i| if i % 2 == 0 { 1 } else { -1 } * betti(&cover, i, 0).unwrap() as i64)
            .sum();
        assert_eq!(alt, cover.euler_characteristic());
        seen += 1;
    }
}

#[test]
fn text_formats_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut seen = 0;
    while seen < 40 {
        let p = random_presentation(&mut rng);
        let Ok(nu) = Epimorphism::free_abelianization(&p) else { continue };
        let file = PresentationFile {
            presentation: p.clone(),
            nu: nu.clone(),
        };
        let text = write_presentation_file(&file);
        assert_eq!(parse_presentation_file(&text).unwrap(), file, "{text}");
        let c = presentation_complex(&p, &nu).unwrap();
        let raw = write_raw_complex(&c);
        assert_eq!(parse_raw_complex(&raw).unwrap(), c, "{raw}");
        seen += 1;
    }
    // torsion targets survive the trip too
    let tau = OrbifoldType::new(0, 2, vec![6], Some(vec![3])).unwrap();
    let h = AbelianTarget::new(1, vec![3]).unwrap();
    let c = presentation_complex(&orbifold_presentation(&tau), &orbifold_epimorphism(&tau, &h).unwrap()).unwrap();
    assert_eq!(parse_raw_complex(&write_raw_complex(&c)).unwrap(), c);
}

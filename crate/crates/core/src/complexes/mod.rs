//! Chain complexes of free modules over `Z[Z^n ⊕ T]`.
//!
//! Chains are row vectors: `boundary(i)` is the matrix of `C_{i+1} → C_i`
//! with one row per cell of `C_{i+1}`, so `boundary(i+1) · boundary(i) = 0`.

mod group_ring;
mod text;

pub use group_ring::GroupRingElem;
pub use text::{parse_raw_complex, write_raw_complex};

use crate::presentations::{fox_jacobian, AbelianTarget, Epimorphism, GroupPresentation, HElem};
use crate::{CoeffDomain, Error, Matrix, PolyMatrix, Result};

/// Bounded complex `C_0 ← C_1 ← ... ← C_d` over the group ring of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingComplex {
    target: AbelianTarget,
    domain: CoeffDomain,
    ranks: Vec<usize>,
    boundaries: Vec<Matrix<GroupRingElem>>,
}

impl GroupRingComplex {
    /// Validates shapes, entry targets and `∂∘∂ = 0`.
    ///
    /// `boundaries[i]` is `C_{i+1} → C_i` of shape `ranks[i+1] x ranks[i]`.
    pub fn new(
        target: AbelianTarget,
        domain: CoeffDomain,
        ranks: Vec<usize>,
        boundaries: Vec<Matrix<GroupRingElem>>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::constraint("a complex needs at least one module"));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::constraint(format!(
                "{} boundary matrices for {} modules",
                boundaries.len(),
                ranks.len()
            )));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.shape() != (ranks[i + 1], ranks[i]) {
                return Err(Error::constraint(format!(
                    "boundary C_{} -> C_{i} has shape {:?}, expected {:?}",
                    i + 1,
                    b.shape(),
                    (ranks[i + 1], ranks[i])
                )));
            }
            if let Some((_, _, e)) = b.entries().find(|(_, _, e)| e.target() != &target || e.domain() != domain) {
                return Err(Error::constraint(format!(
                    "entry {e} of boundary C_{} -> C_{i} is not over {target}",
                    i + 1
                )));
            }
        }
        let zero = GroupRingElem::zero(&target, domain);
        for i in 1..boundaries.len() {
            let prod = boundaries[i].mul_with(&boundaries[i - 1], &zero);
            for r in 0..prod.rows() {
                for c in 0..prod.cols() {
                    if !prod.get(r, c).is_zero() {
                        return Err(Error::constraint(format!(
                            "∂∘∂ ≠ 0: C_{} -> C_{} entry ({}, {}) is {}",
                            i + 1,
                            i - 1,
                            r + 1,
                            c + 1,
                            prod.get(r, c)
                        )));
                    }
                }
            }
        }
        Ok(GroupRingComplex {
            target,
            domain,
            ranks,
            boundaries,
        })
    }

    pub fn target(&self) -> &AbelianTarget {
        &self.target
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Top degree `d`.
    pub fn dimension(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Rank of `C_i` (0 outside the complex).
    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn boundaries(&self) -> &[Matrix<GroupRingElem>] {
        &self.boundaries
    }

    /// `C_{i+1} → C_i`; an empty matrix past the top degree.
    pub fn boundary(&self, i: usize) -> Matrix<GroupRingElem> {
        match self.boundaries.get(i) {
            Some(b) => b.clone(),
            None => Matrix::filled(0, self.rank(i), GroupRingElem::zero(&self.target, self.domain)),
        }
    }

    /// Boundary `C_{i+1} → C_i` as a Laurent matrix; needs trivial torsion.
    pub fn poly_boundary(&self, i: usize) -> Result<PolyMatrix> {
        if self.target.has_torsion() {
            return Err(Error::constraint(format!(
                "target {} has torsion; apply torsion_reduce first",
                self.target
            )));
        }
        self.boundary(i).try_map(GroupRingElem::to_laurent)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Same complex with coefficients reduced into `domain`.
    pub fn to_domain(&self, domain: CoeffDomain) -> Result<Self> {
        if self.domain == domain {
            return Ok(self.clone());
        }
        let boundaries = self.boundaries.iter().map(|b| b.map(|e| e.to_domain(domain))).collect();
        GroupRingComplex::new(self.target.clone(), domain, self.ranks.clone(), boundaries)
    }

    /// Tensor product over `Z[H ⊕ H']` with the Koszul sign on the second
    /// factor; bases are ordered by first-factor degree, then lexicographically.
    pub fn tensor(&self, other: &GroupRingComplex) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::mismatch("tensor of complexes over different coefficient domains"));
        }
        let (a_t, b_t) = (&self.target, &other.target);
        let target = AbelianTarget::new(
            a_t.free_rank() + b_t.free_rank(),
            a_t.torsion_orders().iter().chain(b_t.torsion_orders()).copied().collect(),
        )?;
        let domain = self.domain;
        let embed = |e: &GroupRingElem, left: bool| {
            GroupRingElem::from_terms(
                &target,
                domain,
                e.terms().iter().map(|(g, c)| {
                    let (free, torsion) = if left {
                        (
                            g.free.iter().copied().chain(std::iter::repeat_n(0, b_t.free_rank())).collect(),
                            g.torsion.iter().copied().chain(std::iter::repeat_n(0, b_t.torsion_rank())).collect(),
                        )
                    } else {
                        (
                            std::iter::repeat_n(0, a_t.free_rank()).chain(g.free.iter().copied()).collect(),
                            std::iter::repeat_n(0, a_t.torsion_rank()).chain(g.torsion.iter().copied()).collect(),
                        )
                    };
                    (HElem { free, torsion }, c.clone())
                }),
            )
        };
        let top = self.dimension() + other.dimension();
        // blocks[k] lists (i, j, offset) for C_i ⊗ D_j in degree k
        let mut blocks: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(top + 1);
        let mut ranks = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut off = 0;
            let mut v = Vec::new();
            for i in 0..=k.min(self.dimension()) {
                let j = k - i;
                if j > other.dimension() {
                    continue;
                }
                v.push((i, j, off));
                off += self.rank(i) * other.rank(j);
            }
            blocks.push(v);
            ranks.push(off);
        }
        let zero = GroupRingElem::zero(&target, domain);
        let mut boundaries = Vec::with_capacity(top);
        for k in 0..top {
            let mut m = Matrix::filled(ranks[k + 1], ranks[k], zero.clone());
            for &(i, j, off) in &blocks[k + 1] {
                let (ri, rj) = (self.rank(i), other.rank(j));
                // ∂a ⊗ b
                if i > 0 {
                    let &(_, _, off2) = blocks[k].iter().find(|b| b.0 == i - 1).expect("block exists");
                    let d = &self.boundaries[i - 1];
                    for a in 0..ri {
                        for a2 in 0..self.rank(i - 1) {
                            let e = d.get(a, a2);
                            if e.is_zero() {
                                continue;
                            }
                            let e = embed(e, true);
                            for b in 0..rj {
                                m.set(off + a * rj + b, off2 + a2 * rj + b, e.clone());
                            }
                        }
                    }
                }
                // (-1)^i a ⊗ ∂b
                if j > 0 {
                    let &(_, _, off2) = blocks[k].iter().find(|b| b.0 == i).expect("block exists");
                    let d = &other.boundaries[j - 1];
                    let rj2 = other.rank(j - 1);
                    for b in 0..rj {
                        for b2 in 0..rj2 {
                            let e = d.get(b, b2);
                            if e.is_zero() {
                                continue;
                            }
                            let e = embed(e, false);
                            let e = if i % 2 == 1 { -&e } else { e };
                            for a in 0..ri {
                                m.set(off + a * rj + b, off2 + a * rj2 + b2, e.clone());
                            }
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        GroupRingComplex::new(target, domain, ranks, boundaries)
    }
}

/// Cellular chain complex of the presentation 2-complex pushed through `ν`:
/// ranks `(1, k, #relators)`, `∂(C_1 → C_0)` rows `ν(x_j) − 1`, and the
/// Fox Jacobian as `∂(C_2 → C_1)`.
pub fn presentation_complex(p: &GroupPresentation, nu: &Epimorphism) -> Result<GroupRingComplex> {
    let target = nu.target().clone();
    let domain = CoeffDomain::Integers;
    let one = GroupRingElem::one(&target, domain);
    let d1 = Matrix::from_fn(p.generator_count(), 1, |j, _| {
        &GroupRingElem::group_element(&target, domain, nu.image_of_generator(j)) - &one
    });
    let d2 = fox_jacobian(p, nu, domain);
    GroupRingComplex::new(target, domain, vec![1, p.generator_count(), p.relators().len()], vec![d1, d2])
}

/// Validated complex from explicit data; alias of [`GroupRingComplex::new`].
pub fn raw_complex(
    target: AbelianTarget,
    domain: CoeffDomain,
    ranks: Vec<usize>,
    boundaries: Vec<Matrix<GroupRingElem>>,
) -> Result<GroupRingComplex> {
    GroupRingComplex::new(target, domain, ranks, boundaries)
}

/// `C_0 ← C_1` with `∂ = t_j − 1` over `Z[Z^n]`.
pub fn circle_complex(n: usize, j: usize) -> GroupRingComplex {
    let target = AbelianTarget::free(n);
    let domain = CoeffDomain::Integers;
    let mut g = target.identity();
    g.free[j] = 1;
    let e = &GroupRingElem::group_element(&target, domain, &g) - &GroupRingElem::one(&target, domain);
    GroupRingComplex::new(target, domain, vec![1, 1], vec![Matrix::from_vec(1, 1, vec![e])])
        .expect("circle complex is valid")
}

/// Replaces the torsion part `T` by its regular representation.
///
/// Every module is tensored up by `|T|` and `s^τ` acts as the permutation
/// `q ↦ q + τ` on the mixed-radix basis of `T`; free variables stay
/// symbolic. Invariants of the result, divided by `|T|`, are those of the
/// input.
pub fn torsion_reduce(c: &GroupRingComplex) -> GroupRingComplex {
    let t = c.target();
    if !t.has_torsion() {
        return c.clone();
    }
    let size = t.torsion_size() as usize;
    let free = t.free_part();
    let domain = c.domain();
    let zero = GroupRingElem::zero(&free, domain);
    let elements: Vec<Vec<u64>> = (0..size).map(|q| t.torsion_from_index(q)).collect();
    let boundaries = c
        .boundaries()
        .iter()
        .map(|b| {
            b.expand_blocks(size, size, &zero, |e| {
                let mut block: Vec<GroupRingElem> = vec![zero.clone(); size * size];
                for (g, coeff) in e.terms() {
                    let f = HElem {
                        free: g.free.clone(),
                        torsion: Vec::new(),
                    };
                    for (q, tq) in elements.iter().enumerate() {
                        let sum: Vec<u64> = tq
                            .iter()
                            .zip(&g.torsion)
                            .zip(t.torsion_orders())
                            .map(|((a, b), d)| (a + b) % d)
                            .collect();
                        let col = t.torsion_index(&sum);
                        block[q * size + col].add_term(f.clone(), coeff.clone());
                    }
                }
                block
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (k / size, k % size, v))
                    .collect()
            })
        })
        .collect();
    let ranks = c.ranks().iter().map(|r| r * size).collect();
    GroupRingComplex::new(free, domain, ranks, boundaries).expect("regular representation preserves ∂∘∂ = 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{orbifold_epimorphism, orbifold_presentation, OrbifoldType, Word};
    use crate::LaurentPoly;

    fn lp(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n, CoeffDomain::Integers).unwrap()
    }

    #[test]
    fn example_free_case() {
        let tau = OrbifoldType::new(0, 2, vec![5], None).unwrap();
        let p = orbifold_presentation(&tau);
        let nu = orbifold_epimorphism(&tau, &AbelianTarget::free(1)).unwrap();
        let c = presentation_complex(&p, &nu).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 1]);
        let d2 = c.poly_boundary(1).unwrap();
        assert_eq!((d2.get(0, 0).clone(), d2.get(0, 1).clone()), (lp("0", 1), lp("5", 1)));
        let d1 = c.poly_boundary(0).unwrap();
        assert_eq!((d1.get(0, 0).clone(), d1.get(1, 0).clone()), (lp("t - 1", 1), lp("0", 1)));
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn torus_and_free_group() {
        let torus = GroupPresentation::new(2, vec![Word::commutator(&Word::power(0, 1), &Word::power(1, 1))]).unwrap();
        let nu = Epimorphism::free_abelianization(&torus).unwrap();
        assert_eq!(nu.image_of_generator(0).free, vec![1, 0]);
        let c = presentation_complex(&torus, &nu).unwrap();
        let d2 = c.poly_boundary(1).unwrap();
        // Fox derivatives of a b a^-1 b^-1: (1 - t2, t1 - 1), a unit multiple of (t2 - 1, 1 - t1)
        assert_eq!(d2.get(0, 0), &lp("1 - t2", 2));
        assert_eq!(d2.get(0, 1), &lp("t1 - 1", 2));

        let free = GroupPresentation::new(2, vec![]).unwrap();
        let nu = Epimorphism::free_abelianization(&free).unwrap();
        let c = presentation_complex(&free, &nu).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 0]);
        assert_eq!(c.poly_boundary(0).unwrap().get(1, 0), &lp("t2 - 1", 2));
    }

    #[test]
    fn bad_complex_is_rejected() {
        let t = AbelianTarget::free(1);
        let d = CoeffDomain::Integers;
        let one = GroupRingElem::one(&t, d);
        let r = raw_complex(
            t.clone(),
            d,
            vec![1, 1, 1],
            vec![Matrix::from_vec(1, 1, vec![one.clone()]), Matrix::from_vec(1, 1, vec![one])],
        );
        assert!(matches!(r, Err(Error::Constraint(msg)) if msg.contains("(1, 1)")));
    }

    #[test]
    fn koszul_three_torus() {
        let c = circle_complex(1, 0).tensor(&circle_complex(1, 0)).unwrap();
        let c = c.tensor(&circle_complex(1, 0)).unwrap();
        assert_eq!(c.ranks(), &[1, 3, 3, 1]);
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.target().free_rank(), 3);
    }

    #[test]
    fn torsion_reduction_of_example() {
        let tau = OrbifoldType::new(0, 2, vec![6], Some(vec![3])).unwrap();
        let h = AbelianTarget::new(1, vec![3]).unwrap();
        let p = orbifold_presentation(&tau);
        let nu = orbifold_epimorphism(&tau, &h).unwrap();
        let c = presentation_complex(&p, &nu).unwrap();
        let r = torsion_reduce(&c);
        assert_eq!(r.ranks(), &[3, 6, 3]);
        assert_eq!(r.euler_characteristic(), 3 * c.euler_characteristic());
        let d2 = r.poly_boundary(1).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(d2.get(i, j).is_zero());
                assert_eq!(d2.get(i, 3 + j), &lp("2", 1));
            }
        }
        // the free generator acts diagonally
        let d1 = r.poly_boundary(0).unwrap();
        assert_eq!(d1.get(1, 1), &lp("t - 1", 1));
        assert!(d1.get(1, 2).is_zero());
    }
}

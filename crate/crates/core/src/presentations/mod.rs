//! Finitely presented groups, epimorphisms onto `Z^n ⊕ T`, Fox calculus and
//! orbifold fundamental groups.

mod fox;
mod orbifold;
mod target;
mod text;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

pub use fox::{fox_derivative, fox_jacobian};
pub use orbifold::{orbifold_epimorphism, orbifold_presentation, OrbifoldType};
pub use target::{AbelianTarget, HElem};
pub use text::{parse_presentation_file, write_presentation_file, PresentationFile};

use crate::zlinalg::smith_normal_form;
use crate::{Error, IntMatrix, Result};

/// A generator or its inverse; generators are zero-based internally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A word in the free group, kept exactly as written.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// `x_g^k` for any integer `k`.
    pub fn power(generator: usize, k: i64) -> Self {
        let l = if k >= 0 { Letter::new(generator) } else { Letter::inv(generator) };
        Word(vec![l; k.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Freely reduced copy.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut v = vec![0i64; generator_count];
        for l in &self.0 {
            v[l.generator] += if l.inverse { -1 } else { 1 };
        }
        v
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}", l.generator + 1)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// `⟨x_1, ..., x_k | r_1, ..., r_m⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_count: usize,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        for (i, r) in relators.iter().enumerate() {
            if let Some(l) = r.0.iter().find(|l| l.generator >= generator_count) {
                return Err(Error::constraint(format!(
                    "relator {} uses generator g{} but only {generator_count} generators exist",
                    i + 1,
                    l.generator + 1
                )));
            }
        }
        Ok(GroupPresentation {
            generator_count,
            relators,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Exponent-sum matrix: one row per relator.
    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.relators.len(), self.generator_count, |i, j| {
            BigInt::from(self.relators[i].exponent_sums(self.generator_count)[j])
        })
    }

    /// Invariants of the abelianization: free rank and torsion orders (≥ 2).
    pub fn abelianization(&self) -> (usize, Vec<u64>) {
        let k = self.generator_count;
        if self.relators.is_empty() {
            return (k, Vec::new());
        }
        let d = smith_normal_form(&self.relation_matrix().transpose()).diagonal();
        let rank = d.iter().filter(|x| !x.is_zero()).count();
        let torsion = d
            .iter()
            .filter(|x| !x.is_zero())
            .filter_map(|x| u64::try_from(x).ok())
            .filter(|&x| x >= 2)
            .collect();
        (k - rank, torsion)
    }
}

/// An epimorphism `π → H`, given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epimorphism {
    target: AbelianTarget,
    images: Vec<HElem>,
}

impl Epimorphism {
    /// Validates that every relator maps to the identity and that the images
    /// generate `H`.
    pub fn new(presentation: &GroupPresentation, target: AbelianTarget, images: Vec<HElem>) -> Result<Self> {
        if images.len() != presentation.generator_count() {
            return Err(Error::constraint(format!(
                "{} generator images for {} generators",
                images.len(),
                presentation.generator_count()
            )));
        }
        for (j, img) in images.iter().enumerate() {
            if img.free.len() != target.free_rank() || img.torsion.len() != target.torsion_rank() {
                return Err(Error::constraint(format!("image of g{} has the wrong shape for {target}", j + 1)));
            }
            if img.torsion.iter().zip(target.torsion_orders()).any(|(x, d)| x >= d) {
                return Err(Error::constraint(format!("image of g{} has unreduced torsion residues", j + 1)));
            }
        }
        let nu = Epimorphism { target, images };
        for (i, r) in presentation.relators().iter().enumerate() {
            let img = nu.image(r);
            if !nu.target.is_identity(&img) {
                return Err(Error::constraint(format!(
                    "relator {} maps to {:?}/{:?}, not the identity",
                    i + 1,
                    img.free,
                    img.torsion
                )));
            }
        }
        if !nu.target.is_generated_by(&nu.images) {
            return Err(Error::constraint(format!("generator images do not generate {}", nu.target)));
        }
        Ok(nu)
    }

    /// Projection onto the free part of the abelianization.
    pub fn free_abelianization(presentation: &GroupPresentation) -> Result<Self> {
        let k = presentation.generator_count();
        let (free_rank, _) = presentation.abelianization();
        let images: Vec<HElem> = if presentation.relators().is_empty() {
            (0..k)
                .map(|g| HElem {
                    free: (0..k).map(|j| (j == g) as i64).collect(),
                    torsion: Vec::new(),
                })
                .collect()
        } else {
            // class of a is U a; free coordinates are those past the rank
            let snf = smith_normal_form(&presentation.relation_matrix().transpose());
            let rank = k - free_rank;
            (0..k)
                .map(|g| HElem {
                    free: (rank..k)
                        .map(|i| i64::try_from(snf.u.get(i, g)).expect("small transform entry"))
                        .collect(),
                    torsion: Vec::new(),
                })
                .collect()
        };
        Epimorphism::new(presentation, AbelianTarget::free(free_rank), images)
    }

    pub fn target(&self) -> &AbelianTarget {
        &self.target
    }

    pub fn images(&self) -> &[HElem] {
        &self.images
    }

    pub fn image_of_generator(&self, g: usize) -> &HElem {
        &self.images[g]
    }

    pub fn image_of_letter(&self, l: Letter) -> HElem {
        let g = &self.images[l.generator];
        if l.inverse {
            self.target.neg(g)
        } else {
            g.clone()
        }
    }

    pub fn image(&self, w: &Word) -> HElem {
        w.0.iter()
            .fold(self.target.identity(), |acc, &l| self.target.add(&acc, &self.image_of_letter(l)))
    }

    /// Composes with a homomorphism `Z^n → Z^m` (rows of `map`), keeping torsion.
    pub fn compose_free(&self, presentation: &GroupPresentation, map: &[Vec<i64>]) -> Result<Self> {
        let m = map.len();
        let target = AbelianTarget::new(m, self.target.torsion_orders().to_vec())?;
        let images = self
            .images
            .iter()
            .map(|g| HElem {
                free: map.iter().map(|row| row.iter().zip(&g.free).map(|(a, b)| a * b).sum()).collect(),
                torsion: g.torsion.clone(),
            })
            .collect();
        Epimorphism::new(presentation, target, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_reduction() {
        let w = Word::new(vec![Letter::new(0), Letter::new(1), Letter::inv(1), Letter::inv(0), Letter::new(2)]);
        assert_eq!(w.reduced(), Word::new(vec![Letter::new(2)]));
        assert_eq!(w.len(), 5);
        assert_eq!(Word::power(1, -2).to_string(), "g2^-1 g2^-1");
    }

    #[test]
    fn abelianization_of_orbifold_groups() {
        // Z * Z/6
        let p = GroupPresentation::new(2, vec![Word::power(1, 6)]).unwrap();
        assert_eq!(p.abelianization(), (1, vec![6]));
        let nu = Epimorphism::free_abelianization(&p).unwrap();
        assert_eq!(nu.target().free_rank(), 1);
        assert_eq!(nu.image_of_generator(1).free, vec![0]);
        assert_eq!(nu.image_of_generator(0).free.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn epimorphism_validation() {
        let p = GroupPresentation::new(2, vec![Word::power(1, 6)]).unwrap();
        let h = AbelianTarget::free(1);
        let ok = vec![h.element(vec![1], vec![]).unwrap(), h.element(vec![0], vec![]).unwrap()];
        assert!(Epimorphism::new(&p, h.clone(), ok).is_ok());
        let bad = vec![h.element(vec![1], vec![]).unwrap(), h.element(vec![1], vec![]).unwrap()];
        assert!(Epimorphism::new(&p, h.clone(), bad).is_err());
        let not_onto = vec![h.element(vec![2], vec![]).unwrap(), h.element(vec![0], vec![]).unwrap()];
        assert!(Epimorphism::new(&p, h, not_onto).is_err());
        assert!(GroupPresentation::new(1, vec![Word::power(1, 2)]).is_err());
    }
}

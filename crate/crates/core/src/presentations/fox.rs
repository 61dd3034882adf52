use super::{Epimorphism, GroupPresentation, Word};
use crate::complexes::GroupRingElem;
use crate::{CoeffDomain, Matrix};

/// Image under `ν` of the Fox derivative `∂w/∂x_j`:
/// each occurrence `x_j` at position k contributes `ν(prefix)`, each
/// `x_j^-1` contributes `-ν(prefix · x_j^-1)`.
pub fn fox_derivative(w: &Word, j: usize, nu: &Epimorphism, domain: CoeffDomain) -> GroupRingElem {
    let h = nu.target();
    let mut out = GroupRingElem::zero(h, domain);
    let mut prefix = h.identity();
    for &l in w.letters() {
        let next = h.add(&prefix, &nu.image_of_letter(l));
        if l.generator == j {
            if l.inverse {
                out.add_term(next.clone(), (-1).into());
            } else {
                out.add_term(prefix.clone(), 1.into());
            }
        }
        prefix = next;
    }
    out
}

/// Fox Jacobian pushed through `ν`: rows indexed by relators, columns by generators.
pub fn fox_jacobian(p: &GroupPresentation, nu: &Epimorphism, domain: CoeffDomain) -> Matrix<GroupRingElem> {
    Matrix::from_fn(p.relators().len(), p.generator_count(), |i, j| {
        fox_derivative(&p.relators()[i], j, nu, domain)
    })
}

#[cfg(test)]
mod tests {
    use super::super::{AbelianTarget, Letter};
    use super::*;

    fn free2() -> (GroupPresentation, Epimorphism) {
        let p = GroupPresentation::new(2, vec![]).unwrap();
        let nu = Epimorphism::free_abelianization(&p).unwrap();
        (p, nu)
    }

    #[test]
    fn first_letter_rule() {
        let (_, nu) = free2();
        let w = Word::new(vec![Letter::new(0), Letter::new(1)]);
        let d = fox_derivative(&w, 0, &nu, CoeffDomain::Integers);
        assert!(d.is_one());
    }

    #[test]
    fn inverse_rule() {
        let (_, nu) = free2();
        let w = Word::new(vec![Letter::inv(0)]);
        let d = fox_derivative(&w, 0, &nu, CoeffDomain::Integers);
        let h = nu.target();
        let expected = GroupRingElem::term(h, CoeffDomain::Integers, -1, &h.neg(nu.image_of_generator(0)));
        assert_eq!(d, expected);
    }

    #[test]
    fn power_rule() {
        let h = AbelianTarget::new(1, vec![2]).unwrap();
        let p = GroupPresentation::new(2, vec![Word::power(1, 6)]).unwrap();
        let nu = Epimorphism::new(
            &p,
            h.clone(),
            vec![h.element(vec![1], vec![0]).unwrap(), h.element(vec![0], vec![1]).unwrap()],
        )
        .unwrap();
        let d = fox_derivative(&p.relators()[0], 1, &nu, CoeffDomain::Integers);
        // 1 + s + ... + s^5 with s of order 2: 3 + 3 s
        let s = nu.image_of_generator(1);
        let expected = GroupRingElem::term(&h, CoeffDomain::Integers, 3, &h.identity())
            + GroupRingElem::term(&h, CoeffDomain::Integers, 3, s);
        assert_eq!(d, expected);
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::zlinalg::elementary_divisors;
use crate::{Error, IntMatrix, Result};

/// `H ≅ Z^n ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with a fixed splitting.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianTarget {
    free_rank: usize,
    torsion_orders: Vec<u64>,
}

/// Element of an [`AbelianTarget`]: free coordinates and torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HElem {
    pub free: Vec<i64>,
    pub torsion: Vec<u64>,
}

impl AbelianTarget {
    pub fn new(free_rank: usize, torsion_orders: Vec<u64>) -> Result<Self> {
        if let Some(d) = torsion_orders.iter().find(|&&d| d < 2) {
            return Err(Error::constraint(format!("torsion order {d} must be at least 2")));
        }
        Ok(AbelianTarget {
            free_rank,
            torsion_orders,
        })
    }

    pub fn free(n: usize) -> Self {
        AbelianTarget {
            free_rank: n,
            torsion_orders: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[u64] {
        &self.torsion_orders
    }

    pub fn torsion_rank(&self) -> usize {
        self.torsion_orders.len()
    }

    /// `|T|`.
    pub fn torsion_size(&self) -> u64 {
        self.torsion_orders.iter().product()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion_orders.is_empty()
    }

    /// The same free part with the torsion dropped.
    pub fn free_part(&self) -> AbelianTarget {
        AbelianTarget::free(self.free_rank)
    }

    pub fn identity(&self) -> HElem {
        HElem {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion_orders.len()],
        }
    }

    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<HElem> {
        if free.len() != self.free_rank || torsion.len() != self.torsion_orders.len() {
            return Err(Error::mismatch(format!(
                "element with {} free and {} torsion coordinates for target {self}",
                free.len(),
                torsion.len()
            )));
        }
        Ok(HElem {
            free,
            torsion: torsion
                .iter()
                .zip(&self.torsion_orders)
                .map(|(&x, &d)| x.rem_euclid(d as i64) as u64)
                .collect(),
        })
    }

    pub fn add(&self, a: &HElem, b: &HElem) -> HElem {
        HElem {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion_orders)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        }
    }

    pub fn neg(&self, a: &HElem) -> HElem {
        HElem {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion_orders)
                .map(|(x, d)| (d - x) % d)
                .collect(),
        }
    }

    pub fn scale(&self, a: &HElem, k: i64) -> HElem {
        HElem {
            free: a.free.iter().map(|x| x * k).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion_orders)
                .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as u64)
                .collect(),
        }
    }

    pub fn is_identity(&self, a: &HElem) -> bool {
        a.free.iter().all(|&x| x == 0) && a.torsion.iter().all(|&x| x == 0)
    }

    /// Order of a torsion element; `None` if the free part is nonzero.
    pub fn order(&self, a: &HElem) -> Option<u64> {
        if a.free.iter().any(|&x| x != 0) {
            return None;
        }
        Some(
            a.torsion
                .iter()
                .zip(&self.torsion_orders)
                .map(|(&x, &d)| d / x.gcd(&d))
                .fold(1u64, |acc, o| acc.lcm(&o)),
        )
    }

    /// Mixed-radix index of a torsion vector (first factor most significant).
    pub fn torsion_index(&self, t: &[u64]) -> usize {
        t.iter()
            .zip(&self.torsion_orders)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn torsion_from_index(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.torsion_orders.len()];
        for (slot, &d) in out.iter_mut().zip(&self.torsion_orders).rev() {
            *slot = (idx % d as usize) as u64;
            idx /= d as usize;
        }
        out
    }

    /// True when the given elements generate the whole group, certified by
    /// the Smith form of the images stacked over the torsion relations.
    pub fn is_generated_by(&self, elems: &[HElem]) -> bool {
        let width = self.free_rank + self.torsion_orders.len();
        if width == 0 {
            return true;
        }
        let mut data = Vec::new();
        for e in elems {
            data.extend(e.free.iter().map(|&x| BigInt::from(x)));
            data.extend(e.torsion.iter().map(|&x| BigInt::from(x)));
        }
        for (i, &d) in self.torsion_orders.iter().enumerate() {
            for j in 0..width {
                data.push(if j == self.free_rank + i { BigInt::from(d) } else { BigInt::from(0) });
            }
        }
        let rows = elems.len() + self.torsion_orders.len();
        if rows < width {
            return false;
        }
        let m = IntMatrix::from_vec(rows, width, data);
        elementary_divisors(&m).iter().all(|d| d.is_one())
    }
}

impl fmt::Display for AbelianTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for d in &self.torsion_orders {
            write!(f, " + Z/{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_roundtrip() {
        let h = AbelianTarget::new(1, vec![2, 3]).unwrap();
        for i in 0..6 {
            assert_eq!(h.torsion_index(&h.torsion_from_index(i)), i);
        }
        assert_eq!(h.torsion_from_index(4), vec![1, 1]);
    }

    #[test]
    fn orders_and_generation() {
        let h = AbelianTarget::new(1, vec![4, 6]).unwrap();
        let e = h.element(vec![0], vec![2, 3]).unwrap();
        assert_eq!(h.order(&e), Some(2));
        let x = h.element(vec![1], vec![0, 0]).unwrap();
        assert_eq!(h.order(&x), None);
        let g1 = h.element(vec![0], vec![1, 0]).unwrap();
        let g2 = h.element(vec![0], vec![0, 1]).unwrap();
        assert!(h.is_generated_by(&[x.clone(), g1.clone(), g2]));
        assert!(!h.is_generated_by(&[x, g1]));
        assert!(AbelianTarget::new(1, vec![1]).is_err());
    }
}

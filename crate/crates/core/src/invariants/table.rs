//! Finite-cover tables: normalised Betti numbers and torsion growth along a
//! sequence of lattices.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::complexes::GroupRingComplex;
use crate::covers::{betti, finite_cover_complex, torsion_order, Lattice};
use crate::Rational;

/// Predicted limits appended to every row.
#[derive(Clone, Debug, PartialEq)]
pub struct Prediction {
    /// `(p, α_1)` for each requested characteristic.
    pub alpha1: Vec<(u64, Rational)>,
    pub m1: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitRow {
    pub min_norm: BigInt,
    /// `|Z^n / Γ|`.
    pub lattice_index: BigInt,
    /// `|H / Γ| = |Z^n / Γ| · |T|`, the number of sheets.
    pub sheets: u64,
    /// `(p, b_i)` per requested characteristic.
    pub betti: Vec<(u64, usize)>,
    pub log_torsion: f64,
    pub torsion_order: BigInt,
    /// Set when the row could not be computed; the other fields are then zero.
    pub error: Option<String>,
}

impl LimitRow {
    pub fn betti_ratio(&self, p: u64) -> Option<f64> {
        self.betti
            .iter()
            .find(|(q, _)| *q == p)
            .map(|&(_, b)| b as f64 / self.sheets as f64)
    }

    pub fn log_torsion_ratio(&self) -> f64 {
        self.log_torsion / self.sheets as f64
    }
}

fn row(c: &GroupRingComplex, i: usize, lattice: &Lattice, ps: &[u64]) -> LimitRow {
    let mut out = LimitRow {
        min_norm: lattice.min_norm().clone(),
        lattice_index: lattice.index().clone(),
        sheets: 0,
        betti: Vec::new(),
        log_torsion: 0.0,
        torsion_order: BigInt::from(1),
        error: None,
    };
    let result = (|| -> crate::Result<()> {
        let cover = finite_cover_complex(c, lattice)?;
        out.sheets = (lattice.index() * BigInt::from(c.target().torsion_size()))
            .to_u64()
            .unwrap_or(u64::MAX);
        for &p in ps {
            out.betti.push((p, betti(&cover, i, p)?));
        }
        let t = torsion_order(&cover, i)?;
        out.log_torsion = t.log;
        out.torsion_order = t.order();
        Ok(())
    })();
    if let Err(e) = result {
        out.error = Some(e.to_string());
    }
    out
}

/// One row per lattice, computed in parallel and returned in input order.
/// Failing rows carry their error and do not stop the run.
pub fn limit_table(c: &GroupRingComplex, i: usize, lattices: &[Lattice], ps: &[u64]) -> Vec<LimitRow> {
    lattices.par_iter().map(|l| row(c, i, l, ps)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::orbifold_complex;
    use crate::presentations::OrbifoldType;

    #[test]
    fn log_torsion_column_is_constant() {
        let tau = OrbifoldType::new(0, 2, vec![6], None).unwrap();
        let c = orbifold_complex(&tau, false).unwrap();
        let lattices: Vec<Lattice> = (1..=12).map(|n| Lattice::scalar(1, n).unwrap()).collect();
        let rows = limit_table(&c, 1, &lattices, &[0, 2, 3]);
        for (k, r) in rows.iter().enumerate() {
            assert!(r.error.is_none());
            assert!((r.log_torsion_ratio() - 6f64.ln()).abs() < 1e-12);
            assert_eq!(r.betti_ratio(0).unwrap() * r.sheets as f64, 1.0);
            assert_eq!(r.betti[1].1, k + 2);
        }
    }
}

//! Finite-index sublattices `Γ ⊂ Z^n`, the quotients `Z^n/Γ ⊕ T`, and
//! integral chain complexes of the corresponding finite covers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complexes::{GroupRingComplex, GroupRingElem};
use crate::presentations::{AbelianTarget, HElem};
use crate::scalar::{bigint_abs_log, check_characteristic};
use crate::zlinalg::{elementary_divisors, int_rank, int_rank_mod_p, smith_normal_form, SmithDecomposition};
use crate::{Error, IntMatrix, Result};

/// Finite-index sublattice spanned by the columns of a nonsingular basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: IntMatrix,
    smith: SmithDecomposition,
    u_inv: IntMatrix,
    index: BigInt,
    min_norm: BigInt,
}

impl Lattice {
    pub fn n(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.smith
    }

    /// `|Z^n / Γ| = |det B|`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    /// `⟨Γ⟩`: squared length of a shortest nonzero vector.
    pub fn min_norm(&self) -> &BigInt {
        &self.min_norm
    }

    /// `N_1 | ... | N_n`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.smith.diagonal()
    }

    /// `diag(N_1, ..., N_n)`.
    pub fn diagonal(ns: &[u64]) -> Result<Self> {
        let n = ns.len();
        lattice_from_basis(&IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::from(ns[i])
            } else {
                BigInt::zero()
            }
        }))
    }

    /// `N · Z^n`.
    pub fn scalar(n: usize, big_n: u64) -> Result<Self> {
        Lattice::diagonal(&vec![big_n; n])
    }

    /// Lower-triangular basis with diagonal entries in `1..=max_diag` and
    /// off-diagonal entries in `0..diag`, drawn from `seed`.
    pub fn random(n: usize, max_diag: u64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = IntMatrix::filled(n, n, BigInt::zero());
        for i in 0..n {
            let d = rng.gen_range(1..=max_diag.max(1));
            b.set(i, i, BigInt::from(d));
            for j in 0..i {
                b.set(i, j, BigInt::from(rng.gen_range(0..d)));
            }
        }
        lattice_from_basis(&b)
    }

    /// Membership test via the Smith transform: `U v ≡ 0 mod D`.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let d = self.smith.diagonal();
        (0..self.n()).all(|i| {
            let s: BigInt = (0..self.n()).map(|j| self.smith.u.get(i, j) * &v[j]).sum();
            s.mod_floor(&d[i]).is_zero()
        })
    }

    /// Coordinates of `v ∈ Γ` in the basis `B`: `V D^-1 U v`.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.n();
        let d = self.smith.diagonal();
        let mut w = Vec::with_capacity(n);
        for i in 0..n {
            let s: BigInt = (0..n).map(|j| self.smith.u.get(i, j) * &v[j]).sum();
            let (q, r) = s.div_mod_floor(&d[i]);
            if !r.is_zero() {
                return None;
            }
            w.push(q);
        }
        Some((0..n).map(|i| (0..n).map(|j| self.smith.v.get(i, j) * &w[j]).sum()).collect())
    }

    /// Sublattice given in the coordinates of this lattice's basis.
    pub fn compose(&self, inner: &Lattice) -> Result<Lattice> {
        lattice_from_basis(&self.basis.mul_with(inner.basis(), &BigInt::zero()))
    }
}

/// Builds a lattice from a square nonsingular basis (columns generate `Γ`).
pub fn lattice_from_basis(b: &IntMatrix) -> Result<Lattice> {
    let n = b.rows();
    if b.cols() != n {
        return Err(Error::constraint(format!("lattice basis must be square, got {}x{}", n, b.cols())));
    }
    if n == 0 {
        return Err(Error::constraint("lattice of rank 0"));
    }
    let smith = smith_normal_form(b);
    let d = smith.diagonal();
    if d.iter().any(Zero::is_zero) {
        return Err(Error::constraint("singular lattice basis"));
    }
    let index: BigInt = d.iter().product();
    let u_inv = unimodular_inverse(&smith.u);
    let mut lattice = Lattice {
        basis: b.clone(),
        smith,
        u_inv,
        index,
        min_norm: BigInt::zero(),
    };
    lattice.min_norm = shortest_norm(&lattice);
    Ok(lattice)
}

fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(u.get(i, j).clone())
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("unimodular matrix is invertible");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    IntMatrix::from_fn(n, n, |i, j| {
        let x = &a[i][n + j];
        debug_assert!(x.is_integer());
        x.to_integer()
    })
}

/// Enumerates all integer points of the ball of radius `|b_min|` (shortest
/// basis column) and keeps the lattice members; the ball contains at least
/// one nonzero lattice vector, hence a shortest one.
fn shortest_norm(l: &Lattice) -> BigInt {
    let n = l.n();
    let col_norm = |j: usize| -> BigInt { (0..n).map(|i| l.basis.get(i, j) * l.basis.get(i, j)).sum() };
    let bound = (0..n).map(col_norm).min().expect("n ≥ 1");
    let radius = bound.sqrt();
    let mut best = bound.clone();
    let mut v = vec![BigInt::zero(); n];
    fn rec(l: &Lattice, k: usize, v: &mut Vec<BigInt>, partial: &BigInt, radius: &BigInt, best: &mut BigInt) {
        if partial > best {
            return;
        }
        if k == v.len() {
            if !partial.is_zero() && partial < best && l.contains(v) {
                *best = partial.clone();
            }
            return;
        }
        let mut x = -radius.clone();
        while &x <= radius {
            let next = partial + &x * &x;
            if &next <= best {
                v[k] = x.clone();
                rec(l, k + 1, v, &next, radius, best);
            }
            x += 1;
        }
        v[k] = BigInt::zero();
    }
    rec(l, 0, &mut v, &BigInt::zero(), &radius, &mut best);
    best
}

/// `Q = Z^n/Γ ⊕ T` as a product of cyclic groups, elements indexed in
/// mixed radix (first factor most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuotient {
    lattice: Lattice,
    target: AbelianTarget,
    /// positions `i` with `N_i > 1`
    active: Vec<usize>,
    orders: Vec<u64>,
}

impl FiniteQuotient {
    pub fn new(target: &AbelianTarget, lattice: &Lattice) -> Result<Self> {
        if target.free_rank() != lattice.n() {
            return Err(Error::mismatch(format!(
                "lattice of rank {} for target {target}",
                lattice.n()
            )));
        }
        let d = lattice.invariant_factors();
        let active: Vec<usize> = (0..d.len()).filter(|&i| !d[i].is_one()).collect();
        let mut orders = Vec::new();
        for &i in &active {
            orders.push(
                d[i].to_u64()
                    .ok_or_else(|| Error::constraint(format!("quotient factor {} too large", d[i])))?,
            );
        }
        orders.extend_from_slice(target.torsion_orders());
        let size: u128 = orders.iter().map(|&o| o as u128).product();
        if size > (1u128 << 32) {
            return Err(Error::constraint(format!("quotient of order {size} is too large to enumerate")));
        }
        Ok(FiniteQuotient {
            lattice: lattice.clone(),
            target: target.clone(),
            active,
            orders,
        })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    /// Residue vector of `h ∈ Z^n ⊕ T`: `(U f mod N) ++ τ`.
    pub fn class(&self, h: &HElem) -> Vec<u64> {
        let u = &self.lattice.smith.u;
        let n = self.lattice.n();
        let mut out: Vec<u64> = self
            .active
            .iter()
            .zip(&self.orders)
            .map(|(&i, &d)| {
                let s: BigInt = (0..n).map(|j| u.get(i, j) * h.free[j]).sum();
                s.mod_floor(&BigInt::from(d)).to_u64().expect("residue fits")
            })
            .collect();
        out.extend_from_slice(&h.torsion);
        out
    }

    pub fn index_of(&self, residues: &[u64]) -> usize {
        residues
            .iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.orders.len()];
        for (slot, &d) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (idx % d as usize) as u64;
            idx /= d as usize;
        }
        out
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((x, y), d)| (x + y) % d).collect()
    }

    /// A coset representative in `Z^n` of the free residues (`U^-1 ρ`).
    pub fn free_representative(&self, residues: &[u64]) -> Vec<BigInt> {
        let n = self.lattice.n();
        let mut rho = vec![BigInt::zero(); n];
        for (k, &i) in self.active.iter().enumerate() {
            rho[i] = BigInt::from(residues[k]);
        }
        (0..n)
            .map(|i| (0..n).map(|j| self.lattice.u_inv.get(i, j) * &rho[j]).sum())
            .collect()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn target(&self) -> &AbelianTarget {
        &self.target
    }
}

/// Bounded complex of free abelian groups; `boundary(i)` is `C_{i+1} → C_i`
/// with rows indexed by `C_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl IntChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::constraint("boundary count must be one less than module count"));
        }
        for (i, b) in boundaries.iter().enumerate() {
            if b.shape() != (ranks[i + 1], ranks[i]) {
                return Err(Error::constraint(format!("boundary {} has shape {:?}", i + 1, b.shape())));
            }
        }
        for i in 1..boundaries.len() {
            let prod = boundaries[i].mul_with(&boundaries[i - 1], &BigInt::zero());
            if prod.entries().any(|(_, _, x)| !x.is_zero()) {
                return Err(Error::constraint(format!("∂∘∂ ≠ 0 at C_{} -> C_{}", i + 1, i - 1)));
            }
        }
        Ok(IntChainComplex { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    /// `C_{i+1} → C_i` (empty past the top degree).
    pub fn boundary(&self, i: usize) -> IntMatrix {
        self.boundaries
            .get(i)
            .cloned()
            .unwrap_or_else(|| IntMatrix::filled(0, self.rank(i), BigInt::zero()))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

fn regular_block(q: &FiniteQuotient, e: &GroupRingElem) -> Vec<(usize, usize, BigInt)> {
    let size = q.order();
    let mut block = std::collections::BTreeMap::<(usize, usize), BigInt>::new();
    for (g, c) in e.terms() {
        let shift = q.class(g);
        for row in 0..size {
            let col = q.index_of(&q.add(&q.element(row), &shift));
            *block.entry((row, col)).or_insert_with(BigInt::zero) += c;
        }
    }
    block
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|((r, c), v)| (r, c, v))
        .collect()
}

/// Integral chain complex of the `Q = Z^n/Γ ⊕ T` cover: every entry acts on
/// `Z[Q]` by its regular representation.
pub fn finite_cover_complex(c: &GroupRingComplex, lattice: &Lattice) -> Result<IntChainComplex> {
    if c.domain().characteristic() != 0 {
        return Err(Error::constraint("finite covers need an integral complex"));
    }
    let q = FiniteQuotient::new(c.target(), lattice)?;
    let size = q.order();
    let boundaries = c
        .boundaries()
        .iter()
        .map(|b| b.expand_blocks(size, size, &BigInt::zero(), |e| regular_block(&q, e)))
        .collect();
    IntChainComplex::new(c.ranks().iter().map(|r| r * size).collect(), boundaries)
}

/// Restriction of scalars from `Z[Z^n ⊕ T]` to `Z[Γ ⊕ T]`, with `Γ`
/// identified with `Z^n` through its basis: the complex of the intermediate
/// cover with its residual deck action.
pub fn restrict_to_sublattice(c: &GroupRingComplex, lattice: &Lattice) -> Result<GroupRingComplex> {
    let t = c.target();
    let free_only = AbelianTarget::free(t.free_rank());
    let q = FiniteQuotient::new(&free_only, lattice)?;
    let size = q.order();
    let reps: Vec<Vec<BigInt>> = (0..size).map(|k| q.free_representative(&q.element(k))).collect();
    let domain = c.domain();
    let zero = GroupRingElem::zero(t, domain);
    let boundaries = c
        .boundaries()
        .iter()
        .map(|b| {
            b.expand_blocks(size, size, &zero, |e| {
                let mut block = vec![zero.clone(); size * size];
                for (g, coeff) in e.terms() {
                    let f = HElem {
                        free: g.free.clone(),
                        torsion: Vec::new(),
                    };
                    let shift = q.class(&f);
                    for (row, rep) in reps.iter().enumerate() {
                        let col = q.index_of(&q.add(&q.element(row), &shift));
                        // x^f r_row = r_col x^γ with γ ∈ Γ
                        let gamma: Vec<BigInt> = (0..g.free.len())
                            .map(|i| BigInt::from(g.free[i]) + &rep[i] - &reps[col][i])
                            .collect();
                        let coords = lattice.coordinates(&gamma).expect("difference lies in Γ");
                        let h = HElem {
                            free: coords.iter().map(|x| x.to_i64().expect("small coordinate")).collect(),
                            torsion: g.torsion.clone(),
                        };
                        block[row * size + col].add_term(h, coeff.clone());
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
    GroupRingComplex::new(t.clone(), domain, c.ranks().iter().map(|r| r * size).collect(), boundaries)
}

fn rank_in(m: &IntMatrix, p: u64) -> usize {
    if p == 0 {
        int_rank(m)
    } else {
        int_rank_mod_p(m, p)
    }
}

/// `dim H_i(C; K)` for `K = Q` (`p = 0`) or `F_p`.
pub fn betti(c: &IntChainComplex, i: usize, p: u64) -> Result<usize> {
    if i >= c.ranks().len() {
        return Err(Error::constraint(format!("degree {i} outside the complex")));
    }
    if p != 0 {
        check_characteristic(p)?;
    }
    let incoming = rank_in(&c.boundary(i), p);
    let outgoing = if i == 0 { 0 } else { rank_in(&c.boundary(i - 1), p) };
    Ok(c.rank(i) - incoming - outgoing)
}

/// Order of the torsion subgroup of `H_i(C; Z)`, kept factored.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionOrder {
    /// Elementary divisors greater than one.
    pub factors: Vec<BigInt>,
    /// `Σ log d`.
    pub log: f64,
}

impl TorsionOrder {
    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }
}

/// `|H_i(C; Z)_tors|` from the elementary divisors of `∂: C_{i+1} → C_i`.
///
/// `coker ∂ = C_i / im ∂` contains `H_i` with free quotient
/// `C_i / ker ∂_{i-1} ⊂ C_{i-1}`, so its torsion is exactly that of `H_i`.
pub fn torsion_order(c: &IntChainComplex, i: usize) -> Result<TorsionOrder> {
    if i >= c.ranks().len() {
        return Err(Error::constraint(format!("degree {i} outside the complex")));
    }
    let b = c.boundary(i);
    let factors: Vec<BigInt> = if b.rows() == 0 || b.cols() == 0 {
        Vec::new()
    } else {
        elementary_divisors(&b)
            .into_iter()
            .map(|d| d.abs())
            .filter(|d| d > &BigInt::one())
            .collect()
    };
    let log = factors.iter().map(bigint_abs_log).sum();
    Ok(TorsionOrder { factors, log })
}

/// Integral chain complex of the `T`-cover (`Γ = Z^n`).
pub fn base_complex(c: &GroupRingComplex) -> Result<IntChainComplex> {
    let n = c.target().free_rank();
    if n == 0 {
        return Err(Error::constraint("target has free rank 0"));
    }
    finite_cover_complex(c, &Lattice::scalar(n, 1)?)
}

use std::fmt;

use super::{AbelianTarget, Epimorphism, GroupPresentation, Letter, Word};
use crate::{Error, Result};

/// Orbifold type `(g, r, μ)` with optional meridian orders `m_j | μ_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbifoldType {
    genus: usize,
    punctures: usize,
    multiplicities: Vec<u64>,
    divisors: Option<Vec<u64>>,
}

impl OrbifoldType {
    pub fn new(genus: usize, punctures: usize, multiplicities: Vec<u64>, divisors: Option<Vec<u64>>) -> Result<Self> {
        if genus == 0 && punctures <= 1 {
            return Err(Error::constraint(format!(
                "(g, r) = (0, {punctures}) is excluded: the base curve must not be P^1 or C"
            )));
        }
        if let Some(mu) = multiplicities.iter().find(|&&m| m < 2) {
            return Err(Error::constraint(format!("multiplicity {mu} must be at least 2")));
        }
        if let Some(ms) = &divisors {
            if ms.len() != multiplicities.len() {
                return Err(Error::constraint(format!(
                    "{} divisors m_j for {} multiplicities",
                    ms.len(),
                    multiplicities.len()
                )));
            }
            for (j, (&m, &mu)) in ms.iter().zip(&multiplicities).enumerate() {
                if m == 0 || mu % m != 0 {
                    return Err(Error::constraint(format!(
                        "m_{} = {m} does not divide mu_{} = {mu}",
                        j + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(OrbifoldType {
            genus,
            punctures,
            multiplicities,
            divisors,
        })
    }

    /// Parses `g=0,r=2,mu=6` or `g=1,r=0,mu=2:3` (multiplicities separated by `:`).
    pub fn parse_spec(spec: &str, divisors: Option<Vec<u64>>) -> Result<Self> {
        let mut g = None;
        let mut r = None;
        let mut mu = Vec::new();
        let mut col = 1;
        for part in spec.split(',') {
            let part_trim = part.trim();
            let (k, v) = part_trim
                .split_once('=')
                .ok_or_else(|| Error::parse(1, col, format!("expected key=value, found '{part_trim}'")))?;
            let bad = |what: &str| Error::parse(1, col, format!("invalid {what} '{v}'"));
            match k.trim() {
                "g" => g = Some(v.trim().parse().map_err(|_| bad("genus"))?),
                "r" => r = Some(v.trim().parse().map_err(|_| bad("puncture count"))?),
                "mu" => {
                    if !v.trim().is_empty() {
                        mu = v
                            .split(':')
                            .map(|x| x.trim().parse::<u64>())
                            .collect::<std::result::Result<_, _>>()
                            .map_err(|_| bad("multiplicity list"))?;
                    }
                }
                other => return Err(Error::parse(1, col, format!("unknown orbifold key '{other}'"))),
            }
            col += part.len() + 1;
        }
        let g = g.ok_or_else(|| Error::parse(1, 1, "missing g="))?;
        let r = r.ok_or_else(|| Error::parse(1, 1, "missing r="))?;
        OrbifoldType::new(g, r, mu, divisors)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn divisors(&self) -> Option<&[u64]> {
        self.divisors.as_deref()
    }

    pub fn with_divisors(&self, divisors: Option<Vec<u64>>) -> Result<Self> {
        OrbifoldType::new(self.genus, self.punctures, self.multiplicities.clone(), divisors)
    }

    /// Number of multiple fibres `s`.
    pub fn s(&self) -> usize {
        self.multiplicities.len()
    }

    /// `prod μ_j` (1 for an empty list).
    pub fn multiplicity_product(&self) -> u64 {
        self.multiplicities.iter().product()
    }

    /// Generators that are not meridians of multiple fibres.
    pub fn surface_generator_count(&self) -> usize {
        if self.punctures >= 1 {
            2 * self.genus + self.punctures - 1
        } else {
            2 * self.genus
        }
    }

    /// Index of the meridian generator `γ_j` (zero-based `j`).
    pub fn meridian_generator(&self, j: usize) -> usize {
        self.surface_generator_count() + j
    }

    /// Free rank of the abelianized orbifold group.
    pub fn free_rank(&self) -> usize {
        self.surface_generator_count()
    }

    /// Orders of `ν(γ_j)` in `T`; errors if some `ν(γ_j)` has a free component.
    pub fn meridian_orders(&self, nu: &Epimorphism) -> Result<Vec<u64>> {
        (0..self.s())
            .map(|j| {
                nu.target()
                    .order(nu.image_of_generator(self.meridian_generator(j)))
                    .ok_or_else(|| Error::constraint(format!("ν(γ_{}) has a nonzero free component", j + 1)))
            })
            .collect()
    }
}

impl fmt::Display for OrbifoldType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mu: Vec<String> = self.multiplicities.iter().map(|m| m.to_string()).collect();
        write!(f, "g={},r={},mu={}", self.genus, self.punctures, mu.join(":"))
    }
}

/// Presentation of `π_1^orb(Σ_{g,r}, μ)`.
///
/// Generators `a_1, b_1, ..., a_g, b_g`, then `c_1, ..., c_{r-1}` when
/// `r ≥ 1`, then `γ_1, ..., γ_s`. Relators `γ_j^{μ_j}`; for `r = 0` the
/// surface relator `prod [a_i, b_i] · prod γ_j` comes first.
pub fn orbifold_presentation(tau: &OrbifoldType) -> GroupPresentation {
    let k = tau.surface_generator_count() + tau.s();
    let mut relators = Vec::new();
    if tau.punctures == 0 {
        let mut w = Word::default();
        for i in 0..tau.genus {
            let a = Word::power(2 * i, 1);
            let b = Word::power(2 * i + 1, 1);
            w = w.concat(&Word::commutator(&a, &b));
        }
        for j in 0..tau.s() {
            w.0.push(Letter::new(tau.meridian_generator(j)));
        }
        relators.push(w);
    }
    for (j, &mu) in tau.multiplicities.iter().enumerate() {
        relators.push(Word::power(tau.meridian_generator(j), mu as i64));
    }
    GroupPresentation::new(k, relators).expect("orbifold presentation is well formed")
}

/// A standard epimorphism `π_1^orb → H` through which `ν` factors.
///
/// The first `n` surface generators go to the free basis of `H`; meridians go
/// to elements of order `m_j` in `T` (to 0 when no divisors are given);
/// leftover surface generators cover any torsion factor not yet hit.
pub fn orbifold_epimorphism(tau: &OrbifoldType, target: &AbelianTarget) -> Result<Epimorphism> {
    let p = orbifold_presentation(tau);
    let n = target.free_rank();
    let surface = tau.surface_generator_count();
    if n > surface {
        return Err(Error::constraint(format!(
            "free rank {n} exceeds the {surface} surface generators of {tau}"
        )));
    }
    if n == 0 {
        return Err(Error::constraint("target must have free rank at least 1"));
    }
    let orders = target.torsion_orders();
    let mut images = vec![target.identity(); p.generator_count()];
    for (j, img) in images.iter_mut().enumerate().take(n) {
        img.free[j] = 1;
    }
    let mut covered = vec![false; orders.len()];
    let s = tau.s();
    match tau.divisors() {
        Some(ms) if s > 0 => {
            if orders.is_empty() && ms.iter().any(|&m| m > 1) {
                return Err(Error::constraint(format!(
                    "meridian orders {ms:?} need a torsion part, but the target {target} is free"
                )));
            }
            let mut cursor = 0usize;
            let last_free = if tau.punctures == 0 { s - 1 } else { s };
            for (j, &m) in ms.iter().enumerate().take(last_free) {
                if m == 1 {
                    continue;
                }
                let Some(f) = (0..orders.len())
                    .map(|k| (cursor + k) % orders.len())
                    .find(|&f| orders[f].is_multiple_of(m))
                else {
                    return Err(Error::constraint(format!(
                        "no torsion factor of {target} has an element of order m_{} = {m}",
                        j + 1
                    )));
                };
                images[tau.meridian_generator(j)].torsion[f] = orders[f] / m;
                covered[f] = true;
                cursor = f + 1;
            }
            if tau.punctures == 0 {
                // surface relation forces the meridian images to sum to 0
                let sum = (0..s - 1).fold(target.identity(), |acc, j| {
                    target.add(&acc, &images[tau.meridian_generator(j)])
                });
                images[tau.meridian_generator(s - 1)] = target.neg(&sum);
            }
        }
        _ => {}
    }
    let mut spare = n..surface;
    for f in (0..orders.len()).filter(|&f| !covered[f]) {
        let Some(g) = spare.next() else { break };
        images[g].torsion[f] = 1;
    }
    let nu = Epimorphism::new(&p, target.clone(), images).map_err(|e| match e {
        Error::Constraint(msg) => Error::constraint(format!("{tau} onto {target}: {msg}")),
        other => other,
    })?;
    if let Some(ms) = tau.divisors() {
        let got = tau.meridian_orders(&nu)?;
        for (j, (&m, &o)) in ms.iter().zip(&got).enumerate() {
            if m != o {
                return Err(Error::constraint(format!(
                    "ν(γ_{}) has order {o} in T but m_{} = {m}",
                    j + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(nu)
}

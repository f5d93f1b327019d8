use serde::{Deserialize, Serialize};

use super::poset::{FinitePoset, PosetError};
use crate::finmonoid::{MonoidError, PartialFinitenessMonoid};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PomonoidError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("Cayley table must be {n}×{n} with entries below {n}")]
    BadTable { n: usize },
    #[error("unit index {0} out of range")]
    BadUnit(usize),
    #[error("operation is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("{0} is not a two-sided unit")]
    NotUnit(String),
    #[error("operation is not monotone: {0} ≤ {1} but translating by {2} breaks the order")]
    NotMonotone(String, String, String),
    #[error("pomonoid is not strict: {0} < {1} but translating by {2} collapses the inequality")]
    NotStrict(String, String, String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A monoid in the category of posets: a finite poset with an associative,
/// unital operation that is monotone in each argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitePomonoid {
    #[serde(flatten)]
    poset: FinitePoset,
    cayley: Vec<Vec<usize>>,
    unit: usize,
}

#[derive(Deserialize)]
struct RawPomonoid {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
    cayley: Vec<Vec<usize>>,
    unit: usize,
}

impl<'de> Deserialize<'de> for FinitePomonoid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPomonoid::deserialize(d)?;
        let poset = FinitePoset::new(raw.elements, raw.leq).map_err(serde::de::Error::custom)?;
        FinitePomonoid::new(poset, raw.cayley, raw.unit).map_err(serde::de::Error::custom)
    }
}

impl FinitePomonoid {
    pub fn new(poset: FinitePoset, cayley: Vec<Vec<usize>>, unit: usize) -> Result<Self, PomonoidError> {
        let n = poset.len();
        if cayley.len() != n || cayley.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(PomonoidError::BadTable { n });
        }
        if unit >= n {
            return Err(PomonoidError::BadUnit(unit));
        }
        let l = |i: usize| poset.label(i).to_string();
        for a in 0..n {
            if cayley[unit][a] != a || cayley[a][unit] != a {
                return Err(PomonoidError::NotUnit(l(unit)));
            }
            for b in 0..n {
                for c in 0..n {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(PomonoidError::NotAssociative(l(a), l(b), l(c)));
                    }
                    if poset.leq(a, b) && !(poset.leq(cayley[a][c], cayley[b][c]) && poset.leq(cayley[c][a], cayley[c][b])) {
                        return Err(PomonoidError::NotMonotone(l(a), l(b), l(c)));
                    }
                }
            }
        }
        Ok(FinitePomonoid { poset, cayley, unit })
    }

    /// The one-element pomonoid.
    pub fn trivial() -> Self {
        FinitePomonoid::new(FinitePoset::chain(1), vec![vec![0]], 0).expect("trivial pomonoid")
    }

    /// ℤ/n under addition with the discrete order.
    pub fn cyclic_discrete(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinitePomonoid::new(FinitePoset::antichain(n), table, 0).expect("cyclic group")
    }

    /// `{0..=n}` with addition capped at `n` and the usual order.
    pub fn capped_addition(n: usize) -> Self {
        let table = (0..=n).map(|a| (0..=n).map(|b| (a + b).min(n)).collect()).collect();
        FinitePomonoid::new(FinitePoset::chain(n + 1), table, 0).expect("capped addition")
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    /// First `(s, s', t)` with `s < s'` whose translate by `t` on one side is
    /// not strict, if any.
    pub fn strictness_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.poset.len();
        for s in 0..n {
            for s2 in 0..n {
                if !self.poset.lt(s, s2) {
                    continue;
                }
                for t in 0..n {
                    let right = self.poset.lt(self.op(s, t), self.op(s2, t));
                    let left = self.poset.lt(self.op(t, s), self.op(t, s2));
                    if !(right && left) {
                        return Some((s, s2, t));
                    }
                }
            }
        }
        None
    }

    pub fn is_strict(&self) -> bool {
        self.strictness_violation().is_none()
    }
}

pub fn is_strict_pomonoid(m: &FinitePomonoid) -> bool {
    m.is_strict()
}

/// Views a strict finite pomonoid as a total finiteness monoid on its carrier.
/// Every subset of a finite carrier is finitary, so the admitted descriptors
/// are the finite sets and decompositions come straight from the Cayley table.
pub fn embed_finite_pomonoid(m: &FinitePomonoid) -> Result<PartialFinitenessMonoid, PomonoidError> {
    if let Some((s, s2, t)) = m.strictness_violation() {
        let l = |i: usize| m.poset.label(i).to_string();
        return Err(PomonoidError::NotStrict(l(s), l(s2), l(t)));
    }
    let table = m.cayley.iter().map(|row| row.iter().map(|&v| Some(v)).collect()).collect();
    Ok(PartialFinitenessMonoid::from_table(
        m.poset.labels().to_vec(),
        table,
        m.unit,
        m.poset.clone(),
    )?)
}

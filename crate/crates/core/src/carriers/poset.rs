use serde::{Deserialize, Serialize};

/// Default cap on the number of elements `largest_antichain` accepts.
pub const ANTICHAIN_SIZE_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("order matrix must be {n}×{n}")]
    NotSquare { n: usize },
    #[error("order is not reflexive at {0}")]
    NotReflexive(String),
    #[error("order is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive at ({0}, {1}, {2})")]
    NotTransitive(String, String, String),
    #[error("poset has {size} elements, above the search bound {bound}")]
    TooLarge { size: usize, bound: usize },
}

/// A finite poset given by labels and a boolean order matrix over their
/// indices. Construction checks reflexivity, antisymmetry and transitivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitePoset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

#[derive(Deserialize)]
struct RawPoset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPoset::deserialize(d)?;
        FinitePoset::new(raw.elements, raw.leq).map_err(serde::de::Error::custom)
    }
}

impl FinitePoset {
    pub fn new(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, PosetError> {
        let n = elements.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(PosetError::NotSquare { n });
        }
        let lab = |i: usize| elements[i].clone();
        for i in 0..n {
            if !leq[i][i] {
                return Err(PosetError::NotReflexive(lab(i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(PosetError::NotAntisymmetric(lab(i), lab(j)));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(PosetError::NotTransitive(lab(i), lab(j), lab(k)));
                    }
                }
            }
        }
        Ok(FinitePoset { elements, leq })
    }

    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self, PosetError> {
        let n = labels.len();
        let m = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        FinitePoset::new(labels, m)
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_relation((0..n).map(|i| i.to_string()).collect(), |i, j| i <= j).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relation((0..n).map(|i| i.to_string()).collect(), |i, j| i == j).expect("antichain")
    }

    /// Positive divisors of `n` ordered by divisibility, listed ascending.
    pub fn divisors(n: u64) -> Self {
        let ds: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        Self::from_relation(ds.iter().map(|d| d.to_string()).collect(), |i, j| ds[j].is_multiple_of(ds[i]))
            .expect("divisibility is a partial order")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|l| l == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] || self.leq[j][i]
    }

    /// The opposite order on the same labels.
    pub fn dual(&self) -> Self {
        let n = self.len();
        FinitePoset {
            elements: self.elements.clone(),
            leq: (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect(),
        }
    }

    /// A maximum-length chain, bottom first, found as a longest path in the
    /// DAG of strict comparisons.
    pub fn longest_chain(&self) -> Vec<usize> {
        let n = self.len();
        // sorting by down-set size gives a linear extension
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| self.leq[j][i]).count());

        let mut len = vec![1usize; n];
        let mut prev: Vec<Option<usize>> = vec![None; n];
        for (pos, &j) in order.iter().enumerate() {
            for &i in &order[..pos] {
                if self.lt(i, j) && len[i] + 1 > len[j] {
                    len[j] = len[i] + 1;
                    prev[j] = Some(i);
                }
            }
        }
        let Some(mut cur) = (0..n).max_by_key(|&i| (len[i], std::cmp::Reverse(i))) else {
            return Vec::new();
        };
        let mut chain = vec![cur];
        while let Some(p) = prev[cur] {
            chain.push(p);
            cur = p;
        }
        chain.reverse();
        chain
    }

    pub fn largest_antichain(&self) -> Result<Vec<usize>, PosetError> {
        self.largest_antichain_bounded(ANTICHAIN_SIZE_BOUND)
    }

    /// A maximum set of pairwise incomparable elements, by exhaustive
    /// branch-and-bound search. Refuses posets with more than `bound` elements.
    pub fn largest_antichain_bounded(&self, bound: usize) -> Result<Vec<usize>, PosetError> {
        let n = self.len();
        if n > bound || n > 63 {
            return Err(PosetError::TooLarge { size: n, bound });
        }
        let incomparable: Vec<u64> = (0..n)
            .map(|i| (0..n).filter(|&j| !self.comparable(i, j)).fold(0u64, |m, j| m | 1 << j))
            .collect();

        fn search(cand: u64, cur: u64, best: &mut u64, inc: &[u64]) {
            if cand == 0 {
                if cur.count_ones() > best.count_ones() {
                    *best = cur;
                }
                return;
            }
            if cur.count_ones() + cand.count_ones() <= best.count_ones() {
                return;
            }
            let i = cand.trailing_zeros() as usize;
            let bit = 1u64 << i;
            search(cand & inc[i], cur | bit, best, inc);
            search(cand & !bit, cur, best, inc);
        }

        let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        let mut best = 0u64;
        search(all, 0, &mut best, &incomparable);
        Ok((0..n).filter(|&i| best >> i & 1 == 1).collect())
    }

    pub fn is_chain(&self, xs: &[usize]) -> bool {
        xs.windows(2).all(|w| self.lt(w[0], w[1]))
    }

    pub fn is_antichain(&self, xs: &[usize]) -> bool {
        xs.iter()
            .enumerate()
            .all(|(a, &i)| xs[a + 1..].iter().all(|&j| i != j && !self.comparable(i, j)))
    }
}

/// True iff `f` (given by its values on `p`'s indices) maps every strict
/// comparison of `p` to a strict comparison of `q`.
pub fn is_strict_map(f: &[usize], p: &FinitePoset, q: &FinitePoset) -> bool {
    if f.len() != p.len() || f.iter().any(|&v| v >= q.len()) {
        return false;
    }
    (0..p.len()).all(|i| (0..p.len()).all(|j| !p.lt(i, j) || q.lt(f[i], f[j])))
}

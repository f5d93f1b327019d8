use std::fmt;

use serde::Serialize;

use crate::finmonoid::{shortlex, MonoidElement, SupportDescriptor};

/// The closed catalog of ordered monoid carriers.
///
/// | carrier | set | product | order |
/// |---|---|---|---|
/// | `NatUsual` | ℕ | + | ≤ |
/// | `NatDiscrete` | ℕ | + | = |
/// | `IntUsual` | ℤ | + | ≤ |
/// | `IntDiscrete` | ℤ | + | = |
/// | `PosNatMulUsual` | ℕ∖{0} | × | ≤ |
/// | `PosNatDivisibility` | ℕ∖{0} | × | divides |
/// | `RationalGrid` | ℚ | + | ≤ |
/// | `FreeWords` | A* | concatenation | length, then lexicographic |
/// | `Truncated(n)` | {0..n} | + when the sum is ≤ n | ≤ |
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CatalogCarrier {
    NatUsual,
    NatDiscrete,
    IntUsual,
    IntDiscrete,
    PosNatMulUsual,
    PosNatDivisibility,
    RationalGrid,
    FreeWords(Vec<char>),
    Truncated(u64),
}

impl CatalogCarrier {
    /// One representative of every catalog carrier.
    pub fn catalog() -> Vec<CatalogCarrier> {
        vec![
            CatalogCarrier::NatUsual,
            CatalogCarrier::NatDiscrete,
            CatalogCarrier::IntUsual,
            CatalogCarrier::IntDiscrete,
            CatalogCarrier::PosNatMulUsual,
            CatalogCarrier::PosNatDivisibility,
            CatalogCarrier::RationalGrid,
            CatalogCarrier::FreeWords(vec!['x', 'y']),
            CatalogCarrier::Truncated(4),
        ]
    }

    /// Short name, also accepted by [`CatalogCarrier::parse`].
    pub fn name(&self) -> String {
        match self {
            CatalogCarrier::NatUsual => "nat".into(),
            CatalogCarrier::NatDiscrete => "nat-discrete".into(),
            CatalogCarrier::IntUsual => "int".into(),
            CatalogCarrier::IntDiscrete => "int-discrete".into(),
            CatalogCarrier::PosNatMulUsual => "posnat-mul".into(),
            CatalogCarrier::PosNatDivisibility => "posnat-div".into(),
            CatalogCarrier::RationalGrid => "rational".into(),
            CatalogCarrier::FreeWords(a) => format!("words:{}", a.iter().collect::<String>()),
            CatalogCarrier::Truncated(n) => format!("trunc:{n}"),
        }
    }

    pub fn parse(spec: &str) -> Option<CatalogCarrier> {
        let spec = spec.trim();
        Some(match spec {
            "nat" => CatalogCarrier::NatUsual,
            "nat-discrete" => CatalogCarrier::NatDiscrete,
            "int" => CatalogCarrier::IntUsual,
            "int-discrete" => CatalogCarrier::IntDiscrete,
            "posnat-mul" | "dirichlet" => CatalogCarrier::PosNatMulUsual,
            "posnat-div" => CatalogCarrier::PosNatDivisibility,
            "rational" | "puiseux" => CatalogCarrier::RationalGrid,
            _ => {
                if let Some(a) = spec.strip_prefix("words:") {
                    CatalogCarrier::FreeWords(a.chars().collect())
                } else {
                    let n = spec.strip_prefix("trunc:")?;
                    CatalogCarrier::Truncated(n.trim().parse().ok()?)
                }
            }
        })
    }

    /// The carrier's order on two valid elements.
    pub fn leq(&self, a: &MonoidElement, b: &MonoidElement) -> bool {
        use MonoidElement as E;
        match (self, a, b) {
            (CatalogCarrier::NatDiscrete | CatalogCarrier::IntDiscrete, _, _) => a == b,
            (CatalogCarrier::PosNatDivisibility, E::PosNat(x), E::PosNat(y)) => *x != 0 && y % x == 0,
            (CatalogCarrier::FreeWords(_), E::Word(x), E::Word(y)) => shortlex(x, y).is_le(),
            _ => a <= b,
        }
    }
}

impl fmt::Display for CatalogCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Order-theoretic profile of a subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderClassification {
    pub artinian: bool,
    pub noetherian: bool,
    pub narrow: bool,
    pub finite: bool,
}

impl OrderClassification {
    const fn new(artinian: bool, noetherian: bool, narrow: bool, finite: bool) -> Self {
        OrderClassification {
            artinian,
            noetherian,
            narrow,
            finite,
        }
    }

    /// The finitary condition: artinian and narrow.
    pub fn is_finitary(&self) -> bool {
        self.artinian && self.narrow
    }

    /// Artinian, noetherian and narrow together force finiteness.
    pub fn respects_finiteness_lemma(&self) -> bool {
        !(self.artinian && self.noetherian && self.narrow) || self.finite
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("descriptor {descriptor} is not meaningful on carrier {carrier}")]
    Mismatch { descriptor: String, carrier: String },
    #[error("classification of {0} is artinian, noetherian and narrow but infinite")]
    FinitenessLemma(String),
}

/// Classifies the subset described by `desc` under the carrier's order.
///
/// The rules are exact for the closed descriptor grammar:
/// - finite sets have every property;
/// - ℕ, ℕ∖{0} (usual order), A* (shortlex) and the tails `u_{a,n}`, `[a, ∞)`
///   are well-orders of type ω: artinian and narrow, not noetherian;
/// - an infinite discrete order is an infinite antichain;
/// - divisibility on ℕ∖{0} is well-founded, but has the primes as an infinite
///   antichain and `1 | 2 | 4 | …` as an infinite ascending chain;
/// - ℤ and ℚ with the usual order are totally ordered with infinite chains both ways.
pub fn classify_subset(
    carrier: &CatalogCarrier,
    desc: &SupportDescriptor,
) -> Result<OrderClassification, ClassifyError> {
    use CatalogCarrier as C;
    use SupportDescriptor as D;
    let mismatch = || ClassifyError::Mismatch {
        descriptor: desc.to_string(),
        carrier: carrier.name(),
    };
    let omega = OrderClassification::new(true, false, true, false);
    let c = match (carrier, desc) {
        (_, D::Finite(set)) => {
            let m = crate::finmonoid::PartialFinitenessMonoid::catalog(carrier.clone()).map_err(|_| mismatch())?;
            if set.iter().any(|e| m.validate(e).is_err()) {
                return Err(mismatch());
            }
            OrderClassification::new(true, true, true, true)
        }
        (C::NatUsual | C::PosNatMulUsual | C::FreeWords(_), D::All) => omega,
        (C::NatDiscrete | C::IntDiscrete, D::All) => OrderClassification::new(true, true, false, false),
        (C::IntUsual | C::RationalGrid, D::All) => OrderClassification::new(false, false, true, false),
        (C::PosNatDivisibility, D::All) => OrderClassification::new(true, false, false, false),
        (C::Truncated(_), D::All) => OrderClassification::new(true, true, true, true),
        (C::RationalGrid, D::GridTail { n, .. }) if *n >= 1 => omega,
        (C::IntUsual, D::TailGe { .. }) => omega,
        _ => return Err(mismatch()),
    };
    if !c.respects_finiteness_lemma() {
        return Err(ClassifyError::FinitenessLemma(desc.to_string()));
    }
    Ok(c)
}

/// Indices of a longest subsequence that is non-decreasing in the carrier's
/// order, by quadratic dynamic programming over the order relation.
pub fn increasing_subsequence(carrier: &CatalogCarrier, seq: &[MonoidElement]) -> Vec<usize> {
    let n = seq.len();
    let mut len = vec![1usize; n];
    let mut prev: Vec<Option<usize>> = vec![None; n];
    for j in 0..n {
        for i in 0..j {
            if carrier.leq(&seq[i], &seq[j]) && len[i] + 1 > len[j] {
                len[j] = len[i] + 1;
                prev[j] = Some(i);
            }
        }
    }
    let Some(mut cur) = (0..n).max_by_key(|&i| (len[i], std::cmp::Reverse(i))) else {
        return Vec::new();
    };
    let mut out = vec![cur];
    while let Some(p) = prev[cur] {
        out.push(p);
        cur = p;
    }
    out.reverse();
    out
}

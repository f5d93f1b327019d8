use std::collections::BTreeSet;
use std::fmt;

use super::MonoidElement;

/// Symbolic over-approximation of a support set.
///
/// Which variants a carrier admits is decided by
/// [`classify_subset`](crate::carriers::classify_subset): exactly the
/// artinian and narrow ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SupportDescriptor {
    Finite(BTreeSet<MonoidElement>),
    All,
    /// `{ i/n : i ∈ ℤ, i ≥ a }` in ℚ.
    GridTail { a: i64, n: u64 },
    /// `{ v ∈ ℤ : v ≥ a }`.
    TailGe { a: i64 },
}

impl SupportDescriptor {
    pub fn empty() -> Self {
        SupportDescriptor::Finite(BTreeSet::new())
    }

    pub fn finite(elems: impl IntoIterator<Item = MonoidElement>) -> Self {
        SupportDescriptor::Finite(elems.into_iter().collect())
    }

    pub fn is_empty_set(&self) -> bool {
        matches!(self, SupportDescriptor::Finite(s) if s.is_empty())
    }
}

impl fmt::Display for SupportDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportDescriptor::Finite(s) => {
                f.write_str("Finite{")?;
                for (i, e) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("}")
            }
            SupportDescriptor::All => f.write_str("All"),
            SupportDescriptor::GridTail { a, n } => write!(f, "GridTail{{a={a},n={n}}}"),
            SupportDescriptor::TailGe { a } => write!(f, "TailGE{{a={a}}}"),
        }
    }
}

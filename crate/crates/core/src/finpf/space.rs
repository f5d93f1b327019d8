use std::collections::BTreeSet;
use std::fmt;

use super::FinPfError;

/// Largest carrier on which the powerset is materialized.
pub const POWERSET_LIMIT: usize = 16;

/// A subset of a finite carrier `{0..n}` as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n == 0 {
            Subset(0)
        } else {
            Subset(u64::MAX >> (64 - n))
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_indices(xs: impl IntoIterator<Item = usize>) -> Subset {
        Subset(xs.into_iter().fold(0, |m, i| m | 1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn intersect(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

/// Every subset of a finite carrier is finite. Kept as a named predicate so
/// the perp and hom-space conditions read as they are defined.
pub(crate) fn is_finite(_: Subset) -> bool {
    true
}

/// A finite carrier with an arbitrary family of subsets. Not necessarily a
/// finiteness space: restricted families are used to exercise the condition
/// checkers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    carrier: Vec<String>,
    family: BTreeSet<Subset>,
}

impl SetSystem {
    pub fn new(carrier: Vec<String>, family: impl IntoIterator<Item = Subset>) -> Result<Self, FinPfError> {
        let n = carrier.len();
        if n > 63 {
            return Err(FinPfError::TooLarge { size: n, bound: 63 });
        }
        let full = Subset::full(n);
        let family: BTreeSet<Subset> = family.into_iter().collect();
        if let Some(bad) = family.iter().find(|u| !u.is_subset_of(full)) {
            return Err(FinPfError::Invalid(format!("subset {:#b} leaves the carrier", bad.0)));
        }
        Ok(SetSystem { carrier, family })
    }

    /// The full powerset: the only finiteness structure on a finite set.
    pub fn powerset(carrier: Vec<String>) -> Result<Self, FinPfError> {
        let n = carrier.len();
        check_powerset(n)?;
        Self::new(carrier, (0..1u64 << n).map(Subset))
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn family(&self) -> &BTreeSet<Subset> {
        &self.family
    }

    pub fn contains(&self, u: Subset) -> bool {
        self.family.contains(&u)
    }

    /// Whether `u'` meets every member of the family in a finite set.
    pub fn perp_contains(&self, u2: Subset) -> bool {
        self.family.iter().all(|&u| is_finite(u.intersect(u2)))
    }

    /// `{u' ⊆ X : u' ∩ u finite for all u in the family}`.
    pub fn perp(&self) -> Result<SetSystem, FinPfError> {
        let n = self.size();
        check_powerset(n)?;
        let fam = (0..1u64 << n).map(Subset).filter(|&u2| self.perp_contains(u2));
        SetSystem::new(self.carrier.clone(), fam)
    }

    /// `U = U^⊥⊥`.
    pub fn is_finiteness_space(&self) -> Result<bool, FinPfError> {
        Ok(self.perp()?.perp()?.family == self.family)
    }

    pub fn is_subfamily_of(&self, other: &SetSystem) -> bool {
        self.family.is_subset(&other.family)
    }

    /// `{ w ⊆ u × v }` on the product carrier, indexed `i·|Y| + j`.
    pub fn tensor(&self, other: &SetSystem) -> Result<SetSystem, FinPfError> {
        let (n, m) = (self.size(), other.size());
        check_powerset(n * m)?;
        let mut fam = BTreeSet::new();
        for &u in &self.family {
            for &v in &other.family {
                let prod = Subset::from_indices(u.iter().flat_map(|i| v.iter().map(move |j| i * m + j)));
                // down-closure
                let mut sub = prod.0;
                loop {
                    fam.insert(Subset(sub));
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & prod.0;
                }
            }
        }
        let labels = pair_labels(&self.carrier, &other.carrier);
        SetSystem::new(labels, fam)
    }
}

pub(crate) fn check_powerset(n: usize) -> Result<(), FinPfError> {
    if n > POWERSET_LIMIT {
        Err(FinPfError::TooLarge {
            size: n,
            bound: POWERSET_LIMIT,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn pair_labels(a: &[String], b: &[String]) -> Vec<String> {
    a.iter().flat_map(|x| b.iter().map(move |y| format!("({x},{y})"))).collect()
}

/// A finite finiteness space. Its structure is forced to be the full powerset,
/// so only the carrier is stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSpace {
    labels: Vec<String>,
}

impl FinSpace {
    pub fn new(labels: Vec<String>) -> Self {
        FinSpace { labels }
    }

    /// Carrier `{0, 1, …, n-1}`.
    pub fn sized(n: usize) -> Self {
        FinSpace::new((0..n).map(|i| i.to_string()).collect())
    }

    /// The empty space, a zero object.
    pub fn zero() -> Self {
        FinSpace::sized(0)
    }

    /// The tensor unit `({∗}, P({∗}))`.
    pub fn unit() -> Self {
        FinSpace::new(vec!["*".into()])
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn set_system(&self) -> Result<SetSystem, FinPfError> {
        SetSystem::powerset(self.labels.clone())
    }

    /// Cartesian product carrier; pair `(i, j)` sits at `i·|Y| + j`.
    pub fn tensor(&self, other: &FinSpace) -> FinSpace {
        FinSpace::new(pair_labels(&self.labels, &other.labels))
    }
}

impl fmt::Display for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    }

    #[test]
    fn perp_on_finite_carriers_is_everything() {
        let s = SetSystem::new(labels(2), [Subset::from_indices([0])]).unwrap();
        assert_eq!(s.perp().unwrap().family().len(), 4);

        let empty = SetSystem::new(vec![], [Subset::EMPTY]).unwrap();
        let p = empty.perp().unwrap();
        assert_eq!(p.family().iter().copied().collect::<Vec<_>>(), vec![Subset::EMPTY]);

        let s3 = SetSystem::new(labels(3), [Subset::from_indices([0, 2]), Subset::EMPTY]).unwrap();
        let p1 = s3.perp().unwrap();
        assert_eq!(p1.perp().unwrap().perp().unwrap(), p1);
        assert!(!s3.is_finiteness_space().unwrap());
        assert!(SetSystem::powerset(labels(3)).unwrap().is_finiteness_space().unwrap());
    }

    #[test]
    fn rejects_out_of_range_subsets() {
        assert!(SetSystem::new(labels(2), [Subset::from_indices([3])]).is_err());
        assert!(SetSystem::powerset(labels(17)).is_err());
    }

    #[test]
    fn tensor_of_powersets_is_powerset() {
        let a = SetSystem::powerset(labels(2)).unwrap();
        let b = SetSystem::powerset(labels(2)).unwrap();
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.family().len(), 16);
        assert_eq!(t.carrier()[1], "(a,b)");
    }

    #[test]
    fn subset_ops() {
        let s = Subset::from_indices([1, 3]);
        assert_eq!(s.iter().collect::<Vec<_>>(), [1, 3]);
        assert!(s.is_subset_of(Subset::full(4)));
        assert!(!s.is_subset_of(Subset::full(3)));
        assert_eq!(Subset::full(0), Subset::EMPTY);
    }
}

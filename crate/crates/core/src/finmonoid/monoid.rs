use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd as _, CheckedSub as _};

use super::{MonoidElement, SupportDescriptor, Window};
use crate::carriers::{classify_subset, CatalogCarrier, ClassifyError, FinitePoset, OrderClassification};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonoidError {
    #[error("element {element} does not belong to carrier {carrier}")]
    NotInCarrier { element: String, carrier: String },
    #[error("descriptor {descriptor} is not admitted on carrier {carrier}: {reason}")]
    Inadmissible {
        descriptor: String,
        carrier: String,
        reason: String,
    },
    #[error("arithmetic overflow in carrier {0}")]
    Overflow(String),
    #[error("invalid carrier: {0}")]
    BadCarrier(String),
    #[error("cannot parse `{text}` as an element of {carrier}")]
    Parse { text: String, carrier: String },
    #[error("operation table is not a partial monoid: {0}")]
    NotAMonoid(String),
}

#[derive(Debug, PartialEq)]
struct TableMonoid {
    labels: Vec<String>,
    table: Vec<Vec<Option<usize>>>,
    unit: usize,
    order: FinitePoset,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Catalog(CatalogCarrier),
    Table(Arc<TableMonoid>),
}

/// A monoid whose multiplication may be undefined, together with the
/// finitary subsets (as descriptors) it operates on.
///
/// The essential property is that every element has only finitely many
/// decompositions inside a pair of finitary subsets, which is what
/// [`decompose_within`](Self::decompose_within) enumerates.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFinitenessMonoid {
    kind: Kind,
}

impl PartialFinitenessMonoid {
    pub fn catalog(carrier: CatalogCarrier) -> Result<Self, MonoidError> {
        if let CatalogCarrier::FreeWords(a) = &carrier {
            let distinct: BTreeSet<_> = a.iter().collect();
            if a.is_empty() || distinct.len() != a.len() {
                return Err(MonoidError::BadCarrier("alphabet must be nonempty and duplicate-free".into()));
            }
        }
        Ok(PartialFinitenessMonoid {
            kind: Kind::Catalog(carrier),
        })
    }

    /// A finite partial monoid given by its (partial) Cayley table. The unit
    /// and partial associativity laws are checked exhaustively.
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<Option<usize>>>,
        unit: usize,
        order: FinitePoset,
    ) -> Result<Self, MonoidError> {
        let n = labels.len();
        if n == 0 {
            return Err(MonoidError::NotAMonoid("empty carrier has no unit".into()));
        }
        if order.len() != n || unit >= n || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(MonoidError::NotAMonoid("table shape does not match the carrier".into()));
        }
        if table.iter().flatten().flatten().any(|&v| v >= n) {
            return Err(MonoidError::NotAMonoid("table entry out of range".into()));
        }
        let op = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(a), Some(b)) => table[a][b],
            _ => None,
        };
        for a in 0..n {
            if table[unit][a] != Some(a) || table[a][unit] != Some(a) {
                return Err(MonoidError::NotAMonoid(format!("{} is not a unit", labels[unit])));
            }
            for b in 0..n {
                for c in 0..n {
                    let l = op(table[a][b], Some(c));
                    let r = op(Some(a), table[b][c]);
                    if l != r {
                        return Err(MonoidError::NotAMonoid(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(PartialFinitenessMonoid {
            kind: Kind::Table(Arc::new(TableMonoid {
                labels,
                table,
                unit,
                order,
            })),
        })
    }

    pub fn carrier(&self) -> Option<&CatalogCarrier> {
        match &self.kind {
            Kind::Catalog(c) => Some(c),
            Kind::Table(_) => None,
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            Kind::Catalog(c) => c.name(),
            Kind::Table(t) => format!("table[{}]", t.labels.join(",")),
        }
    }

    /// The unit η(∗).
    pub fn unit(&self) -> MonoidElement {
        use CatalogCarrier as C;
        match &self.kind {
            Kind::Catalog(C::NatUsual | C::NatDiscrete) => MonoidElement::Nat(0),
            Kind::Catalog(C::IntUsual | C::IntDiscrete) => MonoidElement::Int(0),
            Kind::Catalog(C::PosNatMulUsual | C::PosNatDivisibility) => MonoidElement::PosNat(1),
            Kind::Catalog(C::RationalGrid) => MonoidElement::rat(0, 1),
            Kind::Catalog(C::FreeWords(_)) => MonoidElement::word(""),
            Kind::Catalog(C::Truncated(_)) => MonoidElement::Bounded(0),
            Kind::Table(t) => MonoidElement::Index(t.unit),
        }
    }

    fn not_in_carrier(&self, m: &MonoidElement) -> MonoidError {
        MonoidError::NotInCarrier {
            element: m.to_string(),
            carrier: self.name(),
        }
    }

    fn overflow(&self) -> MonoidError {
        MonoidError::Overflow(self.name())
    }

    pub fn validate(&self, m: &MonoidElement) -> Result<(), MonoidError> {
        use CatalogCarrier as C;
        use MonoidElement as E;
        let ok = match (&self.kind, m) {
            (Kind::Catalog(C::NatUsual | C::NatDiscrete), E::Nat(_)) => true,
            (Kind::Catalog(C::IntUsual | C::IntDiscrete), E::Int(_)) => true,
            (Kind::Catalog(C::PosNatMulUsual | C::PosNatDivisibility), E::PosNat(v)) => *v >= 1,
            (Kind::Catalog(C::RationalGrid), E::Rat(_)) => true,
            (Kind::Catalog(C::FreeWords(a)), E::Word(w)) => w.chars().all(|ch| a.contains(&ch)),
            (Kind::Catalog(C::Truncated(n)), E::Bounded(v)) => v <= n,
            (Kind::Table(t), E::Index(i)) => *i < t.labels.len(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.not_in_carrier(m))
        }
    }

    /// The monoid product, `None` where it is undefined (only in truncated
    /// carriers and partial tables).
    pub fn mul(&self, a: &MonoidElement, b: &MonoidElement) -> Result<Option<MonoidElement>, MonoidError> {
        use MonoidElement as E;
        self.validate(a)?;
        self.validate(b)?;
        let r = match (&self.kind, a, b) {
            (Kind::Catalog(CatalogCarrier::Truncated(n)), E::Bounded(x), E::Bounded(y)) => {
                let s = u64::checked_add(*x, *y).ok_or_else(|| self.overflow())?;
                return Ok((s <= *n).then_some(E::Bounded(s)));
            }
            (Kind::Table(t), E::Index(i), E::Index(j)) => return Ok(t.table[*i][*j].map(E::Index)),
            (_, E::Nat(x), E::Nat(y)) => u64::checked_add(*x, *y).map(E::Nat),
            (_, E::Int(x), E::Int(y)) => i64::checked_add(*x, *y).map(E::Int),
            (_, E::PosNat(x), E::PosNat(y)) => u64::checked_mul(*x, *y).map(E::PosNat),
            (_, E::Rat(x), E::Rat(y)) => x.checked_add(y).map(E::Rat),
            (_, E::Word(x), E::Word(y)) => Some(E::Word(format!("{x}{y}"))),
            _ => return Err(self.not_in_carrier(a)),
        };
        r.map(Some).ok_or_else(|| self.overflow())
    }

    /// The carrier order.
    pub fn leq(&self, a: &MonoidElement, b: &MonoidElement) -> bool {
        match (&self.kind, a, b) {
            (Kind::Catalog(c), _, _) => c.leq(a, b),
            (Kind::Table(t), MonoidElement::Index(i), MonoidElement::Index(j)) => t.order.leq(*i, *j),
            _ => false,
        }
    }

    /// Classifies a descriptor on this carrier. Table carriers are finite, so
    /// their (finite) descriptors have every property.
    pub fn classify(&self, desc: &SupportDescriptor) -> Result<OrderClassification, MonoidError> {
        let mismatch = |reason: String| MonoidError::Inadmissible {
            descriptor: desc.to_string(),
            carrier: self.name(),
            reason,
        };
        match &self.kind {
            Kind::Catalog(c) => classify_subset(c, desc).map_err(|e| match e {
                ClassifyError::Mismatch { .. } => mismatch("descriptor does not fit the carrier".into()),
                other => mismatch(other.to_string()),
            }),
            Kind::Table(_) => match desc {
                SupportDescriptor::Finite(s) => {
                    for e in s {
                        self.validate(e)?;
                    }
                    Ok(OrderClassification {
                        artinian: true,
                        noetherian: true,
                        narrow: true,
                        finite: true,
                    })
                }
                _ => Err(mismatch("table monoids admit finite descriptors only".into())),
            },
        }
    }

    /// A descriptor is admitted iff it describes an artinian and narrow subset.
    pub fn admits(&self, desc: &SupportDescriptor) -> Result<(), MonoidError> {
        let c = self.classify(desc)?;
        if c.is_finitary() {
            Ok(())
        } else {
            Err(MonoidError::Inadmissible {
                descriptor: desc.to_string(),
                carrier: self.name(),
                reason: format!(
                    "subset is {}",
                    if c.artinian { "not narrow" } else { "not artinian" }
                ),
            })
        }
    }

    pub fn contains(&self, desc: &SupportDescriptor, m: &MonoidElement) -> bool {
        if self.validate(m).is_err() {
            return false;
        }
        match (desc, m) {
            (SupportDescriptor::Finite(s), _) => s.contains(m),
            (SupportDescriptor::All, _) => true,
            (SupportDescriptor::GridTail { a, n }, MonoidElement::Rat(r)) => {
                let scaled = *r.numer() as i128 * *n as i128;
                let den = *r.denom() as i128;
                scaled % den == 0 && scaled / den >= *a as i128
            }
            (SupportDescriptor::TailGe { a }, MonoidElement::Int(v)) => v >= a,
            _ => false,
        }
    }

    /// `m2` with `m1·m2 = m`, if one exists (catalog carriers are cancellative).
    fn right_cofactor(&self, m: &MonoidElement, m1: &MonoidElement) -> Option<MonoidElement> {
        use MonoidElement as E;
        match (m, m1) {
            (E::Word(w), E::Word(p)) => w.strip_prefix(p.as_str()).map(E::word),
            _ => self.commutative_cofactor(m, m1),
        }
    }

    /// `m1` with `m1·m2 = m`, if one exists.
    fn left_cofactor(&self, m: &MonoidElement, m2: &MonoidElement) -> Option<MonoidElement> {
        use MonoidElement as E;
        match (m, m2) {
            (E::Word(w), E::Word(s)) => w.strip_suffix(s.as_str()).map(E::word),
            _ => self.commutative_cofactor(m, m2),
        }
    }

    fn commutative_cofactor(&self, m: &MonoidElement, x: &MonoidElement) -> Option<MonoidElement> {
        use MonoidElement as E;
        match (m, x) {
            (E::Nat(a), E::Nat(b)) => u64::checked_sub(*a, *b).map(E::Nat),
            (E::Bounded(a), E::Bounded(b)) => u64::checked_sub(*a, *b).map(E::Bounded),
            (E::Int(a), E::Int(b)) => i64::checked_sub(*a, *b).map(E::Int),
            (E::PosNat(a), E::PosNat(b)) => (*b != 0 && a % b == 0).then(|| E::PosNat(a / b)),
            (E::Rat(a), E::Rat(b)) => a.checked_sub(b).map(E::Rat),
            _ => None,
        }
    }

    /// All `(m1, m2) ∈ s × t` with `m1·m2 = m`, ordered by `m1` then `m2`.
    pub fn decompose_within(
        &self,
        m: &MonoidElement,
        s: &SupportDescriptor,
        t: &SupportDescriptor,
    ) -> Result<Vec<(MonoidElement, MonoidElement)>, MonoidError> {
        use CatalogCarrier as C;
        use MonoidElement as E;
        use SupportDescriptor as D;
        self.validate(m)?;
        self.admits(s)?;
        self.admits(t)?;

        let check = |m1: MonoidElement, m2: MonoidElement| -> Result<Option<(E, E)>, MonoidError> {
            if self.contains(s, &m1) && self.contains(t, &m2) && self.mul(&m1, &m2)?.as_ref() == Some(m) {
                Ok(Some((m1, m2)))
            } else {
                Ok(None)
            }
        };

        let mut out = Vec::new();
        if let Kind::Table(_) = &self.kind {
            // admission guarantees both sides are finite
            if let (D::Finite(fs), D::Finite(ft)) = (s, t) {
                for m1 in fs {
                    for m2 in ft {
                        out.extend(check(m1.clone(), m2.clone())?);
                    }
                }
            }
            return Ok(out);
        }

        if let D::Finite(fs) = s {
            for m1 in fs {
                if let Some(m2) = self.right_cofactor(m, m1) {
                    out.extend(check(m1.clone(), m2)?);
                }
            }
            return Ok(out);
        }
        if let D::Finite(ft) = t {
            for m2 in ft {
                if let Some(m1) = self.left_cofactor(m, m2) {
                    out.extend(check(m1, m2.clone())?);
                }
            }
            out.sort();
            return Ok(out);
        }

        let Kind::Catalog(carrier) = &self.kind else {
            unreachable!("table carriers handled above")
        };
        match (carrier, m, s, t) {
            (C::NatUsual, E::Nat(v), _, _) => {
                for i in 0..=*v {
                    out.extend(check(E::Nat(i), E::Nat(v - i))?);
                }
            }
            (C::Truncated(_), E::Bounded(v), _, _) => {
                for i in 0..=*v {
                    out.extend(check(E::Bounded(i), E::Bounded(v - i))?);
                }
            }
            (C::PosNatMulUsual, E::PosNat(v), _, _) => {
                for d in divisors(*v) {
                    out.extend(check(E::PosNat(d), E::PosNat(v / d))?);
                }
            }
            (C::FreeWords(_), E::Word(w), _, _) => {
                let cuts = w.char_indices().map(|(i, _)| i).chain(std::iter::once(w.len()));
                for k in cuts {
                    out.extend(check(E::word(&w[..k]), E::word(&w[k..]))?);
                }
            }
            (C::IntUsual, E::Int(v), D::TailGe { a }, D::TailGe { a: b }) => {
                // m1 ≥ a and m2 = v - m1 ≥ b bound m1 to [a, v - b]
                let hi = i64::checked_sub(*v, *b).ok_or_else(|| self.overflow())?;
                for i in *a..=hi {
                    out.extend(check(E::Int(i), E::Int(v - i))?);
                }
            }
            (C::RationalGrid, E::Rat(r), D::GridTail { a, n }, D::GridTail { a: b, n: nm }) => {
                let (c, p) = (*r.numer() as i128, *r.denom() as i128);
                let (n, nm) = (*n as i128, *nm as i128);
                let (lo, hi) = puiseux_index_bounds(*a as i128, n, *b as i128, nm, c, p);
                for i in lo..=hi {
                    // j/nm = c/p - i/n  ⇔  j·n·p = nm·(c·n - i·p)
                    let num = nm * (c * n - i * p);
                    let den = n * p;
                    if num % den != 0 {
                        continue;
                    }
                    let j = num / den;
                    let m1 = grid_point(i, n).ok_or_else(|| self.overflow())?;
                    let m2 = grid_point(j, nm).ok_or_else(|| self.overflow())?;
                    out.extend(check(m1, m2)?);
                }
            }
            _ => {
                return Err(MonoidError::Inadmissible {
                    descriptor: format!("{s} × {t}"),
                    carrier: self.name(),
                    reason: "no decomposition rule for this pair".into(),
                })
            }
        }
        Ok(out)
    }

    /// Finite `(n, a)` grid presentation of a rational descriptor: the
    /// smallest `GridTail` containing it. `None` for the empty set.
    fn as_grid_tail(&self, d: &SupportDescriptor) -> Result<Option<(i64, u64)>, MonoidError> {
        match d {
            SupportDescriptor::GridTail { a, n } => Ok(Some((*a, *n))),
            SupportDescriptor::Finite(s) if s.is_empty() => Ok(None),
            SupportDescriptor::Finite(s) => {
                let mut n: i64 = 1;
                for e in s {
                    if let MonoidElement::Rat(r) = e {
                        n = n.lcm(r.denom());
                    }
                }
                let a = s
                    .iter()
                    .filter_map(|e| match e {
                        MonoidElement::Rat(r) => r.numer().checked_mul(n / r.denom()),
                        _ => None,
                    })
                    .min()
                    .ok_or_else(|| self.overflow())?;
                Ok(Some((a, n as u64)))
            }
            _ => Ok(None),
        }
    }

    fn as_tail_ge(&self, d: &SupportDescriptor) -> Option<i64> {
        match d {
            SupportDescriptor::TailGe { a } => Some(*a),
            SupportDescriptor::Finite(s) => s.iter().find_map(|e| match e {
                MonoidElement::Int(v) => Some(*v),
                _ => None,
            }),
            _ => None,
        }
    }

    /// An admitted descriptor containing every defined product `m1·m2` with
    /// `m1 ∈ s`, `m2 ∈ t`.
    pub fn mul_bound(&self, s: &SupportDescriptor, t: &SupportDescriptor) -> Result<SupportDescriptor, MonoidError> {
        use SupportDescriptor as D;
        self.admits(s)?;
        self.admits(t)?;
        if s.is_empty_set() || t.is_empty_set() {
            return Ok(D::empty());
        }
        if let (D::Finite(fs), D::Finite(ft)) = (s, t) {
            let mut image = BTreeSet::new();
            for a in fs {
                for b in ft {
                    image.extend(self.mul(a, b)?);
                }
            }
            return Ok(D::Finite(image));
        }
        match self.carrier() {
            Some(CatalogCarrier::RationalGrid) => {
                let (a, n) = self.as_grid_tail(s)?.expect("nonempty");
                let (b, m) = self.as_grid_tail(t)?.expect("nonempty");
                let off = (a as i128) * (m as i128) + (b as i128) * (n as i128);
                let den = (n as u128) * (m as u128);
                Ok(D::GridTail {
                    a: i64::try_from(off).map_err(|_| self.overflow())?,
                    n: u64::try_from(den).map_err(|_| self.overflow())?,
                })
            }
            Some(CatalogCarrier::IntUsual) => {
                let a = self.as_tail_ge(s).expect("nonempty");
                let b = self.as_tail_ge(t).expect("nonempty");
                Ok(D::TailGe {
                    a: a.checked_add(b).ok_or_else(|| self.overflow())?,
                })
            }
            _ => Ok(D::All),
        }
    }

    /// An admitted descriptor containing `s ∪ t`.
    pub fn union_bound(&self, s: &SupportDescriptor, t: &SupportDescriptor) -> Result<SupportDescriptor, MonoidError> {
        use SupportDescriptor as D;
        self.admits(s)?;
        self.admits(t)?;
        if s.is_empty_set() {
            return Ok(t.clone());
        }
        if t.is_empty_set() {
            return Ok(s.clone());
        }
        match (s, t) {
            (D::Finite(a), D::Finite(b)) => return Ok(D::Finite(a.union(b).cloned().collect())),
            (D::All, _) | (_, D::All) => return Ok(D::All),
            _ => {}
        }
        match self.carrier() {
            Some(CatalogCarrier::RationalGrid) => {
                let (a, n) = self.as_grid_tail(s)?.expect("nonempty");
                let (b, m) = self.as_grid_tail(t)?.expect("nonempty");
                let l = n.lcm(&m);
                let sa = (a as i128) * ((l / n) as i128);
                let sb = (b as i128) * ((l / m) as i128);
                Ok(D::GridTail {
                    a: i64::try_from(sa.min(sb)).map_err(|_| self.overflow())?,
                    n: l,
                })
            }
            Some(CatalogCarrier::IntUsual) => Ok(D::TailGe {
                a: self.as_tail_ge(s).expect("nonempty").min(self.as_tail_ge(t).expect("nonempty")),
            }),
            _ => Ok(D::All),
        }
    }

    pub fn in_window(&self, m: &MonoidElement, w: &Window) -> bool {
        use MonoidElement as E;
        let in_range = |v: Ratio<i128>| {
            v <= Ratio::from_integer(w.max as i128) && w.min.is_none_or(|lo| v >= Ratio::from_integer(lo as i128))
        };
        match m {
            E::Word(x) => (x.chars().count() as i64) <= w.max,
            E::Rat(r) => in_range(Ratio::new(*r.numer() as i128, *r.denom() as i128)),
            other => in_range(Ratio::from_integer(other.as_i128().expect("integral element"))),
        }
    }

    /// Every carrier element in the window, in canonical order.
    pub fn window_elements(&self, w: &Window) -> Vec<MonoidElement> {
        use CatalogCarrier as C;
        use MonoidElement as E;
        let nat_lo = |floor: i64| w.min.unwrap_or(floor).max(floor);
        let mut out: Vec<MonoidElement> = match &self.kind {
            Kind::Catalog(C::NatUsual | C::NatDiscrete) => (nat_lo(0)..=w.max).map(|v| E::Nat(v as u64)).collect(),
            Kind::Catalog(C::PosNatMulUsual | C::PosNatDivisibility) => {
                (nat_lo(1)..=w.max).map(|v| E::PosNat(v as u64)).collect()
            }
            Kind::Catalog(C::Truncated(n)) => {
                (nat_lo(0)..=w.max.min(*n as i64)).map(|v| E::Bounded(v as u64)).collect()
            }
            Kind::Catalog(C::IntUsual | C::IntDiscrete) => (w.min.unwrap_or(-w.max)..=w.max).map(E::Int).collect(),
            Kind::Catalog(C::RationalGrid) => {
                let lo = w.min.unwrap_or(-w.max);
                let mut v = Vec::new();
                for den in 1..=w.max_den as i64 {
                    for num in lo * den..=w.max * den {
                        if num.gcd(&den) == 1 {
                            v.push(E::rat(num, den));
                        }
                    }
                }
                v
            }
            Kind::Catalog(C::FreeWords(alpha)) => {
                let mut alpha = alpha.clone();
                alpha.sort_unstable();
                let mut layer = vec![String::new()];
                let mut v = Vec::new();
                for len in 0..=w.max {
                    v.extend(layer.iter().map(|s| E::word(s)));
                    if len == w.max {
                        break;
                    }
                    layer = layer
                        .iter()
                        .flat_map(|s| alpha.iter().map(move |ch| format!("{s}{ch}")))
                        .collect();
                }
                v
            }
            Kind::Table(t) => (0..t.labels.len()).filter(|&i| (i as i64) <= w.max).map(E::Index).collect(),
        };
        out.sort();
        out
    }

    /// Members of an admitted descriptor inside the window, in canonical order.
    pub fn enumerate(&self, desc: &SupportDescriptor, w: &Window) -> Result<Vec<MonoidElement>, MonoidError> {
        use SupportDescriptor as D;
        self.admits(desc)?;
        Ok(match desc {
            D::Finite(s) => s.iter().filter(|e| self.in_window(e, w)).cloned().collect(),
            D::All => self.window_elements(w),
            D::GridTail { a, n } => {
                let n = *n as i64;
                let lo = w.min.map_or(*a, |m| (*a).max(m.saturating_mul(n)));
                let hi = w.max.saturating_mul(n);
                (lo..=hi).map(|i| MonoidElement::rat(i, n)).collect()
            }
            D::TailGe { a } => {
                let lo = w.min.map_or(*a, |m| (*a).max(m));
                (lo..=w.max).map(MonoidElement::Int).collect()
            }
        })
    }

    /// Parses an element from its textual form (`"3"`, `"-1/2"`, `"xy"`, a table label).
    pub fn parse_element(&self, text: &str) -> Result<MonoidElement, MonoidError> {
        use CatalogCarrier as C;
        use MonoidElement as E;
        let err = || MonoidError::Parse {
            text: text.to_string(),
            carrier: self.name(),
        };
        let s = text.trim();
        let e = match &self.kind {
            Kind::Catalog(C::NatUsual | C::NatDiscrete) => E::Nat(s.parse().map_err(|_| err())?),
            Kind::Catalog(C::IntUsual | C::IntDiscrete) => E::Int(s.parse().map_err(|_| err())?),
            Kind::Catalog(C::PosNatMulUsual | C::PosNatDivisibility) => E::PosNat(s.parse().map_err(|_| err())?),
            Kind::Catalog(C::Truncated(_)) => E::Bounded(s.parse().map_err(|_| err())?),
            Kind::Catalog(C::RationalGrid) => match s.split_once('/') {
                Some((p, q)) => {
                    let p: i64 = p.trim().parse().map_err(|_| err())?;
                    let q: i64 = q.trim().parse().map_err(|_| err())?;
                    if q == 0 {
                        return Err(err());
                    }
                    E::rat(p, q)
                }
                None => E::rat(s.parse().map_err(|_| err())?, 1),
            },
            Kind::Catalog(C::FreeWords(_)) => E::word(if s == "ε" { "" } else { s }),
            Kind::Table(t) => match t.labels.iter().position(|l| l == s) {
                Some(i) => E::Index(i),
                None => E::Index(s.strip_prefix('#').and_then(|i| i.parse().ok()).ok_or_else(err)?),
            },
        };
        self.validate(&e).map_err(|_| err())?;
        Ok(e)
    }

    /// Display name of the monomial at `m`; `None` for the unit.
    pub fn term_label(&self, m: &MonoidElement) -> Option<String> {
        use MonoidElement as E;
        if *m == self.unit() {
            return None;
        }
        Some(match m {
            E::Nat(v) | E::Bounded(v) => format!("T^{v}"),
            E::Int(v) if *v < 0 => format!("T^({v})"),
            E::Int(v) => format!("T^{v}"),
            E::Rat(r) if r.is_integer() && *r.numer() >= 0 => format!("T^{}", r.numer()),
            E::Rat(r) => format!("T^({r})"),
            E::PosNat(v) => format!("{v}^-s"),
            E::Word(w) => w.clone(),
            E::Index(i) => match &self.kind {
                Kind::Table(t) => t.labels[*i].clone(),
                Kind::Catalog(_) => format!("#{i}"),
            },
        })
    }

    /// Number of carrier elements for table monoids.
    pub fn table_size(&self) -> Option<usize> {
        match &self.kind {
            Kind::Table(t) => Some(t.labels.len()),
            Kind::Catalog(_) => None,
        }
    }
}

/// Inclusive range of numerators `i` for the first factor `i/n` when
/// decomposing `c/p` as `i/n + j/m` with `i ≥ a`, `j ≥ b`:
/// `a ≤ i ≤ ⌊(n·m·c − b·n·p) / (m·p)⌋`. Empty when `hi < lo`.
pub fn puiseux_index_bounds(a: i128, n: i128, b: i128, m: i128, c: i128, p: i128) -> (i128, i128) {
    let hi = Integer::div_floor(&(n * m * c - b * n * p), &(m * p));
    (a, hi)
}

fn grid_point(i: i128, n: i128) -> Option<MonoidElement> {
    Some(MonoidElement::Rat(Ratio::new(i64::try_from(i).ok()?, i64::try_from(n).ok()?)))
}

fn divisors(v: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v.is_multiple_of(d) {
            small.push(d);
            if d * d != v {
                large.push(v / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

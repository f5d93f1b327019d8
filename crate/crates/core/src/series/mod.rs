//! The ring `R⟨M⟩` of generalized power series.
//!
//! A series is a coefficient oracle `M → R` paired with a support descriptor
//! that over-approximates where the oracle can be nonzero. Coefficients are
//! computed on demand and memoized; the product at `m` sums over the finite
//! decomposition set of `m` inside the two supports.

pub mod builtins;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;

pub use builtins::{constant_one, geometric, moebius, moebius_values, zeta};

use crate::coeff::{render_coeff, Ring};
use crate::finmonoid::{MonoidElement, MonoidError, PartialFinitenessMonoid, SupportDescriptor, Window};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series live over different monoids or rings")]
    Mismatch,
    #[error("duplicate term at {0}")]
    Duplicate(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("{0}")]
    Builtin(String),
}

type Oracle<E> = Box<dyn Fn(&MonoidElement) -> E + Send + Sync>;

struct Inner<R: Ring> {
    monoid: PartialFinitenessMonoid,
    ring: R,
    support: SupportDescriptor,
    oracle: Oracle<R::Elem>,
    memo: RwLock<HashMap<MonoidElement, R::Elem>>,
}

/// An element of `R⟨M⟩`. Cloning is cheap and clones share the memo table.
pub struct GenSeries<R: Ring> {
    inner: Arc<Inner<R>>,
}

impl<R: Ring> Clone for GenSeries<R> {
    fn clone(&self) -> Self {
        GenSeries {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<R: Ring> fmt::Debug for GenSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenSeries")
            .field("monoid", &self.inner.monoid.name())
            .field("ring", &self.inner.ring)
            .field("support", &self.inner.support.to_string())
            .finish()
    }
}

impl<R: Ring> GenSeries<R> {
    /// A lazily defined series. The oracle is only consulted inside `support`;
    /// everywhere else the coefficient is zero.
    pub fn from_fn(
        monoid: PartialFinitenessMonoid,
        ring: R,
        support: SupportDescriptor,
        f: impl Fn(&MonoidElement) -> R::Elem + Send + Sync + 'static,
    ) -> Result<Self, SeriesError> {
        monoid.admits(&support)?;
        Ok(GenSeries {
            inner: Arc::new(Inner {
                monoid,
                ring,
                support,
                oracle: Box::new(f),
                memo: RwLock::new(HashMap::new()),
            }),
        })
    }

    /// A finitely supported series. Zero coefficients are dropped; repeated
    /// elements are an error.
    pub fn from_terms(
        monoid: PartialFinitenessMonoid,
        ring: R,
        terms: impl IntoIterator<Item = (MonoidElement, R::Elem)>,
    ) -> Result<Self, SeriesError> {
        let mut table = HashMap::new();
        for (m, c) in terms {
            monoid.validate(&m)?;
            if table.contains_key(&m) {
                return Err(SeriesError::Duplicate(m.to_string()));
            }
            table.insert(m, c);
        }
        table.retain(|_, c| !ring.is_zero(c));
        let support = SupportDescriptor::finite(table.keys().cloned());
        let zero = ring.zero();
        Self::from_fn(monoid, ring, support, move |m| table.get(m).cloned().unwrap_or_else(|| zero.clone()))
    }

    pub fn zero(monoid: PartialFinitenessMonoid, ring: R) -> Self {
        Self::from_terms(monoid, ring, []).expect("empty series")
    }

    /// The convolution unit: `1` at η(∗), zero elsewhere.
    pub fn unit_series(monoid: PartialFinitenessMonoid, ring: R) -> Self {
        let u = monoid.unit();
        let one = ring.one();
        Self::from_terms(monoid, ring, [(u, one)]).expect("unit series")
    }

    pub fn monomial(monoid: PartialFinitenessMonoid, ring: R, m: MonoidElement, c: R::Elem) -> Result<Self, SeriesError> {
        Self::from_terms(monoid, ring, [(m, c)])
    }

    pub fn monoid(&self) -> &PartialFinitenessMonoid {
        &self.inner.monoid
    }

    pub fn ring(&self) -> &R {
        &self.inner.ring
    }

    pub fn support(&self) -> &SupportDescriptor {
        &self.inner.support
    }

    fn same_space(&self, other: &Self) -> Result<(), SeriesError> {
        if self.inner.monoid == other.inner.monoid && self.inner.ring == other.inner.ring {
            Ok(())
        } else {
            Err(SeriesError::Mismatch)
        }
    }

    /// The coefficient at `m`, memoized. Zero outside the support descriptor.
    pub fn coeff(&self, m: &MonoidElement) -> R::Elem {
        let inner = &*self.inner;
        if !inner.monoid.contains(&inner.support, m) {
            return inner.ring.zero();
        }
        if let Some(c) = inner.memo.read().get(m) {
            return c.clone();
        }
        // computed without holding the lock; a racing fill stores an equal value
        let c = (inner.oracle)(m);
        inner.memo.write().entry(m.clone()).or_insert(c).clone()
    }

    /// Number of memoized coefficients.
    pub fn memo_len(&self) -> usize {
        self.inner.memo.read().len()
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_space(other)?;
        let support = self.inner.monoid.union_bound(self.support(), other.support())?;
        let (f, g) = (self.clone(), other.clone());
        let ring = self.inner.ring.clone();
        Self::from_fn(self.inner.monoid.clone(), ring.clone(), support, move |m| {
            ring.add(&f.coeff(m), &g.coeff(m))
        })
    }

    pub fn neg(&self) -> Self {
        let f = self.clone();
        let ring = self.inner.ring.clone();
        Self::from_fn(self.inner.monoid.clone(), ring.clone(), self.support().clone(), move |m| {
            ring.neg(&f.coeff(m))
        })
        .expect("support already admitted")
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    /// Scales every coefficient on the left: `c·f`.
    pub fn scale(&self, c: R::Elem) -> Self {
        let f = self.clone();
        let ring = self.inner.ring.clone();
        Self::from_fn(self.inner.monoid.clone(), ring.clone(), self.support().clone(), move |m| {
            ring.mul(&c, &f.coeff(m))
        })
        .expect("support already admitted")
    }

    /// The convolution product. Factors are multiplied as `f(m1)·g(m2)`, so
    /// noncommutative coefficient rings are handled correctly.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_space(other)?;
        let support = self.inner.monoid.mul_bound(self.support(), other.support())?;
        let (f, g) = (self.clone(), other.clone());
        let ring = self.inner.ring.clone();
        Self::from_fn(self.inner.monoid.clone(), ring.clone(), support, move |m| {
            let mut acc = ring.zero();
            for (_, _, a, b) in f.nonzero_pairs(&g, m) {
                acc = ring.add(&acc, &ring.mul(&a, &b));
            }
            acc
        })
    }

    fn nonzero_pairs(&self, g: &Self, m: &MonoidElement) -> Vec<(MonoidElement, MonoidElement, R::Elem, R::Elem)> {
        let ring = &self.inner.ring;
        let pairs = self
            .inner
            .monoid
            .decompose_within(m, self.support(), g.support())
            .expect("supports are admitted and m lies in the carrier");
        pairs
            .into_iter()
            .filter_map(|(m1, m2)| {
                let a = self.coeff(&m1);
                if ring.is_zero(&a) {
                    return None;
                }
                let b = g.coeff(&m2);
                if ring.is_zero(&b) {
                    return None;
                }
                Some((m1, m2, a, b))
            })
            .collect()
    }

    /// `X_m(f, g)`: decompositions `m = m1·m2` with `f(m1) ≠ 0` and `g(m2) ≠ 0`.
    pub fn decomposition_set(&self, g: &Self, m: &MonoidElement) -> Result<Vec<(MonoidElement, MonoidElement)>, SeriesError> {
        self.same_space(g)?;
        self.inner.monoid.validate(m)?;
        Ok(self.nonzero_pairs(g, m).into_iter().map(|(a, b, _, _)| (a, b)).collect())
    }

    /// First carrier element in the window where the coefficients differ.
    pub fn first_disagreement(&self, other: &Self, w: &Window) -> Option<MonoidElement> {
        let ring = &self.inner.ring;
        self.inner
            .monoid
            .window_elements(w)
            .into_iter()
            .find(|m| !ring.equal(&self.coeff(m), &other.coeff(m)))
    }

    /// Coefficientwise equality on every carrier element of the window.
    pub fn agree_on(&self, other: &Self, w: &Window) -> bool {
        self.first_disagreement(other, w).is_none()
    }

    /// Nonzero terms whose exponent lies in both the support and the window,
    /// in canonical order.
    pub fn terms(&self, w: &Window) -> Vec<(MonoidElement, R::Elem)> {
        let ring = &self.inner.ring;
        self.inner
            .monoid
            .enumerate(self.support(), w)
            .expect("support already admitted")
            .into_iter()
            .filter_map(|m| {
                let c = self.coeff(&m);
                (!ring.is_zero(&c)).then_some((m, c))
            })
            .collect()
    }

    /// `c₁·t(m₁) + c₂·t(m₂) + …` over the window, `0` if there are no terms.
    pub fn render(&self, w: &Window) -> String {
        let terms = self.terms(w);
        if terms.is_empty() {
            return "0".to_string();
        }
        terms
            .iter()
            .map(|(m, c)| {
                let c = render_coeff(c);
                match self.inner.monoid.term_label(m) {
                    Some(t) => format!("{c}·{t}"),
                    None => c,
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

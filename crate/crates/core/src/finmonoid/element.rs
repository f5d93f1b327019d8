use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

/// A point of one of the monoid carriers.
///
/// The derived variant order is irrelevant in practice since a carrier only
/// ever holds one variant; within a variant the order is the canonical display
/// order (numeric ascending, words by length then lexicographically).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonoidElement {
    Nat(u64),
    Int(i64),
    PosNat(u64),
    Rat(Ratio<i64>),
    Word(String),
    /// `0..=n` in a truncated carrier.
    Bounded(u64),
    /// Row of a finite Cayley table.
    Index(usize),
}

impl MonoidElement {
    fn rank(&self) -> u8 {
        match self {
            MonoidElement::Nat(_) => 0,
            MonoidElement::Int(_) => 1,
            MonoidElement::PosNat(_) => 2,
            MonoidElement::Rat(_) => 3,
            MonoidElement::Word(_) => 4,
            MonoidElement::Bounded(_) => 5,
            MonoidElement::Index(_) => 6,
        }
    }

    pub fn rat(num: i64, den: i64) -> Self {
        MonoidElement::Rat(Ratio::new(num, den))
    }

    pub fn word(w: &str) -> Self {
        MonoidElement::Word(w.to_string())
    }

    /// Integer value for the numeric carriers, if integral.
    pub fn as_i128(&self) -> Option<i128> {
        match *self {
            MonoidElement::Nat(v) | MonoidElement::PosNat(v) | MonoidElement::Bounded(v) => Some(v as i128),
            MonoidElement::Int(v) => Some(v as i128),
            MonoidElement::Rat(r) if r.is_integer() => Some(*r.numer() as i128),
            MonoidElement::Index(i) => Some(i as i128),
            _ => None,
        }
    }
}

pub(crate) fn shortlex(a: &str, b: &str) -> Ordering {
    a.chars().count().cmp(&b.chars().count()).then_with(|| a.cmp(b))
}

impl Ord for MonoidElement {
    fn cmp(&self, other: &Self) -> Ordering {
        use MonoidElement::*;
        match (self, other) {
            (Nat(a), Nat(b)) | (PosNat(a), PosNat(b)) | (Bounded(a), Bounded(b)) => a.cmp(b),
            (Int(a), Int(b)) => a.cmp(b),
            (Rat(a), Rat(b)) => a.cmp(b),
            (Word(a), Word(b)) => shortlex(a, b),
            (Index(a), Index(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for MonoidElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidElement::Nat(v) | MonoidElement::PosNat(v) | MonoidElement::Bounded(v) => write!(f, "{v}"),
            MonoidElement::Int(v) => write!(f, "{v}"),
            MonoidElement::Rat(r) => write!(f, "{r}"),
            MonoidElement::Word(w) if w.is_empty() => f.write_str("ε"),
            MonoidElement::Word(w) => f.write_str(w),
            MonoidElement::Index(i) => write!(f, "#{i}"),
        }
    }
}

/// A finite query region.
///
/// `max` bounds values for the numeric carriers and word length for free
/// monoids. `min` is an optional lower value bound: descriptor enumeration
/// treats `None` as unbounded below (descriptors supply their own floor),
/// while whole-carrier enumeration over ℤ or ℚ falls back to `-max`.
/// `max_den` caps denominators when listing all of ℚ in a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub min: Option<i64>,
    pub max: i64,
    pub max_den: u64,
}

impl Window {
    pub const DEFAULT_MAX_DEN: u64 = 12;

    pub fn upto(max: i64) -> Self {
        Window {
            min: None,
            max,
            max_den: Self::DEFAULT_MAX_DEN,
        }
    }

    pub fn between(min: i64, max: i64) -> Self {
        Window {
            min: Some(min),
            max,
            max_den: Self::DEFAULT_MAX_DEN,
        }
    }

    pub fn with_max_den(mut self, d: u64) -> Self {
        self.max_den = d.max(1);
        self
    }
}

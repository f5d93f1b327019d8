//! Posets and ordered carriers.
//!
//! Classification of infinite subsets is rule-based over the catalog in
//! [`catalog`]; finite posets get exact chain and antichain searches; finite
//! pomonoids can be turned into finiteness monoids when they are strict.

mod catalog;
mod pomonoid;
mod poset;

pub use catalog::{classify_subset, increasing_subsequence, CatalogCarrier, ClassifyError, OrderClassification};
pub use pomonoid::{embed_finite_pomonoid, is_strict_pomonoid, FinitePomonoid, PomonoidError};
pub use poset::{is_strict_map, FinitePoset, PosetError, ANTICHAIN_SIZE_BOUND};

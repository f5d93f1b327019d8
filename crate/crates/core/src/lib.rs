//! Generalized power series rings `R⟨M⟩` over partial finiteness monoids.
//!
//! - [`coeff`]: exact coefficient rings (ℤ, ℚ, ℤ/n, 2×2 integer matrices).
//! - [`carriers`]: posets, the artinian/narrow/noetherian classification of
//!   the carrier catalog, strict maps and strict pomonoids.
//! - [`finmonoid`]: the catalog monoids with support descriptors and the
//!   finite decomposition enumerator.
//! - [`series`]: lazy, memoized series with convolution product.
//! - [`finpf`]: finite models of finiteness spaces and finitary partial
//!   functions, with exhaustive checks of limits, colimits and closure.
//! - [`cli`]: the batch command-line front end.

pub mod carriers;
pub mod cli;
pub mod coeff;
pub mod expr;
pub mod finmonoid;
pub mod finpf;
pub mod json;
pub mod selftest;
pub mod series;

pub use coeff::{AnyRing, Coeff, Ring};
pub use finmonoid::{MonoidElement, PartialFinitenessMonoid, SupportDescriptor, Window};
pub use series::GenSeries;

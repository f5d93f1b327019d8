//! Partial finiteness monoids over the carrier catalog: elements, support
//! descriptors, the partial product and the finite decomposition enumerator.

mod descriptor;
mod element;
mod monoid;

pub use descriptor::SupportDescriptor;
pub(crate) use element::shortlex;
pub use element::{MonoidElement, Window};
pub use monoid::{puiseux_index_bounds, MonoidError, PartialFinitenessMonoid};

//! Finite models of the category of finiteness spaces and finitary partial
//! functions.
//!
//! On a finite carrier every subset is finite, so the only finiteness
//! structure is the full powerset and every partial function is a morphism.
//! The constructions below are still carried out literally, and
//! [`verify_universal`] checks their universal properties by enumerating all
//! mediating maps from small test objects.

mod closed;
mod limits;
mod morphism;
mod space;
mod verify;

use thiserror::Error;

pub use closed::{
    associator, hom_conditions, internal_hom, left_unitor, symmetry, HomConditions, HomSpace, DEFAULT_HOM_BOUND,
};
pub use limits::{
    coequalizer, coproduct, equalizer, product, product_with, Coequalizer, Coproduct, Equalizer, Product,
};
pub use morphism::{is_morphism, morphism_violation, AllPartialFns, MorphismViolation, PartialFn};
pub use space::{FinSpace, SetSystem, Subset, POWERSET_LIMIT};
pub use verify::{
    check_category, check_perp_laws, coequalizer_witness, coproduct_witness, equalizer_witness, product_witness,
    product_witness_with, verify_universal, CategoryReport, UniversalFailure, UniversalReport, VerifyConfig,
    Witness,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FinPfError {
    #[error("size {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("maps are not parallel or do not match the given spaces")]
    NotParallel,
    #[error("cannot compose: codomain size {left} vs domain size {right}")]
    NotComposable { left: usize, right: usize },
    #[error("{0}")]
    Invalid(String),
}

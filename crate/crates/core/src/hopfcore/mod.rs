//! Graded bicommutative Hopf algebras over F_p, presented by structure constants.
//!
//! A [`HopfPresentation`] lists a basis, each element carrying a degree and a weight, together
//! with the products and coproducts of basis elements inside a truncation [`Window`]. All
//! Hopf-theoretic operations work block by block, a block being a (degree, weight) slot.
//!
//! Identities whose inputs combine outside the window are never reported as failures: they
//! are counted as unknown.

mod axioms;
mod dual;
mod filtration;
mod json;
mod kercoker;
mod morphism;
mod ops;
mod presentation;
mod section;
mod subspace;
mod weights;

pub use axioms::{verify_axioms, Axiom, AxiomReport, Violation};
pub use dual::restricted_dual;
pub use filtration::{
    associated_graded, augmentation_filtration, augmentation_tower, coradical_tower, primitive_filtration,
    Filtration,
};
pub use json::{from_json, to_json};
pub use kercoker::{check_exact_triple, hopf_cokernel, hopf_kernel, sub_presentation, ExactTripleReport};
pub use morphism::{convolution, convolution_power, HopfMorphism, MorphismReport};
pub use ops::{
    antipode, check_frobenius_verschiebung, frobenius, indecomposables, primitives, tensor_product, trivial,
    verschiebung,
};
pub use presentation::{
    add_term, axpy, AlgebraKind, BasisElement, BlockKey, FactorTag, Grading, HopfBuilder, HopfPresentation,
    TensorVector, Vector, Window,
};
pub use section::{find_section, SectionSearch};
pub use subspace::{GradedSubspace, SubBlock};
pub use weights::{validate_weight_decomposition, WeightReport};

use thiserror::Error;

use crate::exactla::LinAlgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("the unit element must sit in degree 0 and weight 0")]
    BadUnit,
    #[error("presentations over different fields")]
    FieldMismatch,
    #[error("presentations with different grading groups")]
    GradingMismatch,
    #[error("antipode recursion does not terminate at {0}")]
    AntipodeCycle(String),
    #[error("odd-degree element {0} at odd characteristic")]
    OddDegree(String),
    #[error("subspace is not closed under {what} at {witness}; the window is probably too small")]
    NotClosed { what: &'static str, witness: String },
    #[error("filtration does not stabilize within the window")]
    NotStabilized,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("malformed hopf-v1 document: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
}

//! Filtered shifted L∞-algebras, their ∞-morphisms and Maurer–Cartan
//! calculus, all truncated at a fixed filtration depth.

mod algebra;
mod check;
mod element;
mod eval;
mod morphism;
mod ops;
mod shift;

pub use algebra::{BasisSymbol, SLieAlgebra, Table};
pub use check::{check_infty_morphism, check_slie, set_partitions, words, Report, Violation};
pub use element::Element;
pub use eval::koszul_sign;
pub use morphism::InftyMorphism;
pub use ops::{compose_morphisms, quotient, quotient_morphism, transport_structure, twist_algebra, twist_morphism, Projection};
pub use shift::{shift_convention, unshift_convention, OrdinaryLInfty};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SlieError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported arity {0}")]
    Arity(usize),
    #[error("non-homogeneous element: {0}")]
    Homogeneity(String),
    #[error("element is not Maurer–Cartan; curvature {0:?}")]
    NotMc(Element),
}

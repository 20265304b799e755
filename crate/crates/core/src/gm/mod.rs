//! Goldman–Millson constructions: the filtered quasi-isomorphism test,
//! preimages of MC elements, transfer of connecting edges, and homotopy
//! groups of abelian algebras through the Moore complex.

mod graded;
mod moore;
mod transfer;

use crate::mc::McError;
use crate::slie::{Element, SlieError};

pub use graded::{check_filtered_qiso, GradedPiece, QisoFailure, QisoReport};
pub use moore::{abelian_homotopy, moore_homology, z0_tensor_cochains, MooreHomology, SimplicialVectorSpace};
pub use transfer::{mc_preimage, transfer_connect, verify, Check, Layer, Outcome, TransferCertificate, Witness};

/// Which end of the morphism an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Source,
    Target,
}

/// An unsolvable layer problem: a class witnessing that the linear term is
/// not a quasi-isomorphism on the associated graded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub layer: u32,
    pub weight: u32,
    pub degree: i32,
    pub side: Side,
    pub class: Element,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GmError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("hypothesis refuted at layer {}: {}", .0.layer, .0.reason)]
    Refuted(Box<Refutation>),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Mc(#[from] McError),
    #[error(transparent)]
    Slie(#[from] SlieError),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}

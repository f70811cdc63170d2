//! Gelfand-Tsetlin subalgebras: abstract presentations on grid generators and their
//! concrete realization inside idempotent truncations.

pub mod concrete;
pub mod explore;
pub mod presentation;

pub use concrete::{concrete_dim_upper_bound, concrete_generator, concrete_l, ConcreteDim};
pub use explore::{
    explore_classes, explore_q, explore_row, format_seq, Classification, ExploreOptions, QRow, RowVerdict,
};
pub use presentation::{
    build_l_presentation, build_y_presentation, complement_product, presentations_isomorphic, GTElement, GTIndex,
    GTPoly, GTPresentation, GridShape, SquarefreeMonomial, Variant,
};

use blobgt_residue::ResidueSeq;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GtError {
    #[error("grid needs k >= 1 and l >= 2, got k = {0}, l = {1}")]
    BadShape(usize, usize),
    #[error("{0} generators exceed the supported {1}")]
    TooManyGenerators(usize, usize),
    #[error("reduction did not terminate")]
    ReductionDiverged,
    #[error("product of monomials {0:#b} and {1:#b} is not commutative")]
    CommutativityFailure(u64, u64),
    #[error("associativity fails on monomials {0:#b}, {1:#b}, {2:#b}")]
    AssociativityFailure(u64, u64, u64),
    #[error("no annihilator available for {0:?}")]
    NoAnnihilator(ResidueSeq),
    #[error("equivalence class exceeds {0} sequences")]
    ClassTooLarge(usize),
}

//! Exact computation in the generalized blob algebra over a prime field.

pub mod cellular;
pub mod engine;
pub mod field;
pub mod grading;
pub mod ideal;
pub mod identities;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod word;

pub use cellular::{cellular_basis_element, cellular_psi, jm_element, l_element, CellularError};
pub use engine::{CheckVerdict, Engine, EngineConfig, EngineError, NormalWord, Verdict};
pub use field::{DefaultField, Field, Fp};
pub use grading::{dim_truncation_formula, gdim, max_grade, tableau_degree, GradingCache, SeqGrading};
pub use ideal::{DotIdeal, IdealConfig, IdealError};
pub use identities::{
    identity_instances, verify_identity, IdentityCheck, IdentityError, IdentityInstance, IDENTITY_NAMES,
};
pub use poly::{l_poly, Mono, Poly};
pub use word::{AlgElement, GenWord, Token, WordError};

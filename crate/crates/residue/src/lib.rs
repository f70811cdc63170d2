//! Residue combinatorics for one-column multipartitions.
//!
//! Positions, rows, components and word letters are 1-based in every public API;
//! residues are stored as canonical representatives in `0..e`.

pub mod ctx;
pub mod enumerate;
pub mod node;
pub mod tableau;

pub use ctx::{
    is_prime, lift_residues, validate_multicharge, Condition, MultichargeCtx, ParamError, Relation, Residue, ResidueSeq,
};
pub use enumerate::{
    all_possible_sequences, enumerate_std, is_blob_possible, reachable_shapes, sim_class, sim_step, ClassTooLarge,
};
pub use node::{cmp_multipartitions, cmp_nodes, node_residue, Dominance, Node, OneColumnMultipartition, SizeMismatch};
pub use tableau::{
    addable_residue_multiset, blob_addable_residues, cmp_tableaux, coxeter_length, is_liftable, liftable_set,
    max_tableau, official_word, perm_of, residue_sequence, SymWord, Tableau,
};

/// Spec-facing name of the context type.
pub type MulticargeCtx = MultichargeCtx;

/// Builds a context from residues alone, lifting them canonically for `m_max`.
pub fn ctx_from_residues(
    e: u32,
    p: u32,
    residues: &[i64],
    interval_start: i64,
    m_max: usize,
) -> Result<MultichargeCtx, ParamError> {
    let lift = lift_residues(e, residues, m_max);
    validate_multicharge(e, residues.len(), p, &lift, interval_start, m_max)
}

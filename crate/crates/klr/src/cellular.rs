//! Graded cellular basis elements and the Jucys–Murphy type elements.

use crate::field::Field;
use crate::poly::{l_poly, Poly};
use crate::word::{AlgElement, GenWord, Token};
use blobgt_residue::{official_word, MultichargeCtx, Residue, Tableau};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellularError {
    #[error("tableaux have shapes {0:?} and {1:?}")]
    ShapeMismatch(Vec<u32>, Vec<u32>),
}

/// `Ψ_𝔱` as one word: bottom `𝐢^𝔱`, official word of `𝔱` applied upwards, top `𝐢^{𝔱^λ}`.
pub fn cellular_psi_word(t: &Tableau, ctx: &MultichargeCtx) -> GenWord {
    let letters = official_word(t).letters.iter().rev().map(|&c| Token::Cross(c)).collect();
    GenWord { idem: t.residue_sequence(ctx), letters }
}

pub fn cellular_psi<F: Field>(t: &Tableau, ctx: &MultichargeCtx) -> AlgElement<F> {
    AlgElement::from_word(cellular_psi_word(t, ctx), F::one())
}

/// `Ψ_{𝔰,𝔱} = (Ψ_𝔰)^∗ Ψ_𝔱`.
pub fn cellular_basis_element<F: Field>(
    s: &Tableau,
    t: &Tableau,
    ctx: &MultichargeCtx,
) -> Result<AlgElement<F>, CellularError> {
    let (hs, ht) = (s.shape().heights, t.shape().heights);
    if hs != ht {
        return Err(CellularError::ShapeMismatch(hs, ht));
    }
    Ok(cellular_psi::<F>(s, ctx).star().mul(&cellular_psi(t, ctx)))
}

/// `L_r` as a polynomial in `m` variables; callers attach an idempotent.
pub fn l_element<F: Field>(r: usize, m: usize) -> Poly<F> {
    l_poly(m, r)
}

/// `L_r e(𝐢)`.
pub fn l_on<F: Field>(r: usize, i: &[Residue]) -> AlgElement<F> {
    AlgElement::from_poly(&l_element(r, i.len()), i)
}

/// `(c - y_j) e(𝐢)`; the constant `c` is left to the caller.
pub fn jm_element<F: Field>(j: usize, c: F, i: &[Residue]) -> AlgElement<F> {
    let m = i.len();
    AlgElement::from_poly(&Poly::one(m).scale(c).sub(&Poly::var(m, j)), i)
}

//! The concrete subalgebra `span{f(y) e(𝐢)}` of `e(𝐢)ℬ_m e(𝐢)`.
//!
//! Upper bound: closure of `1` under the generators in `Pol / J`, where `J` is the sound
//! annihilator computed by the engine. Lower bound: diagonal cellular elements `Ψ_{𝔱,𝔱}`
//! whose normal form is a pure polynomial on `e(𝐢)`; they are linearly independent in
//! `ℬ_m`, so the part of their span inside the closure embeds.

use crate::GtError;
use blobgt_blocks::{vertical_sequence, BlockData, GridPoint};
use blobgt_klr::linalg::{intersect, EchelonSpace, SVec};
use blobgt_klr::{cellular_basis_element, l_element, AlgElement, DotIdeal, Engine, Field, Mono, Poly};
use blobgt_residue::{enumerate_std, MultichargeCtx, Residue};
use serde::Serialize;
use std::collections::HashMap;

/// `𝒴_(r,j) = y_{m_(r,j)} e(𝐢)` on the vertical sequence of `bd`.
pub fn concrete_generator<F: Field>(p: GridPoint, bd: &BlockData, ctx: &MultichargeCtx) -> AlgElement<F> {
    AlgElement::dot(bd.m_at(p), &vertical_sequence(ctx, bd.base, bd.m))
}

/// `ℒ_(r,j) = L_{m_(r,j)} e(𝐢)`.
pub fn concrete_l<F: Field>(p: GridPoint, bd: &BlockData, ctx: &MultichargeCtx) -> AlgElement<F> {
    AlgElement::from_poly(&l_element(bd.m_at(p), bd.m), &vertical_sequence(ctx, bd.base, bd.m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConcreteDim {
    /// Dimension of the generated span modulo the computed annihilator.
    pub dim: usize,
    /// Number of independent diagonal cellular elements found inside that span.
    pub lower: usize,
    pub exact: bool,
}

/// Coordinates on the standard monomials of an ideal.
struct Coords<'a, F: Field> {
    ideal: &'a DotIdeal<F>,
    index: HashMap<Mono, u32>,
}

impl<'a, F: Field> Coords<'a, F> {
    fn new(ideal: &'a DotIdeal<F>) -> Self {
        let index = ideal.standard_monomials().into_iter().enumerate().map(|(k, a)| (a, k as u32)).collect();
        Coords { ideal, index }
    }

    fn vec(&self, f: &Poly<F>) -> SVec<F> {
        let r = self.ideal.reduce(f);
        let mut v: SVec<F> = r.terms().iter().map(|(a, &c)| (self.index[a], c)).collect();
        v.sort_unstable_by_key(|p| p.0);
        v
    }

    fn poly(&self, v: &SVec<F>, monos: &[Mono]) -> Poly<F> {
        let mut p = Poly::zero(self.ideal.nvars());
        for &(k, c) in v {
            p.add_term(monos[k as usize].clone(), c);
        }
        p
    }
}

/// Dimension of the subalgebra generated by `{y_j e(𝐢) : j ≤ a}` (all `j` when `a = m`).
pub fn concrete_dim_upper_bound<F: Field>(engine: &Engine<F>, i: &[Residue], a: usize) -> Result<ConcreteDim, GtError> {
    let ctx = engine.ctx();
    let m = i.len();
    let ideal = engine.ideal(i).ok_or_else(|| GtError::NoAnnihilator(i.to_vec()))?;
    let coords = Coords::new(&ideal);
    let monos = ideal.standard_monomials();
    let ncols = monos.len();

    let mut span = EchelonSpace::<F>::new(ncols);
    let mut frontier = vec![coords.vec(&Poly::one(m))];
    span.insert(frontier[0].clone());
    while let Some(v) = frontier.pop() {
        let f = coords.poly(&v, &monos);
        for j in 1..=a.min(m) {
            if let Some(row) = span.insert(coords.vec(&f.mul_var(j))) {
                frontier.push(row);
            }
        }
    }

    let mut cert: Vec<SVec<F>> = Vec::new();
    for t in enumerate_std(i, ctx) {
        let x = cellular_basis_element::<F>(&t, &t, ctx).expect("same tableau");
        let Ok(terms) = engine.normal_terms(&x) else { continue };
        if terms.iter().all(|(nw, _)| nw.perm_word.is_empty() && nw.idem == i) {
            let mut f = Poly::zero(m);
            for (nw, c) in &terms {
                f.add_term(nw.dot_exponents.clone(), *c);
            }
            cert.push(coords.vec(&f));
        }
    }
    let mut cert_space = EchelonSpace::<F>::new(ncols);
    let cert: Vec<SVec<F>> = cert.into_iter().filter_map(|v| cert_space.insert(v)).collect();
    let lower = intersect(&cert, &span).len();
    Ok(ConcreteDim { dim: span.dim(), lower, exact: lower == span.dim() })
}

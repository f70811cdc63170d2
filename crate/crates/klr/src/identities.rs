//! Named identities in `e(𝐢)ℬ_m e(𝐢)` for a vertical residue sequence, built from block
//! data and checked with [`Engine::equal`].
//!
//! Indexing: `𝒴_(r,j) = y_{m_(r,j)} e(𝐢)`, `ℒ_(r,j) = 𝒴_prev - 𝒴_(r,j)` where `𝒴_prev` is the
//! grid point before `(r,j)` (absent for `(1,0)`), and `Ψ_{[1:z]} = ψ_1⋯ψ_z` on `e(𝐢)`.

use crate::cellular::cellular_basis_element;
use crate::engine::{CheckVerdict, Engine};
use crate::field::Field;
use crate::poly::{l_poly, Poly};
use crate::word::{AlgElement, GenWord, Token};
use blobgt_blocks::{principal_tableau, vertical_sequence, BlockData, BlockError, GridPoint};
use blobgt_residue::{MultichargeCtx, ResidueSeq};
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub const IDENTITY_NAMES: [&str; 11] = [
    "yz-inN-die",
    "clean-Y",
    "diag-L",
    "square-Y10",
    "square-Y1j",
    "square-Yrj",
    "EsLrj",
    "Y1jE1Lrj",
    "PsEsLrj",
    "Y-prod-reduction-2",
    "HvsH",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("block data: {0}")]
    Block(#[from] BlockError),
    #[error("block data has m = {0} but the context allows at most {1}")]
    TooLong(usize, usize),
}

/// One side-by-side instance of a named identity.
#[derive(Debug, Clone)]
pub struct IdentityInstance<F: Field> {
    pub name: &'static str,
    pub label: String,
    pub lhs: AlgElement<F>,
    pub rhs: AlgElement<F>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub label: String,
    pub verdict: String,
    pub trace: String,
    #[serde(skip)]
    pub check: CheckVerdict,
}

fn canonical_name(name: &str) -> Result<&'static str, IdentityError> {
    let alias = match name {
        "square-Y10-die" => "square-Y10",
        "EsLrj-as-LsjLrj" => "EsLrj",
        "Y1jE1Lrj-die" => "Y1jE1Lrj",
        "PsEsLrj-die" => "PsEsLrj",
        "HvsH-reduction" => "HvsH",
        other => other,
    };
    IDENTITY_NAMES.iter().copied().find(|n| *n == alias).ok_or_else(|| IdentityError::UnknownIdentity(name.into()))
}

struct Builder<'a, F: Field> {
    _f: std::marker::PhantomData<F>,
    bd: &'a BlockData,
    ctx: &'a MultichargeCtx,
    i: ResidueSeq,
    m: usize,
}

impl<'a, F: Field> Builder<'a, F> {
    fn new(bd: &'a BlockData, ctx: &'a MultichargeCtx) -> Result<Self, IdentityError> {
        if bd.m > ctx.m_max() {
            return Err(IdentityError::TooLong(bd.m, ctx.m_max()));
        }
        let i = vertical_sequence(ctx, bd.base, bd.m);
        Ok(Builder { _f: std::marker::PhantomData, bd, ctx, i, m: bd.m })
    }

    fn y(&self, p: GridPoint) -> Poly<F> {
        Poly::var(self.m, self.bd.m_at(p))
    }

    fn point(&self, r: usize, j: usize) -> GridPoint {
        GridPoint::new(r, j)
    }

    /// `ℒ_(r,j)` from its defining difference of `𝒴`s.
    fn cal_l(&self, p: GridPoint) -> Poly<F> {
        match self.bd.previous(p) {
            None => self.y(p).scale(-F::one()),
            Some(q) => self.y(q).sub(&self.y(p)),
        }
    }

    fn elem(&self, f: &Poly<F>) -> AlgElement<F> {
        AlgElement::from_poly(f, &self.i)
    }

    /// `(ψ_1⋯ψ_z with the letters in `erase` removed)^∗ e(𝐣) Ψ_{[1:z]}` on `e(𝐢)`.
    fn sandwich(&self, z: usize, erase: &[usize]) -> AlgElement<F> {
        let mut letters: Vec<Token> = (1..=z).rev().map(Token::Cross).collect();
        letters.extend((1..=z).filter(|c| !erase.contains(c)).map(Token::Cross));
        AlgElement::from_word(GenWord { idem: self.i.clone(), letters }, F::one())
    }

    fn eraser(&self, r: usize, j: usize, ss: &[usize]) -> AlgElement<F> {
        let z = self.bd.m_at(self.point(r, j)) - 1;
        let erase: Vec<usize> = ss.iter().map(|&s| self.bd.m_at(self.point(s, j))).collect();
        self.sandwich(z, &erase)
    }

    fn label(p: GridPoint) -> String {
        format!("({},{})", p.r, p.j)
    }

    fn instances(&self, name: &'static str) -> Result<Vec<IdentityInstance<F>>, IdentityError> {
        let bd = self.bd;
        let (k, l) = (bd.k, bd.l);
        let mut out = Vec::new();
        let mut push = |label: String, lhs: AlgElement<F>, rhs: AlgElement<F>| {
            out.push(IdentityInstance { name, label, lhs, rhs })
        };
        let zero = AlgElement::<F>::zero();
        match name {
            "yz-inN-die" => {
                for z in 1..=bd.epsilon {
                    push(format!("z={z}"), AlgElement::dot(z, &self.i), zero.clone());
                }
            }
            "clean-Y" => {
                for p in bd.grid_points() {
                    let (a, b) = bd.block(p);
                    for z in a..=b {
                        push(format!("{} z={z}", Self::label(p)), AlgElement::dot(z, &self.i), self.elem(&self.y(p)));
                    }
                }
            }
            "diag-L" => {
                for p in bd.grid_points() {
                    let z = bd.m_at(p) - 1;
                    push(Self::label(p), self.elem(&self.cal_l(p)), self.sandwich(z, &[]));
                }
            }
            "square-Y10" => {
                let p = self.point(1, 0);
                push(Self::label(p), self.elem(&self.y(p).mul(&self.y(p))), zero.clone());
            }
            "square-Y1j" => {
                for j in 1..l - 1 {
                    let (p, q) = (self.point(1, j), self.point(1, j - 1));
                    push(Self::label(p), self.elem(&self.y(p).mul(&self.y(p))), self.elem(&self.y(q).mul(&self.y(p))));
                }
            }
            "square-Yrj" => {
                for r in 2..=k {
                    for j in 0..l - 1 {
                        let p = self.point(r, j);
                        let q = bd.previous(p).expect("r > 1 has a predecessor");
                        let mut rhs = self.y(q).mul(&self.y(p));
                        for s in 1..r {
                            rhs = rhs.sub(&self.cal_l(self.point(s, j)).mul(&self.cal_l(p)));
                        }
                        push(Self::label(p), self.elem(&self.y(p).mul(&self.y(p))), self.elem(&rhs));
                    }
                }
            }
            "EsLrj" => {
                for r in 2..=k {
                    for j in 0..l - 1 {
                        let p = self.point(r, j);
                        for s in 1..r {
                            let rhs = self.cal_l(self.point(s, j)).mul(&self.cal_l(p)).scale(-F::one());
                            push(format!("{} s={s}", Self::label(p)), self.eraser(r, j, &[s]), self.elem(&rhs));
                        }
                    }
                }
            }
            "Y1jE1Lrj" => {
                for r in 2..=k {
                    for j in 0..l - 1 {
                        let y1 = self.elem(&self.y(self.point(1, j)));
                        for g in 0..r - 1 {
                            for rest in (2..r).combinations(g) {
                                let ss: Vec<usize> = std::iter::once(1).chain(rest).collect();
                                let lhs = y1.mul(&self.eraser(r, j, &ss));
                                push(format!("{} S={ss:?}", Self::label(self.point(r, j))), lhs, zero.clone());
                            }
                        }
                    }
                }
            }
            "PsEsLrj" => {
                for r in 2..=k {
                    for j in 0..l - 1 {
                        for s in 1..r {
                            let prod = (1..=s).fold(Poly::one(self.m), |acc, u| acc.mul(&self.y(self.point(u, j))));
                            let lhs = self.elem(&prod).mul(&self.eraser(r, j, &[s]));
                            push(format!("{} s={s}", Self::label(self.point(r, j))), lhs, zero.clone());
                        }
                    }
                }
            }
            "Y-prod-reduction-2" => {
                for p in bd.grid_points() {
                    let below = bd.grid_points().into_iter().filter(|&q| bd.m_at(q) < bd.m_at(p));
                    let prod = below.fold(self.y(p).mul(&self.y(p)), |acc, q| acc.mul(&self.y(q)));
                    push(Self::label(p), self.elem(&prod), zero.clone());
                }
            }
            "HvsH" => {
                for p in bd.grid_points() {
                    let t = principal_tableau(bd, p, self.ctx)?.tableau;
                    let lhs = cellular_basis_element::<F>(&t, &t, self.ctx).expect("same tableau");
                    let prod = bd
                        .grid_upto(bd.m_at(p))
                        .into_iter()
                        .fold(Poly::one(self.m), |acc, q| acc.mul(&l_poly(self.m, bd.m_at(q))));
                    let rhs = AlgElement::from_poly(&prod, &t.residue_sequence(self.ctx));
                    push(Self::label(p), lhs, rhs);
                }
            }
            _ => unreachable!("names are canonicalized"),
        }
        Ok(out)
    }
}

/// All instances of `name` at every applicable grid point of `bd`.
pub fn identity_instances<F: Field>(
    name: &str,
    bd: &BlockData,
    ctx: &MultichargeCtx,
) -> Result<Vec<IdentityInstance<F>>, IdentityError> {
    let name = canonical_name(name)?;
    Builder::<F>::new(bd, ctx)?.instances(name)
}

/// Checks every instance of `name`; `point` restricts to one grid point when given.
pub fn verify_identity<F: Field>(
    engine: &Engine<F>,
    name: &str,
    bd: &BlockData,
    point: Option<GridPoint>,
) -> Result<Vec<IdentityCheck>, IdentityError> {
    let mut insts = identity_instances::<F>(name, bd, engine.ctx())?;
    if let Some(p) = point {
        let tag = Builder::<F>::label(p);
        insts.retain(|x| x.label == tag || x.label.starts_with(&format!("{tag} ")));
    }
    Ok(insts
        .par_iter()
        .map(|x| {
            let check = engine.equal(&x.lhs, &x.rhs);
            IdentityCheck {
                name: x.name.to_string(),
                label: x.label.clone(),
                verdict: check.verdict.to_string(),
                trace: check.trace.clone(),
                check,
            }
        })
        .collect())
}

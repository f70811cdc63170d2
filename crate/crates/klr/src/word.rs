//! Generator words `… ψ_r … y_s … e(𝐢)` and their linear combinations.
//!
//! A word stores its bottom idempotent `idem` and its tokens in application order:
//! `letters[0]` sits directly above `e(idem)`. Multiplication `a * b` stacks `a` on
//! top of `b` and vanishes unless the top of `b` equals the bottom of `a`.

use crate::field::Field;
use crate::perm::Letter;
use crate::poly::Poly;
use blobgt_residue::{MultichargeCtx, Relation, Residue, ResidueSeq};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Token {
    /// `y_r`, `1 <= r <= m`.
    Dot(usize),
    /// `ψ_r`, `1 <= r < m`.
    Cross(usize),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Dot(r) => write!(f, "y{r}"),
            Token::Cross(r) => write!(f, "s{r}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("token {0} out of range for m = {1}")]
    OutOfRange(Token, usize),
    #[error("cannot parse element: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenWord {
    pub idem: ResidueSeq,
    pub letters: Vec<Token>,
}

/// Local degree of `ψ_r e(𝐤)` when `k_r = a`, `k_{r+1} = b`.
pub fn crossing_degree(ctx: &MultichargeCtx, a: Residue, b: Residue) -> i64 {
    match ctx.relation(a, b) {
        Relation::Sisters => -2,
        Relation::CousinUp | Relation::CousinDown => 1,
        Relation::NonRelatives => 0,
    }
}

/// Degree of a cross-only word applied to `seq`.
pub fn word_degree(ctx: &MultichargeCtx, seq: &[Residue], letters: &[Letter]) -> i64 {
    let mut s = seq.to_vec();
    let mut d = 0;
    for &c in letters {
        let c = c as usize;
        d += crossing_degree(ctx, s[c - 1], s[c]);
        s.swap(c - 1, c);
    }
    d
}

impl GenWord {
    pub fn idempotent(idem: ResidueSeq) -> Self {
        GenWord { idem, letters: Vec::new() }
    }

    pub fn new(idem: ResidueSeq, letters: Vec<Token>) -> Result<Self, WordError> {
        let w = GenWord { idem, letters };
        w.validate()?;
        Ok(w)
    }

    /// Crosses only, from a letter list in application order.
    pub fn crosses(idem: ResidueSeq, letters: &[usize]) -> Self {
        GenWord { idem, letters: letters.iter().map(|&c| Token::Cross(c)).collect() }
    }

    pub fn m(&self) -> usize {
        self.idem.len()
    }

    pub fn validate(&self) -> Result<(), WordError> {
        let m = self.m();
        for &t in &self.letters {
            let ok = match t {
                Token::Dot(r) => (1..=m).contains(&r),
                Token::Cross(r) => r >= 1 && r < m,
            };
            if !ok {
                return Err(WordError::OutOfRange(t, m));
            }
        }
        Ok(())
    }

    /// Residue sequence at the top edge.
    pub fn top(&self) -> ResidueSeq {
        let mut s = self.idem.clone();
        for t in &self.letters {
            if let Token::Cross(r) = *t {
                s.swap(r - 1, r);
            }
        }
        s
    }

    /// Every intermediate residue sequence, bottom first, top last.
    pub fn through_sequences(&self) -> Vec<ResidueSeq> {
        let mut s = self.idem.clone();
        let mut out = vec![s.clone()];
        for t in &self.letters {
            if let Token::Cross(r) = *t {
                s.swap(r - 1, r);
                out.push(s.clone());
            }
        }
        out
    }

    pub fn degree(&self, ctx: &MultichargeCtx) -> i64 {
        let mut s = self.idem.clone();
        let mut d = 0;
        for t in &self.letters {
            match *t {
                Token::Dot(_) => d += 2,
                Token::Cross(r) => {
                    d += crossing_degree(ctx, s[r - 1], s[r]);
                    s.swap(r - 1, r);
                }
            }
        }
        d
    }

    /// Vertical flip: tokens reversed, bottom idempotent becomes the old top.
    pub fn star(&self) -> GenWord {
        GenWord { idem: self.top(), letters: self.letters.iter().rev().copied().collect() }
    }

    /// `self` stacked on top of `below`, if the edges match.
    pub fn compose(&self, below: &GenWord) -> Option<GenWord> {
        if below.top() != self.idem {
            return None;
        }
        let mut letters = below.letters.clone();
        letters.extend_from_slice(&self.letters);
        Some(GenWord { idem: below.idem.clone(), letters })
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idem: Vec<String> = self.idem.iter().map(|x| x.to_string()).collect();
        write!(f, "e({})", idem.join(","))?;
        for t in &self.letters {
            write!(f, " {t}")?;
        }
        Ok(())
    }
}

/// A finite linear combination of generator words; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElement<F: Field> {
    terms: BTreeMap<GenWord, F>,
}

impl<F: Field> Default for AlgElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> AlgElement<F> {
    pub fn zero() -> Self {
        AlgElement { terms: BTreeMap::new() }
    }

    pub fn from_word(w: GenWord, c: F) -> Self {
        let mut a = Self::zero();
        a.add_term(w, c);
        a
    }

    /// `e(𝐢)`.
    pub fn idempotent(i: &[Residue]) -> Self {
        Self::from_word(GenWord::idempotent(i.to_vec()), F::one())
    }

    /// `y_r e(𝐢)`.
    pub fn dot(r: usize, i: &[Residue]) -> Self {
        Self::from_word(GenWord { idem: i.to_vec(), letters: vec![Token::Dot(r)] }, F::one())
    }

    /// `ψ_r e(𝐢)`.
    pub fn cross(r: usize, i: &[Residue]) -> Self {
        Self::from_word(GenWord { idem: i.to_vec(), letters: vec![Token::Cross(r)] }, F::one())
    }

    /// `f(y) e(𝐢)` with each monomial written as dots in increasing position.
    pub fn from_poly(f: &Poly<F>, i: &[Residue]) -> Self {
        let mut out = Self::zero();
        for (a, &c) in f.terms() {
            let mut letters = Vec::new();
            for (r, &k) in a.iter().enumerate() {
                for _ in 0..k {
                    letters.push(Token::Dot(r + 1));
                }
            }
            out.add_term(GenWord { idem: i.to_vec(), letters }, c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<GenWord, F> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, w: GenWord, c: F) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(w.clone()).or_insert_with(F::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, &c) in &o.terms {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-F::one()))
    }

    pub fn scale(&self, c: F) -> Self {
        let mut r = Self::zero();
        for (w, &v) in &self.terms {
            r.add_term(w.clone(), v * c);
        }
        r
    }

    /// `self · below`: every pair of words is stacked, mismatched edges give zero.
    pub fn mul(&self, below: &Self) -> Self {
        let mut r = Self::zero();
        for (a, &c) in &self.terms {
            for (b, &d) in &below.terms {
                if let Some(w) = a.compose(b) {
                    r.add_term(w, c * d);
                }
            }
        }
        r
    }

    pub fn star(&self) -> Self {
        let mut r = Self::zero();
        for (w, &c) in &self.terms {
            r.add_term(w.star(), c);
        }
        r
    }

    /// Components by degree.
    pub fn homogeneous_components(&self, ctx: &MultichargeCtx) -> BTreeMap<i64, Self> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (w, &c) in &self.terms {
            out.entry(w.degree(ctx)).or_default().add_term(w.clone(), c);
        }
        out
    }

    /// The single degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, ctx: &MultichargeCtx) -> Option<i64> {
        let comps = self.homogeneous_components(ctx);
        if comps.len() == 1 {
            comps.keys().next().copied()
        } else {
            None
        }
    }

    /// Canonical text form: one `c * e(...) tokens` line per term, lines sorted.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut lines: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c} * {w}")).collect();
        lines.sort();
        lines.join("\n")
    }
}

impl<F: Field> fmt::Display for AlgElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<F: Field> FromStr for AlgElement<F> {
    type Err = WordError;

    /// Parses the text form; terms may be separated by newlines or `;`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Self::zero();
        for line in s.split(['\n', ';']).map(str::trim).filter(|l| !l.is_empty()) {
            if line == "0" {
                continue;
            }
            let (coef, rest) = line.split_once('*').ok_or_else(|| WordError::Parse(line.to_string()))?;
            let c: i64 = coef.trim().parse().map_err(|_| WordError::Parse(line.to_string()))?;
            let rest = rest.trim();
            let inner = rest
                .strip_prefix("e(")
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| WordError::Parse(line.to_string()))?;
            let idem: ResidueSeq = inner
                .0
                .split(',')
                .map(|x| x.trim().parse::<Residue>())
                .collect::<Result<_, _>>()
                .map_err(|_| WordError::Parse(line.to_string()))?;
            let mut letters = Vec::new();
            for tok in inner.1.split_whitespace() {
                let (kind, num) = tok.split_at(1);
                let r: usize = num.parse().map_err(|_| WordError::Parse(tok.to_string()))?;
                letters.push(match kind {
                    "y" => Token::Dot(r),
                    "s" => Token::Cross(r),
                    _ => return Err(WordError::Parse(tok.to_string())),
                });
            }
            out.add_term(GenWord::new(idem, letters)?, F::from_i64(c));
        }
        Ok(out)
    }
}

//! Graded dimensions of the spaces `e(𝐣) ℬ_m e(𝐢)` read off the graded cellular basis.
//!
//! `gdim(𝐣, 𝐢) = Σ_λ Σ_{𝔰 ∈ Std_λ(𝐣), 𝔱 ∈ Std_λ(𝐢)} q^{deg 𝔰 + deg 𝔱}`; a homogeneous
//! element of a degree outside its support is zero.

use crate::word::word_degree;
use blobgt_residue::{enumerate_std, official_word, MultichargeCtx, Residue, ResidueSeq, Tableau};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

/// Degree of `Ψ_𝔱`: its official word applied upwards from `𝐢^𝔱`.
pub fn tableau_degree(t: &Tableau, ctx: &MultichargeCtx) -> i64 {
    let w = official_word(t);
    let app: Vec<u8> = w.letters.iter().rev().map(|&c| c as u8).collect();
    word_degree(ctx, &t.residue_sequence(ctx), &app)
}

/// Tableau degrees of one residue sequence, grouped by shape.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeqGrading {
    pub by_shape: BTreeMap<Vec<u32>, Vec<i64>>,
}

impl SeqGrading {
    pub fn compute(seq: &[Residue], ctx: &MultichargeCtx) -> Self {
        let mut by_shape: BTreeMap<Vec<u32>, Vec<i64>> = BTreeMap::new();
        for t in enumerate_std(seq, ctx) {
            by_shape.entry(t.shape().heights).or_default().push(tableau_degree(&t, ctx));
        }
        SeqGrading { by_shape }
    }

    pub fn is_possible(&self) -> bool {
        !self.by_shape.is_empty()
    }

    pub fn std_count(&self) -> usize {
        self.by_shape.values().map(Vec::len).sum()
    }
}

/// Graded dimension of `e(𝐣) ℬ_m e(𝐢)` as degree → dimension.
pub fn gdim(j: &SeqGrading, i: &SeqGrading) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (shape, ds) in &j.by_shape {
        if let Some(dt) = i.by_shape.get(shape) {
            for a in ds {
                for b in dt {
                    *out.entry(a + b).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

/// Largest degree of a basis element of `ℬ_m(𝐢)`; `None` if `𝐢` is impossible.
pub fn max_grade(i: &[Residue], ctx: &MultichargeCtx) -> Option<i64> {
    let g = SeqGrading::compute(i, ctx);
    gdim(&g, &g).keys().next_back().copied()
}

/// `dim ℬ_m(𝐢) = Σ_λ |Std_λ(𝐢)|²`.
pub fn dim_truncation_formula(i: &[Residue], ctx: &MultichargeCtx) -> usize {
    SeqGrading::compute(i, ctx).by_shape.values().map(|v| v.len() * v.len()).sum()
}

/// `(j, i)`, the idempotents bounding a weight space.
type SeqPair = (ResidueSeq, ResidueSeq);

/// Shared, thread-safe memo of per-sequence gradings and pairwise supports.
#[derive(Debug)]
pub struct GradingCache {
    ctx: MultichargeCtx,
    seqs: Mutex<HashMap<ResidueSeq, Arc<SeqGrading>>>,
    supports: Mutex<HashMap<SeqPair, Arc<BTreeSet<i64>>>>,
}

impl GradingCache {
    pub fn new(ctx: MultichargeCtx) -> Self {
        GradingCache { ctx, seqs: Mutex::new(HashMap::new()), supports: Mutex::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &MultichargeCtx {
        &self.ctx
    }

    pub fn grading(&self, seq: &[Residue]) -> Arc<SeqGrading> {
        if let Some(g) = self.seqs.lock().unwrap().get(seq) {
            return g.clone();
        }
        let g = Arc::new(SeqGrading::compute(seq, &self.ctx));
        self.seqs.lock().unwrap().insert(seq.to_vec(), g.clone());
        g
    }

    pub fn is_possible(&self, seq: &[Residue]) -> bool {
        self.grading(seq).is_possible()
    }

    /// Degrees in which `e(𝐣) ℬ_m e(𝐢)` is nonzero.
    pub fn support(&self, j: &[Residue], i: &[Residue]) -> Arc<BTreeSet<i64>> {
        let key = (j.to_vec(), i.to_vec());
        if let Some(s) = self.supports.lock().unwrap().get(&key) {
            return s.clone();
        }
        let s: BTreeSet<i64> = gdim(&self.grading(j), &self.grading(i)).into_keys().collect();
        let s = Arc::new(s);
        self.supports.lock().unwrap().insert(key, s.clone());
        s
    }
}

//! Normal forms `Σ c · ψ_w y^a e(𝐢)` and the three-valued equality checker.
//!
//! For a fixed bottom `𝐢`, every element is rewritten into terms `ψ_w y^a e(𝐢)` where
//! `w` is the canonical reduced word of its permutation (see [`crate::perm`]) and the
//! dots sit at the bottom. Tokens are absorbed one at a time by left multiplication.
//! Word-level products are memoized per bottom.
//!
//! Besides the defining relations, a term is discarded when one of these holds:
//! * an intermediate idempotent is blob-impossible;
//! * the piece `ψ_{w'} y^a e(𝐢)` of some prefix `w'` has a degree in which
//!   `e(top) ℬ_m e(𝐢)` vanishes;
//! * the dots lie in the computed annihilator of `e(𝐢)` (see [`crate::ideal`]).
//!
//! All of these are identities in `ℬ_m`, so normalization never changes the element.
//! With `klr_only` set, none of them is used and the engine computes in the
//! uncyclotomic algebra, which is what the polynomial-representation tests exercise.

use crate::field::Field;
use crate::grading::GradingCache;
use crate::ideal::{DotIdeal, IdealConfig};
use crate::perm::{apply_word, canonical_word, is_left_descent, min_left_descent, strands, Letter};
use crate::poly::Mono;
use crate::word::{crossing_degree, AlgElement, GenWord, Token};
use blobgt_residue::{MultichargeCtx, Relation, Residue, ResidueSeq};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("step budget of {0} exhausted")]
    Budget(u64),
    #[error("rewriting re-entered an unfinished subproblem")]
    Cycle,
    #[error("internal rewriting invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Maximal number of fresh rewriting steps per normalized input word.
    pub budget: u64,
    /// Work in the algebra without cyclotomic or grading kills.
    pub klr_only: bool,
    /// Reduce dots modulo the computed annihilator of the bottom idempotent.
    pub use_ideal: bool,
    pub ideal: IdealConfig,
    /// Drop homogeneous terms of degree above this value.
    pub cap: Option<i64>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { budget: 50_000_000, klr_only: false, use_ideal: true, ideal: IdealConfig::default(), cap: None }
    }
}

impl EngineConfig {
    pub fn klr_only() -> Self {
        EngineConfig { klr_only: true, use_ideal: false, ..Default::default() }
    }
}

/// A normal term `ψ_w y^a e(𝐢)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalWord {
    pub idem: ResidueSeq,
    /// Canonical reduced word, application order.
    pub perm_word: Vec<Letter>,
    pub dot_exponents: Mono,
}

impl NormalWord {
    pub fn to_gen_word(&self) -> GenWord {
        let mut letters = Vec::new();
        for (r, &a) in self.dot_exponents.iter().enumerate() {
            for _ in 0..a {
                letters.push(Token::Dot(r + 1));
            }
        }
        letters.extend(self.perm_word.iter().map(|&c| Token::Cross(c as usize)));
        GenWord { idem: self.idem.clone(), letters }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Verified,
    RefutedByGrading,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Verified => "Verified",
            Verdict::RefutedByGrading => "RefutedByGrading",
            Verdict::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub verdict: Verdict,
    pub trace: String,
}

impl CheckVerdict {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }
}

type WordId = u32;
type Lin<F> = HashMap<(WordId, Mono), F>;

#[derive(Debug)]
struct WordInfo {
    letters: Vec<Letter>,
    parent: Option<WordId>,
    /// Residues at the top edge.
    seq: ResidueSeq,
    /// Strand arrangement at the top edge.
    strands: Vec<u8>,
    degree: i64,
    /// Whether this word and all its prefixes pass through possible idempotents.
    possible: bool,
    support: Arc<BTreeSet<i64>>,
}

/// Rewriting state for one bottom idempotent.
struct BottomEngine<F: Field> {
    bottom: ResidueSeq,
    m: usize,
    cache: Arc<GradingCache>,
    klr_only: bool,
    ideal: Option<Arc<DotIdeal<F>>>,
    budget: u64,
    steps: u64,
    call_steps: u64,
    words: Vec<WordInfo>,
    word_ids: HashMap<Vec<Letter>, WordId>,
    psi_memo: HashMap<(Letter, WordId), Arc<Lin<F>>>,
    y_memo: HashMap<(Letter, WordId), Arc<Lin<F>>>,
    raw_memo: HashMap<Vec<Letter>, Arc<Lin<F>>>,
    bring_memo: HashMap<(Vec<Letter>, Letter), Arc<Rewrite<F>>>,
    open: HashSet<(u8, Letter, WordId)>,
}

/// `ψ_word = ψ_{head ++ [c]} + Σ coef · ψ_corr`.
#[derive(Debug)]
struct Rewrite<F> {
    head: Vec<Letter>,
    corrections: Vec<(F, Vec<Letter>)>,
}

fn add_to<F: Field>(out: &mut Lin<F>, key: (WordId, Mono), c: F) {
    if c.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match out.entry(key) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn add_mono(a: &[u8], b: &[u8]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<F: Field> BottomEngine<F> {
    fn new(bottom: ResidueSeq, cache: Arc<GradingCache>, cfg: &EngineConfig, ideal: Option<Arc<DotIdeal<F>>>) -> Self {
        let m = bottom.len();
        let mut e = BottomEngine {
            bottom,
            m,
            cache,
            klr_only: cfg.klr_only,
            ideal,
            budget: cfg.budget,
            steps: 0,
            call_steps: 0,
            words: Vec::new(),
            word_ids: HashMap::new(),
            psi_memo: HashMap::new(),
            y_memo: HashMap::new(),
            raw_memo: HashMap::new(),
            bring_memo: HashMap::new(),
            open: HashSet::new(),
        };
        e.intern(&[]);
        e
    }

    fn ctx(&self) -> &MultichargeCtx {
        self.cache.ctx()
    }

    fn tick(&mut self) -> Result<(), EngineError> {
        self.steps += 1;
        self.call_steps += 1;
        if self.call_steps > self.budget {
            Err(EngineError::Budget(self.budget))
        } else {
            Ok(())
        }
    }

    /// Interns a canonical word together with all its prefixes.
    fn intern(&mut self, letters: &[Letter]) -> WordId {
        if let Some(&id) = self.word_ids.get(letters) {
            return id;
        }
        let info = if letters.is_empty() {
            let possible = self.klr_only || self.cache.is_possible(&self.bottom);
            let support = self.support_of(&self.bottom.clone());
            WordInfo {
                letters: Vec::new(),
                parent: None,
                seq: self.bottom.clone(),
                strands: (0..self.m as u8).collect(),
                degree: 0,
                possible,
                support,
            }
        } else {
            let n = letters.len();
            let pid = self.intern(&letters[..n - 1]);
            let p = &self.words[pid as usize];
            let c = letters[n - 1] as usize;
            let degree = p.degree + crossing_degree(self.ctx(), p.seq[c - 1], p.seq[c]);
            let mut seq = p.seq.clone();
            seq.swap(c - 1, c);
            let mut st = p.strands.clone();
            st.swap(c - 1, c);
            let parent_possible = p.possible;
            let possible = parent_possible && (self.klr_only || self.cache.is_possible(&seq));
            let support = self.support_of(&seq);
            WordInfo { letters: letters.to_vec(), parent: Some(pid), seq, strands: st, degree, possible, support }
        };
        let id = self.words.len() as WordId;
        self.words.push(info);
        self.word_ids.insert(letters.to_vec(), id);
        id
    }

    fn support_of(&self, top: &[Residue]) -> Arc<BTreeSet<i64>> {
        if self.klr_only {
            Arc::new(BTreeSet::new())
        } else {
            self.cache.support(top, &self.bottom)
        }
    }

    /// Whether `ψ_w y^b e(𝐢)` survives the possibility and degree tests.
    fn alive(&self, w: WordId, dot_degree: i64) -> bool {
        if self.klr_only {
            return true;
        }
        let mut cur = Some(w);
        while let Some(id) = cur {
            let info = &self.words[id as usize];
            if !info.possible || !info.support.contains(&(info.degree + dot_degree)) {
                return false;
            }
            cur = info.parent;
        }
        true
    }

    /// Adds `coef · ψ_w y^b e(𝐢)` to `out` after applying the kill rules.
    fn emit(&self, out: &mut Lin<F>, w: WordId, b: Mono, coef: F) {
        if self.klr_only {
            add_to(out, (w, b), coef);
            return;
        }
        let dd: i64 = 2 * b.iter().map(|&x| x as i64).sum::<i64>();
        if !self.alive(w, dd) {
            return;
        }
        match &self.ideal {
            Some(id) => {
                for (b2, c2) in id.reduce_mono(&b) {
                    add_to(out, (w, b2), coef * c2);
                }
            }
            None => {
                if b[0] == 0 {
                    add_to(out, (w, b), coef);
                }
            }
        }
    }

    fn unit(&self) -> Mono {
        vec![0u8; self.m]
    }

    fn open_guard(&mut self, key: (u8, Letter, WordId)) -> Result<(), EngineError> {
        if !self.open.insert(key) {
            return Err(EngineError::Cycle);
        }
        Ok(())
    }

    /// `y_r · Σ c ψ_u y^b e(𝐢)`.
    fn y_elem(&mut self, r: Letter, x: &Lin<F>) -> Result<Lin<F>, EngineError> {
        let mut out = Lin::default();
        let mut keys: Vec<_> = x.iter().map(|(k, &c)| (k.clone(), c)).collect();
        keys.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        for ((u, b), c) in keys {
            let t = self.y_df(r, u)?;
            for ((u2, b2), &c2) in t.iter() {
                self.emit(&mut out, *u2, add_mono(b2, &b), c * c2);
            }
        }
        Ok(out)
    }

    /// `ψ_r · Σ c ψ_u y^b e(𝐢)`.
    fn psi_elem(&mut self, r: Letter, x: &Lin<F>) -> Result<Lin<F>, EngineError> {
        let mut out = Lin::default();
        let mut keys: Vec<_> = x.iter().map(|(k, &c)| (k.clone(), c)).collect();
        keys.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        for ((u, b), c) in keys {
            let t = self.psi_df(r, u)?;
            for ((u2, b2), &c2) in t.iter() {
                self.emit(&mut out, *u2, add_mono(b2, &b), c * c2);
            }
        }
        Ok(out)
    }

    fn single(&self, w: WordId) -> Lin<F> {
        let mut out = Lin::default();
        self.emit(&mut out, w, self.unit(), F::one());
        out
    }

    /// Normal form of `y_r ψ_w e(𝐢)` for a canonical `w`.
    fn y_df(&mut self, r: Letter, w: WordId) -> Result<Arc<Lin<F>>, EngineError> {
        if let Some(v) = self.y_memo.get(&(r, w)) {
            return Ok(v.clone());
        }
        self.tick()?;
        self.open_guard((0, r, w))?;
        let res = self.y_df_compute(r, w)?;
        self.open.remove(&(0, r, w));
        let res = Arc::new(res);
        self.y_memo.insert((r, w), res.clone());
        Ok(res)
    }

    fn y_df_compute(&mut self, r: Letter, w: WordId) -> Result<Lin<F>, EngineError> {
        let info = &self.words[w as usize];
        let c = info.letters.last().copied();
        let Some(parent) = info.parent else {
            let mut b = self.unit();
            b[r as usize - 1] += 1;
            let mut out = Lin::default();
            self.emit(&mut out, w, b, F::one());
            return Ok(out);
        };
        let c = c.expect("nonempty word");
        // y_c ψ_c = ψ_c y_{c+1} + δ and y_{c+1} ψ_c = ψ_c y_c - δ.
        let r2 = if r == c {
            c + 1
        } else if r == c + 1 {
            c
        } else {
            r
        };
        let inner = self.y_df(r2, parent)?;
        let mut out = self.psi_elem(c, &inner)?;
        if r == c || r == c + 1 {
            let k = &self.words[parent as usize].seq;
            if k[c as usize - 1] == k[c as usize] {
                let sign = if r == c { F::one() } else { -F::one() };
                let unit = self.unit();
                self.emit(&mut out, parent, unit, sign);
            }
        }
        Ok(out)
    }

    /// Normal form of `ψ_r ψ_w e(𝐢)` for a canonical `w`.
    fn psi_df(&mut self, r: Letter, w: WordId) -> Result<Arc<Lin<F>>, EngineError> {
        if let Some(v) = self.psi_memo.get(&(r, w)) {
            return Ok(v.clone());
        }
        self.tick()?;
        self.open_guard((1, r, w))?;
        let res = self.psi_df_compute(r, w)?;
        self.open.remove(&(1, r, w));
        let res = Arc::new(res);
        self.psi_memo.insert((r, w), res.clone());
        Ok(res)
    }

    /// `Q_r(𝐤) · x`, where `ψ_r² e(𝐤) = Q_r(𝐤) e(𝐤)` and `𝐤` is the common top of `x`.
    fn quadratic(&mut self, k: &[Residue], r: Letter, x: &Lin<F>) -> Result<Lin<F>, EngineError> {
        let (a, b) = (k[r as usize - 1], k[r as usize]);
        match self.ctx().relation(a, b) {
            Relation::Sisters => Ok(Lin::default()),
            Relation::NonRelatives => Ok(x.clone()),
            rel => {
                // CousinUp: y_{r+1} - y_r; CousinDown: y_r - y_{r+1}.
                let (plus, minus) = if rel == Relation::CousinUp { (r + 1, r) } else { (r, r + 1) };
                let mut out = self.y_elem(plus, x)?;
                for (k2, c) in self.y_elem(minus, x)? {
                    add_to(&mut out, k2, -c);
                }
                Ok(out)
            }
        }
    }

    fn psi_df_compute(&mut self, r: Letter, w: WordId) -> Result<Lin<F>, EngineError> {
        let info = &self.words[w as usize];
        let (strands_w, parent_w) = (info.strands.clone(), info.parent);
        let mut new_seq = info.seq.clone();
        new_seq.swap(r as usize - 1, r as usize);
        if !self.klr_only && !self.cache.is_possible(&new_seq) {
            return Ok(Lin::default());
        }
        let letters = info.letters.clone();
        if !is_left_descent(&strands_w, r) {
            let mut st = strands_w;
            st.swap(r as usize - 1, r as usize);
            let c = min_left_descent(&st).expect("nonempty permutation");
            let mut word = letters;
            word.push(r);
            if c == r {
                let id = self.intern(&word);
                return Ok(self.single(id));
            }
            // Reduced but not canonical: bring the least descent to the top first.
            let rw = self.bring_last(&word, c)?;
            let head = self.raw(&rw.head)?;
            let mut out = self.psi_elem(c, &head)?;
            for (coef, cw) in rw.corrections.iter() {
                for (k, v) in self.raw(cw)?.iter() {
                    add_to(&mut out, k.clone(), *coef * *v);
                }
            }
            return Ok(out);
        }
        let parent = parent_w.expect("descent implies nonempty word");
        if *letters.last().unwrap() == r {
            let k = self.words[parent as usize].seq.clone();
            let x = self.single(parent);
            return self.quadratic(&k, r, &x);
        }
        let rw = self.bring_last(&letters, r)?;
        let k = apply_word(&self.bottom, &rw.head);
        let head = self.raw(&rw.head)?;
        let mut out = self.quadratic(&k, r, &head)?;
        for (coef, cw) in rw.corrections.iter() {
            let x = self.raw(cw)?;
            for (key, v) in self.psi_elem(r, &x)? {
                add_to(&mut out, key, *coef * v);
            }
        }
        Ok(out)
    }

    /// Normal form of `ψ_word e(𝐢)` for an arbitrary cross word.
    fn raw(&mut self, word: &[Letter]) -> Result<Arc<Lin<F>>, EngineError> {
        if let Some(v) = self.raw_memo.get(word) {
            return Ok(v.clone());
        }
        self.tick()?;
        let res = if !self.klr_only && !self.passes_possible(word) {
            Lin::default()
        } else if canonical_word(&strands(self.m, word)) == word {
            let id = self.intern(word);
            self.single(id)
        } else {
            let n = word.len();
            let below = self.raw(&word[..n - 1])?;
            self.psi_elem(word[n - 1], &below)?
        };
        let res = Arc::new(res);
        self.raw_memo.insert(word.to_vec(), res.clone());
        Ok(res)
    }

    fn passes_possible(&self, word: &[Letter]) -> bool {
        let mut s = self.bottom.clone();
        for &c in word {
            s.swap(c as usize - 1, c as usize);
            if !self.cache.is_possible(&s) {
                return false;
            }
        }
        true
    }

    /// Rewrites the reduced word `word`, which has `c` as a left descent, so that `c` is
    /// its last letter, collecting the braid corrections.
    fn bring_last(&mut self, word: &[Letter], c: Letter) -> Result<Arc<Rewrite<F>>, EngineError> {
        let key = (word.to_vec(), c);
        if let Some(v) = self.bring_memo.get(&key) {
            return Ok(v.clone());
        }
        self.tick()?;
        let n = word.len();
        if n == 0 || !is_left_descent(&strands(self.m, word), c) {
            return Err(EngineError::Internal(format!("{c} is not a left descent of {word:?}")));
        }
        let d = word[n - 1];
        let rw = if d == c {
            Rewrite { head: word[..n - 1].to_vec(), corrections: Vec::new() }
        } else if d.abs_diff(c) > 1 {
            let inner = self.bring_last(&word[..n - 1], c)?;
            let mut head = inner.head.clone();
            head.push(d);
            let corrections = inner.corrections.iter().map(|(k, w)| (*k, [w.as_slice(), &[d]].concat())).collect();
            Rewrite { head, corrections }
        } else {
            // word = u1 c d; u1 = u2 d; then d c d -> c d c with a correction.
            let inner = self.bring_last(&word[..n - 1], c)?;
            let inner2 = self.bring_last(&inner.head, d)?;
            let u2 = inner2.head.clone();
            let mut corrections: Vec<(F, Vec<Letter>)> =
                inner.corrections.iter().map(|(k, w)| (*k, [w.as_slice(), &[d]].concat())).collect();
            corrections.extend(inner2.corrections.iter().map(|(k, w)| (*k, [w.as_slice(), &[c, d]].concat())));
            let coef = self.braid_coefficient(&u2, d, c);
            if !coef.is_zero() {
                corrections.push((coef, u2.clone()));
            }
            let mut head = u2;
            head.extend_from_slice(&[c, d]);
            Rewrite { head, corrections }
        };
        let rw = Arc::new(rw);
        self.bring_memo.insert(key, rw.clone());
        Ok(rw)
    }

    /// Coefficient `κ` in `ψ_{u d c d} = ψ_{u c d c} + κ ψ_u` (application order).
    fn braid_coefficient(&self, u: &[Letter], d: Letter, c: Letter) -> F {
        let k = apply_word(&self.bottom, u);
        let r = d.min(c) as usize;
        let (a, b, a2) = (k[r - 1], k[r], k[r + 1]);
        if a != a2 {
            return F::zero();
        }
        // ψ_r ψ_{r+1} ψ_r e(𝐤) - ψ_{r+1} ψ_r ψ_{r+1} e(𝐤) = α e(𝐤).
        let alpha = match self.ctx().relation(a, b) {
            Relation::CousinUp => -F::one(),
            Relation::CousinDown => F::one(),
            _ => F::zero(),
        };
        if d < c {
            alpha
        } else {
            -alpha
        }
    }

    /// Normal form of a word on this bottom.
    fn normalize_word(&mut self, tokens: &[Token]) -> Result<Lin<F>, EngineError> {
        // A failed earlier call may have left subproblems marked as open.
        self.open.clear();
        self.call_steps = 0;
        let mut cur = self.single(0);
        for t in tokens {
            cur = match *t {
                Token::Dot(r) => self.y_elem(r as Letter, &cur)?,
                Token::Cross(r) => self.psi_elem(r as Letter, &cur)?,
            };
        }
        Ok(cur)
    }

    fn to_terms(&self, x: &Lin<F>) -> Vec<(NormalWord, F)> {
        let mut out: Vec<(NormalWord, F)> = x
            .iter()
            .map(|((w, b), &c)| {
                (
                    NormalWord {
                        idem: self.bottom.clone(),
                        perm_word: self.words[*w as usize].letters.clone(),
                        dot_exponents: b.clone(),
                    },
                    c,
                )
            })
            .collect();
        out.sort();
        out
    }
}

/// Per-context rewriting engine. Bottom-specific state is created lazily and kept for
/// reuse across calls.
pub struct Engine<F: Field> {
    cache: Arc<GradingCache>,
    cfg: EngineConfig,
    bottoms: Mutex<HashMap<ResidueSeq, Arc<Mutex<BottomEngine<F>>>>>,
}

const WORKER_STACK: usize = 1 << 30;

impl<F: Field> Engine<F> {
    pub fn new(ctx: MultichargeCtx, cfg: EngineConfig) -> Self {
        Self::with_cache(Arc::new(GradingCache::new(ctx)), cfg)
    }

    pub fn with_cache(cache: Arc<GradingCache>, cfg: EngineConfig) -> Self {
        Engine { cache, cfg, bottoms: Mutex::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &MultichargeCtx {
        self.cache.ctx()
    }

    pub fn cache(&self) -> &Arc<GradingCache> {
        &self.cache
    }

    pub fn config(&self) -> &EngineConfig {
        &self.cfg
    }

    fn bottom(&self, i: &[Residue]) -> Arc<Mutex<BottomEngine<F>>> {
        let mut map = self.bottoms.lock().unwrap();
        if let Some(b) = map.get(i) {
            return b.clone();
        }
        let ideal = if self.cfg.use_ideal && !self.cfg.klr_only && self.cache.is_possible(i) {
            DotIdeal::compute(&self.cache, i, &self.cfg.ideal).ok().map(Arc::new)
        } else {
            None
        };
        let b = Arc::new(Mutex::new(BottomEngine::new(i.to_vec(), self.cache.clone(), &self.cfg, ideal)));
        map.insert(i.to_vec(), b.clone());
        b
    }

    /// The annihilator used to reduce dots on `e(𝐢)`, if one was computed.
    pub fn ideal(&self, i: &[Residue]) -> Option<Arc<DotIdeal<F>>> {
        self.bottom(i).lock().unwrap().ideal.clone()
    }

    /// Steps spent so far on bottom `𝐢`.
    pub fn steps(&self, i: &[Residue]) -> u64 {
        self.bottom(i).lock().unwrap().steps
    }

    /// Normal terms of `x`, sorted.
    pub fn normal_terms(&self, x: &AlgElement<F>) -> Result<Vec<(NormalWord, F)>, EngineError> {
        let mut by_bottom: BTreeMap<ResidueSeq, Vec<(GenWord, F)>> = BTreeMap::new();
        for (w, &c) in x.terms() {
            by_bottom.entry(w.idem.clone()).or_default().push((w.clone(), c));
        }
        let mut out = Vec::new();
        for (i, words) in by_bottom {
            let be = self.bottom(&i);
            let cap = self.cfg.cap;
            let ctx = self.ctx().clone();
            let terms = std::thread::scope(|s| {
                std::thread::Builder::new()
                    .stack_size(WORKER_STACK)
                    .spawn_scoped(s, || -> Result<Vec<(NormalWord, F)>, EngineError> {
                        let mut be = be.lock().unwrap();
                        let mut acc = Lin::default();
                        for (w, c) in &words {
                            for (k, v) in be.normalize_word(&w.letters)? {
                                add_to(&mut acc, k, *c * v);
                            }
                        }
                        let mut t = be.to_terms(&acc);
                        if let Some(cap) = cap {
                            t.retain(|(nw, _)| nw.to_gen_word().degree(&ctx) <= cap);
                        }
                        Ok(t)
                    })
                    .expect("spawn rewriting worker")
                    .join()
                    .expect("rewriting worker panicked")
            })?;
            out.extend(terms);
        }
        out.sort();
        Ok(out)
    }

    pub fn normalize(&self, x: &AlgElement<F>) -> Result<AlgElement<F>, EngineError> {
        let mut out = AlgElement::zero();
        for (nw, c) in self.normal_terms(x)? {
            out.add_term(nw.to_gen_word(), c);
        }
        Ok(out)
    }

    /// Three-valued equality; `Verified` only when `a - b` normalizes to zero.
    pub fn equal(&self, a: &AlgElement<F>, b: &AlgElement<F>) -> CheckVerdict {
        let diff = a.sub(b);
        match self.normal_terms(&diff) {
            Err(e) => {
                CheckVerdict { verdict: Verdict::Inconclusive, trace: format!("{} input terms; {e}", diff.len()) }
            }
            Ok(t) if t.is_empty() => {
                CheckVerdict { verdict: Verdict::Verified, trace: format!("{} input terms reduce to 0", diff.len()) }
            }
            Ok(t) => {
                let verdict =
                    if self.certified_nonzero(&t) { Verdict::RefutedByGrading } else { Verdict::Inconclusive };
                let shown: Vec<String> =
                    t.iter().take(4).map(|(nw, c)| format!("{c} * {}", nw.to_gen_word())).collect();
                CheckVerdict {
                    verdict,
                    trace: format!("{} input terms leave {} normal terms: {}", diff.len(), t.len(), shown.join(" + ")),
                }
            }
        }
    }

    /// A remainder is certainly nonzero when its degree-0 part on some possible `e(𝐢)ℬ_m e(𝐢)`
    /// is a nonzero multiple of `e(𝐢)`.
    fn certified_nonzero(&self, terms: &[(NormalWord, F)]) -> bool {
        if self.cfg.klr_only {
            return false;
        }
        let mut comp: BTreeMap<ResidueSeq, Vec<&(NormalWord, F)>> = BTreeMap::new();
        for t in terms {
            let gw = t.0.to_gen_word();
            if gw.degree(self.ctx()) == 0 && gw.top() == gw.idem {
                comp.entry(gw.idem.clone()).or_default().push(t);
            }
        }
        comp.iter().any(|(i, ts)| {
            ts.len() == 1 && ts[0].0.perm_word.is_empty() && !ts[0].1.is_zero() && self.cache.is_possible(i)
        })
    }

    /// `e(𝐢) x e(𝐢)`, normalized.
    pub fn truncate(&self, x: &AlgElement<F>, i: &[Residue]) -> Result<AlgElement<F>, EngineError> {
        let e = AlgElement::idempotent(i);
        self.normalize(&e.mul(x).mul(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F5;
    use blobgt_residue::ctx_from_residues;

    fn ctx() -> MultichargeCtx {
        ctx_from_residues(7, 5, &[0, 2, 4], 0, 10).unwrap()
    }

    fn fund(m: usize) -> ResidueSeq {
        (0..m).map(|j| (-(j as i64)).rem_euclid(7) as u8).collect()
    }

    #[test]
    fn first_dot_and_impossible_idempotents_vanish() {
        let eng = Engine::<F5>::new(ctx(), EngineConfig::default());
        let i = fund(10);
        assert!(eng.normalize(&AlgElement::dot(1, &i)).unwrap().is_zero());
        assert!(eng.normalize(&AlgElement::idempotent(&[1, 0, 6])).unwrap().is_zero());
        let e = eng.normalize(&AlgElement::idempotent(&i)).unwrap();
        assert_eq!(e, AlgElement::idempotent(&i));
    }

    #[test]
    fn non_relatives_square_to_one() {
        let eng = Engine::<F5>::new(ctx(), EngineConfig::default());
        // Residues 0 and 2 are non-relatives.
        let i = vec![0u8, 2];
        let x = AlgElement::cross(1, &i);
        let sq = AlgElement::cross(1, &[2, 0]).mul(&x);
        assert!(eng.equal(&sq, &AlgElement::idempotent(&i)).is_verified());
    }

    #[test]
    fn refutes_identity_against_zero() {
        let eng = Engine::<F5>::new(ctx(), EngineConfig::default());
        let i = fund(4);
        let v = eng.equal(&AlgElement::idempotent(&i), &AlgElement::zero());
        assert_eq!(v.verdict, Verdict::RefutedByGrading);
    }
}

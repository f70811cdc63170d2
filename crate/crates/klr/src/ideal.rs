//! The annihilator of `e(𝐢)` among dot polynomials.
//!
//! [`DotIdeal`] stores, degree by degree, a subspace of polynomials `f` with
//! `f e(𝐢) = 0` in `ℬ_m`. It is computed as a fixpoint over a finite set of residue
//! sequences, where each rule below is a consequence of the defining relations:
//!
//! * `y_1 e(𝐤) = 0`, and a degree `d` with no basis element of degree `2d` in
//!   `e(𝐤)ℬ_m e(𝐤)` is entirely annihilated;
//! * cousins at `r` with `s_r 𝐤` impossible give `(y_r - y_{r+1}) e(𝐤) = 0`;
//! * `f e(𝐤) = 0` implies `y_j f e(𝐤) = 0`, `∂_r f e(𝐤) = 0` for sisters at `r`,
//!   `s_r f e(s_r 𝐤) = 0` for non-relatives and `(y_r - y_{r+1}) s_r f e(s_r 𝐤) = 0`
//!   for cousins;
//! * for a trio `(a, a±1, a)` at `r`, the braid relation gives `f e(𝐤) = 0` whenever
//!   `s_r f` annihilates `e(s_r 𝐤)` and `s_{r+1} f` annihilates `e(s_{r+1} 𝐤)`.
//!
//! The computed space is therefore always contained in the true annihilator, so
//! `dim Pol / ideal` is an upper bound for the dimension of `Pol · e(𝐢)`.

use crate::field::Field;
use crate::grading::{max_grade, GradingCache};
use crate::linalg::{axpy, collect_svec, intersect, EchelonSpace, SVec};
use crate::poly::{demazure_mono, Mono, MonoBasis, Poly};
use blobgt_residue::{is_blob_possible, Relation, Residue, ResidueSeq};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("residue sequence {0:?} is not blob-possible")]
    Impossible(ResidueSeq),
    #[error("sequence universe exceeds {0} members")]
    TooLarge(usize),
}

#[derive(Debug, Clone)]
pub struct IdealConfig {
    /// Enumerate every blob-possible rearrangement of `𝐢` when there are at most this many.
    pub full_universe_cap: usize,
    /// Hard cap on the number of sequences taking part in the fixpoint.
    pub max_universe: usize,
    /// Degrees tracked beyond the vanishing degree of the target.
    pub extra_degrees: usize,
}

impl Default for IdealConfig {
    fn default() -> Self {
        IdealConfig { full_universe_cap: 2000, max_universe: 20_000, extra_degrees: 1 }
    }
}

/// Polynomials known to annihilate `e(𝐢)`, in reduced echelon form per degree.
#[derive(Debug, Clone)]
pub struct DotIdeal<F: Field> {
    target: ResidueSeq,
    basis: Arc<MonoBasis>,
    /// Every polynomial of degree `>= vanish` annihilates `e(𝐢)`.
    vanish: usize,
    rref: Vec<BTreeMap<u32, SVec<F>>>,
    universe_size: usize,
}

impl<F: Field> DotIdeal<F> {
    pub fn compute(cache: &GradingCache, i: &[Residue], cfg: &IdealConfig) -> Result<Self, IdealError> {
        let ctx = cache.ctx();
        let mg = max_grade(i, ctx).ok_or_else(|| IdealError::Impossible(i.to_vec()))?;
        let d_van = (mg / 2) as usize;
        let dtop = d_van + cfg.extra_degrees;
        let m = i.len();
        let universe = build_universe(cache, i, d_van, cfg)?;
        let basis = Arc::new(MonoBasis::new(m, dtop + 1));
        let mut fx = Fixpoint::<F>::new(cache, &basis, universe, dtop);
        fx.run();
        let k0 = fx.index[i];
        let rref = (0..=d_van).map(|d| if d == 0 { BTreeMap::new() } else { fx.spaces[k0][d].rref() }).collect();
        Ok(DotIdeal { target: i.to_vec(), basis, vanish: d_van + 1, rref, universe_size: fx.seqs.len() })
    }

    pub fn target(&self) -> &[Residue] {
        &self.target
    }

    pub fn nvars(&self) -> usize {
        self.target.len()
    }

    /// Smallest degree from which every polynomial annihilates `e(𝐢)`.
    pub fn vanishing_degree(&self) -> usize {
        self.vanish
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    /// Normal form of a single monomial times `coef`, added into `out`.
    fn reduce_into(&self, a: &Mono, coef: F, out: &mut BTreeMap<Mono, F>) {
        let d: usize = a.iter().map(|&x| x as usize).sum();
        if d >= self.vanish || coef.is_zero() {
            return;
        }
        let rows = &self.rref[d];
        let col = self.basis.index(a);
        let layer = self.basis.layer(d);
        let mut push = |c: u32, v: F| {
            let e = out.entry(layer[c as usize].clone()).or_insert_with(F::zero);
            *e += v;
        };
        match rows.get(&col) {
            None => push(col, coef),
            Some(row) => {
                for &(c, v) in row {
                    if c != col {
                        push(c, -coef * v);
                    }
                }
            }
        }
    }

    /// Canonical representative of `f` modulo the ideal, in standard monomials only.
    pub fn reduce(&self, f: &Poly<F>) -> Poly<F> {
        let mut out = BTreeMap::new();
        for (a, &c) in f.terms() {
            self.reduce_into(a, c, &mut out);
        }
        let mut p = Poly::zero(self.nvars());
        for (a, c) in out {
            p.add_term(a, c);
        }
        p
    }

    /// Normal form of `y^a` without building a polynomial first.
    pub fn reduce_mono(&self, a: &Mono) -> Vec<(Mono, F)> {
        let mut out = BTreeMap::new();
        self.reduce_into(a, F::one(), &mut out);
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.reduce(f).is_zero()
    }

    /// Number of standard monomials per degree `0..vanishing_degree`.
    pub fn quotient_dims(&self) -> Vec<usize> {
        (0..self.vanish).map(|d| self.basis.layer(d).len() - self.rref[d].len()).collect()
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient_dims().iter().sum()
    }

    /// Monomials not eliminated by any pivot; their images span `Pol · e(𝐢)`.
    pub fn standard_monomials(&self) -> Vec<Mono> {
        let mut out = Vec::new();
        for d in 0..self.vanish {
            for (c, a) in self.basis.layer(d).iter().enumerate() {
                if !self.rref[d].contains_key(&(c as u32)) {
                    out.push(a.clone());
                }
            }
        }
        out
    }
}

fn swapped(k: &[Residue], r: usize) -> ResidueSeq {
    let mut s = k.to_vec();
    s.swap(r - 1, r);
    s
}

/// Sequences whose annihilators feed the target's.
fn build_universe(
    cache: &GradingCache,
    i: &[Residue],
    depth: usize,
    cfg: &IdealConfig,
) -> Result<Vec<ResidueSeq>, IdealError> {
    if let Some(all) = all_rearrangements(cache, i, cfg.full_universe_cap) {
        return Ok(all);
    }
    // Cousin swaps, each followed by pulling the moved strand left through non-relatives.
    let ctx = cache.ctx();
    let mut seen: HashSet<ResidueSeq> = HashSet::from([i.to_vec()]);
    let mut order = vec![i.to_vec()];
    let mut frontier = vec![i.to_vec()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for k in &frontier {
            for r in 1..k.len() {
                if !ctx.are_cousins(k[r - 1], k[r]) {
                    continue;
                }
                let mut s = swapped(k, r);
                if !cache.is_possible(&s) {
                    continue;
                }
                let mut chain = vec![s.clone()];
                let mut q = r;
                while q > 1 && ctx.are_non_relatives(s[q - 2], s[q - 1]) {
                    s = swapped(&s, q - 1);
                    q -= 1;
                    chain.push(s.clone());
                }
                for x in chain {
                    if seen.insert(x.clone()) {
                        order.push(x.clone());
                        next.push(x);
                    }
                }
            }
            if order.len() > cfg.max_universe {
                return Err(IdealError::TooLarge(cfg.max_universe));
            }
        }
        frontier = next;
    }
    Ok(order)
}

/// All distinct blob-possible rearrangements of `i`, or `None` past `cap`.
fn all_rearrangements(cache: &GradingCache, i: &[Residue], cap: usize) -> Option<Vec<ResidueSeq>> {
    let ctx = cache.ctx();
    let mut counts: BTreeMap<Residue, usize> = BTreeMap::new();
    for &x in i {
        *counts.entry(x).or_insert(0) += 1;
    }
    let mut out = vec![i.to_vec()];
    let mut prefix = Vec::with_capacity(i.len());
    fn rec(
        ctx: &blobgt_residue::MultichargeCtx,
        n: usize,
        counts: &mut BTreeMap<Residue, usize>,
        prefix: &mut ResidueSeq,
        target: &[Residue],
        out: &mut Vec<ResidueSeq>,
        cap: usize,
    ) -> bool {
        if prefix.len() == n {
            if prefix.as_slice() != target {
                out.push(prefix.clone());
            }
            return out.len() <= cap;
        }
        let keys: Vec<Residue> = counts.iter().filter(|(_, &c)| c > 0).map(|(&k, _)| k).collect();
        for x in keys {
            prefix.push(x);
            if is_blob_possible(prefix, ctx) {
                *counts.get_mut(&x).unwrap() -= 1;
                let ok = rec(ctx, n, counts, prefix, target, out, cap);
                *counts.get_mut(&x).unwrap() += 1;
                if !ok {
                    prefix.pop();
                    return false;
                }
            }
            prefix.pop();
        }
        true
    }
    if rec(ctx, i.len(), &mut counts, &mut prefix, i, &mut out, cap) {
        Some(out)
    } else {
        None
    }
}

/// Precomputed action of the polynomial operators on monomial indices.
struct Ops {
    m: usize,
    basis: Arc<MonoBasis>,
    /// `swap[d][r-1][c]`: index of `s_r` applied to monomial `c` of degree `d`.
    swap: Vec<Vec<Vec<u32>>>,
    /// `mul[d][j-1][c]`: index of `y_j` times monomial `c` of degree `d`.
    mul: Vec<Vec<Vec<u32>>>,
}

impl Ops {
    fn new(basis: &Arc<MonoBasis>, dtop: usize) -> Self {
        let m = basis.nvars();
        let mut swap = Vec::new();
        let mut mul = Vec::new();
        for d in 0..=dtop {
            let layer = basis.layer(d);
            swap.push(
                (1..m)
                    .map(|r| {
                        layer
                            .iter()
                            .map(|a| {
                                let mut b = a.clone();
                                b.swap(r - 1, r);
                                basis.index(&b)
                            })
                            .collect()
                    })
                    .collect(),
            );
            mul.push(
                (1..=m)
                    .map(|j| {
                        layer
                            .iter()
                            .map(|a| {
                                let mut b = a.clone();
                                b[j - 1] += 1;
                                basis.index(&b)
                            })
                            .collect()
                    })
                    .collect(),
            );
        }
        Ops { m, basis: basis.clone(), swap, mul }
    }

    fn swap<F: Field>(&self, v: &SVec<F>, d: usize, r: usize) -> SVec<F> {
        let t = &self.swap[d][r - 1];
        collect_svec(v.iter().map(|&(c, x)| (t[c as usize], x)).collect())
    }

    fn mul<F: Field>(&self, v: &SVec<F>, d: usize, j: usize) -> SVec<F> {
        let t = &self.mul[d][j - 1];
        collect_svec(v.iter().map(|&(c, x)| (t[c as usize], x)).collect())
    }

    /// `(y_r - y_{r+1}) · s_r v`, degree `d + 1`.
    fn cousin<F: Field>(&self, v: &SVec<F>, d: usize, r: usize) -> SVec<F> {
        let s = self.swap(v, d, r);
        axpy(&self.mul(&s, d, r), -F::one(), &self.mul(&s, d, r + 1))
    }

    /// Divided difference at `r`, degree `d - 1`.
    fn demazure<F: Field>(&self, v: &SVec<F>, d: usize, r: usize) -> SVec<F> {
        let layer = self.basis.layer(d);
        let mut pairs = Vec::new();
        for &(c, x) in v {
            for (b, plus) in demazure_mono(&layer[c as usize], r) {
                pairs.push((self.basis.index(&b), if plus { x } else { -x }));
            }
        }
        collect_svec(pairs)
    }

    fn unit<F: Field>(&self, a: &[u8]) -> SVec<F> {
        vec![(self.basis.index(a), F::one())]
    }
}

struct Fixpoint<'a, F: Field> {
    cache: &'a GradingCache,
    ops: Ops,
    dtop: usize,
    seqs: Vec<ResidueSeq>,
    index: HashMap<ResidueSeq, usize>,
    spaces: Vec<Vec<EchelonSpace<F>>>,
    queue: VecDeque<(usize, usize, SVec<F>)>,
}

impl<'a, F: Field> Fixpoint<'a, F> {
    fn new(cache: &'a GradingCache, basis: &Arc<MonoBasis>, seqs: Vec<ResidueSeq>, dtop: usize) -> Self {
        let index = seqs.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        let spaces =
            seqs.iter().map(|_| (0..=dtop).map(|d| EchelonSpace::new(basis.layer(d).len())).collect()).collect();
        Fixpoint { cache, ops: Ops::new(basis, dtop), dtop, seqs, index, spaces, queue: VecDeque::new() }
    }

    fn insert(&mut self, k: usize, d: usize, v: SVec<F>) {
        if d == 0 || d > self.dtop || v.is_empty() {
            return;
        }
        if let Some(row) = self.spaces[k][d].insert(v) {
            self.queue.push_back((k, d, row));
        }
    }

    /// Marks degree `d` and above as annihilated and queues the unit rows for propagation.
    fn fill_from(&mut self, k: usize, d: usize) {
        for dd in d..=self.dtop {
            if self.spaces[k][dd].is_full() {
                continue;
            }
            let layer = self.ops.basis.layer(dd).to_vec();
            for a in layer {
                let u = self.ops.unit(&a);
                if self.spaces[k][dd].insert(u.clone()).is_some() {
                    self.queue.push_back((k, dd, u));
                }
            }
        }
    }

    fn seed(&mut self) {
        let ctx = self.cache.ctx().clone();
        let m = self.ops.m;
        for k in 0..self.seqs.len() {
            let seq = self.seqs[k].clone();
            let support = self.cache.support(&seq, &seq);
            if let Some(d) = (1..=self.dtop).find(|&d| !support.contains(&(2 * d as i64))) {
                self.fill_from(k, d);
            }
            let mut y1 = vec![0u8; m];
            y1[0] = 1;
            let u = self.ops.unit(&y1);
            self.insert(k, 1, u);
            for r in 1..m {
                if ctx.are_cousins(seq[r - 1], seq[r]) && !self.cache.is_possible(&swapped(&seq, r)) {
                    let mut a = vec![0u8; m];
                    a[r - 1] = 1;
                    let mut b = vec![0u8; m];
                    b[r] = 1;
                    let row =
                        collect_svec(vec![(self.ops.basis.index(&a), F::one()), (self.ops.basis.index(&b), -F::one())]);
                    self.insert(k, 1, row);
                }
            }
        }
    }

    fn drain(&mut self) {
        let ctx = self.cache.ctx().clone();
        let m = self.ops.m;
        while let Some((k, d, v)) = self.queue.pop_front() {
            let seq = self.seqs[k].clone();
            for r in 1..m {
                match ctx.relation(seq[r - 1], seq[r]) {
                    Relation::Sisters => {
                        if d >= 2 {
                            let w = self.ops.demazure(&v, d, r);
                            self.insert(k, d - 1, w);
                        }
                    }
                    Relation::NonRelatives => {
                        if let Some(&k2) = self.index.get(&swapped(&seq, r)) {
                            let w = self.ops.swap(&v, d, r);
                            self.insert(k2, d, w);
                        }
                    }
                    Relation::CousinUp | Relation::CousinDown => {
                        if d < self.dtop {
                            if let Some(&k2) = self.index.get(&swapped(&seq, r)) {
                                let w = self.ops.cousin(&v, d, r);
                                self.insert(k2, d + 1, w);
                            }
                        }
                    }
                }
            }
            if d < self.dtop && !self.spaces[k][d + 1].is_full() {
                for j in 1..=m {
                    let w = self.ops.mul(&v, d, j);
                    self.insert(k, d + 1, w);
                }
            }
        }
    }

    /// One pass of the braid rule over every trio; returns whether anything was added.
    fn trio_pass(&mut self, stamps: &mut HashMap<(usize, usize, usize), (usize, usize)>) -> bool {
        let ctx = self.cache.ctx().clone();
        let mut grew = false;
        for k in 0..self.seqs.len() {
            let seq = self.seqs[k].clone();
            for r in 1..seq.len().saturating_sub(1) {
                let (a, b, c) = (seq[r - 1], seq[r], seq[r + 1]);
                if a != c || !ctx.are_cousins(a, b) {
                    continue;
                }
                let left = swapped(&seq, r);
                let right = swapped(&seq, r + 1);
                let side = |s: &ResidueSeq| -> Option<Option<usize>> {
                    if !self.cache.is_possible(s) {
                        Some(None)
                    } else {
                        self.index.get(s).map(|&x| Some(x))
                    }
                };
                let (Some(l), Some(rt)) = (side(&left), side(&right)) else { continue };
                for d in 1..=self.dtop {
                    if self.spaces[k][d].is_full() {
                        continue;
                    }
                    let stamp = (
                        l.map_or(usize::MAX, |x| self.spaces[x][d].dim()),
                        rt.map_or(usize::MAX, |x| self.spaces[x][d].dim()),
                    );
                    if stamps.get(&(k, r, d)) == Some(&stamp) {
                        continue;
                    }
                    stamps.insert((k, r, d), stamp);
                    let rows_l: Option<Vec<SVec<F>>> = l
                        .map(|x| self.spaces[x][d].sorted_rows().into_iter().map(|v| self.ops.swap(v, d, r)).collect());
                    let rows_r: Option<Vec<SVec<F>>> = rt.map(|x| {
                        self.spaces[x][d].sorted_rows().into_iter().map(|v| self.ops.swap(v, d, r + 1)).collect()
                    });
                    let new_rows = match (rows_l, rows_r) {
                        (None, None) => Vec::new(),
                        (Some(v), None) | (None, Some(v)) => v,
                        (Some(lv), Some(rv)) => {
                            let mut sp = EchelonSpace::new(self.spaces[k][d].ncols());
                            for v in rv {
                                sp.insert(v);
                            }
                            intersect(&lv, &sp)
                        }
                    };
                    for v in new_rows {
                        let before = self.queue.len();
                        self.insert(k, d, v);
                        grew |= self.queue.len() > before;
                    }
                }
            }
        }
        grew
    }

    fn run(&mut self) {
        self.seed();
        let mut stamps = HashMap::new();
        loop {
            self.drain();
            if !self.trio_pass(&mut stamps) {
                break;
            }
        }
    }
}

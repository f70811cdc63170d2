//! Blocks of vertical residue sequences: the numbers `ε`, `b_j`, the grid `m_(r,j)`,
//! tableaux chosen by subsets of the grid, and the factorization of their words.

use blobgt_residue::{
    cmp_nodes, max_tableau, official_word, MultichargeCtx, Node, OneColumnMultipartition, Residue, ResidueSeq, SymWord,
    Tableau,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("m={m} is not epsilon + k*e with k >= 1 (epsilon={epsilon}, e={e})")]
    NotPeriodic { m: usize, epsilon: usize, e: usize },
    #[error("base component t={0} out of range")]
    BadBase(usize),
    #[error("quasi-vertical prefix h={h} must be shorter than m={m}")]
    BadPrefix { h: usize, m: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// A grid index `(r, j)` with `1 <= r <= k`, `0 <= j <= l - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub r: usize,
    pub j: usize,
}

impl GridPoint {
    pub fn new(r: usize, j: usize) -> Self {
        GridPoint { r, j }
    }
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.r, self.j)
    }
}

/// Inclusive integer interval.
pub type Interval = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockData {
    pub base: usize,
    pub e: usize,
    pub l: usize,
    pub epsilon: usize,
    pub b: Vec<usize>,
    pub k: usize,
    pub m: usize,
    /// `grid[r-1][j] = m_(r,j)`.
    grid: Vec<Vec<usize>>,
    /// `κ` rotated so that `κ_base` comes first.
    kappa_rot: Vec<Residue>,
}

/// `κ̂` rotated to start at component `t`, adding `e` to wrapped entries.
fn rotated_hat(ctx: &MultichargeCtx, t: usize) -> Vec<i64> {
    let (l, e) = (ctx.l(), ctx.e() as i64);
    (0..l)
        .map(|i| {
            let idx = t - 1 + i;
            if idx < l {
                ctx.kappa_hat()[idx]
            } else {
                ctx.kappa_hat()[idx - l] + e
            }
        })
        .collect()
}

/// `(ε, b_0..b_{l-2})` for base `t`.
pub fn epsilon_and_b(ctx: &MultichargeCtx, t: usize) -> Result<(usize, Vec<usize>), BlockError> {
    if t == 0 || t > ctx.l() {
        return Err(BlockError::BadBase(t));
    }
    let h = rotated_hat(ctx, t);
    let (l, e) = (ctx.l(), ctx.e() as i64);
    // 1-based accessor into the rotated representatives.
    let kh = |i: usize| h[i - 1];
    let eps = kh(1) - kh(l) + e;
    let mut b = Vec::with_capacity(l - 1);
    for j in 0..l - 2 {
        b.push((kh(l - j) - kh(l - j - 1)) as usize);
    }
    b.push((kh(2) - kh(l) + e) as usize);
    Ok((eps as usize, b))
}

/// `i_j = κ_1 - j + 1`.
pub fn fundamental_sequence(ctx: &MultichargeCtx, m: usize) -> ResidueSeq {
    vertical_sequence(ctx, 1, m)
}

/// `j_i = κ_t - i + 1`.
pub fn vertical_sequence(ctx: &MultichargeCtx, t: usize, m: usize) -> ResidueSeq {
    let kt = ctx.kappa()[t - 1] as i64;
    (1..=m as i64).map(|i| ctx.res(kt - i + 1)).collect()
}

/// Block data for base `t`.
///
/// The fundamental base requires `m = ε + k e`. Other vertical bases accept any
/// `m >= ε + e`, keep the `k = ⌊(m - ε)/e⌋` full periods and let the last block run to `m`.
pub fn block_data(ctx: &MultichargeCtx, t: usize, m: usize) -> Result<BlockData, BlockError> {
    let (eps, b) = epsilon_and_b(ctx, t)?;
    let e = ctx.e() as usize;
    let periodic = m > eps && (m - eps).is_multiple_of(e);
    if !periodic && (t == 1 || m < eps + e) {
        return Err(BlockError::NotPeriodic { m, epsilon: eps, e });
    }
    let mut bd = build(ctx, t, eps, b, (m - eps) / e);
    bd.m = m;
    Ok(bd)
}

/// Block data for the smallest periodic length `ε + k e >= max(m, ε + e)`; used for prefixes.
pub fn enclosing_block_data(ctx: &MultichargeCtx, t: usize, m: usize) -> Result<BlockData, BlockError> {
    let (eps, b) = epsilon_and_b(ctx, t)?;
    let e = ctx.e() as usize;
    let k = if m <= eps + e { 1 } else { (m - eps).div_ceil(e) };
    Ok(build(ctx, t, eps, b, k))
}

fn build(ctx: &MultichargeCtx, t: usize, eps: usize, b: Vec<usize>, k: usize) -> BlockData {
    let (l, e) = (ctx.l(), ctx.e() as usize);
    let mut grid = vec![vec![0usize; l - 1]; k];
    for r in 0..k {
        for j in 0..l - 1 {
            grid[r][j] = match (r, j) {
                (0, 0) => eps + 1,
                (0, j) => grid[0][j - 1] + b[j - 1],
                (r, j) => grid[r - 1][j] + e,
            };
        }
    }
    let kappa_rot = (0..l).map(|i| ctx.kappa()[(t - 1 + i) % l]).collect();
    BlockData { base: t, e, l, epsilon: eps, b, k, m: eps + k * e, grid, kappa_rot }
}

impl BlockData {
    /// `n = k(l - 1)`.
    pub fn n(&self) -> usize {
        self.k * (self.l - 1)
    }

    pub fn m_at(&self, p: GridPoint) -> usize {
        self.grid[p.r - 1][p.j]
    }

    /// Grid points in ascending `m_(r,j)` order.
    pub fn grid_points(&self) -> Vec<GridPoint> {
        (1..=self.k).flat_map(|r| (0..self.l - 1).map(move |j| GridPoint::new(r, j))).collect()
    }

    /// `M = {m_(r,j)}` in ascending order.
    pub fn grid_values(&self) -> Vec<usize> {
        self.grid_points().iter().map(|&p| self.m_at(p)).collect()
    }

    /// Rank of a grid point in ascending order (0-based).
    pub fn rank(&self, p: GridPoint) -> usize {
        (p.r - 1) * (self.l - 1) + p.j
    }

    pub fn point_at_rank(&self, idx: usize) -> GridPoint {
        GridPoint::new(idx / (self.l - 1) + 1, idx % (self.l - 1))
    }

    pub fn point_of_position(&self, z: usize) -> Option<GridPoint> {
        self.grid_points().into_iter().find(|&p| self.m_at(p) == z)
    }

    /// Grid points with `m_(r,j) <= a`.
    pub fn grid_upto(&self, a: usize) -> Vec<GridPoint> {
        self.grid_points().into_iter().filter(|&p| self.m_at(p) <= a).collect()
    }

    /// The grid point preceding `p` in ascending order.
    pub fn previous(&self, p: GridPoint) -> Option<GridPoint> {
        let r = self.rank(p);
        (r > 0).then(|| self.point_at_rank(r - 1))
    }

    pub fn n_interval(&self) -> Interval {
        (1, self.epsilon)
    }

    /// `B_(r,j)`: from `m_(r,j)` to one before the next grid value, the last ending at `m`.
    pub fn block(&self, p: GridPoint) -> Interval {
        let idx = self.rank(p);
        let end = if idx + 1 < self.n() { self.m_at(self.point_at_rank(idx + 1)) - 1 } else { self.m };
        (self.m_at(p), end)
    }

    pub fn blocks(&self) -> BTreeMap<GridPoint, Interval> {
        self.grid_points().into_iter().map(|p| (p, self.block(p))).collect()
    }

    /// The grid point whose block contains `z`, or `None` for `z ∈ N`.
    pub fn block_of(&self, z: usize) -> Option<GridPoint> {
        self.grid_points().into_iter().rev().find(|&p| self.m_at(p) <= z)
    }

    /// Residue carried at `m_(r,j)`: `κ_{l-j}` in the rotated indexing.
    pub fn grid_residue(&self, p: GridPoint) -> Residue {
        self.kappa_rot[self.l - p.j - 1]
    }

    pub fn kappa_rotated(&self) -> &[Residue] {
        &self.kappa_rot
    }
}

/// Confirms the residue pattern on the grid and returns `m_(r,j) ↦ residue`.
pub fn residue_at_grid(bd: &BlockData, ctx: &MultichargeCtx) -> Result<BTreeMap<GridPoint, Residue>, BlockError> {
    let seq = vertical_sequence(ctx, bd.base, bd.m);
    let kt = ctx.kappa()[bd.base - 1];
    for (s, &x) in seq.iter().enumerate() {
        let pos = s + 1;
        if (x == kt) != ((pos - 1) % bd.e == 0) {
            return Err(BlockError::InternalInconsistency(format!("kappa_base occurs off-period at {pos}")));
        }
    }
    let mut out = BTreeMap::new();
    for p in bd.grid_points() {
        let got = seq[bd.m_at(p) - 1];
        if got != bd.grid_residue(p) {
            return Err(BlockError::InternalInconsistency(format!(
                "position {} carries {got}, expected {}",
                bd.m_at(p),
                bd.grid_residue(p)
            )));
        }
        out.insert(p, got);
    }
    Ok(out)
}

/// `𝔱⟨A⟩`: at grid positions take the highest (if chosen) or lowest addable node of the
/// right residue; elsewhere the addable node is forced.
pub fn tableau_from_subset(
    chosen: &BTreeSet<usize>,
    bd: &BlockData,
    ctx: &MultichargeCtx,
) -> Result<Tableau, BlockError> {
    let seq = vertical_sequence(ctx, bd.base, bd.m);
    let grid: BTreeSet<usize> = bd.grid_values().into_iter().collect();
    let mut heights = vec![0u32; ctx.l()];
    let mut entries = Vec::with_capacity(bd.m);
    for (s, &x) in seq.iter().enumerate() {
        let a = s + 1;
        let mut cands: Vec<Node> =
            (0..ctx.l()).map(|h| Node::new(heights[h] + 1, h as u32 + 1)).filter(|n| n.residue(ctx) == x).collect();
        cands.sort_by(|p, q| cmp_nodes(q, p));
        let pick = if grid.contains(&a) {
            if chosen.contains(&a) {
                cands.first()
            } else {
                cands.last()
            }
        } else if cands.len() == 1 {
            cands.first()
        } else {
            return Err(BlockError::InternalInconsistency(format!(
                "position {a} has {} addable nodes of residue {x}",
                cands.len()
            )));
        };
        let n = *pick.ok_or_else(|| BlockError::InternalInconsistency(format!("no addable node at {a}")))?;
        heights[n.comp as usize - 1] += 1;
        entries.push(n);
    }
    Tableau::new(entries, ctx.l()).ok_or_else(|| BlockError::InternalInconsistency("not a tableau".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalTableau {
    pub tableau: Tableau,
    pub shape: OneColumnMultipartition,
    pub max_tableau: Tableau,
}

/// `𝔱_(r,j) = 𝔱⟨M_{≤ m_(r,j)}⟩` with its shape and the maximal tableau of that shape.
pub fn principal_tableau(bd: &BlockData, p: GridPoint, ctx: &MultichargeCtx) -> Result<PrincipalTableau, BlockError> {
    let bound = bd.m_at(p);
    let chosen: BTreeSet<usize> = bd.grid_values().into_iter().filter(|&v| v <= bound).collect();
    let tableau = tableau_from_subset(&chosen, bd, ctx)?;
    let shape = tableau.shape();
    let max_tableau = max_tableau(&shape);
    Ok(PrincipalTableau { tableau, shape, max_tableau })
}

pub fn principal_tableaux(
    bd: &BlockData,
    ctx: &MultichargeCtx,
) -> Result<BTreeMap<GridPoint, PrincipalTableau>, BlockError> {
    bd.grid_points().into_iter().map(|p| Ok((p, principal_tableau(bd, p, ctx)?))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HtFactorization {
    pub head: SymWord,
    /// `(grid point, T-factor)` in ascending grid order, starting after `(1,0)`.
    pub tails: Vec<(GridPoint, SymWord)>,
}

impl HtFactorization {
    pub fn concatenation(&self) -> SymWord {
        self.tails.iter().fold(self.head.clone(), |acc, (_, w)| acc.concat(w))
    }
}

/// The tableau agreeing with `t` below `from` and filling the rest of its shape ▷-decreasingly.
fn tail_decreasing(t: &Tableau, from: usize) -> Tableau {
    let mut entries: Vec<Node> = t.entries()[..from - 1].to_vec();
    let used: BTreeSet<Node> = entries.iter().copied().collect();
    let mut rest: Vec<Node> = t.shape().nodes().into_iter().filter(|n| !used.contains(n)).collect();
    rest.sort_by(|a, b| cmp_nodes(b, a));
    entries.extend(rest);
    Tableau::new(entries, t.level()).expect("same node set")
}

/// Factors `W(𝔱_(r,j))` as `H^(1,0)` followed by the `T^(s,t)` for grid points up to `(r,j)`.
pub fn ht_factorization(bd: &BlockData, p: GridPoint, ctx: &MultichargeCtx) -> Result<HtFactorization, BlockError> {
    let t = principal_tableau(bd, p, ctx)?.tableau;
    let points = bd.grid_upto(bd.m_at(p));
    let mut prev: Option<SymWord> = None;
    let mut head = SymWord::default();
    let mut tails = Vec::new();
    for q in points {
        let h = official_word(&tail_decreasing(&t, bd.m_at(q)));
        match &prev {
            None => head = h.clone(),
            Some(pw) => {
                if !h.letters.starts_with(&pw.letters) {
                    return Err(BlockError::InternalInconsistency(format!(
                        "H-word at {q} does not extend the previous one"
                    )));
                }
                tails.push((q, SymWord::new(h.letters[pw.len()..].to_vec())));
            }
        }
        prev = Some(h);
    }
    let out = HtFactorization { head, tails };
    if out.concatenation() != official_word(&t) {
        return Err(BlockError::InternalInconsistency("factors do not multiply to the official word".into()));
    }
    Ok(out)
}

/// `𝐢^max|_h ⊗ 𝐣` with `h = r0 l` and `j_k = κ_t - r0 - k + 1`.
pub fn quasi_vertical_sequence(ctx: &MultichargeCtx, t: usize, r0: usize, m: usize) -> Result<ResidueSeq, BlockError> {
    let h = r0 * ctx.l();
    if h >= m {
        return Err(BlockError::BadPrefix { h, m });
    }
    if t == 0 || t > ctx.l() {
        return Err(BlockError::BadBase(t));
    }
    let mut out = max_prefix(ctx, r0);
    let kt = ctx.kappa()[t - 1] as i64;
    out.extend((1..=(m - h) as i64).map(|k| ctx.res(kt - r0 as i64 - k + 1)));
    Ok(out)
}

/// Residues of the first `r0` rows of the maximal shape, row by row.
fn max_prefix(ctx: &MultichargeCtx, r0: usize) -> ResidueSeq {
    let mut out = Vec::with_capacity(r0 * ctx.l());
    for rho in 1..=r0 as i64 {
        for &k in ctx.kappa() {
            out.push(ctx.res(k as i64 - rho + 1));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceClass {
    Vertical { t: usize },
    QuasiVertical { t: usize, r0: usize },
    Neither,
}

pub fn detect_quasi_vertical(seq: &[Residue], ctx: &MultichargeCtx) -> SequenceClass {
    let m = seq.len();
    let matches_tail = |tail: &[Residue], shift: usize| -> Option<usize> {
        (1..=ctx.l()).find(|&t| {
            let kt = ctx.kappa()[t - 1] as i64;
            tail.iter().enumerate().all(|(k, &x)| x == ctx.res(kt - shift as i64 - k as i64))
        })
    };
    if let Some(t) = matches_tail(seq, 0) {
        return SequenceClass::Vertical { t };
    }
    let mut r0 = 1;
    while r0 * ctx.l() < m {
        let h = r0 * ctx.l();
        if seq[..h] == max_prefix(ctx, r0)[..] {
            if let Some(t) = matches_tail(&seq[h..], r0) {
                return SequenceClass::QuasiVertical { t, r0 };
            }
        }
        r0 += 1;
    }
    SequenceClass::Neither
}

/// For a vertical or quasi-vertical sequence, the number of grid points inside its
/// vertical part; `|Std| = 2^n` predicts the Gelfand-Tsetlin dimension.
pub fn predicted_grid_size(seq: &[Residue], ctx: &MultichargeCtx) -> Option<usize> {
    let (t, g) = match detect_quasi_vertical(seq, ctx) {
        SequenceClass::Vertical { t } => (t, seq.len()),
        SequenceClass::QuasiVertical { t, r0 } => (t, seq.len() - r0 * ctx.l()),
        SequenceClass::Neither => return None,
    };
    let bd = enclosing_block_data(ctx, t, g).ok()?;
    Some(bd.grid_upto(g).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use blobgt_residue::ctx_from_residues;

    fn ctx(e: u32, k: &[i64], m: usize) -> MultichargeCtx {
        ctx_from_residues(e, 5, k, 0, m).unwrap()
    }

    #[test]
    fn b_numbers_sum_to_e() {
        let c = ctx(13, &[0, 4, 6, 10], 40);
        for t in 1..=4 {
            let (_, b) = epsilon_and_b(&c, t).unwrap();
            assert_eq!(b.iter().sum::<usize>(), 13);
        }
    }

    #[test]
    fn not_periodic() {
        let c = ctx(13, &[0, 2, 5, 7], 40);
        assert!(matches!(block_data(&c, 1, 31), Err(BlockError::NotPeriodic { .. })));
    }

    #[test]
    fn block_of_positions() {
        let c = ctx(7, &[0, 2, 4], 10);
        let bd = block_data(&c, 1, 10).unwrap();
        assert_eq!(bd.block_of(3), None);
        assert_eq!(bd.block_of(4), Some(GridPoint::new(1, 0)));
        assert_eq!(bd.block_of(10), Some(GridPoint::new(1, 1)));
    }
}

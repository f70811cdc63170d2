//! Standard tableaux with a given residue sequence, blob-possibility and the ∼ relation.

use crate::ctx::{MultichargeCtx, Residue, ResidueSeq};
use crate::node::{cmp_nodes, Node};
use crate::tableau::Tableau;
use std::collections::{BTreeSet, HashSet, VecDeque};
use thiserror::Error;

/// All of `Std(𝐢)`, in ▷-descending branch order (the first tableau is the greatest).
pub fn enumerate_std(seq: &[Residue], ctx: &MultichargeCtx) -> Vec<Tableau> {
    let l = ctx.l();
    let mut out = Vec::new();
    let mut heights = vec![0u32; l];
    let mut entries: Vec<Node> = Vec::with_capacity(seq.len());
    fn rec(
        seq: &[Residue],
        ctx: &MultichargeCtx,
        heights: &mut Vec<u32>,
        entries: &mut Vec<Node>,
        out: &mut Vec<Tableau>,
    ) {
        let pos = entries.len();
        if pos == seq.len() {
            out.push(Tableau::new(entries.clone(), heights.len()).expect("standard by construction"));
            return;
        }
        let mut cands: Vec<Node> = (0..heights.len())
            .map(|h| Node::new(heights[h] + 1, h as u32 + 1))
            .filter(|n| n.residue(ctx) == seq[pos])
            .collect();
        cands.sort_by(|a, b| cmp_nodes(b, a));
        for n in cands {
            let h = n.comp as usize - 1;
            heights[h] += 1;
            entries.push(n);
            rec(seq, ctx, heights, entries, out);
            entries.pop();
            heights[h] -= 1;
        }
    }
    rec(seq, ctx, &mut heights, &mut entries, &mut out);
    out
}

/// Reachable shapes after reading `seq`, as height vectors.
pub fn reachable_shapes(seq: &[Residue], ctx: &MultichargeCtx) -> HashSet<Vec<u32>> {
    let l = ctx.l();
    let mut states: HashSet<Vec<u32>> = HashSet::from([vec![0u32; l]]);
    for &x in seq {
        let mut next = HashSet::new();
        for st in &states {
            for h in 0..l {
                if ctx.res(ctx.kappa()[h] as i64 - st[h] as i64) == x {
                    let mut s = st.clone();
                    s[h] += 1;
                    next.insert(s);
                }
            }
        }
        states = next;
        if states.is_empty() {
            break;
        }
    }
    states
}

/// True iff some one-column standard tableau has residue sequence `seq`.
pub fn is_blob_possible(seq: &[Residue], ctx: &MultichargeCtx) -> bool {
    !reachable_shapes(seq, ctx).is_empty()
}

/// All blob-possible sequences of length `m`, lexicographically ordered.
pub fn all_possible_sequences(ctx: &MultichargeCtx, m: usize) -> Vec<ResidueSeq> {
    let mut out = Vec::new();
    let start: HashSet<Vec<u32>> = HashSet::from([vec![0u32; ctx.l()]]);
    fn rec(
        ctx: &MultichargeCtx,
        m: usize,
        prefix: &mut ResidueSeq,
        states: &HashSet<Vec<u32>>,
        out: &mut Vec<ResidueSeq>,
    ) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for x in 0..ctx.e() as Residue {
            let mut next = HashSet::new();
            for st in states {
                for h in 0..ctx.l() {
                    if ctx.res(ctx.kappa()[h] as i64 - st[h] as i64) == x {
                        let mut s = st.clone();
                        s[h] += 1;
                        next.insert(s);
                    }
                }
            }
            if !next.is_empty() {
                prefix.push(x);
                rec(ctx, m, prefix, &next, out);
                prefix.pop();
            }
        }
    }
    rec(ctx, m, &mut Vec::new(), &start, &mut out);
    out
}

/// `s_k 𝐢` when positions `k, k+1` (1-based) carry non-relatives.
pub fn sim_step(seq: &[Residue], k: usize, ctx: &MultichargeCtx) -> Option<ResidueSeq> {
    if k == 0 || k >= seq.len() {
        return None;
    }
    if !ctx.are_non_relatives(seq[k - 1], seq[k]) {
        return None;
    }
    let mut out = seq.to_vec();
    out.swap(k - 1, k);
    Some(out)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("equivalence class exceeds the cap of {0} sequences")]
pub struct ClassTooLarge(pub usize);

/// The ∼-class of `seq` by breadth-first closure.
pub fn sim_class(seq: &[Residue], ctx: &MultichargeCtx, cap: usize) -> Result<BTreeSet<ResidueSeq>, ClassTooLarge> {
    let mut seen: BTreeSet<ResidueSeq> = BTreeSet::from([seq.to_vec()]);
    let mut queue: VecDeque<ResidueSeq> = VecDeque::from([seq.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for k in 1..cur.len() {
            if let Some(next) = sim_step(&cur, k, ctx) {
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(ClassTooLarge(cap));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

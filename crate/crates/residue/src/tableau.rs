//! One-column tableaux, liftable numbers and official reduced words.

use crate::ctx::{MultichargeCtx, ResidueSeq};
use crate::node::{cmp_multipartitions, cmp_nodes, Dominance, Node, OneColumnMultipartition, SizeMismatch};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A bijection from `{1..m}` to the nodes of a one-column shape; `entries[k-1] = 𝔱(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tableau {
    entries: Vec<Node>,
    level: usize,
}

impl Tableau {
    /// Builds a tableau; entries must be distinct one-column nodes filling a shape.
    pub fn new(entries: Vec<Node>, level: usize) -> Option<Tableau> {
        let t = Tableau { entries, level };
        let shape = t.shape();
        let mut seen = std::collections::HashSet::new();
        for n in &t.entries {
            if n.col != 1 || n.comp == 0 || n.comp as usize > level || !seen.insert(*n) {
                return None;
            }
            if !shape.contains(n) {
                return None;
            }
        }
        Some(t)
    }

    pub fn entries(&self) -> &[Node] {
        &self.entries
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// `𝔱(k)`, 1-based.
    pub fn at(&self, k: usize) -> Node {
        self.entries[k - 1]
    }

    pub fn shape(&self) -> OneColumnMultipartition {
        let mut heights = vec![0u32; self.level];
        for n in &self.entries {
            let h = &mut heights[n.comp as usize - 1];
            *h = (*h).max(n.row);
        }
        OneColumnMultipartition { heights }
    }

    /// `𝔱|_k`: the entries `1..=k`.
    pub fn restrict(&self, k: usize) -> Tableau {
        Tableau { entries: self.entries[..k].to_vec(), level: self.level }
    }

    /// Entries increase down every column.
    pub fn is_standard(&self) -> bool {
        let mut next = vec![1u32; self.level];
        for n in &self.entries {
            let slot = &mut next[n.comp as usize - 1];
            if n.row != *slot {
                return false;
            }
            *slot += 1;
        }
        true
    }

    /// `𝔱 s_a`: entries `a` and `a + 1` exchanged (1-based `a`).
    pub fn swap(&self, a: usize) -> Tableau {
        let mut entries = self.entries.clone();
        entries.swap(a - 1, a);
        Tableau { entries, level: self.level }
    }

    pub fn residue_sequence(&self, ctx: &MultichargeCtx) -> ResidueSeq {
        residue_sequence(self, ctx)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); self.level];
        for (k, n) in self.entries.iter().enumerate() {
            let c = &mut cols[n.comp as usize - 1];
            let row = n.row as usize;
            if c.len() < row {
                c.resize(row, 0);
            }
            c[row - 1] = k + 1;
        }
        let parts: Vec<String> =
            cols.iter().map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", parts.join(" | "))
    }
}

pub fn residue_sequence(t: &Tableau, ctx: &MultichargeCtx) -> ResidueSeq {
    t.entries.iter().map(|n| n.residue(ctx)).collect()
}

/// Dominance on tableaux through the shapes of all restrictions.
pub fn cmp_tableaux(s: &Tableau, t: &Tableau) -> Result<Dominance, SizeMismatch> {
    if s.size() != t.size() {
        return Err(SizeMismatch(s.size(), t.size()));
    }
    let (mut ge, mut le) = (true, true);
    for k in 1..=s.size() {
        match cmp_multipartitions(&s.restrict(k).shape(), &t.restrict(k).shape())? {
            Dominance::Equal => {}
            Dominance::Above => le = false,
            Dominance::Below => ge = false,
            Dominance::Incomparable => return Ok(Dominance::Incomparable),
        }
    }
    Ok(match (ge, le) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Above,
        (false, true) => Dominance::Below,
        (false, false) => Dominance::Incomparable,
    })
}

/// `𝔱^λ`: entry 1 at the ▷-greatest node, and so on downwards.
pub fn max_tableau(lambda: &OneColumnMultipartition) -> Tableau {
    let mut nodes = lambda.nodes();
    nodes.sort_by(|a, b| cmp_nodes(b, a));
    Tableau { entries: nodes, level: lambda.level() }
}

/// Whether `a` is liftable: `𝔱 s_a` is standard and strictly dominates `𝔱`.
///
/// The two restriction sequences differ only at `a`, where the shapes differ by
/// one node each, so this reduces to comparing `𝔱(a+1)` with `𝔱(a)`.
pub fn is_liftable(t: &Tableau, a: usize) -> bool {
    let (x, y) = (t.at(a), t.at(a + 1));
    x.comp != y.comp && cmp_nodes(&y, &x) == Ordering::Greater
}

pub fn liftable_set(t: &Tableau) -> Vec<usize> {
    (1..t.size()).filter(|&a| is_liftable(t, a)).collect()
}

/// A word in the simple transpositions `s_1, ..., s_{m-1}`; letters are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct SymWord {
    pub letters: Vec<usize>,
}

impl SymWord {
    pub fn new(letters: Vec<usize>) -> Self {
        SymWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `s_{[a:-1:b]}` for `a >= b` or `s_{[a:b]}` for `a <= b`.
    pub fn range(a: usize, b: usize) -> SymWord {
        if a >= b {
            SymWord { letters: (b..=a).rev().collect() }
        } else {
            SymWord { letters: (a..=b).collect() }
        }
    }

    pub fn concat(&self, other: &SymWord) -> SymWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        SymWord { letters }
    }

    /// The permutation `s_{j_1} ∘ ... ∘ s_{j_r}` in one-line notation, 1-based values.
    pub fn to_perm(&self, m: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (1..=m).collect();
        // p = w as a function: apply letters right to left to each point.
        for &a in self.letters.iter().rev() {
            for v in p.iter_mut() {
                if *v == a {
                    *v = a + 1;
                } else if *v == a + 1 {
                    *v = a;
                }
            }
        }
        p
    }
}

impl fmt::Display for SymWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let s: Vec<String> = self.letters.iter().map(|a| format!("s{a}")).collect();
        f.write_str(&s.join(" "))
    }
}

/// Number of inversions of a one-line permutation.
pub fn coxeter_length(perm: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                n += 1;
            }
        }
    }
    n
}

/// The official reduced word: lift the largest liftable entry until none is left,
/// then read the lifts backwards.
pub fn official_word(t: &Tableau) -> SymWord {
    let mut cur = t.clone();
    let mut lifts = Vec::new();
    while let Some(a) = (1..cur.size()).rev().find(|&a| is_liftable(&cur, a)) {
        lifts.push(a);
        cur = cur.swap(a);
    }
    lifts.reverse();
    SymWord { letters: lifts }
}

/// `d(𝔱)` with `𝔱^λ d(𝔱) = 𝔱`, one-line and 1-based: `d(k) = (𝔱^λ)^{-1}(𝔱(k))`.
pub fn perm_of(t: &Tableau) -> Vec<usize> {
    let tl = max_tableau(&t.shape());
    let pos: std::collections::HashMap<Node, usize> =
        tl.entries().iter().enumerate().map(|(k, n)| (*n, k + 1)).collect();
    t.entries().iter().map(|n| pos[n]).collect()
}

/// Residues of the blob-addable nodes `(a_h + 1, 1, h)`, sorted with multiplicity.
pub fn addable_residue_multiset(t: &Tableau, ctx: &MultichargeCtx) -> Vec<u8> {
    let mut v: Vec<u8> = t.shape().addable_nodes().iter().map(|n| n.residue(ctx)).collect();
    v.sort_unstable();
    v
}

pub fn blob_addable_residues(t: &Tableau, ctx: &MultichargeCtx) -> std::collections::BTreeSet<u8> {
    addable_residue_multiset(t, ctx).into_iter().collect()
}

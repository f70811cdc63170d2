//! Nodes, one-column multipartitions and the dominance orders on them.

use crate::ctx::{MultichargeCtx, Residue};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Outcome of comparing two elements under a partial order.
/// `Above` means the left argument strictly dominates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dominance {
    Above,
    Below,
    Equal,
    Incomparable,
}

impl Dominance {
    pub fn flip(self) -> Dominance {
        match self {
            Dominance::Above => Dominance::Below,
            Dominance::Below => Dominance::Above,
            d => d,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("size mismatch: {0} vs {1}")]
pub struct SizeMismatch(pub usize, pub usize);

/// A node `(row, column, component)`, all 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: u32,
    pub col: u32,
    pub comp: u32,
}

impl Node {
    pub fn new(row: u32, comp: u32) -> Node {
        Node { row, col: 1, comp }
    }

    /// Content `c - r`.
    pub fn diagonal(&self) -> i64 {
        self.col as i64 - self.row as i64
    }

    pub fn residue(&self, ctx: &MultichargeCtx) -> Residue {
        node_residue(self, ctx)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

pub fn node_residue(node: &Node, ctx: &MultichargeCtx) -> Residue {
    ctx.res(ctx.kappa()[node.comp as usize - 1] as i64 + node.diagonal())
}

/// Total order on nodes: `Greater` means `a ▷ b`.
pub fn cmp_nodes(a: &Node, b: &Node) -> Ordering {
    a.diagonal()
        .cmp(&b.diagonal())
        .then_with(|| b.comp.cmp(&a.comp))
        .then_with(|| a.row.cmp(&b.row).reverse())
        .then_with(|| a.col.cmp(&b.col))
}

/// `(1^{(a_1)}, ..., 1^{(a_l)})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OneColumnMultipartition {
    pub heights: Vec<u32>,
}

impl OneColumnMultipartition {
    pub fn empty(l: usize) -> Self {
        OneColumnMultipartition { heights: vec![0; l] }
    }

    pub fn size(&self) -> usize {
        self.heights.iter().map(|&h| h as usize).sum()
    }

    pub fn level(&self) -> usize {
        self.heights.len()
    }

    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::with_capacity(self.size());
        for (h, &a) in self.heights.iter().enumerate() {
            for r in 1..=a {
                out.push(Node::new(r, h as u32 + 1));
            }
        }
        out
    }

    /// The `l` nodes `(a_h + 1, 1, h)`.
    pub fn addable_nodes(&self) -> Vec<Node> {
        self.heights.iter().enumerate().map(|(h, &a)| Node::new(a + 1, h as u32 + 1)).collect()
    }

    pub fn contains(&self, n: &Node) -> bool {
        n.col == 1 && n.row >= 1 && n.row <= self.heights[n.comp as usize - 1]
    }
}

impl fmt::Display for OneColumnMultipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.heights.iter().map(|h| format!("1^{h}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Number of nodes of `lambda` strictly above `g` in `▷`.
fn census(lambda: &OneColumnMultipartition, g: &Node) -> usize {
    lambda.nodes().iter().filter(|n| cmp_nodes(n, g) == Ordering::Greater).count()
}

/// Counting dominance, evaluated at every node of either diagram.
pub fn cmp_multipartitions(
    lambda: &OneColumnMultipartition,
    mu: &OneColumnMultipartition,
) -> Result<Dominance, SizeMismatch> {
    if lambda.size() != mu.size() {
        return Err(SizeMismatch(lambda.size(), mu.size()));
    }
    if lambda == mu {
        return Ok(Dominance::Equal);
    }
    let (mut ge, mut le) = (true, true);
    let mut candidates = lambda.nodes();
    candidates.extend(mu.nodes());
    for g in &candidates {
        // Census including g itself, so thresholds at g are covered on both sides.
        let a = census(lambda, g) + usize::from(lambda.contains(g));
        let b = census(mu, g) + usize::from(mu.contains(g));
        if a < b {
            ge = false;
        }
        if a > b {
            le = false;
        }
        let (a, b) = (census(lambda, g), census(mu, g));
        if a < b {
            ge = false;
        }
        if a > b {
            le = false;
        }
    }
    Ok(match (ge, le) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Above,
        (false, true) => Dominance::Below,
        (false, false) => Dominance::Incomparable,
    })
}

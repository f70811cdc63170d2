//! Validated multicharge parameters and residue arithmetic mod e.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// A residue mod e, always stored in `0..e`.
pub type Residue = u8;

/// A residue sequence `(i_1, ..., i_m)`; position `k` (1-based) lives at index `k - 1`.
pub type ResidueSeq = Vec<Residue>;

/// The four conditions a multicharge must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// Consecutive integer lifts are at least `m_max` apart.
    LiftGap,
    /// Residues are pairwise distinct and non-adjacent.
    NonAdjacent,
    /// `κ_1 ≢ κ_l + 2`.
    WrapGap,
    /// Representatives in the interval are strictly increasing.
    Ordered,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::LiftGap => "(i) lift gap",
            Condition::NonAdjacent => "(ii) non-adjacent residues",
            Condition::WrapGap => "(iii) kappa_1 != kappa_l + 2",
            Condition::Ordered => "(iv) ordered representatives",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("adjacency violation, condition {condition}: {detail}")]
    AdjacencyViolation { condition: Condition, detail: String },
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// How two residues relate in the quiver of type `A^{(1)}_{e-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// Equal residues.
    Sisters,
    /// `b = a + 1`.
    CousinUp,
    /// `b = a - 1`.
    CousinDown,
    /// Neither equal nor adjacent.
    NonRelatives,
}

/// Validated parameters `(e, l, p, κ)` plus the interval start and the largest `m` served.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultichargeCtx {
    e: u32,
    l: usize,
    p: u32,
    kappa_lift: Vec<i64>,
    kappa: Vec<Residue>,
    kappa_hat: Vec<i64>,
    interval_start: i64,
    m_max: usize,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest integer lifts of `residues` with consecutive gaps at least `m_max`.
pub fn lift_residues(e: u32, residues: &[i64], m_max: usize) -> Vec<i64> {
    let e = e as i64;
    let mut out: Vec<i64> = Vec::with_capacity(residues.len());
    for (idx, &r) in residues.iter().enumerate() {
        let r = r.rem_euclid(e);
        if idx == 0 {
            out.push(r);
            continue;
        }
        let lo = out[idx - 1] + m_max as i64;
        let x = lo + (r - lo).rem_euclid(e);
        out.push(x);
    }
    out
}

/// Checks the parameters and builds the context.
pub fn validate_multicharge(
    e: u32,
    l: usize,
    p: u32,
    kappa_lift: &[i64],
    interval_start: i64,
    m_max: usize,
) -> Result<MultichargeCtx, ParamError> {
    if l <= 2 {
        return Err(ParamError::BadParams(format!("level l={l} must exceed 2")));
    }
    if e as usize <= 2 * l {
        return Err(ParamError::BadParams(format!("need e > 2l, got e={e}, l={l}")));
    }
    if e > 255 {
        return Err(ParamError::BadParams(format!("e={e} exceeds 255")));
    }
    if !is_prime(p) {
        return Err(ParamError::BadParams(format!("p={p} is not prime")));
    }
    if gcd(e, p) != 1 {
        return Err(ParamError::BadParams(format!("gcd(e, p) != 1 for e={e}, p={p}")));
    }
    if kappa_lift.len() != l {
        return Err(ParamError::BadParams(format!("multicharge has {} entries, expected l={l}", kappa_lift.len())));
    }
    let ei = e as i64;
    for w in kappa_lift.windows(2) {
        if w[1] - w[0] < m_max as i64 {
            return Err(ParamError::AdjacencyViolation {
                condition: Condition::LiftGap,
                detail: format!("lifts {} and {} differ by less than m_max={m_max}", w[0], w[1]),
            });
        }
    }
    let kappa: Vec<Residue> = kappa_lift.iter().map(|&x| x.rem_euclid(ei) as Residue).collect();
    for a in 0..l {
        for b in 0..l {
            if a == b {
                continue;
            }
            let d = (kappa[a] as i64 - kappa[b] as i64).rem_euclid(ei);
            if d == 0 || d == 1 || d == ei - 1 {
                return Err(ParamError::AdjacencyViolation {
                    condition: Condition::NonAdjacent,
                    detail: format!("kappa_{} = {} and kappa_{} = {}", a + 1, kappa[a], b + 1, kappa[b]),
                });
            }
        }
    }
    if (kappa[0] as i64 - kappa[l - 1] as i64 - 2).rem_euclid(ei) == 0 {
        return Err(ParamError::AdjacencyViolation {
            condition: Condition::WrapGap,
            detail: format!("kappa_1 = {} equals kappa_l + 2", kappa[0]),
        });
    }
    let kappa_hat: Vec<i64> =
        kappa.iter().map(|&k| interval_start + (k as i64 - interval_start).rem_euclid(ei)).collect();
    if kappa_hat.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ParamError::AdjacencyViolation {
            condition: Condition::Ordered,
            detail: format!("representatives {kappa_hat:?} are not increasing"),
        });
    }
    Ok(MultichargeCtx { e, l, p, kappa_lift: kappa_lift.to_vec(), kappa, kappa_hat, interval_start, m_max })
}

impl MultichargeCtx {
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn l(&self) -> usize {
        self.l
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn kappa(&self) -> &[Residue] {
        &self.kappa
    }
    pub fn kappa_lift(&self) -> &[i64] {
        &self.kappa_lift
    }
    pub fn kappa_hat(&self) -> &[i64] {
        &self.kappa_hat
    }
    pub fn interval_start(&self) -> i64 {
        self.interval_start
    }
    pub fn m_max(&self) -> usize {
        self.m_max
    }

    /// Reduces an integer mod e. Every residue subtraction goes through here.
    pub fn res(&self, x: i64) -> Residue {
        x.rem_euclid(self.e as i64) as Residue
    }

    pub fn relation(&self, a: Residue, b: Residue) -> Relation {
        if a == b {
            Relation::Sisters
        } else if self.res(a as i64 + 1) == b {
            Relation::CousinUp
        } else if self.res(a as i64 - 1) == b {
            Relation::CousinDown
        } else {
            Relation::NonRelatives
        }
    }

    pub fn are_cousins(&self, a: Residue, b: Residue) -> bool {
        matches!(self.relation(a, b), Relation::CousinUp | Relation::CousinDown)
    }

    pub fn are_non_relatives(&self, a: Residue, b: Residue) -> bool {
        self.relation(a, b) == Relation::NonRelatives
    }

    /// Same parameters with a larger `m_max`; lifts are recomputed canonically.
    pub fn with_m_max(&self, m_max: usize) -> Result<MultichargeCtx, ParamError> {
        let res: Vec<i64> = self.kappa.iter().map(|&k| k as i64).collect();
        let lift = lift_residues(self.e, &res, m_max);
        validate_multicharge(self.e, self.l, self.p, &lift, self.interval_start, m_max)
    }
}

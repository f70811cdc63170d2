//! Sweep over `∼`-classes of possible sequences comparing the Gelfand-Tsetlin dimension
//! with the number of standard tableaux.

use crate::concrete::concrete_dim_upper_bound;
use crate::GtError;
use blobgt_blocks::{detect_quasi_vertical, predicted_grid_size, SequenceClass};
use blobgt_klr::{Engine, Field};
use blobgt_residue::{all_possible_sequences, enumerate_std, sim_class, MultichargeCtx, ResidueSeq};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Vertical,
    QuasiVertical,
    EquivalentToQuasiVertical,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowVerdict {
    /// Exact dimension equals `|Std(𝐢)|`.
    Consistent,
    /// The bounds exclude `|Std(𝐢)|`.
    Refutes,
    Inconclusive,
    NotComputed,
}

#[derive(Debug, Clone, Serialize)]
pub struct QRow {
    pub sequence: String,
    pub class_rep: String,
    pub classification: Classification,
    pub class_size: usize,
    pub std_count: usize,
    pub predicted_dim: Option<usize>,
    pub concrete_dim: Option<usize>,
    pub lower_bound: Option<usize>,
    pub exact: bool,
    pub verdict: RowVerdict,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct ExploreOptions {
    pub concrete: bool,
    /// Largest `∼`-class expanded when canonicalizing.
    pub class_cap: usize,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { concrete: true, class_cap: 100_000 }
    }
}

pub fn format_seq(s: &[u8]) -> String {
    s.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

fn classify(class: &BTreeSet<ResidueSeq>, ctx: &MultichargeCtx) -> (Classification, ResidueSeq) {
    let rep = class.iter().next().expect("nonempty class").clone();
    match detect_quasi_vertical(&rep, ctx) {
        SequenceClass::Vertical { .. } => return (Classification::Vertical, rep),
        SequenceClass::QuasiVertical { .. } => return (Classification::QuasiVertical, rep),
        SequenceClass::Neither => {}
    }
    for s in class {
        match detect_quasi_vertical(s, ctx) {
            SequenceClass::Vertical { .. } | SequenceClass::QuasiVertical { .. } => {
                return (Classification::EquivalentToQuasiVertical, s.clone())
            }
            SequenceClass::Neither => {}
        }
    }
    (Classification::Other, rep)
}

/// The `∼`-classes of possible sequences of length `m`, ordered by their minima.
pub fn explore_classes(ctx: &MultichargeCtx, m: usize, class_cap: usize) -> Result<Vec<BTreeSet<ResidueSeq>>, GtError> {
    let mut seen: BTreeSet<ResidueSeq> = BTreeSet::new();
    let mut classes: Vec<BTreeSet<ResidueSeq>> = Vec::new();
    for s in all_possible_sequences(ctx, m) {
        if seen.contains(&s) {
            continue;
        }
        let class = sim_class(&s, ctx, class_cap).map_err(|e| GtError::ClassTooLarge(e.0))?;
        seen.extend(class.iter().cloned());
        classes.push(class);
    }
    Ok(classes)
}

/// One row per `∼`-class of possible sequences of length `m`, in lexicographic order of
/// the class minimum.
pub fn explore_q<F: Field>(engine: &Engine<F>, m: usize, opts: &ExploreOptions) -> Result<Vec<QRow>, GtError> {
    let classes = explore_classes(engine.ctx(), m, opts.class_cap)?;
    Ok(classes.par_iter().map(|class| explore_row(engine, class, opts)).collect())
}

/// The report row of one class; the class minimum is the sequence examined.
pub fn explore_row<F: Field>(engine: &Engine<F>, class: &BTreeSet<ResidueSeq>, opts: &ExploreOptions) -> QRow {
    let ctx = engine.ctx();
    let seq = class.iter().next().expect("nonempty class").clone();
    let (classification, class_rep) = classify(class, ctx);
    let std_count = enumerate_std(&seq, ctx).len();
    let predicted_dim = match classification {
        Classification::Other => None,
        _ => predicted_grid_size(&class_rep, ctx).map(|n| 1usize << n),
    };
    let mut r = QRow {
        sequence: format_seq(&seq),
        class_rep: format_seq(&class_rep),
        classification,
        class_size: class.len(),
        std_count,
        predicted_dim,
        concrete_dim: None,
        lower_bound: None,
        exact: false,
        verdict: RowVerdict::NotComputed,
        note: String::new(),
    };
    if !opts.concrete {
        return r;
    }
    match concrete_dim_upper_bound(engine, &seq, seq.len()) {
        Ok(d) => {
            r.concrete_dim = Some(d.dim);
            r.lower_bound = Some(d.lower);
            r.exact = d.exact;
            r.verdict = if d.dim < std_count || d.lower > std_count {
                RowVerdict::Refutes
            } else if d.exact {
                RowVerdict::Consistent
            } else {
                RowVerdict::Inconclusive
            };
        }
        Err(e) => {
            r.verdict = RowVerdict::Inconclusive;
            r.note = e.to_string();
        }
    }
    r
}

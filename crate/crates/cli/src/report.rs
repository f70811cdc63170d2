//! Report types and their text, CSV and JSON renderings.
//!
//! CSV columns per command (fixed):
//! - `blocks`: `block,r,j,start,end,m_rj,residues`
//! - `tableaux`: `index,shape,degree,word,tableau` (or `count` with `--count-only`)
//! - `gtdim`: `k,l,n,prefix,dim_abstract,std_count,concrete_dim,lower_bound,exact`
//! - `verify`: `name,label,verdict,trace`
//! - `explore-q`: `sequence,class_rep,classification,class_size,std_count,predicted_dim,concrete_dim,lower_bound,exact,verdict,note`
//!   (the first six with `--classes-only`)

use crate::{CliError, Exit, Format};
use blobgt_gt::{QRow, RowVerdict};
use blobgt_residue::MultichargeCtx;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// The context actually used, echoed in JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct Params {
    pub e: u32,
    pub l: usize,
    pub p: u32,
    pub kappa: Vec<i64>,
    pub residues: Vec<u8>,
    pub interval_start: i64,
    pub base: usize,
    pub m: Option<usize>,
}

impl Params {
    pub fn of(ctx: &MultichargeCtx, base: usize, m: Option<usize>) -> Self {
        Params {
            e: ctx.e(),
            l: ctx.l(),
            p: ctx.p(),
            kappa: ctx.kappa_lift().to_vec(),
            residues: ctx.kappa().to_vec(),
            interval_start: ctx.interval_start(),
            base,
            m,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridEntry {
    pub r: usize,
    pub j: usize,
    pub m: usize,
    pub residue: u8,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalEntry {
    pub block: String,
    pub point: Option<[usize; 2]>,
    pub start: usize,
    pub end: usize,
    pub residues: Vec<u8>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlocksReport {
    pub epsilon: usize,
    pub b: Vec<usize>,
    pub k: usize,
    pub n: usize,
    pub grid: Vec<GridEntry>,
    pub intervals: Vec<IntervalEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableauRow {
    pub index: usize,
    pub shape: Vec<u32>,
    pub degree: i64,
    pub word: String,
    pub tableau: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableauxReport {
    pub sequence: Vec<u8>,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<TableauRow>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GtdimReport {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub prefix: usize,
    pub dim_abstract: usize,
    pub std_count: usize,
    pub concrete_dim: Option<usize>,
    pub lower_bound: Option<usize>,
    pub exact: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub label: String,
    pub verdict: String,
    pub trace: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tally {
    pub verified: usize,
    pub refuted: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckRow>,
    pub summary: Tally,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub sequence: String,
    pub class_rep: String,
    pub classification: blobgt_gt::Classification,
    pub class_size: usize,
    pub std_count: usize,
    pub predicted_dim: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExploreSummary {
    pub rows: usize,
    pub consistent: usize,
    pub refutes: usize,
    pub inconclusive: usize,
    pub not_computed: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ExploreRows {
    Classes(Vec<ClassRow>),
    Full(Vec<QRow>),
}

#[derive(Debug, Clone, Serialize)]
pub struct ExploreReport {
    pub classes_only: bool,
    pub rows: ExploreRows,
    pub summary: ExploreSummary,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Body {
    Blocks(BlocksReport),
    Tableaux(TableauxReport),
    Gtdim(GtdimReport),
    Verify(VerifyReport),
    Explore(ExploreReport),
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub params: Params,
    pub result: Body,
}

fn paren<T: ToString>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(T::to_string).collect::<Vec<_>>().join(","))
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn opt_csv<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(String::new, T::to_string)
}

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (k, c) in r.iter().enumerate() {
            w[k] = w[k].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, c) in cells.iter().enumerate() {
            let _ = write!(s, "{c:<width$}  ", width = w[k]);
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

impl Report {
    pub fn exit(&self) -> Exit {
        match &self.result {
            Body::Verify(v) if v.summary.refuted > 0 => Exit::Refuted,
            Body::Verify(v) if v.summary.inconclusive > 0 => Exit::Inconclusive,
            Body::Explore(x) if x.summary.refutes > 0 => Exit::Refuted,
            _ => Exit::Success,
        }
    }

    pub fn render(&self, format: Format) -> Result<Outcome, CliError> {
        let stdout = match format {
            Format::Json => serde_json::to_string_pretty(self).map_err(|e| CliError::Output(e.to_string()))? + "\n",
            Format::Csv => self.csv()?,
            Format::Text => self.text(),
        };
        Ok(Outcome { code: self.exit() as i32, stdout, stderr: String::new() })
    }

    fn text(&self) -> String {
        let mut s = String::new();
        match &self.result {
            Body::Blocks(b) => {
                let _ = writeln!(s, "epsilon = {}", b.epsilon);
                let _ = writeln!(s, "b = {}", paren(&b.b));
                let _ = writeln!(s, "k = {}, n = {}", b.k, b.n);
                let grid: Vec<String> = b.grid.iter().map(|g| format!("m({},{})={}", g.r, g.j, g.m)).collect();
                let _ = writeln!(s, "grid: {}", grid.join(" "));
                let rows: Vec<Vec<String>> = b
                    .intervals
                    .iter()
                    .map(|iv| vec![iv.block.clone(), format!("[{}:{}]", iv.start, iv.end), paren(&iv.residues)])
                    .collect();
                s += &table(&["block", "interval", "residues"], &rows);
            }
            Body::Tableaux(t) => match &t.rows {
                None => {
                    let _ = writeln!(s, "{}", t.count);
                }
                Some(rows) => {
                    let _ = writeln!(s, "sequence {} has {} standard tableaux", paren(&t.sequence), t.count);
                    let cells: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.index.to_string(),
                                paren(&r.shape),
                                r.degree.to_string(),
                                r.tableau.clone(),
                                r.word.clone(),
                            ]
                        })
                        .collect();
                    if !cells.is_empty() {
                        s += &table(&["#", "shape", "degree", "tableau", "official word"], &cells);
                    }
                }
            },
            Body::Gtdim(g) => {
                let _ = writeln!(s, "k = {}, l = {}, prefix = {}", g.k, g.l, g.prefix);
                let _ = writeln!(s, "n = {}", g.n);
                let _ = writeln!(s, "dim_abstract = {}", g.dim_abstract);
                let _ = writeln!(s, "std_count = {}", g.std_count);
                if g.concrete_dim.is_some() {
                    let _ = writeln!(s, "concrete_dim = {}", opt(&g.concrete_dim));
                    let _ = writeln!(s, "lower_bound = {}", opt(&g.lower_bound));
                    let _ = writeln!(s, "exact = {}", opt(&g.exact));
                }
            }
            Body::Verify(v) => {
                for c in &v.checks {
                    let _ = writeln!(s, "{} {}: {}", c.name, c.label, c.verdict);
                    let _ = writeln!(s, "  {}", c.trace);
                    if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
                        let _ = writeln!(s, "  lhs:");
                        for line in l.lines() {
                            let _ = writeln!(s, "    {line}");
                        }
                        let _ = writeln!(s, "  rhs:");
                        for line in r.lines() {
                            let _ = writeln!(s, "    {line}");
                        }
                    }
                }
                let t = &v.summary;
                let _ = writeln!(s, "{} verified, {} refuted, {} inconclusive", t.verified, t.refuted, t.inconclusive);
            }
            Body::Explore(x) => {
                match &x.rows {
                    ExploreRows::Classes(rows) => {
                        let cells: Vec<Vec<String>> = rows
                            .iter()
                            .map(|r| {
                                vec![
                                    r.sequence.clone(),
                                    r.class_rep.clone(),
                                    kebab(&r.classification),
                                    r.class_size.to_string(),
                                    r.std_count.to_string(),
                                    opt(&r.predicted_dim),
                                ]
                            })
                            .collect();
                        s += &table(&["sequence", "representative", "class", "size", "std", "predicted"], &cells);
                    }
                    ExploreRows::Full(rows) => {
                        let cells: Vec<Vec<String>> = rows
                            .iter()
                            .map(|r| {
                                vec![
                                    r.sequence.clone(),
                                    kebab(&r.classification),
                                    r.class_size.to_string(),
                                    r.std_count.to_string(),
                                    opt(&r.predicted_dim),
                                    opt(&r.concrete_dim),
                                    opt(&r.lower_bound),
                                    kebab(&r.verdict),
                                ]
                            })
                            .collect();
                        s += &table(
                            &["sequence", "class", "size", "std", "predicted", "dim", "lower", "verdict"],
                            &cells,
                        );
                    }
                }
                let t = &x.summary;
                let _ = writeln!(
                    s,
                    "{} rows: {} consistent, {} refute, {} inconclusive, {} not computed",
                    t.rows, t.consistent, t.refutes, t.inconclusive, t.not_computed
                );
            }
        }
        s
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Output(e.to_string());
        let join = |xs: &[u8]| xs.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
        match &self.result {
            Body::Blocks(b) => {
                w.write_record(["block", "r", "j", "start", "end", "m_rj", "residues"]).map_err(err)?;
                for iv in &b.intervals {
                    let (r, j, m) = match iv.point {
                        Some([r, j]) => (r.to_string(), j.to_string(), iv.start.to_string()),
                        None => (String::new(), String::new(), String::new()),
                    };
                    w.write_record([
                        &iv.block,
                        &r,
                        &j,
                        &iv.start.to_string(),
                        &iv.end.to_string(),
                        &m,
                        &join(&iv.residues),
                    ])
                    .map_err(err)?;
                }
            }
            Body::Tableaux(t) => match &t.rows {
                None => {
                    w.write_record(["count"]).map_err(err)?;
                    w.write_record([t.count.to_string()]).map_err(err)?;
                }
                Some(rows) => {
                    w.write_record(["index", "shape", "degree", "word", "tableau"]).map_err(err)?;
                    for r in rows {
                        let shape = r.shape.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                        w.write_record([&r.index.to_string(), &shape, &r.degree.to_string(), &r.word, &r.tableau])
                            .map_err(err)?;
                    }
                }
            },
            Body::Gtdim(g) => {
                w.write_record([
                    "k",
                    "l",
                    "n",
                    "prefix",
                    "dim_abstract",
                    "std_count",
                    "concrete_dim",
                    "lower_bound",
                    "exact",
                ])
                .map_err(err)?;
                w.write_record([
                    g.k.to_string(),
                    g.l.to_string(),
                    g.n.to_string(),
                    g.prefix.to_string(),
                    g.dim_abstract.to_string(),
                    g.std_count.to_string(),
                    opt_csv(&g.concrete_dim),
                    opt_csv(&g.lower_bound),
                    opt_csv(&g.exact),
                ])
                .map_err(err)?;
            }
            Body::Verify(v) => {
                w.write_record(["name", "label", "verdict", "trace"]).map_err(err)?;
                for c in &v.checks {
                    w.write_record([&c.name, &c.label, &c.verdict, &c.trace]).map_err(err)?;
                }
            }
            Body::Explore(x) => match &x.rows {
                ExploreRows::Classes(rows) => {
                    for r in rows {
                        w.serialize(r).map_err(err)?;
                    }
                    if rows.is_empty() {
                        w.write_record([
                            "sequence",
                            "class_rep",
                            "classification",
                            "class_size",
                            "std_count",
                            "predicted_dim",
                        ])
                        .map_err(err)?;
                    }
                }
                ExploreRows::Full(rows) => {
                    for r in rows {
                        w.serialize(r).map_err(err)?;
                    }
                    if rows.is_empty() {
                        w.write_record([
                            "sequence",
                            "class_rep",
                            "classification",
                            "class_size",
                            "std_count",
                            "predicted_dim",
                            "concrete_dim",
                            "lower_bound",
                            "exact",
                            "verdict",
                            "note",
                        ])
                        .map_err(err)?;
                    }
                }
            },
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }
}

/// The serde name of a unit enum variant.
fn kebab<T: Serialize>(x: &T) -> String {
    serde_json::to_value(x).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

pub fn explore_summary(rows: &[QRow]) -> ExploreSummary {
    let count = |v: RowVerdict| rows.iter().filter(|r| r.verdict == v).count();
    ExploreSummary {
        rows: rows.len(),
        consistent: count(RowVerdict::Consistent),
        refutes: count(RowVerdict::Refutes),
        inconclusive: count(RowVerdict::Inconclusive),
        not_computed: count(RowVerdict::NotComputed),
    }
}

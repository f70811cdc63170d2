//! One function per subcommand, each returning a [`Report`].

use crate::report::*;
use crate::{parse_point, CliError, Common};
use blobgt_blocks::{block_data, enclosing_block_data, vertical_sequence, BlockData, BlockError};
use blobgt_gt::{
    build_y_presentation, concrete_dim_upper_bound, explore_classes, explore_row, ExploreOptions, GTPresentation,
    GridShape, GtError,
};
use blobgt_klr::{
    identity_instances, tableau_degree, verify_identity, with_prime_field, Engine, Field, Verdict, IDENTITY_NAMES,
};
use blobgt_residue::{enumerate_std, official_word, Residue};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

fn unsupported(p: u32) -> CliError {
    CliError::UnsupportedPrime(p)
}

pub fn blocks(c: &Common) -> Result<Report, CliError> {
    let m = c.require_m()?;
    let ctx = c.context(m)?;
    let bd = block_data(&ctx, c.base, m)?;
    let seq = vertical_sequence(&ctx, c.base, m);
    let slice = |a: usize, b: usize| seq[a - 1..b].to_vec();
    let (na, nb) = bd.n_interval();
    let mut intervals =
        vec![IntervalEntry { block: "N".into(), point: None, start: na, end: nb, residues: slice(na, nb) }];
    for (p, (a, b)) in bd.blocks() {
        intervals.push(IntervalEntry {
            block: format!("B{p}"),
            point: Some([p.r, p.j]),
            start: a,
            end: b,
            residues: slice(a, b),
        });
    }
    let grid = bd
        .grid_points()
        .into_iter()
        .map(|p| GridEntry { r: p.r, j: p.j, m: bd.m_at(p), residue: bd.grid_residue(p) })
        .collect();
    let result = BlocksReport { epsilon: bd.epsilon, b: bd.b.clone(), k: bd.k, n: bd.n(), grid, intervals };
    Ok(Report { command: "blocks", params: Params::of(&ctx, c.base, Some(m)), result: Body::Blocks(result) })
}

pub fn tableaux(c: &Common, sequence: Option<&[u32]>, count_only: bool) -> Result<Report, CliError> {
    let seq: Vec<Residue> = match sequence {
        Some(s) => {
            if let Some(&x) = s.iter().find(|&&x| x >= c.e) {
                return Err(CliError::Usage(format!("residue {x} is not in 0..{}", c.e)));
            }
            s.iter().map(|&x| x as Residue).collect()
        }
        None => {
            let ctx = c.context(c.require_m()?)?;
            vertical_sequence(&ctx, c.base, ctx.m_max())
        }
    };
    let ctx = c.context(seq.len().max(c.m.unwrap_or(0)).max(1))?;
    let ts = enumerate_std(&seq, &ctx);
    let rows = (!count_only).then(|| {
        ts.iter()
            .enumerate()
            .map(|(k, t)| TableauRow {
                index: k + 1,
                shape: t.shape().heights,
                degree: tableau_degree(t, &ctx),
                word: official_word(t).to_string(),
                tableau: t.to_string(),
            })
            .collect()
    });
    let result = TableauxReport { sequence: seq.clone(), count: ts.len(), rows };
    Ok(Report {
        command: "tableaux",
        params: Params::of(&ctx, c.base, Some(seq.len())),
        result: Body::Tableaux(result),
    })
}

/// Block data for `m`, falling back to the enclosing periodic length for ragged `m`.
fn block_data_or_enclosing(c: &Common, ctx: &blobgt_residue::MultichargeCtx, m: usize) -> Result<BlockData, CliError> {
    match block_data(ctx, c.base, m) {
        Ok(bd) => Ok(bd),
        Err(BlockError::NotPeriodic { .. }) => Ok(enclosing_block_data(ctx, c.base, m)?),
        Err(e) => Err(e.into()),
    }
}

/// Dimension of the subalgebra generated by the first `g` generators; the span of the
/// squarefree monomials in them must be closed under multiplication by each of them.
fn prefix_dim<F: Field>(pres: &GTPresentation<F>, g: usize) -> Result<usize, GtError> {
    if g == pres.n() {
        return pres.dim_abstract();
    }
    let top = 1u64 << g;
    for mask in 0..top {
        for a in 0..g {
            let prod = pres.mul_monomials(1 << a, mask)?;
            if prod.keys().any(|&k| k >= top) {
                return Err(GtError::CommutativityFailure(1 << a, mask));
            }
        }
    }
    Ok(top as usize)
}

pub fn gtdim(c: &Common, concrete: bool, prefix: Option<usize>) -> Result<Report, CliError> {
    let m = c.require_m()?;
    let ctx = c.context(m)?;
    let bd = block_data_or_enclosing(c, &ctx, m)?;
    let a = prefix.unwrap_or(m).min(m);
    let g = bd.grid_upto(a).len();
    let seq = vertical_sequence(&ctx, c.base, m);
    let std_count = enumerate_std(&seq, &ctx).len();
    let p = c.p;
    let (dim_abstract, cd) = with_prime_field!(p, F => {
        let pres = build_y_presentation::<F>(GridShape::of(&bd))?;
        let dim = prefix_dim(&pres, g)?;
        let cd = if concrete {
            let engine = Engine::<F>::new(ctx.clone(), c.engine_config());
            Some(concrete_dim_upper_bound(&engine, &seq, a)?)
        } else {
            None
        };
        (dim, cd)
    }, _ => return Err(unsupported(p)));
    let result = GtdimReport {
        k: bd.k,
        l: bd.l,
        n: g,
        prefix: a,
        dim_abstract,
        std_count,
        concrete_dim: cd.as_ref().map(|d| d.dim),
        lower_bound: cd.as_ref().map(|d| d.lower),
        exact: cd.as_ref().map(|d| d.exact),
    };
    Ok(Report { command: "gtdim", params: Params::of(&ctx, c.base, Some(m)), result: Body::Gtdim(result) })
}

pub fn verify(c: &Common, identity: Option<&str>, point: Option<&str>, dump: bool) -> Result<Report, CliError> {
    let m = c.require_m()?;
    let ctx = c.context(m)?;
    let bd = block_data(&ctx, c.base, m)?;
    let point = point.map(parse_point).transpose()?;
    if let Some(q) = point {
        if !bd.grid_points().contains(&q) {
            return Err(CliError::Usage(format!("{q} is not a grid point (k={}, l={})", bd.k, bd.l)));
        }
    }
    let names: Vec<&str> = match identity {
        Some(n) => vec![n],
        None => IDENTITY_NAMES.to_vec(),
    };
    let p = c.p;
    let checks = with_prime_field!(p, F => {
        let engine = Engine::<F>::new(ctx.clone(), c.engine_config());
        let mut rows = Vec::new();
        for name in names {
            let found = verify_identity(&engine, name, &bd, point)?;
            let sides: Vec<(String, String, String)> = if dump {
                identity_instances::<F>(name, &bd, &ctx)?
                    .par_iter()
                    .map(|x| (x.label.clone(), x.lhs.to_text(), x.rhs.to_text()))
                    .collect()
            } else {
                Vec::new()
            };
            for ch in found {
                let side = sides.iter().find(|s| s.0 == ch.label);
                rows.push((ch.check.verdict, CheckRow {
                    name: ch.name,
                    label: ch.label,
                    verdict: ch.verdict,
                    trace: ch.trace,
                    lhs: side.map(|s| s.1.clone()),
                    rhs: side.map(|s| s.2.clone()),
                }));
            }
        }
        rows
    }, _ => return Err(unsupported(p)));
    let count = |v: Verdict| checks.iter().filter(|x| x.0 == v).count();
    let summary = Tally {
        verified: count(Verdict::Verified),
        refuted: count(Verdict::RefutedByGrading),
        inconclusive: count(Verdict::Inconclusive),
    };
    let result = VerifyReport { checks: checks.into_iter().map(|x| x.1).collect(), summary };
    Ok(Report { command: "verify", params: Params::of(&ctx, c.base, Some(m)), result: Body::Verify(result) })
}

pub fn explore(
    c: &Common,
    classes_only: bool,
    concrete: bool,
    sample: Option<usize>,
    class_cap: usize,
) -> Result<Report, CliError> {
    let m = c.require_m()?;
    if m == 0 {
        return Err(CliError::Usage("--m must be positive".into()));
    }
    let ctx = c.context(m)?;
    let mut classes = explore_classes(&ctx, m, class_cap)?;
    if let Some(n) = sample {
        let mut rng = StdRng::seed_from_u64(c.seed);
        let mut keep = rand::seq::index::sample(&mut rng, classes.len(), n.min(classes.len())).into_vec();
        keep.sort_unstable();
        classes = keep.into_iter().map(|k| std::mem::take(&mut classes[k])).collect();
    }
    let opts = ExploreOptions { concrete: concrete && !classes_only, class_cap };
    let p = c.p;
    let rows = with_prime_field!(p, F => {
        let engine = Engine::<F>::new(ctx.clone(), c.engine_config());
        classes.par_iter().map(|cl| explore_row(&engine, cl, &opts)).collect::<Vec<_>>()
    }, _ => return Err(unsupported(p)));
    let summary = explore_summary(&rows);
    let rows = if classes_only {
        ExploreRows::Classes(
            rows.into_iter()
                .map(|r| ClassRow {
                    sequence: r.sequence,
                    class_rep: r.class_rep,
                    classification: r.classification,
                    class_size: r.class_size,
                    std_count: r.std_count,
                    predicted_dim: r.predicted_dim,
                })
                .collect(),
        )
    } else {
        ExploreRows::Full(rows)
    };
    let result = ExploreReport { classes_only, rows, summary };
    Ok(Report { command: "explore-q", params: Params::of(&ctx, c.base, Some(m)), result: Body::Explore(result) })
}

use blobgt_blocks::{block_data, fundamental_sequence};
use blobgt_gt::presentation::{generator, poly_add};
use blobgt_gt::*;
use blobgt_klr::field::F5;
use blobgt_klr::{dim_truncation_formula, AlgElement, Engine, EngineConfig, Poly};
use blobgt_residue::{ctx_from_residues, enumerate_std, max_tableau, OneColumnMultipartition};
use num_traits::One;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

type Setup = (Engine<F5>, blobgt_blocks::BlockData, Vec<u8>);

fn build(e: u32, kappa: &[i64], m: usize) -> Setup {
    let ctx = ctx_from_residues(e, 5, kappa, 0, m).unwrap();
    let bd = block_data(&ctx, 1, m).unwrap();
    let i = fundamental_sequence(&ctx, m);
    (Engine::new(ctx, EngineConfig::default()), bd, i)
}

/// Engines are shared across tests so each annihilator is computed once.
fn setup(e: u32, kappa: &[i64], m: usize) -> &'static Setup {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static Setup>>> = OnceLock::new();
    let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
    map.entry(m).or_insert_with(|| Box::leak(Box::new(build(e, kappa, m))))
}

#[test]
fn level_three_has_dimension_four() {
    let (eng, _, i) = setup(7, &[0, 2, 4], 10);
    let d = concrete_dim_upper_bound(eng, i, 10).unwrap();
    assert_eq!(d, ConcreteDim { dim: 4, lower: 4, exact: true });
}

#[test]
fn level_four_has_dimension_eight() {
    let (eng, _, i) = setup(13, &[0, 4, 6, 10], 16);
    let d = concrete_dim_upper_bound(eng, i, 16).unwrap();
    assert_eq!(d, ConcreteDim { dim: 8, lower: 8, exact: true });
    assert_eq!(d.dim, enumerate_std(i, eng.ctx()).len());
}

#[test]
fn prefix_subalgebras() {
    let (eng, bd, i) = setup(7, &[0, 2, 4], 10);
    for a in 1..=10 {
        let d = concrete_dim_upper_bound(eng, i, a).unwrap();
        let n = bd.grid_upto(a).len();
        assert_eq!(d.dim, 1 << n, "a = {a}");
        assert!(d.exact, "a = {a}");
    }
}

#[test]
fn maximal_sequence_is_one_dimensional() {
    let ctx = ctx_from_residues(7, 5, &[0, 2, 4], 0, 6).unwrap();
    let i = max_tableau(&OneColumnMultipartition { heights: vec![2, 2, 2] }).residue_sequence(&ctx);
    assert_eq!(dim_truncation_formula(&i, &ctx), 1);
    let eng = Engine::<F5>::new(ctx, EngineConfig::default());
    assert_eq!(concrete_dim_upper_bound(&eng, &i, 6).unwrap(), ConcreteDim { dim: 1, lower: 1, exact: true });
}

/// `L_(r,j)` is `𝒴_prev - 𝒴_(r,j)` concretely.
#[test]
fn concrete_l_matches_generators() {
    let (eng, bd, _) = setup(7, &[0, 2, 4], 17);
    let ctx = eng.ctx().clone();
    let pts = bd.grid_points();
    for (a, &p) in pts.iter().enumerate() {
        let y = concrete_generator::<F5>(p, bd, &ctx);
        let rhs = if a == 0 { y.scale(-F5::one()) } else { concrete_generator(pts[a - 1], bd, &ctx).sub(&y) };
        assert!(eng.equal(&concrete_l(p, bd, &ctx), &rhs).is_verified());
    }
}

/// Sending each abstract generator to `y_{m_(r,j)} e(𝐢)` turns every `Y`-form relation
/// into a verified identity.
#[test]
fn abstract_relations_hold_concretely() {
    for (e, kappa, m) in [(7u32, vec![0i64, 2, 4], 10usize), (13, vec![0, 4, 6, 10], 16), (7, vec![0, 2, 4], 17)] {
        let (eng, bd, i) = setup(e, &kappa, m);
        let shape = GridShape::of(bd);
        let pres = build_y_presentation::<F5>(shape).unwrap();
        let n = shape.n();
        let vars: Vec<usize> = bd.grid_points().iter().map(|&p| bd.m_at(p)).collect();
        for a in 0..n {
            let mut sq = generator::<F5>(n, a);
            sq = blobgt_gt::presentation::poly_mul(&sq, &sq);
            let rel = poly_add(&sq, &pres.squares[a], -F5::one());
            let mut f = Poly::zero(m);
            for (ex, &c) in &rel {
                let mut mono = vec![0u8; m];
                for (b, &k) in ex.iter().enumerate() {
                    mono[vars[b] - 1] += k;
                }
                f.add_term(mono, c);
            }
            let v = eng.equal(&AlgElement::from_poly(&f, i), &AlgElement::zero());
            assert!(v.is_verified(), "m = {m}, generator {a}: {}", v.trace);
        }
    }
}

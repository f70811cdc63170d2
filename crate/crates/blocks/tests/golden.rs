use blobgt_blocks::*;
use blobgt_residue::*;
use std::collections::{BTreeSet, HashSet};

fn ctx(e: u32, k: &[i64], m: usize) -> MultichargeCtx {
    ctx_from_residues(e, 5, k, 0, m).unwrap()
}

fn word(parts: &[SymWord]) -> SymWord {
    parts.iter().fold(SymWord::default(), |a, w| a.concat(w))
}

fn s(v: &[usize]) -> SymWord {
    SymWord::new(v.to_vec())
}

fn r(a: usize, b: usize) -> SymWord {
    SymWord::range(a, b)
}

#[test]
fn four_component_example() {
    let c = ctx(13, &[0, 2, 5, 7], 32);
    let bd = block_data(&c, 1, 32).unwrap();
    assert_eq!(bd.epsilon, 6);
    assert_eq!(bd.b, vec![2, 3, 8]);
    assert_eq!(bd.grid_values(), vec![7, 9, 12, 20, 22, 25]);
    assert_eq!(bd.n_interval(), (1, 6));
    let blocks: Vec<Interval> = bd.blocks().values().copied().collect();
    assert_eq!(blocks, vec![(7, 8), (9, 11), (12, 19), (20, 21), (22, 24), (25, 32)]);
    let seq = fundamental_sequence(&c, 32);
    assert_eq!(&seq[..8], &[0, 12, 11, 10, 9, 8, 7, 6]);
    let res = residue_at_grid(&bd, &c).unwrap();
    assert_eq!(res[&GridPoint::new(1, 0)], 7);
}

#[test]
fn both_bases_of_second_example() {
    let c = ctx(13, &[0, 4, 6, 10], 29);
    let bd = block_data(&c, 1, 29).unwrap();
    assert_eq!((bd.epsilon, bd.b.clone()), (3, vec![4, 2, 7]));
    assert_eq!(bd.grid_values(), vec![4, 8, 10, 17, 21, 23]);
    // m = 29 is one past the second period for this base; the full periods are listed.
    let bd3 = block_data(&c, 3, 29).unwrap();
    assert_eq!((bd3.epsilon, bd3.b.clone()), (2, vec![4, 3, 6]));
    assert_eq!(bd3.grid_values(), vec![3, 7, 10, 16, 20, 23]);
    residue_at_grid(&bd3, &c).unwrap();
    let j = vertical_sequence(&c, 3, 29);
    assert_eq!(&j[..13], &[6, 5, 4, 3, 2, 1, 0, 12, 11, 10, 9, 8, 7]);
    assert_eq!(*j.last().unwrap(), 4);
    let fund = fundamental_sequence(&c, 29);
    assert_eq!(&fund[26..], &[0, 12, 11]);
    assert_eq!(fund[7], 6);
}

#[test]
fn subset_map_is_a_bijection() {
    for (e, kap, m) in [(7u32, vec![0i64, 2, 4], 10usize), (13, vec![0, 4, 6, 10], 29), (7, vec![0, 2, 4], 17)] {
        let c = ctx(e, &kap, m);
        let bd = block_data(&c, 1, m).unwrap();
        let seq = fundamental_sequence(&c, m);
        let all: HashSet<Tableau> = enumerate_std(&seq, &c).into_iter().collect();
        assert_eq!(all.len(), 1 << bd.n());
        let grid = bd.grid_values();
        let mut images = HashSet::new();
        for mask in 0..(1u32 << grid.len()) {
            let a: BTreeSet<usize> =
                grid.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            let t = tableau_from_subset(&a, &bd, &c).unwrap();
            assert!(all.contains(&t));
            images.insert(t);
        }
        assert_eq!(images, all);
    }
}

#[test]
fn empty_subset_gives_single_column() {
    let c = ctx(7, &[0, 2, 4], 10);
    let bd = block_data(&c, 1, 10).unwrap();
    let t = tableau_from_subset(&BTreeSet::new(), &bd, &c).unwrap();
    assert_eq!(t.shape().heights, vec![10, 0, 0]);
    let full: BTreeSet<usize> = bd.grid_values().into_iter().collect();
    let top = tableau_from_subset(&full, &bd, &c).unwrap();
    let last = *bd.grid_points().last().unwrap();
    assert_eq!(top, principal_tableau(&bd, last, &c).unwrap().tableau);
}

#[test]
fn first_principal_tableau_opens_last_component() {
    let c = ctx(13, &[0, 4, 6, 10], 29);
    let bd = block_data(&c, 1, 29).unwrap();
    let pt = principal_tableaux(&bd, &c).unwrap();
    let t10 = &pt[&GridPoint::new(1, 0)].tableau;
    assert_eq!(t10.at(bd.m_at(GridPoint::new(1, 0))), Node::new(1, 4));
    let mut prev: Option<OneColumnMultipartition> = None;
    for p in bd.grid_points() {
        let sh = &pt[&p].shape;
        if let Some(q) = prev {
            assert_ne!(cmp_multipartitions(sh, &q).unwrap(), Dominance::Below);
        }
        prev = Some(sh.clone());
    }
}

#[test]
fn factorization_example() {
    let c = ctx(13, &[0, 4, 6, 10], 29);
    let bd = block_data(&c, 1, 29).unwrap();
    let f = ht_factorization(&bd, GridPoint::new(2, 2), &c).unwrap();
    assert_eq!(f.head, word(&[r(4, 2), r(8, 3)]));
    let expected = vec![
        (GridPoint::new(1, 1), word(&[s(&[5, 4]), r(8, 5), r(11, 6), r(15, 7)])),
        (GridPoint::new(1, 2), s(&[8, 10, 9])),
        // Suffix of consecutive official words; length 23 so that the factors add up to
        // the Coxeter length 76 of d(𝔱_(2,2)).
        (GridPoint::new(2, 0), word(&[s(&[14, 13]), r(17, 14), r(21, 15), r(25, 16)])),
        (GridPoint::new(2, 1), word(&[s(&[17, 19, 18]), r(22, 19), r(25, 20)])),
        (GridPoint::new(2, 2), word(&[r(23, 21), r(25, 22)])),
    ];
    assert_eq!(f.tails, expected);
    let pt = principal_tableau(&bd, GridPoint::new(2, 2), &c).unwrap();
    assert_eq!(f.concatenation(), official_word(&pt.tableau));
    assert_eq!(f.concatenation().len(), coxeter_length(&perm_of(&pt.tableau)));
    assert_eq!(f.concatenation().len(), 76);
}

#[test]
fn factorization_first_point_has_no_tails() {
    let c = ctx(7, &[0, 2, 4], 17);
    for m in [10, 17] {
        let bd = block_data(&c, 1, m).unwrap();
        assert!(ht_factorization(&bd, GridPoint::new(1, 0), &c).unwrap().tails.is_empty());
        for p in bd.grid_points() {
            let f = ht_factorization(&bd, p, &c).unwrap();
            let pt = principal_tableau(&bd, p, &c).unwrap();
            assert_eq!(f.concatenation(), official_word(&pt.tableau));
        }
    }
}

#[test]
fn quasi_vertical_example() {
    let c = ctx(13, &[0, 4, 6, 10], 29);
    let q = quasi_vertical_sequence(&c, 3, 3, 18).unwrap();
    assert_eq!(q, vec![0, 4, 6, 10, 12, 3, 5, 9, 11, 2, 4, 8, 3, 2, 1, 0, 12, 11]);
    assert_eq!(detect_quasi_vertical(&q, &c), SequenceClass::QuasiVertical { t: 3, r0: 3 });
    assert_eq!(quasi_vertical_sequence(&c, 2, 0, 9).unwrap(), vertical_sequence(&c, 2, 9));
    assert!(matches!(quasi_vertical_sequence(&c, 2, 3, 12), Err(BlockError::BadPrefix { .. })));
    assert_eq!(detect_quasi_vertical(&vertical_sequence(&c, 2, 9), &c), SequenceClass::Vertical { t: 2 });
    assert!(is_blob_possible(&q, &c));
}

#[test]
fn restriction_equality_by_type() {
    for (e, kap, m) in [(7u32, vec![0i64, 2, 4], 17usize), (13, vec![0, 4, 6, 10], 29), (13, vec![0, 2, 5, 7], 32)] {
        let c = ctx(e, &kap, m);
        let bd = block_data(&c, 1, m).unwrap();
        let seq = fundamental_sequence(&c, m);
        let pts = bd.grid_points();
        // The final block is truncated at m, so compare the common prefix of same-type blocks.
        for &p in &pts {
            for &q in &pts {
                let (a0, a1) = bd.block(p);
                let (b0, b1) = bd.block(q);
                let len = (a1 - a0).min(b1 - b0) + 1;
                let same = seq[a0 - 1..a0 - 1 + len] == seq[b0 - 1..b0 - 1 + len];
                assert_eq!(same, p.j == q.j, "{p} vs {q}");
            }
        }
    }
}

#[test]
fn bifurcation_points_have_two_addable_nodes() {
    let c = ctx(13, &[0, 4, 6, 10], 29);
    let bd = block_data(&c, 1, 29).unwrap();
    let seq = fundamental_sequence(&c, 29);
    for t in enumerate_std(&seq, &c) {
        for p in bd.grid_points() {
            let a = bd.m_at(p) - 1;
            let ms = addable_residue_multiset(&t.restrict(a), &c);
            let target = c.kappa()[c.l() - p.j - 1];
            assert_eq!(ms.iter().filter(|&&x| x == target).count(), 2);
            for h in 1..c.l() - 1 {
                let k = c.kappa()[h];
                if k != target {
                    assert_eq!(ms.iter().filter(|&&x| x == k).count(), 1);
                }
            }
        }
        assert!(t.entries()[..bd.epsilon].iter().all(|n| n.comp == 1));
    }
}

#[test]
fn prefix_grid() {
    let c = ctx(7, &[0, 2, 4], 20);
    let bd = enclosing_block_data(&c, 1, 8).unwrap();
    assert_eq!(bd.m, 10);
    assert_eq!(bd.grid_values(), vec![4, 6]);
    assert_eq!(bd.grid_upto(5).len(), 1);
    assert_eq!(bd.grid_upto(3).len(), 0);
    assert_eq!(predicted_grid_size(&fundamental_sequence(&c, 8), &c), Some(2));
    assert_eq!(predicted_grid_size(&fundamental_sequence(&c, 12), &c), Some(3));
}

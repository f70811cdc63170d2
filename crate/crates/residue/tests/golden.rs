use blobgt_residue::*;
use std::collections::{HashMap, HashSet, VecDeque};

fn ctx(e: u32, k: &[i64], m: usize) -> MultichargeCtx {
    ctx_from_residues(e, 5, k, 0, m).unwrap()
}

fn column_tableau(cols: &[&[usize]], l: usize) -> Tableau {
    let m: usize = cols.iter().map(|c| c.len()).sum();
    let mut entries = vec![Node::new(0, 0); m];
    for (h, c) in cols.iter().enumerate() {
        for (r, &k) in c.iter().enumerate() {
            entries[k - 1] = Node::new(r as u32 + 1, h as u32 + 1);
        }
    }
    Tableau::new(entries, l).unwrap()
}

#[test]
fn validate_examples() {
    let c = ctx(13, &[0, 2, 5, 7], 32);
    assert_eq!(c.kappa_hat(), &[0, 2, 5, 7]);
    let c = ctx(13, &[0, 4, 6, 10], 29);
    assert_eq!(c.kappa_hat(), &[0, 4, 6, 10]);
    assert!(matches!(ctx_from_residues(7, 5, &[0, 2, 4, 6], 0, 5), Err(ParamError::BadParams(_))));
}

#[test]
fn validate_failures_name_condition() {
    let cond = |r: Result<MultichargeCtx, ParamError>| match r {
        Err(ParamError::AdjacencyViolation { condition, .. }) => Some(condition),
        _ => None,
    };
    assert_eq!(cond(validate_multicharge(13, 4, 5, &[0, 2, 5, 7], 0, 10)), Some(Condition::LiftGap));
    assert_eq!(cond(ctx_from_residues(13, 5, &[0, 1, 5, 7], 0, 10)), Some(Condition::NonAdjacent));
    // κ_1 = κ_4 + 2 (mod 13): 0 = 11 + 2.
    assert_eq!(cond(ctx_from_residues(13, 5, &[0, 3, 6, 11], 0, 10)), Some(Condition::WrapGap));
    assert_eq!(cond(ctx_from_residues(13, 5, &[7, 2, 5, 0], 0, 10)), Some(Condition::Ordered));
    assert!(matches!(ctx_from_residues(13, 13, &[0, 2, 5, 7], 0, 10), Err(ParamError::BadParams(_))));
    assert!(matches!(ctx_from_residues(13, 4, &[0, 2, 5, 7], 0, 10), Err(ParamError::BadParams(_))));
}

#[test]
fn node_residues() {
    let c = ctx(13, &[0, 2, 5, 7], 32);
    assert_eq!(node_residue(&Node::new(1, 1), &c), 0);
    assert_eq!(node_residue(&Node::new(2, 1), &c), 12);
    let c = ctx(13, &[0, 4, 6, 10], 29);
    assert_eq!(node_residue(&Node::new(7, 1), &c), 7);
}

#[test]
fn residue_sequences_of_max_tableaux() {
    let c = ctx(13, &[0, 2, 5, 7], 32);
    let t = max_tableau(&OneColumnMultipartition { heights: vec![6, 0, 0, 0] });
    assert_eq!(t.residue_sequence(&c), vec![0, 12, 11, 10, 9, 8]);
    let c = ctx(13, &[0, 4, 6, 10], 29);
    let t = max_tableau(&OneColumnMultipartition { heights: vec![3, 3, 9, 3] });
    let seq = t.residue_sequence(&c);
    assert_eq!(seq, vec![0, 4, 6, 10, 12, 3, 5, 9, 11, 2, 4, 8, 3, 2, 1, 0, 12, 11]);
}

#[test]
fn node_order() {
    use std::cmp::Ordering::*;
    assert_eq!(cmp_nodes(&Node::new(1, 1), &Node::new(1, 2)), Greater);
    assert_eq!(cmp_nodes(&Node::new(2, 1), &Node::new(1, 2)), Less);
    assert_eq!(cmp_nodes(&Node::new(2, 1), &Node::new(2, 1)), Equal);
}

#[test]
fn multipartition_dominance_hand_oracle() {
    // Above γ0 = (1,1,2) (inclusive): (1^2, 0) has one node, (1^1, 1^1) has two.
    let a = OneColumnMultipartition { heights: vec![2, 0] };
    let b = OneColumnMultipartition { heights: vec![1, 1] };
    assert_eq!(cmp_multipartitions(&a, &b).unwrap(), Dominance::Below);
    assert_eq!(cmp_multipartitions(&a, &a).unwrap(), Dominance::Equal);
    assert!(cmp_multipartitions(&a, &OneColumnMultipartition { heights: vec![1, 0] }).is_err());
}

#[test]
fn tableau_dominance_example() {
    let s = column_tableau(&[&[1, 3, 6, 8], &[4], &[2, 5, 7]], 3);
    let t = column_tableau(&[&[1, 3, 4, 8], &[5], &[2, 6, 7]], 3);
    assert_eq!(cmp_tableaux(&s, &t).unwrap(), Dominance::Above);
    assert_eq!(cmp_tableaux(&t, &t).unwrap(), Dominance::Equal);
}

#[test]
fn official_word_example() {
    let t = column_tableau(&[&[1, 2, 3, 4, 5, 6, 7], &[8, 9, 10, 11, 12], &[13]], 3);
    let expected = [
        SymWord::new(vec![3, 2]),
        SymWord::range(5, 3),
        SymWord::range(7, 4),
        SymWord::range(9, 5),
        SymWord::range(11, 6),
        SymWord::range(12, 7),
        SymWord::range(9, 12),
    ]
    .iter()
    .fold(SymWord::default(), |a, w| a.concat(w));
    let w = official_word(&t);
    assert_eq!(w, expected);
    assert_eq!(w.to_perm(13), perm_of(&t));
}

#[test]
fn max_tableau_has_empty_word_and_no_lifts() {
    let t = max_tableau(&OneColumnMultipartition { heights: vec![3, 1, 2] });
    assert!(liftable_set(&t).is_empty());
    assert!(official_word(&t).is_empty());
    assert!(t.is_standard());
}

fn all_standard(shape: &OneColumnMultipartition) -> Vec<Tableau> {
    let m = shape.size();
    let l = shape.level();
    let mut out = Vec::new();
    fn rec(shape: &[u32], cur: &mut Vec<u32>, entries: &mut Vec<Node>, m: usize, l: usize, out: &mut Vec<Tableau>) {
        if entries.len() == m {
            out.push(Tableau::new(entries.clone(), l).unwrap());
            return;
        }
        for h in 0..l {
            if cur[h] < shape[h] {
                cur[h] += 1;
                entries.push(Node::new(cur[h], h as u32 + 1));
                rec(shape, cur, entries, m, l, out);
                entries.pop();
                cur[h] -= 1;
            }
        }
    }
    rec(&shape.heights, &mut vec![0; l], &mut Vec::new(), m, l, &mut out);
    out
}

fn shapes(m: usize, l: usize) -> Vec<OneColumnMultipartition> {
    let mut out = Vec::new();
    fn rec(m: usize, l: usize, cur: &mut Vec<u32>, out: &mut Vec<OneColumnMultipartition>) {
        if cur.len() == l - 1 {
            cur.push(m as u32);
            out.push(OneColumnMultipartition { heights: cur.clone() });
            cur.pop();
            return;
        }
        for a in 0..=m {
            cur.push(a as u32);
            rec(m - a, l, cur, out);
            cur.pop();
        }
    }
    rec(m, l, &mut Vec::new(), &mut out);
    out
}

/// Coxeter lengths by breadth-first search over the Cayley graph.
fn bfs_lengths(m: usize) -> HashMap<Vec<usize>, usize> {
    let id: Vec<usize> = (1..=m).collect();
    let mut dist = HashMap::from([(id.clone(), 0usize)]);
    let mut q = VecDeque::from([id]);
    while let Some(p) = q.pop_front() {
        let d = dist[&p];
        for a in 0..m.saturating_sub(1) {
            let mut n = p.clone();
            n.swap(a, a + 1);
            if !dist.contains_key(&n) {
                dist.insert(n.clone(), d + 1);
                q.push_back(n);
            }
        }
    }
    dist
}

#[test]
fn official_words_are_reduced_up_to_seven() {
    for m in 1..=7 {
        let lens = bfs_lengths(m);
        for shape in shapes(m, 3) {
            let tl = max_tableau(&shape);
            for t in all_standard(&shape) {
                let w = official_word(&t);
                let p = perm_of(&t);
                assert_eq!(w.to_perm(m), p, "projection of {t}");
                assert_eq!(w.len(), lens[&p], "length of {t}");
                assert_eq!(coxeter_length(&p), lens[&p]);
                if t != tl {
                    assert_eq!(cmp_tableaux(&tl, &t).unwrap(), Dominance::Above);
                    assert!(!liftable_set(&t).is_empty());
                }
            }
        }
    }
}

#[test]
fn liftable_set_matches_definition() {
    for shape in shapes(5, 3) {
        for t in all_standard(&shape) {
            let brute: Vec<usize> = (1..t.size())
                .filter(|&a| {
                    let s = t.swap(a);
                    s.is_standard() && cmp_tableaux(&s, &t).unwrap() == Dominance::Above
                })
                .collect();
            assert_eq!(liftable_set(&t), brute);
        }
    }
}

#[test]
fn max_tableau_is_greatest() {
    for m in 1..=6 {
        for shape in shapes(m, 3) {
            let tl = max_tableau(&shape);
            for t in all_standard(&shape) {
                if t != tl {
                    assert_eq!(cmp_tableaux(&tl, &t).unwrap(), Dominance::Above);
                }
            }
        }
    }
}

#[test]
fn perm_of_transposition() {
    let shape = OneColumnMultipartition { heights: vec![2, 2, 1] };
    let tl = max_tableau(&shape);
    for a in 1..5 {
        let s = tl.swap(a);
        if s.is_standard() {
            let mut expect: Vec<usize> = (1..=5).collect();
            expect.swap(a - 1, a);
            assert_eq!(perm_of(&s), expect);
        }
    }
}

#[test]
fn enumerate_small_cases() {
    let c = ctx(7, &[0, 2, 4], 10);
    let fund: Vec<u8> = (0..10).map(|j| c.res(-j)).collect();
    assert_eq!(enumerate_std(&fund, &c).len(), 4);
    assert!(enumerate_std(&[0, 0], &c).is_empty());
    let c = ctx(13, &[0, 4, 6, 10], 29);
    let fund: Vec<u8> = (0..29).map(|j| c.res(-j)).collect();
    let all = enumerate_std(&fund, &c);
    assert_eq!(all.len(), 64);
    assert_eq!(all.iter().collect::<HashSet<_>>().len(), 64);
}

#[test]
fn enumeration_against_brute_force() {
    let c = ctx(7, &[0, 2, 4], 6);
    for m in 1..=5 {
        let mut counts: HashMap<Vec<u8>, usize> = HashMap::new();
        for shape in shapes(m, 3) {
            for t in all_standard(&shape) {
                *counts.entry(t.residue_sequence(&c)).or_default() += 1;
            }
        }
        for seq in all_possible_sequences(&c, m) {
            assert_eq!(enumerate_std(&seq, &c).len(), counts[&seq]);
        }
        assert_eq!(all_possible_sequences(&c, m).len(), counts.len());
    }
}

#[test]
fn enumeration_first_is_greatest() {
    let c = ctx(7, &[0, 2, 4], 10);
    for seq in all_possible_sequences(&c, 5) {
        let all = enumerate_std(&seq, &c);
        for t in &all[1..] {
            let d = cmp_tableaux(&all[0], t).unwrap();
            assert_ne!(d, Dominance::Below);
        }
    }
}

#[test]
fn addable_residue_examples() {
    let c = ctx(13, &[0, 2, 5, 7], 20);
    let empty = Tableau::new(vec![], 4).unwrap();
    assert_eq!(blob_addable_residues(&empty, &c).into_iter().collect::<Vec<_>>(), vec![0, 2, 5, 7]);
    let col = max_tableau(&OneColumnMultipartition { heights: vec![5, 0, 0, 0] });
    let i_n = col.residue_sequence(&c)[4];
    let expect: std::collections::BTreeSet<u8> = [c.res(i_n as i64 - 1), 2, 5, 7].into_iter().collect();
    assert_eq!(blob_addable_residues(&col, &c), expect);
}

#[test]
fn blob_possibility_examples() {
    let c = ctx(7, &[0, 2, 4], 10);
    assert!(!is_blob_possible(&[1], &c));
    assert!(!is_blob_possible(&[0, 0, 0, 0], &c));
    assert!(!is_blob_possible(&[3, 3, 3, 3, 3], &c));
    let fund: Vec<u8> = (0..10).map(|j| c.res(-j)).collect();
    assert!(is_blob_possible(&fund, &c));
}

#[test]
fn sim_relation() {
    let c = ctx(7, &[0, 2, 4], 10);
    assert_eq!(sim_step(&[0, 6], 1, &c), None);
    assert_eq!(sim_step(&[0, 2], 1, &c), Some(vec![2, 0]));
    let s = sim_step(&[0, 2, 4], 2, &c).unwrap();
    assert_eq!(sim_step(&s, 2, &c).unwrap(), vec![0, 2, 4]);
    let fund: Vec<u8> = (0..10).map(|j| c.res(-j)).collect();
    assert_eq!(sim_class(&fund, &c, 100).unwrap().len(), 1);
    assert_eq!(sim_class(&[4], &c, 100).unwrap().len(), 1);
    assert!(sim_class(&[0, 2, 4], &c, 2).is_err());
}

#[test]
fn sim_step_preserves_possibility() {
    let c = ctx(7, &[0, 2, 4], 6);
    for m in 2..=6 {
        let all: HashSet<Vec<u8>> = all_possible_sequences(&c, m).into_iter().collect();
        for seq in &all {
            for k in 1..m {
                if let Some(s) = sim_step(seq, k, &c) {
                    assert!(all.contains(&s), "{seq:?} at {k}");
                }
            }
        }
    }
}

/// The three impossibility families, with vertical runs `i_r = κ_t + 1 - r`.
#[test]
fn impossibility_families() {
    for (e, kap) in [(7u32, vec![0i64, 2, 4]), (11, vec![0, 3, 6]), (13, vec![0, 2, 5, 7]), (13, vec![0, 4, 6, 10])] {
        let c = ctx(e, &kap, 20);
        let l = c.l();
        for t in 1..=l {
            let kt = c.kappa()[t - 1] as i64;
            let others: Vec<u8> = (1..=l).filter(|&s| s != t).map(|s| c.kappa()[s - 1]).collect();
            for n in 1..=8i64 {
                let run: Vec<u8> = (1..=n).map(|r| c.res(kt + 1 - r)).collect();
                let last = *run.last().unwrap() as i64;
                for j in 0..e as u8 {
                    if j != c.res(last - 1) && !others.contains(&j) {
                        let mut a = run.clone();
                        a.push(j);
                        assert!(!is_blob_possible(&a, &c), "first family {a:?}");
                    }
                }
                for &j in &others {
                    let mut b = run.clone();
                    b.extend([j, c.res(j as i64 + 1), c.res(j as i64 + 1)]);
                    assert!(!is_blob_possible(&b, &c), "second family {b:?}");
                }
                for s in (1..=l).filter(|&s| s != t) {
                    let ks = c.kappa()[s - 1] as i64;
                    let mut d: Vec<u8> = (1..=n).map(|r| if r == 1 { c.res(ks) } else { c.res(kt + 2 - r) }).collect();
                    d.extend([c.res(ks - 1), c.res(ks), c.res(ks)]);
                    assert!(!is_blob_possible(&d, &c), "third family {d:?}");
                }
            }
        }
    }
}

#[test]
fn lifts_are_canonical() {
    assert_eq!(lift_residues(13, &[0, 4, 6, 10], 29), vec![0, 30, 71, 101]);
    let c = ctx(13, &[0, 4, 6, 10], 29);
    assert!(c.kappa_lift().windows(2).all(|w| w[1] - w[0] >= 29));
}

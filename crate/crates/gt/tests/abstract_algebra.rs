use blobgt_gt::presentation::mask_to_exps;
use blobgt_gt::*;
use blobgt_klr::field::{Field, F5, F7};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn shapes_up_to(n: usize) -> Vec<GridShape> {
    let mut out = Vec::new();
    for l in 2..=9 {
        for k in 1..=n {
            let s = GridShape::new(k, l);
            if s.n() <= n {
                out.push(s);
            }
        }
    }
    out
}

#[test]
fn dimension_is_two_to_the_n() {
    for s in shapes_up_to(8) {
        let y = build_y_presentation::<F5>(s).unwrap();
        assert_eq!(y.dim_abstract().unwrap(), 1 << s.n(), "{s:?}");
        let l = build_l_presentation::<F7>(s).unwrap();
        assert_eq!(l.dim_abstract().unwrap(), 1 << s.n(), "{s:?}");
    }
}

#[test]
fn full_associativity_on_small_grids() {
    for s in shapes_up_to(5) {
        let y = build_y_presentation::<F5>(s).unwrap();
        let size = 1u64 << s.n();
        for a in 0..size {
            for b in 0..size {
                assert_eq!(y.mul_monomials(a, b).unwrap(), y.mul_monomials(b, a).unwrap());
                for c in 0..size {
                    assert!(y.associative_on(a, b, c).unwrap(), "{s:?} {a} {b} {c}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, rng_seed: proptest::test_runner::RngSeed::Fixed(23), ..ProptestConfig::default() })]

    #[test]
    fn random_associativity_up_to_twelve(k in 1usize..=4, l in 2usize..=5, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let s = GridShape::new(k, l);
        prop_assume!(s.n() <= 12);
        let mask = (1u64 << s.n()) - 1;
        let y = build_y_presentation::<F5>(s).unwrap();
        prop_assert!(y.associative_on(a & mask, b & mask, c & mask).unwrap());
    }

    #[test]
    fn reduce_is_idempotent_and_linear(k in 1usize..=3, l in 2usize..=4, e1 in prop::collection::vec(0u8..4, 9), e2 in prop::collection::vec(0u8..4, 9), c in 0i64..5) {
        let s = GridShape::new(k, l);
        let n = s.n();
        let y = build_y_presentation::<F5>(s).unwrap();
        let p1 = GTPoly::from([(e1[..n].to_vec(), F5::one())]);
        let p2 = GTPoly::from([(e2[..n].to_vec(), F5::from_i64(c))]);
        let r1 = y.reduce(&p1).unwrap();
        let back = blobgt_gt::presentation::element_to_poly(n, &r1);
        prop_assert_eq!(y.reduce(&back).unwrap(), r1.clone());
        let sum = blobgt_gt::presentation::poly_add(&p1, &p2, F5::one());
        let mut expect = r1;
        for (m, v) in y.reduce(&p2).unwrap() {
            *expect.entry(m).or_insert(F5::zero()) += v;
        }
        expect.retain(|_, v| !v.is_zero());
        prop_assert_eq!(y.reduce(&sum).unwrap(), expect);
    }
}

#[test]
fn y_and_l_forms_are_isomorphic() {
    for k in 1..=3 {
        for l in 2..=4 {
            let s = GridShape::new(k, l);
            let y = build_y_presentation::<F5>(s).unwrap();
            let lp = build_l_presentation::<F5>(s).unwrap();
            assert!(presentations_isomorphic(&y, &lp).unwrap(), "{s:?}");
        }
    }
}

#[test]
fn corrupted_c_table_is_detected() {
    let s = GridShape::new(2, 3);
    let y = build_y_presentation::<F5>(s).unwrap();
    let mut lp = build_l_presentation::<F5>(s).unwrap();
    for c in lp.squares[3].values_mut() {
        *c = -F5::one();
    }
    let bad = GTPresentation::from_squares(Variant::L, s, lp.squares.clone());
    assert!(!presentations_isomorphic(&y, &bad).unwrap());
    let le = build_l_presentation::<F5>(s).unwrap();
    let mut inclusive = le.squares.clone();
    // Including the diagonal term with C = -2 changes the relation.
    let mut e = vec![0u8; s.n()];
    e[3] = 2;
    *inclusive[3].entry(e).or_insert(F5::zero()) += -F5::from_i64(2);
    assert!(!presentations_isomorphic(&y, &GTPresentation::from_squares(Variant::L, s, inclusive)).unwrap());
}

/// Second column, second row of a two-row grid with `l = 3`: substitute `ℒ` by hand.
#[test]
fn second_row_square_by_hand() {
    let y = build_y_presentation::<F5>(GridShape::new(2, 3)).unwrap();
    let one = F5::one();
    let expect = GTPoly::from([(vec![0, 1, 1, 0], one), (vec![1, 1, 0, 0], one), (vec![1, 0, 1, 0], -one)]);
    assert_eq!(y.squares[2], expect);
}

#[test]
fn l_form_second_square() {
    let lp = build_l_presentation::<F5>(GridShape::new(1, 3)).unwrap();
    let r = lp.reduce(&GTPoly::from([(vec![0, 2], F5::one())])).unwrap();
    assert_eq!(r, GTElement::from([(0b11, -F5::one())]));
}

#[test]
fn top_monomial_and_complement_pairing() {
    for s in shapes_up_to(8) {
        let y = build_y_presentation::<F5>(s).unwrap();
        let n = s.n();
        let full = (1u64 << n) - 1;
        for m in 0..=full {
            let pf = complement_product(&y, m).unwrap();
            assert_eq!(pf, GTElement::from([(full, F5::one())]), "{s:?} {m:b}");
        }
        // Every degree n+1 product vanishes, so the full product is the unique top monomial.
        for g in 0..n {
            let mut e = vec![1u8; n];
            e[g] = 2;
            assert!(y.reduce(&GTPoly::from([(e, F5::one())])).unwrap().is_empty());
        }
    }
}

#[test]
fn products_below_a_square_vanish() {
    for s in shapes_up_to(8) {
        let y = build_y_presentation::<F5>(s).unwrap();
        for a in 0..s.n() {
            let mut e = mask_to_exps(s.n(), (1u64 << a) - 1);
            e[a] = 2;
            assert!(y.reduce(&GTPoly::from([(e, F5::one())])).unwrap().is_empty(), "{s:?} {a}");
        }
    }
}

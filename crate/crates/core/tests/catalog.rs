use degenlab::budget::Budgets;
use degenlab::catalog::{
    build_poset_with, catalog_classes, catalog_presentation, iterated_knoerrer_module, knoerrer_vars,
    oracle_degenerates, thm31_witness, CMClass, Provenance,
};
use degenlab::degeneration::{fitting_screen, verify_witness};
use degenlab::matfac::validate_mr;
use degenlab::matrix::PolyMatrix;
use degenlab::poly::{parse_poly, CoeffField};
use degenlab::report::Verdict;

#[test]
fn witnesses_exist_exactly_when_the_oracle_says_yes() {
    for a in 0..=12 {
        for b in 0..=12 {
            let yes = oracle_degenerates(&CMClass::from_chain_index(a), &CMClass::from_chain_index(b)).unwrap() == Verdict::Yes;
            match thm31_witness(a, b) {
                Ok(w) => {
                    assert!(yes, "({a},{b}) built against the oracle");
                    assert_eq!(verify_witness(&w).unwrap().verdict, Verdict::Valid, "({a},{b})");
                }
                Err(_) => assert!(!yes, "({a},{b}) has no witness"),
            }
        }
    }
}

#[test]
fn order_violations_are_fitting_obstructed() {
    let ring = degenlab::catalog::dim1_hypersurface(&CoeffField::characteristic_zero(false))
        .unwrap()
        .as_ring();
    for a in 1..=6 {
        for b in 1..a {
            let m = catalog_presentation(&CMClass::ideal_a(1, a)).unwrap();
            let n = catalog_presentation(&CMClass::ideal_a(1, b)).unwrap();
            let r = fitting_screen(&m, &n, &ring, 3).unwrap();
            assert_eq!(r.verdict, Verdict::Obstructed, "(x,y^{a}) -> (x,y^{b})");
        }
    }
}

#[test]
fn poset_is_sound() {
    let g = build_poset_with(1, 8, Some(3), &Budgets::default()).unwrap();
    for e in &g.hasse {
        let (a, b) = (e.src.chain_index().unwrap(), e.dst.chain_index().unwrap());
        assert_eq!(e.provenance, Provenance::Witness);
        assert_eq!(verify_witness(&thm31_witness(a, b).unwrap()).unwrap().verdict, Verdict::Valid);
        assert_eq!(b, a + 2);
    }
    let mut closure = g.hasse_closure();
    closure.sort();
    let mut oracle = Vec::new();
    for a in &g.nodes {
        for b in &g.nodes {
            if a != b && oracle_degenerates(a, b).unwrap() == Verdict::Yes {
                oracle.push((*a, *b));
            }
        }
    }
    oracle.sort();
    assert_eq!(closure, oracle);
    let seq = build_poset_with(1, 8, None, &Budgets::default()).unwrap();
    assert_eq!(seq, g);
}

#[test]
fn knoerrer_square_accumulates_one_pair_per_step() {
    for dim in [1u32, 3, 5, 7] {
        let mr = iterated_knoerrer_module(2, dim).unwrap();
        let hs = mr.hypersurface();
        assert!(validate_mr(mr.mu(), hs).unwrap().valid);
        let s = hs.s();
        let mut f = String::from("0");
        for k in 1..=((dim - 1) / 2) as usize {
            let (u, v) = knoerrer_vars(k);
            f.push_str(&format!(" - {u}^2 - {v}^2"));
        }
        let expected = PolyMatrix::scalar(s, mr.size(), &parse_poly(&f, s).unwrap());
        assert_eq!(mr.mu().checked_mul(mr.mu()).unwrap(), expected, "dim {dim}");
        assert_eq!(mr.size(), 2usize << ((dim - 1) / 2));
    }
}

#[test]
fn dimension_two_catalog_is_an_antichain() {
    let g = build_poset_with(2, 4, None, &Budgets::default()).unwrap();
    assert!(g.edges.is_empty());
    for a in catalog_classes(2, 4).unwrap() {
        for b in catalog_classes(2, 4).unwrap() {
            if a != b {
                assert_ne!(oracle_degenerates(&a, &b).unwrap(), Verdict::Yes, "{a} -> {b}");
            }
        }
    }
}

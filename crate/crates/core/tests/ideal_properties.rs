mod common;

use std::sync::Arc;

use common::{coords, monomial_poly, monomials, random_homogeneous, rank, span_contains};
use degenlab::ideal::{
    buchberger, fitting_ideal, ideal_contains, ideal_equal, ideal_membership, kernel_of_map, minors_ideal,
    submodule_membership, FreeModuleVector, Ideal, Submodule,
};
use degenlab::matrix::PolyMatrix;
use degenlab::poly::{parse_poly, Poly, PolyRing, QuotientRing, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring2() -> Arc<PolyRing> {
    PolyRing::rational(&["x", "y"])
}

fn ideal_gens(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>) -> Vec<Poly> {
    let k = rng.gen_range(1..=3);
    (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=2);
            random_homogeneous(rng, ring, d)
        })
        .filter(|g| !g.is_zero())
        .collect()
}

/// Homogeneous vectors of rank 2 whose components share one degree.
fn module_gens(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>) -> Vec<FreeModuleVector> {
    (0..rng.gen_range(1..=3))
        .map(|_| {
            let d = rng.gen_range(0..=2);
            FreeModuleVector::new(vec![random_homogeneous(rng, ring, d), random_homogeneous(rng, ring, d)]).unwrap()
        })
        .filter(|v| !v.is_zero())
        .collect()
}

fn vec_degree(v: &FreeModuleVector) -> u32 {
    v.entries().iter().find_map(Poly::total_degree).expect("nonzero")
}

/// Linear-algebra membership of a homogeneous vector of degree `d`.
fn module_span_contains(v: &FreeModuleVector, gens: &[FreeModuleVector], modulus: Option<&Poly>, d: u32) -> bool {
    let ring = v.ring();
    let basis = monomials(ring.nvars(), d);
    let flat = |w: &[Poly]| -> Vec<_> { w.iter().flat_map(|p| coords(p, &basis)).collect() };
    let mut all: Vec<Vec<Poly>> = gens.iter().map(|g| g.entries().to_vec()).collect();
    if let Some(f) = modulus {
        for i in 0..v.ambient_rank() {
            let mut e = vec![Poly::zero(ring); v.ambient_rank()];
            e[i] = f.clone();
            all.push(e);
        }
    }
    let mut rows = Vec::new();
    for g in &all {
        let dg = g.iter().find_map(Poly::total_degree).expect("nonzero");
        if dg > d {
            continue;
        }
        for m in monomials(ring.nvars(), d - dg) {
            let mp = monomial_poly(ring, &m);
            rows.push(flat(&g.iter().map(|p| &mp * p).collect::<Vec<_>>()));
        }
    }
    let before = rank(rows.clone());
    rows.push(flat(v.entries()));
    rank(rows) == before
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn gb_membership_matches_linear_algebra(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = PolyRing::rational(&["x", "y", "z"]);
        let gens = ideal_gens(&mut rng, &ring);
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(ring.clone(), gens.clone()).unwrap();
        for _ in 0..4 {
            let d = rng.gen_range(1..=4);
            let p = random_homogeneous(&mut rng, &ring, d);
            prop_assume!(!p.is_zero());
            let m = ideal_membership(&p, &ideal).unwrap();
            prop_assert_eq!(m.member, span_contains(&p, &gens, d));
            if let Some(c) = m.cofactors {
                let combo = c.iter().zip(&gens).fold(Poly::zero(&ring), |acc, (c, g)| &acc + &(c * g));
                prop_assert_eq!(combo, p);
            }
        }
    }

    #[test]
    fn module_membership_matches_linear_algebra(seed in any::<u64>(), quotient in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = ring2();
        let ring: Ring = if quotient {
            QuotientRing::new(&base, parse_poly("x*y", &base).unwrap(), None).unwrap().into()
        } else {
            base.clone().into()
        };
        let gens = module_gens(&mut rng, &base);
        prop_assume!(!gens.is_empty());
        let sub = Submodule::new(ring.clone(), 2, gens.clone()).unwrap();
        for _ in 0..4 {
            let d = rng.gen_range(0..=4);
            let v = if rng.gen_bool(0.5) {
                gens.iter().fold(FreeModuleVector::zero(&base, 2), |acc, g| {
                    let dg = vec_degree(g);
                    if dg > d { acc } else { acc.add(&g.scale(&random_homogeneous(&mut rng, &base, d - dg))).unwrap() }
                })
            } else {
                FreeModuleVector::new(vec![random_homogeneous(&mut rng, &base, d), random_homogeneous(&mut rng, &base, d)]).unwrap()
            };
            let v = v.reduce(&ring);
            prop_assume!(!v.is_zero());
            let d = vec_degree(&v);
            let m = submodule_membership(&v, &sub).unwrap();
            prop_assert_eq!(m.member, module_span_contains(&v, &gens, ring.modulus(), d));
            if let Some(c) = m.cofactors {
                let combo = c.iter().zip(&gens).fold(FreeModuleVector::zero(&base, 2), |acc, (c, g)| acc.add(&g.scale(c)).unwrap());
                prop_assert_eq!(combo.reduce(&ring), v);
            }
        }
    }

    #[test]
    fn gb_is_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = PolyRing::rational(&["x", "y", "z"]);
        let gens = ideal_gens(&mut rng, &ring);
        prop_assume!(!gens.is_empty());
        let gb = buchberger(&Ideal::new(ring.clone(), gens).unwrap()).unwrap().groebner_basis().unwrap();
        let again = buchberger(&Ideal::new(ring, gb.clone()).unwrap()).unwrap().groebner_basis().unwrap();
        prop_assert_eq!(again, gb);
    }

    #[test]
    fn minors_invariant_under_permutation_and_scaling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = ring2();
        let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let rows: Vec<Vec<Poly>> = (0..r)
            .map(|_| (0..c).map(|_| { let d = rng.gen_range(0..=1); random_homogeneous(&mut rng, &ring, d) }).collect())
            .collect();
        let m = PolyMatrix::from_rows(&ring, rows.clone()).unwrap();
        let mut permuted = rows;
        permuted.rotate_left(1);
        let scale = Poly::from_i64(&ring, rng.gen_range(1..=4));
        for row in &mut permuted {
            row.reverse();
        }
        for p in &mut permuted[0] {
            *p = &*p * &scale;
        }
        let m2 = PolyMatrix::from_rows(&ring, permuted).unwrap();
        for j in 1..=r.min(c) {
            prop_assert!(ideal_equal(&minors_ideal(&m, j).unwrap(), &minors_ideal(&m2, j).unwrap()).unwrap());
        }
    }

    #[test]
    fn fitting_ideals_increase(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = ring2();
        let ring: Ring = QuotientRing::new(&base, parse_poly("x^2", &base).unwrap(), Some("x")).unwrap().into();
        let (r, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let rows: Vec<Vec<Poly>> = (0..r)
            .map(|_| (0..c).map(|_| { let d = rng.gen_range(0..=2); random_homogeneous(&mut rng, &base, d) }).collect())
            .collect();
        let m = PolyMatrix::from_rows(&base, rows).unwrap();
        let fitts: Vec<Ideal> = (0..=r).map(|i| fitting_ideal(&m, i, &ring).unwrap()).collect();
        for w in fitts.windows(2) {
            prop_assert!(ideal_contains(&w[1], &w[0]).unwrap());
        }
        prop_assert!(fitts[r].is_unit().unwrap());
    }

    #[test]
    fn kernel_maps_to_zero(seed in any::<u64>(), quotient in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = ring2();
        let ring: Ring = if quotient {
            QuotientRing::new(&base, parse_poly("x^2", &base).unwrap(), Some("x")).unwrap().into()
        } else {
            base.clone().into()
        };
        let (r, c) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
        let rows: Vec<Vec<Poly>> = (0..r)
            .map(|_| (0..c).map(|_| { let d = rng.gen_range(0..=2); random_homogeneous(&mut rng, &base, d) }).collect())
            .collect();
        let m = PolyMatrix::from_rows(&base, rows).unwrap();
        let ker = kernel_of_map(&m, &ring).unwrap();
        for g in ker.gens() {
            for p in m.apply(g.entries()).unwrap() {
                prop_assert!(ring.is_zero(&p), "{} maps to {}", g, p);
            }
        }
    }
}

mod common;

use common::{random_univariate, random_unimodular};
use degenlab::catalog::{catalog_classes, catalog_matrix_in, dim1_hypersurface};
use degenlab::ideal::Submodule;
use degenlab::matfac::{
    cokernel_presentation, double_sharp, recognize_dim1, sharp, smith_normal_form, syzygy_mr, validate_mr,
    Hypersurface, MatrixRepresentation,
};
use degenlab::matrix::PolyMatrix;
use degenlab::poly::{parse_poly, CoeffField, Poly, PolyRing, QuotientRing, Ring, Value};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A block sum of one or two catalog matrices, conjugated by a random
/// unimodular matrix over k[y].
fn random_representation(rng: &mut ChaCha8Rng, hs: &Hypersurface) -> MatrixRepresentation {
    let classes = catalog_classes(1, 5).unwrap();
    let blocks: Vec<PolyMatrix> = (0..rng.gen_range(1..=2))
        .map(|_| catalog_matrix_in(&classes[rng.gen_range(0..classes.len())], hs).unwrap().mu().clone())
        .collect();
    let refs: Vec<&PolyMatrix> = blocks.iter().collect();
    let mu = PolyMatrix::block_diag(&refs).unwrap();
    let (p, p_inv) = random_unimodular(rng, hs.s(), mu.rows(), &["1", "-1", "y", "2*y", "y^2"]);
    MatrixRepresentation::new(hs, p_inv.checked_mul(&mu).unwrap().checked_mul(&p).unwrap()).unwrap()
}

fn gaussian_hs() -> Hypersurface {
    dim1_hypersurface(&CoeffField::characteristic_zero(true)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sharp_blocks_validate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hs = gaussian_hs();
        let mr = random_representation(&mut rng, &hs);
        let s1 = sharp(&mr, "u").unwrap();
        let s2 = double_sharp(&mr, "u", "v").unwrap();
        prop_assert!(validate_mr(s1.mu(), s1.hypersurface()).unwrap().valid);
        prop_assert!(validate_mr(s2.mu(), s2.hypersurface()).unwrap().valid);
        let cut = s2.mu().substitute("v", &Value::Scalar(CoeffField::GaussianRationals.zero())).unwrap();
        prop_assert_eq!(&cut, s1.mu());
    }

    #[test]
    fn syzygy_is_an_involution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hs = gaussian_hs();
        let mr = random_representation(&mut rng, &hs);
        let twice = syzygy_mr(&syzygy_mr(&mr).unwrap()).unwrap();
        prop_assert_eq!(twice.mu(), mr.mu());
    }

    #[test]
    fn recognition_is_conjugation_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hs = dim1_hypersurface(&CoeffField::characteristic_zero(false)).unwrap();
        let mr = random_representation(&mut rng, &hs);
        let (p, p_inv) = random_unimodular(&mut rng, hs.s(), mr.size(), &["1", "y", "-3", "y^2 + 1"]);
        let conj = p_inv.checked_mul(mr.mu()).unwrap().checked_mul(&p).unwrap();
        let mut a = recognize_dim1(mr.mu()).unwrap().classes;
        let mut b = recognize_dim1(&conj).unwrap().classes;
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        let rec = recognize_dim1(&conj).unwrap();
        prop_assert_eq!(conj.checked_mul(&rec.basis).unwrap(), rec.basis.checked_mul(&rec.model).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_transformations(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = PolyRing::rational(&["y"]);
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<Poly>> = (0..r).map(|_| (0..c).map(|_| random_univariate(&mut rng, &s, 0, 3)).collect()).collect();
        let m = PolyMatrix::from_rows(&s, rows).unwrap();
        let f = smith_normal_form(&m).unwrap();
        prop_assert_eq!(f.p.checked_mul(&m).unwrap().checked_mul(&f.q).unwrap(), f.d.clone());
        for g in [&f.p, &f.q] {
            let d = g.det().unwrap();
            prop_assert!(d.is_constant() && !d.is_zero(), "det {} is not a unit", d);
        }
        prop_assert_eq!(f.p.checked_mul(&f.p_inv).unwrap(), PolyMatrix::identity(&s, r));
        prop_assert_eq!(f.q.checked_mul(&f.q_inv).unwrap(), PolyMatrix::identity(&s, c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn cokernel_presentation_is_two_periodic(seed in any::<u64>(), h in 0u32..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = PolyRing::rational(&["x", "y"]);
        let ring: Ring = QuotientRing::new(&base, parse_poly("x^2", &base).unwrap(), Some("x")).unwrap().into();
        let n = rng.gen_range(1..=2);
        let (p, p_inv) = random_unimodular(&mut rng, &base, n, &["1", "y", "-2"]);
        let x = Poly::var(&base, "x").unwrap();
        let alpha = p.checked_mul(&PolyMatrix::identity(&base, n).scale(&x)).unwrap().checked_mul(&p_inv).unwrap();
        let y = Poly::var(&base, "y").unwrap();
        let pres = cokernel_presentation(&alpha, &y, h, &ring).unwrap();
        let yh = PolyMatrix::scalar(&base, n, &y.pow(h));
        let partner = PolyMatrix::block(&alpha, &yh, &PolyMatrix::zeros(&base, n, n), &alpha).unwrap();
        prop_assert!(pres.checked_mul(&partner).unwrap().reduce(&ring).is_zero());
        prop_assert!(partner.checked_mul(&pres).unwrap().reduce(&ring).is_zero());
        let image = Submodule::image(ring.clone(), &pres).unwrap();
        prop_assert_eq!(image.ambient_rank(), 2 * n);
    }
}

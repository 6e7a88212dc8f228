mod common;

use std::sync::Arc;

use common::Expr;
use degenlab::poly::{normal_form, parse_poly, Coeff, CoeffField, MonomialOrder, Poly, PolyRing, QuotientRing, Value};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = u64::MAX - 58;

fn mod_ring(order: MonomialOrder) -> Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z"], order, CoeffField::prime(P).unwrap()).unwrap()
}

fn eval_mod(e: &Expr, point: &[u64]) -> u64 {
    let p = P as u128;
    match e {
        Expr::Var(i) => point[*i],
        Expr::Const(c) => (*c as i128).rem_euclid(p as i128) as u64,
        Expr::Add(a, b) => ((eval_mod(a, point) as u128 + eval_mod(b, point) as u128) % p) as u64,
        Expr::Sub(a, b) => ((eval_mod(a, point) as u128 + p - eval_mod(b, point) as u128) % p) as u64,
        Expr::Mul(a, b) => ((eval_mod(a, point) as u128 * eval_mod(b, point) as u128) % p) as u64,
        Expr::Pow(a, e) => {
            let v = eval_mod(a, point) as u128;
            (0..*e).fold(1u128, |acc, _| acc * v % p) as u64
        }
    }
}

fn value(c: &Coeff) -> u64 {
    match c {
        Coeff::Mod { v, .. } => *v,
        other => panic!("expected a prime-field element, got {other:?}"),
    }
}

/// A pair of expressions that are equal about half the time: the second
/// is either unrelated or the first rearranged.
fn pair(rng: &mut ChaCha8Rng) -> (Expr, Expr) {
    let a = Expr::random(rng, 3, 4);
    let b = match rng.gen_range(0..3) {
        0 => Expr::random(rng, 3, 4),
        1 => {
            let c = Expr::random(rng, 3, 2);
            Expr::Sub(Box::new(Expr::Add(Box::new(c.clone()), Box::new(a.clone()))), Box::new(c))
        }
        _ => Expr::Mul(Box::new(Expr::Const(1)), Box::new(a.clone())),
    };
    (a, b)
}

fn rational(seed: u64, depth: u32) -> (Arc<PolyRing>, Poly) {
    let ring = PolyRing::rational(&["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = Expr::random(&mut rng, 3, depth).to_poly(&ring);
    (ring, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn equality_matches_evaluation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = mod_ring(MonomialOrder::GrevLex);
        let (a, b) = pair(&mut rng);
        let (pa, pb) = (a.to_poly(&ring), b.to_poly(&ring));
        let points: Vec<Vec<u64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(0..P)).collect()).collect();
        let agree = points.iter().all(|pt| eval_mod(&a, pt) == eval_mod(&b, pt));
        prop_assert_eq!(pa == pb, agree);
        for pt in &points {
            let coords: Vec<Coeff> = pt.iter().map(|&v| Coeff::Mod { v, p: P }).collect();
            prop_assert_eq!(value(&pa.evaluate(&coords)), eval_mod(&a, pt));
        }
    }

    #[test]
    fn rendering_round_trips(seed in any::<u64>()) {
        for order in [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GrevLex] {
            let ring = PolyRing::new(&["x", "y", "z"], order, CoeffField::characteristic_zero(false)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = Expr::random(&mut rng, 3, 4).to_poly(&ring);
            prop_assert_eq!(parse_poly(&p.to_string(), &ring).unwrap(), p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn arithmetic_laws(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (_, a) = rational(s1, 3);
        let (_, b) = rational(s2, 3);
        let (_, c) = rational(s3, 3);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), k in -4i64..=4) {
        let (ring, a) = rational(s1, 3);
        let (_, b) = rational(s2, 3);
        let small = ring.without_var("y").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(s3);
        let q = Expr::random(&mut rng, 2, 2).to_poly(&small);
        for v in [Value::Scalar(CoeffField::characteristic_zero(false).from_i64(k)), Value::Poly(q)] {
            let sa = a.substitute("y", &v).unwrap();
            let sb = b.substitute("y", &v).unwrap();
            prop_assert_eq!((&a * &b).substitute("y", &v).unwrap(), &sa * &sb);
            prop_assert_eq!((&a + &b).substitute("y", &v).unwrap(), &sa + &sb);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_identity(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (_, f) = rational(s1, 4);
        let (_, g1) = rational(s2, 2);
        let (_, g2) = rational(s3, 2);
        let divisors: Vec<Poly> = [g1, g2].into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!divisors.is_empty());
        let (quots, r) = f.divide(&divisors).unwrap();
        let rebuilt = quots.iter().zip(&divisors).fold(r.clone(), |acc, (q, g)| &acc + &(q * g));
        prop_assert_eq!(rebuilt, f);
        for (m, _) in r.terms() {
            for g in &divisors {
                prop_assert!(!g.lm().unwrap().divides(m), "remainder term divisible by a leading monomial");
            }
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (ring, a) = rational(s1, 3);
        let (_, b) = rational(s2, 3);
        let (_, f) = rational(s3, 2);
        let f = &f - &Poly::constant(&ring, f.constant_coeff());
        prop_assume!(!f.is_zero());
        let qr = QuotientRing::new(&ring, f, None).unwrap();
        let nf = |p: &Poly| normal_form(p, &qr).unwrap();
        prop_assert_eq!(nf(&nf(&a)), nf(&a));
        prop_assert_eq!(nf(&(&a + &b)), nf(&(&nf(&a) + &nf(&b))));
        prop_assert_eq!(nf(&(&a * &b)), nf(&(&nf(&a) * &nf(&b))));
        prop_assert!(nf(&(&a * qr.f())).is_zero());
    }
}

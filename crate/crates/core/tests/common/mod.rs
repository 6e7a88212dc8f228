//! Oracles shared by the integration suites. They avoid the library's
//! arithmetic wherever a direct computation is cheap.
#![allow(dead_code)]

use std::sync::Arc;

use degenlab::matrix::PolyMatrix;
use degenlab::poly::{parse_poly, Coeff, Poly, PolyRing};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// An arithmetic expression, evaluated independently of `Poly`.
#[derive(Clone, Debug)]
pub enum Expr {
    Var(usize),
    Const(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn random<R: Rng>(rng: &mut R, nvars: usize, depth: u32) -> Expr {
        if depth == 0 || rng.gen_bool(0.25) {
            return if rng.gen_bool(0.6) {
                Expr::Var(rng.gen_range(0..nvars))
            } else {
                Expr::Const(rng.gen_range(-5..=5))
            };
        }
        let a = Box::new(Expr::random(rng, nvars, depth - 1));
        match rng.gen_range(0..7) {
            0 | 1 => Expr::Add(a, Box::new(Expr::random(rng, nvars, depth - 1))),
            2 | 3 => Expr::Sub(a, Box::new(Expr::random(rng, nvars, depth - 1))),
            4 | 5 => Expr::Mul(a, Box::new(Expr::random(rng, nvars, depth - 1))),
            _ => Expr::Pow(a, rng.gen_range(0..=3)),
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        match self {
            Expr::Var(i) => point[*i].clone(),
            Expr::Const(c) => q(*c),
            Expr::Add(a, b) => a.eval(point) + b.eval(point),
            Expr::Sub(a, b) => a.eval(point) - b.eval(point),
            Expr::Mul(a, b) => a.eval(point) * b.eval(point),
            Expr::Pow(a, e) => {
                let v = a.eval(point);
                (0..*e).fold(BigRational::one(), |acc, _| acc * &v)
            }
        }
    }

    pub fn to_poly(&self, ring: &Arc<PolyRing>) -> Poly {
        match self {
            Expr::Var(i) => Poly::var_pow(ring, *i, 1),
            Expr::Const(c) => Poly::from_i64(ring, *c),
            Expr::Add(a, b) => &a.to_poly(ring) + &b.to_poly(ring),
            Expr::Sub(a, b) => &a.to_poly(ring) - &b.to_poly(ring),
            Expr::Mul(a, b) => &a.to_poly(ring) * &b.to_poly(ring),
            Expr::Pow(a, e) => a.to_poly(ring).pow(*e),
        }
    }
}

pub fn rat_coeff(c: &Coeff) -> BigRational {
    match c {
        Coeff::Rat(r) => r.clone(),
        other => panic!("not a rational coefficient: {other:?}"),
    }
}

/// Exponent vectors of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

pub fn monomial_poly(ring: &Arc<PolyRing>, exps: &[u32]) -> Poly {
    exps.iter()
        .enumerate()
        .fold(Poly::one(ring), |acc, (i, &e)| &acc * &Poly::var_pow(ring, i, e))
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..cols {
                    let d = &f * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Coefficient vector of `p` on the monomials `basis`.
pub fn coords(p: &Poly, basis: &[Vec<u32>]) -> Vec<BigRational> {
    let ring = p.ring();
    basis
        .iter()
        .map(|e| {
            let point = monomial_poly(ring, e);
            let m = point.lm().expect("monomial").clone();
            rat_coeff(&p.coeff_of(&m))
        })
        .collect()
}

/// Whether homogeneous `p` of degree `d` is a `k`-linear combination of
/// `m * g` over generators `g` and monomials `m` of complementary degree.
pub fn span_contains(p: &Poly, gens: &[Poly], d: u32) -> bool {
    let ring = p.ring();
    let n = ring.nvars();
    let basis = monomials(n, d);
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.total_degree().expect("nonzero generator");
        if dg > d {
            continue;
        }
        for m in monomials(n, d - dg) {
            rows.push(coords(&(&monomial_poly(ring, &m) * g), &basis));
        }
    }
    let before = rank(rows.clone());
    rows.push(coords(p, &basis));
    rank(rows) == before
}

/// Random homogeneous polynomial of degree `d` with small integer
/// coefficients.
pub fn random_homogeneous<R: Rng>(rng: &mut R, ring: &Arc<PolyRing>, d: u32) -> Poly {
    let mut p = Poly::zero(ring);
    for e in monomials(ring.nvars(), d) {
        if rng.gen_bool(0.5) {
            p = &p + &(&monomial_poly(ring, &e) * &Poly::from_i64(ring, rng.gen_range(-3..=3)));
        }
    }
    p
}

/// Random polynomial in `var` of degree at most `d`.
pub fn random_univariate<R: Rng>(rng: &mut R, ring: &Arc<PolyRing>, var: usize, d: u32) -> Poly {
    (0..=d).fold(Poly::zero(ring), |acc, e| {
        &acc + &(&Poly::var_pow(ring, var, e) * &Poly::from_i64(ring, rng.gen_range(-3..=3)))
    })
}

/// A random product of elementary matrices with entries drawn from
/// `factors`, and its inverse.
pub fn random_unimodular<R: Rng>(rng: &mut R, ring: &Arc<PolyRing>, n: usize, factors: &[&str]) -> (PolyMatrix, PolyMatrix) {
    let mut u = PolyMatrix::identity(ring, n);
    let mut inv = PolyMatrix::identity(ring, n);
    if n < 2 {
        let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let s = Poly::from_i64(ring, c);
        let s_inv = Poly::constant(ring, Coeff::Rat(BigRational::new(BigInt::from(1), BigInt::from(c))));
        return (u.scale(&s), inv.scale(&s_inv));
    }
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let f = parse_poly(factors[rng.gen_range(0..factors.len())], ring).unwrap();
        let mut e = PolyMatrix::identity(ring, n);
        e.set(i, j, f.clone());
        let mut e_inv = PolyMatrix::identity(ring, n);
        e_inv.set(i, j, -&f);
        u = e.checked_mul(&u).unwrap();
        inv = inv.checked_mul(&e_inv).unwrap();
    }
    (u, inv)
}

/// Monic gcd of univariate polynomials by the Euclidean algorithm.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.divide(std::slice::from_ref(&b)).unwrap();
        a = b;
        b = r;
    }
    if a.is_zero() {
        a
    } else {
        a.monic()
    }
}

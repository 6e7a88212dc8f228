use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Coeff, CoeffField, Monomial, Poly};

/// Largest number of unknown coefficients the ansatz may use.
pub const INTERTWINER_UNKNOWN_CAP: usize = 400;

const RANDOM_TRIES: usize = 32;

fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, deg, &mut vec![0; nvars], &mut out);
    out
}

/// Basis of the right nullspace of a dense matrix.
fn nullspace(mut rows: Vec<Vec<Coeff>>, ncols: usize, field: &CoeffField) -> Vec<Vec<Coeff>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    if !rows[r][k].is_zero() {
                        let d = &rows[r][k] * &f;
                        rows[i][k] = &rows[i][k] - &d;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); ncols];
            v[fc] = field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[i][fc];
            }
            v
        })
        .collect()
}

/// Searches for `g` with entries of degree at most `degree` such that
/// `a * g = g * b` and `accept(g)` holds. `Ok(None)` means the bounded
/// search found nothing, not that no intertwiner exists.
pub fn solve_intertwiner<F>(a: &PolyMatrix, b: &PolyMatrix, degree: u32, seed: u64, accept: F) -> Result<Option<PolyMatrix>>
where
    F: Fn(&PolyMatrix) -> bool,
{
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n || a.ring() != b.ring() {
        return Err(Error::SizeMismatch("intertwiner needs equal square sizes".into()));
    }
    let ring = a.ring().clone();
    let monos = monomials_up_to(ring.nvars(), degree);
    let unknowns = n * n * monos.len();
    if unknowns > INTERTWINER_UNKNOWN_CAP {
        return Err(Error::ResourceLimit {
            budget: INTERTWINER_UNKNOWN_CAP,
        });
    }
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * monos.len() + k;
    // (row, col, monomial) -> sparse equation
    let mut eqs: HashMap<(usize, usize, Monomial), HashMap<usize, Coeff>> = HashMap::new();
    let mut add = |p: usize, q: usize, mono: Monomial, var: usize, c: &Coeff| {
        let e = eqs.entry((p, q, mono)).or_default();
        let slot = e.entry(var).or_insert_with(|| ring.field().zero());
        *slot = &*slot + c;
    };
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                // (a g)_{pq} += a_{pr} g_{rq}
                for (k, m) in monos.iter().enumerate() {
                    for (am, ac) in a.get(p, r).terms() {
                        add(p, q, am.mul(m), idx(r, q, k), ac);
                    }
                    // (g b)_{pq} += g_{pr} b_{rq}
                    for (bm, bc) in b.get(r, q).terms() {
                        add(p, q, bm.mul(m), idx(p, r, k), &-bc);
                    }
                }
            }
        }
    }
    let field = ring.field().clone();
    let rows: Vec<Vec<Coeff>> = eqs
        .into_values()
        .filter(|e| e.values().any(|c| !c.is_zero()))
        .map(|e| {
            let mut row = vec![field.zero(); unknowns];
            for (k, c) in e {
                row[k] = c;
            }
            row
        })
        .collect();
    let basis = nullspace(rows, unknowns, &field);
    if basis.is_empty() {
        return Ok(None);
    }
    let build = |v: &[Coeff]| {
        let mut g = PolyMatrix::zeros(&ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let terms = monos
                    .iter()
                    .enumerate()
                    .map(|(k, m)| (m.clone(), v[idx(i, j, k)].clone()))
                    .collect();
                g.set(i, j, Poly::from_terms(&ring, terms));
            }
        }
        g
    };
    for v in &basis {
        let g = build(v);
        if accept(&g) {
            return Ok(Some(g));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let mut v = vec![field.zero(); unknowns];
        for bv in &basis {
            let c = field.from_i64(rng.gen_range(-3..=3));
            for (x, y) in v.iter_mut().zip(bv) {
                *x = &*x + &(&c * y);
            }
        }
        let g = build(&v);
        if accept(&g) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfac::det_unit_at_origin;
    use crate::poly::PolyRing;

    #[test]
    fn finds_conjugator_between_transposes() {
        let r = PolyRing::rational(&["y"]);
        let a = PolyMatrix::parse(&r, &[&["0", "y"], &["0", "0"]]).unwrap();
        let b = PolyMatrix::parse(&r, &[&["0", "0"], &["y", "0"]]).unwrap();
        let g = solve_intertwiner(&a, &b, 1, 7, |g| det_unit_at_origin(g).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(&a * &g, &g * &b);
    }

    #[test]
    fn non_conjugate_pair_yields_none() {
        let r = PolyRing::rational(&["y"]);
        let a = PolyMatrix::parse(&r, &[&["0", "y"], &["0", "0"]]).unwrap();
        let b = PolyMatrix::parse(&r, &[&["0", "y^3"], &["0", "0"]]).unwrap();
        let g = solve_intertwiner(&a, &b, 2, 7, |g| det_unit_at_origin(g).unwrap()).unwrap();
        assert!(g.is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let r = PolyRing::rational(&["y", "t"]);
        let a = PolyMatrix::identity(&r, 3);
        assert!(matches!(
            solve_intertwiner(&a, &a, 10, 0, |_| true),
            Err(Error::ResourceLimit { .. })
        ));
    }
}

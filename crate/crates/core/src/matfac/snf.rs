use crate::error::{Error, Result};
use crate::matrix::{ElementaryOp, PolyMatrix};
use crate::poly::Poly;

/// `p * m * q = d` with `d` diagonal, `d[i] | d[i+1]`, nonzero invariant
/// factors monic, and both inverses recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub d: PolyMatrix,
    pub p: PolyMatrix,
    pub p_inv: PolyMatrix,
    pub q: PolyMatrix,
    pub q_inv: PolyMatrix,
}

impl Snf {
    /// Diagonal entries.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|p| !p.is_zero()).count()
    }
}

struct Work {
    a: PolyMatrix,
    p: PolyMatrix,
    p_inv: PolyMatrix,
    q: PolyMatrix,
    q_inv: PolyMatrix,
}

impl Work {
    fn row(&mut self, op: ElementaryOp) {
        let inv = match &op {
            ElementaryOp::SwapRows(a, b) => ElementaryOp::SwapCols(*a, *b),
            ElementaryOp::AddRow { src, dst, factor } => ElementaryOp::AddCol {
                src: *dst,
                dst: *src,
                factor: -factor,
            },
            ElementaryOp::ScaleRow(i, c) => ElementaryOp::ScaleCol(*i, c.inv().expect("unit scale")),
            _ => unreachable!("row operation expected"),
        };
        self.a.apply_op(&op);
        self.p.apply_op(&op);
        self.p_inv.apply_op(&inv);
    }

    fn col(&mut self, op: ElementaryOp) {
        let inv = match &op {
            ElementaryOp::SwapCols(a, b) => ElementaryOp::SwapRows(*a, *b),
            ElementaryOp::AddCol { src, dst, factor } => ElementaryOp::AddRow {
                src: *dst,
                dst: *src,
                factor: -factor,
            },
            ElementaryOp::ScaleCol(i, c) => ElementaryOp::ScaleRow(*i, c.inv().expect("unit scale")),
            _ => unreachable!("column operation expected"),
        };
        self.a.apply_op(&op);
        self.q.apply_op(&op);
        self.q_inv.apply_op(&inv);
    }
}

fn univariate_var(m: &PolyMatrix) -> Result<Option<usize>> {
    let mut var = None;
    for p in m.entries() {
        for v in p.support_vars() {
            match var {
                None => var = Some(v),
                Some(w) if w == v => {}
                Some(_) => return Err(Error::NotUnivariate),
            }
        }
    }
    Ok(var)
}

fn degree(p: &Poly) -> u32 {
    p.total_degree().expect("nonzero")
}

/// Smith normal form of a matrix whose entries involve at most one
/// variable.
pub fn smith_normal_form(m: &PolyMatrix) -> Result<Snf> {
    univariate_var(m)?;
    let ring = m.ring().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        p: PolyMatrix::identity(&ring, rows),
        p_inv: PolyMatrix::identity(&ring, rows),
        q: PolyMatrix::identity(&ring, cols),
        q_inv: PolyMatrix::identity(&ring, cols),
    };
    for k in 0..rows.min(cols) {
        loop {
            // Pivot of least degree in the trailing block.
            let mut best: Option<(usize, usize, u32)> = None;
            for i in k..rows {
                for j in k..cols {
                    let e = w.a.get(i, j);
                    if !e.is_zero() && best.is_none_or(|(_, _, d)| degree(e) < d) {
                        best = Some((i, j, degree(e)));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break;
            };
            if pi != k {
                w.row(ElementaryOp::SwapRows(pi, k));
            }
            if pj != k {
                w.col(ElementaryOp::SwapCols(pj, k));
            }
            let pivot = w.a.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..rows {
                let e = w.a.get(i, k).clone();
                if e.is_zero() {
                    continue;
                }
                let (q, r) = e.divide(std::slice::from_ref(&pivot))?;
                w.row(ElementaryOp::AddRow {
                    src: k,
                    dst: i,
                    factor: -&q[0],
                });
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                let e = w.a.get(k, j).clone();
                if e.is_zero() {
                    continue;
                }
                let (q, r) = e.divide(std::slice::from_ref(&pivot))?;
                w.col(ElementaryOp::AddCol {
                    src: k,
                    dst: j,
                    factor: -&q[0],
                });
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    let e = w.a.get(i, j);
                    if !e.is_zero() && !e.divide(std::slice::from_ref(&pivot))?.1.is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => w.row(ElementaryOp::AddRow {
                    src: i,
                    dst: k,
                    factor: Poly::one(&ring),
                }),
                None => break,
            }
        }
        let pivot = w.a.get(k, k).clone();
        if let Some(lc) = pivot.lc() {
            if !lc.is_one() {
                w.row(ElementaryOp::ScaleRow(k, lc.inv().expect("nonzero")));
            }
        }
    }
    Ok(Snf {
        d: w.a,
        p: w.p,
        p_inv: w.p_inv,
        q: w.q,
        q_inv: w.q_inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn check(m: &PolyMatrix) -> Snf {
        let s = smith_normal_form(m).unwrap();
        assert_eq!(&(&s.p * m) * &s.q, s.d);
        let n = m.rows();
        assert_eq!(&s.p * &s.p_inv, PolyMatrix::identity(m.ring(), n));
        assert_eq!(&s.q * &s.q_inv, PolyMatrix::identity(m.ring(), m.cols()));
        s
    }

    #[test]
    fn one_swap() {
        let r = PolyRing::rational(&["y"]);
        let m = PolyMatrix::parse(&r, &[&["0", "y^3"], &["0", "0"]]).unwrap();
        let s = check(&m);
        assert_eq!(s.d, PolyMatrix::parse(&r, &[&["y^3", "0"], &["0", "0"]]).unwrap());
    }

    #[test]
    fn witness_fiber() {
        let r = PolyRing::rational(&["y"]);
        let m = PolyMatrix::parse(&r, &[&["y^2", "y^3"], &["-y", "-y^2"]]).unwrap();
        let s = check(&m);
        assert_eq!(s.d, PolyMatrix::parse(&r, &[&["y", "0"], &["0", "0"]]).unwrap());
    }

    #[test]
    fn divisibility_fixup() {
        let r = PolyRing::rational(&["y"]);
        let m = PolyMatrix::parse(&r, &[&["y^2", "0"], &["0", "y^2 - y"]]).unwrap();
        let s = check(&m);
        assert_eq!(s.invariant_factors()[0], crate::poly::parse_poly("y", &r).unwrap());
    }

    #[test]
    fn rejects_multivariate() {
        let r = PolyRing::rational(&["y", "z"]);
        let m = PolyMatrix::parse(&r, &[&["y", "z"]]).unwrap();
        assert_eq!(smith_normal_form(&m), Err(Error::NotUnivariate));
    }
}

//! Dense matrices of polynomials.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{parse_poly, Coeff, Poly, PolyRing, Ring, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

/// Elementary row and column operations, recorded for certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryOp {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    /// row[dst] += factor * row[src]
    AddRow { src: usize, dst: usize, factor: Poly },
    /// col[dst] += factor * col[src]
    AddCol { src: usize, dst: usize, factor: Poly },
    ScaleRow(usize, Coeff),
    ScaleCol(usize, Coeff),
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![Poly::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        Self::scalar(ring, n, &Poly::one(ring))
    }

    pub fn scalar(ring: &Arc<PolyRing>, n: usize, p: &Poly) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = p.clone();
        }
        m
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::SizeMismatch("ragged matrix rows".into()));
            }
            for p in row {
                if p.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Parses a matrix given row by row in the polynomial grammar.
    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, rows: &[&[S]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s.as_ref(), ring)).collect())
            .collect::<Result<Vec<Vec<Poly>>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn from_columns(ring: &Arc<PolyRing>, rows: usize, columns: &[Vec<Poly>]) -> Result<Self> {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::SizeMismatch("column length".into()));
            }
            for (i, p) in col.iter().enumerate() {
                if p.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                m.set(i, j, p.clone());
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        debug_assert_eq!(p.ring(), &self.ring);
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn max_degree(&self) -> u32 {
        self.data
            .iter()
            .filter_map(Poly::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn map<F: FnMut(&Poly) -> Poly>(&self, mut f: F) -> Self {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<F: FnMut(&Poly) -> Result<Poly>>(&self, target: &Arc<PolyRing>, f: F) -> Result<Self> {
        Ok(PolyMatrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Entrywise normal form in `ring`.
    pub fn reduce(&self, ring: &Ring) -> Self {
        self.map(|p| ring.reduce(p))
    }

    pub fn substitute(&self, var: &str, value: &Value) -> Result<Self> {
        let target = self.ring.without_var(var)?;
        self.try_map(&target, |p| p.substitute(var, value))
    }

    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Self> {
        self.try_map(target, |p| p.embed(target))
    }

    pub fn reinterpret(&self, target: &Arc<PolyRing>) -> Result<Self> {
        self.try_map(target, |p| p.reinterpret(target))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, p: &Poly) -> Self {
        self.map(|q| q * p)
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &PolyMatrix, negate: bool) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::SizeMismatch("entrywise operation".into()));
        }
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect(),
        })
    }

    pub fn checked_add(&self, other: &PolyMatrix) -> Result<Self> {
        self.zip_with(other, false)
    }

    pub fn checked_sub(&self, other: &PolyMatrix) -> Result<Self> {
        self.zip_with(other, true)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::SizeMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(&self.ring);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Self::identity(&self.ring, n);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Poly> {
        let n = self.require_square()?;
        Ok((0..n).fold(Poly::zero(&self.ring), |acc, i| &acc + self.get(i, i)))
    }

    /// Determinant by cofactor expansion, memoized over column subsets.
    pub fn det(&self) -> Result<Poly> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(Poly::one(&self.ring));
        }
        if n > 63 {
            return Err(Error::Unsupported("determinant of a matrix larger than 63x63".into()));
        }
        let mut memo = HashMap::new();
        Ok(self.det_rec((1u64 << n) - 1, n, &mut memo))
    }

    fn det_rec(&self, mask: u64, n: usize, memo: &mut HashMap<u64, Poly>) -> Poly {
        let k = mask.count_ones() as usize;
        let row = n - k;
        if k == 1 {
            return self.get(row, mask.trailing_zeros() as usize).clone();
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = Poly::zero(&self.ring);
        let mut pos = 0;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let a = self.get(row, j);
            if !a.is_zero() {
                let sub = self.det_rec(mask & !(1 << j), n, memo);
                if !sub.is_zero() {
                    let t = a * &sub;
                    acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
                }
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// All nonzero `j x j` minors. `j = 0` gives the single minor 1.
    pub fn minors(&self, j: usize) -> Result<Vec<Poly>> {
        if j > self.rows.min(self.cols) {
            return Err(Error::OutOfRange(format!(
                "minor size {j} exceeds {}x{}",
                self.rows, self.cols
            )));
        }
        if j == 0 {
            return Ok(vec![Poly::one(&self.ring)]);
        }
        let row_sets = subsets(self.rows, j);
        let col_sets = subsets(self.cols, j);
        let mut out = Vec::new();
        for rs in &row_sets {
            for cs in &col_sets {
                let d = self.submatrix(rs, cs).det()?;
                if !d.is_zero() && !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        Ok(out)
    }

    /// `[[a, b], [c, d]]` as a block matrix.
    pub fn block(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> Result<Self> {
        let top = a.hstack(b)?;
        let bottom = c.hstack(d)?;
        top.vstack(&bottom)
    }

    pub fn hstack(&self, other: &PolyMatrix) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::SizeMismatch("hstack row counts differ".into()));
        }
        let mut m = Self::zeros(&self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn vstack(&self, other: &PolyMatrix) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::SizeMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(blocks: &[&PolyMatrix]) -> Result<Self> {
        let ring = blocks
            .first()
            .ok_or_else(|| Error::SizeMismatch("no blocks".into()))?
            .ring
            .clone();
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(&ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.ring != ring {
                return Err(Error::RingMismatch);
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(m)
    }

    pub fn apply_op(&mut self, op: &ElementaryOp) {
        match op {
            ElementaryOp::SwapRows(a, b) => {
                for j in 0..self.cols {
                    self.data.swap(a * self.cols + j, b * self.cols + j);
                }
            }
            ElementaryOp::SwapCols(a, b) => {
                for i in 0..self.rows {
                    self.data.swap(i * self.cols + a, i * self.cols + b);
                }
            }
            ElementaryOp::AddRow { src, dst, factor } => {
                for j in 0..self.cols {
                    let v = self.get(*dst, j) + &(factor * self.get(*src, j));
                    self.set(*dst, j, v);
                }
            }
            ElementaryOp::AddCol { src, dst, factor } => {
                for i in 0..self.rows {
                    let v = self.get(i, *dst) + &(factor * self.get(i, *src));
                    self.set(i, *dst, v);
                }
            }
            ElementaryOp::ScaleRow(i, c) => {
                for j in 0..self.cols {
                    let v = self.get(*i, j).scale(c);
                    self.set(*i, j, v);
                }
            }
            ElementaryOp::ScaleCol(j, c) => {
                for i in 0..self.rows {
                    let v = self.get(i, *j).scale(c);
                    self.set(i, *j, v);
                }
            }
        }
    }
}

/// Increasing index subsets of `0..n` of size `k`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_mul(rhs).expect("incompatible matrix product")
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_add(rhs).expect("incompatible matrix sum")
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        self.checked_sub(rhs).expect("incompatible matrix difference")
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        self.map(|p| -p)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Serialized as a list of rows of rendered entries.
impl serde::Serialize for PolyMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::parse(&PolyRing::rational(&["x", "y", "t"]), rows).unwrap()
    }

    #[test]
    fn witness_determinant_vanishes() {
        let xi = m(&[&["t*y^2", "y^3"], &["-t^2*y", "-t*y^2"]]);
        assert!(xi.det().unwrap().is_zero());
        assert!(xi.trace().unwrap().is_zero());
        assert_eq!(xi.minors(2).unwrap(), Vec::<Poly>::new());
        assert_eq!(xi.minors(1).unwrap().len(), 4);
    }

    #[test]
    fn cofactor_matches_leibniz_on_3x3() {
        let a = m(&[&["x", "y", "1"], &["t", "x*y", "2"], &["y^2", "0", "x + t"]]);
        let g = |i: usize, j: usize| a.get(i, j).clone();
        let leibniz = &(&(&(&g(0, 0) * &g(1, 1)) * &g(2, 2)) + &(&(&g(0, 1) * &g(1, 2)) * &g(2, 0)))
            + &(&(&(&g(0, 2) * &g(1, 0)) * &g(2, 1)) - &(&(&g(0, 2) * &g(1, 1)) * &g(2, 0)));
        let leibniz = &(&leibniz - &(&(&g(0, 0) * &g(1, 2)) * &g(2, 1))) - &(&(&g(0, 1) * &g(1, 0)) * &g(2, 2));
        assert_eq!(a.det().unwrap(), leibniz);
    }

    #[test]
    fn minor_size_out_of_range() {
        let a = m(&[&["x", "y"]]);
        assert!(a.minors(2).is_err());
        assert_eq!(a.minors(0).unwrap().len(), 1);
    }

    #[test]
    fn block_and_ops() {
        let a = m(&[&["x"]]);
        let b = m(&[&["y"]]);
        let blk = PolyMatrix::block(&a, &b, &(-&b), &(-&a)).unwrap();
        assert_eq!(blk, m(&[&["x", "y"], &["-y", "-x"]]));
        let mut c = blk.clone();
        c.apply_op(&ElementaryOp::SwapRows(0, 1));
        c.apply_op(&ElementaryOp::SwapCols(0, 1));
        assert_eq!(c, m(&[&["-x", "-y"], &["y", "x"]]));
    }
}


use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::field::Coeff;
use crate::poly::ring::{Monomial, PolyRing};

/// A polynomial with terms sorted strictly descending in the ring's order
/// and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

/// Right-hand side of a substitution.
#[derive(Clone, Debug)]
pub enum Value {
    Scalar(Coeff),
    Poly(Poly),
}

impl From<Coeff> for Value {
    fn from(c: Coeff) -> Self {
        Value::Scalar(c)
    }
}

impl From<Poly> for Value {
    fn from(p: Poly) -> Self {
        Value::Poly(p)
    }
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.0.len(), ring.nvars());
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let i = ring.require_var(name)?;
        Ok(Self::var_pow(ring, i, 1))
    }

    pub fn var_pow(ring: &Arc<PolyRing>, index: usize, e: u32) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, e), ring.field().one())
    }

    /// Builds a canonical polynomial from arbitrary terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(old) => *old = &*old + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, acc: HashMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the monomial 1.
    pub fn constant_coeff(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ring.field().zero(),
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(n, _)| n == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[var]).max()
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(old) => *old = &*old + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ring, acc)
    }

    /// Multiplication by a single term; monomial multiplication preserves the
    /// order so no re-sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, d)| (n.mul(m), d * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = self.ring.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(&m.0) {
                if *e > 0 {
                    t = &t * &x.pow(*e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Replaces `var` by `value` and drops `var` from the ring. A polynomial
    /// value must live in the ring without `var`.
    pub fn substitute(&self, var: &str, value: &Value) -> Result<Poly> {
        let idx = self.ring.require_var(var)?;
        let target = self.ring.without_var(var)?;
        let value = match value {
            Value::Scalar(c) => {
                if !target.field().contains(c) {
                    return Err(Error::RingMismatch);
                }
                Poly::constant(&target, c.clone())
            }
            Value::Poly(p) => {
                if p.ring != target {
                    return Err(Error::RingMismatch);
                }
                p.clone()
            }
        };
        let mut powers: Vec<Poly> = vec![Poly::one(&target)];
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * &value;
                powers.push(next);
            }
            let mut rest = m.0.clone();
            rest.remove(idx);
            let rest = Monomial(rest);
            for (n, d) in powers[e].mul_term(&rest, c).terms {
                match acc.get_mut(&n) {
                    Some(old) => *old = &*old + &d,
                    None => {
                        acc.insert(n, d);
                    }
                }
            }
        }
        Ok(Self::from_map(&target, acc))
    }

    /// Substitution that keeps the ring: `value` lives in the same ring.
    pub fn substitute_keep(&self, var: &str, value: &Poly) -> Result<Poly> {
        self.check_ring(value)?;
        let idx = self.ring.require_var(var)?;
        let mut powers: Vec<Poly> = vec![Poly::one(&self.ring)];
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[idx] = 0;
            out = &out + &powers[e].mul_term(&rest, c);
        }
        Ok(out)
    }

    /// Maps the polynomial into `target` by variable name. Fails when a
    /// variable that occurs is missing from `target`.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Poly> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        if self.ring.field() != target.field() {
            return Err(Error::RingMismatch);
        }
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    match map[i] {
                        Some(j) => e[j] = x,
                        None => return Err(Error::UnknownVariable(self.ring.vars()[i].clone())),
                    }
                }
            }
            terms.push((Monomial(e), c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Same variables and field, possibly a different order or field
    /// embedding (rationals into Gaussian rationals).
    pub fn reinterpret(&self, target: &Arc<PolyRing>) -> Result<Poly> {
        if self.ring.vars() != target.vars() {
            return self.embed(target);
        }
        if !self.terms.iter().all(|(_, c)| target.field().contains(c)) {
            return Err(Error::RingMismatch);
        }
        Ok(Self::from_terms(target, self.terms.clone()))
    }

    /// Coefficients as a polynomial in `var`: entry k multiplies var^k.
    /// The coefficients live in the ring without `var`.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<Poly>> {
        let idx = self.ring.require_var(var)?;
        let target = self.ring.without_var(var)?;
        let deg = self.degree_in(idx).unwrap_or(0) as usize;
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let e = rest.remove(idx) as usize;
            parts[e].push((Monomial(rest), c.clone()));
        }
        Ok(parts
            .into_iter()
            .map(|t| Self::from_terms(&target, t))
            .collect())
    }

    /// Multivariate division: `self = sum q_i d_i + r` with no term of `r`
    /// divisible by a leading monomial of a divisor.
    pub fn divide(&self, divisors: &[Poly]) -> Result<(Vec<Poly>, Poly)> {
        for d in divisors {
            self.check_ring(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
        }
        let ring = &self.ring;
        let mut quotients = vec![Vec::new(); divisors.len()];
        let mut remainder = Vec::new();
        let mut p = self.clone();
        let lead_inv: Vec<Coeff> = divisors
            .iter()
            .map(|d| d.lc().unwrap().inv().unwrap())
            .collect();
        while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let hit = divisors
                .iter()
                .position(|d| d.lm().unwrap().divides(&m));
            match hit {
                Some(i) => {
                    let qm = m.div(divisors[i].lm().unwrap());
                    let qc = &c * &lead_inv[i];
                    p = &p - &divisors[i].mul_term(&qm, &qc);
                    quotients[i].push((qm, qc));
                }
                None => {
                    remainder.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        Ok((
            quotients
                .into_iter()
                .map(|t| Poly::from_terms(ring, t))
                .collect(),
            Poly {
                ring: ring.clone(),
                terms: remainder,
            },
        ))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

//! Ideals and submodules of free modules over polynomial rings and
//! hypersurface quotients, backed by Gröbner bases.
//!
//! Quotient computations are lifted to the polynomial ring by adjoining the
//! defining polynomial (or its multiples of the basis vectors).

pub(crate) mod gb;
mod module;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{MonomialOrder, Poly, PolyRing, Ring};

pub use gb::DEFAULT_PAIR_BUDGET;
pub use module::{kernel_of_map, module_gb, submodule_contains, submodule_equal, submodule_membership, FreeModuleVector, Submodule};

use gb::Basis;

/// Outcome of a membership query. On success `cofactors[i]` multiplies the
/// i-th generator; the identity holds in the ring of the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub cofactors: Option<Vec<Poly>>,
}

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb_cache: Option<Arc<Basis>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

impl Ideal {
    /// Generators are normal-formed and zeros dropped.
    pub fn new(ring: impl Into<Ring>, gens: Vec<Poly>) -> Result<Self> {
        let ring = ring.into();
        let mut out: Vec<Poly> = Vec::new();
        for g in gens {
            if g.ring() != ring.base() {
                return Err(Error::RingMismatch);
            }
            let g = ring.reduce(&g);
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Ideal {
            ring,
            gens: out,
            gb_cache: None,
        })
    }

    pub fn zero(ring: impl Into<Ring>) -> Self {
        Ideal {
            ring: ring.into(),
            gens: Vec::new(),
            gb_cache: None,
        }
    }

    pub fn unit(ring: impl Into<Ring>) -> Self {
        let ring = ring.into();
        let one = Poly::one(ring.base());
        Ideal {
            ring,
            gens: vec![one],
            gb_cache: None,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        self.ring.base()
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn has_gb(&self) -> bool {
        self.gb_cache.is_some()
    }

    /// Generators followed by the modulus, as passed to Buchberger.
    fn lifted(&self) -> Vec<Vec<Poly>> {
        let mut v: Vec<Vec<Poly>> = self.gens.iter().map(|g| vec![g.clone()]).collect();
        if let Some(f) = self.ring.modulus() {
            v.push(vec![f.clone()]);
        }
        v
    }

    fn basis(&self, budget: usize) -> Result<Arc<Basis>> {
        match &self.gb_cache {
            Some(b) => Ok(b.clone()),
            None => Ok(Arc::new(gb::groebner(self.base(), 1, &self.lifted(), true, budget)?)),
        }
    }

    /// The reduced Gröbner basis of the lifted ideal (including the
    /// modulus for quotient rings).
    pub fn groebner_basis(&self) -> Result<Vec<Poly>> {
        let b = self.basis(DEFAULT_PAIR_BUDGET)?;
        Ok(b.vectors(self.base(), 1).into_iter().map(|mut v| v.remove(0)).collect())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(Poly::is_constant))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Normal form with respect to the Gröbner basis.
    pub fn reduce(&self, p: &Poly) -> Result<Poly> {
        let b = self.basis(DEFAULT_PAIR_BUDGET)?;
        let (r, _) = b.reduce(std::slice::from_ref(p), &self.base().field().one());
        Ok(r.to_polys(self.base(), 1).remove(0))
    }

    /// Sum of two ideals over the same ring.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.ring.clone(), gens)
    }

    /// Generators of the intersection with the subring on `keep`, computed
    /// with a lex basis that ranks the other variables first.
    pub fn eliminate(&self, keep: &[&str]) -> Result<Vec<Poly>> {
        let base = self.base();
        for k in keep {
            base.require_var(k)?;
        }
        let mut order: Vec<&str> = base
            .vars()
            .iter()
            .map(String::as_str)
            .filter(|v| !keep.contains(v))
            .collect();
        order.extend(keep.iter().copied());
        let lex = PolyRing::new(&order, MonomialOrder::Lex, base.field().clone())?;
        let gens = self
            .lifted()
            .into_iter()
            .map(|v| v[0].embed(&lex).map(|p| vec![p]))
            .collect::<Result<Vec<_>>>()?;
        let b = gb::groebner(&lex, 1, &gens, false, DEFAULT_PAIR_BUDGET)?;
        let kept: Vec<usize> = keep.iter().map(|k| lex.require_var(k)).collect::<Result<_>>()?;
        b.vectors(&lex, 1)
            .into_iter()
            .map(|mut v| v.remove(0))
            .filter(|p| p.support_vars().iter().all(|i| kept.contains(i)))
            .map(|p| p.embed(base))
            .collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Returns `I` with its Gröbner basis cached.
pub fn buchberger(ideal: &Ideal) -> Result<Ideal> {
    buchberger_with_budget(ideal, DEFAULT_PAIR_BUDGET)
}

pub fn buchberger_with_budget(ideal: &Ideal, budget: usize) -> Result<Ideal> {
    let b = ideal.basis(budget)?;
    Ok(Ideal {
        gb_cache: Some(b),
        ..ideal.clone()
    })
}

pub fn ideal_membership(p: &Poly, ideal: &Ideal) -> Result<Membership> {
    if p.ring() != ideal.base() {
        return Err(Error::RingMismatch);
    }
    let b = ideal.basis(DEFAULT_PAIR_BUDGET)?;
    let ring = ideal.base();
    let (r, cof) = b.reduce(std::slice::from_ref(p), &ring.field().one());
    if !r.is_zero() {
        return Ok(Membership {
            member: false,
            cofactors: None,
        });
    }
    let mut c = cof
        .map(|c| c.to_polys(ring, ideal.lifted().len()))
        .unwrap_or_default();
    c.truncate(ideal.gens.len());
    c.resize(ideal.gens.len(), Poly::zero(ring));
    Ok(Membership {
        member: true,
        cofactors: Some(c.iter().map(|q| ideal.ring.reduce(q)).collect()),
    })
}

/// Whether `big` contains every generator of `small`.
pub fn ideal_contains(big: &Ideal, small: &Ideal) -> Result<bool> {
    if big.ring != small.ring {
        return Err(Error::RingMismatch);
    }
    let big = buchberger(big)?;
    for g in &small.gens {
        if !ideal_membership(g, &big)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    Ok(ideal_contains(a, b)? && ideal_contains(b, a)?)
}

/// Smallest `l <= l_max` with `t^l * J ⊆ I`.
pub fn saturation_bounded_contains(i: &Ideal, j: &Ideal, t: &str, l_max: usize) -> Result<(bool, usize)> {
    if i.ring != j.ring {
        return Err(Error::RingMismatch);
    }
    let base = i.base();
    let tv = base.require_var(t)?;
    let big = buchberger(i)?;
    let mut power = Poly::one(base);
    let tp = Poly::var_pow(base, tv, 1);
    for l in 0..=l_max {
        let mut ok = true;
        for g in &j.gens {
            if !ideal_membership(&(&power * g), &big)?.member {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok((true, l));
        }
        power = &power * &tp;
    }
    Ok((false, l_max))
}

/// Ideal of `j x j` minors in the matrix's polynomial ring.
pub fn minors_ideal(mx: &PolyMatrix, j: usize) -> Result<Ideal> {
    Ideal::new(mx.ring(), mx.minors(j)?)
}

/// `Fitt_i` of the module presented by `p` (generators as rows, relations
/// as columns) over `ring`.
pub fn fitting_ideal(p: &PolyMatrix, i: usize, ring: &Ring) -> Result<Ideal> {
    if p.ring() != ring.base() {
        return Err(Error::RingMismatch);
    }
    let n = p.rows();
    if i >= n {
        return Ok(Ideal::unit(ring.clone()));
    }
    let size = n - i;
    if size > p.cols() {
        return Ok(Ideal::zero(ring.clone()));
    }
    Ideal::new(ring.clone(), p.minors(size)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, QuotientRing};

    fn ring() -> Arc<PolyRing> {
        PolyRing::rational(&["x", "y", "t", "z"])
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_poly(g, r).unwrap()).collect()).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Poly {
        parse_poly(s, r).unwrap()
    }

    fn reconstruct(ideal: &Ideal, cof: &[Poly]) -> Poly {
        let s = cof
            .iter()
            .zip(ideal.gens())
            .fold(Poly::zero(ideal.base()), |acc, (c, g)| &acc + &(c * g));
        ideal.ring().reduce(&s)
    }

    #[test]
    fn principal_basis() {
        let r = ring();
        assert_eq!(ideal(&r, &["x^2"]).groebner_basis().unwrap(), vec![p(&r, "x^2")]);
    }

    #[test]
    fn power_membership() {
        let r = ring();
        for a in 1..5u32 {
            for b in 1..5u32 {
                let i = ideal(&r, &[&format!("y^{a}")]);
                let m = ideal_membership(&p(&r, &format!("y^{b}")), &i).unwrap();
                assert_eq!(m.member, b >= a);
            }
        }
    }

    #[test]
    fn certificate_for_fourth_power() {
        let r = ring();
        let i = ideal(&r, &["x^2 - y", "y^2"]);
        let target = p(&r, "x^4");
        let m = ideal_membership(&target, &i).unwrap();
        assert!(m.member);
        assert_eq!(reconstruct(&i, m.cofactors.as_ref().unwrap()), target);
        // explicit cofactor identity
        assert_eq!(&(&p(&r, "x^2 - y") * &p(&r, "x^2 + y")) + &p(&r, "y^2"), target);
    }

    #[test]
    fn membership_examples() {
        let r = ring();
        assert!(ideal_membership(&p(&r, "y^3"), &ideal(&r, &["y"])).unwrap().member);
        assert!(!ideal_membership(&p(&r, "y"), &ideal(&r, &["y^3"])).unwrap().member);
        let i = ideal(&r, &["t*y^2", "y^3", "t^2*y"]);
        let m = ideal_membership(&p(&r, "t^2*y"), &i).unwrap();
        assert!(m.member);
        assert_eq!(reconstruct(&i, m.cofactors.as_ref().unwrap()), p(&r, "t^2*y"));
    }

    #[test]
    fn containment_examples() {
        let r = ring();
        assert!(ideal_contains(&ideal(&r, &["y"]), &ideal(&r, &["y^3"])).unwrap());
        assert!(!ideal_contains(&ideal(&r, &["y^3"]), &ideal(&r, &["y"])).unwrap());
        for a in 1..4 {
            for b in a..5 {
                let big = ideal(&r, &["y", &format!("z^{a}")]);
                let small = ideal(&r, &["y", &format!("z^{b}")]);
                assert!(ideal_contains(&big, &small).unwrap());
            }
        }
    }

    #[test]
    fn witness_minor_ideals() {
        let r = ring();
        let xi = PolyMatrix::parse(&r, &[&["t*y^2", "y^3"], &["-t^2*y", "-t*y^2"]]).unwrap();
        let i1 = minors_ideal(&xi, 1).unwrap();
        assert!(ideal_equal(&i1, &ideal(&r, &["t*y^2", "y^3", "t^2*y"])).unwrap());
        assert!(minors_ideal(&xi, 2).unwrap().is_zero());
        let m = PolyMatrix::parse(&r, &[&["0", "y^4"], &["0", "0"]]).unwrap();
        assert!(ideal_equal(&minors_ideal(&m, 1).unwrap(), &ideal(&r, &["y^4"])).unwrap());
        assert!(minors_ideal(&m, 3).is_err());
    }

    #[test]
    fn bounded_saturation() {
        let r = ring();
        let i1 = ideal(&r, &["t*y^2", "y^3", "t^2*y"]);
        let y = ideal(&r, &["y"]);
        assert_eq!(saturation_bounded_contains(&i1, &y, "t", 8).unwrap(), (true, 2));
        assert_eq!(saturation_bounded_contains(&y, &i1, "t", 8).unwrap(), (true, 0));
        let (found, _) = saturation_bounded_contains(&ideal(&r, &["y^2"]), &y, "t", 8).unwrap();
        assert!(!found);
    }

    #[test]
    fn free_module_fitting() {
        let r = PolyRing::rational(&["x", "y"]);
        let q: Ring = QuotientRing::new(&r, p(&r, "x^2"), Some("x")).unwrap().into();
        let empty = PolyMatrix::zeros(&r, 1, 0);
        assert!(fitting_ideal(&empty, 0, &q).unwrap().is_zero());
        assert!(fitting_ideal(&empty, 1, &q).unwrap().is_unit().unwrap());
    }

    #[test]
    fn quotient_ideal_drops_multiples_of_f() {
        let r = PolyRing::rational(&["x", "y"]);
        let q: Ring = QuotientRing::new(&r, p(&r, "x^2"), Some("x")).unwrap().into();
        let i = Ideal::new(q, vec![p(&r, "x^2*y"), p(&r, "x*y")]).unwrap();
        assert_eq!(i.gens().len(), 1);
        assert!(ideal_membership(&p(&r, "x*y^2 + x^3"), &i).unwrap().member);
        assert!(!ideal_membership(&p(&r, "x"), &i).unwrap().member);
    }

    #[test]
    fn elimination_recovers_univariate_part() {
        let r = PolyRing::rational(&["y", "z"]);
        let i = ideal(&r, &["y*z^3", "y^2"]);
        let i2 = Ideal::new(&r, vec![p(&r, "y - z"), p(&r, "y*z^3")]).unwrap();
        assert!(i.eliminate(&["z"]).unwrap().is_empty());
        assert_eq!(i2.eliminate(&["z"]).unwrap(), vec![p(&r, "z^4")]);
    }
}

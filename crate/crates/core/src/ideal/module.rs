use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::gb::{self, Basis, DEFAULT_PAIR_BUDGET};
use crate::ideal::Membership;
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, PolyRing, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModuleVector {
    entries: Vec<Poly>,
}

impl FreeModuleVector {
    pub fn new(entries: Vec<Poly>) -> Result<Self> {
        let ring = entries
            .first()
            .ok_or_else(|| Error::SizeMismatch("free module vectors have positive rank".into()))?
            .ring()
            .clone();
        if entries.iter().any(|p| *p.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(FreeModuleVector { entries })
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        FreeModuleVector {
            entries: vec![Poly::zero(ring); rank],
        }
    }

    pub fn basis_vector(ring: &Arc<PolyRing>, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.entries[i] = Poly::one(ring);
        v
    }

    pub fn ambient_rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Poly> {
        self.entries
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.entries[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn reduce(&self, ring: &Ring) -> Self {
        FreeModuleVector {
            entries: self.entries.iter().map(|p| ring.reduce(p)).collect(),
        }
    }

    pub fn scale(&self, p: &Poly) -> Self {
        FreeModuleVector {
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ambient_rank() != other.ambient_rank() {
            return Err(Error::SizeMismatch("vector ranks differ".into()));
        }
        Ok(FreeModuleVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.checked_add(b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Poly::one(self.ring())))
    }
}

impl fmt::Display for FreeModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.entries.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", e.join(", "))
    }
}

/// Submodule of the free module of rank `ambient_rank` over `ring`.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Ring,
    ambient_rank: usize,
    gens: Vec<FreeModuleVector>,
    gb_cache: Option<Arc<Basis>>,
}

impl Submodule {
    /// Generators are normal-formed and zero vectors dropped.
    pub fn new(ring: impl Into<Ring>, ambient_rank: usize, gens: Vec<FreeModuleVector>) -> Result<Self> {
        let ring = ring.into();
        if ambient_rank == 0 {
            return Err(Error::SizeMismatch("ambient rank must be positive".into()));
        }
        let mut out: Vec<FreeModuleVector> = Vec::new();
        for g in gens {
            if g.ambient_rank() != ambient_rank {
                return Err(Error::SizeMismatch(format!(
                    "generator of rank {} in ambient rank {ambient_rank}",
                    g.ambient_rank()
                )));
            }
            if g.ring() != ring.base() {
                return Err(Error::RingMismatch);
            }
            let g = g.reduce(&ring);
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Submodule {
            ring,
            ambient_rank,
            gens: out,
            gb_cache: None,
        })
    }

    /// Column space of `mx`.
    pub fn image(ring: impl Into<Ring>, mx: &PolyMatrix) -> Result<Self> {
        let gens = mx
            .columns()
            .into_iter()
            .map(FreeModuleVector::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, mx.rows(), gens)
    }

    pub fn zero(ring: impl Into<Ring>, ambient_rank: usize) -> Result<Self> {
        Self::new(ring, ambient_rank, Vec::new())
    }

    pub fn free(ring: impl Into<Ring>, ambient_rank: usize) -> Result<Self> {
        let ring = ring.into();
        let gens = (0..ambient_rank)
            .map(|i| FreeModuleVector::basis_vector(ring.base(), ambient_rank, i))
            .collect();
        Self::new(ring, ambient_rank, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        self.ring.base()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn gens(&self) -> &[FreeModuleVector] {
        &self.gens
    }

    pub fn has_gb(&self) -> bool {
        self.gb_cache.is_some()
    }

    /// Generators as the columns of a matrix.
    pub fn matrix(&self) -> PolyMatrix {
        let cols: Vec<Vec<Poly>> = self.gens.iter().map(|g| g.entries.clone()).collect();
        PolyMatrix::from_columns(self.base(), self.ambient_rank, &cols).expect("consistent generators")
    }

    fn lifted(&self) -> Vec<Vec<Poly>> {
        let mut v: Vec<Vec<Poly>> = self.gens.iter().map(|g| g.entries.clone()).collect();
        if let Some(f) = self.ring.modulus() {
            for i in 0..self.ambient_rank {
                let mut e = vec![Poly::zero(self.base()); self.ambient_rank];
                e[i] = f.clone();
                v.push(e);
            }
        }
        v
    }

    fn basis(&self) -> Result<Arc<Basis>> {
        match &self.gb_cache {
            Some(b) => Ok(b.clone()),
            None => Ok(Arc::new(gb::groebner(
                self.base(),
                self.ambient_rank,
                &self.lifted(),
                true,
                DEFAULT_PAIR_BUDGET,
            )?)),
        }
    }

    /// Reduced Gröbner basis of the lifted submodule.
    pub fn groebner_basis(&self) -> Result<Vec<FreeModuleVector>> {
        let b = self.basis()?;
        b.vectors(self.base(), self.ambient_rank)
            .into_iter()
            .map(FreeModuleVector::new)
            .collect()
    }

    /// Normal form of `v` modulo the submodule.
    pub fn reduce(&self, v: &FreeModuleVector) -> Result<FreeModuleVector> {
        let b = self.basis()?;
        let (r, _) = b.reduce(v.entries(), &self.base().field().one());
        FreeModuleVector::new(r.to_polys(self.base(), self.ambient_rank))
    }

    /// Sum of submodules of the same free module.
    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        if self.ring != other.ring || self.ambient_rank != other.ambient_rank {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Submodule::new(self.ring.clone(), self.ambient_rank, gens)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.ambient_rank == other.ambient_rank && self.gens == other.gens
    }
}

/// Returns `s` with its Gröbner basis cached.
pub fn module_gb(s: &Submodule) -> Result<Submodule> {
    let b = s.basis()?;
    Ok(Submodule {
        gb_cache: Some(b),
        ..s.clone()
    })
}

pub fn submodule_membership(v: &FreeModuleVector, s: &Submodule) -> Result<Membership> {
    if v.ambient_rank() != s.ambient_rank {
        return Err(Error::SizeMismatch("vector rank differs from ambient rank".into()));
    }
    if v.ring() != s.base() {
        return Err(Error::RingMismatch);
    }
    let b = s.basis()?;
    let ring = s.base();
    let (r, cof) = b.reduce(v.entries(), &ring.field().one());
    if !r.is_zero() {
        return Ok(Membership {
            member: false,
            cofactors: None,
        });
    }
    let mut c = cof.map(|c| c.to_polys(ring, s.lifted().len())).unwrap_or_default();
    c.truncate(s.gens.len());
    c.resize(s.gens.len(), Poly::zero(ring));
    Ok(Membership {
        member: true,
        cofactors: Some(c.iter().map(|q| s.ring.reduce(q)).collect()),
    })
}

/// Whether `big` contains every generator of `small`.
pub fn submodule_contains(big: &Submodule, small: &Submodule) -> Result<bool> {
    if big.ring != small.ring || big.ambient_rank != small.ambient_rank {
        return Err(Error::RingMismatch);
    }
    let big = module_gb(big)?;
    for g in &small.gens {
        if !submodule_membership(g, &big)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn submodule_equal(a: &Submodule, b: &Submodule) -> Result<bool> {
    Ok(submodule_contains(a, b)? && submodule_contains(b, a)?)
}

/// Kernel of `mx: R^cols -> R^rows` over `ring`, by elimination on the
/// graph of the map with a position-over-term order.
pub fn kernel_of_map(mx: &PolyMatrix, ring: &Ring) -> Result<Submodule> {
    if mx.ring() != ring.base() {
        return Err(Error::RingMismatch);
    }
    let base = ring.base();
    let (r, m) = (mx.rows(), mx.cols());
    if m == 0 {
        return Err(Error::SizeMismatch("map with empty domain".into()));
    }
    let rank = r + m;
    let mut gens: Vec<Vec<Poly>> = Vec::with_capacity(m + r);
    for j in 0..m {
        let mut v: Vec<Poly> = (0..r).map(|i| ring.reduce(mx.get(i, j))).collect();
        v.extend((0..m).map(|k| if k == j { Poly::one(base) } else { Poly::zero(base) }));
        gens.push(v);
    }
    if let Some(f) = ring.modulus() {
        for i in 0..r {
            let mut v = vec![Poly::zero(base); rank];
            v[i] = f.clone();
            gens.push(v);
        }
    }
    let b = gb::groebner(base, rank, &gens, false, DEFAULT_PAIR_BUDGET)?;
    let kernel: Vec<FreeModuleVector> = b
        .elems
        .iter()
        .filter(|e| e.v.lead().expect("nonzero").comp >= r)
        .map(|e| FreeModuleVector::new(e.v.to_polys(base, rank).split_off(r)))
        .collect::<Result<_>>()?;
    Submodule::new(ring.clone(), m, kernel)
}

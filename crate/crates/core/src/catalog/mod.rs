//! The (A_∞) classification: catalog classes with their matrices, ideal
//! generators and presentations, the degeneration oracle, the explicit
//! one-dimensional witness family, iterated Knörrer modules, and the
//! degeneration poset.

mod class;
mod knoerrer;
mod poset;
mod witness;

use std::sync::Arc;

pub use class::{CMClass, ClassKind};
pub use knoerrer::{
    iterated_knoerrer_module, iterated_knoerrer_module_over, iterated_knoerrer_witness, knoerrer_mf_block,
    knoerrer_vars, prop56_image, prop56_image_with, Prop56Image, REGULAR_PARAMETER_NOTE,
};
pub use poset::{build_poset, build_poset_with, transitive_closure, transitive_reduction, PosetEdge, PosetGraph, Provenance};
pub use witness::{thm31_witness, thm31_witness_in};

use crate::error::{Error, Result};
use crate::ideal::{kernel_of_map, FreeModuleVector, Submodule};
use crate::matfac::{Hypersurface, MatrixRepresentation};
use crate::matrix::PolyMatrix;
use crate::poly::{CoeffField, Poly, PolyRing};
use crate::report::Verdict;

/// `k[x,y]/(x^2)` over `S = k[y]`.
pub fn dim1_hypersurface(field: &CoeffField) -> Result<Hypersurface> {
    let s = PolyRing::new(&["y"], Default::default(), field.clone())?;
    Hypersurface::from_parts(&s, "x", &Poly::zero(&s), &Poly::zero(&s))
}

/// `k[x,y,z]/(x^2 - xy)` over `S = k[y,z]`.
pub fn dim2_hypersurface(field: &CoeffField) -> Result<Hypersurface> {
    let s = PolyRing::new(&["y", "z"], Default::default(), field.clone())?;
    let y = Poly::var(&s, "y")?;
    Hypersurface::from_parts(&s, "x", &-&y, &Poly::zero(&s))
}

/// The catalog hypersurface of `dim` over the rationals.
pub fn catalog_hypersurface(dim: u8) -> Result<Hypersurface> {
    match dim {
        1 => dim1_hypersurface(&CoeffField::Rationals),
        2 => dim2_hypersurface(&CoeffField::Rationals),
        _ => Err(Error::Unsupported(format!("no catalog in dimension {dim}"))),
    }
}

fn require_family(c: &CMClass, hs: &Hypersurface) -> Result<()> {
    let s = hs.s();
    let ok = match c.dim {
        1 => s.vars() == ["y"] && hs.b().is_zero() && hs.c().is_zero(),
        2 => {
            s.vars() == ["y", "z"] && hs.c().is_zero() && Poly::var(s, "y").map(|y| *hs.b() == -&y).unwrap_or(false)
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{} is not a class over the given hypersurface",
            c.label()
        )))
    }
}

fn single(s: &Arc<PolyRing>, rows: &[&[Poly]]) -> Result<PolyMatrix> {
    PolyMatrix::from_rows(s, rows.iter().map(|r| r.to_vec()).collect())
}

/// The catalog matrix of `c` over `hs`, which must be the catalog
/// hypersurface of `c.dim` over some field.
pub fn catalog_matrix_in(c: &CMClass, hs: &Hypersurface) -> Result<MatrixRepresentation> {
    require_family(c, hs)?;
    let s = hs.s();
    let zero = Poly::zero(s);
    let one = Poly::one(s);
    let y = Poly::var(s, "y")?;
    let mu = match (c.dim, c.kind) {
        (1, ClassKind::Free(r)) => {
            let b = single(s, &[&[zero.clone(), one], &[zero.clone(), zero]])?;
            PolyMatrix::block_diag(&vec![&b; r as usize])?
        }
        (1, ClassKind::IdealA(n)) => single(s, &[&[zero.clone(), y.pow(n)], &[zero.clone(), zero]])?,
        (1, ClassKind::RmodX) => single(s, &[&[zero]])?,
        (2, ClassKind::Free(r)) => {
            let b = single(s, &[&[zero.clone(), one], &[zero, y]])?;
            PolyMatrix::block_diag(&vec![&b; r as usize])?
        }
        (2, ClassKind::IdealA(0)) => single(s, &[&[y]])?,
        (2, ClassKind::IdealB(0)) => single(s, &[&[zero]])?,
        (2, ClassKind::IdealA(n)) => {
            let z = Poly::var(s, "z")?;
            single(s, &[&[y, z.pow(n)], &[zero.clone(), zero]])?
        }
        (2, ClassKind::IdealB(n)) => {
            let z = Poly::var(s, "z")?;
            single(s, &[&[zero.clone(), z.pow(n)], &[zero, y]])?
        }
        _ => return Err(Error::Unsupported(format!("no catalog matrix for {}", c.label()))),
    };
    MatrixRepresentation::new(hs, mu)
}

/// The catalog matrix of `c` over the rationals.
pub fn catalog_matrix(c: &CMClass) -> Result<MatrixRepresentation> {
    catalog_matrix_in(c, &catalog_hypersurface(c.dim)?)
}

/// Generators of `c` as a submodule of `R^r` in `hs`'s polynomial ring:
/// the ideal for ideal classes, the standard basis for free classes, and
/// `(x)` for `R/(x)`.
pub fn catalog_submodule_in(c: &CMClass, hs: &Hypersurface) -> Result<Submodule> {
    require_family(c, hs)?;
    let base = hs.ring().base();
    let x = Poly::var(base, "x")?;
    let y = Poly::var(base, "y")?;
    let one_entry = |gens: Vec<Poly>| -> Result<Submodule> {
        let g = gens
            .into_iter()
            .map(|p| FreeModuleVector::new(vec![p]))
            .collect::<Result<Vec<_>>>()?;
        Submodule::new(hs.as_ring(), 1, g)
    };
    match (c.dim, c.kind) {
        (_, ClassKind::Free(r)) => {
            let r = r as usize;
            let g = (0..r).map(|i| FreeModuleVector::basis_vector(base, r, i)).collect();
            Submodule::new(hs.as_ring(), r, g)
        }
        (1, ClassKind::IdealA(n)) => one_entry(vec![x, y.pow(n)]),
        (1, ClassKind::RmodX) => one_entry(vec![x]),
        (2, ClassKind::IdealA(0)) => one_entry(vec![x]),
        (2, ClassKind::IdealB(0)) => one_entry(vec![&x - &y]),
        (2, ClassKind::IdealA(n)) => one_entry(vec![x, Poly::var(base, "z")?.pow(n)]),
        (2, ClassKind::IdealB(n)) => one_entry(vec![&x - &y, Poly::var(base, "z")?.pow(n)]),
        _ => Err(Error::Unsupported(format!("no generators for {}", c.label()))),
    }
}

pub fn catalog_submodule(c: &CMClass) -> Result<Submodule> {
    catalog_submodule_in(c, &catalog_hypersurface(c.dim)?)
}

/// A presentation of `c` (generators as rows, relations as columns) over
/// the catalog ring, from the syzygies of its stored generators.
pub fn catalog_presentation_in(c: &CMClass, hs: &Hypersurface) -> Result<PolyMatrix> {
    let m = catalog_submodule_in(c, hs)?;
    let g = m.matrix();
    let base = hs.ring().base();
    let syz = kernel_of_map(&g, &hs.as_ring())?;
    if syz.is_zero() {
        return Ok(PolyMatrix::zeros(base, g.cols(), 0));
    }
    Ok(syz.matrix())
}

pub fn catalog_presentation(c: &CMClass) -> Result<PolyMatrix> {
    catalog_presentation_in(c, &catalog_hypersurface(c.dim)?)
}

/// Catalog classes of `dim` with exponents up to `n_max`: `R`, `R/(x)` and
/// `(x, y^n)` in dimension one; `R`, `(x)`, `(x-y)`, `(x, z^n)` and
/// `(x-y, z^n)` in dimension two.
pub fn catalog_classes(dim: u8, n_max: u32) -> Result<Vec<CMClass>> {
    match dim {
        1 => {
            let mut v = vec![CMClass::free(1), CMClass::rmodx()];
            v.extend((1..=n_max).map(|n| CMClass::ideal_a(1, n)));
            Ok(v)
        }
        2 => {
            let mut v = vec![CMClass::free(2), CMClass::ideal_a(2, 0), CMClass::ideal_b(0)];
            v.extend((1..=n_max).map(|n| CMClass::ideal_a(2, n)));
            v.extend((1..=n_max).map(CMClass::ideal_b));
            Ok(v)
        }
        _ => Err(Error::Unsupported(format!("no catalog in dimension {dim}"))),
    }
}

/// Closed-form degeneration oracle.
///
/// Dimension one: on the chain `R = (x, y^0), (x, y), (x, y^2), ...` the
/// class at `a` degenerates to the class at `b` exactly when `a <= b` and
/// `a ≡ b mod 2`. Dimension two: ideal classes with positive exponents
/// never degenerate to a larger exponent in either family. Identical
/// classes give yes; everything else is unknown.
pub fn oracle_degenerates(a: &CMClass, b: &CMClass) -> Result<Verdict> {
    if a.dim != b.dim {
        return Err(Error::Precondition(format!(
            "classes live in dimensions {} and {}",
            a.dim, b.dim
        )));
    }
    if a == b {
        return Ok(Verdict::Yes);
    }
    match a.dim {
        1 => match (a.chain_index(), b.chain_index()) {
            (Some(i), Some(j)) => Ok(if i <= j && i % 2 == j % 2 { Verdict::Yes } else { Verdict::No }),
            _ => Ok(Verdict::Unknown),
        },
        _ => match (ideal_exponent(a), ideal_exponent(b)) {
            (Some(i), Some(j)) if i >= 1 && i < j => Ok(Verdict::No),
            _ => Ok(Verdict::Unknown),
        },
    }
}

fn ideal_exponent(c: &CMClass) -> Option<u32> {
    match c.kind {
        ClassKind::IdealA(n) | ClassKind::IdealB(n) => Some(n),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::submodule_equal;
    use crate::matfac::{recognize_dim1, recognize_dim2, validate_mr};

    #[test]
    fn literal_matrices() {
        let m = catalog_matrix(&CMClass::free(1)).unwrap();
        assert_eq!(m.mu().to_string(), "[0, 1; 0, 0]");
        let m = catalog_matrix(&CMClass::ideal_a(1, 3)).unwrap();
        assert_eq!(m.mu().to_string(), "[0, y^3; 0, 0]");
        let m = catalog_matrix(&CMClass::ideal_b(2)).unwrap();
        assert_eq!(m.mu().to_string(), "[0, z^2; 0, y]");
        let m = catalog_matrix(&CMClass::ideal_a(2, 2)).unwrap();
        assert_eq!(m.mu().to_string(), "[y, z^2; 0, 0]");
    }

    #[test]
    fn every_class_validates_and_is_recognized() {
        for c in catalog_classes(1, 6).unwrap() {
            let m = catalog_matrix(&c).unwrap();
            assert!(validate_mr(m.mu(), m.hypersurface()).unwrap().valid);
            assert_eq!(recognize_dim1(m.mu()).unwrap().classes, vec![c]);
        }
        for c in catalog_classes(2, 4).unwrap() {
            let m = catalog_matrix(&c).unwrap();
            assert!(validate_mr(m.mu(), m.hypersurface()).unwrap().valid);
            assert_eq!(recognize_dim2(m.mu()).unwrap(), c);
        }
    }

    #[test]
    fn presentation_kills_generators() {
        for c in catalog_classes(1, 4).unwrap().into_iter().chain(catalog_classes(2, 2).unwrap()) {
            let hs = catalog_hypersurface(c.dim).unwrap();
            let g = catalog_submodule(&c).unwrap().matrix();
            let p = catalog_presentation(&c).unwrap();
            if p.cols() > 0 {
                assert!(g.checked_mul(&p).unwrap().reduce(&hs.as_ring()).is_zero(), "{c}");
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let a = CMClass::from_chain_index;
        assert_eq!(oracle_degenerates(&a(1), &a(3)).unwrap(), Verdict::Yes);
        assert_eq!(oracle_degenerates(&a(1), &a(2)).unwrap(), Verdict::No);
        assert_eq!(oracle_degenerates(&a(0), &a(2)).unwrap(), Verdict::Yes);
        assert_eq!(oracle_degenerates(&a(3), &a(1)).unwrap(), Verdict::No);
        assert_eq!(oracle_degenerates(&CMClass::rmodx(), &a(1)).unwrap(), Verdict::Unknown);
        let (p, q) = (CMClass::ideal_a(2, 1), CMClass::ideal_a(2, 2));
        assert_eq!(oracle_degenerates(&p, &q).unwrap(), Verdict::No);
        assert_eq!(oracle_degenerates(&CMClass::ideal_b(1), &q).unwrap(), Verdict::No);
        assert_eq!(oracle_degenerates(&q, &p).unwrap(), Verdict::Unknown);
        assert_eq!(oracle_degenerates(&p, &p).unwrap(), Verdict::Yes);
        assert!(oracle_degenerates(&p, &a(1)).is_err());
    }

    #[test]
    fn rmodx_is_ideal_x() {
        let hs = catalog_hypersurface(1).unwrap();
        let base = hs.ring().base();
        let x = FreeModuleVector::new(vec![Poly::var(base, "x").unwrap()]).unwrap();
        let ideal = Submodule::new(hs.as_ring(), 1, vec![x]).unwrap();
        assert!(submodule_equal(&catalog_submodule(&CMClass::rmodx()).unwrap(), &ideal).unwrap());
    }
}

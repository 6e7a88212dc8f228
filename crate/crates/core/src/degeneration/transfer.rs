use crate::degeneration::witness::{family, DegenerationWitness, Family};
use crate::error::{Error, Result};
use crate::ideal::{kernel_of_map, module_gb, submodule_membership, FreeModuleVector, Submodule};
use crate::matfac::{double_sharp, zeta_eta, FiberCertificate, MatrixRepresentation};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Value};

/// Whether `var` is a non-zerodivisor on the module with representation
/// `nu`, presented over `R` by `x I - nu`.
pub fn regular_on_representation(mr: &MatrixRepresentation, var: &str) -> Result<bool> {
    let hs = mr.hypersurface();
    let ring = hs.as_ring();
    let base = ring.base();
    let n = mr.size();
    let x = Poly::var(base, hs.x())?;
    let pres = PolyMatrix::scalar(base, n, &x).checked_sub(&mr.mu().embed(base)?)?;
    let v = Poly::var(base, var)?;
    let joint = PolyMatrix::scalar(base, n, &v).hstack(&pres)?;
    let relations = module_gb(&Submodule::image(ring.clone(), &pres)?)?;
    for k in kernel_of_map(&joint, &ring)?.gens() {
        let a = FreeModuleVector::new(k.entries()[..n].to_vec())?.reduce(&ring);
        if !a.is_zero() && !submodule_membership(&a, &relations)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sets the `S` variable `var` to zero in every component of the
/// witness; `var` must be regular on the target.
pub fn quotient_transfer(w: &DegenerationWitness, var: &str) -> Result<DegenerationWitness> {
    let hs = w.hypersurface();
    if var == w.t_var() || var == hs.x() {
        return Err(Error::Precondition(format!("`{var}` is not a variable of S")));
    }
    hs.s().require_var(var)?;
    if !regular_on_representation(w.target(), var)? {
        return Err(Error::Precondition(format!("`{var}` is not regular on the target")));
    }
    let zero = Value::Scalar(hs.s().field().zero());
    let cut = |m: &PolyMatrix| m.substitute(var, &zero);
    let small = hs.specialize(var)?;
    let source = MatrixRepresentation::new(&small, cut(w.source().mu())?)?;
    let target = MatrixRepresentation::new(&small, cut(w.target().mu())?)?;
    let xi = cut(w.xi())?;
    w.map_parts(
        source,
        target,
        xi,
        cut,
        |c| {
            Ok(FiberCertificate {
                left: cut(&c.left)?,
                right: cut(&c.right)?,
                model: cut(&c.model)?,
            })
        },
        format!("{} mod {var}", w.provenance()),
    )
}

/// The witness for the double-sharp blocks, with all certificates lifted
/// as `diag(G, G)`. One-dimensional witnesses get fiber certificates at
/// `samples` first when none are stored.
pub fn lift_witness_doublesharp(w: &DegenerationWitness, u: &str, v: &str, samples: &[i64]) -> Result<DegenerationWitness> {
    let w = if w.fiber_certificates().is_empty() && family(w.hypersurface()) == Some(Family::Dim1) {
        w.clone().attach_fiber_certificates(samples)?
    } else {
        w.clone()
    };
    let source = double_sharp(w.source(), u, v)?;
    let target = double_sharp(w.target(), u, v)?;
    let s2 = source.hypersurface().s().clone();
    let t2 = s2.with_vars(&[w.t_var()])?;
    let n = w.source().size();
    let (zeta, eta_bar) = zeta_eta(&t2, u, v)?;
    let xi = w.xi().embed(&t2)?;
    let z = PolyMatrix::scalar(&t2, n, &zeta);
    let e = PolyMatrix::scalar(&t2, n, &eta_bar);
    let xi2 = PolyMatrix::block(&xi, &z, &(-&e), &(-&xi))?;

    let (zs, es) = zeta_eta(&s2, u, v)?;
    let zs = PolyMatrix::scalar(&s2, n, &zs);
    let es = PolyMatrix::scalar(&s2, n, &es);
    let doubled = |g: &PolyMatrix| {
        let target = if g.ring().var_index(w.t_var()).is_some() { &t2 } else { &s2 };
        let g = g.embed(target)?;
        PolyMatrix::block_diag(&[&g, &g])
    };
    let lift_cert = |c: &FiberCertificate| {
        let model = c.model.embed(&s2)?;
        let model2 = PolyMatrix::block(&model, &zs, &(-&es), &(-&model))?;
        FiberCertificate {
            left: c.left.embed(&s2)?,
            right: c.right.embed(&s2)?,
            model: c.model.clone(),
        }
        .doubled(model2)
    };
    w.map_parts(source, target, xi2, doubled, lift_cert, format!("{} lifted", w.provenance()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::witness::verify_witness;
    use crate::matfac::{sharp, Hypersurface};
    use crate::poly::PolyRing;
    use crate::report::Verdict;

    fn witness() -> DegenerationWitness {
        let s = PolyRing::gaussian(&["y"]);
        let hs = Hypersurface::from_parts(&s, "x", &Poly::zero(&s), &Poly::zero(&s)).unwrap();
        let mr = |rows: &[&[&str]]| MatrixRepresentation::new(&hs, PolyMatrix::parse(&s, rows).unwrap()).unwrap();
        let t = s.with_vars(&["t"]).unwrap();
        let xi = PolyMatrix::parse(&t, &[&["t*y^2", "y^3"], &["-t^2*y", "-t*y^2"]]).unwrap();
        let g = PolyMatrix::parse(&t, &[&["t*y", "1"], &["-t^2", "0"]]).unwrap();
        DegenerationWitness::new(mr(&[&["0", "y"], &["0", "0"]]), mr(&[&["0", "y^3"], &["0", "0"]]), "t", xi, "test")
            .unwrap()
            .with_symbolic_certificate(g)
    }

    #[test]
    fn lift_then_transfer() {
        let w = witness();
        assert_eq!(verify_witness(&w).unwrap().verdict, Verdict::Valid);
        let lifted = lift_witness_doublesharp(&w, "u", "v", &[1, 2, 3]).unwrap();
        let r = verify_witness(&lifted).unwrap();
        assert_eq!(r.verdict, Verdict::Valid, "{r:?}");
        assert_eq!(&lifted.fiber(0).unwrap(), lifted.target().mu());

        let down = quotient_transfer(&lifted, "v").unwrap();
        let (s1, t1) = (sharp(w.source(), "u").unwrap(), sharp(w.target(), "u").unwrap());
        assert_eq!(down.source().mu(), s1.mu());
        assert_eq!(down.target().mu(), t1.mu());
        assert_eq!(down.hypersurface(), s1.hypersurface());
        assert_eq!(verify_witness(&down).unwrap().verdict, Verdict::Valid);

        let base = quotient_transfer(&down, "u").unwrap();
        let mu = w.source().mu();
        assert_eq!(base.source().mu(), &PolyMatrix::block_diag(&[mu, &(-mu)]).unwrap());
        assert_eq!(verify_witness(&base).unwrap().verdict, Verdict::Valid);
    }

    #[test]
    fn rejects_t_and_unknown_variables() {
        let w = witness();
        assert!(quotient_transfer(&w, "t").is_err());
        assert!(quotient_transfer(&w, "w").is_err());
    }
}

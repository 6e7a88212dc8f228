use crate::catalog::{catalog_matrix_in, dim1_hypersurface, CMClass};
use crate::degeneration::{family, DegenerationWitness, Family};
use crate::error::{Error, Result};
use crate::matfac::Hypersurface;
use crate::matrix::PolyMatrix;
use crate::poly::{CoeffField, Poly};

/// The family `xi = (t y^h, y^b; -t^2 y^a, -t y^h)` with `h = (a + b)/2`,
/// from the chain class `a` to the chain class `b`, over `hs`.
///
/// Carries the symbolic certificate `G = (t y^((b-a)/2), 1; -t^2, 0)` with
/// `xi G = G mu` and `det G = t^2`.
pub fn thm31_witness_in(hs: &Hypersurface, a: u32, b: u32) -> Result<DegenerationWitness> {
    if family(hs) != Some(Family::Dim1) {
        return Err(Error::Unsupported("the chain witness needs k[x,y]/(x^2)".into()));
    }
    if a > b || a % 2 != b % 2 {
        return Err(Error::Precondition(format!(
            "no degeneration from chain position {a} to {b}: need a <= b and a ≡ b mod 2"
        )));
    }
    let source = catalog_matrix_in(&CMClass::from_chain_index(a), hs)?;
    let target = catalog_matrix_in(&CMClass::from_chain_index(b), hs)?;
    let tr = hs.s().with_vars(&["t"])?;
    let y = Poly::var(&tr, "y")?;
    let t = Poly::var(&tr, "t")?;
    let h = (a + b) / 2;
    let t2 = &t * &t;
    let tyh = &t * &y.pow(h);
    let xi = PolyMatrix::from_rows(
        &tr,
        vec![vec![tyh.clone(), y.pow(b)], vec![-&(&t2 * &y.pow(a)), -&tyh]],
    )?;
    let g = PolyMatrix::from_rows(
        &tr,
        vec![vec![&t * &y.pow((b - a) / 2), Poly::one(&tr)], vec![-&t2, Poly::zero(&tr)]],
    )?;
    Ok(
        DegenerationWitness::new(source, target, "t", xi, format!("thm31({a},{b})"))?
            .with_symbolic_certificate(g),
    )
}

/// [`thm31_witness_in`] over the rationals.
pub fn thm31_witness(a: u32, b: u32) -> Result<DegenerationWitness> {
    thm31_witness_in(&dim1_hypersurface(&CoeffField::Rationals)?, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::verify_witness;
    use crate::report::Verdict;

    #[test]
    fn one_three_matrix() {
        let w = thm31_witness(1, 3).unwrap();
        assert_eq!(w.xi().to_string(), "[y^2*t, y^3; -y*t^2, -y^2*t]");
        assert!(w.xi().checked_mul(w.xi()).unwrap().is_zero());
        assert_eq!(verify_witness(&w).unwrap().verdict, Verdict::Valid);
    }

    #[test]
    fn free_source_and_identity() {
        let w = thm31_witness(0, 2).unwrap();
        assert_eq!(w.source().mu().to_string(), "[0, 1; 0, 0]");
        assert_eq!(w.fiber(0).unwrap().to_string(), "[0, y^2; 0, 0]");
        assert_eq!(verify_witness(&w).unwrap().verdict, Verdict::Valid);
        let same = thm31_witness(2, 2).unwrap();
        assert_eq!(verify_witness(&same).unwrap().verdict, Verdict::Valid);
    }

    #[test]
    fn oracle_violations_rejected() {
        assert!(thm31_witness(1, 2).is_err());
        assert!(thm31_witness(3, 1).is_err());
    }
}

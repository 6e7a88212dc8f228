use crate::catalog::{CMClass, ClassKind};
use crate::error::{Error, Result};
use crate::ideal::{ideal_equal, kernel_of_map, minors_ideal, Ideal};
use crate::matfac::snf::smith_normal_form;
use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, Poly, Ring};

/// Decomposition of a square-zero matrix over k[y]: `mu * basis = basis *
/// model`, with `det(basis)` a unit at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dim1Recognition {
    pub classes: Vec<CMClass>,
    pub model: PolyMatrix,
    pub basis: PolyMatrix,
}

/// Whether `det(g)` is nonzero at the origin, so `g` is invertible over
/// the local ring.
pub fn det_unit_at_origin(g: &PolyMatrix) -> Result<bool> {
    let d = g.det()?;
    Ok(!d.constant_coeff().is_zero())
}

/// `y^m * w` with `w(0) != 0`.
fn split_y_power(d: &Poly) -> (u32, Poly) {
    let m = d
        .terms()
        .iter()
        .map(|(mono, _)| mono.degree())
        .min()
        .expect("nonzero");
    let terms = d
        .terms()
        .iter()
        .map(|(mono, c)| (Monomial(mono.0.iter().map(|e| e - m).collect()), c.clone()))
        .collect();
    (m, Poly::from_terms(d.ring(), terms))
}

fn block_model(class: &CMClass, ring: &std::sync::Arc<crate::poly::PolyRing>) -> PolyMatrix {
    match class.kind {
        ClassKind::RmodX => PolyMatrix::zeros(ring, 1, 1),
        ClassKind::Free(_) => {
            let mut b = PolyMatrix::zeros(ring, 2, 2);
            b.set(0, 1, Poly::one(ring));
            b
        }
        ClassKind::IdealA(m) | ClassKind::IdealB(m) => {
            let mut b = PolyMatrix::zeros(ring, 2, 2);
            b.set(0, 1, Poly::var_pow(ring, 0, m));
            b
        }
    }
}

/// Decomposes a square-zero matrix over a univariate ring into catalog
/// classes, with an explicit change of basis to the block model.
pub fn recognize_dim1(mu: &PolyMatrix) -> Result<Dim1Recognition> {
    let n = mu.require_square()?;
    let ring = mu.ring().clone();
    if ring.nvars() != 1 {
        return Err(Error::NotUnivariate);
    }
    if !mu.checked_mul(mu)?.is_zero() {
        return Err(Error::InvalidRepresentation("matrix is not square-zero".into()));
    }
    let snf = smith_normal_form(mu)?;
    let r = snf.rank();

    // (class, columns of the basis for that block)
    let mut blocks: Vec<(CMClass, Vec<Vec<Poly>>)> = Vec::new();
    for i in 0..r {
        let (m, w) = split_y_power(snf.d.get(i, i));
        let class = CMClass::from_chain_index(m);
        let p_col: Vec<Poly> = snf.p_inv.column(i).iter().map(|e| e * &w).collect();
        blocks.push((class, vec![p_col, snf.q.column(i)]));
    }
    if n > 2 * r {
        // Coordinates of the image vectors inside the kernel basis.
        let coords = snf.q_inv.checked_mul(&snf.p_inv)?;
        let rows: Vec<usize> = (r..n).collect();
        let cols: Vec<usize> = (0..r).collect();
        let c = coords.submatrix(&rows, &cols);
        let inner = smith_normal_form(&c)?;
        let q_tail = snf.q.submatrix(&(0..n).collect::<Vec<_>>(), &rows);
        for j in 0..n - 2 * r {
            let u = inner.p_inv.column(r + j);
            let k = q_tail.apply(&u)?;
            blocks.push((CMClass::rmodx(), vec![k]));
        }
    }
    blocks.sort_by_key(|a| a.0);

    let mut columns = Vec::with_capacity(n);
    let mut models = Vec::new();
    let mut classes = Vec::new();
    for (class, cols) in blocks {
        columns.extend(cols);
        models.push(block_model(&class, &ring));
        classes.push(class);
    }
    let basis = PolyMatrix::from_columns(&ring, n, &columns)?;
    let model = if models.is_empty() {
        PolyMatrix::zeros(&ring, 0, 0)
    } else {
        PolyMatrix::block_diag(&models.iter().collect::<Vec<_>>())?
    };
    if mu.checked_mul(&basis)? != basis.checked_mul(&model)? || !det_unit_at_origin(&basis)? {
        return Err(Error::Unsupported("recognition certificate did not verify".into()));
    }
    Ok(Dim1Recognition {
        classes,
        model,
        basis,
    })
}

/// Certificate that two matrices are conjugate over the local ring: both
/// are intertwined with a common model by bases invertible at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCertificate {
    pub left: PolyMatrix,
    pub right: PolyMatrix,
    pub model: PolyMatrix,
}

impl FiberCertificate {
    /// Builds a certificate from two recognitions with the same classes.
    pub fn from_recognitions(a: &Dim1Recognition, b: &Dim1Recognition) -> Option<Self> {
        (a.classes == b.classes && a.model == b.model).then(|| FiberCertificate {
            left: a.basis.clone(),
            right: b.basis.clone(),
            model: a.model.clone(),
        })
    }

    /// Checks `a * left = left * model`, `b * right = right * model`, and
    /// that both bases are invertible at the origin.
    pub fn verify(&self, a: &PolyMatrix, b: &PolyMatrix) -> Result<bool> {
        Ok(a.checked_mul(&self.left)? == self.left.checked_mul(&self.model)?
            && b.checked_mul(&self.right)? == self.right.checked_mul(&self.model)?
            && det_unit_at_origin(&self.left)?
            && det_unit_at_origin(&self.right)?)
    }

    /// Blockwise lift `diag(G, G)` for both sides.
    pub fn doubled(&self, model: PolyMatrix) -> Result<Self> {
        Ok(FiberCertificate {
            left: PolyMatrix::block_diag(&[&self.left, &self.left])?,
            right: PolyMatrix::block_diag(&[&self.right, &self.right])?,
            model,
        })
    }
}

/// Class of a representation over k[y,z] for the ring k[x,y,z]/(x^2 - xy),
/// restricted to the catalog families.
pub fn recognize_dim2(mu: &PolyMatrix) -> Result<CMClass> {
    let n = mu.require_square()?;
    let ring = mu.ring().clone();
    let y = Poly::var(&ring, "y")?;
    Poly::var(&ring, "z")?;
    let residual = mu.checked_mul(mu)?.checked_sub(&mu.scale(&y))?;
    if !residual.is_zero() {
        return Err(Error::InvalidRepresentation(format!("mu^2 - y mu = {residual}")));
    }
    let unsupported = || Error::Unsupported(format!("{mu} lies outside the supported families"));
    match n {
        1 => {
            let e = mu.get(0, 0);
            if *e == y {
                Ok(CMClass::ideal_a(2, 0))
            } else if e.is_zero() {
                Ok(CMClass::ideal_b(0))
            } else {
                Err(unsupported())
            }
        }
        2 => {
            if mu.trace()? != y {
                return Err(unsupported());
            }
            let i1 = minors_ideal(mu, 1)?;
            let zpart = i1.eliminate(&["z"])?;
            let [g] = zpart.as_slice() else {
                return Err(unsupported());
            };
            let zi = ring.require_var("z")?;
            let [(mono, c)] = g.terms() else {
                return Err(unsupported());
            };
            if !c.is_one() || mono.0.iter().enumerate().any(|(i, e)| i != zi && *e != 0) {
                return Err(unsupported());
            }
            let nz = mono.0[zi];
            if nz == 0 {
                return Ok(CMClass::free(2));
            }
            let expected = Ideal::new(&ring, vec![y.clone(), g.clone()])?;
            if !ideal_equal(&i1, &expected)? {
                return Err(unsupported());
            }
            let ker = kernel_of_map(mu, &Ring::Poly(ring.clone()))?;
            let content: Vec<Poly> = ker.gens().iter().flat_map(|v| v.entries().to_vec()).collect();
            if Ideal::new(&ring, content)?.is_unit()? {
                Ok(CMClass::ideal_b(nz))
            } else {
                Ok(CMClass::ideal_a(2, nz))
            }
        }
        _ => Err(unsupported()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn y_ring() -> std::sync::Arc<PolyRing> {
        PolyRing::rational(&["y"])
    }

    #[test]
    fn catalog_matrices_recognized() {
        let r = y_ring();
        let a3 = PolyMatrix::parse(&r, &[&["0", "y^3"], &["0", "0"]]).unwrap();
        assert_eq!(recognize_dim1(&a3).unwrap().classes, vec![CMClass::ideal_a(1, 3)]);
        let free = PolyMatrix::parse(&r, &[&["0", "1"], &["0", "0"]]).unwrap();
        assert_eq!(recognize_dim1(&free).unwrap().classes, vec![CMClass::free(1)]);
        let z = PolyMatrix::zeros(&r, 1, 1);
        assert_eq!(recognize_dim1(&z).unwrap().classes, vec![CMClass::rmodx()]);
    }

    #[test]
    fn witness_fiber_is_x_y() {
        let r = y_ring();
        let xi1 = PolyMatrix::parse(&r, &[&["y^2", "y^3"], &["-y", "-y^2"]]).unwrap();
        let rec = recognize_dim1(&xi1).unwrap();
        assert_eq!(rec.classes, vec![CMClass::ideal_a(1, 1)]);
        assert_eq!(&xi1 * &rec.basis, &rec.basis * &rec.model);
    }

    #[test]
    fn mixed_decomposition() {
        let r = y_ring();
        let mu = PolyMatrix::parse(
            &r,
            &[&["0", "y^2", "0", "0"], &["0", "0", "0", "0"], &["0", "0", "0", "0"], &["0", "0", "0", "0"]],
        )
        .unwrap();
        let rec = recognize_dim1(&mu).unwrap();
        assert_eq!(
            rec.classes,
            vec![CMClass::ideal_a(1, 2), CMClass::rmodx(), CMClass::rmodx()]
        );
        assert!(recognize_dim1(&PolyMatrix::parse(&r, &[&["y", "0"], &["0", "0"]]).unwrap()).is_err());
    }

    #[test]
    fn dim2_families() {
        let r = PolyRing::rational(&["y", "z"]);
        let a = PolyMatrix::parse(&r, &[&["y", "z^2"], &["0", "0"]]).unwrap();
        let b = PolyMatrix::parse(&r, &[&["0", "z^2"], &["0", "y"]]).unwrap();
        assert_eq!(recognize_dim2(&a).unwrap(), CMClass::ideal_a(2, 2));
        assert_eq!(recognize_dim2(&b).unwrap(), CMClass::ideal_b(2));
        let free = PolyMatrix::parse(&r, &[&["0", "1"], &["0", "y"]]).unwrap();
        assert_eq!(recognize_dim2(&free).unwrap(), CMClass::free(2));
        assert_eq!(recognize_dim2(&PolyMatrix::parse(&r, &[&["y"]]).unwrap()).unwrap(), CMClass::ideal_a(2, 0));
        assert!(recognize_dim2(&PolyMatrix::parse(&r, &[&["y", "0"], &["0", "0"]]).unwrap()).is_err());
    }
}

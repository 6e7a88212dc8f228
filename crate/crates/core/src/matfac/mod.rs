//! Matrix representations and matrix factorizations over hypersurfaces
//! `R = S[x]/(x^2 + b x + c)`, the Knörrer block constructions, and
//! recognition of the catalog classes.

mod intertwiner;
mod recognize;
mod snf;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{kernel_of_map, submodule_equal, Submodule};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, PolyRing, QuotientRing, Ring, Value};

pub use intertwiner::{solve_intertwiner, INTERTWINER_UNKNOWN_CAP};
pub use recognize::{det_unit_at_origin, recognize_dim1, recognize_dim2, Dim1Recognition, FiberCertificate};
pub use snf::{smith_normal_form, Snf};

/// `R = S[x]/(x^2 + b x + c)` with `b, c` in the Noether normalization `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    ring: QuotientRing,
    s: Arc<PolyRing>,
    b: Poly,
    c: Poly,
}

impl Hypersurface {
    pub fn new(ring: QuotientRing) -> Result<Self> {
        let x = ring
            .presentation_var()
            .ok_or_else(|| Error::InvalidRing("no presentation variable".into()))?
            .to_string();
        let coeffs = ring.f().coefficients_in(&x)?;
        if coeffs.len() != 3 {
            return Err(Error::InvalidRing(format!(
                "defining polynomial has degree {} in `{x}`, expected 2",
                coeffs.len() - 1
            )));
        }
        let s = ring.base().without_var(&x)?;
        let c = coeffs[0].embed(&s)?;
        let b = coeffs[1].embed(&s)?;
        Ok(Hypersurface { ring, s, b, c })
    }

    /// Builds `base[x]/(x^2 + b x + c)` from data over `s`; `x` is placed
    /// first among the variables.
    pub fn from_parts(s: &Arc<PolyRing>, x: &str, b: &Poly, c: &Poly) -> Result<Self> {
        let mut vars = vec![x.to_string()];
        vars.extend(s.vars().iter().cloned());
        let base = PolyRing::new(&vars, s.order(), s.field().clone())?;
        let xv = Poly::var(&base, x)?;
        let f = &(&(&xv * &xv) + &(&b.embed(&base)? * &xv)) + &c.embed(&base)?;
        Self::new(QuotientRing::new(&base, f, Some(x))?)
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn s(&self) -> &Arc<PolyRing> {
        &self.s
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn c(&self) -> &Poly {
        &self.c
    }

    pub fn x(&self) -> &str {
        self.ring.presentation_var().expect("checked on construction")
    }

    /// `mu^2 + b mu + c I`.
    pub fn residual(&self, mu: &PolyMatrix) -> Result<PolyMatrix> {
        let n = mu.require_square()?;
        if mu.ring() != &self.s {
            return Err(Error::RingMismatch);
        }
        let sq = mu.checked_mul(mu)?;
        let lin = mu.scale(&self.b);
        sq.checked_add(&lin)?.checked_add(&PolyMatrix::scalar(&self.s, n, &self.c))
    }

    /// Adjoins variables to `S` and adds `extra` to `c`.
    pub fn extend(&self, vars: &[&str], extra: &Poly) -> Result<Hypersurface> {
        let s = self.s.with_vars(vars)?;
        let b = self.b.embed(&s)?;
        let c = &self.c.embed(&s)? + &extra.embed(&s)?;
        Self::rebuild(self, &s, &b, &c)
    }

    fn rebuild(&self, s: &Arc<PolyRing>, b: &Poly, c: &Poly) -> Result<Hypersurface> {
        let mut vars: Vec<String> = self.ring.base().vars().to_vec();
        for v in s.vars() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.retain(|v| v == self.x() || s.var_index(v).is_some());
        let base = PolyRing::new(&vars, s.order(), s.field().clone())?;
        let xv = Poly::var(&base, self.x())?;
        let f = &(&(&xv * &xv) + &(&b.embed(&base)? * &xv)) + &c.embed(&base)?;
        Self::new(QuotientRing::new(&base, f, Some(self.x()))?)
    }

    /// Sets an `S` variable to zero.
    pub fn specialize(&self, var: &str) -> Result<Hypersurface> {
        let zero = Value::Scalar(self.s.field().zero());
        let s = self.s.without_var(var)?;
        let b = self.b.substitute(var, &zero)?;
        let c = self.c.substitute(var, &zero)?;
        self.rebuild(&s, &b, &c)
    }

    /// The same hypersurface with `S` replaced by `s`, which must contain
    /// the variables of `b` and `c` (used to adjoin a deformation
    /// parameter).
    pub fn over(&self, s: &Arc<PolyRing>) -> Result<Hypersurface> {
        let b = self.b.embed(s)?;
        let c = self.c.embed(s)?;
        self.rebuild(s, &b, &c)
    }

    pub fn as_ring(&self) -> Ring {
        Ring::Quotient(self.ring.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Sharp,
    DoubleSharp,
    KnoerrerImage,
    Lemma41Block,
}

/// Provenance of a block-matrix construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTag {
    pub construction: Construction,
    pub parent: PolyMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRepresentation {
    hs: Hypersurface,
    mu: PolyMatrix,
    tag: Option<BlockTag>,
}

/// Result of [`validate_mr`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrReport {
    pub valid: bool,
    pub residual: PolyMatrix,
    pub construction: Option<BlockTag>,
    pub notes: Vec<String>,
}

pub fn validate_mr(mu: &PolyMatrix, hs: &Hypersurface) -> Result<MrReport> {
    let residual = hs.residual(mu)?;
    let valid = residual.is_zero();
    let mut notes = Vec::new();
    if !valid {
        notes.push(format!("residual {residual}"));
    }
    Ok(MrReport {
        valid,
        residual,
        construction: None,
        notes,
    })
}

impl MatrixRepresentation {
    pub fn new(hs: &Hypersurface, mu: PolyMatrix) -> Result<Self> {
        let report = validate_mr(&mu, hs)?;
        if !report.valid {
            return Err(Error::InvalidRepresentation(format!(
                "nonzero residual {}",
                report.residual
            )));
        }
        Ok(MatrixRepresentation {
            hs: hs.clone(),
            mu,
            tag: None,
        })
    }

    pub fn hypersurface(&self) -> &Hypersurface {
        &self.hs
    }

    pub fn mu(&self) -> &PolyMatrix {
        &self.mu
    }

    pub fn size(&self) -> usize {
        self.mu.rows()
    }

    pub fn tag(&self) -> Option<&BlockTag> {
        self.tag.as_ref()
    }

    pub fn report(&self) -> MrReport {
        let mut r = validate_mr(&self.mu, &self.hs).expect("validated on construction");
        r.construction = self.tag.clone();
        r
    }

    fn tagged(hs: Hypersurface, mu: PolyMatrix, construction: Construction, parent: &PolyMatrix) -> Result<Self> {
        let mut m = Self::new(&hs, mu)?;
        m.tag = Some(BlockTag {
            construction,
            parent: parent.clone(),
        });
        Ok(m)
    }
}

/// The syzygy: `-mu - b I`, which is `-mu` when `b = 0`.
pub fn syzygy_mr(mr: &MatrixRepresentation) -> Result<MatrixRepresentation> {
    let n = mr.size();
    let neg = -mr.mu();
    let mu = neg.checked_sub(&PolyMatrix::scalar(mr.hs.s(), n, mr.hs.b()))?;
    MatrixRepresentation::new(&mr.hs, mu)
}

fn require_b_zero(hs: &Hypersurface) -> Result<()> {
    if hs.b().is_zero() {
        Ok(())
    } else {
        Err(Error::Precondition(
            "Knörrer blocks need a defining polynomial of the form x^2 + f".into(),
        ))
    }
}

/// `(u + i v, u - i v)` in `ring`.
pub fn zeta_eta(ring: &Arc<PolyRing>, u: &str, v: &str) -> Result<(Poly, Poly)> {
    let i = ring.field().sqrt_minus_one().ok_or(Error::NoSqrtMinusOne)?;
    let uu = Poly::var(ring, u)?;
    let vv = Poly::var(ring, v)?;
    let iv = vv.scale(&i);
    Ok((&uu + &iv, &uu - &iv))
}

/// `(mu u; -u -mu)` over `S[u]`, a representation for `x^2 + f + u^2`.
pub fn sharp(mr: &MatrixRepresentation, u: &str) -> Result<MatrixRepresentation> {
    require_b_zero(&mr.hs)?;
    let s = mr.hs.s().with_vars(&[u])?;
    let uu = Poly::var(&s, u)?;
    let hs = mr.hs.extend(&[u], &(&uu * &uu))?;
    let mu = mr.mu.embed(hs.s())?;
    let n = mr.size();
    let ub = PolyMatrix::scalar(hs.s(), n, &uu.embed(hs.s())?);
    let block = PolyMatrix::block(&mu, &ub, &(-&ub), &(-&mu))?;
    MatrixRepresentation::tagged(hs, block, Construction::Sharp, &mr.mu)
}

/// `(mu zeta; -eta_bar -mu)` over `S[u,v]`, a representation for
/// `x^2 + f + u^2 + v^2`.
pub fn double_sharp(mr: &MatrixRepresentation, u: &str, v: &str) -> Result<MatrixRepresentation> {
    require_b_zero(&mr.hs)?;
    if !mr.hs.s().field().has_sqrt_minus_one() {
        return Err(Error::NoSqrtMinusOne);
    }
    let s = mr.hs.s().with_vars(&[u, v])?;
    let (zeta, eta_bar) = zeta_eta(&s, u, v)?;
    let hs = mr.hs.extend(&[u, v], &(&zeta * &eta_bar))?;
    let mu = mr.mu.embed(hs.s())?;
    let n = mr.size();
    let z = PolyMatrix::scalar(hs.s(), n, &zeta.embed(hs.s())?);
    let e = PolyMatrix::scalar(hs.s(), n, &eta_bar.embed(hs.s())?);
    let block = PolyMatrix::block(&mu, &z, &(-&e), &(-&mu))?;
    MatrixRepresentation::tagged(hs, block, Construction::DoubleSharp, &mr.mu)
}

/// A pair with `phi psi = psi phi = f I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    phi: PolyMatrix,
    psi: PolyMatrix,
    f: Poly,
}

impl MatrixFactorization {
    pub fn new(phi: PolyMatrix, psi: PolyMatrix, f: Poly) -> Result<Self> {
        let n = phi.require_square()?;
        let fi = PolyMatrix::scalar(phi.ring(), n, &f);
        let r1 = phi.checked_mul(&psi)?.checked_sub(&fi)?;
        let r2 = psi.checked_mul(&phi)?.checked_sub(&fi)?;
        if !r1.is_zero() || !r2.is_zero() {
            return Err(Error::InvalidRepresentation(format!(
                "not a matrix factorization: residuals {r1} and {r2}"
            )));
        }
        Ok(MatrixFactorization { phi, psi, f })
    }

    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix {
        &self.psi
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// `mu` with `mu^2 = -f I` gives the factorization `(mu, -mu)` of `-f`.
    pub fn from_representation(mr: &MatrixRepresentation) -> Result<Self> {
        require_b_zero(&mr.hs)?;
        Self::new(mr.mu.clone(), -&mr.mu, -mr.hs.c())
    }
}

/// `(alpha zeta z^h 0; eta_bar -alpha 0 z^h)` for a factorization
/// `(alpha, alpha)`.
pub fn knoerrer_image(mf: &MatrixFactorization, z: &Poly, h: u32, u: &str, v: &str) -> Result<PolyMatrix> {
    if mf.phi != mf.psi {
        return Err(Error::Precondition("expected a factorization of the form (alpha, alpha)".into()));
    }
    if z.is_zero() {
        return Err(Error::Precondition("z must be a non-zerodivisor".into()));
    }
    let s = mf.phi.ring().with_vars(&[u, v])?;
    let (zeta, eta_bar) = zeta_eta(&s, u, v)?;
    let a = mf.phi.embed(&s)?;
    let n = a.rows();
    let zh = PolyMatrix::scalar(&s, n, &z.embed(&s)?.pow(h));
    let zero = PolyMatrix::zeros(&s, n, n);
    let top = a
        .hstack(&PolyMatrix::scalar(&s, n, &zeta))?
        .hstack(&zh)?
        .hstack(&zero)?;
    let bottom = PolyMatrix::scalar(&s, n, &eta_bar)
        .hstack(&(-&a))?
        .hstack(&zero)?
        .hstack(&zh)?;
    top.vstack(&bottom)
}

/// `A = (alpha x I; 0 beta)` and `B = (beta -x I; 0 alpha)`.
pub fn lemma41_blocks(alpha: &PolyMatrix, beta: &PolyMatrix, x: &Poly) -> Result<(PolyMatrix, PolyMatrix)> {
    let n = alpha.require_square()?;
    if beta.rows() != n || beta.cols() != n {
        return Err(Error::SizeMismatch("alpha and beta differ in size".into()));
    }
    let xi = PolyMatrix::scalar(alpha.ring(), n, x);
    let zero = PolyMatrix::zeros(alpha.ring(), n, n);
    let a = PolyMatrix::block(alpha, &xi, &zero, beta)?;
    let b = PolyMatrix::block(beta, &(-&xi), &zero, alpha)?;
    Ok((a, b))
}

/// Whether `x I` is injective on `R^n`.
pub fn is_regular(x: &Poly, n: usize, ring: &Ring) -> Result<bool> {
    let m = PolyMatrix::scalar(ring.base(), n, x);
    Ok(kernel_of_map(&m, ring)?.is_zero())
}

/// Whether `Im a = Ker b` as maps on `R^n`.
pub fn image_equals_kernel(a: &PolyMatrix, b: &PolyMatrix, ring: &Ring) -> Result<bool> {
    let im = Submodule::image(ring.clone(), a)?;
    let ker = kernel_of_map(b, ring)?;
    if im.is_zero() || ker.is_zero() {
        return Ok(im.is_zero() && ker.is_zero());
    }
    submodule_equal(&im, &ker)
}

/// `(alpha -x^h I; 0 alpha)`, presenting `alpha(L) + x^h L` when
/// `Im alpha = Ker alpha` and `x` is regular.
pub fn cokernel_presentation(alpha: &PolyMatrix, x: &Poly, h: u32, ring: &Ring) -> Result<PolyMatrix> {
    let n = alpha.require_square()?;
    if !image_equals_kernel(alpha, alpha, ring)? {
        return Err(Error::Precondition(format!("Im alpha differs from Ker alpha for alpha = {alpha}")));
    }
    if !is_regular(x, n, ring)? {
        return Err(Error::Precondition(format!("{x} is not regular")));
    }
    let xh = PolyMatrix::scalar(alpha.ring(), n, &x.pow(h));
    let zero = PolyMatrix::zeros(alpha.ring(), n, n);
    PolyMatrix::block(alpha, &(-&xh), &zero, alpha)
}

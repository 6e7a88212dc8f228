use crate::catalog::{catalog_matrix_in, dim1_hypersurface, thm31_witness_in, CMClass};
use crate::degeneration::{lift_witness_doublesharp, DegenerationWitness};
use crate::error::{Error, Result};
use crate::ideal::Submodule;
use crate::matfac::{
    cokernel_presentation, double_sharp, is_regular, knoerrer_image, zeta_eta, MatrixFactorization,
    MatrixRepresentation,
};
use crate::matrix::{ElementaryOp, PolyMatrix};
use crate::poly::{CoeffField, Poly, QuotientRing, Ring};
use crate::report::{combine, Check, Verdict};

/// Metadata for the iterated modules: the starting ideal `(x_0, z^h)` is
/// read in `k[x,y]/(x^2)` with `x_0 := x` and `z := y`.
pub const REGULAR_PARAMETER_NOTE: &str = "z is the regular parameter y of k[x,y]/(x^2); x_0 is x";

/// Variable names `(u_k, v_k)` adjoined by the `k`-th double sharp.
pub fn knoerrer_vars(k: usize) -> (String, String) {
    (format!("u{k}"), format!("v{k}"))
}

fn steps(target_dim: u32) -> Result<usize> {
    if target_dim.is_multiple_of(2) {
        return Err(Error::Precondition(format!("target dimension {target_dim} is not odd")));
    }
    Ok(((target_dim - 1) / 2) as usize)
}

/// `(x, y^h)` (or `R` for `h = 0`) pushed through `(target_dim - 1)/2`
/// double sharps, adjoining `u1, v1, u2, v2, ...`.
pub fn iterated_knoerrer_module_over(field: &CoeffField, h: u32, target_dim: u32) -> Result<MatrixRepresentation> {
    let k = steps(target_dim)?;
    if k > 0 && !field.has_sqrt_minus_one() {
        return Err(Error::NoSqrtMinusOne);
    }
    let hs = dim1_hypersurface(field)?;
    let mut mr = catalog_matrix_in(&CMClass::from_chain_index(h), &hs)?;
    for step in 1..=k {
        let (u, v) = knoerrer_vars(step);
        mr = double_sharp(&mr, &u, &v)?;
    }
    Ok(mr)
}

/// [`iterated_knoerrer_module_over`] over the Gaussian rationals.
pub fn iterated_knoerrer_module(h: u32, target_dim: u32) -> Result<MatrixRepresentation> {
    iterated_knoerrer_module_over(&CoeffField::GaussianRationals, h, target_dim)
}

/// The chain witness from `j` to `2i - j`, lifted through the same double
/// sharps as [`iterated_knoerrer_module`].
pub fn iterated_knoerrer_witness(j: u32, i: u32, target_dim: u32, samples: &[i64]) -> Result<DegenerationWitness> {
    let k = steps(target_dim)?;
    if i < j {
        return Err(Error::Precondition(format!("need i >= j, got i = {i}, j = {j}")));
    }
    let hs = dim1_hypersurface(&CoeffField::GaussianRationals)?;
    let mut w = thm31_witness_in(&hs, j, 2 * i - j)?;
    for step in 1..=k {
        let (u, v) = knoerrer_vars(step);
        w = lift_witness_doublesharp(&w, &u, &v, samples)?;
    }
    Ok(w)
}

/// `(phi zeta I; eta_bar I -psi)` over the ring of `phi` with `u, v`
/// adjoined, for a factorization `phi psi = f I`.
pub fn knoerrer_mf_block(phi: &PolyMatrix, psi: &PolyMatrix, u: &str, v: &str) -> Result<PolyMatrix> {
    let n = phi.require_square()?;
    let s = phi.ring().with_vars(&[u, v])?;
    let (zeta, eta_bar) = zeta_eta(&s, u, v)?;
    PolyMatrix::block(
        &phi.embed(&s)?,
        &PolyMatrix::scalar(&s, n, &zeta),
        &PolyMatrix::scalar(&s, n, &eta_bar),
        &-&psi.embed(&s)?,
    )
}

/// Images of `(alpha z^h)` and of its Knörrer counterpart, with the block
/// presentation identity.
#[derive(Clone, Debug)]
pub struct Prop56Image {
    pub f: Poly,
    pub ring: Ring,
    pub sharp_ring: Ring,
    /// `Im (alpha z^h)` in `R^n`.
    pub image: Submodule,
    /// `(alpha -z^h; 0 alpha)`.
    pub presentation: PolyMatrix,
    /// The Knörrer block of `((alpha -z^h; 0 alpha), (alpha z^h; 0 alpha))`.
    pub phi_presentation: PolyMatrix,
    /// `(alpha zeta -z^h 0; eta -alpha 0 -z^h; 0 0 alpha zeta; 0 0 eta -alpha)`.
    pub displayed: PolyMatrix,
    /// Operations taking `phi_presentation` to `displayed`.
    pub ops: Vec<ElementaryOp>,
    /// `(alpha zeta z^h 0; eta -alpha 0 z^h)`.
    pub sharp_generators: PolyMatrix,
    pub sharp_image: Submodule,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

/// Swaps block rows and block columns two and three of a 4x4 block
/// matrix with blocks of size `n`.
fn middle_swap(n: usize) -> Vec<ElementaryOp> {
    let mut ops: Vec<ElementaryOp> = (0..n).map(|k| ElementaryOp::SwapRows(n + k, 2 * n + k)).collect();
    ops.extend((0..n).map(|k| ElementaryOp::SwapCols(n + k, 2 * n + k)));
    ops
}

/// Builds the images for `alpha` with `alpha^2 = f I` over `S`, and checks
/// the presentation identity with `u, v` adjoined.
pub fn prop56_image(alpha: &PolyMatrix, z: &Poly, h: u32) -> Result<Prop56Image> {
    prop56_image_with(alpha, z, h, "u", "v")
}

pub fn prop56_image_with(alpha: &PolyMatrix, z: &Poly, h: u32, u: &str, v: &str) -> Result<Prop56Image> {
    let n = alpha.require_square()?;
    let s = alpha.ring();
    let sq = alpha.checked_mul(alpha)?;
    let f = sq.get(0, 0).clone();
    if sq != PolyMatrix::scalar(s, n, &f) {
        return Err(Error::Precondition(format!("alpha^2 = {sq} is not scalar")));
    }
    if f.is_zero() {
        return Err(Error::Precondition("alpha^2 must be a nonzero scalar".into()));
    }
    let ring: Ring = QuotientRing::new(s, f.clone(), None)?.into();
    let z = z.embed(s)?;
    let mut checks = vec![Check::from_bool(
        "z_regular",
        is_regular(&z, n, &ring)?,
        format!("{z} is a non-zerodivisor on R^{n}"),
    )];

    let zh = PolyMatrix::scalar(s, n, &z.pow(h));
    let image = Submodule::image(ring.clone(), &alpha.hstack(&zh)?)?;
    let presentation = cokernel_presentation(alpha, &z, h, &ring)?;
    let zero = PolyMatrix::zeros(s, n, n);
    let partner = PolyMatrix::block(alpha, &zh, &zero, alpha)?;
    MatrixFactorization::new(presentation.clone(), partner.clone(), f.clone())?;
    let phi_presentation = knoerrer_mf_block(&presentation, &partner, u, v)?;

    let s2 = phi_presentation.ring().clone();
    let (zeta, eta_bar) = zeta_eta(&s2, u, v)?;
    let a = alpha.embed(&s2)?;
    let ze = PolyMatrix::scalar(&s2, n, &zeta);
    let et = PolyMatrix::scalar(&s2, n, &eta_bar);
    let mzh = PolyMatrix::scalar(&s2, n, &-&z.embed(&s2)?.pow(h));
    let upper = PolyMatrix::block(&a, &ze, &et, &-&a)?;
    let corner = PolyMatrix::block_diag(&[&mzh, &mzh])?;
    let displayed = PolyMatrix::block(&upper, &corner, &PolyMatrix::zeros(&s2, 2 * n, 2 * n), &upper)?;

    let ops = middle_swap(n);
    let mut transformed = phi_presentation.clone();
    for op in &ops {
        transformed.apply_op(op);
    }
    checks.push(Check::from_bool(
        "presentation_identity",
        transformed == displayed,
        "block swap of the Knörrer presentation equals the displayed matrix",
    ));

    let big_f = &f.embed(&s2)? + &(&zeta * &eta_bar);
    let squares = |m: &PolyMatrix| -> Result<bool> {
        let k = m.rows();
        Ok(m.checked_mul(m)? == PolyMatrix::scalar(&s2, k, &big_f))
    };
    checks.push(Check::from_bool(
        "sharp_square",
        squares(&upper)?,
        "(alpha zeta; eta -alpha)^2 = (f + zeta eta) I",
    ));
    let sharp_ring: Ring = QuotientRing::new(&s2, big_f.clone(), None)?.into();
    let sharp_generators = knoerrer_image(&MatrixFactorization::new(alpha.clone(), alpha.clone(), f.clone())?, &z, h, u, v)?;
    let sharp_image = Submodule::image(sharp_ring.clone(), &sharp_generators)?;
    let verdict = combine(&checks, Verdict::Valid, Verdict::Invalid);
    Ok(Prop56Image {
        f,
        ring,
        sharp_ring,
        image,
        presentation,
        phi_presentation,
        displayed,
        ops,
        sharp_generators,
        sharp_image,
        checks,
        verdict,
    })
}

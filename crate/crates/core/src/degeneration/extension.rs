use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{
    kernel_of_map, module_gb, submodule_contains, submodule_equal, submodule_membership, FreeModuleVector, Submodule,
};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Ring};
use crate::report::{combine, Check, Verdict};

/// A verified short exact sequence `0 -> L -> M -> N -> 0`, recording the
/// degeneration of `M` to `L ⊕ N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionRecord {
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub provenance: &'static str,
}

/// `M ⊕ N` inside `R^(m + n)`.
pub fn direct_sum(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    let (ra, rb) = (a.ambient_rank(), b.ambient_rank());
    let base = a.base();
    let pad = |g: &FreeModuleVector, before: usize, after: usize| {
        let mut v = vec![Poly::zero(base); before];
        v.extend(g.entries().iter().cloned());
        v.extend(std::iter::repeat_with(|| Poly::zero(base)).take(after));
        FreeModuleVector::new(v)
    };
    let mut gens = Vec::new();
    for g in a.gens() {
        gens.push(pad(g, 0, rb)?);
    }
    for g in b.gens() {
        gens.push(pad(g, ra, 0)?);
    }
    Submodule::new(a.ring().clone(), ra + rb, gens)
}

fn relations_preserved(src: &PolyMatrix, dst_after: &PolyMatrix, ring: &Ring) -> Result<bool> {
    // Every relation among the source generators maps to zero.
    let ker = kernel_of_map(src, ring)?;
    for r in ker.gens() {
        if dst_after.apply(r.entries())?.iter().any(|p| !ring.is_zero(p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn kernel_contained(small: &PolyMatrix, big: &PolyMatrix, ring: &Ring) -> Result<bool> {
    let ks = kernel_of_map(small, ring)?;
    if ks.is_zero() {
        return Ok(true);
    }
    let kb = kernel_of_map(big, ring)?;
    Ok(!kb.is_zero() && submodule_contains(&kb, &ks)?)
}

fn image(ring: &Ring, mx: &PolyMatrix) -> Result<Submodule> {
    module_gb(&Submodule::image(ring.clone(), mx)?)
}

/// Checks that `incl` and `proj`, given on the stored generators of `l`,
/// `m`, `n`, define a short exact sequence.
pub fn extension_degeneration(
    l: &Submodule,
    m: &Submodule,
    n: &Submodule,
    incl: &PolyMatrix,
    proj: &PolyMatrix,
) -> Result<ExtensionRecord> {
    let ring = m.ring().clone();
    if l.ring() != &ring || n.ring() != &ring {
        return Err(Error::RingMismatch);
    }
    let (gl, gm, gn) = (l.matrix(), m.matrix(), n.matrix());
    if incl.rows() != gm.cols() || incl.cols() != gl.cols() {
        return Err(Error::SizeMismatch(format!(
            "inclusion must be {}x{}",
            gm.cols(),
            gl.cols()
        )));
    }
    if proj.rows() != gn.cols() || proj.cols() != gm.cols() {
        return Err(Error::SizeMismatch(format!(
            "projection must be {}x{}",
            gn.cols(),
            gm.cols()
        )));
    }
    let f_map = gm.checked_mul(incl)?;
    let g_map = gn.checked_mul(proj)?;
    let mut checks = vec![
        Check::from_bool(
            "inclusion_well_defined",
            relations_preserved(&gl, &f_map, &ring)?,
            "relations of L map to zero",
        ),
        Check::from_bool(
            "projection_well_defined",
            relations_preserved(&gm, &g_map, &ring)?,
            "relations of M map to zero",
        ),
        Check::from_bool(
            "injective",
            kernel_contained(&f_map, &gl, &ring)?,
            "Ker (L -> M) is zero",
        ),
    ];
    let composite = g_map.checked_mul(incl)?.reduce(&ring);
    checks.push(Check::from_bool("composition_zero", composite.is_zero(), "L -> M -> N is zero"));
    let img_n = Submodule::image(ring.clone(), &g_map)?;
    let surjective = if n.is_zero() {
        true
    } else {
        !img_n.is_zero() && submodule_equal(&img_n, n)?
    };
    checks.push(Check::from_bool("surjective", surjective, "M -> N is onto"));
    let ker_g = kernel_of_map(&g_map, &ring)?;
    let img_f = image(&ring, &f_map)?;
    let mut inside = true;
    for w in ker_g.gens() {
        let v = FreeModuleVector::new(gm.apply(w.entries())?)?.reduce(&ring);
        if !v.is_zero() && (img_f.is_zero() || !submodule_membership(&v, &img_f)?.member) {
            inside = false;
            break;
        }
    }
    checks.push(Check::from_bool("kernel_in_image", inside, "Ker (M -> N) ⊆ Im (L -> M)"));
    Ok(ExtensionRecord {
        verdict: combine(&checks, Verdict::Exact, Verdict::NotExact),
        checks,
        provenance: "extension",
    })
}

fn coords(v: &FreeModuleVector, s: &Submodule) -> Result<Option<Vec<Poly>>> {
    if v.is_zero() {
        return Ok(Some(vec![Poly::zero(s.base()); s.gens().len()]));
    }
    let m = submodule_membership(v, s)?;
    Ok(if m.member { m.cofactors } else { None })
}

/// Maps `a -> (c1 a, c2 a)` and `(b, c) -> d1 b + d2 c` for ideals
/// `l ⊆ R`, `m1 ⊕ m2`, `n ⊆ R`, in generator coordinates.
pub fn multiplier_maps(
    l: &Submodule,
    m1: &Submodule,
    m2: &Submodule,
    n: &Submodule,
    c: [&Poly; 2],
    d: [&Poly; 2],
) -> Result<Option<(PolyMatrix, PolyMatrix)>> {
    let ring = l.ring().clone();
    let base = l.base();
    let sum = module_gb(&direct_sum(m1, m2)?)?;
    let mut incl_cols = Vec::new();
    for g in l.gens() {
        let a = &g.entries()[0];
        let v = FreeModuleVector::new(vec![ring.reduce(&(c[0] * a)), ring.reduce(&(c[1] * a))])?;
        match coords(&v, &sum)? {
            Some(col) => incl_cols.push(col),
            None => return Ok(None),
        }
    }
    let n_gb = module_gb(n)?;
    let mut proj_cols = Vec::new();
    for g in sum.gens() {
        let e = g.entries();
        let v = FreeModuleVector::new(vec![ring.reduce(&(&(d[0] * &e[0]) + &(d[1] * &e[1])))])?;
        match coords(&v, &n_gb)? {
            Some(col) => proj_cols.push(col),
            None => return Ok(None),
        }
    }
    let incl = PolyMatrix::from_columns(base, sum.gens().len(), &incl_cols)?;
    let proj = PolyMatrix::from_columns(base, n.gens().len(), &proj_cols)?;
    Ok(Some((incl, proj)))
}

/// Searches multiplier maps `(c1, c2, d1, d2)` from `candidates` making
/// `0 -> l -> m1 ⊕ m2 -> n -> 0` exact. Returns the multipliers and the
/// coordinate matrices of the first exact choice in enumeration order.
#[allow(clippy::type_complexity)]
pub fn search_multiplier_extension(
    l: &Submodule,
    m1: &Submodule,
    m2: &Submodule,
    n: &Submodule,
    candidates: &[Poly],
) -> Result<Option<([Poly; 4], PolyMatrix, PolyMatrix)>> {
    let ring = l.ring().clone();
    let sum = direct_sum(m1, m2)?;
    for c1 in candidates {
        for c2 in candidates {
            if c1.is_zero() && c2.is_zero() {
                continue;
            }
            for d1 in candidates {
                for d2 in candidates {
                    if !ring.is_zero(&(&(c1 * d1) + &(c2 * d2))) {
                        continue;
                    }
                    let Some((incl, proj)) = multiplier_maps(l, m1, m2, n, [c1, c2], [d1, d2])? else {
                        continue;
                    };
                    let rec = extension_degeneration(l, &sum, n, &incl, &proj)?;
                    if rec.verdict == Verdict::Exact {
                        return Ok(Some(([c1.clone(), c2.clone(), d1.clone(), d2.clone()], incl, proj)));
                    }
                }
            }
        }
    }
    Ok(None)
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{
    kernel_of_map, module_gb, submodule_contains, submodule_equal, submodule_membership, FreeModuleVector, Submodule,
};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Ring};
use crate::report::{combine, Check, Status, Verdict};

/// `z = alpha(s) + x t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub s: FreeModuleVector,
    pub t: FreeModuleVector,
}

/// `0 -> Z -> M ⊕ Z -> N -> 0` inside `L = R^n`, with `Z -> M` the
/// inclusion, `Z -> Z` given by `eta`, and `M ⊕ Z -> N` given by the
/// blocks `pi_m`, `pi_z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZwaraSequence {
    pub ring: Ring,
    pub rank: usize,
    pub alpha: PolyMatrix,
    pub beta: PolyMatrix,
    pub x: Poly,
    /// Generators of `Z`, in the order used by `eta`.
    pub z: Submodule,
    pub decompositions: Vec<Decomposition>,
    /// `eta` applied to each generator of `Z`.
    pub eta_images: Vec<FreeModuleVector>,
    /// Column `j` expresses `eta(z_j)` on the generators of `Z`.
    pub eta: PolyMatrix,
    pub m: Submodule,
    pub n: Submodule,
    pub pi_m: PolyMatrix,
    pub pi_z: PolyMatrix,
}

fn column_vector(mx: &PolyMatrix, v: &FreeModuleVector, ring: &Ring) -> Result<FreeModuleVector> {
    FreeModuleVector::new(mx.apply(v.entries())?).map(|w| w.reduce(ring))
}

fn precondition(what: &str, v: &FreeModuleVector) -> Error {
    Error::Precondition(format!("{what}; counterexample {v}"))
}

/// A vector witnessing `Im a != Ker b`, if any.
pub fn exactness_counterexample(a: &PolyMatrix, b: &PolyMatrix, ring: &Ring) -> Result<Option<FreeModuleVector>> {
    let im = module_gb(&Submodule::image(ring.clone(), a)?)?;
    for g in im.gens() {
        if !column_vector(b, g, ring)?.is_zero() {
            return Ok(Some(g.clone()));
        }
    }
    let ker = kernel_of_map(b, ring)?;
    for g in ker.gens() {
        if !submodule_membership(g, &im)?.member {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

fn cofactors(v: &FreeModuleVector, s: &Submodule) -> Result<Option<Vec<Poly>>> {
    if v.is_zero() {
        return Ok(Some(vec![Poly::zero(s.base()); s.gens().len()]));
    }
    let m = submodule_membership(v, s)?;
    Ok(if m.member { m.cofactors } else { None })
}

/// Builds the sequence for `alpha`, `beta` with `Im alpha = Ker beta`,
/// `Im beta = Ker alpha`, an `L`-regular `x`, `beta(L) ⊆ Z = alpha(L) +
/// xL` and `Z ⊆ M`.
pub fn zwara_construct(n: usize, alpha: &PolyMatrix, beta: &PolyMatrix, x: &Poly, m: &Submodule) -> Result<ZwaraSequence> {
    let ring = m.ring().clone();
    let base = ring.base().clone();
    for (name, mx) in [("alpha", alpha), ("beta", beta)] {
        if mx.rows() != n || mx.cols() != n {
            return Err(Error::SizeMismatch(format!("{name} is {}x{}, expected {n}x{n}", mx.rows(), mx.cols())));
        }
        if mx.ring() != &base {
            return Err(Error::RingMismatch);
        }
    }
    if m.ambient_rank() != n {
        return Err(Error::SizeMismatch("M is not a submodule of R^n".into()));
    }
    if let Some(v) = exactness_counterexample(alpha, beta, &ring)? {
        return Err(precondition("Im alpha differs from Ker beta", &v));
    }
    if let Some(v) = exactness_counterexample(beta, alpha, &ring)? {
        return Err(precondition("Im beta differs from Ker alpha", &v));
    }
    let x = ring.reduce(x);
    let xi = PolyMatrix::scalar(&base, n, &x);
    if let Some(v) = kernel_of_map(&xi, &ring)?.gens().first() {
        return Err(precondition(&format!("{x} is not regular"), v));
    }

    let mut z_gens: Vec<FreeModuleVector> = Vec::new();
    let mut decompositions = Vec::new();
    let zero = FreeModuleVector::zero(&base, n);
    let mut push = |z: FreeModuleVector, d: Decomposition| {
        if !z.is_zero() && !z_gens.contains(&z) {
            z_gens.push(z);
            decompositions.push(d);
        }
    };
    for j in 0..n {
        let s = FreeModuleVector::basis_vector(&base, n, j);
        push(
            column_vector(alpha, &s, &ring)?,
            Decomposition {
                s,
                t: zero.clone(),
            },
        );
    }
    for i in 0..n {
        let t = FreeModuleVector::basis_vector(&base, n, i);
        push(
            t.scale(&x).reduce(&ring),
            Decomposition {
                s: zero.clone(),
                t,
            },
        );
    }
    let z = module_gb(&Submodule::new(ring.clone(), n, z_gens.clone())?)?;
    debug_assert_eq!(z.gens(), z_gens.as_slice());

    for j in 0..n {
        let b = column_vector(beta, &FreeModuleVector::basis_vector(&base, n, j), &ring)?;
        if !b.is_zero() && !submodule_membership(&b, &z)?.member {
            return Err(precondition("beta(L) is not contained in Z", &b));
        }
    }
    let m_gb = module_gb(m)?;
    for g in z.gens() {
        if !submodule_membership(g, &m_gb)?.member {
            return Err(precondition("Z is not contained in M", g));
        }
    }

    let eta_images = decompositions
        .iter()
        .map(|d| column_vector(beta, &d.t, &ring))
        .collect::<Result<Vec<_>>>()?;
    let mut columns = Vec::with_capacity(z.gens().len());
    for e in &eta_images {
        let c = cofactors(e, &z)?.ok_or_else(|| precondition("eta leaves Z", e))?;
        columns.push(c);
    }
    let k = z.gens().len();
    let eta = if k == 0 {
        PolyMatrix::zeros(&base, 0, 0)
    } else {
        PolyMatrix::from_columns(&base, k, &columns)?
    };

    let mut n_gens: Vec<FreeModuleVector> = m
        .gens()
        .iter()
        .map(|g| column_vector(beta, g, &ring))
        .collect::<Result<_>>()?;
    n_gens.extend(z.gens().iter().map(|g| g.scale(&x).reduce(&ring)));
    let n_mod = Submodule::new(ring.clone(), n, n_gens)?;

    Ok(ZwaraSequence {
        ring,
        rank: n,
        alpha: alpha.clone(),
        beta: beta.clone(),
        x: x.clone(),
        z,
        decompositions,
        eta_images,
        eta,
        m: m.clone(),
        n: n_mod,
        pi_m: beta.clone(),
        pi_z: -&xi,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

fn stacked(top: &[FreeModuleVector], bottom: &[FreeModuleVector], ring: &Ring, rows: usize) -> Result<PolyMatrix> {
    let cols: Vec<Vec<_>> = top
        .iter()
        .zip(bottom)
        .map(|(a, b)| a.entries().iter().chain(b.entries()).cloned().collect())
        .collect();
    PolyMatrix::from_columns(ring.base(), rows, &cols)
}

fn exactness_checks(seq: &ZwaraSequence) -> Result<Vec<Check>> {
    let ring = &seq.ring;
    let base = ring.base();
    let n = seq.rank;
    let zg = seq.z.gens();
    let mg = seq.m.gens();
    let mut checks = Vec::new();
    if zg.is_empty() {
        checks.push(Check::from_bool("injective", true, "Z is zero"));
    } else {
        let zmat = seq.z.matrix();
        let graph = stacked(zg, &seq.eta_images, ring, 2 * n)?;
        let k0 = kernel_of_map(&zmat, ring)?;
        let k1 = kernel_of_map(&graph, ring)?;
        let ok = k0.is_zero() || (!k1.is_zero() && submodule_contains(&k1, &k0)?);
        checks.push(Check::from_bool(
            "injective",
            ok,
            "relations among generators of Z are relations of (theta; eta)",
        ));
    }

    let mut composite_zero = true;
    for (z, e) in zg.iter().zip(&seq.eta_images) {
        let a = column_vector(&seq.pi_m, z, ring)?;
        let b = column_vector(&seq.pi_z, e, ring)?;
        if !a.add(&b)?.reduce(ring).is_zero() {
            composite_zero = false;
        }
    }
    checks.push(Check::from_bool("composition_zero", composite_zero, "pi o (theta; eta) = 0"));

    let mut image_gens = Vec::new();
    for g in mg {
        image_gens.push(column_vector(&seq.pi_m, g, ring)?);
    }
    for g in zg {
        image_gens.push(column_vector(&seq.pi_z, g, ring)?);
    }
    let image = Submodule::new(ring.clone(), n, image_gens)?;
    let surjective = if image.is_zero() || seq.n.is_zero() {
        image.is_zero() && seq.n.is_zero()
    } else {
        submodule_equal(&image, &seq.n)?
    };
    checks.push(Check::from_bool("surjective", surjective, "pi(M ⊕ Z) = N"));

    // Kernel of pi restricted to M ⊕ Z, in generator coordinates.
    let (a, k) = (mg.len(), zg.len());
    if a + k == 0 {
        checks.push(Check::from_bool("kernel_in_image", true, "M ⊕ Z is zero"));
        return Ok(checks);
    }
    let mut cols: Vec<Vec<Poly>> = Vec::with_capacity(a + k);
    for g in mg {
        cols.push(seq.pi_m.apply(g.entries())?);
    }
    for g in zg {
        cols.push(seq.pi_z.apply(g.entries())?);
    }
    let restricted = PolyMatrix::from_columns(base, n, &cols)?;
    let ker = kernel_of_map(&restricted, ring)?;
    let theta_eta = if k == 0 {
        Submodule::zero(ring.clone(), 2 * n)?
    } else {
        module_gb(&Submodule::image(ring.clone(), &stacked(zg, &seq.eta_images, ring, 2 * n)?)?)?
    };
    let mut inside = true;
    for c in ker.gens() {
        let mut v = vec![Poly::zero(base); 2 * n];
        for (idx, coef) in c.entries().iter().enumerate() {
            let (g, off) = if idx < a { (&mg[idx], 0) } else { (&zg[idx - a], n) };
            for (r, e) in g.entries().iter().enumerate() {
                v[off + r] = &v[off + r] + &(coef * e);
            }
        }
        let v = FreeModuleVector::new(v)?.reduce(ring);
        if !v.is_zero() && (theta_eta.is_zero() || !submodule_membership(&v, &theta_eta)?.member) {
            inside = false;
            break;
        }
    }
    checks.push(Check::from_bool("kernel_in_image", inside, "Ker pi ⊆ Im (theta; eta)"));
    Ok(checks)
}

/// Checks injectivity, composition, surjectivity and `Ker ⊆ Im` by
/// module computations; exhausted budgets give an inconclusive verdict.
pub fn verify_exactness(seq: &ZwaraSequence) -> Result<ExactnessReport> {
    match exactness_checks(seq) {
        Ok(checks) => Ok(ExactnessReport {
            verdict: combine(&checks, Verdict::Exact, Verdict::NotExact),
            checks,
        }),
        Err(Error::ResourceLimit { budget }) => Ok(ExactnessReport {
            verdict: Verdict::Inconclusive,
            checks: vec![Check::new(
                "budget",
                Status::Inconclusive,
                format!("module computation exceeded {budget} S-pairs"),
            )],
        }),
        Err(e) => Err(e),
    }
}

/// Least `m <= bound` with `eta^m = 0` on `Z`, where `eta` acts on the
/// generators of `z`; `(false, bound)` when none is found.
pub fn nilpotency_check(eta: &PolyMatrix, z: &Submodule, bound: usize) -> Result<(bool, usize)> {
    let k = eta.require_square()?;
    if k != z.gens().len() {
        return Err(Error::SizeMismatch(format!("eta is {k}x{k} for {} generators", z.gens().len())));
    }
    if k == 0 {
        return Ok((true, 0));
    }
    let ring = z.ring();
    let mut p = z.matrix();
    for m in 1..=bound {
        p = p.checked_mul(eta)?.reduce(ring);
        if p.is_zero() {
            return Ok((true, m));
        }
    }
    Ok((false, bound))
}

const NILPOTENCY_SEARCH: u32 = 32;

/// Least `p <= cap` with `mx^p = 0` over `ring`.
pub fn nilpotency_index(mx: &PolyMatrix, ring: &Ring, cap: u32) -> Result<Option<u32>> {
    let mut p = mx.reduce(ring);
    for e in 1..=cap {
        if p.is_zero() {
            return Ok(Some(e));
        }
        p = p.checked_mul(mx)?.reduce(ring);
    }
    Ok(None)
}

impl ZwaraSequence {
    /// Generator count times the nilpotency index of `beta`.
    pub fn nilpotency_bound(&self) -> Result<usize> {
        let p = nilpotency_index(&self.beta, &self.ring, NILPOTENCY_SEARCH)?.unwrap_or(NILPOTENCY_SEARCH);
        Ok(self.z.gens().len().max(1) * p as usize)
    }

    pub fn nilpotency(&self) -> Result<(bool, usize)> {
        nilpotency_check(&self.eta, &self.z, self.nilpotency_bound()?)
    }
}

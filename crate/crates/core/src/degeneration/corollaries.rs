use crate::degeneration::extension::direct_sum;
use crate::degeneration::zwara::{exactness_counterexample, zwara_construct, ZwaraSequence};
use crate::error::{Error, Result};
use crate::ideal::{submodule_equal, FreeModuleVector, Submodule};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Ring};

/// `alpha(L) + x^h L` as a submodule of `L = R^n`.
pub fn alpha_plus_power(alpha: &PolyMatrix, x: &Poly, h: u32, ring: &Ring) -> Result<Submodule> {
    let n = alpha.require_square()?;
    let gens = alpha.hstack(&PolyMatrix::scalar(alpha.ring(), n, &x.pow(h)))?;
    Submodule::image(ring.clone(), &gens)
}

/// The degeneration `alpha(L) + x^j L` to `alpha(L) + x^(2i-j) L`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cor45Family {
    pub i: u32,
    pub j: u32,
    /// `alpha(L) + x^j L`.
    pub m: Submodule,
    /// `x^j alpha(L) + x^(2i) L`, the target of the sequence.
    pub n_prime: Submodule,
    /// `alpha(L) + x^(2i-j) L`.
    pub normalized: Submodule,
    /// Whether `x^j` times the generators of `normalized` are the
    /// generators of `n_prime`, which with `x^j` regular gives the
    /// isomorphism.
    pub isomorphism_verified: bool,
    pub sequence: ZwaraSequence,
}

pub fn corollary45_family(alpha: &PolyMatrix, x: &Poly, i: u32, j: u32, ring: &Ring) -> Result<Cor45Family> {
    if i < j {
        return Err(Error::Precondition(format!("need i >= j, got i = {i}, j = {j}")));
    }
    let n = alpha.require_square()?;
    let base = alpha.ring();
    let m = alpha_plus_power(alpha, x, j, ring)?;
    let sequence = zwara_construct(n, alpha, alpha, &x.pow(i), &m)?;

    let xj = x.pow(j);
    let normalized_gens = alpha.hstack(&PolyMatrix::scalar(base, n, &x.pow(2 * i - j)))?;
    let n_prime_gens = alpha
        .scale(&xj)
        .hstack(&PolyMatrix::scalar(base, n, &x.pow(2 * i)))?;
    let n_prime = Submodule::image(ring.clone(), &n_prime_gens)?;
    let normalized = Submodule::image(ring.clone(), &normalized_gens)?;
    let remultiplied = normalized_gens.scale(&xj).reduce(ring);
    let isomorphism_verified = remultiplied == n_prime_gens.reduce(ring)
        && (n_prime.is_zero() || submodule_equal(&sequence.n, &n_prime)?);
    Ok(Cor45Family {
        i,
        j,
        m,
        n_prime,
        normalized,
        isomorphism_verified,
        sequence,
    })
}

/// `M ⊕ N` degenerating to `(alpha(N) + x^2 L) ⊕ (beta(M) + x^2 L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cor44Pair {
    pub gamma: PolyMatrix,
    pub source: Submodule,
    pub k1: Submodule,
    pub k2: Submodule,
    /// Whether the sequence target equals `k1 ⊕ k2`.
    pub split_verified: bool,
    pub sequence: ZwaraSequence,
}

fn apply_all(mx: &PolyMatrix, s: &Submodule, ring: &Ring) -> Result<Vec<FreeModuleVector>> {
    s.gens()
        .iter()
        .map(|g| FreeModuleVector::new(mx.apply(g.entries())?).map(|v| v.reduce(ring)))
        .collect()
}

pub fn corollary44_pair(
    alpha: &PolyMatrix,
    beta: &PolyMatrix,
    x: &Poly,
    m: &Submodule,
    n: &Submodule,
) -> Result<Cor44Pair> {
    let ring = m.ring().clone();
    let size = alpha.require_square()?;
    let base = alpha.ring();
    let zero = PolyMatrix::zeros(base, size, size);
    let gamma = PolyMatrix::block(&zero, alpha, beta, &zero)?;
    if let Some(v) = exactness_counterexample(&gamma, &gamma, &ring)? {
        return Err(Error::Precondition(format!("Im gamma differs from Ker gamma; counterexample {v}")));
    }
    let source = direct_sum(m, n)?;
    let sequence = zwara_construct(2 * size, &gamma, &gamma, x, &source)?;

    let x2 = x.pow(2);
    let x2l: Vec<FreeModuleVector> = (0..size)
        .map(|i| FreeModuleVector::basis_vector(base, size, i).scale(&x2))
        .collect();
    let mut g1 = apply_all(alpha, n, &ring)?;
    g1.extend(x2l.iter().cloned());
    let mut g2 = apply_all(beta, m, &ring)?;
    g2.extend(x2l);
    let k1 = Submodule::new(ring.clone(), size, g1)?;
    let k2 = Submodule::new(ring.clone(), size, g2)?;
    let split_verified = submodule_equal(&sequence.n, &direct_sum(&k1, &k2)?)?;
    Ok(Cor44Pair {
        gamma,
        source,
        k1,
        k2,
        split_verified,
        sequence,
    })
}

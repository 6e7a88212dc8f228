use serde::Serialize;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::ideal::{fitting_ideal, ideal_membership, minors_ideal, saturation_bounded_contains, Ideal};
use crate::matfac::MatrixRepresentation;
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Ring};
use crate::report::Verdict;

/// Outcome of the bounded saturation search for one minor size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorResult {
    pub j: usize,
    /// Least `l` with `t^l I_j(mu) ⊆ I_j(xi)`.
    pub l: Option<usize>,
    /// Least `l'` with `t^l' I_j(xi) ⊆ I_j(mu)`.
    pub l_prime: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FittingResult {
    pub i: usize,
    pub contained: bool,
    /// For each generator of `Fitt_i(N)`, its coefficients on the
    /// generators of `Fitt_i(M)`.
    pub certificate: Option<Vec<Vec<Poly>>>,
    /// A generator of `Fitt_i(N)` outside `Fitt_i(M)`.
    pub witness: Option<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenReport {
    pub verdict: Verdict,
    pub trace_residual: Option<Poly>,
    pub det_residual: Option<Poly>,
    pub minors: Vec<MinorResult>,
    pub fitting: Vec<FittingResult>,
    pub obstructions: Vec<String>,
    pub notes: Vec<String>,
}

impl ScreenReport {
    fn empty() -> Self {
        ScreenReport {
            verdict: Verdict::Consistent,
            trace_residual: None,
            det_residual: None,
            minors: Vec::new(),
            fitting: Vec::new(),
            obstructions: Vec::new(),
            notes: Vec::new(),
        }
    }
}

fn bounded(i: &Ideal, j: &Ideal, t: &str, l_max: usize, notes: &mut Vec<String>) -> Result<Option<usize>> {
    match saturation_bounded_contains(i, j, t, l_max) {
        Ok((true, l)) => Ok(Some(l)),
        Ok((false, _)) => Ok(None),
        Err(Error::ResourceLimit { budget }) => {
            notes.push(format!("saturation search exceeded {budget} S-pairs"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Trace, determinant and minor-ideal conditions a family `xi` over
/// `S[t]` must satisfy to have generic fiber `mu`. A failed bounded search
/// only makes the verdict inconclusive.
pub fn screen_necessary(xi: &PolyMatrix, mu: &MatrixRepresentation, t: &str, budgets: &Budgets) -> Result<ScreenReport> {
    let n = xi.require_square()?;
    if n != mu.size() {
        return Err(Error::SizeMismatch(format!("xi is {n}x{n}, mu is {0}x{0}", mu.size())));
    }
    let ring = xi.ring();
    ring.require_var(t)?;
    let mu_t = mu.mu().embed(ring)?;
    let mut r = ScreenReport::empty();

    let tr = &xi.trace()? - &mu_t.trace()?;
    let det = &xi.det()? - &mu_t.det()?;
    if !tr.is_zero() {
        r.obstructions.push(format!("trace differs by {tr}"));
    }
    if !det.is_zero() {
        r.obstructions.push(format!("determinant differs by {det}"));
    }
    r.trace_residual = Some(tr);
    r.det_residual = Some(det);

    let mut incomplete = false;
    for j in 1..=budgets.j_max_for(n) {
        let ix = minors_ideal(xi, j)?;
        let im = minors_ideal(&mu_t, j)?;
        let l = bounded(&ix, &im, t, budgets.l_max, &mut r.notes)?;
        let l_prime = bounded(&im, &ix, t, budgets.l_max, &mut r.notes)?;
        if l.is_none() || l_prime.is_none() {
            incomplete = true;
            r.notes.push(format!("j = {j}: no exponent found up to {}", budgets.l_max));
        }
        r.minors.push(MinorResult { j, l, l_prime });
    }
    r.verdict = if !r.obstructions.is_empty() {
        Verdict::Obstructed
    } else if incomplete {
        Verdict::Inconclusive
    } else {
        Verdict::Consistent
    };
    Ok(r)
}

fn homogeneous_ideal(i: &Ideal) -> bool {
    i.gens().iter().all(Poly::is_homogeneous)
}

/// Compares `Fitt_i(M) ⊇ Fitt_i(N)` for `i <= i_max`, with presentations
/// given as generators-by-relations matrices over `ring`. Failures are
/// obstructions only when all ideals involved are homogeneous, where
/// polynomial and local containment agree.
pub fn fitting_screen(m_pres: &PolyMatrix, n_pres: &PolyMatrix, ring: &Ring, i_max: usize) -> Result<ScreenReport> {
    let mut r = ScreenReport::empty();
    let mut failed = false;
    let mut graded = ring.is_graded();
    for i in 0..=i_max {
        let fm = fitting_ideal(m_pres, i, ring)?;
        let fn_ = fitting_ideal(n_pres, i, ring)?;
        graded &= homogeneous_ideal(&fm) && homogeneous_ideal(&fn_);
        let mut certificate = Vec::new();
        let mut witness = None;
        for g in fn_.gens() {
            let mem = ideal_membership(g, &fm)?;
            match mem.cofactors {
                Some(c) if mem.member => certificate.push(c),
                _ => {
                    witness = Some(g.clone());
                    break;
                }
            }
        }
        let contained = witness.is_none();
        if !contained {
            failed = true;
            r.obstructions.push(format!(
                "Fitt_{i}: {} not in {fm}",
                witness.as_ref().expect("set on failure")
            ));
        }
        r.fitting.push(FittingResult {
            i,
            contained,
            certificate: contained.then_some(certificate),
            witness,
        });
    }
    r.verdict = match (failed, graded) {
        (false, _) => Verdict::Consistent,
        (true, true) => Verdict::Obstructed,
        (true, false) => {
            r.notes
                .push("non-homogeneous data: polynomial non-containment does not decide local containment".into());
            Verdict::Inconclusive
        }
    };
    Ok(r)
}

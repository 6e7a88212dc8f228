use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budgets;
use crate::catalog::CMClass;
use crate::error::{Error, Result};
use crate::matfac::{
    det_unit_at_origin, recognize_dim1, recognize_dim2, solve_intertwiner, FiberCertificate, Hypersurface,
    MatrixRepresentation,
};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, PolyRing, Value};
use crate::report::{combine, Check, Status, Verdict};

/// Hypersurface families with a recognition procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `k[x,y]/(x^2)` over `k[y]`.
    Dim1,
    /// `k[x,y,z]/(x^2 - xy)` over `k[y,z]`.
    Dim2,
}

pub fn family(hs: &Hypersurface) -> Option<Family> {
    let s = hs.s();
    if !hs.c().is_zero() {
        return None;
    }
    if s.nvars() == 1 && hs.b().is_zero() {
        return Some(Family::Dim1);
    }
    if s.nvars() == 2 && s.var_index("y").is_some() && s.var_index("z").is_some() {
        let y = Poly::var(s, "y").ok()?;
        if *hs.b() == -&y {
            return Some(Family::Dim2);
        }
    }
    None
}

/// Catalog classes of the summands of `mu`, when its family is supported.
pub fn recognize(hs: &Hypersurface, mu: &PolyMatrix) -> Result<Vec<CMClass>> {
    match family(hs) {
        Some(Family::Dim1) => Ok(recognize_dim1(mu)?.classes),
        Some(Family::Dim2) => Ok(vec![recognize_dim2(mu)?]),
        None => Err(Error::Unsupported("no recognition procedure for this hypersurface".into())),
    }
}

/// A one-parameter family `xi` over `S[t]` with generic fiber the source
/// and special fiber the target, plus optional certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationWitness {
    hs: Hypersurface,
    t_var: String,
    t_ring: Arc<PolyRing>,
    xi: PolyMatrix,
    source: MatrixRepresentation,
    target: MatrixRepresentation,
    provenance: String,
    special_conjugator: Option<PolyMatrix>,
    fiber_certificates: BTreeMap<i64, FiberCertificate>,
    symbolic_certificate: Option<PolyMatrix>,
}

impl DegenerationWitness {
    pub fn new(
        source: MatrixRepresentation,
        target: MatrixRepresentation,
        t_var: &str,
        xi: PolyMatrix,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if source.hypersurface() != target.hypersurface() {
            return Err(Error::RingMismatch);
        }
        let hs = source.hypersurface().clone();
        if t_var == hs.x() || hs.s().var_index(t_var).is_some() {
            return Err(Error::VariableClash(t_var.to_string()));
        }
        let t_ring = hs.s().with_vars(&[t_var])?;
        let xi = xi.embed(&t_ring)?;
        let n = xi.require_square()?;
        if n != source.size() || n != target.size() {
            return Err(Error::SizeMismatch(format!(
                "xi is {n}x{n}, source {} and target {}",
                source.size(),
                target.size()
            )));
        }
        Ok(DegenerationWitness {
            hs,
            t_var: t_var.to_string(),
            t_ring,
            xi,
            source,
            target,
            provenance: provenance.into(),
            special_conjugator: None,
            fiber_certificates: BTreeMap::new(),
            symbolic_certificate: None,
        })
    }

    pub fn hypersurface(&self) -> &Hypersurface {
        &self.hs
    }

    pub fn t_var(&self) -> &str {
        &self.t_var
    }

    pub fn t_ring(&self) -> &Arc<PolyRing> {
        &self.t_ring
    }

    pub fn xi(&self) -> &PolyMatrix {
        &self.xi
    }

    pub fn source(&self) -> &MatrixRepresentation {
        &self.source
    }

    pub fn target(&self) -> &MatrixRepresentation {
        &self.target
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn special_conjugator(&self) -> Option<&PolyMatrix> {
        self.special_conjugator.as_ref()
    }

    pub fn fiber_certificates(&self) -> &BTreeMap<i64, FiberCertificate> {
        &self.fiber_certificates
    }

    pub fn symbolic_certificate(&self) -> Option<&PolyMatrix> {
        self.symbolic_certificate.as_ref()
    }

    /// `c` with `xi(0) c = c nu`, invertible at the origin.
    pub fn with_special_conjugator(mut self, c: PolyMatrix) -> Self {
        self.special_conjugator = Some(c);
        self
    }

    /// Certificate relating `xi(c)` (left) to the source (right).
    pub fn with_fiber_certificate(mut self, c: i64, cert: FiberCertificate) -> Self {
        self.fiber_certificates.insert(c, cert);
        self
    }

    /// `g` over `S[t]` with `xi g = g mu` and `det g` a nonzero element of
    /// `k[t]`.
    pub fn with_symbolic_certificate(mut self, g: PolyMatrix) -> Self {
        self.symbolic_certificate = Some(g);
        self
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = p.into();
        self
    }

    /// `xi` with `t` set to `c`.
    pub fn fiber(&self, c: i64) -> Result<PolyMatrix> {
        let v = Value::Scalar(self.t_ring.field().from_i64(c));
        self.xi.substitute(&self.t_var, &v)
    }

    /// Computes fiber certificates at `samples` by recognition.
    pub fn attach_fiber_certificates(mut self, samples: &[i64]) -> Result<Self> {
        if family(&self.hs) != Some(Family::Dim1) {
            return Err(Error::Unsupported("fiber certificates need the one-dimensional family".into()));
        }
        let base = recognize_dim1(self.source.mu())?;
        for &c in samples {
            let fib = recognize_dim1(&self.fiber(c)?)?;
            let cert = FiberCertificate::from_recognitions(&fib, &base).ok_or_else(|| {
                Error::Precondition(format!("fiber at t = {c} has classes {:?}", fib.classes))
            })?;
            self.fiber_certificates.insert(c, cert);
        }
        Ok(self)
    }

    /// Rebuilds the witness from transformed parts, keeping the rest.
    pub(crate) fn map_parts(
        &self,
        source: MatrixRepresentation,
        target: MatrixRepresentation,
        xi: PolyMatrix,
        mut f: impl FnMut(&PolyMatrix) -> Result<PolyMatrix>,
        mut fiber: impl FnMut(&FiberCertificate) -> Result<FiberCertificate>,
        provenance: String,
    ) -> Result<Self> {
        let mut w = DegenerationWitness::new(source, target, &self.t_var, xi, provenance)?;
        if let Some(c) = &self.special_conjugator {
            w.special_conjugator = Some(f(c)?);
        }
        if let Some(g) = &self.symbolic_certificate {
            w.symbolic_certificate = Some(f(g)?);
        }
        for (c, cert) in &self.fiber_certificates {
            w.fiber_certificates.insert(*c, fiber(cert)?);
        }
        Ok(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub source_classes: Option<Vec<String>>,
    pub target_classes: Option<Vec<String>>,
    pub notes: Vec<String>,
}

pub fn verify_witness(w: &DegenerationWitness) -> Result<WitnessReport> {
    verify_witness_with(w, &Budgets::default())
}

fn labels(classes: &[CMClass]) -> Vec<String> {
    classes.iter().map(|c| c.label()).collect()
}

fn fiber_check(w: &DegenerationWitness, c: i64) -> Result<Check> {
    let name = format!("generic_fiber_t={c}");
    let fib = w.fiber(c)?;
    let mu = w.source.mu();
    if let Some(cert) = w.fiber_certificates.get(&c) {
        let ok = cert.verify(&fib, mu)?;
        return Ok(Check::from_bool(name, ok, "stored conjugation certificate"));
    }
    match family(&w.hs) {
        Some(Family::Dim1) => {
            let (a, b) = match (recognize_dim1(&fib), recognize_dim1(mu)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return Ok(Check::new(name, Status::Inconclusive, e.to_string())),
            };
            match FiberCertificate::from_recognitions(&a, &b) {
                Some(cert) => {
                    let ok = cert.verify(&fib, mu)?;
                    Ok(Check::from_bool(name, ok, format!("classes {:?}", labels(&a.classes))))
                }
                None => Ok(Check::from_bool(
                    name,
                    false,
                    format!("fiber classes {:?} differ from {:?}", labels(&a.classes), labels(&b.classes)),
                )),
            }
        }
        Some(Family::Dim2) => match (recognize_dim2(&fib), recognize_dim2(mu)) {
            (Ok(a), Ok(b)) => Ok(Check::from_bool(
                name,
                a == b,
                format!("fiber class {} against {}", a.label(), b.label()),
            )),
            (Err(e), _) | (_, Err(e)) => Ok(Check::new(name, Status::Inconclusive, e.to_string())),
        },
        None => Ok(Check::new(
            name,
            Status::Inconclusive,
            "no certificate and no recognition procedure for this ring",
        )),
    }
}

/// Checks a symbolic intertwiner: `xi g = g mu` with `det g` in `k[t]`.
fn symbolic_holds(w: &DegenerationWitness, g: &PolyMatrix, mu: &PolyMatrix) -> Result<bool> {
    if w.xi.checked_mul(g)? != g.checked_mul(mu)? {
        return Ok(false);
    }
    let d = g.det()?;
    let t = w.t_ring.require_var(&w.t_var)?;
    Ok(!d.is_zero() && d.support_vars().iter().all(|&v| v == t))
}

/// Verifies the relation, the special fiber, sampled generic fibers and any
/// symbolic certificate. Unrecognizable fibers are reported as
/// inconclusive, never as success.
pub fn verify_witness_with(w: &DegenerationWitness, budgets: &Budgets) -> Result<WitnessReport> {
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let hs_t = w.hs.over(&w.t_ring)?;
    let residual = hs_t.residual(&w.xi)?;
    checks.push(Check::from_bool(
        "relation",
        residual.is_zero(),
        if residual.is_zero() {
            "zero residual".to_string()
        } else {
            format!("residual {residual}")
        },
    ));

    let xi0 = w.fiber(0)?;
    let nu = w.target.mu();
    let special = if xi0 == *nu {
        Check::from_bool("special_fiber", true, "equal to the target entrywise")
    } else if let Some(c) = &w.special_conjugator {
        let ok = xi0.checked_mul(c)? == c.checked_mul(nu)? && det_unit_at_origin(c)?;
        Check::from_bool("special_fiber", ok, "recorded conjugation")
    } else {
        Check::from_bool("special_fiber", false, format!("fiber {xi0} differs from {nu}"))
    };
    checks.push(special);

    if residual.is_zero() {
        for &c in &budgets.samples {
            if c == 0 {
                continue;
            }
            checks.push(fiber_check(w, c)?);
        }
    }

    let mu_t = w.source.mu().embed(&w.t_ring)?;
    if let Some(g) = &w.symbolic_certificate {
        let ok = symbolic_holds(w, g, &mu_t)?;
        checks.push(Check::from_bool("symbolic_certificate", ok, "xi g = g mu with det g in k[t]"));
    } else if residual.is_zero() {
        let degree = budgets.degree_factor * w.xi.max_degree().max(1);
        let accept = |g: &PolyMatrix| symbolic_holds(w, g, &mu_t).unwrap_or(false);
        match solve_intertwiner(&w.xi, &mu_t, degree, budgets.seed, accept) {
            Ok(Some(_)) => checks.push(Check::from_bool(
                "symbolic_certificate",
                true,
                format!("found by bounded search at degree {degree}"),
            )),
            Ok(None) => notes.push(format!("no symbolic intertwiner of degree <= {degree}")),
            Err(Error::ResourceLimit { budget }) => {
                notes.push(format!("symbolic intertwiner search skipped: more than {budget} unknowns"))
            }
            Err(e) => return Err(e),
        }
    }

    let source_classes = recognize(&w.hs, w.source.mu()).ok().map(|c| labels(&c));
    let target_classes = recognize(&w.hs, nu).ok().map(|c| labels(&c));
    Ok(WitnessReport {
        verdict: combine(&checks, Verdict::Valid, Verdict::Invalid),
        checks,
        source_classes,
        target_classes,
        notes,
    })
}

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::poly::Poly;
use crate::poly::ring::PolyRing;

/// A hypersurface `base / (f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    base: Arc<PolyRing>,
    f: Poly,
    presentation_var: Option<String>,
}

impl QuotientRing {
    pub fn new(base: &Arc<PolyRing>, f: Poly, presentation_var: Option<&str>) -> Result<Self> {
        if f.ring() != base {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::InvalidRing("defining polynomial is zero".into()));
        }
        if !f.constant_coeff().is_zero() {
            return Err(Error::InvalidRing(
                "defining polynomial has a constant term".into(),
            ));
        }
        if let Some(x) = presentation_var {
            let coeffs = f.coefficients_in(x)?;
            let lead = coeffs.last().expect("nonempty");
            if !lead.is_one() {
                return Err(Error::InvalidRing(format!(
                    "defining polynomial is not monic in `{x}`"
                )));
            }
        }
        Ok(QuotientRing {
            base: base.clone(),
            f,
            presentation_var: presentation_var.map(str::to_string),
        })
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        &self.base
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn presentation_var(&self) -> Option<&str> {
        self.presentation_var.as_deref()
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        normal_form(p, self)
    }
}

/// Remainder of division by the defining polynomial. A single polynomial is
/// a Gröbner basis of the ideal it generates, so this is a true normal form.
pub fn normal_form(p: &Poly, ring: &QuotientRing) -> Result<Poly> {
    let (_, r) = p.divide(std::slice::from_ref(&ring.f))?;
    Ok(r)
}

/// Either a polynomial ring or a hypersurface quotient of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    Poly(Arc<PolyRing>),
    Quotient(QuotientRing),
}

impl Ring {
    pub fn base(&self) -> &Arc<PolyRing> {
        match self {
            Ring::Poly(r) => r,
            Ring::Quotient(q) => q.base(),
        }
    }

    pub fn modulus(&self) -> Option<&Poly> {
        match self {
            Ring::Poly(_) => None,
            Ring::Quotient(q) => Some(q.f()),
        }
    }

    /// Canonical representative.
    pub fn reduce(&self, p: &Poly) -> Poly {
        match self {
            Ring::Poly(_) => p.clone(),
            Ring::Quotient(q) => q.normal_form(p).expect("same ring"),
        }
    }

    pub fn is_zero(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Whether the defining polynomial (if any) is homogeneous.
    pub fn is_graded(&self) -> bool {
        self.modulus().is_none_or(|f| f.is_homogeneous())
    }
}

impl From<Arc<PolyRing>> for Ring {
    fn from(r: Arc<PolyRing>) -> Self {
        Ring::Poly(r)
    }
}

impl From<&Arc<PolyRing>> for Ring {
    fn from(r: &Arc<PolyRing>) -> Self {
        Ring::Poly(r.clone())
    }
}

impl From<QuotientRing> for Ring {
    fn from(q: QuotientRing) -> Self {
        Ring::Quotient(q)
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{}/({})", self.base, self.f)
    }
}

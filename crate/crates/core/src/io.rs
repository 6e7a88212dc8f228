//! JSON descriptors for rings, matrices, submodules and witnesses, and
//! canonical rendering (sorted keys, polynomials in the parser grammar).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::degeneration::{zwara_construct, DegenerationWitness, ZwaraSequence};
use crate::error::{Error, Result};
use crate::ideal::{FreeModuleVector, Submodule};
use crate::matfac::{FiberCertificate, Hypersurface, MatrixRepresentation};
use crate::matrix::PolyMatrix;
use crate::poly::{parse_poly, CoeffField, MonomialOrder, Poly, PolyRing, QuotientRing, Ring};

fn default_order() -> String {
    "grevlex".into()
}

/// Polynomial ring, optionally with a defining polynomial and, for
/// hypersurfaces, the presentation variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDesc {
    pub vars: Vec<String>,
    #[serde(default = "default_order")]
    pub order: String,
    #[serde(default)]
    pub char: u64,
    #[serde(default)]
    pub adjoin_i: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation_var: Option<String>,
}

impl RingDesc {
    pub fn of(ring: &PolyRing) -> Self {
        let field = ring.field();
        RingDesc {
            vars: ring.vars().to_vec(),
            order: ring.order().name().into(),
            char: field.characteristic(),
            adjoin_i: field.has_sqrt_minus_one(),
            modulus: None,
            presentation_var: None,
        }
    }

    pub fn of_ring(ring: &Ring) -> Self {
        let mut d = Self::of(ring.base());
        if let Ring::Quotient(q) = ring {
            d.modulus = Some(q.f().to_string());
            d.presentation_var = q.presentation_var().map(str::to_string);
        }
        d
    }

    pub fn of_hypersurface(hs: &Hypersurface) -> Self {
        Self::of_ring(&hs.as_ring())
    }

    pub fn field(&self) -> Result<CoeffField> {
        match self.char {
            0 => Ok(CoeffField::characteristic_zero(self.adjoin_i)),
            p => {
                let f = CoeffField::prime(p)?;
                if self.adjoin_i && !f.has_sqrt_minus_one() {
                    return Err(Error::NoSqrtMinusOne);
                }
                Ok(f)
            }
        }
    }

    /// The polynomial ring, ignoring any modulus.
    pub fn poly_ring(&self) -> Result<Arc<PolyRing>> {
        PolyRing::new(&self.vars, MonomialOrder::from_name(&self.order)?, self.field()?)
    }

    pub fn ring(&self) -> Result<Ring> {
        let base = self.poly_ring()?;
        match &self.modulus {
            None => Ok(base.into()),
            Some(f) => {
                let f = parse_poly(f, &base)?;
                Ok(QuotientRing::new(&base, f, self.presentation_var.as_deref())?.into())
            }
        }
    }

    pub fn hypersurface(&self) -> Result<Hypersurface> {
        match self.ring()? {
            Ring::Quotient(q) => Hypersurface::new(q),
            Ring::Poly(_) => Err(Error::Malformed("hypersurface descriptor without modulus".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDesc {
    pub ring: RingDesc,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDesc {
    pub fn of(m: &PolyMatrix) -> Self {
        MatrixDesc {
            ring: RingDesc::of(m.ring()),
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(Poly::to_string).collect())
                .collect(),
        }
    }

    fn parse_entries(&self, ring: &Arc<PolyRing>) -> Result<PolyMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Malformed(format!(
                "entries do not form a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| parse_poly(e, ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if self.cols == 0 {
            return Ok(PolyMatrix::zeros(ring, self.rows, 0));
        }
        PolyMatrix::from_rows(ring, rows)
    }

    pub fn matrix(&self) -> Result<PolyMatrix> {
        self.parse_entries(&self.ring.poly_ring()?)
    }

    /// Parses the entries in `ring`, which must match the descriptor.
    pub fn matrix_in(&self, ring: &Arc<PolyRing>) -> Result<PolyMatrix> {
        if self.ring.poly_ring()? != *ring {
            return Err(Error::Malformed(format!(
                "matrix ring {:?} differs from the expected {:?}",
                self.ring.vars,
                ring.vars()
            )));
        }
        self.parse_entries(ring)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleDesc {
    pub ring: RingDesc,
    pub ambient_rank: usize,
    pub gens: Vec<Vec<String>>,
}

impl SubmoduleDesc {
    pub fn of(s: &Submodule) -> Self {
        SubmoduleDesc {
            ring: RingDesc::of_ring(s.ring()),
            ambient_rank: s.ambient_rank(),
            gens: s
                .gens()
                .iter()
                .map(|g| g.entries().iter().map(Poly::to_string).collect())
                .collect(),
        }
    }

    pub fn submodule(&self) -> Result<Submodule> {
        let ring = self.ring.ring()?;
        self.submodule_in(&ring)
    }

    /// Generators parsed over `ring`, which must match the descriptor.
    pub fn submodule_in(&self, ring: &Ring) -> Result<Submodule> {
        if self.ring.ring()? != *ring {
            return Err(Error::Malformed("submodule ring differs from the expected ring".into()));
        }
        let base = ring.base();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                if g.len() != self.ambient_rank {
                    return Err(Error::Malformed(format!(
                        "generator of length {} in ambient rank {}",
                        g.len(),
                        self.ambient_rank
                    )));
                }
                FreeModuleVector::new(g.iter().map(|e| parse_poly(e, base)).collect::<Result<_>>()?)
            })
            .collect::<Result<Vec<_>>>()?;
        Submodule::new(ring.clone(), self.ambient_rank, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertDesc {
    pub left: MatrixDesc,
    pub right: MatrixDesc,
    pub model: MatrixDesc,
}

/// A matrix representation with its hypersurface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationDesc {
    pub ring: RingDesc,
    pub mu: MatrixDesc,
}

impl RepresentationDesc {
    pub fn of(mr: &MatrixRepresentation) -> Self {
        RepresentationDesc {
            ring: RingDesc::of_hypersurface(mr.hypersurface()),
            mu: MatrixDesc::of(mr.mu()),
        }
    }

    pub fn representation(&self) -> Result<MatrixRepresentation> {
        let hs = self.ring.hypersurface()?;
        let mu = self.mu.matrix_in(hs.s())?;
        MatrixRepresentation::new(&hs, mu)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDesc {
    pub ring: RingDesc,
    pub t_var: String,
    pub xi: MatrixDesc,
    pub mu: MatrixDesc,
    pub nu: MatrixDesc,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic_certificate: Option<MatrixDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_conjugator: Option<MatrixDesc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fiber_certificates: BTreeMap<String, CertDesc>,
}

impl WitnessDesc {
    pub fn of(w: &DegenerationWitness) -> Self {
        WitnessDesc {
            ring: RingDesc::of_hypersurface(w.hypersurface()),
            t_var: w.t_var().to_string(),
            xi: MatrixDesc::of(w.xi()),
            mu: MatrixDesc::of(w.source().mu()),
            nu: MatrixDesc::of(w.target().mu()),
            provenance: w.provenance().to_string(),
            symbolic_certificate: w.symbolic_certificate().map(MatrixDesc::of),
            special_conjugator: w.special_conjugator().map(MatrixDesc::of),
            fiber_certificates: w
                .fiber_certificates()
                .iter()
                .map(|(c, cert)| {
                    (
                        c.to_string(),
                        CertDesc {
                            left: MatrixDesc::of(&cert.left),
                            right: MatrixDesc::of(&cert.right),
                            model: MatrixDesc::of(&cert.model),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn witness(&self) -> Result<DegenerationWitness> {
        let hs = self.ring.hypersurface()?;
        let s = hs.s();
        let t_ring = s.with_vars(&[self.t_var.as_str()])?;
        let source = MatrixRepresentation::new(&hs, self.mu.matrix_in(s)?)?;
        let target = MatrixRepresentation::new(&hs, self.nu.matrix_in(s)?)?;
        let mut w = DegenerationWitness::new(source, target, &self.t_var, self.xi.matrix_in(&t_ring)?, &*self.provenance)?;
        if let Some(g) = &self.symbolic_certificate {
            w = w.with_symbolic_certificate(g.matrix_in(&t_ring)?);
        }
        if let Some(c) = &self.special_conjugator {
            w = w.with_special_conjugator(c.matrix_in(s)?);
        }
        for (c, cert) in &self.fiber_certificates {
            let c: i64 = c
                .parse()
                .map_err(|_| Error::Malformed(format!("fiber certificate key `{c}` is not an integer")))?;
            let cert = FiberCertificate {
                left: cert.left.matrix_in(s)?,
                right: cert.right.matrix_in(s)?,
                model: cert.model.matrix_in(s)?,
            };
            w = w.with_fiber_certificate(c, cert);
        }
        Ok(w)
    }
}

/// Input of the Zwara construction: `alpha`, `beta` on `R^n`, the regular
/// element `x` and the module `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZwaraDesc {
    pub ring: RingDesc,
    pub alpha: MatrixDesc,
    pub beta: MatrixDesc,
    pub x: String,
    pub m: SubmoduleDesc,
}

impl ZwaraDesc {
    pub fn of(seq: &ZwaraSequence) -> Self {
        ZwaraDesc {
            ring: RingDesc::of_ring(&seq.ring),
            alpha: MatrixDesc::of(&seq.alpha),
            beta: MatrixDesc::of(&seq.beta),
            x: seq.x.to_string(),
            m: SubmoduleDesc::of(&seq.m),
        }
    }

    /// Parsed inputs, checked for consistent rings and sizes.
    pub fn parts(&self) -> Result<(Ring, PolyMatrix, PolyMatrix, Poly, Submodule)> {
        let ring = self.ring.ring()?;
        let base = ring.base();
        let alpha = self.alpha.matrix_in(base)?;
        let beta = self.beta.matrix_in(base)?;
        let x = parse_poly(&self.x, base)?;
        let m = self.m.submodule_in(&ring)?;
        Ok((ring, alpha, beta, x, m))
    }

    pub fn construct(&self) -> Result<ZwaraSequence> {
        let (_, alpha, beta, x, m) = self.parts()?;
        zwara_construct(alpha.require_square()?, &alpha, &beta, &x, &m)
    }
}

/// A constructed sequence: the inputs plus `Z`, `eta`, `N` and the
/// projection blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceDesc {
    #[serde(flatten)]
    pub input: ZwaraDesc,
    pub z: SubmoduleDesc,
    pub eta: MatrixDesc,
    pub eta_images: Vec<Vec<String>>,
    pub n: SubmoduleDesc,
    pub pi_m: MatrixDesc,
    pub pi_z: MatrixDesc,
}

impl SequenceDesc {
    pub fn of(seq: &ZwaraSequence) -> Self {
        SequenceDesc {
            input: ZwaraDesc::of(seq),
            z: SubmoduleDesc::of(&seq.z),
            eta: MatrixDesc::of(&seq.eta),
            eta_images: seq
                .eta_images
                .iter()
                .map(|v| v.entries().iter().map(Poly::to_string).collect())
                .collect(),
            n: SubmoduleDesc::of(&seq.n),
            pi_m: MatrixDesc::of(&seq.pi_m),
            pi_z: MatrixDesc::of(&seq.pi_z),
        }
    }
}

/// Pretty JSON with keys sorted at every level, newline-terminated.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Malformed(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Malformed(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{iterated_knoerrer_witness, thm31_witness};
    use crate::degeneration::verify_witness;
    use crate::report::Verdict;

    #[test]
    fn witness_round_trip() {
        let w = thm31_witness(1, 3).unwrap();
        let text = to_canonical_json(&WitnessDesc::of(&w)).unwrap();
        let back = from_json::<WitnessDesc>(&text).unwrap().witness().unwrap();
        assert_eq!(back, w);
        assert_eq!(to_canonical_json(&WitnessDesc::of(&back)).unwrap(), text);
    }

    #[test]
    fn lifted_witness_keeps_certificates() {
        let w = iterated_knoerrer_witness(1, 2, 3, &[1, 2, 3]).unwrap();
        let text = to_canonical_json(&WitnessDesc::of(&w)).unwrap();
        let back = from_json::<WitnessDesc>(&text).unwrap().witness().unwrap();
        assert_eq!(back.fiber_certificates().len(), 3);
        assert_eq!(verify_witness(&back).unwrap().verdict, Verdict::Valid);
    }

    #[test]
    fn keys_sorted_and_defaults() {
        let d: RingDesc = from_json(r#"{"vars": ["x", "y"]}"#).unwrap();
        assert_eq!(d.order, "grevlex");
        let text = to_canonical_json(&d).unwrap();
        let keys: Vec<usize> = ["adjoin_i", "char", "order", "vars"].iter().map(|k| text.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn zwara_input_round_trip() {
        use crate::degeneration::verify_exactness;
        let base = PolyRing::rational(&["x", "y"]);
        let ring: Ring = QuotientRing::new(&base, parse_poly("x^2", &base).unwrap(), Some("x")).unwrap().into();
        let alpha = PolyMatrix::parse(&base, &[&["x"]]).unwrap();
        let gens = ["x", "y"]
            .iter()
            .map(|g| FreeModuleVector::new(vec![parse_poly(g, &base).unwrap()]).unwrap())
            .collect();
        let m = Submodule::new(ring.clone(), 1, gens).unwrap();
        let seq = zwara_construct(1, &alpha, &alpha, &parse_poly("y", &base).unwrap(), &m).unwrap();
        let text = to_canonical_json(&SequenceDesc::of(&seq)).unwrap();
        let desc: ZwaraDesc = from_json(&text).unwrap();
        let again = desc.construct().unwrap();
        assert_eq!(again, seq);
        assert_eq!(verify_exactness(&again).unwrap().verdict, Verdict::Exact);
    }

    #[test]
    fn malformed_inputs() {
        let m = MatrixDesc {
            ring: RingDesc::of(&PolyRing::rational(&["y"])),
            rows: 2,
            cols: 1,
            entries: vec![vec!["y".into()]],
        };
        assert!(matches!(m.matrix(), Err(Error::Malformed(_))));
        let bad: RingDesc = from_json(r#"{"vars": ["x"], "char": 7, "adjoin_i": true}"#).unwrap();
        assert!(bad.poly_ring().is_err());
        assert!(from_json::<RingDesc>("{").is_err());
    }
}

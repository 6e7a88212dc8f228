use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::field::CoeffField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GrevLex,
}

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::GrevLex => "grevlex",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::GrLex),
            "grevlex" => Ok(MonomialOrder::GrevLex),
            other => Err(Error::InvalidRing(format!("unknown monomial order `{other}`"))),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Exponent vector; its length always equals the owning ring's variable count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
    field: CoeffField,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder, field: CoeffField) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if v == "i" && field.has_sqrt_minus_one() {
                return Err(Error::InvalidRing(
                    "`i` is reserved for the square root of -1".into(),
                ));
            }
            if vars[..i].contains(v) {
                return Err(Error::VariableClash(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { vars, order, field }))
    }

    /// Rational polynomial ring with the default order.
    pub fn rational<S: AsRef<str>>(vars: &[S]) -> Arc<Self> {
        Self::new(vars, MonomialOrder::GrevLex, CoeffField::Rationals).expect("valid variables")
    }

    pub fn gaussian<S: AsRef<str>>(vars: &[S]) -> Arc<Self> {
        Self::new(vars, MonomialOrder::GrevLex, CoeffField::GaussianRationals)
            .expect("valid variables")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> &CoeffField {
        &self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn require_var(&self, name: &str) -> Result<usize> {
        self.var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// The same ring with extra variables appended.
    pub fn with_vars<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<Self>> {
        let mut vars = self.vars.clone();
        for v in extra {
            if self.var_index(v.as_ref()).is_some() {
                return Err(Error::VariableClash(v.as_ref().to_string()));
            }
            vars.push(v.as_ref().to_string());
        }
        Self::new(&vars, self.order, self.field.clone())
    }

    pub fn without_var(&self, name: &str) -> Result<Arc<Self>> {
        self.require_var(name)?;
        let vars: Vec<&String> = self.vars.iter().filter(|v| *v != name).collect();
        Self::new(&vars, self.order, self.field.clone())
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            order,
            field: self.field.clone(),
        })
    }

    pub fn with_field(&self, field: CoeffField) -> Result<Arc<Self>> {
        Self::new(&self.vars, self.order, field)
    }

    /// Variables renamed through `map`; unmapped names are kept.
    pub fn renamed(&self, map: &[(&str, &str)]) -> Result<Arc<Self>> {
        let vars: Vec<String> = self
            .vars
            .iter()
            .map(|v| {
                map.iter()
                    .find(|(from, _)| from == v)
                    .map(|(_, to)| to.to_string())
                    .unwrap_or_else(|| v.clone())
            })
            .collect();
        Self::new(&vars, self.order, self.field.clone())
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] ({})", self.field, self.vars.join(","), self.order.name())
    }
}

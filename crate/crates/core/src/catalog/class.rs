use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Isomorphism class kinds. Variant order fixes the block order of
/// recognition models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum ClassKind {
    Free(u32),
    IdealA(u32),
    IdealB(u32),
    RmodX,
}

/// An indecomposable (or free) Cohen-Macaulay module over the
/// one-dimensional ring k[x,y]/(x^2) or the two-dimensional ring
/// k[x,y,z]/(x^2 - xy).
///
/// In dimension two `IdealA(0)` is the principal ideal (x) and `IdealB(0)`
/// is (x - y).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CMClass {
    pub dim: u8,
    pub kind: ClassKind,
}

impl CMClass {
    pub fn new(dim: u8, kind: ClassKind) -> Result<Self> {
        let ok = match (dim, kind) {
            (1 | 2, ClassKind::Free(r)) => r >= 1,
            (1, ClassKind::RmodX) => true,
            (1, ClassKind::IdealA(n)) => n >= 1,
            (2, ClassKind::IdealA(_) | ClassKind::IdealB(_)) => true,
            _ => false,
        };
        if ok {
            Ok(CMClass { dim, kind })
        } else {
            Err(Error::Unsupported(format!("no class {kind:?} in dimension {dim}")))
        }
    }

    pub fn free(dim: u8) -> Self {
        CMClass {
            dim,
            kind: ClassKind::Free(1),
        }
    }

    pub fn ideal_a(dim: u8, n: u32) -> Self {
        CMClass::new(dim, ClassKind::IdealA(n)).expect("valid ideal class")
    }

    pub fn ideal_b(n: u32) -> Self {
        CMClass {
            dim: 2,
            kind: ClassKind::IdealB(n),
        }
    }

    pub fn rmodx() -> Self {
        CMClass {
            dim: 1,
            kind: ClassKind::RmodX,
        }
    }

    /// Position on the dimension-one chain: R is 0, (x, y^n) is n.
    pub fn chain_index(&self) -> Option<u32> {
        match (self.dim, self.kind) {
            (1, ClassKind::Free(1)) => Some(0),
            (1, ClassKind::IdealA(n)) => Some(n),
            _ => None,
        }
    }

    /// Dimension-one class at chain position `a`.
    pub fn from_chain_index(a: u32) -> Self {
        if a == 0 {
            CMClass::free(1)
        } else {
            CMClass::ideal_a(1, a)
        }
    }

    /// Matrix size of the catalog representation.
    pub fn rank_over_s(&self) -> usize {
        match (self.dim, self.kind) {
            (_, ClassKind::Free(r)) => 2 * r as usize,
            (1, ClassKind::RmodX) => 1,
            (2, ClassKind::IdealA(0) | ClassKind::IdealB(0)) => 1,
            _ => 2,
        }
    }

    pub fn label(&self) -> String {
        let pw = |v: &str, n: u32| if n == 1 { v.to_string() } else { format!("{v}^{n}") };
        match (self.dim, self.kind) {
            (_, ClassKind::Free(1)) => "R".into(),
            (_, ClassKind::Free(r)) => format!("R^{r}"),
            (_, ClassKind::RmodX) => "R/(x)".into(),
            (1, ClassKind::IdealA(n)) => format!("(x,{})", pw("y", n)),
            (_, ClassKind::IdealA(0)) => "(x)".into(),
            (_, ClassKind::IdealB(0)) => "(x-y)".into(),
            (_, ClassKind::IdealA(n)) => format!("(x,{})", pw("z", n)),
            (_, ClassKind::IdealB(n)) => format!("(x-y,{})", pw("z", n)),
        }
    }

    /// Label in the original coordinates of k[x,y,z]/(xy), where x - y
    /// becomes y.
    pub fn alias(&self) -> String {
        match (self.dim, self.kind) {
            (2, ClassKind::IdealB(0)) => "(y)".into(),
            (2, ClassKind::IdealB(1)) => "(y,z)".into(),
            (2, ClassKind::IdealB(n)) => format!("(y,z^{n})"),
            _ => self.label(),
        }
    }
}

impl fmt::Display for CMClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_dimension_compatibility() {
        assert!(CMClass::new(1, ClassKind::IdealB(1)).is_err());
        assert!(CMClass::new(1, ClassKind::IdealA(0)).is_err());
        assert!(CMClass::new(2, ClassKind::RmodX).is_err());
        assert!(CMClass::new(2, ClassKind::IdealB(0)).is_ok());
        assert!(CMClass::new(3, ClassKind::Free(1)).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(CMClass::from_chain_index(0).label(), "R");
        assert_eq!(CMClass::from_chain_index(3).label(), "(x,y^3)");
        assert_eq!(CMClass::ideal_b(2).alias(), "(y,z^2)");
        assert_eq!(CMClass::rmodx().label(), "R/(x)");
    }
}

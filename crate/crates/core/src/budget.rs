use std::env;

use crate::error::{Error, Result};

/// Name of the environment variable selecting a budget profile.
pub const PROFILE_VAR: &str = "DEGENLAB_BUDGET_PROFILE";

/// Search limits shared by the screens and witness verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Largest power of `t` tried in saturation containments.
    pub l_max: usize,
    /// Largest Fitting index compared.
    pub i_max: usize,
    /// Largest minor size screened; `None` means the matrix size.
    pub j_max: Option<usize>,
    /// Nonzero parameter values at which generic fibers are sampled.
    pub samples: Vec<i64>,
    /// Intertwiner degree bound as a multiple of the largest entry degree.
    pub degree_factor: u32,
    pub seed: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            l_max: 8,
            i_max: 4,
            j_max: None,
            samples: vec![1, 2, 3],
            degree_factor: 2,
            seed: 0x5eed,
        }
    }
}

impl Budgets {
    pub fn profile(name: &str) -> Result<Self> {
        let d = Budgets::default();
        match name {
            "default" => Ok(d),
            "small" => Ok(Budgets {
                l_max: 4,
                i_max: 2,
                degree_factor: 1,
                ..d
            }),
            "large" => Ok(Budgets {
                l_max: 16,
                i_max: 8,
                samples: vec![1, 2, 3, 5, 7],
                degree_factor: 3,
                ..d
            }),
            other => Err(Error::Malformed(format!(
                "unknown budget profile `{other}` (expected small, default or large)"
            ))),
        }
    }

    /// Profile named by the environment, the default when unset.
    pub fn from_env() -> Result<Self> {
        match env::var(PROFILE_VAR) {
            Ok(name) => Self::profile(name.trim()),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn j_max_for(&self, size: usize) -> usize {
        self.j_max.map_or(size, |j| j.min(size))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_scale() {
        let s = Budgets::profile("small").unwrap();
        let l = Budgets::profile("large").unwrap();
        assert!(s.l_max < Budgets::default().l_max && Budgets::default().l_max < l.l_max);
        assert!(Budgets::profile("huge").is_err());
        assert_eq!(Budgets::default().j_max_for(3), 3);
    }
}

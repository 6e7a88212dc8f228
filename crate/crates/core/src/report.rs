use std::fmt;

use serde::{Deserialize, Serialize};

/// Machine-readable outcome of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Invalid,
    Consistent,
    Obstructed,
    Inconclusive,
    Exact,
    NotExact,
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
            Verdict::Consistent => "consistent",
            Verdict::Obstructed => "obstructed",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Exact => "exact",
            Verdict::NotExact => "not_exact",
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }

    /// 0 for positive verdicts, 2 for negative ones, 3 when undecided.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Valid | Verdict::Consistent | Verdict::Exact | Verdict::Yes => 0,
            Verdict::Invalid | Verdict::Obstructed | Verdict::NotExact | Verdict::No => 2,
            Verdict::Inconclusive | Verdict::Unknown => 3,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.exit_code() == 0
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Status of a single named check inside a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status,
            detail: detail.into(),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, detail)
    }
}

/// Fail dominates, then inconclusive.
pub fn combine(checks: &[Check], pass: Verdict, fail: Verdict) -> Verdict {
    if checks.iter().any(|c| c.status == Status::Fail) {
        fail
    } else if checks.iter().any(|c| c.status == Status::Inconclusive) {
        Verdict::Inconclusive
    } else {
        pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Exact.exit_code(), 0);
        assert_eq!(Verdict::NotExact.exit_code(), 2);
        assert_eq!(Verdict::Inconclusive.exit_code(), 3);
        assert_eq!(serde_json::to_string(&Verdict::NotExact).unwrap(), "\"not_exact\"");
    }

    #[test]
    fn combination_order() {
        let pass = Check::from_bool("a", true, "");
        let inc = Check::new("b", Status::Inconclusive, "");
        let fail = Check::from_bool("c", false, "");
        assert_eq!(combine(std::slice::from_ref(&pass), Verdict::Valid, Verdict::Invalid), Verdict::Valid);
        assert_eq!(combine(&[pass.clone(), inc.clone()], Verdict::Valid, Verdict::Invalid), Verdict::Inconclusive);
        assert_eq!(combine(&[inc, fail], Verdict::Valid, Verdict::Invalid), Verdict::Invalid);
    }
}

//! Printed-versus-derived comparison records.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrataVerdict {
    /// The printed value agrees with the derived one.
    Confirmed,
    /// The printed value is wrong and a corrected form was derived and checked.
    Typo,
    /// The printed value is wrong and no single correction is asserted.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrataRecord {
    pub location: String,
    pub printed: String,
    pub derived: String,
    pub verdict: ErrataVerdict,
    pub evidence: String,
}

impl ErrataRecord {
    pub fn new(location: &str, printed: impl Into<String>, derived: impl Into<String>, verdict: ErrataVerdict, evidence: impl Into<String>) -> Self {
        ErrataRecord {
            location: location.to_string(),
            printed: printed.into(),
            derived: derived.into(),
            verdict,
            evidence: evidence.into(),
        }
    }

    /// Confirmed when `ok`, else the given failure verdict.
    pub fn check(location: &str, printed: impl Into<String>, derived: impl Into<String>, ok: bool, on_fail: ErrataVerdict, evidence: impl Into<String>) -> Self {
        let verdict = if ok { ErrataVerdict::Confirmed } else { on_fail };
        Self::new(location, printed, derived, verdict, evidence)
    }
}

/// Every comparison in the crate, cubic family first.
pub fn full_report() -> Vec<ErrataRecord> {
    let mut out = crate::family_cubic::errata_report();
    out.extend(crate::family_power::errata_report());
    out.extend(crate::sextic::errata_report());
    out
}

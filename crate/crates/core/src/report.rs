//! Pass/fail records for identity sweeps and conjecture probes.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// The first failing instance of a check, with both computed sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub at: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(at: impl ToString, lhs: impl ToString, rhs: impl ToString) -> Self {
        Witness {
            at: at.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Outcome of a check over a parameter range. A failed report always carries
/// a witness; `details` keeps insertion order for stable output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub id: String,
    pub params: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub details: Vec<(String, String)>,
}

impl Report {
    pub fn pass(id: impl ToString, params: impl ToString) -> Self {
        Report {
            id: id.to_string(),
            params: params.to_string(),
            passed: true,
            witness: None,
            details: Vec::new(),
        }
    }

    pub fn fail(id: impl ToString, params: impl ToString, witness: Witness) -> Self {
        Report {
            id: id.to_string(),
            params: params.to_string(),
            passed: false,
            witness: Some(witness),
            details: Vec::new(),
        }
    }

    /// `pass` when `witness` is `None`, `fail` otherwise.
    pub fn from_witness(
        id: impl ToString,
        params: impl ToString,
        witness: Option<Witness>,
    ) -> Self {
        match witness {
            None => Report::pass(id, params),
            Some(w) => Report::fail(id, params, w),
        }
    }

    pub fn with_detail(mut self, key: impl ToString, value: impl ToString) -> Self {
        self.details.push((key.to_string(), value.to_string()));
        self
    }

    pub fn detail(&self, key: &str) -> Option<&str> {
        self.details
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{} [{}]: {}", self.id, self.params, verdict)?;
        if let Some(w) = &self.witness {
            write!(f, " at {}: {} != {}", w.at, w.lhs, w.rhs)?;
        }
        for (k, v) in &self.details {
            write!(f, "; {k}={v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_reports_carry_witnesses() {
        let r = Report::from_witness("sum1", "m<=3", Some(Witness::new("m=2", "1", "2")));
        assert!(!r.passed);
        assert!(r.witness.is_some());
        let ok = Report::pass("sum1", "m<=3").with_detail("checked", 4);
        assert!(ok.passed);
        assert_eq!(ok.detail("checked"), Some("4"));
        assert_eq!(alloc::format!("{ok}"), "sum1 [m<=3]: pass; checked=4");
    }
}

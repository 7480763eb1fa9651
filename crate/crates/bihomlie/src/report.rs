//! Verification reports: a named list of checks, each pass/fail with a
//! re-checkable witness on failure. Check order and witness choice are
//! deterministic, so serialized reports are byte-identical across runs.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The first offending basis tuple, in lexicographic order, together with
/// the nonzero residual so the failure can be re-checked independently.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub residual: Vec<Scalar>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Informational remarks; never part of the pass/fail verdict.
    pub notes: Vec<String>,
}

// Serialized with a computed `overall` field so emitted reports always
// satisfy `overall = conjunction of checks`.
impl Serialize for VerificationReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let fields = if self.notes.is_empty() { 2 } else { 3 };
        let mut state = serializer.serialize_struct("VerificationReport", fields)?;
        state.serialize_field("checks", &self.checks)?;
        state.serialize_field(
            "overall",
            if self.overall() { &Status::Pass } else { &Status::Fail },
        )?;
        if !self.notes.is_empty() {
            state.serialize_field("notes", &self.notes)?;
        }
        state.end()
    }
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn overall(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn push(&mut self, name: &str, witness: Option<Witness>) {
        self.checks.push(Check {
            name: name.to_string(),
            status: if witness.is_none() {
                Status::Pass
            } else {
                Status::Fail
            },
            witness,
        });
    }

    pub fn push_pass(&mut self, name: &str) {
        self.push(name, None);
    }

    pub fn push_fail(&mut self, name: &str, witness: Witness) {
        self.push(name, Some(witness));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_is_conjunction() {
        let mut r = VerificationReport::new();
        r.push_pass("a");
        assert!(r.overall());
        r.push_fail(
            "b",
            Witness {
                tuple: vec![0, 1],
                residual: vec![Scalar::one()],
            },
        );
        assert!(!r.overall());
        assert_eq!(r.first_failure().unwrap().name, "b");
    }

    #[test]
    fn serialization_is_deterministic() {
        let mut r = VerificationReport::new();
        r.push_pass("x");
        r.push_fail(
            "y",
            Witness {
                tuple: vec![2],
                residual: vec![Scalar::ratio(-1, 2)],
            },
        );
        assert_eq!(r.render_json(), r.clone().render_json());
        assert!(r.render_json().contains("-1/2"));
        let value: serde_json::Value = serde_json::from_str(&r.render_json()).unwrap();
        assert_eq!(value["overall"], "fail");
    }
}

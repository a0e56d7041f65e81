use std::fmt;

use serde::Serialize;

use crate::gf2::BitVector;

/// One failed invariant, with the vectors that exhibit the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub invariant: String,
    pub detail: String,
    #[serde(serialize_with = "as_bit_strings")]
    pub witnesses: Vec<BitVector>,
}

/// Outcome of a validation pass. It fails iff `violations` is non-empty;
/// `notes` carry informational findings that never cause failure.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self {
            pass: true,
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(
        &mut self,
        invariant: impl Into<String>,
        detail: impl Into<String>,
        witnesses: Vec<BitVector>,
    ) {
        self.violations.push(Violation {
            invariant: invariant.into(),
            detail: detail.into(),
            witnesses,
        });
        self.pass = false;
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for v in other.violations {
            self.violation(v.invariant, v.detail, v.witnesses);
        }
        self.notes.extend(other.notes);
    }

    pub fn has_violation(&self, invariant: &str) -> bool {
        self.violations.iter().any(|v| v.invariant == invariant)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })?;
        for v in &self.violations {
            write!(f, "  violation [{}]: {}", v.invariant, v.detail)?;
            if !v.witnesses.is_empty() {
                let w: Vec<_> = v.witnesses.iter().map(|x| x.to_string()).collect();
                write!(f, " (witness {})", w.join(", "))?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

fn as_bit_strings<S: serde::Serializer>(v: &[BitVector], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

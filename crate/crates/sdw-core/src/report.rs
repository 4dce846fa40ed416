use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Closed verdict vocabulary for all checks.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", content = "bound"))]
pub enum Verdict {
    #[cfg_attr(feature = "serde", serde(rename = "true"))]
    True,
    #[cfg_attr(feature = "serde", serde(rename = "false"))]
    False,
    #[cfg_attr(feature = "serde", serde(rename = "verified_up_to_bound"))]
    VerifiedUpToBound(u32),
    #[cfg_attr(feature = "serde", serde(rename = "unknown"))]
    Unknown,
    #[cfg_attr(feature = "serde", serde(rename = "unsupported"))]
    Unsupported,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    /// Whether this verdict counts as a positive outcome.
    pub fn is_positive(&self) -> bool {
        matches!(self, Verdict::True | Verdict::VerifiedUpToBound(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => write!(f, "true"),
            Verdict::False => write!(f, "false"),
            Verdict::VerifiedUpToBound(b) => write!(f, "verified_up_to_bound({b})"),
            Verdict::Unknown => write!(f, "unknown"),
            Verdict::Unsupported => write!(f, "unsupported"),
        }
    }
}

/// Provenance of a hypothesis flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Provenance {
    VerifiedByComputation,
    AssertedByUser,
    Unknown,
}

/// A named hypothesis with its provenance, as used by the theorem
/// harnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HypothesisUse {
    pub name: String,
    pub provenance: Provenance,
}

/// One check outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckRecord {
    pub name: String,
    pub inputs: String,
    pub verdict: Verdict,
    pub witness: String,
    pub hypotheses: Vec<HypothesisUse>,
    pub timing_ms: u64,
}

impl CheckRecord {
    pub fn new(name: &str, inputs: &str, verdict: Verdict, witness: &str) -> Self {
        CheckRecord {
            name: String::from(name),
            inputs: String::from(inputs),
            verdict,
            witness: String::from(witness),
            hypotheses: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn with_hypothesis(mut self, name: &str, provenance: Provenance) -> Self {
        self.hypotheses.push(HypothesisUse {
            name: String::from(name),
            provenance,
        });
        self
    }
}

/// Verdict record for a whole run: tool version, seed, per-check records.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckReport {
    pub version: String,
    pub seed: u64,
    pub records: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn new(version: &str, seed: u64) -> Self {
        CheckReport {
            version: String::from(version),
            seed,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    /// Absorbs another report's records, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut r in other.records {
            if !prefix.is_empty() {
                r.name = alloc::format!("{prefix}.{}", r.name);
            }
            self.records.push(r);
        }
    }

    pub fn all_positive(&self) -> bool {
        self.records.iter().all(|r| r.verdict.is_positive())
    }
}

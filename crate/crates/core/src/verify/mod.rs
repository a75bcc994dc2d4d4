//! Checks on jump loci: the propagation package, acyclicity off the top
//! degree, abelian duality, Betti bounds, and the fiber oracle that
//! recomputes cohomology pointwise.

mod duality;
mod fiber;
mod oracle;
mod propagation;
mod smith;

use std::fmt;

use serde_json::{json, Value};

pub use duality::{
    acyclic_off_top, duality_check, lemma_equal_check, Acyclicity, AcyclicityClause,
    AcyclicityWitness, DualityVerdict, FieldOutcome, Verdict, PRIME_CAVEAT,
};
pub use fiber::{fiber_betti, FiberBetti};
pub use oracle::{
    run_oracle, sample_points, OracleMismatch, OracleReport, OracleRow, DEFAULT_ORACLE_POINTS,
};
pub use propagation::{betti_bounds, verify_components, verify_propagation};
pub use smith::smith_normal_form;

use crate::error::{Error, Result};

/// Which degree plays the role of the top locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexingMode {
    /// The highest degree is relabeled `0`; loci are `V^0 ⊇ V^{-1} ⊇ ...`.
    Perverse,
    /// Degrees are kept; `n` is the top and loci are `V^n ⊇ V^{n-1} ⊇ ...`.
    Space(i64),
}

impl IndexingMode {
    /// The actual degree of the top locus for a complex spanning `[lo, hi]`.
    pub fn top(&self, lo: i64, hi: i64) -> Result<i64> {
        match *self {
            IndexingMode::Perverse => Ok(hi),
            IndexingMode::Space(n) => {
                if n < lo || n > hi {
                    return Err(Error::Invalid(format!(
                        "space mode n = {n} outside the degree span [{lo}, {hi}]"
                    )));
                }
                Ok(n)
            }
        }
    }

    /// Label of the actual degree `i` in this mode, for a complex whose top
    /// degree is `top`.
    pub fn label(&self, i: i64, top: i64) -> i64 {
        match self {
            IndexingMode::Perverse => i - top,
            IndexingMode::Space(_) => i,
        }
    }

    pub fn parse(s: &str) -> Result<IndexingMode> {
        match s {
            "perverse" => Ok(IndexingMode::Perverse),
            _ => s
                .strip_prefix("space:")
                .and_then(|n| n.parse().ok())
                .map(IndexingMode::Space)
                .ok_or_else(|| Error::parse(s, "expected 'perverse' or 'space:<n>'")),
        }
    }
}

impl fmt::Display for IndexingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexingMode::Perverse => write!(f, "perverse"),
            IndexingMode::Space(n) => write!(f, "space:{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail)
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::Skipped(r) => write!(f, "skipped ({r})"),
        }
    }
}

/// Outcome of one property, with the degrees and data it rests on.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyRecord {
    pub status: Status,
    pub witness: Value,
}

impl PropertyRecord {
    pub fn new(status: Status, witness: Value) -> Self {
        PropertyRecord { status, witness }
    }

    pub fn skipped(reason: &str) -> Self {
        PropertyRecord {
            status: Status::Skipped(reason.to_string()),
            witness: Value::Null,
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.status {
            Status::Skipped(r) => json!({ "status": "skipped", "reason": r }),
            s => json!({ "status": s.to_string(), "witness": self.witness }),
        }
    }
}

/// Named property records in a fixed order, for one indexing mode.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub mode: IndexingMode,
    pub properties: Vec<(String, PropertyRecord)>,
}

impl VerificationReport {
    pub fn get(&self, name: &str) -> Option<&PropertyRecord> {
        self.properties
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
    }

    pub fn set(&mut self, name: &str, record: PropertyRecord) {
        match self.properties.iter_mut().find(|(n, _)| n == name) {
            Some((_, r)) => *r = record,
            None => self.properties.push((name.to_string(), record)),
        }
    }

    /// No checked property failed (skipped ones do not count).
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|(_, r)| !r.status.is_fail())
    }

    pub fn to_json(&self) -> Value {
        let props: serde_json::Map<String, Value> = self
            .properties
            .iter()
            .map(|(n, r)| (n.clone(), r.to_json()))
            .collect();
        json!({ "mode": self.mode.to_string(), "properties": props })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode {}", self.mode)?;
        for (name, r) in &self.properties {
            match &r.status {
                Status::Skipped(_) => writeln!(f, "  ({name}) {}", r.status)?,
                s => writeln!(f, "  ({name}) {s}  {}", r.witness)?,
            }
        }
        Ok(())
    }
}

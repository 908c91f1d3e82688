//! Centralized ground truth and checkers. Nothing in here is used by the
//! distributed protocols.

mod structure;
mod verify;

use crate::sim::VertexId;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub use structure::{degeneracy, exact_arboricity, log_star, OracleError, EXACT_ARBORICITY_LIMIT};
pub use verify::{
    verify_arbdefective_witness, verify_coloring, verify_forest_decomposition, verify_h_partition,
    verify_mis, verify_partial_orientation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Solution has the wrong length or a vertex has no valid assignment.
    Coverage,
    DegreeBound,
    /// An edge with no orientation, or a claimed arc that is not an edge.
    Unoriented,
    NotAnEdge,
    DoublyOriented,
    DuplicateLabel,
    LabelOutOfRange,
    ForestCycle,
    OrientationCycle,
    TooManyForests,
    ColorOutOfRange,
    Monochromatic,
    DefectExceeded,
    ClassDegeneracy,
    ClassArboricity,
    DeficitExceeded,
    OutDegreeExceeded,
    WitnessExceeded,
    NotIndependent,
    NotMaximal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub vertices: Vec<VertexId>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at {:?}", self.kind, self.vertices)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    pub measured: BTreeMap<String, u64>,
}

impl VerificationReport {
    fn new(violations: Vec<Violation>, measured: BTreeMap<String, u64>) -> Self {
        VerificationReport {
            ok: violations.is_empty(),
            violations,
            measured,
        }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn measured(&self, key: &str) -> Option<u64> {
        self.measured.get(key).copied()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ok: {}", self.ok)?;
        for (k, v) in &self.measured {
            writeln!(f, "{k}: {v}")?;
        }
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

//! Structured reports for conjecture-sized claims.
//!
//! Failures of the conjectural properties (lattice stability, basis
//! property, global-basis existence, bar well-definedness) are first-class
//! outputs, not exceptions: a run that finds one still terminates normally
//! and serializes what it found.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportKind {
    /// A generated vector left the ring of functions regular at q = 0.
    LatticeViolation,
    /// An element expected inside the crystal lattice failed membership.
    NotInLattice,
    /// A string decomposition did not exist or was not unique.
    DecompositionFailure,
    /// A modified lowering operator produced zero on a nonzero element.
    LoweringVanished,
    /// An arrow whose raising operator does not lead back to its source.
    GraphInverseFailure,
    /// Crystal node count differs from the block dimension.
    NodeCountMismatch,
    /// Conjugating a radical vector left the radical.
    BarRadicalInstability,
    /// The bar-fixed integral global-basis solve failed or was ambiguous.
    GlobalBasisFailure,
    /// A balanced-triple condition failed on a block.
    BalancedConditionFailure,
    /// A value expected regular at q = 1 had a pole.
    PoleAtOne,
}

/// One empirical finding, with enough data to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub kind: ReportKind,
    /// Block label in carrier notation.
    pub block: String,
    /// Generating word or element implicated, when applicable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub detail: String,
}

impl ConjectureReport {
    pub fn new(kind: ReportKind, block: String, detail: String) -> Self {
        ConjectureReport {
            kind,
            block,
            witness: None,
            detail,
        }
    }

    pub fn with_witness(mut self, witness: String) -> Self {
        self.witness = Some(witness);
        self
    }
}

//! Serializable artifacts: graph documents, global-basis documents and
//! verification reports, with DOT and JSON renderings.
//!
//! All output is deterministic: nodes sorted by id, arrows by
//! (source, color, target), maps are ordered, and every exact scalar is
//! rendered through its canonical string form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use symcrys_core::crystal::{BalancedReport, Carrier, ConjectureReport, CrystalBuild};
use symcrys_core::heckeb::RelationReport;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub depth: u32,
    pub config: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: usize,
    pub block: String,
    /// Witness word in application order, comma-joined.
    pub witness: String,
    /// Exact rationals (`p` or `p/q`) in the lattice frame at q = 0.
    pub representative: Vec<String>,
    /// String lengths toward the vacuum per color.
    pub epsilon: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub from: usize,
    pub color: i64,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub metadata: Metadata,
    pub nodes: Vec<NodeDoc>,
    pub arrows: Vec<ArrowDoc>,
    pub reports: Vec<ConjectureReport>,
}

impl GraphDocument {
    pub fn from_build<C: Carrier>(
        carrier: &C,
        build: &CrystalBuild<C>,
        metadata: Metadata,
    ) -> Self {
        let nodes = build
            .graph
            .nodes
            .iter()
            .map(|n| NodeDoc {
                id: n.id,
                block: carrier.block_label(&n.block),
                witness: symcrys_core::crystal::witness_string(&n.witness),
                representative: n.representative.iter().map(|r| r.to_string()).collect(),
                epsilon: n.epsilon.iter().map(|(i, e)| (i.to_string(), *e)).collect(),
            })
            .collect();
        let arrows = build
            .graph
            .arrows
            .iter()
            .map(|a| ArrowDoc {
                from: a.from,
                color: a.color,
                to: a.to,
            })
            .collect();
        GraphDocument {
            metadata,
            nodes,
            arrows,
            reports: build.reports.clone(),
        }
    }

    /// DOT rendering: one node statement per crystal node (label = witness
    /// word), one edge per arrow carrying its color.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph crystal {\n");
        out.push_str("  rankdir=LR;\n");
        out.push_str("  node [shape=circle];\n");
        for n in &self.nodes {
            out.push_str(&format!("  \"n{}\" [label=\"{}\"];\n", n.id, n.witness));
        }
        let mut arrows = self.arrows.clone();
        arrows.sort_by_key(|a| (a.from, a.color, a.to));
        for a in arrows {
            out.push_str(&format!(
                "  \"n{}\" -> \"n{}\" [label=\"{}\", color=\"{}\"];\n",
                a.from, a.to, a.color, a.color
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// One element of a global basis: labeled monomial terms with exact
/// coefficient strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub monomial: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalBasisBlockDoc {
    pub block: String,
    /// Witness words of the block's crystal nodes.
    pub nodes: Vec<String>,
    pub lower: Vec<ElementDoc>,
    pub upper: Vec<ElementDoc>,
    pub balanced: BalancedReport,
    pub reports: Vec<ConjectureReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalBasisDocument {
    pub metadata: Metadata,
    pub blocks: Vec<GlobalBasisBlockDoc>,
    pub reports: Vec<ConjectureReport>,
}

/// A named check with pass/fail and optional detail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDocument {
    pub metadata: Metadata,
    pub checks: Vec<CheckDoc>,
}

impl VerificationDocument {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeDocument {
    pub metadata: Metadata,
    pub report: RelationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimFormulaDocument {
    pub metadata: Metadata,
    pub witness: String,
    pub eseq: String,
    /// Exact rational value of the pairing at q = 1.
    pub value: String,
}

/// Pretty JSON with a trailing newline; field order is fixed by the
/// document structs, map order by the ordered containers.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

//! Crystal graphs: breadth-first closure of the vacuum under the modified
//! lowering operators, with node identity decided exactly at `q = 0` in the
//! lattice frame.

use std::collections::BTreeMap;

use crate::scalars::Rat;

use super::lattice::{InsertOutcome, Lattice};
use super::report::{ConjectureReport, ReportKind};
use super::{Carrier, CrystalError, Engine};

/// A crystal node: an exact `q = 0` class in its block.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalNode<B> {
    pub id: usize,
    pub block: B,
    /// Coefficients in the lattice frame, evaluated at `q = 0`.
    pub representative: Vec<Rat>,
    /// Shortest generating word, in application order (first letter applied
    /// to the vacuum first).
    pub witness: Vec<i64>,
    /// String lengths toward the vacuum, per color, where computed.
    pub epsilon: BTreeMap<i64, u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Arrow {
    pub from: usize,
    pub color: i64,
    pub to: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CrystalGraph<B> {
    pub nodes: Vec<CrystalNode<B>>,
    pub arrows: Vec<Arrow>,
}

/// Everything produced by a bounded-depth crystal closure.
pub struct CrystalBuild<C: Carrier> {
    pub depth: u32,
    /// Word (application order) -> the exact element it generates.
    pub elements: BTreeMap<Vec<i64>, C::Elem>,
    pub lattice: Lattice<C::Block>,
    pub graph: CrystalGraph<C::Block>,
    pub node_of_word: BTreeMap<Vec<i64>, usize>,
    pub reports: Vec<ConjectureReport>,
}

impl<'a, C: Carrier> Engine<'a, C> {
    /// Generates all modified-lowering words up to `depth`, assembles the
    /// per-block lattices, and identifies nodes mod `q`. Conjecture-sized
    /// failures are recorded as reports, not errors.
    pub fn build(&self, depth: u32) -> CrystalBuild<C> {
        let carrier = self.carrier();
        let mut reports: Vec<ConjectureReport> = Vec::new();

        // Pass 1: generate elements level by level, words in application
        // order (parent first, colors in index order).
        let mut elements: BTreeMap<Vec<i64>, C::Elem> = BTreeMap::new();
        let mut level: Vec<Vec<i64>> = vec![Vec::new()];
        elements.insert(Vec::new(), carrier.vacuum());
        for _ in 0..depth {
            let mut next = Vec::new();
            for word in &level {
                let parent = elements[word].clone();
                for &i in carrier.indices() {
                    let mut child_word = word.clone();
                    child_word.push(i);
                    match self.f_tilde(i, &parent) {
                        Ok(child) => {
                            if carrier.is_zero(&child) {
                                reports.push(
                                    ConjectureReport::new(
                                        ReportKind::LoweringVanished,
                                        carrier.block_label(&carrier.block_of(&parent)),
                                        format!(
                                            "modified lowering with color {i} vanished on a \
                                             nonzero element"
                                        ),
                                    )
                                    .with_witness(witness_string(&child_word)),
                                );
                                continue;
                            }
                            elements.insert(child_word.clone(), child);
                            next.push(child_word);
                        }
                        Err(CrystalError::DecompositionFailure {
                            color,
                            block,
                            detail,
                        }) => {
                            reports.push(
                                ConjectureReport::new(
                                    ReportKind::DecompositionFailure,
                                    block,
                                    format!("color {color}: {detail}"),
                                )
                                .with_witness(witness_string(&child_word)),
                            );
                        }
                        Err(e) => {
                            reports.push(
                                ConjectureReport::new(
                                    ReportKind::DecompositionFailure,
                                    carrier.block_label(&carrier.block_of(&parent)),
                                    e.to_string(),
                                )
                                .with_witness(witness_string(&child_word)),
                            );
                        }
                    }
                }
            }
            level = next;
        }

        // Pass 2: lattice from all generated elements, in word order
        // (breadth-first: by length, then lexicographic).
        let mut lattice: Lattice<C::Block> = Lattice::new();
        let mut insertion_order: Vec<Vec<i64>> = elements.keys().cloned().collect();
        insertion_order.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        for word in &insertion_order {
            let elem = &elements[word];
            let block = carrier.block_of(elem);
            let coords = carrier.coords(elem);
            match lattice.insert(&block, coords) {
                Ok(InsertOutcome::Contained) | Ok(InsertOutcome::Extended) => {}
                Err(v) => {
                    reports.push(
                        ConjectureReport::new(
                            ReportKind::LatticeViolation,
                            carrier.block_label(&block),
                            format!(
                                "coordinate {} has order {} < 0 at q = 0",
                                v.position, v.order
                            ),
                        )
                        .with_witness(witness_string(word)),
                    );
                }
            }
        }

        // Pass 3: node identification in the final lattice frame.
        let mut graph = CrystalGraph {
            nodes: Vec::new(),
            arrows: Vec::new(),
        };
        let mut node_of_word: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        let mut node_index: BTreeMap<(C::Block, Vec<Rat>), usize> = BTreeMap::new();
        for word in &insertion_order {
            let elem = &elements[word];
            let block = carrier.block_of(elem);
            let label = carrier.block_label(&block);
            let coords = carrier.coords(elem);
            let rep = match lattice.reduce_mod_q(&block, &coords, &label) {
                Ok(r) => r,
                Err(e) => {
                    reports.push(
                        ConjectureReport::new(
                            ReportKind::NotInLattice,
                            label,
                            format!("generator failed lattice reduction: {e}"),
                        )
                        .with_witness(witness_string(word)),
                    );
                    continue;
                }
            };
            let key = (block.clone(), rep.clone());
            let id = *node_index.entry(key).or_insert_with(|| {
                let id = graph.nodes.len();
                graph.nodes.push(CrystalNode {
                    id,
                    block: block.clone(),
                    representative: rep,
                    witness: word.clone(),
                    epsilon: BTreeMap::new(),
                });
                id
            });
            node_of_word.insert(word.clone(), id);
        }

        // Arrows follow the word structure; each arrow is checked against
        // the inverse property (raising leads back to the source, exactly).
        let mut seen_arrows = std::collections::BTreeSet::new();
        for word in &insertion_order {
            if word.is_empty() {
                continue;
            }
            let parent_word = word[..word.len() - 1].to_vec();
            let (Some(&from), Some(&to)) = (node_of_word.get(&parent_word), node_of_word.get(word))
            else {
                continue;
            };
            let color = *word.last().unwrap();
            let arrow = Arrow { from, color, to };
            if seen_arrows.insert(arrow) {
                graph.arrows.push(arrow);
                match self.e_tilde(color, &elements[word]) {
                    Ok(back) => {
                        let same_class =
                            carrier.coords(&back) == carrier.coords(&elements[&parent_word]);
                        if !same_class {
                            reports.push(
                                ConjectureReport::new(
                                    ReportKind::GraphInverseFailure,
                                    carrier.block_label(&carrier.block_of(&elements[word])),
                                    format!("raising color {color} does not invert the arrow"),
                                )
                                .with_witness(witness_string(word)),
                            );
                        }
                    }
                    Err(e) => {
                        reports.push(
                            ConjectureReport::new(
                                ReportKind::DecompositionFailure,
                                carrier.block_label(&carrier.block_of(&elements[word])),
                                format!("raising failed on arrow check: {e}"),
                            )
                            .with_witness(witness_string(word)),
                        );
                    }
                }
            }
        }
        graph.arrows.sort();

        // Epsilon: length of the color-i chain into each node.
        let mut parent_by_color: BTreeMap<(usize, i64), usize> = BTreeMap::new();
        for a in &graph.arrows {
            parent_by_color.insert((a.to, a.color), a.from);
        }
        for id in 0..graph.nodes.len() {
            let colors: Vec<i64> = carrier.indices().to_vec();
            for i in colors {
                let mut eps = 0u32;
                let mut cur = id;
                while let Some(&p) = parent_by_color.get(&(cur, i)) {
                    if p == cur {
                        break;
                    }
                    eps += 1;
                    cur = p;
                }
                graph.nodes[id].epsilon.insert(i, eps);
            }
        }

        CrystalBuild {
            depth,
            elements,
            lattice,
            graph,
            node_of_word,
            reports,
        }
    }

    /// Conjectural lattice stability: the modified raising operators keep
    /// every generated element inside the lattice. Returns reports for each
    /// violation found (empty = stable up to this depth).
    pub fn check_lattice_stability(&self, build: &CrystalBuild<C>) -> Vec<ConjectureReport> {
        let carrier = self.carrier();
        let mut reports = Vec::new();
        for (word, elem) in &build.elements {
            for &i in carrier.indices() {
                let raised = match self.e_tilde(i, elem) {
                    Ok(r) => r,
                    Err(e) => {
                        reports.push(
                            ConjectureReport::new(
                                ReportKind::DecompositionFailure,
                                carrier.block_label(&carrier.block_of(elem)),
                                format!("raising color {i}: {e}"),
                            )
                            .with_witness(witness_string(word)),
                        );
                        continue;
                    }
                };
                if carrier.is_zero(&raised) {
                    continue;
                }
                let block = carrier.block_of(&raised);
                let label = carrier.block_label(&block);
                let coords = carrier.coords(&raised);
                let ok = build
                    .lattice
                    .block(&block)
                    .map(|blk| blk.membership(&coords).is_ok())
                    .unwrap_or(false);
                if !ok {
                    reports.push(
                        ConjectureReport::new(
                            ReportKind::NotInLattice,
                            label,
                            format!("raising color {i} left the lattice"),
                        )
                        .with_witness(witness_string(word)),
                    );
                }
            }
        }
        reports
    }
}

/// Renders a witness word (application order) for reports and labels.
pub fn witness_string(word: &[i64]) -> String {
    if word.is_empty() {
        return "vac".to_string();
    }
    word.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

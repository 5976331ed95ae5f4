//! Lower and upper global bases, the balanced-condition checks, and the
//! dimension-formula evaluator.
//!
//! For each block the lower basis element `G(b)` is characterized by:
//! it lies in the crystal lattice `L`, it is fixed by the bar involution,
//! it lies in the integral form (the span of divided-power monomials over
//! Laurent polynomials), and it reduces to the node `b` mod `qL`. When the
//! block is balanced such an element is unique, so *any* element found with
//! these four properties is the global basis element. The solver looks for
//! it as a combination of divided-power monomials with bar-symmetric Laurent
//! coefficients `sum_k x_k (q^k + q^{-k})`: bar-fixedness and integrality
//! hold by construction and the remaining conditions (regularity of the
//! lattice coordinates at q = 0 plus the prescribed value there) are exact
//! Q-linear constraints on the Laurent coefficients.

use crate::scalars::{self, Rat, RatFunc};

use super::graph::{witness_string, CrystalBuild};
use super::report::{ConjectureReport, ReportKind};
use super::{Carrier, CrystalError, Engine};

/// Cap on the bar-symmetric degree of the correction coefficients. Blocks at
/// desk depth need small degrees; running past this means something is wrong
/// (and is reported, not hidden).
const MAX_SYMMETRIC_DEGREE: i64 = 10;

/// Global bases of one block.
pub struct GlobalBasisBlock<C: Carrier> {
    pub block: C::Block,
    /// Graph node ids of the block, in discovery (witness) order.
    pub node_ids: Vec<usize>,
    /// Lower basis, aligned with `node_ids`. Empty when solving failed;
    /// the failure is then described in `reports`.
    pub lower: Vec<C::Elem>,
    /// Upper basis: dual of `lower` under the bilinear form.
    pub upper: Vec<C::Elem>,
    pub reports: Vec<ConjectureReport>,
}

impl<C: Carrier> GlobalBasisBlock<C> {
    pub fn is_complete(&self) -> bool {
        !self.node_ids.is_empty() && self.lower.len() == self.node_ids.len()
    }
}

/// Computes lower and upper global bases on one block of a bounded-depth
/// crystal build.
///
/// Requires the lattice to span the block (an error otherwise: raise the
/// depth). Conjecture-sized failures (node count mismatch, bar instability,
/// unsolvable or ambiguous systems) come back as reports.
pub fn global_basis<C: Carrier>(
    engine: &Engine<'_, C>,
    build: &CrystalBuild<C>,
    block: &C::Block,
) -> Result<GlobalBasisBlock<C>, CrystalError> {
    let carrier = engine.carrier();
    let label = carrier.block_label(block);
    let dim = carrier.dim(block);
    let mut out = GlobalBasisBlock {
        block: block.clone(),
        node_ids: Vec::new(),
        lower: Vec::new(),
        upper: Vec::new(),
        reports: Vec::new(),
    };
    if dim == 0 {
        return Ok(out);
    }
    let lat = build
        .lattice
        .block(block)
        .ok_or_else(|| CrystalError::BlockNotSpanned {
            block: label.clone(),
            have: 0,
            needed: dim,
        })?;
    if lat.rank() < dim {
        return Err(CrystalError::BlockNotSpanned {
            block: label.clone(),
            have: lat.rank(),
            needed: dim,
        });
    }
    // Nodes of this block in discovery order.
    let nodes: Vec<&super::graph::CrystalNode<C::Block>> = build
        .graph
        .nodes
        .iter()
        .filter(|n| &n.block == block)
        .collect();
    out.node_ids = nodes.iter().map(|n| n.id).collect();
    if nodes.len() != dim {
        out.reports.push(ConjectureReport::new(
            ReportKind::NodeCountMismatch,
            label.clone(),
            format!("{} crystal nodes vs block dimension {}", nodes.len(), dim),
        ));
        return Ok(out);
    }
    let rep_matrix: Vec<Vec<Rat>> = nodes.iter().map(|n| n.representative.clone()).collect();
    if scalars::rank(&rep_matrix) != dim {
        out.reports.push(ConjectureReport::new(
            ReportKind::NodeCountMismatch,
            label.clone(),
            "crystal node representatives are linearly dependent".into(),
        ));
        return Ok(out);
    }
    if !carrier.bar_radical_stable(block) {
        out.reports.push(ConjectureReport::new(
            ReportKind::BarRadicalInstability,
            label.clone(),
            "bar image of a radical vector is outside the radical; bar does not descend".into(),
        ));
        return Ok(out);
    }

    // Lattice-frame transition: columns of M are the lattice basis vectors.
    let mut m = vec![vec![RatFunc::zero(); dim]; dim];
    for (k, row) in lat.rows.iter().enumerate() {
        for (i, c) in row.coords.iter().enumerate() {
            m[i][k] = c.clone();
        }
    }
    let minv = scalars::invert(&m).expect("lattice basis is invertible over the field");

    // Integral generators and their lattice-frame coordinate functions.
    let gens = carrier.integral_generators(block);
    let width = gens.len();
    let mut t = vec![vec![RatFunc::zero(); width]; dim];
    for (j, (g, _)) in gens.iter().enumerate() {
        let col = carrier.coords(g);
        let lat_col = scalars::mat_vec(&minv, &col);
        for (i, v) in lat_col.into_iter().enumerate() {
            t[i][j] = v;
        }
    }
    let min_ord = t
        .iter()
        .flatten()
        .filter_map(|f| f.order_at_zero())
        .min()
        .unwrap_or(0)
        .min(0);

    let mut lower: Vec<C::Elem> = Vec::with_capacity(dim);
    'nodes: for node in &nodes {
        let mut solved = None;
        for max_deg in 0..=MAX_SYMMETRIC_DEGREE {
            match solve_node(carrier, &gens, &t, min_ord, max_deg, &node.representative) {
                NodeSolve::Solved(elem) => {
                    solved = Some(elem);
                    break;
                }
                NodeSolve::Ambiguous(detail) => {
                    out.reports.push(
                        ConjectureReport::new(
                            ReportKind::GlobalBasisFailure,
                            label.clone(),
                            detail,
                        )
                        .with_witness(witness_string(&node.witness)),
                    );
                    break 'nodes;
                }
                NodeSolve::NoSolution => {}
            }
        }
        let Some(elem) = solved else {
            out.reports.push(
                ConjectureReport::new(
                    ReportKind::GlobalBasisFailure,
                    label.clone(),
                    format!(
                        "no bar-fixed integral lattice element with this crystal class up to \
                         symmetric degree {MAX_SYMMETRIC_DEGREE}; bar matrix: {}",
                        bar_matrix_string(carrier, &gens)
                    ),
                )
                .with_witness(witness_string(&node.witness)),
            );
            break 'nodes;
        };
        // Post-verification of the contract.
        let coords = carrier.coords(&elem);
        let bar_coords = carrier.coords(&carrier.bar(&elem));
        if coords != bar_coords {
            out.reports.push(
                ConjectureReport::new(
                    ReportKind::GlobalBasisFailure,
                    label.clone(),
                    "solver output is not bar-fixed".into(),
                )
                .with_witness(witness_string(&node.witness)),
            );
            break 'nodes;
        }
        match lat.reduce_mod_q(&coords) {
            Ok(rep) if rep == node.representative => {}
            other => {
                out.reports.push(
                    ConjectureReport::new(
                        ReportKind::GlobalBasisFailure,
                        label.clone(),
                        format!("solver output does not reduce to its node: {other:?}"),
                    )
                    .with_witness(witness_string(&node.witness)),
                );
                break 'nodes;
            }
        }
        lower.push(elem);
    }
    if lower.len() != dim {
        return Ok(out);
    }

    // Expansion over the witness lifts: G(b) = v_b + sum c_{b'} v_{b'} with
    // every correction in q A0 and the leading coefficient 1 + q A0.
    let mut lift_matrix = vec![vec![RatFunc::zero(); dim]; dim];
    for (s, node) in nodes.iter().enumerate() {
        let lift = &build.elements[&node.witness];
        for (i, v) in carrier.coords(lift).into_iter().enumerate() {
            lift_matrix[i][s] = v;
        }
    }
    for (tpos, g) in lower.iter().enumerate() {
        let rhs = carrier.coords(g);
        match scalars::solve(&lift_matrix, &rhs) {
            Ok(sol) if sol.kernel.is_empty() => {
                for (s, c) in sol.particular.iter().enumerate() {
                    let c_check = if s == tpos {
                        c.sub(&RatFunc::one())
                    } else {
                        c.clone()
                    };
                    let ok = c_check.is_zero()
                        || c_check.order_at_zero().map(|o| o >= 1).unwrap_or(true);
                    if !ok {
                        out.reports.push(ConjectureReport::new(
                            ReportKind::GlobalBasisFailure,
                            label.clone(),
                            format!(
                                "lift expansion coefficient {s} of G({}) is not in q*A0: {c}",
                                witness_string(&nodes[tpos].witness)
                            ),
                        ));
                    }
                }
            }
            _ => {
                out.reports.push(ConjectureReport::new(
                    ReportKind::GlobalBasisFailure,
                    label.clone(),
                    "witness lifts do not form a basis of the block".into(),
                ));
            }
        }
    }

    // Upper basis: dual under the form.
    let mut f = vec![vec![RatFunc::zero(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            f[a][b] = carrier.form(&lower[a], &lower[b]);
        }
    }
    let Some(finv) = scalars::invert(&f) else {
        out.reports.push(ConjectureReport::new(
            ReportKind::GlobalBasisFailure,
            label.clone(),
            "bilinear form is degenerate on the lower global basis".into(),
        ));
        return Ok(out);
    };
    let mut upper = Vec::with_capacity(dim);
    for b in 0..dim {
        let mut acc = carrier.zero(block);
        for a in 0..dim {
            if !finv[a][b].is_zero() {
                acc = carrier.add(&acc, &carrier.scale(&lower[a], &finv[a][b]));
            }
        }
        upper.push(carrier.reduce(&acc));
    }
    // Duality check (exact).
    for a in 0..dim {
        for b in 0..dim {
            let v = carrier.form(&lower[a], &upper[b]);
            let expect = if a == b {
                RatFunc::one()
            } else {
                RatFunc::zero()
            };
            if v != expect {
                out.reports.push(ConjectureReport::new(
                    ReportKind::GlobalBasisFailure,
                    label.clone(),
                    format!("duality defect at ({a}, {b}): {v}"),
                ));
            }
        }
    }
    out.lower = lower;
    out.upper = upper;
    Ok(out)
}

enum NodeSolve<E> {
    Solved(E),
    NoSolution,
    Ambiguous(String),
}

/// One exact Q-linear solve: coefficients `x_{j,k}` of
/// `sum_j (sum_k x_{j,k} (q^k + q^{-k})) gen_j` subject to all lattice
/// coordinates lying in `A0` with the prescribed value at `q = 0`.
fn solve_node<C: Carrier>(
    carrier: &C,
    gens: &[(C::Elem, String)],
    t: &[Vec<RatFunc>],
    min_ord: i64,
    max_deg: i64,
    target: &[Rat],
) -> NodeSolve<C::Elem> {
    let dim = t.len();
    let width = gens.len();
    let lo = min_ord - max_deg;
    // Series of every T entry over the exponent window [lo - max_deg, max_deg].
    let table: Vec<Vec<Vec<Rat>>> = t
        .iter()
        .map(|row| {
            row.iter()
                .map(|f| f.series_coeffs(lo - max_deg, max_deg))
                .collect()
        })
        .collect();
    let coeff_at = |i: usize, j: usize, e: i64| -> Rat {
        let idx = e - (lo - max_deg);
        table[i][j][idx as usize].clone()
    };
    let unknowns = width * (max_deg as usize + 1);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for i in 0..dim {
        for e in lo..=0 {
            let mut row = Vec::with_capacity(unknowns);
            for j in 0..width {
                for k in 0..=max_deg {
                    // coefficient of q^e in (q^k + q^{-k}) * T[i][j]
                    let v = if k == 0 {
                        coeff_at(i, j, e)
                    } else {
                        let mut s = coeff_at(i, j, e - k);
                        s += coeff_at(i, j, e + k);
                        s
                    };
                    row.push(v);
                }
            }
            rows.push(row);
            rhs.push(if e == 0 {
                target[i].clone()
            } else {
                Rat::from_integer(0.into())
            });
        }
    }
    let sol = match scalars::solve(&rows, &rhs) {
        Ok(s) => s,
        Err(_) => return NodeSolve::NoSolution,
    };
    let assemble = |x: &[Rat]| -> C::Elem {
        let block = carrier.block_of(&gens[0].0);
        let mut acc = carrier.zero(&block);
        for (j, (g, _)) in gens.iter().enumerate() {
            let mut coeff = RatFunc::zero();
            for k in 0..=max_deg {
                let c = &x[j * (max_deg as usize + 1) + k as usize];
                if num_traits::Zero::is_zero(c) {
                    continue;
                }
                let basis = if k == 0 {
                    RatFunc::one()
                } else {
                    RatFunc::q_power(k).add(&RatFunc::q_power(-k))
                };
                coeff = coeff.add(&basis.scale(c));
            }
            if !coeff.is_zero() {
                acc = carrier.add(&acc, &carrier.scale(g, &coeff));
            }
        }
        carrier.reduce(&acc)
    };
    // Parameter freedom is only acceptable when it does not change the
    // element (monomial dependencies in the quotient).
    for kv in &sol.kernel {
        let delta = assemble(kv);
        if !carrier.is_zero(&delta) {
            return NodeSolve::Ambiguous(format!(
                "two distinct bar-fixed integral lattice elements share a crystal class \
                 (difference {delta})"
            ));
        }
    }
    NodeSolve::Solved(assemble(&sol.particular))
}

fn bar_matrix_string<C: Carrier>(_carrier: &C, gens: &[(C::Elem, String)]) -> String {
    let labels: Vec<&str> = gens.iter().map(|(_, l)| l.as_str()).collect();
    format!("integral generators {labels:?} (bar-fixed by construction)")
}

/// Balanced-triple verification on one block, given its global basis.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BalancedReport {
    pub block: String,
    /// (condition name, passed)
    pub conditions: Vec<(String, bool)>,
    pub pass: bool,
}

/// Checks the computable balanced conditions:
/// the lower basis spans the block over the field; its `A0`-span equals the
/// lattice; every element is bar-fixed (hence spans the bar lattice); and
/// the classes mod `q` are exactly the crystal nodes.
pub fn check_balanced<C: Carrier>(
    engine: &Engine<'_, C>,
    build: &CrystalBuild<C>,
    gbb: &GlobalBasisBlock<C>,
) -> BalancedReport {
    let carrier = engine.carrier();
    let label = carrier.block_label(&gbb.block);
    let dim = carrier.dim(&gbb.block);
    let mut conditions: Vec<(String, bool)> = Vec::new();
    if !gbb.is_complete() && dim > 0 {
        conditions.push(("global-basis-computed".into(), false));
        return BalancedReport {
            block: label,
            conditions,
            pass: false,
        };
    }
    // Spans over the field.
    let coord_matrix: Vec<Vec<RatFunc>> = gbb.lower.iter().map(|g| carrier.coords(g)).collect();
    let spans = scalars::rank(&coord_matrix) == dim;
    conditions.push(("spans-over-field".into(), spans));
    // A0-span equals the lattice: every G inside, transition unimodular.
    let lat = build.lattice.block(&gbb.block);
    let mut inside = true;
    let mut unimodular = false;
    if let Some(lat) = lat {
        let mut at_zero: Vec<Vec<Rat>> = Vec::new();
        for g in &gbb.lower {
            match lat.membership(&carrier.coords(g)) {
                Ok(coeffs) => {
                    at_zero.push(
                        coeffs
                            .iter()
                            .map(|c| c.eval_at_zero().expect("membership coefficients regular"))
                            .collect(),
                    );
                }
                Err(_) => {
                    inside = false;
                }
            }
        }
        if inside && at_zero.len() == dim {
            unimodular = scalars::rank(&at_zero) == dim;
        }
    } else {
        inside = dim == 0;
        unimodular = dim == 0;
    }
    conditions.push(("inside-lattice".into(), inside));
    conditions.push(("lattice-basis-mod-q".into(), unimodular));
    // Bar-fixed.
    let bar_fixed = gbb
        .lower
        .iter()
        .all(|g| carrier.coords(&carrier.bar(g)) == carrier.coords(g));
    conditions.push(("bar-fixed".into(), bar_fixed));
    // Classes are the crystal nodes.
    let mut classes = true;
    if let Some(lat) = lat {
        for (g, &nid) in gbb.lower.iter().zip(&gbb.node_ids) {
            let rep = lat.reduce_mod_q(&carrier.coords(g)).ok();
            let expect = &build.graph.nodes[nid].representative;
            if rep.as_ref() != Some(expect) {
                classes = false;
            }
        }
    }
    conditions.push(("classes-are-nodes".into(), classes));
    let pass = conditions.iter().all(|(_, ok)| *ok);
    BalancedReport {
        block: label,
        conditions,
        pass,
    }
}

/// Evaluates `(vacuum, raise_{a_1} ... raise_{a_n} G_up(b))` at `q = 1`.
pub fn dim_formula_eval<C: Carrier>(
    engine: &Engine<'_, C>,
    gbb: &GlobalBasisBlock<C>,
    node_id: usize,
    seq: &[i64],
) -> Result<Rat, CrystalError> {
    let carrier = engine.carrier();
    let pos = gbb
        .node_ids
        .iter()
        .position(|&id| id == node_id)
        .ok_or_else(|| CrystalError::NotInLattice {
            block: carrier.block_label(&gbb.block),
            detail: format!("node {node_id} is not in this block"),
        })?;
    let mut x = gbb.upper[pos].clone();
    for &a in seq.iter().rev() {
        x = carrier.raise(a, &x);
        x = carrier.reduce(&x);
    }
    let val = carrier.form(&carrier.vacuum(), &x);
    val.eval_at_one().map_err(|_| CrystalError::PoleAtOne {
        block: carrier.block_label(&gbb.block),
        detail: format!("dimension value {val}"),
    })
}

/// Bar on the quotient: checks radical stability of the element's block
/// first, then returns the reduced conjugate.
pub fn bar_class<C: Carrier>(
    engine: &Engine<'_, C>,
    e: &C::Elem,
) -> Result<C::Elem, ConjectureReport> {
    let carrier = engine.carrier();
    let block = carrier.block_of(e);
    if !carrier.bar_radical_stable(&block) {
        return Err(ConjectureReport::new(
            ReportKind::BarRadicalInstability,
            carrier.block_label(&block),
            "bar image of a radical vector left the radical".into(),
        ));
    }
    Ok(carrier.reduce(&carrier.bar(e)))
}

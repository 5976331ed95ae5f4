//! Carrier-generic crystal machinery.
//!
//! Both carriers (the negative half of the quantum group, and the module
//! `V_theta(lambda)`) expose the same interface: a vacuum, block-graded
//! quotient coordinates, raising and divided lowering operators, and the
//! bilinear form. Everything crystal-flavored is built once on top of that
//! interface: string decompositions, the modified operators, crystal
//! lattices and graphs, the bar involution, global bases and the
//! balanced-triple checks.

pub mod global;
pub mod graph;
pub mod lattice;
pub mod report;

use thiserror::Error;

use crate::rootdata::RootDatum;
use crate::scalars::{self, RatFunc, SolveError};

pub use global::{
    bar_class, check_balanced, dim_formula_eval, global_basis, BalancedReport, GlobalBasisBlock,
};
pub use graph::{witness_string, Arrow, CrystalBuild, CrystalGraph, CrystalNode};
pub use lattice::{Lattice, LatticeBlock, LatticeRow};
pub use report::{ConjectureReport, ReportKind};

/// Errors from crystal operations. Conjecture-sized findings are *not*
/// errors; they travel as [`ConjectureReport`]s.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("string decomposition failed for color {color} on block {block}: {detail}")]
    DecompositionFailure {
        color: i64,
        block: String,
        detail: String,
    },
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("block {block} is not spanned by the lattice at this depth ({have}/{needed} vectors)")]
    BlockNotSpanned {
        block: String,
        have: usize,
        needed: usize,
    },
    #[error("element is not in the lattice at block {block}: {detail}")]
    NotInLattice { block: String, detail: String },
    #[error("value has a pole at q = 1 in block {block}: {detail}")]
    PoleAtOne { block: String, detail: String },
}

/// The interface a module must expose to get crystal structure.
///
/// `raise` is the annihilation-direction operator (`e'_i` or `E_i`),
/// `lower_divided(i, n, -)` the divided power of the creation direction.
/// `coords` are exact quotient coordinates in a fixed per-block pivot frame;
/// two elements are equal in the quotient iff their coordinates agree.
pub trait Carrier {
    type Elem: Clone + PartialEq + std::fmt::Debug + std::fmt::Display;
    type Block: Clone + Ord + std::fmt::Debug;

    fn indices(&self) -> &[i64];
    fn rd(&self) -> &RootDatum;
    fn vacuum(&self) -> Self::Elem;
    fn zero(&self, b: &Self::Block) -> Self::Elem;
    fn block_of(&self, e: &Self::Elem) -> Self::Block;
    fn block_label(&self, b: &Self::Block) -> String;
    /// Dimension of the block in the quotient.
    fn dim(&self, b: &Self::Block) -> usize;
    /// Block reached from `b` by raising `n` times with color `i`, if any.
    fn raised_block(&self, b: &Self::Block, i: i64, n: u32) -> Option<Self::Block>;
    /// Block reached from `b` by lowering `n` times with color `i`.
    fn lowered_block(&self, b: &Self::Block, i: i64, n: u32) -> Self::Block;
    fn raise(&self, i: i64, e: &Self::Elem) -> Self::Elem;
    fn lower_divided(&self, i: i64, n: u32, e: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &RatFunc) -> Self::Elem;
    fn is_zero(&self, e: &Self::Elem) -> bool;
    fn coords(&self, e: &Self::Elem) -> Vec<RatFunc>;
    /// Elements whose classes are the pivot frame of the block.
    fn pivot_elements(&self, b: &Self::Block) -> Vec<Self::Elem>;
    /// Canonical representative (pivot-word combination) of the class.
    fn reduce(&self, e: &Self::Elem) -> Self::Elem;
    fn form(&self, a: &Self::Elem, b: &Self::Elem) -> RatFunc;
    /// Coefficientwise `q -> q^{-1}`, words fixed.
    fn bar(&self, e: &Self::Elem) -> Self::Elem;
    /// Whether bar maps the block's Gram radical into itself (so that bar
    /// descends to the quotient). Checked, never assumed.
    fn bar_radical_stable(&self, b: &Self::Block) -> bool;
    /// Bar-fixed elements spanning the integral form of the block
    /// (divided-power monomials), with display labels.
    fn integral_generators(&self, b: &Self::Block) -> Vec<(Self::Elem, String)>;
    /// The element's stored terms as `(monomial label, canonical
    /// coefficient string)` pairs, in the deterministic word order.
    fn term_strings(&self, e: &Self::Elem) -> Vec<(String, String)>;
}

/// Lowering of an element by `f_i^{(1)}`.
pub fn lower<C: Carrier>(c: &C, i: i64, e: &C::Elem) -> C::Elem {
    c.lower_divided(i, 1, e)
}

type KernelMemo<C> = std::sync::Mutex<
    std::collections::BTreeMap<
        (<C as Carrier>::Block, i64),
        std::sync::Arc<Vec<<C as Carrier>::Elem>>,
    >,
>;

/// Crystal engine: a carrier plus memoized raising kernels.
pub struct Engine<'a, C: Carrier> {
    carrier: &'a C,
    kernels: KernelMemo<C>,
}

impl<'a, C: Carrier> Engine<'a, C> {
    pub fn new(carrier: &'a C) -> Self {
        Engine {
            carrier,
            kernels: std::sync::Mutex::new(std::collections::BTreeMap::new()),
        }
    }

    pub fn carrier(&self) -> &C {
        self.carrier
    }

    /// Basis of `ker(raise(i, -))` inside the block, as reduced elements.
    pub fn raise_kernel(&self, b: &C::Block, i: i64) -> std::sync::Arc<Vec<C::Elem>> {
        let key = (b.clone(), i);
        if let Some(hit) = self.kernels.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let pivots = self.carrier.pivot_elements(b);
        let dim = pivots.len();
        let result: Vec<C::Elem> = if dim == 0 {
            Vec::new()
        } else {
            let target_dim = self
                .carrier
                .raised_block(b, i, 1)
                .map(|tb| self.carrier.dim(&tb))
                .unwrap_or(0);
            if target_dim == 0 {
                // Raising lands in the zero space: everything is kernel.
                pivots
            } else {
                let mut matrix = vec![vec![RatFunc::zero(); dim]; target_dim];
                for (col, p) in pivots.iter().enumerate() {
                    let raised = self.carrier.raise(i, p);
                    for (row, v) in self.carrier.coords(&raised).into_iter().enumerate() {
                        matrix[row][col] = v;
                    }
                }
                scalars::kernel_basis(&matrix)
                    .into_iter()
                    .map(|kv| self.combine(&pivots, &kv, b))
                    .collect()
            }
        };
        let arc = std::sync::Arc::new(result);
        let mut guard = self.kernels.lock().unwrap();
        guard.entry(key.clone()).or_insert_with(|| arc.clone());
        guard[&key].clone()
    }

    fn combine(&self, elems: &[C::Elem], coeffs: &[RatFunc], b: &C::Block) -> C::Elem {
        let mut acc = self.carrier.zero(b);
        for (e, c) in elems.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = self.carrier.add(&acc, &self.carrier.scale(e, c));
            }
        }
        self.carrier.reduce(&acc)
    }

    /// String decomposition `u = sum_n lower_divided(i, n, u_n)` with
    /// `raise(i, u_n) = 0`; returns the components `u_0, ..., u_N` (some may
    /// be zero). Fails when the candidate spanning set does not span or the
    /// solution is not unique.
    pub fn string_decompose(&self, i: i64, u: &C::Elem) -> Result<Vec<C::Elem>, CrystalError> {
        let b0 = self.carrier.block_of(u);
        if self.carrier.is_zero(u) {
            return Err(CrystalError::ZeroElement);
        }
        // Collect kernel bases level by level.
        type Level<C> = (u32, <C as Carrier>::Block, std::sync::Arc<Vec<<C as Carrier>::Elem>>);
        let mut levels: Vec<Level<C>> = Vec::new();
        let mut n = 0u32;
        loop {
            let Some(bn) = self.carrier.raised_block(&b0, i, n) else {
                break;
            };
            if self.carrier.dim(&bn) == 0 {
                break;
            }
            levels.push((n, bn.clone(), self.raise_kernel(&bn, i)));
            n += 1;
        }
        // Spanning set {lower_divided(i, n, k)} in b0 coordinates.
        let d0 = self.carrier.dim(&b0);
        let mut columns: Vec<(u32, usize)> = Vec::new();
        let mut matrix = vec![Vec::new(); d0];
        for (n, _, kernel) in &levels {
            for (j, k) in kernel.iter().enumerate() {
                let lowered = self.carrier.lower_divided(i, *n, k);
                let coords = self.carrier.coords(&lowered);
                for (row, v) in coords.into_iter().enumerate() {
                    matrix[row].push(v);
                }
                columns.push((*n, j));
            }
        }
        let rhs = self.carrier.coords(u);
        let sol = match scalars::solve(&matrix, &rhs) {
            Ok(s) => s,
            Err(SolveError::Inconsistent) => {
                return Err(CrystalError::DecompositionFailure {
                    color: i,
                    block: self.carrier.block_label(&b0),
                    detail: "candidate spanning set does not span the block".into(),
                })
            }
            Err(SolveError::Shape(msg)) => {
                return Err(CrystalError::DecompositionFailure {
                    color: i,
                    block: self.carrier.block_label(&b0),
                    detail: format!("shape error: {msg}"),
                })
            }
        };
        // A nonzero parameter kernel means two distinct decompositions.
        if sol.kernel.iter().any(|kv| kv.iter().any(|c| !c.is_zero())) {
            return Err(CrystalError::DecompositionFailure {
                color: i,
                block: self.carrier.block_label(&b0),
                detail: "decomposition is not unique".into(),
            });
        }
        // Assemble components.
        let mut parts: Vec<C::Elem> = levels
            .iter()
            .map(|(_, bn, _)| self.carrier.zero(bn))
            .collect();
        for (&(n, j), c) in columns.iter().zip(&sol.particular) {
            if c.is_zero() {
                continue;
            }
            let (_, _, kernel) = &levels[n as usize];
            let scaled = self.carrier.scale(&kernel[j], c);
            parts[n as usize] = self.carrier.add(&parts[n as usize], &scaled);
        }
        Ok(parts.into_iter().map(|p| self.carrier.reduce(&p)).collect())
    }

    /// The modified lowering operator: shifts every string component up by
    /// one divided power.
    pub fn f_tilde(&self, i: i64, u: &C::Elem) -> Result<C::Elem, CrystalError> {
        let parts = self.string_decompose(i, u)?;
        let b_target = self.carrier.lowered_block(&self.carrier.block_of(u), i, 1);
        let mut acc = self.carrier.zero(&b_target);
        for (n, part) in parts.iter().enumerate() {
            if self.carrier.is_zero(part) {
                continue;
            }
            acc = self
                .carrier
                .add(&acc, &self.carrier.lower_divided(i, n as u32 + 1, part));
        }
        Ok(self.carrier.reduce(&acc))
    }

    /// The modified raising operator; may return a zero element.
    pub fn e_tilde(&self, i: i64, u: &C::Elem) -> Result<C::Elem, CrystalError> {
        let parts = self.string_decompose(i, u)?;
        let b0 = self.carrier.block_of(u);
        let b_target = self.carrier.raised_block(&b0, i, 1).unwrap_or(b0);
        let mut acc = self.carrier.zero(&b_target);
        for (n, part) in parts.iter().enumerate() {
            if n == 0 || self.carrier.is_zero(part) {
                continue;
            }
            acc = self
                .carrier
                .add(&acc, &self.carrier.lower_divided(i, n as u32 - 1, part));
        }
        Ok(self.carrier.reduce(&acc))
    }
}

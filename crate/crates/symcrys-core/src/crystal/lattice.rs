//! Crystal lattices: free modules over the local ring `A0` of rational
//! functions regular at `q = 0`, inside the block coordinate spaces.
//!
//! `A0` is a discrete valuation ring with uniformizer `q`; a finitely
//! generated submodule of the coordinate space has a triangular basis with
//! strictly increasing pivot positions. Reduction against such a basis
//! decides membership (with an exact valuation deficit on failure), and
//! evaluating the basis coefficients at `q = 0` realizes the passage to
//! `L / qL`.

use std::collections::BTreeMap;

use crate::scalars::{Rat, RatFunc};

use super::CrystalError;

/// One basis vector: coordinates in the block pivot frame, the pivot
/// position (leftmost nonzero coordinate; every earlier coordinate is zero)
/// and its q-valuation. Scaled so the pivot coordinate is exactly `q^val`.
#[derive(Debug, Clone)]
pub struct LatticeRow {
    pub coords: Vec<RatFunc>,
    pub pivot: usize,
    pub pivot_val: i64,
}

/// Triangular basis of one block's lattice, rows in increasing pivot order.
#[derive(Debug, Clone, Default)]
pub struct LatticeBlock {
    pub rows: Vec<LatticeRow>,
}

/// Outcome of inserting a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    /// The vector was already in the span.
    Contained,
    /// The basis grew or changed.
    Extended,
}

/// A coordinate with negative order at q = 0; generators must be regular.
#[derive(Debug, Clone)]
pub struct RegularityViolation {
    pub position: usize,
    pub order: i64,
}

impl LatticeBlock {
    fn leftmost_nonzero(v: &[RatFunc]) -> Option<usize> {
        v.iter().position(|c| !c.is_zero())
    }

    /// Inserts a generator, maintaining the triangular basis of the
    /// `A0`-span. The vector must have all coordinates regular at 0.
    pub fn insert(&mut self, v: Vec<RatFunc>) -> Result<InsertOutcome, RegularityViolation> {
        for (k, c) in v.iter().enumerate() {
            if let Some(ord) = c.order_at_zero() {
                if ord < 0 {
                    return Err(RegularityViolation {
                        position: k,
                        order: ord,
                    });
                }
            }
        }
        let mut outcome = InsertOutcome::Contained;
        let mut work = vec![v];
        while let Some(mut v) = work.pop() {
            loop {
                let Some(c) = Self::leftmost_nonzero(&v) else {
                    break;
                };
                let val = v[c].order_at_zero().expect("nonzero");
                match self.rows.iter().position(|r| r.pivot == c) {
                    Some(k) if val >= self.rows[k].pivot_val => {
                        let coef = v[c].div(&self.rows[k].coords[c]).expect("pivot nonzero");
                        let row = self.rows[k].coords.clone();
                        for (slot, r) in v.iter_mut().zip(&row) {
                            if !r.is_zero() {
                                *slot = slot.sub(&coef.mul(r));
                            }
                        }
                        debug_assert!(v[c].is_zero());
                    }
                    Some(k) => {
                        // Strictly smaller valuation: the incoming vector
                        // becomes the basis row, the old row is re-reduced.
                        let normalized = Self::normalize(v, c, val);
                        let displaced = std::mem::replace(&mut self.rows[k], normalized);
                        outcome = InsertOutcome::Extended;
                        v = displaced.coords;
                    }
                    None => {
                        let normalized = Self::normalize(v, c, val);
                        let at = self.rows.partition_point(|r| r.pivot < c);
                        self.rows.insert(at, normalized);
                        outcome = InsertOutcome::Extended;
                        break;
                    }
                }
            }
        }
        Ok(outcome)
    }

    /// Unit-scales so the pivot coordinate is exactly `q^val`.
    fn normalize(v: Vec<RatFunc>, pivot: usize, val: i64) -> LatticeRow {
        let unit = RatFunc::q_power(val).div(&v[pivot]).expect("pivot nonzero");
        debug_assert_eq!(unit.order_at_zero(), Some(0));
        let coords = v.iter().map(|c| c.mul(&unit)).collect();
        LatticeRow {
            coords,
            pivot,
            pivot_val: val,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Expands `v` over the basis; succeeds iff `v` lies in the `A0`-span,
    /// returning the (regular) coefficients per row.
    pub fn membership(&self, v: &[RatFunc]) -> Result<Vec<RatFunc>, MembershipFailure> {
        let mut rem = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let c = &rem[row.pivot];
            if c.is_zero() {
                coeffs.push(RatFunc::zero());
                continue;
            }
            let val = c.order_at_zero().expect("nonzero");
            if val < row.pivot_val {
                return Err(MembershipFailure::NegativeOrder {
                    position: row.pivot,
                    deficit: val - row.pivot_val,
                });
            }
            let coef = c.div(&row.coords[row.pivot]).expect("pivot nonzero");
            for (slot, r) in rem.iter_mut().zip(&row.coords) {
                if !r.is_zero() {
                    *slot = slot.sub(&coef.mul(r));
                }
            }
            coeffs.push(coef);
        }
        if let Some(pos) = Self::leftmost_nonzero(&rem) {
            return Err(MembershipFailure::OutsideSpan { position: pos });
        }
        Ok(coeffs)
    }

    /// Coefficients of `v` in the lattice frame evaluated at `q = 0`.
    pub fn reduce_mod_q(&self, v: &[RatFunc]) -> Result<Vec<Rat>, MembershipFailure> {
        let coeffs = self.membership(v)?;
        Ok(coeffs
            .iter()
            .map(|c| {
                c.eval_at_zero()
                    .expect("membership coefficients are regular")
            })
            .collect())
    }
}

/// Why a vector failed lattice membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipFailure {
    /// A coefficient would need a pole of the given (negative) deficit.
    NegativeOrder { position: usize, deficit: i64 },
    /// The vector is not even in the span over the field.
    OutsideSpan { position: usize },
}

impl std::fmt::Display for MembershipFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MembershipFailure::NegativeOrder { position, deficit } => {
                write!(
                    f,
                    "coefficient at pivot position {position} has order deficit {deficit}"
                )
            }
            MembershipFailure::OutsideSpan { position } => {
                write!(f, "residual is nonzero at position {position}")
            }
        }
    }
}

/// Per-block lattices keyed by the carrier's block type.
#[derive(Debug, Clone, Default)]
pub struct Lattice<B: Ord> {
    pub blocks: BTreeMap<B, LatticeBlock>,
}

impl<B: Ord + Clone + std::fmt::Debug> Lattice<B> {
    pub fn new() -> Self {
        Lattice {
            blocks: BTreeMap::new(),
        }
    }

    pub fn block(&self, b: &B) -> Option<&LatticeBlock> {
        self.blocks.get(b)
    }

    pub fn insert(&mut self, b: &B, v: Vec<RatFunc>) -> Result<InsertOutcome, RegularityViolation> {
        self.blocks.entry(b.clone()).or_default().insert(v)
    }

    pub fn reduce_mod_q(
        &self,
        b: &B,
        v: &[RatFunc],
        label: &str,
    ) -> Result<Vec<Rat>, CrystalError> {
        let block = self
            .blocks
            .get(b)
            .ok_or_else(|| CrystalError::NotInLattice {
                block: label.to_string(),
                detail: "block has no lattice vectors".into(),
            })?;
        block
            .reduce_mod_q(v)
            .map_err(|e| CrystalError::NotInLattice {
                block: label.to_string(),
                detail: e.to_string(),
            })
    }
}

//! Exact Gaussian elimination with full pivoting.
//!
//! Shared by every module that needs ranks, kernels or solutions of linear
//! systems over `Q`, `Q(q)` or `Q(p0, p1)`. Pivot choice: smallest
//! `complexity()` (for rational functions: numerator span plus denominator
//! span), ties broken by lowest column then lowest row index, which both
//! limits expression swell and makes all outputs deterministic.

use thiserror::Error;

use super::{MultiRatFunc, Rat, RatFunc};

/// The field operations elimination needs.
pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Caller guarantees `other != 0`.
    fn div(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// Size measure for pivot selection.
    fn complexity(&self) -> u64;
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn div(&self, other: &Self) -> Self {
        RatFunc::div(self, other).expect("division by zero in elimination")
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn complexity(&self) -> u64 {
        RatFunc::complexity(self)
    }
}

impl Field for Rat {
    fn zero() -> Self {
        super::rat_zero()
    }
    fn one() -> Self {
        super::rat_one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn complexity(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl Field for MultiRatFunc {
    fn zero() -> Self {
        MultiRatFunc::zero()
    }
    fn one() -> Self {
        MultiRatFunc::one()
    }
    fn add(&self, other: &Self) -> Self {
        MultiRatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiRatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiRatFunc::mul(self, other)
    }
    fn div(&self, other: &Self) -> Self {
        MultiRatFunc::div(self, other).expect("division by zero in elimination")
    }
    fn is_zero(&self) -> bool {
        MultiRatFunc::is_zero(self)
    }
    fn complexity(&self) -> u64 {
        MultiRatFunc::complexity(self)
    }
}

/// Errors from `solve`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// A solution of `M x = b`: one particular solution plus a kernel basis
/// (empty kernel means the solution is unique).
#[derive(Debug, Clone)]
pub struct LinearSolution<F> {
    pub particular: Vec<F>,
    pub kernel: Vec<Vec<F>>,
}

struct Eliminated<F> {
    rows: Vec<Vec<F>>,
    pivots: Vec<(usize, usize)>,
    ncols: usize,
}

/// Row reduction over the first `ncols` columns (extra columns ride along,
/// e.g. an augmented right-hand side).
fn eliminate<F: Field>(matrix: &[Vec<F>], ncols: usize) -> Eliminated<F> {
    let mut rows: Vec<Vec<F>> = matrix.to_vec();
    let nrows = rows.len();
    let mut row_used = vec![false; nrows];
    let mut col_used = vec![false; ncols];
    let mut pivots = Vec::new();
    loop {
        let mut best: Option<(u64, usize, usize)> = None;
        for c in 0..ncols {
            if col_used[c] {
                continue;
            }
            for r in 0..nrows {
                if row_used[r] || rows[r][c].is_zero() {
                    continue;
                }
                let cost = rows[r][c].complexity();
                let cand = (cost, c, r);
                if best.map(|b| cand < b).unwrap_or(true) {
                    best = Some(cand);
                }
            }
        }
        let Some((_, pc, pr)) = best else { break };
        row_used[pr] = true;
        col_used[pc] = true;
        pivots.push((pr, pc));
        let pivot_row = rows[pr].clone();
        let pivot_val = pivot_row[pc].clone();
        for r in 0..nrows {
            if r == pr || rows[r][pc].is_zero() {
                continue;
            }
            let factor = rows[r][pc].div(&pivot_val);
            for c in 0..rows[r].len() {
                if !pivot_row[c].is_zero() {
                    rows[r][c] = rows[r][c].sub(&factor.mul(&pivot_row[c]));
                }
            }
        }
        if pivots.len() == ncols.min(nrows) {
            break;
        }
    }
    Eliminated {
        rows,
        pivots,
        ncols,
    }
}

/// Rank of an exact matrix.
pub fn rank<F: Field>(matrix: &[Vec<F>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let ncols = matrix[0].len();
    eliminate(matrix, ncols).pivots.len()
}

fn kernel_from<F: Field>(e: &Eliminated<F>) -> Vec<Vec<F>> {
    let mut pivot_col_of: Vec<Option<usize>> = vec![None; e.ncols];
    for &(r, c) in &e.pivots {
        pivot_col_of[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in 0..e.ncols {
        if pivot_col_of[free].is_some() {
            continue;
        }
        let mut v = vec![F::zero(); e.ncols];
        v[free] = F::one();
        for &(r, c) in &e.pivots {
            if !e.rows[r][free].is_zero() {
                v[c] = F::zero().sub(&e.rows[r][free].div(&e.rows[r][c]));
            }
        }
        basis.push(v);
    }
    basis
}

/// Basis of the null space of `matrix` (column vectors of length `ncols`).
pub fn kernel_basis<F: Field>(matrix: &[Vec<F>]) -> Vec<Vec<F>> {
    if matrix.is_empty() {
        return Vec::new();
    }
    let ncols = matrix[0].len();
    let e = eliminate(matrix, ncols);
    kernel_from(&e)
}

/// Solves `M x = b` exactly. Inconsistency is reported distinctly from rank
/// deficiency: a rank-deficient but consistent system yields a particular
/// solution plus a nonempty kernel basis.
pub fn solve<F: Field>(matrix: &[Vec<F>], rhs: &[F]) -> Result<LinearSolution<F>, SolveError> {
    if matrix.len() != rhs.len() {
        return Err(SolveError::Shape(format!(
            "matrix has {} rows but rhs has {} entries",
            matrix.len(),
            rhs.len()
        )));
    }
    if matrix.is_empty() {
        return Ok(LinearSolution {
            particular: Vec::new(),
            kernel: Vec::new(),
        });
    }
    let ncols = matrix[0].len();
    let mut aug: Vec<Vec<F>> = Vec::with_capacity(matrix.len());
    for (row, b) in matrix.iter().zip(rhs) {
        if row.len() != ncols {
            return Err(SolveError::Shape("ragged matrix".into()));
        }
        let mut r = row.clone();
        r.push(b.clone());
        aug.push(r);
    }
    let e = eliminate(&aug, ncols);
    let mut row_is_pivot = vec![false; aug.len()];
    for &(r, _) in &e.pivots {
        row_is_pivot[r] = true;
    }
    for (r, row) in e.rows.iter().enumerate() {
        if !row_is_pivot[r] && !row[ncols].is_zero() {
            return Err(SolveError::Inconsistent);
        }
    }
    let mut particular = vec![F::zero(); ncols];
    for &(r, c) in &e.pivots {
        particular[c] = e.rows[r][ncols].div(&e.rows[r][c]);
    }
    Ok(LinearSolution {
        particular,
        kernel: kernel_from(&e),
    })
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert<F: Field>(matrix: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = matrix.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Vec<Vec<F>> = Vec::with_capacity(n);
    for (i, row) in matrix.iter().enumerate() {
        debug_assert_eq!(row.len(), n);
        let mut r = row.clone();
        for j in 0..n {
            r.push(if i == j { F::one() } else { F::zero() });
        }
        aug.push(r);
    }
    let e = eliminate(&aug, n);
    if e.pivots.len() < n {
        return None;
    }
    let mut inv = vec![vec![F::zero(); n]; n];
    for &(r, c) in &e.pivots {
        for j in 0..n {
            inv[c][j] = e.rows[r][n + j].div(&e.rows[r][c]);
        }
    }
    Some(inv)
}

/// Matrix-vector product.
pub fn mat_vec<F: Field>(matrix: &[Vec<F>], v: &[F]) -> Vec<F> {
    matrix
        .iter()
        .map(|row| {
            let mut acc = F::zero();
            for (a, x) in row.iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    acc = acc.add(&a.mul(x));
                }
            }
            acc
        })
        .collect()
}

//! The negative half of the quantized enveloping algebra.
//!
//! Elements are linear combinations of words in the generators `f_i`;
//! equality in the algebra is decided per weight space by the radical of the
//! Kashiwara bilinear form (the radical is exactly the Serre ideal, so no
//! noncommutative Groebner machinery is needed). The raising operators
//! `e'_i`, `e*_i` act on words by the q-derivation rules, and the form is
//! computed through the adjunction `(f_i a, b) = (a, e'_i b)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::crystal::Carrier;
use crate::rootdata::{RootDatum, Weight};
use crate::scalars::{self, quantum_factorial, RatFunc};

/// A word `f_{i_1} ... f_{i_l}` in the free algebra on the generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<i64>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<i64>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `f_i * w`.
    pub fn prepend(&self, i: i64) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(i);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// `w * f_i`.
    pub fn append(&self, i: i64) -> Word {
        let mut v = self.0.clone();
        v.push(i);
        Word(v)
    }

    pub fn remove(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(k);
        Word(v)
    }

    /// `-sum alpha_letter`, the weight of the corresponding monomial.
    pub fn weight(&self) -> Weight {
        Weight::from_coords(self.0.iter().map(|&i| (i, -1)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("f[{i}]")).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// A homogeneous element: a finite combination of words sharing one weight.
#[derive(Debug, Clone)]
pub struct FreeElement {
    terms: BTreeMap<Word, RatFunc>,
    weight: Weight,
}

impl PartialEq for FreeElement {
    fn eq(&self, other: &Self) -> bool {
        // Zero elements compare equal regardless of their nominal weight.
        self.terms == other.terms && (self.terms.is_empty() || self.weight == other.weight)
    }
}

impl Eq for FreeElement {}

impl FreeElement {
    pub fn zero(weight: Weight) -> Self {
        FreeElement {
            terms: BTreeMap::new(),
            weight,
        }
    }

    /// The unit 1 (empty word).
    pub fn unit() -> Self {
        Self::single(Word::empty(), RatFunc::one())
    }

    pub fn single(word: Word, coeff: RatFunc) -> Self {
        let weight = word.weight();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        FreeElement { terms, weight }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, RatFunc)>>(weight: Weight, it: I) -> Self {
        let mut out = FreeElement::zero(weight);
        for (w, c) in it {
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, word: Word, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(word.weight(), self.weight, "homogeneity violated");
        match self.terms.get_mut(&word) {
            Some(c) => {
                *c = c.add(&coeff);
                if c.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Syntactic zero test (no terms); quotient zeroness is a question for
    /// [`UqAlgebra::is_zero`].
    pub fn is_syntactic_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.terms.is_empty() {
            return other.clone();
        }
        if other.terms.is_empty() {
            return self.clone();
        }
        assert_eq!(self.weight, other.weight, "cannot add different weights");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.weight.clone());
        }
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
            weight: self.weight.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    /// Conjugates every coefficient by `q -> q^{-1}`, fixing words.
    pub fn bar(&self) -> Self {
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.bar()))
                .collect(),
            weight: self.weight.clone(),
        }
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c})*{w}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Per-weight linear data: all words of the weight, their Gram matrix under
/// the Kashiwara form, a pivot set realizing the rank, coordinate solver and
/// the radical (Gram kernel).
#[derive(Debug)]
pub struct WeightBasis {
    pub weight: Weight,
    /// All words of this weight, lexicographic in the index order.
    pub words: Vec<Word>,
    word_index: HashMap<Word, usize>,
    /// Full Gram matrix over `words`.
    pub gram: Vec<Vec<RatFunc>>,
    /// Indices into `words` whose classes form a basis of the weight space.
    pub pivots: Vec<usize>,
    /// Row set such that `gram[rows][pivots]` is invertible.
    solver_rows: Vec<usize>,
    solver_inv: Vec<Vec<RatFunc>>,
    /// Kernel of the Gram matrix: coefficient vectors (over `words`) of
    /// elements representing 0 in the algebra.
    pub radical: Vec<Vec<RatFunc>>,
}

impl WeightBasis {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn word_position(&self, w: &Word) -> Option<usize> {
        self.word_index.get(w).copied()
    }

    /// Pivot-frame coordinates from the vector of pairings with all words.
    fn coords_from_pairings(&self, pairings: &[RatFunc]) -> Vec<RatFunc> {
        let rhs: Vec<RatFunc> = self
            .solver_rows
            .iter()
            .map(|&r| pairings[r].clone())
            .collect();
        scalars::mat_vec(&self.solver_inv, &rhs)
    }
}

/// The algebra context: root datum plus memoized weight bases and word
/// pairings. All operations are pure; the memo tables behave as atomic
/// get-or-compute maps and duplicate computation is harmless.
pub struct UqAlgebra {
    rd: RootDatum,
    bases: Mutex<BTreeMap<Weight, Arc<WeightBasis>>>,
    pairs: Mutex<HashMap<(Word, Word), RatFunc>>,
}

impl UqAlgebra {
    pub fn new(rd: RootDatum) -> Self {
        UqAlgebra {
            rd,
            bases: Mutex::new(BTreeMap::new()),
            pairs: Mutex::new(HashMap::new()),
        }
    }

    pub fn rd(&self) -> &RootDatum {
        &self.rd
    }

    pub fn unit(&self) -> FreeElement {
        FreeElement::unit()
    }

    /// Left multiplication by `f_i`.
    pub fn mul_f(&self, i: i64, a: &FreeElement) -> FreeElement {
        debug_assert!(self.rd.contains(i));
        let weight = a.weight().sub(&Weight::alpha(i));
        FreeElement {
            terms: a
                .terms
                .iter()
                .map(|(w, c)| (w.prepend(i), c.clone()))
                .collect(),
            weight,
        }
    }

    /// Left multiplication by the divided power `f_i^{(n)} = f_i^n / [n]_i!`.
    pub fn mul_f_divided(&self, i: i64, n: u32, a: &FreeElement) -> FreeElement {
        let mut out = a.scale(&self.inv_quantum_factorial(i, n));
        for _ in 0..n {
            out = self.mul_f(i, &out);
        }
        out
    }

    fn inv_quantum_factorial(&self, i: i64, n: u32) -> RatFunc {
        let fact = quantum_factorial(n as i64, self.rd.d(i)).expect("n >= 0");
        RatFunc::one()
            .div(&RatFunc::from_laurent(fact))
            .expect("[n]! != 0")
    }

    /// The left q-derivation `e'_i`:
    /// `e'_i(f_j w) = delta_ij w + q^{-(alpha_i, alpha_j)} f_j e'_i(w)`.
    pub fn e_prime(&self, i: i64, a: &FreeElement) -> FreeElement {
        let weight = a.weight().add(&Weight::alpha(i));
        let mut out = FreeElement::zero(weight);
        for (w, c) in &a.terms {
            let letters = w.letters();
            let mut pass = 0i64; // -(alpha_i, alpha_{j_1} + ... + alpha_{j_{k-1}})
            for (k, &j) in letters.iter().enumerate() {
                if j == i {
                    out.add_term(w.remove(k), c.mul(&RatFunc::q_power(pass)));
                }
                pass -= self.rd.pairing(i, j);
            }
        }
        out
    }

    /// The right-end analogue `e*_i`:
    /// `e*_i(w f_j) = delta_ij w + q^{-(alpha_i, alpha_j)} e*_i(w) f_j`.
    pub fn e_star(&self, i: i64, a: &FreeElement) -> FreeElement {
        let weight = a.weight().add(&Weight::alpha(i));
        let mut out = FreeElement::zero(weight);
        for (w, c) in &a.terms {
            let letters = w.letters();
            let mut pass = 0i64;
            for (k, &j) in letters.iter().enumerate().rev() {
                if j == i {
                    out.add_term(w.remove(k), c.mul(&RatFunc::q_power(pass)));
                }
                pass -= self.rd.pairing(i, j);
            }
        }
        out
    }

    /// Kashiwara pairing of two words, memoized. Computed by
    /// `(f_j w', v) = (w', e'_j v)` with base case `(1, 1) = 1`.
    fn pair_words(&self, w: &Word, v: &Word) -> RatFunc {
        if w.weight() != v.weight() {
            return RatFunc::zero();
        }
        if w.is_empty() {
            return RatFunc::one();
        }
        let key = (w.clone(), v.clone());
        if let Some(hit) = self.pairs.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let j = w.letters()[0];
        let tail = Word::new(w.letters()[1..].to_vec());
        let raised = self.e_prime(j, &FreeElement::single(v.clone(), RatFunc::one()));
        let mut acc = RatFunc::zero();
        for (u, c) in &raised.terms {
            acc = acc.add(&c.mul(&self.pair_words(&tail, u)));
        }
        self.pairs.lock().unwrap().insert(key, acc.clone());
        acc
    }

    /// The symmetric bilinear form with `(1, 1) = 1` and
    /// `(e'_i a, b) = (a, f_i b)`. Weight-mismatched arguments pair to 0.
    pub fn kashiwara_form(&self, a: &FreeElement, b: &FreeElement) -> RatFunc {
        if a.is_syntactic_zero() || b.is_syntactic_zero() || a.weight() != b.weight() {
            return RatFunc::zero();
        }
        let mut acc = RatFunc::zero();
        for (w, cw) in &a.terms {
            for (v, cv) in &b.terms {
                let p = self.pair_words(w, v);
                if !p.is_zero() {
                    acc = acc.add(&cw.mul(cv).mul(&p));
                }
            }
        }
        acc
    }

    /// All words of the given weight, lexicographic in the index order.
    pub fn enumerate_words(&self, weight: &Weight) -> Vec<Word> {
        let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
        for (i, c) in weight.coords() {
            if *c > 0 || !self.rd.contains(*i) {
                return Vec::new();
            }
            counts.insert(*i, -c);
        }
        let total: i64 = counts.values().sum();
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(total as usize);
        fn rec(
            counts: &mut BTreeMap<i64, i64>,
            current: &mut Vec<i64>,
            remaining: i64,
            out: &mut Vec<Word>,
        ) {
            if remaining == 0 {
                out.push(Word::new(current.clone()));
                return;
            }
            let keys: Vec<i64> = counts.keys().copied().collect();
            for i in keys {
                let c = counts[&i];
                if c == 0 {
                    continue;
                }
                counts.insert(i, c - 1);
                current.push(i);
                rec(counts, current, remaining - 1, out);
                current.pop();
                counts.insert(i, c);
            }
        }
        rec(&mut counts, &mut current, total, &mut out);
        out
    }

    /// Memoized weight-space data.
    pub fn weight_basis(&self, weight: &Weight) -> Arc<WeightBasis> {
        if let Some(hit) = self.bases.lock().unwrap().get(weight) {
            return hit.clone();
        }
        let basis = Arc::new(self.build_weight_basis(weight));
        let mut guard = self.bases.lock().unwrap();
        guard.entry(weight.clone()).or_insert_with(|| basis.clone());
        guard[weight].clone()
    }

    fn build_weight_basis(&self, weight: &Weight) -> WeightBasis {
        let words = self.enumerate_words(weight);
        let n = words.len();
        let mut gram = vec![vec![RatFunc::zero(); n]; n];
        for r in 0..n {
            for c in 0..n {
                gram[r][c] = self.pair_words(&words[r], &words[c]);
            }
        }
        let (pivots, solver_rows, solver_inv) = build_pivot_solver(&gram);
        let radical = scalars::kernel_basis(&gram);
        let word_index = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, w)| (w, k))
            .collect();
        WeightBasis {
            weight: weight.clone(),
            words,
            word_index,
            gram,
            pivots,
            solver_rows,
            solver_inv,
            radical,
        }
    }

    /// Pairings of `a` against every word of its weight space.
    fn pairing_vector(&self, basis: &WeightBasis, a: &FreeElement) -> Vec<RatFunc> {
        let mut out = vec![RatFunc::zero(); basis.words.len()];
        for (w, c) in &a.terms {
            let k = basis
                .word_position(w)
                .expect("element words are enumerated in their weight space");
            for (r, slot) in out.iter_mut().enumerate() {
                let g = &basis.gram[r][k];
                if !g.is_zero() {
                    *slot = slot.add(&c.mul(g));
                }
            }
        }
        out
    }

    /// Pivot-frame coordinates of the class of `a` in its weight space.
    pub fn coords(&self, a: &FreeElement) -> Vec<RatFunc> {
        let basis = self.weight_basis(a.weight());
        let pairings = self.pairing_vector(&basis, a);
        basis.coords_from_pairings(&pairings)
    }

    /// Canonical representative of the class of `a`: a combination of the
    /// pivot words. Radical components are dropped.
    pub fn reduce(&self, a: &FreeElement) -> FreeElement {
        let basis = self.weight_basis(a.weight());
        let coords = self.coords(a);
        let mut out = FreeElement::zero(a.weight().clone());
        for (c, &p) in coords.iter().zip(&basis.pivots) {
            out.add_term(basis.words[p].clone(), c.clone());
        }
        out
    }

    /// Zero test in the quotient algebra.
    pub fn is_zero(&self, a: &FreeElement) -> bool {
        a.is_syntactic_zero() || self.coords(a).iter().all(|c| c.is_zero())
    }

    /// Equality in the quotient algebra.
    pub fn equal(&self, a: &FreeElement, b: &FreeElement) -> bool {
        if a.weight() != b.weight() {
            return self.is_zero(a) && self.is_zero(b);
        }
        self.coords(a) == self.coords(b)
    }
}

/// Pivot set, solver row set, and the inverse of `gram[rows][pivots]`.
pub(crate) type PivotSolver = (Vec<usize>, Vec<usize>, Vec<Vec<RatFunc>>);

/// Chooses pivot words and coordinate solver data from a Gram matrix.
///
/// Pivots are greedy in word order on the principal submatrix (keeping it
/// invertible); if that stalls below the rank of the matrix, greedy
/// independent columns are used instead. The returned `(pivots, rows, inv)`
/// satisfy: `gram[rows][pivots]` is square invertible with inverse `inv`.
pub(crate) fn build_pivot_solver(gram: &[Vec<RatFunc>]) -> PivotSolver {
    let n = gram.len();
    if n == 0 {
        return (Vec::new(), Vec::new(), Vec::new());
    }
    let full_rank = scalars::rank(gram);
    let submatrix = |rows: &[usize], cols: &[usize]| -> Vec<Vec<RatFunc>> {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| gram[r][c].clone()).collect())
            .collect()
    };
    // Greedy principal minors.
    let mut pivots: Vec<usize> = Vec::new();
    for k in 0..n {
        if pivots.len() == full_rank {
            break;
        }
        let mut cand = pivots.clone();
        cand.push(k);
        let m = submatrix(&cand, &cand);
        if scalars::rank(&m) == cand.len() {
            pivots = cand;
        }
    }
    if pivots.len() == full_rank {
        let inv =
            scalars::invert(&submatrix(&pivots, &pivots)).expect("principal submatrix invertible");
        return (pivots.clone(), pivots, inv);
    }
    // Fallback: greedy independent columns, then a row set.
    let mut pivots: Vec<usize> = Vec::new();
    let all_rows: Vec<usize> = (0..n).collect();
    for k in 0..n {
        if pivots.len() == full_rank {
            break;
        }
        let mut cand = pivots.clone();
        cand.push(k);
        if scalars::rank(&submatrix(&all_rows, &cand)) == cand.len() {
            pivots = cand;
        }
    }
    let mut rows: Vec<usize> = Vec::new();
    for r in 0..n {
        if rows.len() == pivots.len() {
            break;
        }
        let mut cand = rows.clone();
        cand.push(r);
        if scalars::rank(&submatrix(&cand, &pivots)) == cand.len() {
            rows = cand;
        }
    }
    let inv = scalars::invert(&submatrix(&rows, &pivots)).expect("row set realizes the rank");
    (pivots, rows, inv)
}

impl Carrier for UqAlgebra {
    type Elem = FreeElement;
    type Block = Weight;

    fn indices(&self) -> &[i64] {
        self.rd.indices()
    }

    fn rd(&self) -> &RootDatum {
        &self.rd
    }

    fn vacuum(&self) -> FreeElement {
        self.unit()
    }

    fn zero(&self, b: &Weight) -> FreeElement {
        FreeElement::zero(b.clone())
    }

    fn block_of(&self, e: &FreeElement) -> Weight {
        e.weight().clone()
    }

    fn block_label(&self, b: &Weight) -> String {
        format!("wt({b})")
    }

    fn dim(&self, b: &Weight) -> usize {
        self.weight_basis(b).dim()
    }

    fn raised_block(&self, b: &Weight, i: i64, n: u32) -> Option<Weight> {
        let w = b.add(&Weight::alpha(i).scale(n as i64));
        if w.coords().any(|(_, c)| *c > 0) {
            None
        } else {
            Some(w)
        }
    }

    fn lowered_block(&self, b: &Weight, i: i64, n: u32) -> Weight {
        b.sub(&Weight::alpha(i).scale(n as i64))
    }

    fn raise(&self, i: i64, e: &FreeElement) -> FreeElement {
        self.e_prime(i, e)
    }

    fn lower_divided(&self, i: i64, n: u32, e: &FreeElement) -> FreeElement {
        self.mul_f_divided(i, n, e)
    }

    fn add(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        a.add(b)
    }

    fn scale(&self, a: &FreeElement, c: &RatFunc) -> FreeElement {
        a.scale(c)
    }

    fn is_zero(&self, e: &FreeElement) -> bool {
        self.is_zero(e)
    }

    fn coords(&self, e: &FreeElement) -> Vec<RatFunc> {
        self.coords(e)
    }

    fn pivot_elements(&self, b: &Weight) -> Vec<FreeElement> {
        let basis = self.weight_basis(b);
        basis
            .pivots
            .iter()
            .map(|&p| FreeElement::single(basis.words[p].clone(), RatFunc::one()))
            .collect()
    }

    fn reduce(&self, e: &FreeElement) -> FreeElement {
        self.reduce(e)
    }

    fn form(&self, a: &FreeElement, b: &FreeElement) -> RatFunc {
        self.kashiwara_form(a, b)
    }

    fn bar(&self, e: &FreeElement) -> FreeElement {
        e.bar()
    }

    fn bar_radical_stable(&self, b: &Weight) -> bool {
        let basis = self.weight_basis(b);
        for kv in &basis.radical {
            let elem = FreeElement::from_terms(
                b.clone(),
                basis.words.iter().cloned().zip(kv.iter().cloned()),
            );
            if !self.is_zero(&elem.bar()) {
                return false;
            }
        }
        true
    }

    fn integral_generators(&self, b: &Weight) -> Vec<(FreeElement, String)> {
        let basis = self.weight_basis(b);
        basis
            .words
            .iter()
            .map(|w| {
                let mut coeff = RatFunc::one();
                for (i, run) in letter_runs(w.letters()) {
                    let fact = quantum_factorial(run as i64, self.rd.d(i)).expect("run >= 0");
                    coeff = coeff.div(&RatFunc::from_laurent(fact)).expect("[n]! != 0");
                }
                (
                    FreeElement::single(w.clone(), coeff),
                    format!("{}", DividedWord(w)),
                )
            })
            .collect()
    }

    fn term_strings(&self, e: &FreeElement) -> Vec<(String, String)> {
        e.terms()
            .map(|(w, c)| (w.to_string(), c.to_string()))
            .collect()
    }
}

impl UqAlgebra {
    /// The modified lowering operator. A long-lived
    /// [`Engine`](crate::crystal::Engine) amortizes the kernel solves over
    /// many applications; this convenience builds one per call.
    pub fn f_tilde(&self, i: i64, a: &FreeElement) -> Result<FreeElement, crate::crystal::CrystalError> {
        crate::crystal::Engine::new(self).f_tilde(i, a)
    }

    /// The modified raising operator (may return a zero element).
    pub fn e_tilde(&self, i: i64, a: &FreeElement) -> Result<FreeElement, crate::crystal::CrystalError> {
        crate::crystal::Engine::new(self).e_tilde(i, a)
    }
}

/// Breadth-first closure of the unit under the modified lowering operators:
/// the crystal of the algebra half, with lattice and reports.
pub fn binfty_graph(algebra: &UqAlgebra, depth: u32) -> crate::crystal::CrystalBuild<UqAlgebra> {
    crate::crystal::Engine::new(algebra).build(depth)
}

/// Run-length view of a word: consecutive equal letters grouped.
fn letter_runs(letters: &[i64]) -> Vec<(i64, u32)> {
    let mut out: Vec<(i64, u32)> = Vec::new();
    for &l in letters {
        match out.last_mut() {
            Some((i, n)) if *i == l => *n += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

/// Divided-power rendering of a word, e.g. `f[1]^(2)f[3]`.
struct DividedWord<'a>(&'a Word);

impl fmt::Display for DividedWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, n) in letter_runs(self.0.letters()) {
            if n == 1 {
                write!(f, "f[{i}]")?;
            } else {
                write!(f, "f[{i}]^({n})")?;
            }
        }
        Ok(())
    }
}

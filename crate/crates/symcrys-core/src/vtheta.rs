//! The module `V_theta(lambda)`: words in the lowering generators applied to
//! a vacuum vector, with the involution-twisted commutation rule
//! `E_i F_j = q^{-(a_i, a_j)} F_j E_i + delta_{i,j} + delta_{theta(i),j} T_i`.
//!
//! As with the algebra half, the module is realized through its symmetric
//! bilinear form: blocks are keyed by word length and theta-symmetrized
//! weight (the grading the `T_i` see), and equality is decided by the
//! Gram radical per block. The free-module actions on `vac'` and `vac''`
//! are kept as an independent oracle for the commutation-based action.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::crystal::Carrier;
use crate::rootdata::{DominantWeight, RootDatum, SymWeight, Weight};
use crate::scalars::{self, quantum_factorial, RatFunc};
use crate::uqminus::{FreeElement, UqAlgebra, Word};

type WordsBySym = Arc<BTreeMap<SymWeight, Vec<VWord>>>;

/// A word `F_{i_1} ... F_{i_l} vac`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VWord(Vec<i64>);

impl VWord {
    pub fn vacuum() -> Self {
        VWord(Vec::new())
    }

    pub fn new(letters: Vec<i64>) -> Self {
        VWord(letters)
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

    pub fn prepend(&self, i: i64) -> VWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(i);
        v.extend_from_slice(&self.0);
        VWord(v)
    }

    pub fn remove(&self, k: usize) -> VWord {
        let mut v = self.0.clone();
        v.remove(k);
        VWord(v)
    }
}

impl fmt::Display for VWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.0 {
            write!(f, "F[{i}]")?;
        }
        write!(f, "vac")
    }
}

/// Block key: word length and theta-symmetrized weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct VBlock {
    pub len: u32,
    pub sym: SymWeight,
}

/// An element: finite combination of words sharing one block.
#[derive(Debug, Clone)]
pub struct VElement {
    terms: BTreeMap<VWord, RatFunc>,
    block: VBlock,
}

impl PartialEq for VElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.terms.is_empty() || self.block == other.block)
    }
}

impl Eq for VElement {}

impl VElement {
    pub fn zero(block: VBlock) -> Self {
        VElement {
            terms: BTreeMap::new(),
            block,
        }
    }

    pub fn block(&self) -> &VBlock {
        &self.block
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VWord, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_syntactic_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: VWord, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
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

    pub fn add(&self, other: &Self) -> Self {
        if self.terms.is_empty() {
            return other.clone();
        }
        if other.terms.is_empty() {
            return self.clone();
        }
        assert_eq!(self.block, other.block, "cannot add different blocks");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.block.clone());
        }
        VElement {
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
            block: self.block.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    /// Coefficientwise `q -> q^{-1}`, words fixed.
    pub fn bar(&self) -> Self {
        VElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.bar()))
                .collect(),
            block: self.block.clone(),
        }
    }
}

impl fmt::Display for VElement {
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

/// Per-block linear data, mirroring the algebra side.
#[derive(Debug)]
pub struct VBlockBasis {
    pub block: VBlock,
    pub words: Vec<VWord>,
    word_index: HashMap<VWord, usize>,
    pub gram: Vec<Vec<RatFunc>>,
    pub pivots: Vec<usize>,
    solver_rows: Vec<usize>,
    solver_inv: Vec<Vec<RatFunc>>,
    pub radical: Vec<Vec<RatFunc>>,
}

impl VBlockBasis {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn word_position(&self, w: &VWord) -> Option<usize> {
        self.word_index.get(w).copied()
    }

    fn coords_from_pairings(&self, pairings: &[RatFunc]) -> Vec<RatFunc> {
        let rhs: Vec<RatFunc> = self
            .solver_rows
            .iter()
            .map(|&r| pairings[r].clone())
            .collect();
        scalars::mat_vec(&self.solver_inv, &rhs)
    }
}

/// The module context: root datum, dominant weight, memoized block bases,
/// word pairings and per-length word tables.
pub struct VModule {
    rd: RootDatum,
    lambda: DominantWeight,
    bases: Mutex<BTreeMap<VBlock, Arc<VBlockBasis>>>,
    pairs: Mutex<HashMap<(VWord, VWord), RatFunc>>,
    words_by_len: Mutex<BTreeMap<u32, WordsBySym>>,
}

impl VModule {
    pub fn new(rd: RootDatum, lambda: DominantWeight) -> Self {
        VModule {
            rd,
            lambda,
            bases: Mutex::new(BTreeMap::new()),
            pairs: Mutex::new(HashMap::new()),
            words_by_len: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn rd(&self) -> &RootDatum {
        &self.rd
    }

    pub fn lambda(&self) -> &DominantWeight {
        &self.lambda
    }

    pub fn vacuum(&self) -> VElement {
        let mut out = VElement::zero(VBlock::default());
        out.add_term(VWord::vacuum(), RatFunc::one());
        out
    }

    /// `alpha_i + alpha_{theta(i)}`.
    fn sym_alpha(&self, i: i64) -> Weight {
        Weight::alpha(i).add(&Weight::alpha(self.rd.theta(i)))
    }

    pub fn block_of_word(&self, w: &VWord) -> VBlock {
        let mut sym = Weight::zero();
        for &j in w.letters() {
            sym = sym.add(&self.sym_alpha(j));
        }
        VBlock {
            len: w.len() as u32,
            sym: SymWeight(sym),
        }
    }

    pub fn single(&self, w: VWord, coeff: RatFunc) -> VElement {
        let block = self.block_of_word(&w);
        let mut out = VElement::zero(block);
        out.add_term(w, coeff);
        out
    }

    /// `F_i` acts by prepending the letter.
    pub fn act_f(&self, i: i64, u: &VElement) -> VElement {
        debug_assert!(self.rd.contains(i));
        let block = VBlock {
            len: u.block.len + 1,
            sym: SymWeight(u.block.sym.0.add(&self.sym_alpha(i))),
        };
        VElement {
            terms: u
                .terms
                .iter()
                .map(|(w, c)| (w.prepend(i), c.clone()))
                .collect(),
            block,
        }
    }

    /// Divided power `F_i^{(n)}`.
    pub fn act_f_divided(&self, i: i64, n: u32, u: &VElement) -> VElement {
        let fact = quantum_factorial(n as i64, self.rd.d(i)).expect("n >= 0");
        let inv = RatFunc::one()
            .div(&RatFunc::from_laurent(fact))
            .expect("[n]! != 0");
        let mut out = u.scale(&inv);
        for _ in 0..n {
            out = self.act_f(i, &out);
        }
        out
    }

    /// `T_i` scales a block by `q^{(alpha_i, lambda) - (alpha_i, sym)}`.
    pub fn act_t(&self, i: i64, u: &VElement) -> VElement {
        u.scale(&RatFunc::q_power(self.t_exponent(i, &u.block)))
    }

    fn t_exponent(&self, i: i64, block: &VBlock) -> i64 {
        self.lambda.alpha_pairing(i) - self.rd.pairing_with_alpha(&block.sym.0, i)
    }

    /// `E_i`, pushed through the word by the commutation rule; the vacuum is
    /// annihilated.
    pub fn act_e(&self, i: i64, u: &VElement) -> VElement {
        let theta_i = self.rd.theta(i);
        let target = VBlock {
            len: u.block.len.saturating_sub(1),
            sym: SymWeight(u.block.sym.0.sub(&self.sym_alpha(i))),
        };
        let mut out = VElement::zero(target);
        if u.block.len == 0 {
            return out;
        }
        for (w, c) in &u.terms {
            let letters = w.letters();
            let l = letters.len();
            // Suffix pairing sums: suffix_sym[k] = (alpha_i, sum_{m>k} sym(alpha_{j_m})).
            let mut suffix_sym = vec![0i64; l + 1];
            for k in (0..l).rev() {
                suffix_sym[k] =
                    suffix_sym[k + 1] + self.rd.pairing_with_alpha(&self.sym_alpha(letters[k]), i);
            }
            let mut pass = 0i64;
            for (k, &j) in letters.iter().enumerate() {
                if j == i {
                    out.add_term(w.remove(k), c.mul(&RatFunc::q_power(pass)));
                } else if j == theta_i {
                    let t_exp = self.lambda.alpha_pairing(i) - suffix_sym[k + 1];
                    out.add_term(w.remove(k), c.mul(&RatFunc::q_power(pass + t_exp)));
                }
                pass -= self.rd.pairing(i, j);
            }
        }
        out
    }

    /// Memoized word pairing via `(F_j w', v) = (w', E_j v)` with
    /// `(vac, vac) = 1`; zero across different lengths.
    fn pair_words(&self, w: &VWord, v: &VWord) -> RatFunc {
        if w.len() != v.len() {
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
        let tail = VWord::new(w.letters()[1..].to_vec());
        let lowered = self.act_e(j, &self.single(v.clone(), RatFunc::one()));
        let mut acc = RatFunc::zero();
        for (u, c) in &lowered.terms {
            acc = acc.add(&c.mul(&self.pair_words(&tail, u)));
        }
        self.pairs.lock().unwrap().insert(key, acc.clone());
        acc
    }

    /// The symmetric bilinear form with `(vac, vac) = 1` and
    /// `(E_i u, v) = (u, F_i v)`.
    pub fn v_form(&self, u: &VElement, v: &VElement) -> RatFunc {
        if u.is_syntactic_zero() || v.is_syntactic_zero() {
            return RatFunc::zero();
        }
        let mut acc = RatFunc::zero();
        for (w, cw) in &u.terms {
            for (x, cx) in &v.terms {
                let p = self.pair_words(w, x);
                if !p.is_zero() {
                    acc = acc.add(&cw.mul(cx).mul(&p));
                }
            }
        }
        acc
    }

    /// All words of one length, grouped by symmetrized weight;
    /// lexicographic in the index order within each group.
    fn words_of_len(&self, len: u32) -> WordsBySym {
        if let Some(hit) = self.words_by_len.lock().unwrap().get(&len) {
            return hit.clone();
        }
        let mut map: BTreeMap<SymWeight, Vec<VWord>> = BTreeMap::new();
        let mut current = Vec::with_capacity(len as usize);
        fn rec(indices: &[i64], len: u32, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if current.len() == len as usize {
                out.push(current.clone());
                return;
            }
            for &i in indices {
                current.push(i);
                rec(indices, len, current, out);
                current.pop();
            }
        }
        let mut all = Vec::new();
        rec(self.rd.indices(), len, &mut current, &mut all);
        for letters in all {
            let w = VWord::new(letters);
            let b = self.block_of_word(&w);
            map.entry(b.sym).or_default().push(w);
        }
        let arc = Arc::new(map);
        let mut guard = self.words_by_len.lock().unwrap();
        guard.entry(len).or_insert_with(|| arc.clone());
        guard[&len].clone()
    }

    pub fn enumerate_words(&self, block: &VBlock) -> Vec<VWord> {
        self.words_of_len(block.len)
            .get(&block.sym)
            .cloned()
            .unwrap_or_default()
    }

    /// Memoized block data.
    pub fn block_basis(&self, block: &VBlock) -> Arc<VBlockBasis> {
        if let Some(hit) = self.bases.lock().unwrap().get(block) {
            return hit.clone();
        }
        let basis = Arc::new(self.build_block_basis(block));
        let mut guard = self.bases.lock().unwrap();
        guard.entry(block.clone()).or_insert_with(|| basis.clone());
        guard[block].clone()
    }

    fn build_block_basis(&self, block: &VBlock) -> VBlockBasis {
        let words = self.enumerate_words(block);
        let n = words.len();
        let mut gram = vec![vec![RatFunc::zero(); n]; n];
        for r in 0..n {
            for c in 0..n {
                gram[r][c] = self.pair_words(&words[r], &words[c]);
            }
        }
        let (pivots, solver_rows, solver_inv) = crate::uqminus::build_pivot_solver(&gram);
        let radical = scalars::kernel_basis(&gram);
        let word_index = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, w)| (w, k))
            .collect();
        VBlockBasis {
            block: block.clone(),
            words,
            word_index,
            gram,
            pivots,
            solver_rows,
            solver_inv,
            radical,
        }
    }

    fn pairing_vector(&self, basis: &VBlockBasis, u: &VElement) -> Vec<RatFunc> {
        let mut out = vec![RatFunc::zero(); basis.words.len()];
        for (w, c) in &u.terms {
            let k = basis
                .word_position(w)
                .expect("element words live in their block");
            for (r, slot) in out.iter_mut().enumerate() {
                let g = &basis.gram[r][k];
                if !g.is_zero() {
                    *slot = slot.add(&c.mul(g));
                }
            }
        }
        out
    }

    pub fn coords(&self, u: &VElement) -> Vec<RatFunc> {
        let basis = self.block_basis(&u.block);
        let pairings = self.pairing_vector(&basis, u);
        basis.coords_from_pairings(&pairings)
    }

    pub fn reduce(&self, u: &VElement) -> VElement {
        let basis = self.block_basis(&u.block);
        let coords = self.coords(u);
        let mut out = VElement::zero(u.block.clone());
        for (c, &p) in coords.iter().zip(&basis.pivots) {
            out.add_term(basis.words[p].clone(), c.clone());
        }
        out
    }

    pub fn is_zero(&self, u: &VElement) -> bool {
        u.is_syntactic_zero() || self.coords(u).iter().all(|c| c.is_zero())
    }

    pub fn equal(&self, u: &VElement, v: &VElement) -> bool {
        if u.block != v.block {
            return self.is_zero(u) && self.is_zero(v);
        }
        self.coords(u) == self.coords(v)
    }

    /// Action on the free module with basis `a vac'`:
    /// `E_i(a vac') = (e'_i a + q^{(alpha_i, lambda)} Ad(t_i)(e*_{theta(i)} a)) vac'`.
    /// The two summands are homogeneous of different weights, so they come
    /// back as separate components.
    pub fn model_e_vacprime(&self, uq: &UqAlgebra, i: i64, a: &FreeElement) -> Vec<FreeElement> {
        let mut out = Vec::new();
        let first = uq.e_prime(i, a);
        if !first.is_syntactic_zero() {
            out.push(first);
        }
        let star = uq.e_star(self.rd.theta(i), a);
        if !star.is_syntactic_zero() {
            // Ad(t_i) x = q^{(alpha_i, wt x)} x on homogeneous x.
            let ad_exp = self.rd.pairing_with_alpha(star.weight(), i);
            let scalar = RatFunc::q_power(self.lambda.alpha_pairing(i) + ad_exp);
            out.push(star.scale(&scalar));
        }
        out
    }

    /// Action on the free module with basis `a vac''`:
    /// `F_i(a vac'') = (f_i a + q^{(alpha_i, lambda)} (Ad(t_i) a) f_{theta(i)}) vac''`.
    pub fn model_f_vacdoubleprime(
        &self,
        uq: &UqAlgebra,
        i: i64,
        a: &FreeElement,
    ) -> Vec<FreeElement> {
        let mut out = Vec::new();
        let first = uq.mul_f(i, a);
        if !first.is_syntactic_zero() {
            out.push(first);
        }
        if !a.is_syntactic_zero() {
            let ad_exp = self.rd.pairing_with_alpha(a.weight(), i);
            let scalar = RatFunc::q_power(self.lambda.alpha_pairing(i) + ad_exp);
            // a * f_{theta(i)}: append the letter to every word.
            let theta_i = self.rd.theta(i);
            let appended = FreeElement::from_terms(
                a.weight().sub(&Weight::alpha(theta_i)),
                a.terms().map(|(w, c)| (w.append(theta_i), c.mul(&scalar))),
            );
            if !appended.is_syntactic_zero() {
                out.push(appended);
            }
        }
        out
    }

    /// Wordwise identification `sum c_w f_w  ->  sum c_w F_w vac` of a
    /// homogeneous element into the block of the given length.
    pub fn from_free(&self, a: &FreeElement) -> VElement {
        let mut block: Option<VBlock> = None;
        let mut terms = Vec::new();
        for (w, c) in a.terms() {
            let vw = VWord::new(w.letters().to_vec());
            let b = self.block_of_word(&vw);
            match &block {
                None => block = Some(b),
                Some(prev) => assert_eq!(prev, &b, "components must share a block"),
            }
            terms.push((vw, c.clone()));
        }
        let mut out = VElement::zero(block.unwrap_or_default());
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    /// Compares the commutation-based `E_i` action on a word against the
    /// `vac'`-model route mapped wordwise into the module.
    pub fn psi_crosscheck(&self, uq: &UqAlgebra, word: &VWord, i: i64) -> bool {
        let direct = self.act_e(i, &self.single(word.clone(), RatFunc::one()));
        let a = FreeElement::single(Word::new(word.letters().to_vec()), RatFunc::one());
        let comps = self.model_e_vacprime(uq, i, &a);
        let target = direct.block.clone();
        let mut model = VElement::zero(target);
        for comp in &comps {
            model = model.add(&self.from_free(comp));
        }
        self.equal(&direct, &model)
    }
}

impl Carrier for VModule {
    type Elem = VElement;
    type Block = VBlock;

    fn indices(&self) -> &[i64] {
        self.rd.indices()
    }

    fn rd(&self) -> &RootDatum {
        &self.rd
    }

    fn vacuum(&self) -> VElement {
        self.vacuum()
    }

    fn zero(&self, b: &VBlock) -> VElement {
        VElement::zero(b.clone())
    }

    fn block_of(&self, e: &VElement) -> VBlock {
        e.block.clone()
    }

    fn block_label(&self, b: &VBlock) -> String {
        format!("len {}, sym {}", b.len, b.sym)
    }

    fn dim(&self, b: &VBlock) -> usize {
        self.block_basis(b).dim()
    }

    fn raised_block(&self, b: &VBlock, i: i64, n: u32) -> Option<VBlock> {
        if b.len < n {
            return None;
        }
        let sym = b.sym.0.sub(&self.sym_alpha(i).scale(n as i64));
        Some(VBlock {
            len: b.len - n,
            sym: SymWeight(sym),
        })
    }

    fn lowered_block(&self, b: &VBlock, i: i64, n: u32) -> VBlock {
        VBlock {
            len: b.len + n,
            sym: SymWeight(b.sym.0.add(&self.sym_alpha(i).scale(n as i64))),
        }
    }

    fn raise(&self, i: i64, e: &VElement) -> VElement {
        self.act_e(i, e)
    }

    fn lower_divided(&self, i: i64, n: u32, e: &VElement) -> VElement {
        self.act_f_divided(i, n, e)
    }

    fn add(&self, a: &VElement, b: &VElement) -> VElement {
        a.add(b)
    }

    fn scale(&self, a: &VElement, c: &RatFunc) -> VElement {
        a.scale(c)
    }

    fn is_zero(&self, e: &VElement) -> bool {
        self.is_zero(e)
    }

    fn coords(&self, e: &VElement) -> Vec<RatFunc> {
        self.coords(e)
    }

    fn pivot_elements(&self, b: &VBlock) -> Vec<VElement> {
        let basis = self.block_basis(b);
        basis
            .pivots
            .iter()
            .map(|&p| self.single(basis.words[p].clone(), RatFunc::one()))
            .collect()
    }

    fn reduce(&self, e: &VElement) -> VElement {
        self.reduce(e)
    }

    fn form(&self, a: &VElement, b: &VElement) -> RatFunc {
        self.v_form(a, b)
    }

    fn bar(&self, e: &VElement) -> VElement {
        e.bar()
    }

    fn bar_radical_stable(&self, b: &VBlock) -> bool {
        let basis = self.block_basis(b);
        for kv in &basis.radical {
            let mut elem = VElement::zero(b.clone());
            for (w, c) in basis.words.iter().zip(kv.iter()) {
                elem.add_term(w.clone(), c.clone());
            }
            if !self.is_zero(&elem.bar()) {
                return false;
            }
        }
        true
    }

    fn integral_generators(&self, b: &VBlock) -> Vec<(VElement, String)> {
        let basis = self.block_basis(b);
        basis
            .words
            .iter()
            .map(|w| {
                let mut coeff = RatFunc::one();
                let mut label = String::new();
                let mut runs: Vec<(i64, u32)> = Vec::new();
                for &l in w.letters() {
                    match runs.last_mut() {
                        Some((i, n)) if *i == l => *n += 1,
                        _ => runs.push((l, 1)),
                    }
                }
                for (i, run) in &runs {
                    let fact = quantum_factorial(*run as i64, self.rd.d(*i)).expect("run >= 0");
                    coeff = coeff.div(&RatFunc::from_laurent(fact)).expect("[n]! != 0");
                    if *run == 1 {
                        label.push_str(&format!("F[{i}]"));
                    } else {
                        label.push_str(&format!("F[{i}]^({run})"));
                    }
                }
                label.push_str("vac");
                (self.single(w.clone(), coeff), label)
            })
            .collect()
    }

    fn term_strings(&self, e: &VElement) -> Vec<(String, String)> {
        e.terms()
            .map(|(w, c)| (w.to_string(), c.to_string()))
            .collect()
    }
}

impl VModule {
    /// The modified lowering operator; see the engine for amortized use.
    pub fn f_tilde(&self, i: i64, u: &VElement) -> Result<VElement, crate::crystal::CrystalError> {
        crate::crystal::Engine::new(self).f_tilde(i, u)
    }

    /// The modified raising operator (may return a zero element).
    pub fn e_tilde(&self, i: i64, u: &VElement) -> Result<VElement, crate::crystal::CrystalError> {
        crate::crystal::Engine::new(self).e_tilde(i, u)
    }
}

/// Breadth-first closure of the vacuum under the modified lowering
/// operators: the crystal of the module, with lattice and reports.
pub fn crystal_graph(module: &VModule, depth: u32) -> crate::crystal::CrystalBuild<VModule> {
    crate::crystal::Engine::new(module).build(depth)
}

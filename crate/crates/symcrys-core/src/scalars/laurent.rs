//! Laurent polynomials in one indeterminate over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use super::{rat_from, rat_one, Int, Rat};

/// A Laurent polynomial `sum c_e * q^e` with exact rational coefficients.
///
/// No stored coefficient is zero, so two equal values always compare equal
/// structurally.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::q_power(0)
    }

    /// The monomial `q^e`.
    pub fn q_power(e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(e, rat_one());
        LaurentPoly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat_from(n))
    }

    /// Builds from `(exponent, coefficient)` pairs, dropping zeros and
    /// summing duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let entry = coeffs.entry(e).or_insert_with(super::rat_zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(super::rat_zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, or 0 for zero. A crude size measure used by the
    /// pivoting heuristic in the linear solver.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let entry = coeffs.entry(*e).or_insert_with(super::rat_zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(e);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                let c = c1 * c2;
                let entry = coeffs.entry(e).or_insert_with(super::rat_zero);
                *entry += c;
                if entry.is_zero() {
                    coeffs.remove(&e);
                }
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `q = 1` (sum of coefficients).
    pub fn eval_at_one(&self) -> Rat {
        let mut acc = super::rat_zero();
        for c in self.coeffs.values() {
            acc += c;
        }
        acc
    }

    /// Exact quotient by `other`; returns `None` if not divisible.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.span() < other.span() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let d_hi = other.max_exp().unwrap();
        let d_lead = other.coeff(d_hi);
        // An exact quotient has at most span(self) - span(other) + 1 terms;
        // division is top-down, so anything left after that many steps means
        // the input was not divisible.
        let max_steps = (self.span() - other.span() + 1) as usize;
        for _ in 0..max_steps {
            if rem.is_zero() {
                break;
            }
            if rem.span() < other.span() {
                return None;
            }
            let r_hi = rem.max_exp().unwrap();
            let e = r_hi - d_hi;
            let c = rem.coeff(r_hi) / &d_lead;
            let term = LaurentPoly::from_terms([(e, c)]);
            rem = rem.sub(&term.mul(other));
            quot = quot.add(&term);
        }
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    /// Dense integer coefficient vector of the shifted-to-zero polynomial,
    /// together with the shift. The vector is primitive (content 1) with a
    /// positive leading coefficient. Returns `None` for zero.
    fn to_primitive_int(&self) -> Option<(Vec<Int>, i64)> {
        use num_integer::Integer;
        let lo = self.min_exp()?;
        let hi = self.max_exp()?;
        let n = (hi - lo + 1) as usize;
        // Common denominator.
        let mut den = Int::from(1);
        for c in self.coeffs.values() {
            den = den.lcm(c.denom());
        }
        let mut v = vec![Int::from(0); n];
        for (e, c) in &self.coeffs {
            v[(e - lo) as usize] = c.numer() * (&den / c.denom());
        }
        let mut content = Int::from(0);
        for x in &v {
            content = content.gcd(x);
        }
        if content > Int::from(1) {
            for x in &mut v {
                *x = &*x / &content;
            }
        }
        if v.last().map(|x| x.is_negative()).unwrap_or(false) {
            for x in &mut v {
                *x = -x.clone();
            }
        }
        Some((v, lo))
    }

    fn from_int_vec(v: &[Int], shift: i64) -> Self {
        LaurentPoly::from_terms(
            v.iter()
                .enumerate()
                .map(|(k, c)| (shift + k as i64, Rat::from_integer(c.clone()))),
        )
    }

    /// Monic gcd over `Q[q]`, computed on primitive integer polynomials with
    /// a primitive pseudo-remainder sequence to limit coefficient blowup.
    /// Monomial factors are discarded: the result has nonzero constant term
    /// (or is 1 when either input is zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let a = self.to_primitive_int();
        let b = other.to_primitive_int();
        let (a, b) = match (a, b) {
            (Some((a, _)), Some((b, _))) => (a, b),
            _ => return Self::one(),
        };
        let g = int_poly_gcd(a, b);
        let g = LaurentPoly::from_int_vec(&g, 0);
        // Normalize monic in the leading term.
        let lead = g.coeff(g.max_exp().unwrap());
        g.scale(&(rat_one() / lead))
    }
}

fn trim(v: &mut Vec<Int>) {
    while v.last().map(|x| x.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn int_content(v: &[Int]) -> Int {
    use num_integer::Integer;
    let mut c = Int::from(0);
    for x in v {
        c = c.gcd(x);
    }
    c
}

fn int_primitive(mut v: Vec<Int>) -> Vec<Int> {
    let c = int_content(&v);
    if c > Int::from(1) {
        for x in &mut v {
            *x = &*x / &c;
        }
    }
    if v.last().map(|x| x.is_negative()).unwrap_or(false) {
        for x in &mut v {
            *x = -x.clone();
        }
    }
    v
}

/// Pseudo-remainder of `a` by `b` (dense, little-endian, b nonempty).
fn pseudo_rem(mut a: Vec<Int>, b: &[Int]) -> Vec<Int> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while a.len() >= b.len() && !a.is_empty() {
        let da = a.len() - 1;
        let la = a.last().unwrap().clone();
        for x in a.iter_mut() {
            *x = &*x * &lb;
        }
        for k in 0..=db {
            let t = &la * &b[k];
            a[da - db + k] -= t;
        }
        trim(&mut a);
    }
    a
}

fn int_poly_gcd(a: Vec<Int>, b: Vec<Int>) -> Vec<Int> {
    let mut a = int_primitive(a);
    let mut b = int_primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(a, &b);
        a = b;
        b = int_primitive(r);
    }
    a
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs_is_one = {
                use num_traits::One;
                abs.is_one()
            };
            match (*e, abs_is_one) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{abs}*q^{e}")?,
            }
        }
        Ok(())
    }
}

//! Exact rational functions in the two Hecke parameters `p0`, `p1`.
//!
//! Keeping the parameters as indeterminates makes the standing restrictions
//! (`p0^2 != 1`, `p1^2 != 1` and the non-degeneracy assumptions) hold
//! generically; a numeric specialization simply injects constant values
//! instead of the two monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use super::{rat_one, LaurentPoly, Rat, ScalarError};

/// A Laurent polynomial in `p0`, `p1` with rational coefficients.
/// Exponent pairs map to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly2 {
    coeffs: BTreeMap<(i64, i64), Rat>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        LaurentPoly2 {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    /// The monomial `p0^a * p1^b`.
    pub fn monomial(a: i64, b: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((a, b), rat_one());
        LaurentPoly2 { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((0, 0), c);
        }
        LaurentPoly2 { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Rat)>>(terms: I) -> Self {
        let mut coeffs: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
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
        LaurentPoly2 { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.coeffs.iter()
    }

    fn min_exps(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let a = self.coeffs.keys().map(|(a, _)| *a).min().unwrap();
        let b = self.coeffs.keys().map(|(_, b)| *b).min().unwrap();
        Some((a, b))
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
        LaurentPoly2 { coeffs }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly2 {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<(i64, i64), Rat> = BTreeMap::new();
        for ((a1, b1), c1) in &self.coeffs {
            for ((a2, b2), c2) in &other.coeffs {
                let e = (a1 + a2, b1 + b2);
                let c = c1 * c2;
                let entry = coeffs.entry(e).or_insert_with(super::rat_zero);
                *entry += c;
                if entry.is_zero() {
                    coeffs.remove(&e);
                }
            }
        }
        LaurentPoly2 { coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly2 {
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    fn shift(&self, da: i64, db: i64) -> Self {
        LaurentPoly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|((a, b), c)| ((a + da, b + db), c.clone()))
                .collect(),
        }
    }

    /// Views the polynomial as a polynomial in `p1` with coefficients in
    /// `Q[p0]`. Requires nonnegative exponents.
    fn as_p1_poly(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for ((a, b), c) in &self.coeffs {
            debug_assert!(*a >= 0 && *b >= 0);
            let entry = out.entry(*b).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(&LaurentPoly::from_terms([(*a, c.clone())]));
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn from_p1_poly(map: &BTreeMap<i64, LaurentPoly>) -> Self {
        let mut terms = Vec::new();
        for (b, p) in map {
            for (a, c) in p.terms() {
                terms.push(((*a, *b), c.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// Exact quotient, or `None` when not divisible. Both polynomials must
    /// have nonnegative exponents.
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.as_p1_poly();
        let den = other.as_p1_poly();
        let (dden, lden) = {
            let (k, v) = den.iter().next_back().unwrap();
            (*k, v.clone())
        };
        let mut quot: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        loop {
            let Some((drem, lrem)) = rem.iter().next_back().map(|(k, v)| (*k, v.clone())) else {
                break;
            };
            if drem < dden {
                return None;
            }
            let qc = lrem.div_exact(&lden)?;
            let qd = drem - dden;
            for (b, p) in &den {
                let sub = p.mul(&qc);
                let entry = rem.entry(b + qd).or_insert_with(LaurentPoly::zero);
                *entry = entry.sub(&sub);
            }
            rem.retain(|_, p| !p.is_zero());
            quot.insert(qd, qc);
        }
        Some(Self::from_p1_poly(&quot))
    }

    pub fn eval(&self, p0: &Rat, p1: &Rat) -> Option<Rat> {
        let mut acc = super::rat_zero();
        for ((a, b), c) in &self.coeffs {
            acc += c * rat_pow(p0, *a)? * rat_pow(p1, *b)?;
        }
        Some(acc)
    }
}

fn rat_pow(x: &Rat, e: i64) -> Option<Rat> {
    if e < 0 && x.is_zero() {
        return None;
    }
    let mut acc = rat_one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc = acc.recip();
    }
    Some(acc)
}

/// gcd in `Q[p0]` keeping any common monomial factor (inputs have
/// nonnegative exponents).
fn xpoly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let shift = a.min_exp().unwrap().min(b.min_exp().unwrap());
    a.gcd(b).shift(shift)
}

fn content(p: &BTreeMap<i64, LaurentPoly>) -> LaurentPoly {
    let mut c = LaurentPoly::zero();
    for v in p.values() {
        c = xpoly_gcd(&c, v);
    }
    c
}

fn divide_content(p: &BTreeMap<i64, LaurentPoly>, c: &LaurentPoly) -> BTreeMap<i64, LaurentPoly> {
    p.iter()
        .map(|(k, v)| (*k, v.div_exact(c).expect("content divides")))
        .collect()
}

/// Pseudo-remainder in the `p1` direction.
fn prem(
    a: &BTreeMap<i64, LaurentPoly>,
    b: &BTreeMap<i64, LaurentPoly>,
) -> BTreeMap<i64, LaurentPoly> {
    let mut r = a.clone();
    let (db, lb) = {
        let (k, v) = b.iter().next_back().unwrap();
        (*k, v.clone())
    };
    loop {
        let Some((dr, lr)) = r.iter().next_back().map(|(k, v)| (*k, v.clone())) else {
            break;
        };
        if dr < db {
            break;
        }
        // r := lb * r - lr * p1^{dr-db} * b
        let mut next: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (k, v) in &r {
            next.insert(*k, v.mul(&lb));
        }
        for (k, v) in b {
            let entry = next.entry(k + dr - db).or_insert_with(LaurentPoly::zero);
            *entry = entry.sub(&v.mul(&lr));
        }
        next.retain(|_, p| !p.is_zero());
        r = next;
    }
    r
}

/// gcd in `Q[p0, p1]` via primitive pseudo-remainder sequences, unique up to
/// a rational scalar. Inputs must have nonnegative exponents.
fn gcd2(a: &LaurentPoly2, b: &LaurentPoly2) -> LaurentPoly2 {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let pa = a.as_p1_poly();
    let pb = b.as_p1_poly();
    let ca = content(&pa);
    let cb = content(&pb);
    let cg = xpoly_gcd(&ca, &cb);
    let mut u = divide_content(&pa, &ca);
    let mut v = divide_content(&pb, &cb);
    if u.keys().next_back() < v.keys().next_back() {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_empty() {
        let r = prem(&u, &v);
        u = v;
        v = if r.is_empty() {
            r
        } else {
            divide_content(&r, &content(&r))
        };
    }
    let prim = divide_content(&u, &content(&u));
    let mut g: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (k, p) in &prim {
        g.insert(*k, p.mul(&cg));
    }
    LaurentPoly2::from_p1_poly(&g)
}

/// An element of `Q(p0, p1)` as a reduced fraction.
///
/// Canonical form mirrors [`super::RatFunc`]: the denominator has
/// nonnegative exponents with per-variable minimum 0, its lexicographically
/// smallest term has coefficient 1, and the fraction is gcd-reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiRatFunc {
    num: LaurentPoly2,
    den: LaurentPoly2,
}

impl MultiRatFunc {
    pub fn new(num: LaurentPoly2, den: LaurentPoly2) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (na, nb) = num.min_exps().unwrap();
        let (da, db) = den.min_exps().unwrap();
        let num_p = num.shift(-na, -nb);
        let den_p = den.shift(-da, -db);
        let g = gcd2(&num_p, &den_p);
        let mut num_p = num_p.div_exact(&g).expect("gcd divides numerator");
        let mut den_p = den_p.div_exact(&g).expect("gcd divides denominator");
        // The quotient may reintroduce a common monomial factor; strip it.
        let (ga, gb) = num_p.min_exps().unwrap();
        let (ha, hb) = den_p.min_exps().unwrap();
        let (ma, mb) = (ga.min(ha), gb.min(hb));
        num_p = num_p.shift(-ma, -mb);
        den_p = den_p.shift(-ma, -mb);
        let trailing = den_p.coeffs.iter().next().map(|(_, c)| c.clone()).unwrap();
        let inv = rat_one() / trailing;
        num_p = num_p.scale(&inv);
        den_p = den_p.scale(&inv);
        Ok(MultiRatFunc {
            num: num_p.shift(na - da + ma, nb - db + mb),
            den: den_p,
        })
    }

    pub fn zero() -> Self {
        MultiRatFunc {
            num: LaurentPoly2::zero(),
            den: LaurentPoly2::one(),
        }
    }

    pub fn one() -> Self {
        MultiRatFunc {
            num: LaurentPoly2::one(),
            den: LaurentPoly2::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly2) -> Self {
        MultiRatFunc {
            num: p,
            den: LaurentPoly2::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(LaurentPoly2::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(super::rat_from(n))
    }

    /// `p0^a * p1^b`.
    pub fn monomial(a: i64, b: i64) -> Self {
        Self::from_poly(LaurentPoly2::monomial(a, b))
    }

    pub fn numerator(&self) -> &LaurentPoly2 {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        MultiRatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Evaluates at rational parameter values; `None` on a pole or a
    /// negative power of zero.
    pub fn eval(&self, p0: &Rat, p1: &Rat) -> Option<Rat> {
        let d = self.den.eval(p0, p1)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(p0, p1)? / d)
    }

    pub fn complexity(&self) -> u64 {
        (self.num.num_terms() + self.den.num_terms()) as u64
    }
}

impl fmt::Display for MultiRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn fmt_poly(p: &LaurentPoly2, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if p.is_zero() {
                return write!(f, "0");
            }
            let mut first = true;
            for ((a, b), c) in p.terms() {
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
                let mut vars = String::new();
                if *a != 0 {
                    vars.push_str(&if *a == 1 {
                        "p0".into()
                    } else {
                        format!("p0^{a}")
                    });
                }
                if *b != 0 {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push_str(&if *b == 1 {
                        "p1".into()
                    } else {
                        format!("p1^{b}")
                    });
                }
                let abs_is_one = {
                    use num_traits::One;
                    abs.is_one()
                };
                if vars.is_empty() {
                    write!(f, "{abs}")?;
                } else if abs_is_one {
                    write!(f, "{vars}")?;
                } else {
                    write!(f, "{abs}*{vars}")?;
                }
            }
            Ok(())
        }
        if self.den == LaurentPoly2::one() {
            fmt_poly(&self.num, f)
        } else {
            write!(f, "(")?;
            fmt_poly(&self.num, f)?;
            write!(f, ")/(")?;
            fmt_poly(&self.den, f)?;
            write!(f, ")")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat_from;
    use super::*;

    fn p0() -> MultiRatFunc {
        MultiRatFunc::monomial(1, 0)
    }

    fn p1() -> MultiRatFunc {
        MultiRatFunc::monomial(0, 1)
    }

    #[test]
    fn laurent_monomials_cancel() {
        let x = p0().mul(&MultiRatFunc::monomial(-1, 0));
        assert_eq!(x, MultiRatFunc::one());
    }

    #[test]
    fn bivariate_reduction() {
        // (p0^2 - p1^2)/(p0 - p1) = p0 + p1
        let num = p0().mul(&p0()).sub(&p1().mul(&p1()));
        let den = p0().sub(&p1());
        let r = num.div(&den).unwrap();
        assert_eq!(r, p0().add(&p1()));
    }

    #[test]
    fn canonical_uniqueness() {
        // a/b computed two ways agrees
        let a = p0().add(&p1()).mul(&p0().sub(&MultiRatFunc::one()));
        let b = p0().mul(&p1()).add(&MultiRatFunc::from_int(3));
        let x = a.div(&b).unwrap();
        let y = a.mul(&b.recip().unwrap());
        assert_eq!(x, y);
        let back = x.mul(&b);
        assert_eq!(back, a);
    }

    #[test]
    fn eval_substitutes() {
        let x = p0().sub(&p1().recip().unwrap());
        let v = x.eval(&rat_from(3), &rat_from(2)).unwrap();
        assert_eq!(v, Rat::new(5.into(), 2.into()));
    }
}

//! Rational functions in `q`, kept in a unique canonical form.

use std::fmt;

use num_traits::Zero;

use super::{rat_one, LaurentPoly, Rat, ScalarError};

/// An element of `Q(q)` as a reduced fraction of Laurent polynomials.
///
/// Canonical form: the denominator is an honest polynomial with nonzero
/// constant term normalized to 1 (any pure `q`-power and scalar factor are
/// absorbed into the numerator), and numerator and denominator share no
/// polynomial factor. Equality of values is therefore structural equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Builds `num / den`, canonicalizing. Errors when `den = 0`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            });
        }
        let a = num.min_exp().unwrap();
        let b = den.min_exp().unwrap();
        let num_poly = num.shift(-a);
        let den_poly = den.shift(-b);
        let g = num_poly.gcd(&den_poly);
        let mut num_poly = num_poly.div_exact(&g).expect("gcd divides numerator");
        let mut den_poly = den_poly.div_exact(&g).expect("gcd divides denominator");
        let c = den_poly.coeff(0);
        debug_assert!(!c.is_zero());
        let inv_c = rat_one() / c;
        num_poly = num_poly.scale(&inv_c);
        den_poly = den_poly.scale(&inv_c);
        Ok(RatFunc {
            num: num_poly.shift(a - b),
            den: den_poly,
        })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(n))
    }

    /// The monomial `q^e`.
    pub fn q_power(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::q_power(e))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RatFunc {
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

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// The involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar()).expect("nonzero denominator")
    }

    pub fn is_bar_fixed(&self) -> bool {
        self == &self.bar()
    }

    /// Order of vanishing at `q = 0`; `None` for the zero function.
    pub fn order_at_zero(&self) -> Option<i64> {
        let n = self.num.min_exp()?;
        // Canonical denominators have constant term 1, but stay general.
        let d = self.den.min_exp().unwrap_or(0);
        Some(n - d)
    }

    /// Membership in `A0` (rational functions regular at `q = 0`).
    pub fn in_a0(&self) -> bool {
        self.order_at_zero().map(|o| o >= 0).unwrap_or(true)
    }

    /// Membership in `A_infinity` (regular at `q = infinity`).
    pub fn in_a_inf(&self) -> bool {
        self.bar().in_a0()
    }

    /// Membership in `A = Q[q, q^{-1}]`.
    pub fn is_laurent(&self) -> bool {
        self.den == LaurentPoly::one()
    }

    /// Value at `q = 0`; errors on a pole.
    pub fn eval_at_zero(&self) -> Result<Rat, ScalarError> {
        match self.order_at_zero() {
            None => Ok(super::rat_zero()),
            Some(o) if o > 0 => Ok(super::rat_zero()),
            Some(o) if o < 0 => Err(ScalarError::PoleAtZero { order: o }),
            _ => {
                let n0 = self.num.min_exp().unwrap();
                let d0 = self.den.min_exp().unwrap();
                Ok(self.num.coeff(n0) / self.den.coeff(d0))
            }
        }
    }

    /// Value at `q = 1`; errors on a pole. The fraction is reduced, so a
    /// vanishing denominator at 1 is a genuine pole.
    pub fn eval_at_one(&self) -> Result<Rat, ScalarError> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return Err(ScalarError::PoleAtOne);
        }
        Ok(self.num.eval_at_one() / d)
    }

    /// Exact Taylor/Laurent coefficients of the expansion at `q = 0` for
    /// exponents `lo..=hi`.
    pub fn series_coeffs(&self, lo: i64, hi: i64) -> Vec<Rat> {
        if self.is_zero() || hi < lo {
            return vec![super::rat_zero(); (hi - lo + 1).max(0) as usize];
        }
        let ord = self.order_at_zero().unwrap();
        let len = (hi - lo + 1) as usize;
        let mut out = vec![super::rat_zero(); len];
        if hi < ord {
            return out;
        }
        // numerator / denominator as power series: shift so both start at 0.
        let n0 = self.num.min_exp().unwrap();
        let d0 = self.den.min_exp().unwrap();
        let num = self.num.shift(-n0);
        let den = self.den.shift(-d0);
        let need = (hi - ord) as usize + 1;
        let d_const = den.coeff(0);
        let mut series = Vec::with_capacity(need);
        for k in 0..need {
            let mut acc = num.coeff(k as i64);
            for j in 0..k {
                let dk = den.coeff((k - j) as i64);
                if !dk.is_zero() {
                    acc -= dk * &series[j];
                }
            }
            series.push(acc / &d_const);
        }
        for (k, c) in series.into_iter().enumerate() {
            let e = ord + k as i64;
            if e >= lo && e <= hi {
                out[(e - lo) as usize] = c;
            }
        }
        out
    }

    /// Size measure for pivot selection: numerator span plus denominator span.
    pub fn complexity(&self) -> u64 {
        (self.num.span() + self.den.span()) as u64
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat_from;
    use super::*;

    fn q() -> RatFunc {
        RatFunc::q_power(1)
    }

    fn one_minus_q() -> RatFunc {
        RatFunc::one().sub(&q())
    }

    #[test]
    fn inverse_powers_cancel() {
        assert_eq!(q().mul(&RatFunc::q_power(-1)), RatFunc::one());
    }

    #[test]
    fn common_denominator_add() {
        // 1/(1-q) + q/(1-q) = (1+q)/(1-q)
        let a = RatFunc::one().div(&one_minus_q()).unwrap();
        let b = q().div(&one_minus_q()).unwrap();
        let expect = RatFunc::one().add(&q()).div(&one_minus_q()).unwrap();
        assert_eq!(a.add(&b), expect);
    }

    #[test]
    fn forced_cancellation() {
        // (q^2 - 1)/(q - 1) = q + 1
        let num = q().mul(&q()).sub(&RatFunc::one());
        let den = q().sub(&RatFunc::one());
        let r = num.div(&den).unwrap();
        assert_eq!(r, q().add(&RatFunc::one()));
    }

    #[test]
    fn bar_examples() {
        let sym = q().add(&RatFunc::q_power(-1));
        assert_eq!(sym.bar(), sym);
        assert_eq!(RatFunc::q_power(2).bar(), RatFunc::q_power(-2));
        // bar(1/(1-q)) = 1/(1-q^{-1}) = q/(q-1), one value in canonical form
        let a = RatFunc::one().div(&one_minus_q()).unwrap();
        let expect = q().div(&q().sub(&RatFunc::one())).unwrap();
        assert_eq!(a.bar(), expect);
        assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn order_and_eval() {
        // q/(1+q): order 1, value 0
        let x = q().div(&RatFunc::one().add(&q())).unwrap();
        assert_eq!(x.order_at_zero(), Some(1));
        assert_eq!(x.eval_at_zero().unwrap(), rat_from(0));
        // (2+q)/(1-q): order 0, value 2
        let y = RatFunc::from_int(2).add(&q()).div(&one_minus_q()).unwrap();
        assert_eq!(y.order_at_zero(), Some(0));
        assert_eq!(y.eval_at_zero().unwrap(), rat_from(2));
        // 1/q: order -1, pole
        let z = RatFunc::q_power(-1);
        assert_eq!(z.order_at_zero(), Some(-1));
        assert!(matches!(
            z.eval_at_zero(),
            Err(ScalarError::PoleAtZero { order: -1 })
        ));
    }

    #[test]
    fn division_by_zero_reported() {
        assert!(matches!(
            q().div(&RatFunc::zero()),
            Err(ScalarError::DivisionByZero)
        ));
    }

    #[test]
    fn series_expansion_matches_geometric() {
        // 1/(1-q) = 1 + q + q^2 + ...
        let a = RatFunc::one().div(&one_minus_q()).unwrap();
        let coeffs = a.series_coeffs(-1, 3);
        assert_eq!(
            coeffs,
            vec![
                rat_from(0),
                rat_from(1),
                rat_from(1),
                rat_from(1),
                rat_from(1)
            ]
        );
        // q^{-1}/(1+q): starts at -1 with alternating signs
        let b = RatFunc::q_power(-1).div(&RatFunc::one().add(&q())).unwrap();
        let coeffs = b.series_coeffs(-2, 1);
        assert_eq!(
            coeffs,
            vec![rat_from(0), rat_from(1), rat_from(-1), rat_from(1)]
        );
    }

    #[test]
    fn eval_at_one_pole() {
        let a = RatFunc::one().div(&one_minus_q()).unwrap();
        assert!(matches!(a.eval_at_one(), Err(ScalarError::PoleAtOne)));
        let b = RatFunc::one().div(&RatFunc::one().add(&q())).unwrap();
        assert_eq!(b.eval_at_one().unwrap(), Rat::new(1.into(), 2.into()));
    }
}

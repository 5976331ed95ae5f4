//! Quantum integers, factorials and binomial coefficients.

use super::{LaurentPoly, RatFunc, ScalarError};

/// The quantum integer `[k]_d = (q_d^k - q_d^{-k}) / (q_d - q_d^{-1})` with
/// `q_d = q^d`, expanded as the Laurent polynomial
/// `q_d^{k-1} + q_d^{k-3} + ... + q_d^{-(k-1)}`.
pub fn quantum_integer(k: i64, d: i64) -> Result<LaurentPoly, ScalarError> {
    if k < 0 {
        return Err(ScalarError::NegativeQuantumArg { arg: k });
    }
    debug_assert!(d >= 1);
    let mut terms = Vec::with_capacity(k as usize);
    let mut e = d * (k - 1);
    for _ in 0..k {
        terms.push((e, super::rat_one()));
        e -= 2 * d;
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// `[k]_d! = [1]_d [2]_d ... [k]_d`, with `[0]_d! = 1`.
pub fn quantum_factorial(k: i64, d: i64) -> Result<LaurentPoly, ScalarError> {
    if k < 0 {
        return Err(ScalarError::NegativeQuantumArg { arg: k });
    }
    let mut acc = LaurentPoly::one();
    for j in 1..=k {
        acc = acc.mul(&quantum_integer(j, d)?);
    }
    Ok(acc)
}

/// Quantum binomial `[n choose k]_d`, always a Laurent polynomial.
pub fn quantum_binomial(n: i64, k: i64, d: i64) -> Result<LaurentPoly, ScalarError> {
    if k < 0 || n < k {
        return Err(ScalarError::NegativeQuantumArg { arg: k.min(n - k) });
    }
    let num = RatFunc::from_laurent(quantum_factorial(n, d)?);
    let den = RatFunc::from_laurent(quantum_factorial(k, d)?)
        .mul(&RatFunc::from_laurent(quantum_factorial(n - k, d)?));
    let r = num.div(&den)?;
    debug_assert!(r.is_laurent());
    Ok(r.numerator().clone())
}

#[cfg(test)]
mod tests {
    use super::super::rat_from;
    use super::*;

    #[test]
    fn small_quantum_integers() {
        assert_eq!(quantum_integer(0, 1).unwrap(), LaurentPoly::zero());
        assert_eq!(quantum_integer(1, 1).unwrap(), LaurentPoly::one());
        // [2]_1 = q + q^{-1}
        let two = quantum_integer(2, 1).unwrap();
        assert_eq!(
            two,
            LaurentPoly::from_terms([(1, rat_from(1)), (-1, rat_from(1))])
        );
        // [3]_1 = q^2 + 1 + q^{-2}
        let three = quantum_integer(3, 1).unwrap();
        assert_eq!(
            three,
            LaurentPoly::from_terms([(2, rat_from(1)), (0, rat_from(1)), (-2, rat_from(1))])
        );
    }

    #[test]
    fn quantum_integer_matches_defining_ratio() {
        // Independent route: (q_d^k - q_d^{-k}) / (q_d - q_d^{-1}) as field arithmetic.
        for d in 1..=3 {
            for k in 1..=8 {
                let num = RatFunc::q_power(d * k).sub(&RatFunc::q_power(-d * k));
                let den = RatFunc::q_power(d).sub(&RatFunc::q_power(-d));
                let expect = num.div(&den).unwrap();
                let got = RatFunc::from_laurent(quantum_integer(k, d).unwrap());
                assert_eq!(got, expect, "k={k} d={d}");
            }
        }
    }

    #[test]
    fn bar_invariance() {
        for d in 1..=3 {
            for k in 0..=8 {
                let p = quantum_integer(k, d).unwrap();
                assert_eq!(p.bar(), p);
                let f = quantum_factorial(k, d).unwrap();
                assert_eq!(f.bar(), f);
            }
        }
    }

    #[test]
    fn negative_rejected() {
        assert!(quantum_integer(-1, 1).is_err());
        assert!(quantum_factorial(-2, 1).is_err());
    }

    #[test]
    fn binomial_is_laurent() {
        // [4 choose 2] = [4]![2]!^{-1}[2]!^{-1} = q^4 + q^2 + 2 + q^-2 + q^-4
        let b = quantum_binomial(4, 2, 1).unwrap();
        assert_eq!(
            b,
            LaurentPoly::from_terms([
                (4, rat_from(1)),
                (2, rat_from(1)),
                (0, rat_from(2)),
                (-2, rat_from(1)),
                (-4, rat_from(1)),
            ])
        );
    }
}

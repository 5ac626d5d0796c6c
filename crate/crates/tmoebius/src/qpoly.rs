use crate::exact::{display_rational, rat, BigRational};
use crate::half_int::HalfInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

/// Laurent polynomial in one variable `q` with half-integer exponents
/// and exact rational coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<HalfInt, BigRational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial::default()
    }

    pub fn one() -> Self {
        LaurentPolynomial::monomial(HalfInt::ZERO, rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        LaurentPolynomial::monomial(HalfInt::ZERO, c)
    }

    pub fn monomial(exponent: HalfInt, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        LaurentPolynomial { terms }
    }

    /// Symmetrized q-integer of `a >= 1`: the sum of `q^e` over
    /// exponents e = (a-1)/2, (a-3)/2, ..., -(a-1)/2.
    pub fn q_analog(a: u32) -> Self {
        assert!(a >= 1, "q-analog of nonpositive integer");
        let mut terms = BTreeMap::new();
        for j in 0..a {
            let doubled = a as i64 - 1 - 2 * j as i64;
            terms.insert(HalfInt::from_doubled(doubled), rat(1));
        }
        LaurentPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (HalfInt, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exponent: HalfInt) -> BigRational {
        self.terms.get(&exponent).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn min_exponent(&self) -> Option<HalfInt> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<HalfInt> {
        self.terms.keys().next_back().copied()
    }

    /// Value at q = 1: the coefficient sum.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(rat(0), |acc, c| acc + c)
    }

    /// Substitution q -> 1/q.
    pub fn invert_variable(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Symmetric under q -> 1/q.
    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_variable()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms
            .values()
            .all(|c| num_traits::One::is_one(c.denom()))
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return LaurentPolynomial::zero();
        }
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, c * factor))
                .collect(),
        }
    }

    /// Exponent-string to coefficient-string map, for JSON output.
    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(e, c)| (e.to_string(), display_rational(c)))
            .collect()
    }
}

impl Add<&LaurentPolynomial> for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self += rhs;
        self
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (&e, c) in &rhs.terms {
            let entry = self.terms.entry(e).or_insert_with(|| rat(0));
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(&e);
            }
        }
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut terms: BTreeMap<HalfInt, BigRational> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                let e = e1 + e2;
                let entry = terms.entry(e).or_insert_with(|| rat(0));
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPolynomial { terms }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let cs = display_rational(c);
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if e == HalfInt::ZERO {
                write!(f, "{}", mag)?;
            } else {
                if mag != "1" {
                    write!(f, "{}*", mag)?;
                }
                if e == HalfInt::ONE {
                    write!(f, "q")?;
                } else if e.is_integer() && e.is_positive() {
                    write!(f, "q^{}", e)?;
                } else {
                    write!(f, "q^({})", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_analog_small_values() {
        assert_eq!(LaurentPolynomial::q_analog(1), LaurentPolynomial::one());
        let two = LaurentPolynomial::q_analog(2);
        assert_eq!(two.coeff(HalfInt::HALF), rat(1));
        assert_eq!(two.coeff(-HalfInt::HALF), rat(1));
        assert_eq!(two.terms().count(), 2);
        let three = LaurentPolynomial::q_analog(3);
        assert_eq!(three.to_string(), "q + 1 + q^(-1)");
    }

    #[test]
    fn q_analog_is_palindromic_with_unit_coefficients() {
        for a in 1..=50 {
            let p = LaurentPolynomial::q_analog(a);
            assert!(p.is_palindromic(), "a = {a}");
            assert!(p.has_integer_coefficients());
            assert_eq!(p.eval_at_one(), rat(a as i64), "a = {a}");
            assert_eq!(p.terms().count() as u32, a);
        }
    }

    #[test]
    fn q_analog_multiplicativity_at_one() {
        // [a]_q * [b]_q evaluates to a*b at q = 1
        let p = &LaurentPolynomial::q_analog(3) * &LaurentPolynomial::q_analog(4);
        assert_eq!(p.eval_at_one(), rat(12));
        assert!(p.is_palindromic());
    }

    #[test]
    fn ring_operations() {
        let p = LaurentPolynomial::monomial(HalfInt::ONE, rat(2))
            + &LaurentPolynomial::monomial(-HalfInt::HALF, rat(-1));
        assert_eq!(p.to_string(), "2*q - q^(-1/2)");
        let q = p.scale(&rat(3));
        assert_eq!(q.coeff(HalfInt::ONE), rat(6));
        let cancel = p.clone() + &p.scale(&rat(-1));
        assert!(cancel.is_zero());
        assert_eq!(cancel.to_string(), "0");
    }

    #[test]
    fn product_of_symmetric_factors_is_symmetric() {
        let mut acc = LaurentPolynomial::one();
        for a in [2, 3, 5] {
            acc = &acc * &LaurentPolynomial::q_analog(a);
        }
        assert!(acc.is_palindromic());
        assert_eq!(acc.eval_at_one(), rat(30));
        // degree span: sum of (a-1)/2
        assert_eq!(acc.max_exponent(), Some(HalfInt::from_doubled(7)));
        assert_eq!(acc.min_exponent(), Some(HalfInt::from_doubled(-7)));
    }

    #[test]
    fn string_map_output() {
        let p = LaurentPolynomial::q_analog(2).scale(&rat(2));
        let map = p.to_string_map();
        assert_eq!(map.get("1/2").map(String::as_str), Some("2"));
        assert_eq!(map.get("-1/2").map(String::as_str), Some("2"));
    }
}

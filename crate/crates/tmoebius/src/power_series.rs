use crate::arith::{sigma1, sigma1_tilde};
use crate::exact::{display_rational, rat, BigRational};
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

/// Power series in `y` truncated at a fixed order: coefficients of
/// y^0 .. y^order, exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![rat(0); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = rat(1);
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    /// Series with coefficient `f(n)` at y^n for n >= 1.
    pub fn from_fn(order: usize, f: impl Fn(u64) -> BigRational) -> Self {
        let mut coeffs = vec![rat(0)];
        for n in 1..=order as u64 {
            coeffs.push(f(n));
        }
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, value: BigRational) {
        assert!(n < self.coeffs.len());
        self.coeffs[n] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<BigRational> = self.coeffs.iter().take(order + 1).cloned().collect();
        while coeffs.len() < order + 1 {
            coeffs.push(rat(0));
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// The derivation y*d/dy: multiplies the y^n coefficient by n.
    pub fn derive(&self) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * rat(n as i64))
                .collect(),
        }
    }

    pub fn derive_n(&self, times: usize) -> Self {
        let mut s = self.clone();
        for _ in 0..times {
            s = s.derive();
        }
        s
    }

    /// Substitution y -> y^k (k >= 1), same truncation order.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let order = self.order();
        let mut out = TruncatedSeries::zero(order);
        for (n, c) in self.coeffs.iter().enumerate() {
            if n * k <= order {
                out.coeffs[n * k] = c.clone();
            }
        }
        out
    }
}

impl Add<&TruncatedSeries> for TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(mut self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self += rhs;
        self
    }
}

impl AddAssign<&TruncatedSeries> for TruncatedSeries {
    fn add_assign(&mut self, rhs: &TruncatedSeries) {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        let order = self.order();
        let mut out = TruncatedSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            match n {
                0 => write!(f, "{}", mag)?,
                1 if mag == "1" => write!(f, "y")?,
                1 => write!(f, "{}*y", mag)?,
                _ if mag == "1" => write!(f, "y^{}", n)?,
                _ => write!(f, "{}*y^{}", mag, n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(y^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Eisenstein-type generator: sum of sigma1(n) y^n for n >= 1.
pub fn g2(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| rat(sigma1(n) as i64))
}

/// Odd-divisor-quotient generator: sum of sigma1_tilde(n) y^n.
pub fn h(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| rat(sigma1_tilde(n) as i64))
}

/// Even-exponent part of `h`.
pub fn h_even(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| {
        if n % 2 == 0 {
            rat(sigma1_tilde(n) as i64)
        } else {
            rat(0)
        }
    })
}

/// Odd-exponent part of `h`.
pub fn h_odd(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| {
        if n % 2 == 1 {
            rat(sigma1_tilde(n) as i64)
        } else {
            rat(0)
        }
    })
}

use serde::de::{Error as DeError, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

/// Exact half-integer, stored as twice its value.
///
/// Curve classes and floor degrees live in (1/2)Z, so all arithmetic
/// here is exact; `doubled` is the canonical internal form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };
    pub const HALF: HalfInt = HalfInt { doubled: 1 };
    pub const ONE: HalfInt = HalfInt { doubled: 2 };

    pub fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// Integer value if integral.
    pub fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.doubled / 2)
        } else {
            None
        }
    }

    pub fn is_positive(self) -> bool {
        self.doubled > 0
    }

    pub fn abs(self) -> Self {
        HalfInt {
            doubled: self.doubled.abs(),
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled + rhs.doubled,
        }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.doubled += rhs.doubled;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            doubled: self.doubled - rhs.doubled,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt {
            doubled: -self.doubled,
        }
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt {
            doubled: self.doubled * rhs,
        }
    }
}

impl Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form: plain number when integral, `"n/2"` string otherwise.
impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.as_integer() {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

struct HalfIntVisitor;

impl Visitor<'_> for HalfIntVisitor {
    type Value = HalfInt;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "an integer, a half-integer string like \"3/2\", or n.5")
    }

    fn visit_i64<E: DeError>(self, v: i64) -> Result<HalfInt, E> {
        Ok(HalfInt::from_int(v))
    }

    fn visit_u64<E: DeError>(self, v: u64) -> Result<HalfInt, E> {
        i64::try_from(v)
            .map(HalfInt::from_int)
            .map_err(|_| E::custom("half-integer out of range"))
    }

    fn visit_f64<E: DeError>(self, v: f64) -> Result<HalfInt, E> {
        let doubled = v * 2.0;
        if doubled.fract() == 0.0 && doubled.abs() < 9e15 {
            Ok(HalfInt::from_doubled(doubled as i64))
        } else {
            Err(E::custom(format!("{v} is not a half-integer")))
        }
    }

    fn visit_str<E: DeError>(self, v: &str) -> Result<HalfInt, E> {
        v.parse().map_err(|e: ParseHalfIntError| E::custom(e))
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<HalfInt, D::Error> {
        deserializer.deserialize_any(HalfIntVisitor)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("invalid half-integer `{0}`: expected forms like `2`, `1/2`, `3/2`")]
pub struct ParseHalfIntError(pub String);

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts `"n"`, `"n/2"`, and decimal `"n.5"`/`"n.0"` forms.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseHalfIntError(s.to_string());
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(bad());
            }
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            return Ok(HalfInt::from_doubled(n));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let neg = int.trim_start().starts_with('-');
            let n: i64 = int.trim().parse().map_err(|_| bad())?;
            return match frac {
                "0" => Ok(HalfInt::from_int(n)),
                "5" => Ok(HalfInt::from_doubled(2 * n + if neg { -1 } else { 1 })),
                _ => Err(bad()),
            };
        }
        let n: i64 = s.parse().map_err(|_| bad())?;
        Ok(HalfInt::from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "2", "-3", "1/2", "3/2", "-1/2"] {
            let h: HalfInt = s.parse().unwrap();
            assert_eq!(h.to_string(), s);
        }
        assert_eq!("1.5".parse::<HalfInt>().unwrap(), HalfInt::from_doubled(3));
        assert_eq!("2.0".parse::<HalfInt>().unwrap(), HalfInt::from_int(2));
        assert_eq!(
            "-1.5".parse::<HalfInt>().unwrap(),
            HalfInt::from_doubled(-3)
        );
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
    }

    #[test]
    fn arithmetic() {
        let h = HalfInt::HALF;
        assert_eq!(h + h, HalfInt::ONE);
        assert_eq!(HalfInt::ONE - h, h);
        assert_eq!(h * 3, HalfInt::from_doubled(3));
        assert_eq!(-h, HalfInt::from_doubled(-1));
        let s: HalfInt = [h, h, HalfInt::ONE].into_iter().sum();
        assert_eq!(s, HalfInt::from_int(2));
    }

    #[test]
    fn integrality() {
        assert!(HalfInt::ONE.is_integer());
        assert!(!HalfInt::HALF.is_integer());
        assert_eq!(HalfInt::from_int(7).as_integer(), Some(7));
        assert_eq!(HalfInt::from_doubled(7).as_integer(), None);
    }

    #[test]
    fn json_round_trip() {
        let half = HalfInt::HALF;
        assert_eq!(serde_json::to_string(&half).unwrap(), "\"1/2\"");
        let two = HalfInt::from_int(2);
        assert_eq!(serde_json::to_string(&two).unwrap(), "2");
        for json in ["2", "\"2\"", "\"3/2\"", "1.5", "-1", "-0.5"] {
            let h: HalfInt = serde_json::from_str(json).unwrap();
            let back = serde_json::to_string(&h).unwrap();
            let h2: HalfInt = serde_json::from_str(&back).unwrap();
            assert_eq!(h, h2, "round trip through {json}");
        }
        assert!(serde_json::from_str::<HalfInt>("0.3").is_err());
        assert!(serde_json::from_str::<HalfInt>("\"1/3\"").is_err());
    }
}

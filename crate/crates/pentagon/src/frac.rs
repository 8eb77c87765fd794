//! Exact non-negative fractions, compared by integer cross-multiplication.

use serde::de;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Exact fraction `num/den` with `den > 0`.
///
/// Densities and thresholds are stored unreduced so that raw counts (crossing
/// edges over `|A|*|B|`) survive serialization. Equality and ordering go
/// through `u128` cross-multiplication; no float is ever consulted for a
/// branch decision.
#[derive(Clone, Copy, Debug)]
pub struct Frac {
    num: u64,
    den: u64,
}

impl Frac {
    pub const ZERO: Frac = Frac { num: 0, den: 1 };
    pub const ONE: Frac = Frac { num: 1, den: 1 };
    pub const HALF: Frac = Frac { num: 1, den: 2 };

    /// Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "fraction denominator must be positive");
        Frac { num, den }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `self <= x/y`, exact; `y` must be positive.
    pub fn le_ratio(&self, x: u64, y: u64) -> bool {
        debug_assert!(y > 0);
        (self.num as u128) * (y as u128) <= (x as u128) * (self.den as u128)
    }

    /// `self < x/y`, exact.
    pub fn lt_ratio(&self, x: u64, y: u64) -> bool {
        debug_assert!(y > 0);
        (self.num as u128) * (y as u128) < (x as u128) * (self.den as u128)
    }

    /// `self >= x/y`, exact.
    pub fn ge_ratio(&self, x: u64, y: u64) -> bool {
        !self.lt_ratio(x, y)
    }

    /// `self > x/y`, exact.
    pub fn gt_ratio(&self, x: u64, y: u64) -> bool {
        !self.le_ratio(x, y)
    }

    /// `1 - self`; requires `self <= 1`.
    pub fn one_minus(&self) -> Frac {
        assert!(self.num <= self.den, "one_minus requires a fraction <= 1");
        Frac {
            num: self.den - self.num,
            den: self.den,
        }
    }

    /// Lowest-terms copy.
    pub fn reduced(&self) -> Frac {
        let g = gcd(self.num, self.den);
        if g <= 1 {
            *self
        } else {
            Frac {
                num: self.num / g,
                den: self.den / g,
            }
        }
    }

    /// Float value, for reporting only; never used in comparisons.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `log2(1/self)` as a float, for the schedule formulas; requires `self > 0`.
    pub fn log2_inverse(&self) -> f64 {
        assert!(self.num > 0, "log2(1/x) requires x > 0");
        (self.den as f64).log2() - (self.num as f64).log2()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        (self.num as u128) * (other.den as u128) == (other.num as u128) * (self.den as u128)
    }
}

impl Eq for Frac {}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as u128) * (other.den as u128)).cmp(&((other.num as u128) * (self.den as u128)))
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Parse error for the `NUM/DEN` text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFracError(String);

impl fmt::Display for ParseFracError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid fraction: {}", self.0)
    }
}

impl std::error::Error for ParseFracError {}

impl FromStr for Frac {
    type Err = ParseFracError;

    /// Accepts `NUM/DEN` or a bare integer `NUM` (denominator 1).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: u64 = num_s
            .parse()
            .map_err(|_| ParseFracError(format!("bad numerator in {s:?}")))?;
        let den: u64 = den_s
            .parse()
            .map_err(|_| ParseFracError(format!("bad denominator in {s:?}")))?;
        if den == 0 {
            return Err(ParseFracError(format!("zero denominator in {s:?}")));
        }
        Ok(Frac { num, den })
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Frac", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: u64,
            den: u64,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.den == 0 {
            return Err(de::Error::custom("fraction denominator must be positive"));
        }
        Ok(Frac {
            num: raw.num,
            den: raw.den,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_multiplied_equality() {
        assert_eq!(Frac::new(2, 6), Frac::new(1, 3));
        assert_ne!(Frac::new(2, 6), Frac::new(1, 2));
        assert!(Frac::new(1, 3) < Frac::new(1, 2));
        assert!(Frac::new(5, 16) > Frac::new(1, 4));
    }

    #[test]
    fn ratio_comparisons() {
        let c = Frac::new(1, 2);
        assert!(c.le_ratio(1, 2));
        assert!(!c.lt_ratio(1, 2));
        assert!(c.lt_ratio(2, 3));
        assert!(c.ge_ratio(1, 2));
        assert!(c.gt_ratio(1, 3));
    }

    #[test]
    fn no_overflow_at_large_counts() {
        // crossing-edge counts near 1e8 against arbitrary denominators
        let d = Frac::new(99_999_999, 100_000_000);
        assert!(d.lt_ratio(u64::MAX / 2, u64::MAX / 2 + 1));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1/64".parse::<Frac>().unwrap(), Frac::new(1, 64));
        assert_eq!("3".parse::<Frac>().unwrap(), Frac::new(3, 1));
        assert!("1/0".parse::<Frac>().is_err());
        assert!("x/2".parse::<Frac>().is_err());
        assert_eq!(Frac::new(2, 6).to_string(), "2/6");
        assert_eq!(Frac::new(2, 6).reduced().to_string(), "1/3");
    }

    #[test]
    fn serde_roundtrip() {
        let f = Frac::new(2, 6);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"num":2,"den":6}"#);
        let back: Frac = serde_json::from_str(&s).unwrap();
        assert_eq!(back.num(), 2);
        assert_eq!(back.den(), 6);
        assert!(serde_json::from_str::<Frac>(r#"{"num":1,"den":0}"#).is_err());
    }

    #[test]
    fn one_minus_is_exact() {
        assert_eq!(Frac::new(3, 16).one_minus(), Frac::new(13, 16));
        assert_eq!(Frac::ZERO.one_minus(), Frac::ONE);
    }
}

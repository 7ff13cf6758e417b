//! Exact nonnegative dyadic rationals.
//!
//! A [`Dyadic`] is `mantissa / 2^exponent` kept in normal form: either the
//! exponent is zero or the mantissa is odd. Structural equality is therefore
//! value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigUint,
    exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyadicParseError {
    #[error("empty dyadic literal")]
    Empty,
    #[error("invalid mantissa `{0}`")]
    Mantissa(String),
    #[error("invalid exponent `{0}`; expected `2^k`")]
    Exponent(String),
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mantissa: BigUint::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        Dyadic::from_integer(1u32)
    }

    pub fn from_integer(n: impl Into<BigUint>) -> Self {
        Dyadic { mantissa: n.into(), exponent: 0 }
    }

    /// `mantissa / 2^exponent`, normalized.
    pub fn new(mantissa: impl Into<BigUint>, exponent: u32) -> Self {
        Self::normalize(mantissa.into(), exponent)
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        Dyadic { mantissa: BigUint::one(), exponent: k }
    }

    fn normalize(mut mantissa: BigUint, mut exponent: u32) -> Self {
        if mantissa.is_zero() {
            return Dyadic::zero();
        }
        if exponent > 0 {
            let tz = mantissa.trailing_zeros().unwrap_or(0);
            let shift = tz.min(u64::from(exponent)) as u32;
            if shift > 0 {
                mantissa >>= shift;
                exponent -= shift;
            }
        }
        Dyadic { mantissa, exponent }
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_normalized(&self) -> bool {
        self.mantissa.is_zero() && self.exponent == 0
            || self.exponent == 0
            || self.mantissa.bit(0)
    }

    /// Mantissas of `self` and `other` brought to the common exponent.
    fn aligned(&self, other: &Dyadic) -> (BigUint, BigUint, u32) {
        let e = self.exponent.max(other.exponent);
        let a = &self.mantissa << (e - self.exponent);
        let b = &other.mantissa << (e - other.exponent);
        (a, b, e)
    }

    /// `|self - other|`, the `↔` operation of the nonnegative dyadics.
    pub fn abs_diff(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        if a >= b {
            Self::normalize(a - b, e)
        } else {
            Self::normalize(b - a, e)
        }
    }

    /// `self - other` when it is nonnegative.
    pub fn checked_sub(&self, other: &Dyadic) -> Option<Dyadic> {
        let (a, b, e) = self.aligned(other);
        (a >= b).then(|| Self::normalize(a - b, e))
    }

    /// `self - other`, clamped at zero.
    pub fn saturating_sub(&self, other: &Dyadic) -> Dyadic {
        self.checked_sub(other).unwrap_or_else(Dyadic::zero)
    }

    pub fn halve(&self) -> Dyadic {
        self.mul_pow2(-1)
    }

    /// `self * 2^k`.
    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        if k >= 0 {
            let k = k as u64;
            let e = u64::from(self.exponent);
            if k <= e {
                Dyadic { mantissa: self.mantissa.clone(), exponent: (e - k) as u32 }
            } else {
                Dyadic { mantissa: &self.mantissa << (k - e), exponent: 0 }
            }
        } else {
            let e = u64::from(self.exponent) + k.unsigned_abs();
            let e = u32::try_from(e).expect("dyadic exponent overflow");
            Self::normalize(self.mantissa.clone(), e)
        }
    }

    /// Smallest `k` with `self <= 2^k`, for positive values.
    pub fn ceil_log2(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let bits = self.mantissa.bits() as i64;
        let exact = self.mantissa.count_ones() == 1;
        let top = bits - 1 - i64::from(self.exponent);
        Some(if exact { top } else { top + 1 })
    }

    /// Smallest `k` with `2^-k <= self`, i.e. the coarsest precision whose
    /// unit fits below `self`. Returns `None` for zero.
    pub fn floor_precision(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let top = self.mantissa.bits() as i64 - 1 - i64::from(self.exponent);
        Some(-top)
    }

    pub fn max(self, other: Dyadic) -> Dyadic {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Dyadic) -> Dyadic {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.mantissa.to_f64().unwrap_or(f64::INFINITY);
        m * 2f64.powi(-(self.exponent as i32))
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.exponent == other.exponent {
            return self.mantissa.cmp(&other.mantissa);
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::normalize(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: &Dyadic) -> Dyadic {
        // product of odd mantissas is odd, so this is already normal unless zero
        Dyadic::normalize(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl From<u32> for Dyadic {
    fn from(n: u32) -> Self {
        Dyadic::from_integer(n)
    }
}

impl From<u64> for Dyadic {
    fn from(n: u64) -> Self {
        Dyadic::from_integer(n)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = DyadicParseError;

    /// Accepts `m/2^k` or a bare `m`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(DyadicParseError::Empty);
        }
        let (m, k) = match s.split_once('/') {
            Some((m, rest)) => {
                let rest = rest.trim();
                let k = rest
                    .strip_prefix("2^")
                    .filter(|k| !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()))
                    .ok_or_else(|| DyadicParseError::Exponent(rest.to_string()))?;
                let k: u32 = k.parse().map_err(|_| DyadicParseError::Exponent(rest.to_string()))?;
                (m.trim(), k)
            }
            None => (s, 0),
        };
        if m.is_empty() || !m.bytes().all(|b| b.is_ascii_digit()) {
            return Err(DyadicParseError::Mantissa(m.to_string()));
        }
        let mantissa = BigUint::parse_bytes(m.as_bytes(), 10)
            .ok_or_else(|| DyadicParseError::Mantissa(m.to_string()))?;
        Ok(Dyadic::new(mantissa, k))
    }
}

/// Shorthand used throughout the tests: `dy(m, k)` is `m / 2^k`.
pub fn dy(mantissa: u64, exponent: u32) -> Dyadic {
    Dyadic::new(mantissa, exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normal_form() {
        let d = dy(12, 3);
        assert_eq!(d.mantissa(), &BigUint::from(3u32));
        assert_eq!(d.exponent(), 1);
        assert_eq!(dy(0, 9), Dyadic::zero());
        assert_eq!(dy(8, 2), Dyadic::from(2u32));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(dy(3, 1).abs_diff(&dy(1, 1)), Dyadic::one());
        assert_eq!(dy(1, 1).abs_diff(&dy(3, 1)), Dyadic::one());
        assert_eq!(dy(3, 1).halve(), dy(3, 2));
        assert_eq!(Dyadic::zero().halve(), Dyadic::zero());
        assert_eq!(&dy(1, 2) + &dy(1, 2), dy(1, 1));
        assert_eq!(&dy(3, 1) * &dy(5, 2), dy(15, 3));
        assert_eq!(dy(3, 0).mul_pow2(-2), dy(3, 2));
        assert_eq!(dy(3, 2).mul_pow2(3), dy(6, 0));
        assert!(dy(1, 1) < dy(3, 2));
        assert_eq!(dy(1, 1).checked_sub(&dy(3, 2)), None);
    }

    #[test]
    fn logs() {
        assert_eq!(dy(1, 0).ceil_log2(), Some(0));
        assert_eq!(dy(3, 0).ceil_log2(), Some(2));
        assert_eq!(dy(1, 3).ceil_log2(), Some(-3));
        assert_eq!(dy(3, 3).ceil_log2(), Some(-1));
        assert_eq!(dy(1, 3).floor_precision(), Some(3));
        assert_eq!(dy(3, 3).floor_precision(), Some(2));
        assert_eq!(dy(5, 0).floor_precision(), Some(-2));
    }

    #[test]
    fn text_format() {
        assert_eq!("3/2^1".parse::<Dyadic>().unwrap(), dy(3, 1));
        assert_eq!("12/2^3".parse::<Dyadic>().unwrap().to_string(), "3/2^1");
        assert_eq!("7".parse::<Dyadic>().unwrap().to_string(), "7/2^0");
        assert_eq!(Dyadic::zero().to_string(), "0/2^0");
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("-1".parse::<Dyadic>().is_err());
        assert!("1/2^".parse::<Dyadic>().is_err());
        assert!("".parse::<Dyadic>().is_err());
    }

    #[test]
    fn closure_of_normal_form_small_sweep() {
        let vals: Vec<Dyadic> = (0..16u64).flat_map(|m| (0..4).map(move |k| dy(m, k))).collect();
        for a in &vals {
            assert!(a.halve().is_normalized());
            for b in &vals {
                assert!((a + b).is_normalized());
                assert!((a * b).is_normalized());
                assert!(a.abs_diff(b).is_normalized());
            }
        }
    }

    fn arb_dyadic() -> impl Strategy<Value = Dyadic> {
        (0u64..1 << 20, 0u32..12).prop_map(|(m, k)| dy(m, k))
    }

    proptest! {
        #[test]
        fn text_roundtrip(d in arb_dyadic()) {
            let back: Dyadic = d.to_string().parse().unwrap();
            prop_assert_eq!(back, d);
        }

        #[test]
        fn order_agrees_with_f64(a in arb_dyadic(), b in arb_dyadic()) {
            prop_assert_eq!(a.cmp(&b), a.to_f64().partial_cmp(&b.to_f64()).unwrap());
        }

        #[test]
        fn abs_diff_inverts_add(a in arb_dyadic(), b in arb_dyadic()) {
            prop_assert_eq!((&a + &b).abs_diff(&b), a);
        }
    }
}

//! Upward-rounded magnitudes used as ball radii.
//!
//! A `Mag` is a non-negative low-precision float. Every operation rounds
//! toward +inf, so a `Mag` produced from other `Mag`s is always an upper
//! bound for the exact result. `+inf` is a legal value and marks an
//! indeterminate ball.

use std::cmp::Ordering;
use std::fmt;

use rug::float::{Round, Special};
use rug::ops::{AddAssignRound, DivAssignRound, MulAssignRound, PowAssignRound};
use rug::Float;

/// Working precision of radii.
pub const MAG_PREC: u32 = 32;

#[derive(Clone, PartialEq, PartialOrd)]
pub struct Mag(Float);

impl Mag {
    pub fn zero() -> Self {
        Mag(Float::new(MAG_PREC))
    }

    pub fn inf() -> Self {
        Mag(Float::with_val(MAG_PREC, Special::Infinity))
    }

    /// Upper bound for `|x|`.
    pub fn from_float(x: &Float) -> Self {
        if x.is_nan() {
            return Mag::inf();
        }
        let (f, _) = Float::with_val_round(MAG_PREC, &*x.as_abs(), Round::Up);
        Mag(f)
    }

    /// Upper bound for `|q|`.
    pub fn from_rational(q: &rug::Rational) -> Self {
        let (f, _) = Float::with_val_round(MAG_PREC, &*q.as_abs(), Round::Up);
        Mag(f)
    }

    /// Upper bound for `x^n`.
    pub fn powu(&self, n: u32) -> Mag {
        let mut f = self.0.clone();
        f.pow_assign_round(n, Round::Up);
        Mag(f)
    }

    /// Upper bound for `|x|`.
    pub fn from_f64(x: f64) -> Self {
        Mag::from_float(&Float::with_val(64, x))
    }

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Self {
        let mut f = Float::with_val(MAG_PREC, 1);
        if e > i32::MAX as i64 {
            return Mag::inf();
        }
        if e < i32::MIN as i64 {
            // far below anything representable; keep a tiny positive bound
            f >>= i32::MAX as u32;
            return Mag(f);
        }
        if e >= 0 {
            f <<= e as u32;
        } else {
            f >>= (-e) as u32;
        }
        Mag(f)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn add(&self, other: &Mag) -> Mag {
        let mut f = self.0.clone();
        f.add_assign_round(&other.0, Round::Up);
        Mag(f)
    }

    pub fn mul(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::zero();
        }
        let mut f = self.0.clone();
        f.mul_assign_round(&other.0, Round::Up);
        Mag(f)
    }

    pub fn mul_float(&self, x: &Float) -> Mag {
        self.mul(&Mag::from_float(x))
    }

    /// Upper bound for `self / other`; `other` must be a lower bound of the
    /// true divisor for the result to be an upper bound.
    pub fn div_lower(&self, other: &Float) -> Mag {
        if self.is_zero() {
            return Mag::zero();
        }
        if other.is_sign_negative() || other.is_zero() {
            return Mag::inf();
        }
        let mut f = self.0.clone();
        f.div_assign_round(other, Round::Up);
        Mag(f)
    }

    pub fn mul_2si(&self, e: i32) -> Mag {
        let mut f = self.0.clone();
        f <<= e;
        Mag(f)
    }

    pub fn max(&self, other: &Mag) -> Mag {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Upper bound as `f64` (saturating to `inf`).
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64_round(Round::Up)
    }

    /// Base-2 exponent `e` with `2^(e-1) <= self < 2^e`, or `None` for zero/inf.
    pub fn exponent(&self) -> Option<i32> {
        self.0.get_exp()
    }
}

impl PartialEq<f64> for Mag {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Mag {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            return f.write_str("inf");
        }
        if self.0.is_zero() {
            return f.write_str("0");
        }
        let s = self.0.to_string_radix_round(10, Some(6), Round::Up);
        f.write_str(&s)
    }
}

/// Directed-rounding helpers on plain floats at radius precision.
pub(crate) mod dir {
    use rug::float::Round;
    use rug::Float;

    use super::MAG_PREC;

    pub fn down(x: &Float) -> Float {
        Float::with_val_round(MAG_PREC, x, Round::Down).0
    }

    pub fn up(x: &Float) -> Float {
        Float::with_val_round(MAG_PREC, x, Round::Up).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_and_mul_round_up() {
        let third = Mag::from_float(&(Float::with_val(200, 1) / 3u32));
        let sum = third.add(&third).add(&third);
        assert!(sum >= 1.0);
        let sq = third.mul(&third);
        assert!(sq.as_float() * Float::with_val(64, 9) >= 1.0);
    }

    #[test]
    fn pow2_is_exact() {
        assert_eq!(Mag::pow2(-3).to_f64(), 0.125);
        assert_eq!(Mag::pow2(10).to_f64(), 1024.0);
        assert!(Mag::pow2(-20_000).as_float() > &0);
    }

    #[test]
    fn division_by_nonpositive_is_infinite() {
        let one = Mag::from_f64(1.0);
        assert!(!one.div_lower(&Float::new(10)).is_finite());
        assert!(one.div_lower(&Float::with_val(10, 3)).to_f64() >= 1.0 / 3.0);
    }
}

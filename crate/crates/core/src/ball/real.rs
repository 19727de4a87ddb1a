use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Round;
use rug::ops::{AddAssignRound, CompleteRound, Pow, SubAssignRound};
use rug::{Float, Rational};

use super::mag::{dir, Mag, MAG_PREC};
use crate::error::{Error, Result};

/// Midpoint-radius enclosure of a real number.
///
/// The true value `x` satisfies `|x - mid| <= rad`. Every operation on balls
/// whose enclosures hold returns a ball whose enclosure holds.
#[derive(Clone, PartialEq)]
pub struct RealBall {
    mid: Float,
    rad: Mag,
}

/// Upper bound for the rounding error of a round-to-nearest result.
pub(crate) fn rounding_error(x: &Float, ord: Ordering) -> Mag {
    if ord == Ordering::Equal {
        return Mag::zero();
    }
    match x.get_exp() {
        Some(e) => Mag::pow2(e as i64 - x.prec() as i64),
        // underflow to zero; the smallest positive float bounds the loss
        None => Mag::pow2(rug::float::exp_min() as i64 - 1),
    }
}

impl RealBall {
    /// Exact ball `{value}`.
    pub fn from_float(mid: Float) -> Self {
        RealBall { mid, rad: Mag::zero() }
    }

    pub fn new(mid: Float, rad: Mag) -> Self {
        RealBall { mid, rad }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = rounding_error(&mid, ord);
        RealBall { mid, rad }
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = rounding_error(&mid, ord);
        RealBall { mid, rad }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, q, Round::Nearest);
        let rad = rounding_error(&mid, ord);
        RealBall { mid, rad }
    }

    pub fn zero(prec: u32) -> Self {
        RealBall::from_float(Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        RealBall::from_i64(1, prec)
    }

    /// Ball containing the decimal literal `text` exactly.
    pub fn from_decimal(text: &str, prec: u32) -> Result<Self> {
        let q = parse_decimal(text)?;
        Ok(RealBall::from_rational(&q, prec))
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Mag {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    /// Full width `2 * rad` as an upper bound.
    pub fn width(&self) -> Mag {
        self.rad.mul_2si(1)
    }

    /// Widen the enclosure by `err`.
    pub fn add_error(&mut self, err: &Mag) {
        self.rad = self.rad.add(err);
    }

    pub fn with_error(mut self, err: &Mag) -> Self {
        self.add_error(err);
        self
    }

    /// Same value re-rounded to `prec` bits.
    pub fn set_prec(&self, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, &self.mid, Round::Nearest);
        let rad = self.rad.add(&rounding_error(&mid, ord));
        RealBall { mid, rad }
    }

    /// Lower endpoint, rounded down.
    pub fn lower(&self) -> Float {
        let prec = self.prec().max(MAG_PREC) + 8;
        let mut lo = Float::with_val(prec, &self.mid);
        lo.sub_assign_round(self.rad.as_float(), Round::Down);
        lo
    }

    /// Upper endpoint, rounded up.
    pub fn upper(&self) -> Float {
        let prec = self.prec().max(MAG_PREC) + 8;
        let mut hi = Float::with_val(prec, &self.mid);
        hi.add_assign_round(self.rad.as_float(), Round::Up);
        hi
    }

    /// Upper bound for `|x|` over the enclosure.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_float(&self.mid).add(&self.rad)
    }

    /// Lower bound for `|x|` over the enclosure (zero if it straddles 0).
    pub fn abs_lower(&self) -> Float {
        let mut lo = dir::down(&Float::with_val(self.prec(), &*self.mid.as_abs()));
        lo.sub_assign_round(self.rad.as_float(), Round::Down);
        if lo.is_sign_negative() {
            Float::new(MAG_PREC)
        } else {
            lo
        }
    }

    pub fn contains_zero(&self) -> bool {
        Mag::from_float(&self.mid) <= self.rad && self.lower() <= 0 && self.upper() >= 0
    }

    pub fn is_positive(&self) -> bool {
        self.lower() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.upper() < 0
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lower() <= *q && *q <= self.upper()
    }

    pub fn contains_i64(&self, v: i64) -> bool {
        self.lower() <= v && v <= self.upper()
    }

    /// True if `other`'s enclosure lies inside this one.
    pub fn contains(&self, other: &RealBall) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &RealBall) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Certified ordering: `Some(Greater)` if every point of `self` exceeds
    /// every point of `other`, `Some(Less)` for the converse, `None` when
    /// the enclosures overlap.
    pub fn certified_cmp(&self, other: &RealBall) -> Option<Ordering> {
        if self.lower() > other.upper() {
            Some(Ordering::Greater)
        } else if self.upper() < other.lower() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Midpoint as `f64` (for diagnostics only).
    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn abs(&self) -> RealBall {
        RealBall {
            mid: self.mid.clone().abs(),
            rad: self.rad.clone(),
        }
    }

    pub fn mul_2si(&self, e: i32) -> RealBall {
        let mut mid = self.mid.clone();
        mid <<= e;
        RealBall {
            mid,
            rad: self.rad.mul_2si(e),
        }
    }

    fn prec_with(&self, other: &RealBall) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn add_ball(&self, other: &RealBall) -> RealBall {
        let (mid, ord) = (&self.mid + &other.mid).complete_round(self.prec_with(other), Round::Nearest);
        let rad = self.rad.add(&other.rad).add(&rounding_error(&mid, ord));
        RealBall { mid, rad }
    }

    pub fn sub_ball(&self, other: &RealBall) -> RealBall {
        let (mid, ord) = (&self.mid - &other.mid).complete_round(self.prec_with(other), Round::Nearest);
        let rad = self.rad.add(&other.rad).add(&rounding_error(&mid, ord));
        RealBall { mid, rad }
    }

    pub fn mul_ball(&self, other: &RealBall) -> RealBall {
        let (mid, ord) = (&self.mid * &other.mid).complete_round(self.prec_with(other), Round::Nearest);
        let rad = Mag::from_float(&self.mid)
            .mul(&other.rad)
            .add(&Mag::from_float(&other.mid).mul(&self.rad))
            .add(&self.rad.mul(&other.rad))
            .add(&rounding_error(&mid, ord));
        RealBall { mid, rad }
    }

    /// Division; an indeterminate (infinite-radius) ball if the divisor
    /// encloses zero.
    pub fn div_ball(&self, other: &RealBall) -> RealBall {
        self.checked_div(other).unwrap_or_else(|_| self.indeterminate())
    }

    pub fn checked_div(&self, other: &RealBall) -> Result<RealBall> {
        let denom_lower = other.abs_lower();
        if denom_lower <= 0 {
            return Err(Error::DivisionByZeroEnclosure);
        }
        let prec = self.prec_with(other);
        let (mid, ord) = (&self.mid / &other.mid).complete_round(prec, Round::Nearest);
        // |a/b - am/bm| <= (|am| rb + |bm| ra) / (|bm| (|bm| - rb))
        let num = Mag::from_float(&self.mid)
            .mul(&other.rad)
            .add(&Mag::from_float(&other.mid).mul(&self.rad));
        let bm_lower = dir::down(&Float::with_val(other.prec(), &*other.mid.as_abs()));
        let mut den = bm_lower;
        den *= &denom_lower;
        let den = Float::with_val_round(MAG_PREC, &den, Round::Down).0;
        let rad = num.div_lower(&den).add(&rounding_error(&mid, ord));
        Ok(RealBall { mid, rad })
    }

    pub fn indeterminate(&self) -> RealBall {
        RealBall {
            mid: Float::new(self.prec()),
            rad: Mag::inf(),
        }
    }

    pub fn sqr(&self) -> RealBall {
        let (mid, ord) = self.mid.square_ref().complete_round(self.prec(), Round::Nearest);
        let rad = Mag::from_float(&self.mid)
            .mul(&self.rad)
            .mul_2si(1)
            .add(&self.rad.mul(&self.rad))
            .add(&rounding_error(&mid, ord));
        RealBall { mid, rad }
    }

    pub fn recip(&self) -> RealBall {
        RealBall::one(self.prec()).div_ball(self)
    }

    pub fn mul_i64(&self, k: i64) -> RealBall {
        self.mul_ball(&RealBall::from_i64(k, self.prec()))
    }

    pub fn div_i64(&self, k: i64) -> RealBall {
        self.div_ball(&RealBall::from_i64(k, self.prec()))
    }

    pub fn add_i64(&self, k: i64) -> RealBall {
        self.add_ball(&RealBall::from_i64(k, self.prec()))
    }

    /// Natural logarithm; the enclosure must be strictly positive.
    pub fn ln(&self) -> Result<RealBall> {
        let lo = self.lower();
        if lo <= 0 {
            return Err(Error::DomainViolation(format!(
                "log of an enclosure reaching {}",
                lo.to_f64()
            )));
        }
        let (mid, ord) = self.mid.ln_ref().complete_round(self.prec(), Round::Nearest);
        // |log'| <= 1/lower on the enclosure
        let rad = self.rad.div_lower(&dir::down(&lo)).add(&rounding_error(&mid, ord));
        Ok(RealBall { mid, rad })
    }

    pub fn exp(&self) -> RealBall {
        let (mid, ord) = self.mid.exp_ref().complete_round(self.prec(), Round::Nearest);
        let rad = if self.rad.is_zero() {
            Mag::zero()
        } else {
            // |exp(x) - exp(m)| <= exp(m + r) * r
            let mut hi = dir::up(&self.upper());
            hi.exp_round(Round::Up);
            self.rad.mul_float(&hi)
        };
        let rad = rad.add(&rounding_error(&mid, ord));
        RealBall { mid, rad }
    }

    /// Square root; the enclosure must not reach below zero.
    pub fn sqrt(&self) -> Result<RealBall> {
        let lo = self.lower();
        if lo < 0 {
            return Err(Error::DomainViolation(format!(
                "sqrt of an enclosure reaching {}",
                lo.to_f64()
            )));
        }
        if lo == 0 && !self.rad.is_zero() {
            // enclosure [0, hi]: sqrt lies in [0, sqrt(hi)]
            let mut hi = dir::up(&self.upper());
            hi.sqrt_round(Round::Up);
            let mut mid = Float::with_val(self.prec(), &hi);
            mid >>= 1;
            let rad = Mag::from_float(&mid).add(&rounding_error(&mid, Ordering::Less));
            return Ok(RealBall { mid, rad });
        }
        let (mid, ord) = self.mid.sqrt_ref().complete_round(self.prec(), Round::Nearest);
        // |sqrt'| <= 1 / (2 sqrt(lower))
        let mut den = dir::down(&lo);
        den.sqrt_round(Round::Down);
        den <<= 1;
        let rad = self.rad.div_lower(&den).add(&rounding_error(&mid, ord));
        Ok(RealBall { mid, rad })
    }

    pub fn sin(&self) -> RealBall {
        let (mid, ord) = self.mid.sin_ref().complete_round(self.prec(), Round::Nearest);
        let rad = self.rad.add(&rounding_error(&mid, ord));
        RealBall { mid, rad }
    }

    pub fn cos(&self) -> RealBall {
        let (mid, ord) = self.mid.cos_ref().complete_round(self.prec(), Round::Nearest);
        let rad = self.rad.add(&rounding_error(&mid, ord));
        RealBall { mid, rad }
    }

    pub fn sinh(&self) -> RealBall {
        let (mid, ord) = self.mid.sinh_ref().complete_round(self.prec(), Round::Nearest);
        let rad = self.rad.mul_float(&self.cosh_bound()).add(&rounding_error(&mid, ord));
        RealBall { mid, rad }
    }

    pub fn cosh(&self) -> RealBall {
        let (mid, ord) = self.mid.cosh_ref().complete_round(self.prec(), Round::Nearest);
        let rad = self.rad.mul_float(&self.cosh_bound()).add(&rounding_error(&mid, ord));
        RealBall { mid, rad }
    }

    // cosh(|m| + r) bounds both |sinh'| and |cosh'| on the enclosure
    fn cosh_bound(&self) -> Float {
        if self.rad.is_zero() {
            return Float::new(MAG_PREC);
        }
        let mut a = dir::up(&Float::with_val(self.prec(), &*self.mid.as_abs()));
        a.add_assign_round(self.rad.as_float(), Round::Up);
        a.cosh_round(Round::Up);
        a
    }

    /// `atan2(self, x)` with `self` the ordinate. The enclosure must avoid the
    /// branch cut on the negative real axis.
    pub fn atan2(&self, x: &RealBall) -> Result<RealBall> {
        let crosses_cut = x.lower() <= 0 && self.contains_zero();
        if crosses_cut {
            return Err(Error::DomainViolation(
                "argument of a ball meeting the branch cut".into(),
            ));
        }
        let prec = self.prec_with(x);
        let (mid, ord) = self.mid.atan2_ref(&x.mid).complete_round(prec, Round::Nearest);
        if self.rad.is_zero() && x.rad.is_zero() {
            let rad = rounding_error(&mid, ord);
            return Ok(RealBall { mid, rad });
        }
        // the gradient of arg has norm 1/|z|; a lower bound for |z| on the box
        let dist = self.rad.add(&x.rad);
        let lower_modulus = {
            let ax = x.abs_lower();
            let ay = self.abs_lower();
            let mut m = Float::with_val(MAG_PREC, ax.max_ref(&ay));
            if m.is_zero() {
                return Err(Error::DomainViolation("argument of a ball containing zero".into()));
            }
            m.next_toward(&Float::new(MAG_PREC));
            m
        };
        let rad = dist.div_lower(&lower_modulus).add(&rounding_error(&mid, ord));
        Ok(RealBall { mid, rad })
    }

    /// Real power `self^e` for positive `self`.
    pub fn pow(&self, e: &RealBall) -> Result<RealBall> {
        Ok(self.ln()?.mul_ball(e).exp())
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut n: u32) -> RealBall {
        let mut base = self.clone();
        let mut acc = RealBall::one(self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ball(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn mid_string(&self, digits: Option<usize>) -> String {
        self.mid.to_string_radix(10, digits)
    }

    /// Sum of `terms` with a single rounding of the midpoint.
    pub fn sum_exact(terms: &[RealBall], prec: u32) -> RealBall {
        let (mid, ord) = Float::with_val_round(prec, Float::sum(terms.iter().map(|t| &t.mid)), Round::Nearest);
        let mut rad = rounding_error(&mid, ord);
        for t in terms {
            rad = rad.add(&t.rad);
        }
        RealBall { mid, rad }
    }

    /// Smallest enclosure of `self` and `other`.
    pub fn union(&self, other: &RealBall) -> RealBall {
        let prec = self.prec_with(other);
        let lo = self.lower().min(&other.lower());
        let hi = self.upper().max(&other.upper());
        RealBall::from_endpoints(&lo, &hi, prec)
    }

    /// Ball enclosing `[lo, hi]`.
    pub fn from_endpoints(lo: &Float, hi: &Float, prec: u32) -> RealBall {
        let (mut mid, _) = Float::with_val_round(prec, lo + hi, Round::Nearest);
        mid >>= 1;
        let a = Float::with_val_round(prec + 8, &mid - lo, Round::Up).0;
        let b = Float::with_val_round(prec + 8, hi - &mid, Round::Up).0;
        let rad = Mag::from_float(&a).max(&Mag::from_float(&b));
        RealBall { mid, rad }
    }
}

/// Exact rational value of a decimal literal such as `-1.25e-3`.
pub fn parse_decimal(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a decimal number: {text:?}"));
    let t = text.trim();
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut q = Rational::from(digits.parse::<rug::Integer>().map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = rug::Integer::from(10);
    if scale >= 0 {
        q *= ten.pow(scale as u32);
    } else {
        q /= ten.pow((-scale) as u32);
    }
    if neg {
        q = -q;
    }
    Ok(q)
}

impl fmt::Debug for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {}]", self.mid.to_string_radix(10, Some(20)), self.rad)
    }
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec() as f64) * std::f64::consts::LOG10_2).ceil() as usize;
        write!(f, "[{} +/- {}]", self.mid.to_string_radix(10, Some(digits)), self.rad)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl<'a> $trait<&'a RealBall> for &'a RealBall {
            type Output = RealBall;
            fn $method(self, rhs: &'a RealBall) -> RealBall {
                self.$impl(rhs)
            }
        }
        impl $trait<RealBall> for RealBall {
            type Output = RealBall;
            fn $method(self, rhs: RealBall) -> RealBall {
                self.$impl(&rhs)
            }
        }
        impl<'a> $trait<&'a RealBall> for RealBall {
            type Output = RealBall;
            fn $method(self, rhs: &'a RealBall) -> RealBall {
                self.$impl(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ball);
forward_binop!(Sub, sub, sub_ball);
forward_binop!(Mul, mul, mul_ball);
forward_binop!(Div, div, div_ball);

impl Neg for RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        RealBall {
            mid: -self.mid,
            rad: self.rad,
        }
    }
}

impl Neg for &RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        RealBall {
            mid: Float::with_val(self.prec(), -&self.mid),
            rad: self.rad.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    #[test]
    fn integer_arithmetic_is_exact() {
        let a = RealBall::from_i64(123_456, P);
        let b = RealBall::from_i64(-789, P);
        assert!((&a + &b).is_exact());
        assert!((&a * &b).is_exact());
        assert!((&a * &b).contains_i64(-97_406_784));
    }

    #[test]
    fn division_by_straddling_ball_fails() {
        let one = RealBall::one(P);
        let z = RealBall::new(Float::new(P), Mag::from_f64(1.0));
        assert!(matches!(one.checked_div(&z), Err(Error::DivisionByZeroEnclosure)));
        assert!(!one.div_ball(&z).is_finite());
    }

    #[test]
    fn third_times_three_contains_one() {
        let third = RealBall::one(P).div_i64(3);
        assert!(!third.is_exact());
        assert!(third.mul_i64(3).contains_i64(1));
    }

    #[test]
    fn log_of_one_contains_zero() {
        assert!(RealBall::one(P).ln().unwrap().contains_zero());
        assert!(RealBall::zero(P).ln().is_err());
    }

    #[test]
    fn sqrt_of_nine_is_three() {
        let nine = RealBall::from_i64(1 + 4 * 2, P);
        assert!(nine.sqrt().unwrap().contains_i64(3));
        assert!(RealBall::from_i64(-1, P).sqrt().is_err());
    }

    #[test]
    fn sqrt_touching_zero_encloses_interval() {
        let b = RealBall::new(Float::with_val(P, 1), Mag::from_f64(1.0));
        let r = b.sqrt().unwrap();
        assert!(r.contains_i64(0));
        assert!(r.contains_float(&Float::with_val(P, 2).sqrt()));
    }

    #[test]
    fn decimal_parsing_is_exact() {
        let q = parse_decimal("3.710063643746487e-05").unwrap();
        let ten = rug::Integer::from(10);
        assert_eq!(
            q,
            Rational::from((rug::Integer::from(3_710_063_643_746_487u64), ten.pow(20u32)))
        );
        assert_eq!(parse_decimal("-0.5").unwrap(), Rational::from((-1, 2)));
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("abc").is_err());
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = RealBall::from_decimal("0.75", P).unwrap();
        let back = x.exp().ln().unwrap();
        assert!(back.contains(&x) || back.overlaps(&x));
        assert!(back.rad().to_f64() < 1e-35);
    }

    #[test]
    fn atan2_rejects_branch_cut() {
        let y = RealBall::new(Float::new(P), Mag::from_f64(0.1));
        let x = RealBall::from_i64(-1, P);
        assert!(y.atan2(&x).is_err());
        let x = RealBall::from_i64(1, P);
        assert!(y.atan2(&x).unwrap().contains_zero());
    }
}

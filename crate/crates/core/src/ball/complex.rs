use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Round;
use rug::ops::AddAssignRound;
use rug::Float;

use super::mag::{Mag, MAG_PREC};
use super::real::RealBall;
use crate::error::{Error, Result};

/// Rectangular enclosure `re + i*im` of a complex number.
#[derive(Clone, PartialEq)]
pub struct ComplexBall {
    pub re: RealBall,
    pub im: RealBall,
}

impl ComplexBall {
    pub fn new(re: RealBall, im: RealBall) -> Self {
        ComplexBall { re, im }
    }

    pub fn from_real(re: RealBall) -> Self {
        let prec = re.prec();
        ComplexBall {
            re,
            im: RealBall::zero(prec),
        }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        ComplexBall::from_real(RealBall::from_i64(v, prec))
    }

    pub fn zero(prec: u32) -> Self {
        ComplexBall::from_real(RealBall::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        ComplexBall::from_i64(1, prec)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_exact() && self.im.mid().is_zero()
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn add_error(&mut self, err: &Mag) {
        self.re.add_error(err);
        self.im.add_error(err);
    }

    pub fn set_prec(&self, prec: u32) -> Self {
        ComplexBall::new(self.re.set_prec(prec), self.im.set_prec(prec))
    }

    /// Upper bound for `|z|` over the enclosure.
    pub fn abs_upper(&self) -> Mag {
        let a = self.re.abs_upper();
        let b = self.im.abs_upper();
        let mut s = Float::with_val_round(MAG_PREC, a.as_float().square_ref(), Round::Up).0;
        let b2 = Float::with_val_round(MAG_PREC, b.as_float().square_ref(), Round::Up).0;
        s.add_assign_round(&b2, Round::Up);
        s.sqrt_round(Round::Up);
        Mag::from_float(&s)
    }

    /// Lower bound for `|z|` over the enclosure.
    pub fn abs_lower(&self) -> Float {
        let a = self.re.abs_lower();
        let b = self.im.abs_lower();
        let mut s = Float::with_val_round(MAG_PREC, a.square_ref(), Round::Down).0;
        let b2 = Float::with_val_round(MAG_PREC, b.square_ref(), Round::Down).0;
        s.add_assign_round(&b2, Round::Down);
        s.sqrt_round(Round::Down);
        s
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn contains(&self, other: &ComplexBall) -> bool {
        self.re.contains(&other.re) && self.im.contains(&other.im)
    }

    pub fn mul_real(&self, x: &RealBall) -> ComplexBall {
        ComplexBall::new(&self.re * x, &self.im * x)
    }

    pub fn div_real(&self, x: &RealBall) -> ComplexBall {
        ComplexBall::new(&self.re / x, &self.im / x)
    }

    pub fn add_real(&self, x: &RealBall) -> ComplexBall {
        ComplexBall::new(&self.re + x, self.im.clone())
    }

    pub fn mul_i64(&self, k: i64) -> ComplexBall {
        ComplexBall::new(self.re.mul_i64(k), self.im.mul_i64(k))
    }

    pub fn add_i64(&self, k: i64) -> ComplexBall {
        ComplexBall::new(self.re.add_i64(k), self.im.clone())
    }

    pub fn mul_2si(&self, e: i32) -> ComplexBall {
        ComplexBall::new(self.re.mul_2si(e), self.im.mul_2si(e))
    }

    pub fn sqr(&self) -> ComplexBall {
        if self.is_real() {
            return ComplexBall::from_real(self.re.sqr());
        }
        let re = self.re.sqr() - self.im.sqr();
        let im = (&self.re * &self.im).mul_2si(1);
        ComplexBall::new(re, im)
    }

    fn mul_ball(&self, other: &ComplexBall) -> ComplexBall {
        if self.is_real() && other.is_real() {
            return ComplexBall::from_real(&self.re * &other.re);
        }
        let re = &self.re * &other.re - &self.im * &other.im;
        let im = &self.re * &other.im + &self.im * &other.re;
        ComplexBall::new(re, im)
    }

    pub fn checked_div(&self, other: &ComplexBall) -> Result<ComplexBall> {
        if other.abs_lower() <= 0 {
            return Err(Error::DivisionByZeroEnclosure);
        }
        Ok(self.div_ball(other))
    }

    fn div_ball(&self, other: &ComplexBall) -> ComplexBall {
        if other.is_real() {
            return self.div_real(&other.re);
        }
        let den = other.re.sqr() + other.im.sqr();
        let num = self.mul_ball(&other.conj());
        num.div_real(&den)
    }

    pub fn recip(&self) -> ComplexBall {
        ComplexBall::one(self.prec()).div_ball(self)
    }

    pub fn exp(&self) -> ComplexBall {
        let m = self.re.exp();
        if self.is_real() {
            return ComplexBall::from_real(m);
        }
        ComplexBall::new(&m * &self.im.cos(), &m * &self.im.sin())
    }

    /// Principal logarithm. Fails on enclosures containing zero or meeting
    /// the negative real axis.
    pub fn ln(&self) -> Result<ComplexBall> {
        if self.is_real() {
            return Ok(ComplexBall::from_real(self.re.ln()?));
        }
        if self.contains_zero() {
            return Err(Error::DomainViolation("log of a ball containing zero".into()));
        }
        let modulus_sq = self.re.sqr() + self.im.sqr();
        let re = modulus_sq.ln()?.mul_2si(-1);
        let im = self.im.atan2(&self.re)?;
        Ok(ComplexBall::new(re, im))
    }

    /// `base^self` for a positive real base, via `exp(self * log(base))`.
    pub fn pow_from_real_base(&self, log_base: &RealBall) -> ComplexBall {
        self.mul_real(log_base).exp()
    }

    pub fn sin(&self) -> ComplexBall {
        if self.is_real() {
            return ComplexBall::from_real(self.re.sin());
        }
        ComplexBall::new(&self.re.sin() * &self.im.cosh(), &self.re.cos() * &self.im.sinh())
    }

    pub fn cos(&self) -> ComplexBall {
        if self.is_real() {
            return ComplexBall::from_real(self.re.cos());
        }
        ComplexBall::new(&self.re.cos() * &self.im.cosh(), -(&self.re.sin() * &self.im.sinh()))
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a> $trait<&'a ComplexBall> for &'a ComplexBall {
            type Output = ComplexBall;
            fn $method(self, rhs: &'a ComplexBall) -> ComplexBall {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<ComplexBall> for ComplexBall {
            type Output = ComplexBall;
            fn $method(self, rhs: ComplexBall) -> ComplexBall {
                let ($a, $b) = (&self, &rhs);
                $body
            }
        }
        impl<'a> $trait<&'a ComplexBall> for ComplexBall {
            type Output = ComplexBall;
            fn $method(self, rhs: &'a ComplexBall) -> ComplexBall {
                let ($a, $b) = (&self, rhs);
                $body
            }
        }
    };
}

forward_binop!(Add, add, |a, b| ComplexBall::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| ComplexBall::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| a.mul_ball(b));
forward_binop!(Div, div, |a, b| a.div_ball(b));

impl Neg for ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall::new(-self.re, -self.im)
    }
}

impl Neg for &ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall::new(-&self.re, -&self.im)
    }
}

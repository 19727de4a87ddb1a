//! Ball arithmetic: midpoint-radius enclosures over MPFR floats.
//!
//! Midpoints are rounded to nearest at the ball's working precision and
//! every rounding error, together with the propagated input radii, is
//! added to an upward-rounded [`Mag`] radius.

mod complex;
mod mag;
mod real;

pub use complex::ComplexBall;
pub use mag::{Mag, MAG_PREC};
pub use real::{parse_decimal, RealBall};

use rug::float::{Constant, Round};
use rug::Float;

use crate::error::{Error, Result};

/// Smallest working precision accepted by the public constructors.
pub const MIN_PREC: u32 = 32;
/// Default working precision.
pub const DEFAULT_PREC: u32 = 192;
/// Hard cap for precision escalation.
pub const PREC_CAP: u32 = 16384;

pub fn check_prec(prec: u32) -> Result<()> {
    if prec < MIN_PREC {
        return Err(Error::InvalidArgument(format!(
            "precision {prec} bits is below the minimum of {MIN_PREC}"
        )));
    }
    if prec > PREC_CAP {
        return Err(Error::InvalidArgument(format!(
            "precision {prec} bits exceeds the cap of {PREC_CAP}"
        )));
    }
    Ok(())
}

fn mpfr_constant(c: Constant, prec: u32) -> RealBall {
    let (mid, ord) = Float::with_val_round(prec, c, Round::Nearest);
    let rad = real::rounding_error(&mid, ord);
    RealBall::new(mid, rad)
}

/// Enclosure of pi.
pub fn const_pi(prec: u32) -> Result<RealBall> {
    check_prec(prec)?;
    Ok(mpfr_constant(Constant::Pi, prec))
}

/// Enclosure of the Euler-Mascheroni constant.
pub fn const_euler_gamma(prec: u32) -> Result<RealBall> {
    check_prec(prec)?;
    Ok(mpfr_constant(Constant::Euler, prec))
}

pub(crate) fn pi(prec: u32) -> RealBall {
    mpfr_constant(Constant::Pi, prec)
}

pub(crate) fn euler_gamma(prec: u32) -> RealBall {
    mpfr_constant(Constant::Euler, prec)
}

pub(crate) fn ln2(prec: u32) -> RealBall {
    mpfr_constant(Constant::Log2, prec)
}

/// Arithmetic shared by real and complex balls, so that series code can be
/// written once.
pub trait Scalar: Clone + std::fmt::Debug + Send + Sync {
    fn prec(&self) -> u32;
    fn from_real(x: RealBall) -> Self;
    fn from_i64(v: i64, prec: u32) -> Self;
    fn real_part(&self) -> &RealBall;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn over(&self, other: &Self) -> Self;
    fn times_real(&self, x: &RealBall) -> Self;
    fn plus_i64(&self, k: i64) -> Self;
    fn negated(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Result<Self>;
    fn abs_upper(&self) -> Mag;
    fn abs_lower(&self) -> Float;
    fn add_error(&mut self, err: &Mag);
    fn is_finite(&self) -> bool;
    fn contains_zero(&self) -> bool;
    /// Largest component radius.
    fn radius(&self) -> Mag;
    /// True if the enclosure meets the real axis.
    fn meets_real_axis(&self) -> bool;
}

impl Scalar for RealBall {
    fn prec(&self) -> u32 {
        RealBall::prec(self)
    }
    fn from_real(x: RealBall) -> Self {
        x
    }
    fn from_i64(v: i64, prec: u32) -> Self {
        RealBall::from_i64(v, prec)
    }
    fn real_part(&self) -> &RealBall {
        self
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn over(&self, other: &Self) -> Self {
        self / other
    }
    fn times_real(&self, x: &RealBall) -> Self {
        self * x
    }
    fn plus_i64(&self, k: i64) -> Self {
        self.add_i64(k)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exp(&self) -> Self {
        RealBall::exp(self)
    }
    fn ln(&self) -> Result<Self> {
        RealBall::ln(self)
    }
    fn abs_upper(&self) -> Mag {
        RealBall::abs_upper(self)
    }
    fn abs_lower(&self) -> Float {
        RealBall::abs_lower(self)
    }
    fn add_error(&mut self, err: &Mag) {
        RealBall::add_error(self, err)
    }
    fn is_finite(&self) -> bool {
        RealBall::is_finite(self)
    }
    fn contains_zero(&self) -> bool {
        RealBall::contains_zero(self)
    }
    fn radius(&self) -> Mag {
        self.rad().clone()
    }
    fn meets_real_axis(&self) -> bool {
        true
    }
}

impl Scalar for ComplexBall {
    fn prec(&self) -> u32 {
        ComplexBall::prec(self)
    }
    fn from_real(x: RealBall) -> Self {
        ComplexBall::from_real(x)
    }
    fn from_i64(v: i64, prec: u32) -> Self {
        ComplexBall::from_i64(v, prec)
    }
    fn real_part(&self) -> &RealBall {
        &self.re
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn over(&self, other: &Self) -> Self {
        self / other
    }
    fn times_real(&self, x: &RealBall) -> Self {
        self.mul_real(x)
    }
    fn plus_i64(&self, k: i64) -> Self {
        self.add_i64(k)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exp(&self) -> Self {
        ComplexBall::exp(self)
    }
    fn ln(&self) -> Result<Self> {
        ComplexBall::ln(self)
    }
    fn abs_upper(&self) -> Mag {
        ComplexBall::abs_upper(self)
    }
    fn abs_lower(&self) -> Float {
        ComplexBall::abs_lower(self)
    }
    fn add_error(&mut self, err: &Mag) {
        ComplexBall::add_error(self, err)
    }
    fn is_finite(&self) -> bool {
        ComplexBall::is_finite(self)
    }
    fn contains_zero(&self) -> bool {
        ComplexBall::contains_zero(self)
    }
    fn radius(&self) -> Mag {
        self.re.rad().max(self.im.rad())
    }
    fn meets_real_axis(&self) -> bool {
        self.im.contains_zero()
    }
}

/// Operations accepted by [`elementary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
    Log,
    Exp,
    Pow,
}

impl Elementary {
    fn arity(self) -> usize {
        match self {
            Elementary::Sqrt | Elementary::Log | Elementary::Exp => 1,
            _ => 2,
        }
    }
}

/// A real or complex enclosure.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyBall {
    Real(RealBall),
    Complex(ComplexBall),
}

impl AnyBall {
    fn to_complex(&self) -> ComplexBall {
        match self {
            AnyBall::Real(r) => ComplexBall::from_real(r.clone()),
            AnyBall::Complex(c) => c.clone(),
        }
    }
}

/// Evaluate one elementary operation at `prec` bits with domain checking.
///
/// Real arguments use the real path, where `log` and `sqrt` reject
/// enclosures reaching non-positive (resp. negative) values. If any argument
/// is complex the principal branch is used.
pub fn elementary(op: Elementary, args: &[AnyBall], prec: u32) -> Result<AnyBall> {
    check_prec(prec)?;
    if args.len() != op.arity() {
        return Err(Error::InvalidArgument(format!(
            "{op:?} takes {} argument(s), got {}",
            op.arity(),
            args.len()
        )));
    }
    let all_real = args.iter().all(|a| matches!(a, AnyBall::Real(_)));
    if all_real {
        let r: Vec<RealBall> = args
            .iter()
            .map(|a| match a {
                AnyBall::Real(r) => r.set_prec(prec),
                AnyBall::Complex(_) => unreachable!(),
            })
            .collect();
        let out = match op {
            Elementary::Add => &r[0] + &r[1],
            Elementary::Sub => &r[0] - &r[1],
            Elementary::Mul => &r[0] * &r[1],
            Elementary::Div => r[0].checked_div(&r[1])?,
            Elementary::Sqrt => r[0].sqrt()?,
            Elementary::Log => r[0].ln()?,
            Elementary::Exp => r[0].exp(),
            Elementary::Pow => r[0].pow(&r[1])?,
        };
        return Ok(AnyBall::Real(out));
    }
    let c: Vec<ComplexBall> = args.iter().map(|a| a.to_complex().set_prec(prec)).collect();
    let out = match op {
        Elementary::Add => &c[0] + &c[1],
        Elementary::Sub => &c[0] - &c[1],
        Elementary::Mul => &c[0] * &c[1],
        Elementary::Div => c[0].checked_div(&c[1])?,
        Elementary::Sqrt => {
            if c[0].contains_zero() {
                return Err(Error::DomainViolation("complex sqrt of a ball containing zero".into()));
            }
            c[0].ln()?.mul_2si(-1).exp()
        }
        Elementary::Log => c[0].ln()?,
        Elementary::Exp => c[0].exp(),
        Elementary::Pow => (&c[1] * &c[0].ln()?).exp(),
    };
    Ok(AnyBall::Complex(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_at_64_bits() {
        let p = const_pi(64).unwrap();
        assert!(p.rad().to_f64() < 1e-17);
        assert!(p.rad() <= &Mag::pow2(4 - 64));
        assert!(p.mid_string(Some(15)).starts_with("3.14159265358979"));
    }

    #[test]
    fn pi_refines_with_precision() {
        let lo = const_pi(64).unwrap();
        let hi = const_pi(256).unwrap();
        assert!(lo.contains(&hi));
    }

    #[test]
    fn low_precision_is_rejected() {
        assert!(matches!(const_pi(8), Err(Error::InvalidArgument(_))));
        assert!(matches!(const_euler_gamma(16), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn euler_gamma_digits() {
        let g = const_euler_gamma(128).unwrap();
        let reference = parse_decimal("0.5772156649015328606065120900824").unwrap();
        let diff = Float::with_val(256, g.mid() - &reference);
        assert!(diff.abs() < 1e-25);
        // the commonly reprinted "0.5772156649001532860606512" carries an
        // inserted zero after the tenth decimal and is not an enclosure member
        let misprint = parse_decimal("0.5772156649001532860606512").unwrap();
        assert!(!g.contains_rational(&misprint));
        let ten_digits = parse_decimal("0.5772156649").unwrap();
        assert!(Float::with_val(256, g.mid() - &ten_digits).abs() < 1e-10);
        let g64 = const_euler_gamma(64).unwrap();
        assert!(g64.contains_float(g.mid()));
    }

    #[test]
    fn elementary_domains() {
        let one = AnyBall::Real(RealBall::one(64));
        match elementary(Elementary::Log, std::slice::from_ref(&one), 64).unwrap() {
            AnyBall::Real(r) => assert!(r.contains_zero()),
            _ => panic!("expected real"),
        }
        let nine = AnyBall::Real(RealBall::from_i64(9, 64));
        match elementary(Elementary::Sqrt, &[nine], 64).unwrap() {
            AnyBall::Real(r) => assert!(r.contains_i64(3)),
            _ => panic!("expected real"),
        }
        let straddle = AnyBall::Real(RealBall::new(Float::new(64), Mag::from_f64(1.0)));
        assert!(matches!(
            elementary(Elementary::Div, &[one.clone(), straddle], 64),
            Err(Error::DivisionByZeroEnclosure)
        ));
        let neg = AnyBall::Real(RealBall::from_i64(-2, 64));
        assert!(matches!(
            elementary(Elementary::Log, std::slice::from_ref(&neg), 64),
            Err(Error::DomainViolation(_))
        ));
        assert!(matches!(
            elementary(Elementary::Sqrt, &[neg], 64),
            Err(Error::DomainViolation(_))
        ));
        assert!(elementary(Elementary::Add, &[one], 64).is_err());
    }

    #[test]
    fn complex_sqrt_of_minus_four() {
        let m4 = AnyBall::Complex(ComplexBall::from_i64(-4, 64));
        // -4 sits on the branch cut; nudge above it
        let mut z = ComplexBall::from_i64(-4, 64);
        z.im = RealBall::from_f64(1e-30, 64);
        let r = elementary(Elementary::Sqrt, &[AnyBall::Complex(z)], 64).unwrap();
        match r {
            AnyBall::Complex(c) => assert!(c.im.overlaps(&RealBall::from_i64(2, 64))),
            _ => panic!(),
        }
        assert!(elementary(Elementary::Log, &[m4], 64).is_err());
    }
}

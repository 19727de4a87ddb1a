//! Sums over zeros: per-zero terms, catalog partial sums and certified tails.

mod tail;

pub use tail::{tail_bound, validate_envelope, EnvelopeReport, TailBound, MIN_TAIL_HEIGHT};

use rayon::prelude::*;
use rug::float::Round;
use rug::{Float, Rational};

use crate::ball::{self, RealBall};
use crate::error::{Error, Result};
use crate::zeros::ZeroCatalog;

/// Block size for parallel partial sums.
pub const BLOCK: usize = 4096;

/// Default slack constant `C` of the counting-function envelope `C log t`.
pub const DEFAULT_SLACK: f64 = 2.0;

/// `1 / (1/4 + beta^2)`.
pub fn lambda_term(beta: &RealBall) -> Result<RealBall> {
    check_beta(beta)?;
    let q = RealBall::one(beta.prec()).mul_2si(-2);
    Ok((&q + &beta.sqr()).recip())
}

#[derive(Clone, Debug)]
pub struct MuNu {
    pub mu: RealBall,
    pub nu: RealBall,
    pub product: RealBall,
}

/// Quadruplet coefficients for `rho = 1/2 + delta + i beta`:
///
///   mu = (1/2 - 2 delta^2 + 2 beta^2) / D,  nu = 1 / D,
///   D  = (1/4 + delta^2 + beta^2)^2 - delta^2.
pub fn mu_nu_terms(delta: &RealBall, beta: &RealBall) -> Result<MuNu> {
    check_beta(beta)?;
    let half = Rational::from((1, 2));
    if !(delta.lower() >= 0 && delta.upper() < half) {
        return Err(Error::DomainViolation("delta must lie in [0, 1/2)".into()));
    }
    let prec = beta.prec().max(delta.prec());
    let d2 = delta.sqr();
    let b2 = beta.sqr();
    let quarter = RealBall::one(prec).mul_2si(-2);
    let inner = &(&quarter + &d2) + &b2;
    let denom = &inner.sqr() - &d2;
    let nu = RealBall::one(prec).checked_div(&denom)?;
    let num = &(&RealBall::one(prec).mul_2si(-1) - &d2.mul_2si(1)) + &b2.mul_2si(1);
    let mu = &num * &nu;
    // mu < 2 / beta^2 < 1 / (2 pi^2)
    let bound = ball::pi(prec).sqr().mul_2si(1).recip();
    if !(mu.upper() < bound.lower()) {
        return Err(Error::DomainViolation("mu exceeds 1/(2 pi^2)".into()));
    }
    let product = &mu * &nu;
    Ok(MuNu { mu, nu, product })
}

fn check_beta(beta: &RealBall) -> Result<()> {
    let two_pi = ball::pi(64).mul_2si(1);
    if !(beta.lower() > two_pi.upper()) {
        return Err(Error::DomainViolation(format!(
            "ordinate {} is not above 2 pi",
            beta.mid_string(Some(10))
        )));
    }
    Ok(())
}

/// `1 + gamma/2 - log(4 pi)/2`, the sum of `1/rho` over all zeros.
pub fn reciprocal_constant(prec: u32) -> Result<RealBall> {
    ball::check_prec(prec)?;
    let g = ball::euler_gamma(prec);
    let log4pi = ball::pi(prec).mul_2si(2).ln()?;
    Ok(&(&g - &log4pi).mul_2si(-1) + &RealBall::one(prec))
}

/// Catalog partial sum together with its certified tail.
#[derive(Clone, Debug)]
pub struct SumResult {
    pub power: u32,
    pub partial: RealBall,
    pub tail_low: RealBall,
    pub tail_high: RealBall,
    pub enclosure: RealBall,
    pub terms_used: usize,
    pub cutoff_t: RealBall,
    pub slack: f64,
}

/// Sum of `lambda_m^power` over the catalog, with the tail beyond the last
/// ordinate. The counting envelope is validated on the catalog first.
pub fn sum_lambda_power(catalog: &ZeroCatalog, power: u32, slack: f64, prec: u32) -> Result<SumResult> {
    ball::check_prec(prec)?;
    if !(1..=2).contains(&power) {
        return Err(Error::InvalidArgument(format!("power must be 1 or 2, got {power}")));
    }
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    if catalog.omega2().next().is_some() {
        return Err(Error::OffLineZeros);
    }
    let partial = partial_sum(catalog, power, prec)?;
    let cutoff_t = catalog.cutoff()?.set_prec(prec);
    validate_envelope(catalog, slack)?;
    let tail = tail_bound(&cutoff_t, power, slack)?;
    let lo = add_round_down(&partial.lower(), &tail.low.lower());
    let hi = add_round_up(&partial.upper(), &tail.high.upper());
    let enclosure = RealBall::from_endpoints(&lo, &hi, prec);
    Ok(SumResult {
        power,
        partial,
        tail_low: tail.low,
        tail_high: tail.high,
        enclosure,
        terms_used: catalog.len(),
        cutoff_t,
        slack,
    })
}

/// Sum of `lambda_m^power` over the catalog only, in blocks of [`BLOCK`]
/// combined in index order.
pub fn partial_sum(catalog: &ZeroCatalog, power: u32, prec: u32) -> Result<RealBall> {
    let blocks: Vec<RealBall> = catalog
        .entries()
        .par_chunks(BLOCK)
        .map(|chunk| -> Result<RealBall> {
            let terms = chunk
                .iter()
                .map(|e| {
                    let l = lambda_term(&e.beta.set_prec(prec))?;
                    Ok(if power == 2 { l.sqr() } else { l })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(RealBall::sum_exact(&terms, prec))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RealBall::sum_exact(&blocks, prec))
}

fn add_round_down(a: &Float, b: &Float) -> Float {
    Float::with_val_round(a.prec().max(b.prec()), a + b, Round::Down).0
}

fn add_round_up(a: &Float, b: &Float) -> Float {
    Float::with_val_round(a.prec().max(b.prec()), a + b, Round::Up).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::Mag;
    use crate::zeros::parse_zero_table;

    const P: u32 = 128;

    #[test]
    fn first_lambda() {
        let b = RealBall::from_decimal("14.134725142", P).unwrap();
        let l = lambda_term(&b).unwrap();
        // 1/(0.25 + 14.134725142^2) evaluated as an exact rational
        let beta = crate::ball::parse_decimal("14.134725142").unwrap();
        let exact = Rational::from((1, 1)) / (Rational::from((1, 4)) + beta.square());
        assert!(l.contains_rational(&exact));
        assert!((l.to_f64() - 4.99899e-3).abs() < 1e-8);
    }

    #[test]
    fn lambda_domain_and_decay() {
        assert!(lambda_term(&RealBall::from_i64(6, P)).is_err());
        assert!(lambda_term(&RealBall::from_f64(1.0001e4, P)).unwrap().to_f64() < 1e-8);
    }

    #[test]
    fn mu_nu_on_line_degenerate() {
        let b = RealBall::from_decimal("14.134725142", P).unwrap();
        let t = mu_nu_terms(&RealBall::zero(P), &b).unwrap();
        let l = lambda_term(&b).unwrap();
        assert!(t.mu.overlaps(&l.mul_2si(1)));
        assert!(t.nu.overlaps(&l.sqr()));
    }

    #[test]
    fn mu_nu_off_line_direct() {
        let d = RealBall::from_f64(0.25, P);
        let b = RealBall::from_i64(100, P);
        let t = mu_nu_terms(&d, &b).unwrap();
        // (1/2 - 1/8 + 20000) / ((1/4 + 1/16 + 10000)^2 - 1/16)^2 as an exact rational
        let num = Rational::from((160003, 8));
        let inner = Rational::from((160005, 16));
        let den = Rational::from(inner.square_ref()) - Rational::from((1, 16));
        let expect = num / den.square();
        assert!(t.product.contains_rational(&expect));
        assert!(mu_nu_terms(&RealBall::from_f64(0.6, P), &b).is_err());
    }

    #[test]
    fn reciprocal_constant_value_and_nesting() {
        let c128 = reciprocal_constant(128).unwrap();
        assert!((c128.to_f64() - 0.023095708966121033).abs() < 1e-17);
        let c64 = reciprocal_constant(64).unwrap();
        let c256 = reciprocal_constant(256).unwrap();
        assert!(c64.contains(&c256));
    }

    #[test]
    fn partial_sums() {
        let acc = Mag::from_f64(5e-10);
        let cat = parse_zero_table("14.134725142\n".as_bytes(), &acc, "one").unwrap();
        let s = partial_sum(&cat, 2, P).unwrap();
        assert!((s.to_f64() - 2.4990e-5).abs() < 1e-8);
        let empty = crate::zeros::ZeroCatalog::new(vec![], acc, "none").unwrap();
        assert!(matches!(sum_lambda_power(&empty, 2, 2.0, P), Err(Error::EmptyCatalog)));
    }
}

//! Riemann zeta by Euler-Maclaurin summation, with the reflection formula
//! for the left half-plane.
//!
//! With `X = N + 1`,
//!
//!   zeta(s) = sum_{n<=N} n^-s + X^{1-s}/(s-1) + X^-s/2
//!             + sum_{k=1}^{M} B_{2k}/(2k)! (s)_{2k-1} X^{-s-2k+1} + R,
//!
//!   |R| <= 4 |(s)_{2M}| / (2 pi)^{2M} * X^{1-sigma-2M} / (sigma + 2M - 1).

use rug::float::Round;
use rug::ops::{DivAssignRound, MulAssignRound, PowAssignRound};
use rug::{Float, Integer, Rational};

use super::{bernoulli_even, escalate, gamma_at, EvalRequest};
use crate::ball::{self, ComplexBall, Mag, RealBall, MAG_PREC};
use crate::error::{Error, Result};

/// Certified enclosure of zeta(s), `s != 1`.
pub fn zeta(s: &ComplexBall, req: &EvalRequest) -> Result<ComplexBall> {
    escalate(req, |p| zeta_at(&s.set_prec(p.max(s.prec())), p))
}

/// zeta(s) at a fixed working precision. Uses Euler-Maclaurin directly for
/// `Re(s) >= 1/2` and the reflection formula otherwise.
pub fn zeta_at(s: &ComplexBall, prec: u32) -> Result<ComplexBall> {
    if s.re.mid().to_f64() >= 0.5 {
        zeta_euler_maclaurin(s, prec)
    } else {
        zeta_reflected(s, prec)
    }
}

/// zeta(s) by Euler-Maclaurin summation at `s` itself.
pub fn zeta_euler_maclaurin(s: &ComplexBall, prec: u32) -> Result<ComplexBall> {
    let parts = em_parts(s, prec)?;
    let s_minus_1 = s.add_i64(-1);
    if s_minus_1.contains_zero() {
        return Err(Error::PoleEnclosure("zeta pole at s = 1 inside the enclosure".into()));
    }
    Ok(&(&parts.head + &parts.tail) + &parts.x_pow.checked_div(&s_minus_1)?)
}

/// The entire function `(s - 1) zeta(s)`.
pub fn zeta_times_s_minus_one(s: &ComplexBall, prec: u32) -> Result<ComplexBall> {
    let parts = em_parts(s, prec)?;
    Ok(&(&s.add_i64(-1) * &(&parts.head + &parts.tail)) + &parts.x_pow)
}

/// zeta(s) from the functional equation
///
///   zeta(s) = -2^{s-1} pi^s sinc(pi s / 2) Gamma(1 - s) E(1 - s),
///
/// where `E(w) = (w - 1) zeta(w)` is entire, so `s = 0` is regular.
pub fn zeta_reflected(s: &ComplexBall, prec: u32) -> Result<ComplexBall> {
    let one_minus_s = -&s.add_i64(-1);
    let e = zeta_times_s_minus_one(&one_minus_s, prec)?;
    let g = gamma_at(&one_minus_s, prec)?;
    let pi = ball::pi(prec);
    let ln2 = ball::ln2(prec);
    let two_pow = s.add_i64(-1).pow_from_real_base(&ln2);
    let pi_pow = s.pow_from_real_base(&pi.ln()?);
    let w = s.mul_real(&pi).mul_2si(-1);
    let value = &(&(&two_pow * &pi_pow) * &sinc(&w)) * &(&g * &e);
    Ok(-&value)
}

/// sin(w)/w, entire.
pub(crate) fn sinc(w: &ComplexBall) -> ComplexBall {
    let prec = w.prec();
    let r = w.abs_upper();
    if r < 1.0 {
        // sum_{k<K} (-1)^k w^{2k}/(2k+1)!, tail <= 2 |w|^{2K} / (2K+1)!
        let w2 = w.sqr();
        let mut term = ComplexBall::one(prec);
        let mut acc = ComplexBall::one(prec);
        let goal = Mag::pow2(-(prec as i64) - 8);
        let mut fact = Integer::from(1); // (2k+1)!
        let mut k: u64 = 0;
        loop {
            k += 1;
            let step = (2 * k) * (2 * k + 1);
            term = (&term * &w2).div_real(&RealBall::from_i64(-(step as i64), prec));
            acc = &acc + &term;
            fact *= step;
            let next = Integer::from(&fact * ((2 * k + 2) * (2 * k + 3)));
            let tail = r
                .powu(2 * k as u32 + 2)
                .mul_2si(1)
                .div_lower(&Float::with_val_round(MAG_PREC, &next, Round::Down).0);
            if tail <= goal || k > 4 * prec as u64 {
                acc.add_error(&tail);
                return acc;
            }
        }
    }
    w.sin().checked_div(w).expect("|w| >= 1 excludes zero")
}

struct EmParts {
    head: ComplexBall,
    /// X^{1-s}
    x_pow: ComplexBall,
    /// X^-s / 2 + Bernoulli correction + remainder
    tail: ComplexBall,
}

/// Choose (N, M) so that the remainder is below `2^-(prec+8)`.
fn choose_parameters(s: &ComplexBall, prec: u32) -> Result<(u64, usize)> {
    let sigma = s.re.mid().to_f64();
    let t = s.im.abs_upper().to_f64();
    let abs_s = s.abs_upper().to_f64();
    if !abs_s.is_finite() {
        return Err(Error::InvalidArgument("zeta argument is not finite".into()));
    }
    let goal = -((prec + 8) as f64) * std::f64::consts::LN_2;
    let ln_2pi = (2.0 * std::f64::consts::PI).ln();
    let mut n = ((prec as f64) / 6.0 + t / (2.0 * std::f64::consts::PI)).ceil().max(8.0) as u64;
    let m_max = 2 * prec as usize + 16;
    for _ in 0..40 {
        let ln_x = ((n + 1) as f64).ln();
        let mut ln_poch = 0.0;
        for m in 1..=m_max {
            let j = 2 * m as u64;
            ln_poch += ((sigma + (j - 2) as f64).powi(2) + t * t).sqrt().max(1e-300).ln();
            ln_poch += ((sigma + (j - 1) as f64).powi(2) + t * t).sqrt().max(1e-300).ln();
            let denom = sigma + j as f64 - 1.0;
            if denom <= 0.5 {
                continue;
            }
            let ln_bound = 4f64.ln() + ln_poch - j as f64 * ln_2pi + (1.0 - sigma - j as f64) * ln_x - denom.ln();
            if ln_bound <= goal {
                return Ok((n, m));
            }
        }
        n *= 2;
    }
    Err(Error::InvalidArgument(
        "zeta argument too large for Euler-Maclaurin".into(),
    ))
}

fn em_parts(s: &ComplexBall, prec: u32) -> Result<EmParts> {
    let (n, m) = choose_parameters(s, prec)?;
    let neg_s = -s;

    let mut head = ComplexBall::zero(prec);
    for k in 1..=n {
        let ln_k = RealBall::from_i64(k as i64, prec).ln()?;
        head = &head + &neg_s.pow_from_real_base(&ln_k);
    }

    let x = RealBall::from_i64(n as i64 + 1, prec);
    let ln_x = x.ln()?;
    let x_neg_s = neg_s.pow_from_real_base(&ln_x);
    let x_pow = x_neg_s.mul_real(&x);

    let mut tail = x_neg_s.mul_2si(-1);
    let x_inv = x.recip();
    let x_inv2 = x_inv.sqr();
    let mut xp = x_neg_s.mul_real(&x_inv); // X^{-s-2k+1} for k = 1
    let mut poch = s.clone(); // (s)_{2k-1} for k = 1
    let mut fact = Integer::from(2); // (2k)!
    for k in 1..=m {
        let coeff = bernoulli_even(k) / Rational::from(&fact);
        let c = RealBall::from_rational(&coeff, prec);
        tail = &tail + &(&poch * &xp).mul_real(&c);
        let j = 2 * k as i64;
        poch = &(&poch * &s.add_i64(j - 1)) * &s.add_i64(j);
        xp = xp.mul_real(&x_inv2);
        fact *= (j + 1) as u64 * (j + 2) as u64;
    }
    tail.add_error(&remainder(s, n + 1, m));
    Ok(EmParts { head, x_pow, tail })
}

/// Upper bound for the Euler-Maclaurin remainder after `m` correction terms.
fn remainder(s: &ComplexBall, x: u64, m: usize) -> Mag {
    let sigma_lo = s.re.lower();
    let two_m = 2 * m as u32;
    // sigma + 2M - 1 > 0 required
    let mut denom = Float::with_val_round(MAG_PREC, &sigma_lo + (two_m as i64 - 1), Round::Down).0;
    if denom <= 0 {
        return Mag::inf();
    }
    let mut poch = Mag::from_f64(1.0);
    for j in 0..two_m {
        poch = poch.mul(&s.add_i64(j as i64).abs_upper());
    }
    let mut two_pi = ball::pi(MAG_PREC).mul_2si(1).lower();
    two_pi.pow_assign_round(two_m, Round::Down);
    // X^{1 - sigma - 2M} <= X^{1 - sigma_lo - 2M}
    let xe = Float::with_val_round(MAG_PREC, 1 - two_m as i64 - &sigma_lo, Round::Up).0;
    let lnx_round = if xe.is_sign_negative() { Round::Down } else { Round::Up };
    let mut lnx = Float::with_val_round(MAG_PREC, x, lnx_round).0;
    lnx.ln_round(lnx_round);
    let mut ex = Float::with_val_round(MAG_PREC, &xe * &lnx, Round::Up).0;
    ex.exp_round(Round::Up);
    denom.mul_assign_round(&two_pi, Round::Down);
    let mut out = poch.mul_float(&ex).into_float();
    out.mul_assign_round(4, Round::Up);
    out.div_assign_round(&denom, Round::Up);
    Mag::from_float(&out)
}

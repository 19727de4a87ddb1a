//! Tail of `sum_{beta > T} (1/4 + beta^2)^-p` by Stieltjes integration
//! against the counting function `N(t) = M(t) + E(t)`, with
//!
//!   M(t) = (t/2pi) log(t/2pi) - t/2pi,   |E(t)| <= C log t.
//!
//! Writing `f(t) = (1/4 + t^2)^-p`,
//!
//!   tail = int_T^inf f dM - f(T) E(T) - int_T^inf E f' dt,
//!
//! where `int f dM` lies in `[I_{2p} - (p/4) I_{2p+2}, I_{2p}]` with
//! `I_q = (1/2pi) (log(T/2pi) / ((q-1) T^{q-1}) + 1 / ((q-1)^2 T^{q-1}))`,
//! and the last term is at most `C (log T / T^{2p} + 1 / (2p T^{2p}))`.

use crate::ball::{self, RealBall};
use crate::error::{Error, Result};
use crate::zeros::ZeroCatalog;

/// Smallest height at which the envelope is checked and used.
pub const MIN_TAIL_HEIGHT: f64 = 100.0;

#[derive(Clone, Debug)]
pub struct TailBound {
    pub low: RealBall,
    pub high: RealBall,
}

/// Certified bracket for the tail beyond `t` of the `power`-th powers of
/// `1/(1/4 + beta^2)`, assuming `|N(t) - M(t)| <= slack * log t` above `t`.
pub fn tail_bound(t: &RealBall, power: u32, slack: f64) -> Result<TailBound> {
    if !(t.lower() >= MIN_TAIL_HEIGHT) {
        return Err(Error::TTooSmall(t.mid_string(Some(10))));
    }
    if !(1..=2).contains(&power) {
        return Err(Error::InvalidArgument(format!("power must be 1 or 2, got {power}")));
    }
    if !(slack.is_finite() && slack > 0.0) {
        return Err(Error::InvalidArgument("slack must be positive".into()));
    }
    let prec = t.prec();
    let p = power as i64;
    let c = RealBall::from_f64(slack, prec);
    let log_t = t.ln()?;

    let i_big = integral_q(t, 2 * p)?;
    let i_next = integral_q(t, 2 * p + 2)?;
    let main_hi = i_big.clone();
    let main_lo = &i_big - &i_next.mul_i64(p).mul_2si(-2);

    let quarter = RealBall::one(prec).mul_2si(-2);
    let f_t = (&quarter + &t.sqr()).powi(power).recip();
    let boundary = &(&f_t * &c) * &log_t;
    let t_2p = t.powi(2 * power);
    let integral = &c * &(&(&log_t / &t_2p) + &t_2p.mul_i64(2 * p).recip());
    let spread = &boundary + &integral;

    let high = RealBall::from_float((&main_hi + &spread).upper());
    let low_val = (&main_lo - &spread).lower();
    let low = if low_val.is_sign_negative() {
        RealBall::zero(prec)
    } else {
        RealBall::from_float(low_val)
    };
    Ok(TailBound { low, high })
}

/// `I_q` from the module notes.
fn integral_q(t: &RealBall, q: i64) -> Result<RealBall> {
    let prec = t.prec();
    let two_pi = ball::pi(prec).mul_2si(1);
    let log_ratio = (t / &two_pi).ln()?;
    let t_pow = t.powi((q - 1) as u32);
    let a = &log_ratio / &t_pow.mul_i64(q - 1);
    let b = t_pow.mul_i64((q - 1) * (q - 1)).recip();
    Ok(&(&a + &b) / &two_pi)
}

/// Outcome of the envelope check `|N(t) - M(t)| <= C log t` on a catalog.
#[derive(Clone, Debug)]
pub struct EnvelopeReport {
    pub checked_from: f64,
    pub checked_to: f64,
    pub jumps_checked: usize,
    /// Largest `|N - M| / log t` seen.
    pub max_ratio: f64,
}

/// Check the counting envelope at both sides of every jump of `N` in
/// `[100, cutoff]`. Between jumps `N` is constant and `M` increasing, so the
/// extremes of `N - M` occur at the jump points.
///
/// The check runs in binary64 with a margin of `1e-6`, far above the
/// rounding and ordinate uncertainty at these heights.
pub fn validate_envelope(catalog: &ZeroCatalog, slack: f64) -> Result<EnvelopeReport> {
    const MARGIN: f64 = 1e-6;
    let cutoff = catalog.cutoff()?.to_f64();
    if cutoff < MIN_TAIL_HEIGHT {
        return Err(Error::TTooSmall(format!("{cutoff}")));
    }
    let main = |t: f64| {
        let x = t / std::f64::consts::TAU;
        x * x.ln() - x
    };
    let entries = catalog.entries();
    let first = entries.partition_point(|e| e.beta.to_f64() < MIN_TAIL_HEIGHT);
    let mut max_ratio = 0.0f64;
    let mut check = |t: f64, n: usize| -> Result<()> {
        let dev = (n as f64 - main(t)).abs();
        let allowed = slack * t.ln();
        max_ratio = max_ratio.max(dev / t.ln());
        if dev + MARGIN > allowed {
            return Err(Error::TailValidation {
                at: format!("{t}"),
                deviation: format!("{dev:.6}"),
                allowed: format!("{allowed:.6}"),
            });
        }
        Ok(())
    };
    check(MIN_TAIL_HEIGHT, first)?;
    for (i, e) in entries.iter().enumerate().skip(first) {
        let t = e.beta.to_f64();
        check(t, i)?;
        check(t, i + 1)?;
    }
    Ok(EnvelopeReport {
        checked_from: MIN_TAIL_HEIGHT,
        checked_to: cutoff,
        jumps_checked: entries.len() - first,
        max_ratio,
    })
}

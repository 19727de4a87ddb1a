//! Completed zeta function xi(s) = s (s - 1) pi^{-s/2} Gamma(s/2) zeta(s) / 2.

use super::zeta::zeta_times_s_minus_one;
use super::{escalate, gamma_at, EvalRequest};
use crate::ball::{self, ComplexBall, RealBall};
use crate::error::{Error, Result};

/// Certified enclosure of xi(s).
pub fn xi(s: &ComplexBall, req: &EvalRequest) -> Result<ComplexBall> {
    escalate(req, |p| xi_at(&s.set_prec(p.max(s.prec())), p))
}

/// xi(s) at a fixed working precision. The left half-plane is handled by
/// xi(s) = xi(1 - s).
pub fn xi_at(s: &ComplexBall, prec: u32) -> Result<ComplexBall> {
    if s.re.mid().to_f64() < 0.5 {
        let reflected = -&s.add_i64(-1);
        return xi_right(&reflected, prec);
    }
    xi_right(s, prec)
}

/// xi on the real line; the result is real.
pub fn xi_real_at(s: &RealBall, prec: u32) -> Result<RealBall> {
    let v = xi_at(&ComplexBall::from_real(s.clone()), prec)?;
    if !v.im.contains_zero() {
        return Err(Error::DomainViolation(
            "xi on the real line produced a non-real value".into(),
        ));
    }
    Ok(v.re)
}

fn xi_right(s: &ComplexBall, prec: u32) -> Result<ComplexBall> {
    let half_s = s.mul_2si(-1);
    let g = gamma_at(&half_s, prec)?;
    let e = zeta_times_s_minus_one(s, prec)?;
    let ln_pi = ball::pi(prec).ln()?;
    let pi_pow = (-&half_s).pow_from_real_base(&ln_pi);
    Ok(&(&half_s * &pi_pow) * &(&g * &e))
}

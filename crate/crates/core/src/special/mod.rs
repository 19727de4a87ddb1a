//! Certified Gamma, zeta, xi and the real change of variable used by the
//! psi-function audits.

mod bernoulli;
mod gamma;
mod hadamard;
mod psi;
mod xi;
mod zeta;

pub use bernoulli::bernoulli_even;
pub use gamma::{gamma, gamma_at, ln_gamma_at};
pub use hadamard::xi_hadamard_partial;
pub use psi::{psi, psi_at, s_of_z};
pub use xi::{xi, xi_at, xi_real_at};
pub use zeta::{zeta, zeta_at, zeta_euler_maclaurin, zeta_reflected, zeta_times_s_minus_one};

use crate::ball::{check_prec, Mag, Scalar, DEFAULT_PREC, PREC_CAP};
use crate::error::{Error, Result};

/// Accuracy contract for one evaluation: keep doubling the working precision
/// from `start_prec` until the output radius is at most `target_radius`, and
/// give up beyond `max_prec`.
#[derive(Clone, Debug)]
pub struct EvalRequest {
    pub target_radius: Mag,
    pub start_prec: u32,
    pub max_prec: u32,
}

impl EvalRequest {
    pub fn new(target_radius: Mag, start_prec: u32, max_prec: u32) -> Result<Self> {
        if target_radius.is_zero() || !target_radius.is_finite() {
            return Err(Error::InvalidArgument(
                "target radius must be positive and finite".into(),
            ));
        }
        check_prec(start_prec)?;
        check_prec(max_prec)?;
        if start_prec > max_prec {
            return Err(Error::InvalidArgument(format!(
                "start precision {start_prec} exceeds max precision {max_prec}"
            )));
        }
        Ok(EvalRequest {
            target_radius,
            start_prec,
            max_prec,
        })
    }

    /// Target `2^-bits` relative to unit magnitude.
    pub fn with_bits(bits: i64, start_prec: u32, max_prec: u32) -> Result<Self> {
        EvalRequest::new(Mag::pow2(-bits), start_prec, max_prec)
    }

    pub fn from_f64(target: f64, start_prec: u32, max_prec: u32) -> Result<Self> {
        EvalRequest::new(Mag::from_f64(target), start_prec, max_prec)
    }
}

impl Default for EvalRequest {
    fn default() -> Self {
        EvalRequest {
            target_radius: Mag::pow2(-(DEFAULT_PREC as i64) + 16),
            start_prec: DEFAULT_PREC,
            max_prec: PREC_CAP,
        }
    }
}

/// Run `eval` at doubling precision until its radius meets the request.
///
/// Errors other than an unmet target propagate immediately; a result that is
/// still too wide at `max_prec` becomes `PrecisionExhausted`.
pub fn escalate<T, F>(req: &EvalRequest, mut eval: F) -> Result<T>
where
    T: Scalar,
    F: FnMut(u32) -> Result<T>,
{
    escalate_by(req, |v: &T| v.radius(), &mut eval)
}

/// As [`escalate`], with a caller-chosen width measure.
pub fn escalate_by<T, W, F>(req: &EvalRequest, width: W, mut eval: F) -> Result<T>
where
    W: Fn(&T) -> Mag,
    F: FnMut(u32) -> Result<T>,
{
    let mut prec = req.start_prec;
    loop {
        let value = eval(prec)?;
        if width(&value) <= req.target_radius {
            return Ok(value);
        }
        if prec >= req.max_prec {
            return Err(Error::PrecisionExhausted {
                target: req.target_radius.to_string(),
                cap: req.max_prec,
            });
        }
        prec = (prec * 2).min(req.max_prec);
    }
}

//! Gamma function by recurrence shift into the Stirling region.
//!
//! For `Re(w) > 0`,
//!
//!   ln Gamma(w) = (w - 1/2) ln w - w + ln(2 pi)/2
//!                 + sum_{k=1}^{K} B_{2k} / (2k (2k-1) w^{2k-1}) + R_K(w)
//!
//! with |R_K(w)| <= |B_{2K+2}| / ((2K+2)(2K+1) |w|^{2K+1}) * sec^{2K+2}(arg(w)/2).

use rug::float::Round;
use rug::ops::{AddAssignRound, DivAssignRound, PowAssignRound};
use rug::Float;

use super::{bernoulli_even, escalate, EvalRequest};
use crate::ball::{self, ComplexBall, Mag, RealBall, Scalar, MAG_PREC};
use crate::error::{Error, Result};

/// Certified enclosure of Gamma(s).
pub fn gamma(s: &ComplexBall, req: &EvalRequest) -> Result<ComplexBall> {
    escalate(req, |p| gamma_at(&s.set_prec(p.max(s.prec())), p))
}

/// Gamma(s) at a fixed working precision.
pub fn gamma_at<S: Scalar>(s: &S, prec: u32) -> Result<S> {
    check_poles(s)?;
    let (w, shift) = shift_into_stirling_region(s, prec);
    let lg = stirling_ln_gamma(&w, prec)?;
    let mut value = lg.exp();
    if shift > 0 {
        let mut prod = s.clone();
        for j in 1..shift {
            prod = prod.times(&s.plus_i64(j));
        }
        value = value.over(&prod);
    }
    if !value.is_finite() {
        return Err(Error::PoleEnclosure("Gamma argument too close to a pole".into()));
    }
    Ok(value)
}

/// ln Gamma(s) for real `s > 0`.
pub fn ln_gamma_at(s: &RealBall, prec: u32) -> Result<RealBall> {
    if !s.is_positive() {
        return Err(Error::DomainViolation("ln Gamma needs a positive real argument".into()));
    }
    let (w, shift) = shift_into_stirling_region(s, prec);
    let mut lg = stirling_ln_gamma(&w, prec)?;
    for j in 0..shift {
        lg = &lg - &s.add_i64(j).ln()?;
    }
    Ok(lg)
}

fn check_poles<S: Scalar>(s: &S) -> Result<()> {
    if !s.meets_real_axis() {
        return Ok(());
    }
    let re = s.real_part();
    let hi = re.upper();
    if hi < 0.5 {
        let lo = re.lower();
        // is there an integer k <= 0 in [lo, hi]?
        let top = hi.clone().floor();
        if top <= 0 && top >= lo {
            return Err(Error::PoleEnclosure(format!(
                "Gamma pole at {} inside the enclosure",
                top.to_f64()
            )));
        }
    }
    Ok(())
}

/// Smallest real part at which the Stirling series reaches `prec` bits.
fn stirling_radius(prec: u32) -> f64 {
    0.12 * prec as f64 + 10.0
}

fn shift_into_stirling_region<S: Scalar>(s: &S, prec: u32) -> (S, i64) {
    let target = stirling_radius(prec);
    let re = s.real_part().to_f64();
    let shift = if re < target { (target - re).ceil() as i64 } else { 0 };
    (s.plus_i64(shift), shift)
}

/// Natural log of `|B_{2k}| / (2k (2k-1))` as f64, for term-size estimates.
fn ln_coeff_estimate(k: usize) -> f64 {
    // |B_{2k}| ~ 2 (2k)! / (2 pi)^{2k}
    let two_k = 2 * k;
    let ln_fact: f64 = (2..=two_k).map(|i| (i as f64).ln()).sum();
    std::f64::consts::LN_2 + ln_fact
        - two_k as f64 * (2.0 * std::f64::consts::PI).ln()
        - ((two_k * (two_k - 1)) as f64).ln()
}

fn stirling_ln_gamma<S: Scalar>(w: &S, prec: u32) -> Result<S> {
    let ln_w = w.ln()?;
    let half = RealBall::one(prec).mul_2si(-1);
    let ln_2pi = (ball::pi(prec).mul_2si(1)).ln()?;
    let mut acc = w
        .plus(&S::from_real(-&half))
        .times(&ln_w)
        .minus(w)
        .plus(&S::from_real(ln_2pi.mul_2si(-1)));

    // pick K: first k whose next term estimate drops below 2^-(prec+8),
    // never past the point where terms start growing
    let abs_w = w.abs_lower().to_f64().max(1.0);
    let goal = -((prec + 8) as f64) * std::f64::consts::LN_2;
    let mut terms = 1usize;
    loop {
        let next = ln_coeff_estimate(terms + 1) - (2 * terms + 1) as f64 * abs_w.ln();
        let cur = ln_coeff_estimate(terms) - (2 * terms - 1) as f64 * abs_w.ln();
        if next <= goal || next >= cur || terms > 4 * prec as usize {
            break;
        }
        terms += 1;
    }

    let w_inv = S::from_i64(1, prec).over(w);
    let w_inv2 = w_inv.times(&w_inv);
    let mut power = w_inv.clone();
    for k in 1..=terms {
        let b = bernoulli_even(k);
        let denom = (2 * k * (2 * k - 1)) as u64;
        let coeff = RealBall::from_rational(&(b / denom), prec);
        acc = acc.plus(&power.times_real(&coeff));
        power = power.times(&w_inv2);
    }
    acc.add_error(&remainder_bound(w, terms));
    Ok(acc)
}

fn remainder_bound<S: Scalar>(w: &S, terms: usize) -> Mag {
    let k1 = terms + 1;
    let b = bernoulli_even(k1);
    let coeff = Mag::from_rational(&b).div_lower(&Float::with_val(MAG_PREC, ((2 * k1) * (2 * k1 - 1)) as u64));
    let abs_lo = w.abs_lower();
    let mut pow_lo = abs_lo.clone();
    pow_lo.pow_assign_round((2 * terms + 1) as u32, Round::Down);
    let base = coeff.div_lower(&pow_lo);

    // sec^2(theta/2) = 2 / (1 + cos theta), cos theta >= Re(w)_lo / |w|_hi
    let re_lo = w.real_part().lower();
    let abs_hi = w.abs_upper();
    let mut cos_lo = Float::with_val_round(MAG_PREC, &re_lo, Round::Down).0;
    cos_lo.div_assign_round(abs_hi.as_float(), Round::Down);
    if cos_lo <= -1 {
        return Mag::inf();
    }
    cos_lo.add_assign_round(1, Round::Down);
    let sec2 = Mag::from_f64(2.0).div_lower(&cos_lo);
    base.mul(&sec2.powu(k1 as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn real(x: f64) -> RealBall {
        RealBall::from_f64(x, P)
    }

    #[test]
    fn gamma_of_five_is_24() {
        let g = gamma_at(&real(5.0), P).unwrap();
        assert!(g.contains_i64(24));
        assert!(g.rad().to_f64() < 1e-30);
    }

    #[test]
    fn gamma_of_half_is_sqrt_pi() {
        let g = gamma_at(&real(0.5), P).unwrap();
        let sqrt_pi = ball::pi(P + 64).sqrt().unwrap();
        assert!(g.overlaps(&sqrt_pi));
        assert!(g.rad().to_f64() < 1e-30);
    }

    #[test]
    fn gamma_at_quarter_matches_product_limit_oracle() {
        // Gauss product limit Gamma(x) = lim n^x n! / (x (x+1) ... (x+n)),
        // with its first-order correction, evaluated in plain MPFR
        let oracle = product_limit_gamma(0.25, 4096);
        let g = gamma_at(&real(0.25), P).unwrap();
        let d = Float::with_val(256, g.mid() - &oracle).abs();
        assert!(d < 1e-6, "difference {d}");
        // frozen reference digits of Gamma(1/4)
        let frozen = RealBall::from_decimal("3.6256099082219083119306851558676720029951676828800654674", P).unwrap();
        assert!(g.overlaps(&frozen));
    }

    // Gamma_n(x) = Gamma(x) (1 - x(x+1)/(2n) + O(1/n^2))
    fn product_limit_gamma(x: f64, n: u32) -> Float {
        let prec = 256;
        let x = Float::with_val(prec, x);
        let mut acc = Float::with_val(prec, 1);
        for k in 1..=n {
            // (k / (x + k)) keeps the running product near 1
            acc *= Float::with_val(prec, k) / Float::with_val(prec, &x + k);
        }
        let nf = Float::with_val(prec, n);
        let pow = Float::with_val(prec, nf.ln_ref()) * &x;
        acc *= pow.exp();
        acc /= &x;
        let corr = Float::with_val(prec, &x * Float::with_val(prec, &x + 1u32)) / (2 * n);
        acc / (Float::with_val(prec, 1) - corr)
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(gamma_at(&real(0.0), P), Err(Error::PoleEnclosure(_))));
        assert!(matches!(gamma_at(&real(-3.0), P), Err(Error::PoleEnclosure(_))));
        let mut near = real(-2.0);
        near.add_error(&Mag::from_f64(0.01));
        assert!(matches!(gamma_at(&near, P), Err(Error::PoleEnclosure(_))));
        assert!(gamma_at(&real(-2.5), P).is_ok());
    }

    #[test]
    fn complex_recurrence() {
        // Gamma(s+1) = s Gamma(s)
        let s = ComplexBall::new(real(0.3), real(2.7));
        let g = gamma_at(&s, P).unwrap();
        let g1 = gamma_at(&s.add_i64(1), P).unwrap();
        assert!((&s * &g).overlaps(&g1));
        assert!(g.re.rad().to_f64() < 1e-28);
    }

    #[test]
    fn complex_conjugate_symmetry() {
        let s = ComplexBall::new(real(1.25), real(-4.0));
        let a = gamma_at(&s, P).unwrap();
        let b = gamma_at(&s.conj(), P).unwrap();
        assert!(a.overlaps(&b.conj()));
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        let x = real(7.5);
        let lg = ln_gamma_at(&x, P).unwrap();
        let g = gamma_at(&x, P).unwrap();
        assert!(lg.exp().overlaps(&g));
    }
}

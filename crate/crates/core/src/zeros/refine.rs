//! Certified refinement of critical-line zeros.
//!
//! `g(t) = xi(1/2 + it)` is real. A zero is located by regula falsi
//! (Illinois variant) with bisection fallback on a bracket whose endpoint
//! signs are certified, and the result is re-checked at the final ball's
//! endpoints.

use std::cmp::Ordering;

use rug::float::Round;
use rug::Float;

use super::{ZeroEntry, ZeroSource, TABLE_PREC};
use crate::ball::{ComplexBall, Mag, RealBall, PREC_CAP};
use crate::error::{Error, Result};
use crate::special::xi_at;

/// A refined zero with the enclosures of `g` at both ends of its ball.
#[derive(Clone, Debug)]
pub struct RefineOutcome {
    pub entry: ZeroEntry,
    pub g_low: RealBall,
    pub g_high: RealBall,
    pub prec: u32,
}

/// `xi(1/2 + it)` for real `t`.
pub fn xi_on_critical_line(t: &RealBall, prec: u32) -> Result<RealBall> {
    let s = ComplexBall::new(RealBall::one(prec).mul_2si(-1), t.clone());
    let v = xi_at(&s, prec)?;
    if !v.im.contains_zero() {
        return Err(Error::DomainViolation("xi on the critical line is not real".into()));
    }
    Ok(v.re)
}

/// Shrink the ordinate of `entry` to radius at most `target`.
///
/// Entries already at the target are returned unchanged.
pub fn refine_zero(entry: &ZeroEntry, target: &Mag) -> Result<RefineOutcome> {
    if !entry.on_line() {
        return Err(Error::InvalidArgument("only critical-line zeros can be refined".into()));
    }
    if target.is_zero() || !target.is_finite() {
        return Err(Error::InvalidArgument(
            "target radius must be positive and finite".into(),
        ));
    }
    let mut prec = working_prec(entry, target);
    if entry.beta.rad() <= target {
        let (g_low, g_high) = endpoint_signs(&entry.beta, &mut prec)?;
        return Ok(RefineOutcome {
            entry: entry.clone(),
            g_low,
            g_high,
            prec,
        });
    }

    let three_r = Float::with_val(prec, entry.beta.rad().as_float() * 3u32);
    let mut a = Float::with_val(prec, entry.beta.mid() - &three_r);
    let mut b = Float::with_val(prec, entry.beta.mid() + &three_r);
    let (ga, gb) = loop {
        let ga = g(&a, prec)?;
        let gb = g(&b, prec)?;
        match (sign(&ga), sign(&gb)) {
            (Some(x), Some(y)) if x != y => break (ga, gb),
            (Some(_), Some(_)) => return Err(no_sign_change(entry)),
            _ => prec = bump(prec, target)?,
        }
    };
    let sa = sign(&ga).expect("certified above");

    let mut fa = ga.mid().clone();
    let mut fb = gb.mid().clone();
    let mut last_side = 0i8;
    let mut stall = 0;
    for _ in 0..10_000 {
        let width = Float::with_val(prec, &b - &a);
        if half_width_fits(&width, target) {
            break;
        }
        let use_bisection = stall >= 2 || fa == fb;
        let mut c = if use_bisection {
            Float::with_val(prec, &a + &b) >> 1u32
        } else {
            // c = b - fb (b - a) / (fb - fa)
            let step = Float::with_val(prec, &fb * &width) / Float::with_val(prec, &fb - &fa);
            Float::with_val(prec, &b - &step)
        };
        // keep c strictly inside, at least target/4 from either end
        let guard = Float::with_val(prec, target.as_float()) >> 2u32;
        let lo = Float::with_val(prec, &a + &guard);
        let hi = Float::with_val(prec, &b - &guard);
        if c < lo {
            c = lo;
        } else if c > hi {
            c = hi;
        }
        let gc = g(&c, prec)?;
        match sign(&gc) {
            None => {
                // g(c) is below resolution: close in around c
                let tight = target.as_float().clone() >> 1u32;
                let l = Float::with_val(prec, &c - &tight);
                let r = Float::with_val(prec, &c + &tight);
                let (gl, gr) = (g(&l, prec)?, g(&r, prec)?);
                match (sign(&gl), sign(&gr)) {
                    (Some(x), Some(y)) if x == sa && y != sa => {
                        a = l;
                        b = r;
                        break;
                    }
                    _ => {
                        prec = bump(prec, target)?;
                        a = Float::with_val(prec, &a);
                        b = Float::with_val(prec, &b);
                        continue;
                    }
                }
            }
            Some(sc) => {
                let before = Float::with_val(prec, &b - &a);
                if sc == sa {
                    a = c;
                    fa = gc.mid().clone();
                    if last_side == -1 {
                        fb >>= 1u32;
                    }
                    last_side = -1;
                } else {
                    b = c;
                    fb = gc.mid().clone();
                    if last_side == 1 {
                        fa >>= 1u32;
                    }
                    last_side = 1;
                }
                let after = Float::with_val(prec, &b - &a);
                if use_bisection || after * 2u32 < before {
                    stall = 0;
                } else {
                    stall += 1;
                }
            }
        }
    }
    let beta = RealBall::from_endpoints(&a, &b, prec);
    if beta.rad() > target {
        return Err(Error::PrecisionExhausted {
            target: target.to_string(),
            cap: prec,
        });
    }
    let (g_low, g_high) = endpoint_signs(&beta, &mut prec)?;
    Ok(RefineOutcome {
        entry: ZeroEntry {
            index: entry.index,
            beta,
            delta: entry.delta.clone(),
            source: ZeroSource::Refined,
        },
        g_low,
        g_high,
        prec,
    })
}

fn working_prec(entry: &ZeroEntry, target: &Mag) -> u32 {
    let target_bits = -(target.exponent().unwrap_or(0) as i64);
    let height_bits = entry.beta.mid().get_exp().unwrap_or(0) as i64;
    (target_bits + height_bits + 64).clamp(TABLE_PREC as i64, PREC_CAP as i64) as u32
}

fn bump(prec: u32, target: &Mag) -> Result<u32> {
    if prec >= PREC_CAP {
        return Err(Error::PrecisionExhausted {
            target: target.to_string(),
            cap: PREC_CAP,
        });
    }
    Ok((prec * 2).min(PREC_CAP))
}

fn half_width_fits(width: &Float, target: &Mag) -> bool {
    let (mut half, _) = Float::with_val_round(width.prec(), width, Round::Up);
    half >>= 1u32;
    // leave a little room for the rounding of the final midpoint
    half < Float::with_val(53, target.as_float() * 0.99f64)
}

fn g(t: &Float, prec: u32) -> Result<RealBall> {
    xi_on_critical_line(&RealBall::from_float(t.clone()), prec)
}

fn sign(v: &RealBall) -> Option<Ordering> {
    if v.is_positive() {
        Some(Ordering::Greater)
    } else if v.is_negative() {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// Certified opposite signs of g at both ends of `beta`.
fn endpoint_signs(beta: &RealBall, prec: &mut u32) -> Result<(RealBall, RealBall)> {
    loop {
        let lo = g(&beta.lower(), *prec)?;
        let hi = g(&beta.upper(), *prec)?;
        match (sign(&lo), sign(&hi)) {
            (Some(x), Some(y)) if x != y => return Ok((lo, hi)),
            (Some(_), Some(_)) => {
                return Err(Error::NoSignChange(beta.mid_string(Some(20))));
            }
            _ => *prec = bump(*prec, beta.rad())?,
        }
    }
}

fn no_sign_change(entry: &ZeroEntry) -> Error {
    Error::NoSignChange(entry.beta.mid_string(Some(15)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(mid: &str, rad: f64) -> ZeroEntry {
        ZeroEntry {
            index: 1,
            beta: RealBall::from_decimal(mid, TABLE_PREC)
                .unwrap()
                .with_error(&Mag::from_f64(rad)),
            delta: RealBall::zero(TABLE_PREC),
            source: ZeroSource::Table,
        }
    }

    #[test]
    fn first_zero_to_thirty_digits() {
        let out = refine_zero(&entry("14.134725142", 5e-10), &Mag::from_f64(1e-30)).unwrap();
        assert!(out.entry.beta.rad() <= &Mag::from_f64(1e-30));
        assert_eq!(out.entry.source, ZeroSource::Refined);
        // independent reference digits of the first ordinate
        let reference = RealBall::from_decimal("14.134725141734693790457251983562470270784257115699", 256).unwrap();
        assert!(out.entry.beta.overlaps(&reference));
        assert!(out.g_low.is_positive() != out.g_high.is_positive());
        assert!(!out.g_low.contains_zero() && !out.g_high.contains_zero());
    }

    #[test]
    fn refinement_is_idempotent() {
        let target = Mag::from_f64(1e-20);
        let once = refine_zero(&entry("14.134725142", 5e-10), &target).unwrap();
        let twice = refine_zero(&once.entry, &target).unwrap();
        assert_eq!(once.entry, twice.entry);
    }

    #[test]
    fn no_zero_near_fifteen() {
        let r = refine_zero(&entry("15", 0.1), &Mag::from_f64(1e-20));
        assert!(matches!(r, Err(Error::NoSignChange(_))));
    }

    #[test]
    fn xi_keeps_one_sign_between_first_two_zeros() {
        for k in 0..13 {
            let t = RealBall::from_f64(14.5 + 0.5 * k as f64, 128);
            assert!(
                xi_on_critical_line(&t, 128).unwrap().is_negative(),
                "t = {}",
                t.to_f64()
            );
        }
    }
}

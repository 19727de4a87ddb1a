//! Moderate-argument bound
//!
//!   lambda / z^2 - (psi(z) - psi(-z)) / (2 z^3)
//!
//! whose series expansion starts at -(sum lambda_m^3) / 3.

use std::collections::BTreeMap;

use rug::Rational;

use super::section4::rational_text;
use super::{containment, digits_lost, width_ok, AuditConfig, AuditFinding, AuditReport, Containment};
use crate::ball::RealBall;
use crate::error::{Error, Result};
use crate::special::psi_at;
use crate::sums::reciprocal_constant;

pub const SECTION5_Z: &str = "0.005025";
pub const EQ_5_16_PRINTED: &str = "3.73644298e-08";

struct Eval {
    value: RealBall,
    parts: [RealBall; 2],
    prec: u32,
}

fn eval_at(z: &Rational, prec: u32) -> Result<Eval> {
    let zb = RealBall::from_rational(z, prec + 64);
    let psi_plus = psi_at(&zb, prec)?;
    let psi_minus = psi_at(&-&zb, prec)?;
    let lambda = reciprocal_constant(prec)?;
    let a = &lambda / &zb.sqr();
    let b = &(&psi_plus - &psi_minus) / &zb.powi(3).mul_2si(1);
    Ok(Eval {
        value: &a - &b,
        parts: [a, b],
        prec,
    })
}

/// The bound at `z`, escalated until its width meets the configured target.
pub fn audit_corollary_5_2(z: &Rational, cfg: &AuditConfig) -> Result<AuditFinding> {
    if !(*z > 0 && *z < (1, 4)) {
        return Err(Error::DomainViolation(
            "z must lie in (0, 1/4) so that -z stays above -1/4".into(),
        ));
    }
    let mut prec = cfg.section5_prec.min(cfg.prec_cap);
    let (e, exhausted) = loop {
        let e = eval_at(z, prec)?;
        if width_ok(&e.value, cfg.section5_width) {
            break (e, false);
        }
        if prec >= cfg.prec_cap {
            break (e, true);
        }
        prec = (prec * 2).min(cfg.prec_cap);
    };

    let one_minus_4z = Rational::from(1) - Rational::from(z * 4u32);
    let mut inputs = BTreeMap::new();
    inputs.insert("z".to_string(), rational_text(z));
    inputs.insert("one_minus_4z".to_string(), rational_text(&one_minus_4z));
    inputs.insert("lambda".to_string(), "1 + gamma/2 - log(4 pi)/2".to_string());

    let mut notes = Vec::new();
    notes.push(
        match e.value.certified_cmp(&RealBall::zero(e.prec)) {
            Some(std::cmp::Ordering::Less) => "recomputed value is certified negative",
            Some(std::cmp::Ordering::Greater) => "recomputed value is certified positive",
            _ => "sign of the recomputed value is undecided",
        }
        .to_string(),
    );
    let is_default = super::parse_point(SECTION5_Z).map(|d| d == *z).unwrap_or(false);
    let (paper_value, contain) = if is_default {
        if e.value.is_negative() && super::parse_decimal(EQ_5_16_PRINTED)? > 0 {
            notes.push("printed value is positive; the recomputation has the opposite sign".to_string());
        }
        notes.extend(super::rounding_note(&e.value, EQ_5_16_PRINTED)?);
        (
            Some(EQ_5_16_PRINTED.to_string()),
            containment(&e.value, EQ_5_16_PRINTED)?,
        )
    } else {
        notes.push("no printed value at this argument".to_string());
        (None, Containment::Undecided)
    };
    if exhausted {
        notes.push(format!("width target not met at the precision cap of {} bits", e.prec));
    }
    let [a, b] = &e.parts;
    Ok(AuditFinding {
        claim_id: "EQ_5_16".to_string(),
        inputs,
        digits_lost: digits_lost(&[a, b], &e.value),
        recomputed: e.value,
        paper_value,
        containment: contain,
        precision_bits_used: e.prec,
        notes,
    })
}

pub(crate) fn section5_report(z: &Rational, cfg: &AuditConfig) -> Result<AuditReport> {
    let f = audit_corollary_5_2(z, cfg)?;
    let mut config = BTreeMap::new();
    config.insert("section5_start_prec".to_string(), cfg.section5_prec.to_string());
    config.insert("section5_width".to_string(), format!("{:e}", cfg.section5_width));
    config.insert("z5".to_string(), rational_text(z));
    let exhausted = if width_ok(&f.recomputed, cfg.section5_width) {
        vec![]
    } else {
        vec![f.claim_id.clone()]
    };
    Ok(AuditReport {
        config,
        findings: vec![f],
        verdicts: vec![],
        exhausted,
    })
}

//! Small-argument bounds built from psi(z1) and psi(-z1):
//!
//!   EQ_4_22 = -(psi(z) + psi(-z)) / z^2
//!   EQ_4_23 = -2 lambda / z - 2 psi(-z) / z^2
//!   EQ_4_26 =  2 lambda / z - 2 psi(z) / z^2
//!
//! with lambda the reciprocal-sum constant, and the catalog sum of
//! lambda_m^2 as an independent arbiter.

use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::Rational;

use super::{
    containment, digits_lost, rounding_note, width_ok, AuditConfig, AuditFinding, AuditReport, Containment, Relation,
    Verdict,
};
use crate::ball::{Mag, RealBall};
use crate::error::{Error, Result};
use crate::special::{escalate_by, psi_at, EvalRequest};
use crate::sums::{reciprocal_constant, sum_lambda_power, validate_envelope};
use crate::zeros::ZeroCatalog;

pub const SECTION4_Z1: &str = "1.0e-10";
pub const EQ_4_22_PRINTED: &str = "3.710063643746487e-05";
pub const EQ_4_23_PRINTED: &str = "3.710063643739287e-05";
pub const EQ_4_26_PRINTED: &str = "3.71006364375369e-05";

#[derive(Clone, Debug)]
pub struct PsiPair {
    pub psi_plus: RealBall,
    pub psi_minus: RealBall,
    pub sum: RealBall,
    pub diff: RealBall,
    /// `log10(|psi_plus| / |sum|)`.
    pub digits_lost: Option<f64>,
    pub prec: u32,
}

/// psi(z1), psi(-z1), their sum and difference, escalated until the sum's
/// relative radius meets `req.target_radius`.
pub fn audit_psi_pair(z1: &Rational, req: &EvalRequest) -> Result<PsiPair> {
    check_z(z1)?;
    escalate_by(req, |p: &PsiPair| relative_radius(&p.sum), |prec| psi_pair_at(z1, prec))
}

fn psi_pair_at(z1: &Rational, prec: u32) -> Result<PsiPair> {
    let z = RealBall::from_rational(z1, prec + 64);
    let psi_plus = psi_at(&z, prec)?;
    let psi_minus = psi_at(&-&z, prec)?;
    let sum = &psi_plus + &psi_minus;
    let diff = &psi_plus - &psi_minus;
    let lost = digits_lost(&[&psi_plus], &sum);
    Ok(PsiPair {
        psi_plus,
        psi_minus,
        sum,
        diff,
        digits_lost: lost,
        prec,
    })
}

fn relative_radius(b: &RealBall) -> Mag {
    b.rad().div_lower(&b.abs_lower())
}

fn check_z(z1: &Rational) -> Result<()> {
    if !(*z1 > 0 && *z1 < (1, 4)) {
        return Err(Error::DomainViolation("z1 must lie in (0, 1/4)".into()));
    }
    Ok(())
}

/// The three bounds at one working precision.
#[derive(Clone, Debug)]
pub struct Section4 {
    pub prec: u32,
    pub pair: PsiPair,
    pub lambda: RealBall,
    pub eq_4_22: RealBall,
    pub eq_4_23: RealBall,
    pub eq_4_26: RealBall,
    /// Parts whose cancellation produces each bound.
    parts_23: [RealBall; 2],
    parts_26: [RealBall; 2],
}

fn section4_at(z1: &Rational, prec: u32) -> Result<Section4> {
    let pair = psi_pair_at(z1, prec)?;
    let z = RealBall::from_rational(z1, prec + 64);
    let z2 = z.sqr();
    let lambda = reciprocal_constant(prec)?;
    let eq_4_22 = -&(&pair.sum / &z2);
    let two_lambda_over_z = &lambda.mul_2si(1) / &z;
    let a = -&two_lambda_over_z;
    let b = -&(&pair.psi_minus.mul_2si(1) / &z2);
    let eq_4_23 = &a + &b;
    let c = two_lambda_over_z;
    let d = -&(&pair.psi_plus.mul_2si(1) / &z2);
    let eq_4_26 = &c + &d;
    Ok(Section4 {
        prec,
        pair,
        lambda,
        eq_4_22,
        eq_4_23,
        eq_4_26,
        parts_23: [a, b],
        parts_26: [c, d],
    })
}

/// Evaluate at doubling precision until `done` holds; the flag reports
/// whether the cap was hit first.
fn escalate_section4<F>(z1: &Rational, cfg: &AuditConfig, done: F) -> Result<(Section4, bool)>
where
    F: Fn(&Section4) -> bool,
{
    check_z(z1)?;
    let mut prec = cfg.section4_prec.min(cfg.prec_cap);
    loop {
        let s = section4_at(z1, prec)?;
        if done(&s) {
            return Ok((s, false));
        }
        if prec >= cfg.prec_cap {
            return Ok((s, true));
        }
        prec = (prec * 2).min(cfg.prec_cap);
    }
}

fn is_default_point(z1: &Rational) -> bool {
    super::parse_point(SECTION4_Z1).map(|d| d == *z1).unwrap_or(false)
}

fn finding(
    claim_id: &str,
    z1: &Rational,
    value: &RealBall,
    printed: &str,
    parts: &[&RealBall],
    s: &Section4,
    exhausted: bool,
) -> Result<AuditFinding> {
    let mut inputs = BTreeMap::new();
    inputs.insert("z1".to_string(), rational_text(z1));
    inputs.insert("lambda".to_string(), "1 + gamma/2 - log(4 pi)/2".to_string());
    let mut notes = Vec::new();
    let (paper_value, contain) = if is_default_point(z1) {
        notes.extend(rounding_note(value, printed)?);
        (Some(printed.to_string()), containment(value, printed)?)
    } else {
        notes.push("no printed value at this argument".to_string());
        (None, Containment::Undecided)
    };
    if exhausted {
        notes.push(format!("width target not met at the precision cap of {} bits", s.prec));
    }
    Ok(AuditFinding {
        claim_id: claim_id.to_string(),
        inputs,
        recomputed: value.clone(),
        paper_value,
        containment: contain,
        digits_lost: digits_lost(parts, value),
        precision_bits_used: s.prec,
        notes,
    })
}

/// `-(psi(z1) + psi(-z1)) / z1^2`.
pub fn audit_eq_4_22(z1: &Rational, cfg: &AuditConfig) -> Result<AuditFinding> {
    let (s, ex) = escalate_section4(z1, cfg, |s| width_ok(&s.eq_4_22, cfg.section4_width))?;
    finding_22(z1, &s, ex)
}

/// `-2 lambda / z1 - 2 psi(-z1) / z1^2`.
pub fn audit_eq_4_23(z1: &Rational, cfg: &AuditConfig) -> Result<AuditFinding> {
    let (s, ex) = escalate_section4(z1, cfg, |s| width_ok(&s.eq_4_23, cfg.section4_width))?;
    finding_23(z1, &s, ex)
}

/// `2 lambda / z1 - 2 psi(z1) / z1^2`.
pub fn audit_eq_4_26(z1: &Rational, cfg: &AuditConfig) -> Result<AuditFinding> {
    let (s, ex) = escalate_section4(z1, cfg, |s| width_ok(&s.eq_4_26, cfg.section4_width))?;
    finding_26(z1, &s, ex)
}

fn finding_22(z1: &Rational, s: &Section4, ex: bool) -> Result<AuditFinding> {
    let mut f = finding(
        "EQ_4_22",
        z1,
        &s.eq_4_22,
        EQ_4_22_PRINTED,
        &[&s.pair.psi_plus, &s.pair.psi_minus],
        s,
        ex,
    )?;
    // parts are psi(+-z1)/z1^2; the ratio is what matters
    f.digits_lost = s.pair.digits_lost;
    let mean = (&s.eq_4_23 + &s.eq_4_26).mul_2si(-1);
    f.notes.push(format!(
        "mean of EQ_4_23 and EQ_4_26 {} this enclosure",
        if mean.overlaps(&s.eq_4_22) {
            "overlaps"
        } else {
            "does not overlap"
        }
    ));
    Ok(f)
}

fn finding_23(z1: &Rational, s: &Section4, ex: bool) -> Result<AuditFinding> {
    let [a, b] = &s.parts_23;
    finding("EQ_4_23", z1, &s.eq_4_23, EQ_4_23_PRINTED, &[a, b], s, ex)
}

fn finding_26(z1: &Rational, s: &Section4, ex: bool) -> Result<AuditFinding> {
    let [c, d] = &s.parts_26;
    finding("EQ_4_26", z1, &s.eq_4_26, EQ_4_26_PRINTED, &[c, d], s, ex)
}

/// All three bounds, the catalog arbiter, and the ordering verdicts.
pub fn audit_contradiction(z1: &Rational, catalog: &ZeroCatalog, cfg: &AuditConfig) -> Result<AuditReport> {
    let w = cfg.section4_width;
    let (s, ex) = escalate_section4(z1, cfg, |s| {
        width_ok(&s.eq_4_22, w)
            && width_ok(&s.eq_4_23, w)
            && width_ok(&s.eq_4_26, w)
            && s.eq_4_26.certified_cmp(&s.eq_4_23).is_some()
    })?;
    let f22 = finding_22(z1, &s, ex)?;
    let f23 = finding_23(z1, &s, ex)?;
    let f26 = finding_26(z1, &s, ex)?;
    let direct = direct_sum_finding(catalog, cfg)?;

    let verdicts = vec![
        Verdict::compare(&f26, Relation::Gt, &f23),
        Verdict::compare(&direct, Relation::Lt, &f23),
        Verdict::compare(&direct, Relation::Gt, &f26),
    ];
    let mut config = BTreeMap::new();
    config.insert("section4_start_prec".to_string(), cfg.section4_prec.to_string());
    config.insert("section4_width".to_string(), format!("{:e}", cfg.section4_width));
    config.insert("z1".to_string(), rational_text(z1));
    config.insert("zeros".to_string(), catalog.descriptor().to_string());
    config.insert("zeros_count".to_string(), catalog.len().to_string());
    config.insert("sum_prec".to_string(), cfg.sum_prec.to_string());
    let exhausted = if ex {
        vec!["EQ_4_22".into(), "EQ_4_23".into(), "EQ_4_26".into()]
    } else {
        vec![]
    };
    Ok(AuditReport {
        config,
        findings: vec![f22, f23, f26, direct],
        verdicts,
        exhausted,
    })
}

fn direct_sum_finding(catalog: &ZeroCatalog, cfg: &AuditConfig) -> Result<AuditFinding> {
    let env = validate_envelope(catalog, cfg.tail_slack)?;
    let sum = sum_lambda_power(catalog, 2, cfg.tail_slack, cfg.sum_prec)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("catalog".to_string(), catalog.descriptor().to_string());
    inputs.insert("terms".to_string(), sum.terms_used.to_string());
    inputs.insert("cutoff".to_string(), sum.cutoff_t.mid_string(Some(15)));
    inputs.insert("partial".to_string(), sum.partial.to_string());
    inputs.insert("tail_low".to_string(), sum.tail_low.mid_string(Some(10)));
    inputs.insert("tail_high".to_string(), sum.tail_high.mid_string(Some(10)));
    inputs.insert("tail_slack".to_string(), format!("{}", sum.slack));
    inputs.insert("table_accuracy".to_string(), catalog.table_accuracy().to_string());
    Ok(AuditFinding {
        claim_id: "DIRECT_SUM".to_string(),
        inputs,
        recomputed: sum.enclosure,
        paper_value: None,
        containment: Containment::Undecided,
        digits_lost: None,
        precision_bits_used: cfg.sum_prec,
        notes: vec![
            "sum of lambda_m^2 over the catalog plus certified tail".to_string(),
            format!(
                "counting envelope |N - M| <= {} log t held on [{}, {}], max ratio {:.4}",
                cfg.tail_slack, env.checked_from, env.checked_to, env.max_ratio
            ),
        ],
    })
}

pub(crate) fn rational_text(q: &Rational) -> String {
    // exact decimal when the denominator divides a power of ten
    let mut den = q.denom().clone();
    let twos = den.remove_factor_mut(&rug::Integer::from(2));
    let fives = den.remove_factor_mut(&rug::Integer::from(5));
    if den != 1 {
        return q.to_string();
    }
    let k = twos.max(fives);
    let scaled = Rational::from(q * rug::Integer::from(10).pow(k));
    let num = scaled.numer();
    let digits = num.clone().abs().to_string();
    let k = k as usize;
    let padded = format!("{digits:0>width$}", width = k + 1);
    let (int, frac) = padded.split_at(padded.len() - k);
    let body = if k == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    };
    if *num < 0 {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rendering() {
        assert_eq!(rational_text(&Rational::from((1, 10_000_000_000u64))), "0.0000000001");
        assert_eq!(rational_text(&Rational::from((9799, 10000))), "0.9799");
        assert_eq!(rational_text(&Rational::from((-3, 1))), "-3");
        assert_eq!(rational_text(&Rational::from((1, 3))), "1/3");
        assert_eq!(rational_text(&Rational::from((201, 40000))), "0.005025");
    }

    #[test]
    fn psi_pair_cancellation() {
        let z1 = super::super::parse_point("1e-10").unwrap();
        let req = EvalRequest::from_f64(1e-20, 256, 2048).unwrap();
        let p = audit_psi_pair(&z1, &req).unwrap();
        assert!(p.sum.is_negative());
        assert!(p.digits_lost.unwrap() > 12.0);
        // leading term: -(sum lambda_m^2) z^2
        assert!((p.sum.to_f64() / 1e-20 + 3.710e-5).abs() < 1e-8);
    }

    #[test]
    fn difference_tracks_reciprocal_constant() {
        let z1 = super::super::parse_point("1e-12").unwrap();
        let req = EvalRequest::from_f64(1e-10, 256, 2048).unwrap();
        let p = audit_psi_pair(&z1, &req).unwrap();
        let ratio = p.diff.div_i64(2).mul_ball(&RealBall::from_i64(1_000_000_000_000, 256));
        let lambda = reciprocal_constant(256).unwrap();
        let d = (&ratio - &lambda).abs().to_f64();
        assert!(d < 1e-20, "{d}");
    }

    #[test]
    fn identity_and_ordering_at_a_second_point() {
        let z1 = super::super::parse_point("1e-6").unwrap();
        let cfg = AuditConfig::default();
        let s = escalate_section4(&z1, &cfg, |_| true).unwrap().0;
        let mean = (&s.eq_4_23 + &s.eq_4_26).mul_2si(-1);
        assert!(mean.overlaps(&s.eq_4_22));
        assert_eq!(s.eq_4_26.certified_cmp(&s.eq_4_23), Some(std::cmp::Ordering::Less));
        let f = audit_eq_4_23(&z1, &cfg).unwrap();
        assert!(f.paper_value.is_none());
        assert_eq!(f.containment, Containment::Undecided);
    }

    #[test]
    fn domain() {
        let cfg = AuditConfig::default();
        assert!(audit_eq_4_22(&Rational::from((1, 2)), &cfg).is_err());
        assert!(audit_eq_4_22(&Rational::from(0), &cfg).is_err());
    }
}

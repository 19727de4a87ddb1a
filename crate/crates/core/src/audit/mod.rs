//! Recomputation of printed numerical claims with certified enclosures.
//!
//! Every claim becomes an [`AuditFinding`]; ordered comparisons between
//! findings become three-valued [`Verdict`]s.

pub(crate) mod report;
mod section4;
mod section5;
mod series;

pub use report::{render_text, to_json};
pub use section4::{
    audit_contradiction, audit_eq_4_22, audit_eq_4_23, audit_eq_4_26, audit_psi_pair, PsiPair, Section4,
    EQ_4_22_PRINTED, EQ_4_23_PRINTED, EQ_4_26_PRINTED, SECTION4_Z1,
};
pub use section5::{audit_corollary_5_2, EQ_5_16_PRINTED, SECTION5_Z};
pub use series::{series_consistency, SeriesPoint};

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::ball::{parse_decimal, Mag, RealBall, PREC_CAP};
use crate::error::Result;
use crate::zeros::ZeroCatalog;

/// Precision and tolerance settings shared by all audits.
#[derive(Clone, Debug)]
pub struct AuditConfig {
    /// Starting precision for the small-argument audits.
    pub section4_prec: u32,
    /// Starting precision for the moderate-argument audit.
    pub section5_prec: u32,
    pub prec_cap: u32,
    /// Required enclosure width of the small-argument findings.
    pub section4_width: f64,
    /// Required enclosure width of the moderate-argument finding.
    pub section5_width: f64,
    /// Working precision of the catalog sums.
    pub sum_prec: u32,
    pub tail_slack: f64,
    pub z1: String,
    pub z5: String,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            section4_prec: 512,
            section5_prec: 256,
            prec_cap: PREC_CAP,
            section4_width: 1e-20,
            section5_width: 1e-12,
            sum_prec: 256,
            tail_slack: crate::sums::DEFAULT_SLACK,
            z1: SECTION4_Z1.to_string(),
            z5: SECTION5_Z.to_string(),
        }
    }
}

impl AuditConfig {
    /// Same settings with every starting precision doubled.
    pub fn doubled(&self) -> AuditConfig {
        AuditConfig {
            section4_prec: (self.section4_prec * 2).min(self.prec_cap),
            section5_prec: (self.section5_prec * 2).min(self.prec_cap),
            sum_prec: (self.sum_prec * 2).min(self.prec_cap),
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Outside,
    Undecided,
}

impl Containment {
    pub fn as_str(self) -> &'static str {
        match self {
            Containment::Inside => "inside",
            Containment::Outside => "outside",
            Containment::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AuditFinding {
    pub claim_id: String,
    pub inputs: BTreeMap<String, String>,
    pub recomputed: RealBall,
    /// Printed decimal the recomputation is checked against.
    pub paper_value: Option<String>,
    pub containment: Containment,
    /// `log10(largest cancelling part / result)`.
    pub digits_lost: Option<f64>,
    pub precision_bits_used: u32,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Gt,
    Lt,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Gt => "gt",
            Relation::Lt => "lt",
        }
    }
}

/// `left <relation> right`, decided only when the enclosures are disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub left: String,
    pub right: String,
    pub relation: Relation,
    pub decided: bool,
    pub holds: Option<bool>,
}

impl Verdict {
    pub fn compare(left: &AuditFinding, relation: Relation, right: &AuditFinding) -> Verdict {
        let ord = left.recomputed.certified_cmp(&right.recomputed);
        let holds = ord.map(|o| match relation {
            Relation::Gt => o == Ordering::Greater,
            Relation::Lt => o == Ordering::Less,
        });
        Verdict {
            left: left.claim_id.clone(),
            right: right.claim_id.clone(),
            relation,
            decided: holds.is_some(),
            holds,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub config: BTreeMap<String, String>,
    pub findings: Vec<AuditFinding>,
    pub verdicts: Vec<Verdict>,
    /// Claim ids whose width target was not met at the precision cap.
    pub exhausted: Vec<String>,
}

impl AuditReport {
    pub fn finding(&self, claim_id: &str) -> Option<&AuditFinding> {
        self.findings.iter().find(|f| f.claim_id == claim_id)
    }

    pub fn merge(&mut self, other: AuditReport) {
        self.config.extend(other.config);
        self.findings.extend(other.findings);
        self.verdicts.extend(other.verdicts);
        self.exhausted.extend(other.exhausted);
    }
}

/// Run the small-argument audit, the moderate-argument audit, or both.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Section4,
    Section5,
    All,
}

pub fn run_audit(scope: Scope, catalog: Option<&ZeroCatalog>, cfg: &AuditConfig) -> Result<AuditReport> {
    let mut report = AuditReport::default();
    report.config.insert("prec_cap".into(), cfg.prec_cap.to_string());
    report.config.insert("tail_slack".into(), format!("{}", cfg.tail_slack));
    if matches!(scope, Scope::Section4 | Scope::All) {
        let cat = catalog
            .ok_or_else(|| crate::Error::InvalidArgument("the direct-sum arbiter needs a zero catalog".into()))?;
        report.merge(audit_contradiction(&parse_point(&cfg.z1)?, cat, cfg)?);
    }
    if matches!(scope, Scope::Section5 | Scope::All) {
        report.merge(section5::section5_report(&parse_point(&cfg.z5)?, cfg)?);
    }
    Ok(report)
}

/// Exact value of a decimal literal.
pub(crate) fn parse_point(text: &str) -> Result<Rational> {
    parse_decimal(text)
}

/// Containment of a printed decimal in `ball`.
///
/// Outside is only reported when the enclosure is narrower than one unit in
/// the last printed digit.
pub fn containment(ball: &RealBall, printed: &str) -> Result<Containment> {
    let value = parse_decimal(printed)?;
    if ball.contains_rational(&value) {
        return Ok(Containment::Inside);
    }
    let unit = last_digit_unit(printed)?;
    let width = ball.width();
    if width.as_float() > &unit {
        Ok(Containment::Undecided)
    } else {
        Ok(Containment::Outside)
    }
}

/// How the printed decimal compares with `ball` rounded to the printed
/// place, when that is decided.
pub fn rounding_note(ball: &RealBall, printed: &str) -> Result<Option<String>> {
    let value = parse_decimal(printed)?;
    let unit = last_digit_unit(printed)?;
    let prec = ball.prec() + 64;
    let off = (ball - &RealBall::from_rational(&value, prec)).div_ball(&RealBall::from_rational(&unit, prec));
    let half = Rational::from((1, 2));
    let a = off.abs();
    Ok(if a.upper() <= half {
        Some("printed digits equal the recomputation rounded to the same place".to_string())
    } else if a.lower() > half {
        Some(format!(
            "printed value is off by about {:.0} units in its last digit",
            off.to_f64().abs()
        ))
    } else {
        None
    })
}

/// Value of one unit in the last printed digit of a decimal literal.
pub fn last_digit_unit(printed: &str) -> Result<Rational> {
    let t = printed.trim();
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].trim().parse::<i32>().map_err(|_| bad(printed))?),
        None => (t, 0),
    };
    let frac_digits = mantissa.find('.').map(|i| mantissa.len() - i - 1).unwrap_or(0) as i32;
    let e = exp - frac_digits;
    let scale = Integer::from(10).pow(e.unsigned_abs());
    Ok(if e >= 0 {
        Rational::from(scale)
    } else {
        Rational::from((Integer::from(1), scale))
    })
}

fn bad(text: &str) -> crate::Error {
    crate::Error::InvalidArgument(format!("not a decimal literal: {text:?}"))
}

/// `log10(max |part| / |result|)` from midpoints.
pub fn digits_lost(parts: &[&RealBall], result: &RealBall) -> Option<f64> {
    let r = result.mid().to_f64().abs();
    if r == 0.0 || !r.is_finite() {
        return None;
    }
    let m = parts.iter().map(|p| p.mid().to_f64().abs()).fold(0.0, f64::max);
    if m == 0.0 {
        return Some(0.0);
    }
    // ratios can exceed the f64 exponent range only for absurd inputs
    Some((m.log10() - r.log10()).max(0.0))
}

/// True when `ball` has width at most `target`.
pub(crate) fn width_ok(ball: &RealBall, target: f64) -> bool {
    ball.is_finite() && ball.width() <= Mag::from_f64(target)
}

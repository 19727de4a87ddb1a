//! JSON and plain-text rendering of audit reports.
//!
//! Numbers are emitted as decimal strings and maps are key-sorted, so the
//! same report always renders to the same bytes.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use super::{AuditFinding, AuditReport, Verdict};
use crate::ball::RealBall;

fn mid_digits(b: &RealBall) -> usize {
    ((b.prec() as f64) * std::f64::consts::LOG10_2).ceil() as usize
}

pub(crate) fn ball_json(b: &RealBall) -> Value {
    json!({
        "mid": b.mid_string(Some(mid_digits(b))),
        "rad": b.rad().to_string(),
        "prec_bits": b.prec().to_string(),
    })
}

fn finding_json(f: &AuditFinding) -> Value {
    let inputs: Map<String, Value> = f
        .inputs
        .iter()
        .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
        .collect();
    json!({
        "claim_id": f.claim_id,
        "inputs": inputs,
        "recomputed": ball_json(&f.recomputed),
        "paper_value": f.paper_value,
        "containment": f.containment.as_str(),
        "digits_lost": f.digits_lost.map(|d| format!("{d:.2}")),
        "precision_bits_used": f.precision_bits_used.to_string(),
        "notes": f.notes,
    })
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "left": v.left,
        "right": v.right,
        "relation": v.relation.as_str(),
        "decided": v.decided,
        "holds": v.holds,
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(report: &AuditReport) -> String {
    let config: Map<String, Value> = report
        .config
        .iter()
        .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
        .collect();
    let v = json!({
        "config": config,
        "findings": report.findings.iter().map(finding_json).collect::<Vec<_>>(),
        "verdicts": report.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
        "exhausted": report.exhausted,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("report values are always serializable");
    s.push('\n');
    s
}

pub fn render_text(report: &AuditReport) -> String {
    let mut out = String::new();
    for (k, v) in &report.config {
        let _ = writeln!(out, "config {k} = {v}");
    }
    for f in &report.findings {
        let _ = writeln!(out, "\n{}", f.claim_id);
        for (k, v) in &f.inputs {
            let _ = writeln!(out, "  input {k} = {v}");
        }
        let _ = writeln!(
            out,
            "  recomputed {} +/- {} ({} bits)",
            f.recomputed.mid_string(Some(25)),
            f.recomputed.rad(),
            f.precision_bits_used
        );
        if let Some(p) = &f.paper_value {
            let _ = writeln!(out, "  printed    {p}");
        }
        let _ = writeln!(out, "  containment {}", f.containment.as_str());
        if let Some(d) = f.digits_lost {
            let _ = writeln!(out, "  digits lost {d:.2}");
        }
        for n in &f.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    if !report.verdicts.is_empty() {
        let _ = writeln!(out);
    }
    for v in &report.verdicts {
        let state = match v.holds {
            Some(true) => "holds",
            Some(false) => "fails",
            None => "undecided",
        };
        let _ = writeln!(out, "verdict {} {} {}: {}", v.left, v.relation.as_str(), v.right, state);
    }
    for id in &report.exhausted {
        let _ = writeln!(out, "exhausted: {id}");
    }
    out
}

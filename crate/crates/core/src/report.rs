//! Number formatting and the JSON report layout.
//!
//! Floats are rounded to 12 significant digits before they are written, so
//! text, CSV and JSON output agree and stay stable across platforms. JSON
//! objects are built as `serde_json::Value`, whose maps keep keys sorted.

use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::GroupData;
use crate::mixing::{rep_degree_sum, theorem_bound, TrialRecord, ZetaValue};

/// Round to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Shortest decimal for `x` rounded to 12 significant digits; scientific
/// notation outside [1e-4, 1e15).
pub fn sig12(x: f64) -> String {
    let r = round12(x);
    if r == 0.0 {
        "0".to_string()
    } else if r.is_finite() && (r.abs() < 1e-4 || r.abs() >= 1e15) {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

/// One named identity or inequality outcome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub lhs: f64,
    pub rhs: f64,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, pass: bool, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.into(),
            pass,
            lhs,
            rhs,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "pass": self.pass,
            "lhs": round12(self.lhs),
            "rhs": round12(self.rhs),
        })
    }
}

pub fn trial_json(t: &TrialRecord) -> Value {
    json!({
        "seed": t.seed,
        "sizes": t.sizes,
        "count": t.count,
        "expected": round12(t.expected),
        "normalized_discrepancy": round12(t.normalized_discrepancy),
    })
}

/// The per-group report object.
pub fn group_json(
    data: &GroupData,
    zeta: &[ZetaValue],
    trials: &[TrialRecord],
    checks: &[CheckOutcome],
) -> Value {
    let g = &data.group;
    let c = &data.classes;
    let classes: Vec<Value> = (0..c.class_count())
        .map(|i| json!({"rep": g.format(c.representative(i)), "size": c.size(i)}))
        .collect();
    let quasirandomness = data.table.quasirandomness_degree().unwrap_or(0);
    json!({
        "group": g.spec().to_string(),
        "order": g.order(),
        "classes": classes,
        "degrees": data.table.degrees(),
        "quasirandomness": quasirandomness,
        "rep_degree_sum": round12(rep_degree_sum(&data.table)),
        "zeta": zeta.iter().map(|z| json!({"s": round12(z.s), "value": round12(z.value)})).collect::<Vec<_>>(),
        "theorem_bound": round12(theorem_bound(&data.table)),
        "trials": trials.iter().map(trial_json).collect::<Vec<_>>(),
        "checks": checks.iter().map(CheckOutcome::to_json).collect::<Vec<_>>(),
    })
}

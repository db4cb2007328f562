//! JSON form of a [`VerifyReport`].

use besselzeta_core::verifier::{Check, Mismatch, VerifyReport};
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Serialize)]
struct MismatchJson<'a> {
    t_power: u64,
    lhs: &'a str,
    rhs: &'a str,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    pass: bool,
    first_mismatch: Option<MismatchJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    case: &'static str,
    mode: &'static str,
    order: usize,
    seed: u64,
    params: Map<String, Value>,
    checks: Vec<CheckJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    convention: Option<&'static str>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    conventions: Map<String, Value>,
}

fn mismatch(m: &Mismatch) -> MismatchJson<'_> {
    MismatchJson {
        t_power: m.t_power,
        lhs: &m.lhs,
        rhs: &m.rhs,
    }
}

fn check(c: &Check) -> CheckJson<'_> {
    CheckJson {
        name: &c.name,
        pass: c.pass,
        first_mismatch: c.first_mismatch.as_ref().map(mismatch),
        error: c.error.as_deref(),
    }
}

/// Report as a JSON value with keys in a fixed order, so equal reports
/// serialize to identical bytes.
pub fn report_json(r: &VerifyReport) -> Value {
    let params = r
        .params
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let conventions = r
        .conventions
        .iter()
        .map(|(c, ok)| (c.name().to_string(), Value::Bool(*ok)))
        .collect();
    let json = ReportJson {
        case: r.case.name(),
        mode: r.mode.name(),
        order: r.order,
        seed: r.seed,
        params,
        checks: r.checks.iter().map(check).collect(),
        convention: r.convention.map(|c| c.name()),
        conventions,
    };
    serde_json::to_value(json).expect("report is valid JSON")
}

//! Fixed-precision text output shared by every command.

use std::fmt::Write as _;

use num_complex::Complex64;
use schur_hadamard::{MonicPolynomial, StabilityStatus, StabilityVerdict, SweepRecord};
use serde_json::{json, Number, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest text for `round_sig(x)`; plain decimal in `[1e-4, 1e15)`,
/// exponent notation otherwise.
pub fn number(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        return "0".to_string();
    }
    if !r.is_finite() {
        return if r.is_nan() {
            "nan".into()
        } else if r > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let a = r.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Rounds every floating-point number in a JSON tree to 12 significant
/// digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

pub fn to_json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_json(v)).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_list(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().copied().map(complex).collect())
}

pub fn polynomial(f: &MonicPolynomial) -> Value {
    serde_json::to_value(f).expect("polynomials serialize")
}

pub fn verdict(v: &StabilityVerdict) -> Value {
    json!({
        "stable": v.status == StabilityStatus::Stable,
        "status": v.status.as_str(),
        "max_modulus": v.max_modulus,
        "margin": v.margin,
    })
}

pub fn csv_header(degree: usize) -> String {
    let mut h = String::from("p,stable,max_modulus");
    for i in 1..=degree {
        let _ = write!(h, ",root_re_{i},root_im_{i}");
    }
    h.push('\n');
    h
}

pub fn csv(records: &[SweepRecord], degree: usize) -> String {
    let mut out = csv_header(degree);
    for r in records {
        let _ = write!(
            out,
            "{},{},{}",
            number(r.p),
            r.status == StabilityStatus::Stable,
            number(r.max_modulus)
        );
        for z in &r.roots {
            let _ = write!(out, ",{},{}", number(z.re), number(z.im));
        }
        out.push('\n');
    }
    out
}

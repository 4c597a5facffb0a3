//! Deterministic JSON rendering.

use serde::Serialize;
use serde_json::{Number, Value};

use crate::error::Result;

/// Significant digits kept for every float in a report.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Round `x` to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn canonicalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => match n.as_f64().map(round_sig).and_then(Number::from_f64) {
            Some(r) => Value::Number(r),
            None => Value::Null,
        },
        Value::Array(a) => Value::Array(a.into_iter().map(canonicalize).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, canonicalize(v))).collect()),
        other => other,
    }
}

/// Sorted keys and fixed float precision.
pub fn to_canonical_value<T: Serialize>(value: &T) -> Result<Value> {
    Ok(canonicalize(serde_json::to_value(value)?))
}

/// Pretty canonical JSON document with a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&to_canonical_value(value)?)?;
    s.push('\n');
    Ok(s)
}

/// Single-line canonical JSON, for JSON-lines output.
pub fn to_canonical_line<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(&to_canonical_value(value)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig(1.234567890123456), 1.23456789012);
        assert_eq!(round_sig(-2.0e-300), -2.0e-300);
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert!(round_sig(f64::NAN).is_nan());
    }

    #[test]
    fn non_finite_becomes_null() {
        let s = to_canonical_line(&(1.0f64, f64::INFINITY)).unwrap();
        assert_eq!(s, "[1.0,null]");
    }
}

//! Number formatting shared by the human, CSV and JSON writers.

use num_bigint::BigInt;
use serde_json::{json, Value};

use l2inv::Rational;

/// Nine significant digits, trailing zeros trimmed.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&mag) {
        return format!("{x:.8e}");
    }
    let decimals = (8 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn rational_json(q: &Rational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

pub fn bigint_json(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

/// `a/b`, or `a` for integers.
pub fn rational_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Doubles quotes and wraps the field when CSV needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(6f64.ln()), "1.79175947");
        assert_eq!(sig9(0.5 * 3f64.ln()), "0.549306144");
        assert_eq!(sig9(1.0), "1");
        assert_eq!(sig9(-0.25), "-0.25");
        assert_eq!(sig9(123456789012.0), "123456789012");
        assert_eq!(sig9(1.5e-9), "1.50000000e-9");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a, \"b\""), "\"a, \"\"b\"\"\"");
    }
}

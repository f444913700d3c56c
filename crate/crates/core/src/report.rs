//! Verification reports and their canonical JSON rendering.
//!
//! Every check records both sides, the residual and its tolerance; `pass`
//! is derived, never set by hand. JSON output uses sorted keys and renders
//! floats with 17 significant digits so that parsing and re-rendering a
//! report reproduces it byte for byte.

use std::fmt;
use std::io;

use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

use crate::exact::{format_rational, to_f64, BigRational};

/// One side of a check.
#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Exact(BigRational),
    Float(f64),
    Unreachable,
}

impl Quantity {
    pub fn as_f64(&self) -> f64 {
        match self {
            Quantity::Exact(r) => to_f64(r),
            Quantity::Float(v) => *v,
            Quantity::Unreachable => f64::INFINITY,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Quantity::Exact(r) => Value::String(format_rational(r)),
            Quantity::Float(v) => float_value(*v),
            Quantity::Unreachable => Value::String("unreachable".into()),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(r) => write!(f, "{}", format_rational(r)),
            Quantity::Float(v) => write!(f, "{}", format_float(*v)),
            Quantity::Unreachable => f.write_str("unreachable"),
        }
    }
}

impl From<BigRational> for Quantity {
    fn from(r: BigRational) -> Self {
        Quantity::Exact(r)
    }
}

impl From<f64> for Quantity {
    fn from(v: f64) -> Self {
        Quantity::Float(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        lhs: Quantity,
        rhs: Quantity,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }

    /// Rational equality; residual is `|lhs - rhs|`, tolerance zero.
    pub fn exact(name: impl Into<String>, lhs: BigRational, rhs: BigRational) -> Self {
        let residual = to_f64(&(&lhs - &rhs)).abs();
        // a nonzero difference too small for f64 must still fail
        let residual = if lhs != rhs && residual == 0.0 {
            f64::MIN_POSITIVE
        } else {
            residual
        };
        Self::new(name, lhs.into(), rhs.into(), residual, 0.0)
    }

    /// Relative agreement `|lhs - rhs| / max(|rhs|, 1e-300)`.
    pub fn relative(name: impl Into<String>, lhs: Quantity, rhs: Quantity, tol: f64) -> Self {
        let (a, b) = (lhs.as_f64(), rhs.as_f64());
        Self::new(name, lhs, rhs, relative_residual(a, b), tol)
    }

    /// Absolute agreement `|lhs - rhs|`.
    pub fn absolute(name: impl Into<String>, lhs: Quantity, rhs: Quantity, tol: f64) -> Self {
        let residual = abs_residual(lhs.as_f64(), rhs.as_f64());
        Self::new(name, lhs, rhs, residual, tol)
    }

    /// Both sides must agree on a categorical outcome (e.g. unreachability).
    pub fn agree(name: impl Into<String>, lhs: Quantity, rhs: Quantity, same: bool) -> Self {
        let residual = if same { 0.0 } else { f64::INFINITY };
        Self::new(name, lhs, rhs, residual, 0.0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "residual": float_value(self.residual),
            "tolerance": float_value(self.tolerance),
            "pass": self.pass,
        })
    }
}

pub fn relative_residual(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let r = (a - b).abs() / b.abs().max(1e-300);
    if r.is_nan() {
        f64::INFINITY
    } else {
        r
    }
}

fn abs_residual(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        let r = (a - b).abs();
        if r.is_nan() {
            f64::INFINITY
        } else {
            r
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    /// Largest residual among all checks; zero for an empty report.
    pub fn worst_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn checks_json(&self) -> Value {
        Value::Array(self.checks.iter().map(Check::to_json).collect())
    }
}

/// Top-level document: `{"graph": ..., "results": ..., "checks": [...]}`.
pub fn document(graph: Value, results: Value, report: &VerificationReport) -> Value {
    let mut m = Map::new();
    m.insert("graph".into(), graph);
    m.insert("results".into(), results);
    m.insert("checks".into(), report.checks_json());
    Value::Object(m)
}

/// Graph descriptor `{"n": n, "jumps": [...]}`.
pub fn graph_json(n: usize, jumps: &[usize]) -> Value {
    json!({ "n": n, "jumps": jumps })
}

/// A float as a JSON number, or `null` when it is not finite.
pub fn float_value(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

/// 17 significant digits in scientific notation, e.g. `4.1666666666666669e-1`.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

struct CanonicalFormatter;

impl Formatter for CanonicalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(format_float(value).as_bytes())
    }
}

/// Compact JSON with sorted keys, fixed float formatting and a trailing newline.
pub fn to_canonical_json(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    serde::Serialize::serialize(value, &mut ser).expect("serializing a Value cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn pass_follows_tolerance() {
        let c = Check::relative("a", 1.0.into(), (1.0 + 1e-12).into(), 1e-9);
        assert!(c.pass);
        let c = Check::relative("b", 1.0.into(), 1.1.into(), 1e-9);
        assert!(!c.pass);
        let c = Check::exact("c", rational(1, 3), rational(2, 6));
        assert!(c.pass && c.residual == 0.0);
        let c = Check::exact("d", rational(1, 3), rational(1, 4));
        assert!(!c.pass);
    }

    #[test]
    fn report_summary() {
        let mut r = VerificationReport::new();
        assert_eq!(r.worst_residual(), 0.0);
        r.push(Check::absolute("x", 5.0.into(), 5.0.into(), 0.0));
        r.push(Check::absolute("y", 5.0.into(), 5.5.into(), 0.1));
        assert_eq!(r.len(), 2);
        assert_eq!(r.passed(), 1);
        assert!(!r.all_pass());
        assert_eq!(r.worst_residual(), 0.5);
        assert_eq!(r.failures().next().unwrap().name, "y");
    }

    #[test]
    fn canonical_json_round_trips() {
        let mut r = VerificationReport::new();
        r.push(Check::relative(
            "spectral",
            (5.0 / 12.0).into(),
            rational(5, 12).into(),
            1e-9,
        ));
        r.push(Check::agree(
            "reach",
            Quantity::Unreachable,
            Quantity::Unreachable,
            true,
        ));
        let doc = document(
            graph_json(6, &[1, 2]),
            json!({"kirchhoff": "13/2", "x": 1.5}),
            &r,
        );
        let text = to_canonical_json(&doc);
        assert!(text.starts_with("{\"checks\":["));
        assert!(text.contains("\"x\":1.5000000000000000e0"));
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(to_canonical_json(&reparsed), text);
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
        assert_eq!(format_float(5.0 / 12.0), "4.1666666666666669e-1");
        assert_eq!(format_float(f64::INFINITY), "inf");
    }
}

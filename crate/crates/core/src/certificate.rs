//! Machine-readable records of a verification run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named check. A failing check always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// What was computed.
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub task: String,
    pub version: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub checks: Vec<Check>,
    /// Exact values worth keeping, serialized in their canonical text forms.
    pub witnesses: BTreeMap<String, Value>,
    /// The identities and tables this task exercises.
    pub anchors: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub suites: Vec<Certificate>,
    pub timing_ms: u64,
}

impl Certificate {
    pub fn new(task: impl Into<String>) -> Self {
        Certificate {
            task: task.into(),
            version: VERSION.to_string(),
            params: BTreeMap::new(),
            status: Status::Pass,
            checks: Vec::new(),
            witnesses: BTreeMap::new(),
            anchors: Vec::new(),
            suites: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params.insert(key.to_string(), to_value(value));
        self
    }

    pub fn anchor(&mut self, a: &str) -> &mut Self {
        self.anchors.push(a.to_string());
        self
    }

    pub fn witness(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.witnesses.insert(key.to_string(), to_value(value));
        self
    }

    /// Records a check; a failure without an explicit witness uses the value itself.
    pub fn check(&mut self, name: &str, passed: bool, value: impl Serialize) -> &mut Self {
        let value = to_value(value);
        let witness = (!passed).then(|| value.clone());
        self.push(Check { name: name.to_string(), passed, value, witness })
    }

    /// `expected == got`, with both recorded on failure.
    pub fn check_eq<T: Serialize + PartialEq>(&mut self, name: &str, expected: T, got: T) -> &mut Self {
        let passed = expected == got;
        let value = to_value(&got);
        let witness = (!passed).then(|| serde_json::json!({ "expected": to_value(&expected), "got": value.clone() }));
        self.push(Check { name: name.to_string(), passed, value, witness })
    }

    /// Records the outcome of a computation that may fail; the error text is the witness.
    pub fn check_result<T: Serialize>(&mut self, name: &str, r: &crate::Result<T>) -> &mut Self {
        match r {
            Ok(v) => self.check(name, true, v),
            Err(e) => {
                let w = Value::String(e.to_string());
                self.push(Check { name: name.to_string(), passed: false, value: Value::Null, witness: Some(w) })
            }
        }
    }

    fn push(&mut self, c: Check) -> &mut Self {
        if !c.passed {
            self.status = Status::Fail;
        }
        self.checks.push(c);
        self
    }

    pub fn add_suite(&mut self, c: Certificate) -> &mut Self {
        if c.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.suites.push(c);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// JSON with every timing field zeroed, for comparing runs.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.clear_timing();
        serde_json::to_string_pretty(&c).expect("certificate serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }

    fn clear_timing(&mut self) {
        self.timing_ms = 0;
        for s in &mut self.suites {
            s.clear_timing();
        }
    }

    /// One line per check, then one per sub-suite.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        self.write_summary(&mut out, 0);
        out
    }

    fn write_summary(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{pad}[{tag}] {} ({} ms)\n", self.task, self.timing_ms));
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("{pad}  {tag} {}: {}\n", c.name, short(&c.value)));
            if let Some(w) = &c.witness {
                out.push_str(&format!("{pad}       witness: {}\n", short(w)));
            }
        }
        for s in &self.suites {
            s.write_summary(out, depth + 1);
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

/// Exact values are shown by their `text` field.
fn readable(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(readable).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => match m.get("text") {
            Some(Value::String(t)) => t.clone(),
            _ => v.to_string(),
        },
        other => other.to_string(),
    }
}

fn short(v: &Value) -> String {
    let s = readable(v);
    if s.chars().count() > 160 {
        let head: String = s.chars().take(157).collect();
        format!("{head}...")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_checks_carry_witnesses() {
        let mut c = Certificate::new("t");
        c.check("a", true, 1).check_eq("b", 2, 3);
        assert_eq!(c.status, Status::Fail);
        assert!(c.checks[1].witness.is_some());
        assert!(c.checks[0].witness.is_none());
        let r: crate::Result<i64> = Err(crate::Error::Check("boom at u^5".into()));
        c.check_result("c", &r);
        let w = c.checks[2].witness.as_ref().and_then(|w| w.as_str()).unwrap();
        assert!(w.contains("boom at u^5"));
    }

    #[test]
    fn timing_is_excluded_from_canonical_form() {
        let mut a = Certificate::new("t");
        a.param("order", 40).check("x", true, "1/2");
        let mut b = a.clone();
        a.timing_ms = 5;
        b.timing_ms = 17;
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(a.canonical_json(), b.canonical_json());
        assert_eq!(Certificate::from_json(&a.to_json()).unwrap(), a);
    }
}

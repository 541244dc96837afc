//! Named numeric checks and the run report emitted by every command.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// Passes when `value < threshold`.
    #[serde(rename = "<")]
    Below,
    /// Passes when `value == threshold` (counts and exact table entries).
    #[serde(rename = "==")]
    Equals,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    pub fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold,
            relation: Relation::Below,
            // NaN residuals fail.
            pass: value < threshold,
        }
    }

    pub fn equals(name: impl Into<String>, value: f64, expected: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold: expected,
            relation: Relation::Equals,
            pass: value == expected,
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self::equals(name, if ok { 1.0 } else { 0.0 }, 1.0)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Below => "<",
            Relation::Equals => "==",
        };
        write!(
            f,
            "{:<4} {:<48} {:>12.4e} {} {:.4e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            rel,
            self.threshold
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub artifacts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Free-form text output (tables, listings) shown in text mode.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<String>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), ..Default::default() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        for (k, v) in &self.parameters {
            writeln!(f, "  {k} = {v}")?;
        }
        if let Some(seed) = self.seed {
            writeln!(f, "  seed = {seed}")?;
        }
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for a in &self.artifacts {
            writeln!(f, "wrote {a}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_fails_below() {
        assert!(!Check::below("x", f64::NAN, 1.0).pass);
        assert!(Check::below("x", 0.5, 1.0).pass);
        assert!(!Check::below("x", 1.0, 1.0).pass);
    }

    #[test]
    fn report_passes_only_if_every_check_passes() {
        let mut r = RunReport::new("t");
        r.push(Check::equals("count", 15.0, 15.0));
        assert!(r.all_pass());
        r.push(Check::flag("bad", false));
        assert!(!r.all_pass());
        let json = serde_json::to_string(&r).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}

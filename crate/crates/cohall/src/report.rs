//! Line-oriented verification reports: one identity per line, `PASS` or
//! `FAIL` with a witness dump on failure.

use std::fmt;

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { lines: Vec::new() }
    }

    pub fn push_pass(&mut self, name: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), pass: true, witness: None });
    }

    pub fn push_fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), pass: false, witness: Some(witness.into()) });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.push_pass(name);
        } else {
            self.push_fail(name, witness());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.lines.extend(other.lines);
    }

    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.pass).count()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            if line.pass {
                writeln!(f, "PASS {}", line.name)?;
            } else {
                writeln!(f, "FAIL {} :: {}", line.name, line.witness.as_deref().unwrap_or(""))?;
            }
        }
        Ok(())
    }
}

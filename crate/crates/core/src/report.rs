//! Line-oriented verification reports: `PASS|FAIL check=<id> module=<name> ...`.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub status: Status,
    pub check: String,
    pub module: String,
    pub fields: Vec<(String, String)>,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn field(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn witness(&self) -> Option<&str> {
        self.field("witness")
    }
}

fn quote(value: &str) -> String {
    if !value.is_empty() && !value.chars().any(|c| c.is_whitespace() || c == '"') {
        return value.to_string();
    }
    format!("\"{}\"", value.replace('\\', "\\\\").replace('"', "\\\""))
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "{status} check={} module={}", self.check, self.module)?;
        for (k, v) in &self.fields {
            write!(f, " {k}={}", quote(v))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<CheckLine>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, line: CheckLine) {
        self.lines.push(line);
    }

    pub fn pass(&mut self, check: &str, module: &str, fields: &[(&str, String)]) {
        self.push(CheckLine {
            status: Status::Pass,
            check: check.into(),
            module: module.into(),
            fields: fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        });
    }

    pub fn fail(&mut self, check: &str, module: &str, witness: impl Into<String>) {
        self.push(CheckLine {
            status: Status::Fail,
            check: check.into(),
            module: module.into(),
            fields: vec![("witness".into(), witness.into())],
        });
    }

    /// Records a tally: PASS with the sample count when no witness was
    /// found, FAIL with the first witness otherwise.
    pub fn tally(&mut self, check: &str, module: &str, tally: &Tally) {
        match &tally.witness {
            None => self.pass(
                check,
                module,
                &[("samples", tally.samples.to_string()), ("skipped", tally.skipped.to_string())],
            ),
            Some(w) => self.fail(check, module, w.clone()),
        }
    }

    /// Appends `.suffix` to every check id.
    pub fn suffixed(mut self, suffix: &str) -> Report {
        for line in &mut self.lines {
            line.check = format!("{}.{suffix}", line.check);
        }
        self
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn lines(&self) -> &[CheckLine] {
        &self.lines
    }

    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.passed())
    }

    pub fn find(&self, check: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.check == check)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Running count for one check: samples examined, samples skipped because a
/// value left the window, and the first failure seen.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub samples: usize,
    pub skipped: usize,
    pub witness: Option<String>,
}

impl Tally {
    pub fn new() -> Self {
        Tally::default()
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_are_machine_readable() {
        let mut r = Report::new();
        r.pass("a.b", "poset_core", &[("samples", "3".into())]);
        r.fail("c", "render", "x y");
        assert_eq!(
            r.to_string(),
            "PASS check=a.b module=poset_core samples=3\nFAIL check=c module=render witness=\"x y\"\n"
        );
        assert!(!r.all_pass());
        assert_eq!(r.find("c").unwrap().witness(), Some("x y"));
    }

    #[test]
    fn tally_keeps_first_witness() {
        let mut t = Tally::new();
        t.check(true, || "never".into());
        t.check(false, || "first".into());
        t.check(false, || "second".into());
        assert_eq!(t.samples, 3);
        assert_eq!(t.witness.as_deref(), Some("first"));
    }
}

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Vacuous,
}

impl Status {
    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Vacuous => "vacuous",
        };
        f.write_str(s)
    }
}

/// A named check with its outcome, evidence and sub-checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
}

impl Report {
    pub fn leaf(check: impl Into<String>, status: Status, witnesses: Vec<String>) -> Report {
        Report { check: check.into(), status, witnesses, children: vec![] }
    }

    /// Status is the worst child: fail, then inconclusive, then pass; vacuous only if all are.
    pub fn group(check: impl Into<String>, children: Vec<Report>) -> Report {
        let has = |s| children.iter().any(|c: &Report| c.status == s);
        let status = if has(Status::Fail) {
            Status::Fail
        } else if has(Status::Inconclusive) {
            Status::Inconclusive
        } else if has(Status::Pass) {
            Status::Pass
        } else {
            Status::Vacuous
        };
        Report { check: check.into(), status, witnesses: vec![], children }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Report {
        self.witnesses.push(w.into());
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Vacuous)
    }

    /// Depth-first search by check name.
    pub fn find(&self, check: &str) -> Option<&Report> {
        if self.check == check {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(check))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    fn render(&self, depth: usize, out: &mut String) {
        out.push_str(&format!("{}[{}] {}\n", "  ".repeat(depth), self.status, self.check));
        for w in &self.witnesses {
            out.push_str(&format!("{}  - {}\n", "  ".repeat(depth), w));
        }
        for c in &self.children {
            c.render(depth + 1, out);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(0, &mut s);
        f.write_str(&s)
    }
}

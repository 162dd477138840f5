//! Verdict reports, rendered as JSON or plain text.

use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Unknown,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Unknown => "unknown",
            Verdict::Fail => "fail",
        }
    }

    /// 0 pass, 1 fail, 2 unknown.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Unknown => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Check {
        Check { name: name.into(), verdict, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Section {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Section {
        Section { name: name.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// The worst verdict, `Fail` over `Unknown` over `Pass`.
    pub fn verdict(&self) -> Verdict {
        self.checks.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Pass)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), sections: Vec::new() }
    }

    pub fn verdict(&self) -> Verdict {
        self.sections.iter().map(Section::verdict).max().unwrap_or(Verdict::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        for s in &self.sections {
            let _ = writeln!(out, "\n[{}] {}", s.verdict().as_str(), s.name);
            for c in &s.checks {
                let _ = write!(out, "  {:<7} {}", c.verdict.as_str(), c.name);
                if !c.detail.is_empty() {
                    let _ = write!(out, ": {}", c.detail);
                }
                out.push('\n');
            }
        }
        let _ = writeln!(out, "\noverall: {}", self.verdict().as_str());
        out
    }
}

/// Counts of decided-equal, distinguished and undecided trials for one law.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

impl Tally {
    pub fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Unknown => self.unknown += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.unknown
    }

    pub fn verdict(&self) -> Verdict {
        if self.fail > 0 {
            Verdict::Fail
        } else if self.unknown > 0 {
            Verdict::Unknown
        } else {
            Verdict::Pass
        }
    }

    pub fn check(&self, name: impl Into<String>) -> Check {
        let detail = format!("{}/{} pass, {} fail, {} unknown", self.pass, self.total(), self.fail, self.unknown);
        Check::new(name, self.verdict(), detail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_verdict_wins() {
        let mut s = Section::new("s");
        s.push(Check::new("a", Verdict::Pass, ""));
        s.push(Check::new("b", Verdict::Unknown, "budget"));
        assert_eq!(s.verdict(), Verdict::Unknown);
        s.push(Check::new("c", Verdict::Fail, ""));
        let r = Report { title: "t".into(), sections: vec![s] };
        assert_eq!(r.verdict().exit_code(), 1);
        assert!(r.to_text().contains("  unknown b: budget\n"));
        assert!(r.to_json().contains("\"verdict\": \"fail\""));
    }
}

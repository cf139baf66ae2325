//! Check items, per-suite reports and their text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::scalar::{ScalarExpr, ZeroVerdict};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Labeled residual components; an identity holds when all of them vanish.
pub type Residuals = Vec<(String, ScalarExpr)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    NumericPass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::NumericPass => "numeric-pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }

    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualComponent {
    pub index: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub id: String,
    /// The identity or quantity checked, as a formula.
    pub reference: String,
    pub status: Status,
    pub conflicts_with_paper: bool,
    pub residual_components: Vec<ResidualComponent>,
    pub notes: Vec<String>,
}

impl CheckItem {
    /// Status from zero-testing every residual component.
    pub fn from_residuals(id: impl Into<String>, reference: impl Into<String>, residuals: Residuals) -> Self {
        let mut status = Status::Pass;
        let mut components = Vec::new();
        for (label, value) in residuals {
            match value.zero_test() {
                ZeroVerdict::Symbolic(true) => {}
                ZeroVerdict::Numeric(true) => {
                    if status == Status::Pass {
                        status = Status::NumericPass;
                    }
                }
                ZeroVerdict::Symbolic(false) | ZeroVerdict::Numeric(false) => {
                    status = Status::Fail;
                    components.push(ResidualComponent {
                        index: label,
                        value: value.to_string(),
                    });
                }
            }
        }
        CheckItem {
            id: id.into(),
            reference: reference.into(),
            status,
            conflicts_with_paper: false,
            residual_components: components,
            notes: Vec::new(),
        }
    }

    pub fn with_status(id: impl Into<String>, reference: impl Into<String>, status: Status) -> Self {
        CheckItem {
            id: id.into(),
            reference: reference.into(),
            status,
            conflicts_with_paper: false,
            residual_components: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn not_applicable(id: impl Into<String>, reference: impl Into<String>, why: impl Into<String>) -> Self {
        CheckItem::with_status(id, reference, Status::NotApplicable).note(why)
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn fail_with(mut self, note: impl Into<String>) -> Self {
        self.status = Status::Fail;
        self.notes.push(note.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub numeric_pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub conflicts_with_paper: usize,
}

impl Summary {
    pub fn of<'a>(items: impl IntoIterator<Item = &'a CheckItem>) -> Self {
        let mut s = Summary::default();
        for it in items {
            match it.status {
                Status::Pass => s.pass += 1,
                Status::NumericPass => s.numeric_pass += 1,
                Status::Fail => s.fail += 1,
                Status::NotApplicable => s.not_applicable += 1,
            }
            s.conflicts_with_paper += it.conflicts_with_paper as usize;
        }
        s
    }

    pub fn absorb(&mut self, other: &Summary) {
        self.pass += other.pass;
        self.numeric_pass += other.numeric_pass;
        self.fail += other.fail;
        self.not_applicable += other.not_applicable;
        self.conflicts_with_paper += other.conflicts_with_paper;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub engine_version: String,
    pub items: Vec<CheckItem>,
    pub summary: Summary,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, items: Vec<CheckItem>) -> Self {
        let summary = Summary::of(&items);
        CheckReport {
            suite: suite.into(),
            engine_version: ENGINE_VERSION.to_string(),
            items,
            summary,
        }
    }

    pub fn item(&self, id: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| !i.status.is_failure())
    }
}

/// Reports of a whole run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub engine_version: String,
    pub manifest: String,
    pub suites: Vec<CheckReport>,
    pub summary: Summary,
    pub exit_code: i32,
}

impl RunReport {
    pub fn new(manifest: impl Into<String>, suites: Vec<CheckReport>) -> Self {
        let mut summary = Summary::default();
        for s in &suites {
            summary.absorb(&s.summary);
        }
        let exit_code = if summary.fail > 0 { 2 } else { 0 };
        RunReport {
            engine_version: ENGINE_VERSION.to_string(),
            manifest: manifest.into(),
            suites,
            summary,
            exit_code,
        }
    }

    pub fn suite(&self, name: &str) -> Option<&CheckReport> {
        self.suites.iter().find(|s| s.suite == name)
    }

    pub fn items(&self) -> impl Iterator<Item = &CheckItem> {
        self.suites.iter().flat_map(|s| s.items.iter())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "tsgeom {} : {}", self.engine_version, self.manifest);
        for s in &self.suites {
            let _ = writeln!(out, "\n[{}]", s.suite);
            for it in &s.items {
                let flag = if it.conflicts_with_paper { "  (conflicts with published value)" } else { "" };
                let _ = writeln!(out, "  {:<14} {}  {}{}", it.status.as_str(), it.id, it.reference, flag);
                for rc in &it.residual_components {
                    let _ = writeln!(out, "      residual {} = {}", rc.index, rc.value);
                }
                for n in &it.notes {
                    let _ = writeln!(out, "      note: {n}");
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "\nsummary: {} pass, {} numeric-pass, {} fail, {} not-applicable, {} conflicts with published values",
            s.pass, s.numeric_pass, s.fail, s.not_applicable, s.conflicts_with_paper
        );
        out
    }
}

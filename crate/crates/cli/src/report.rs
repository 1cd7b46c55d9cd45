//! The report every command produces, as JSON or as text.
//!
//! The JSON form is deterministic: it carries no timings, absolute paths or
//! cache state, so two runs on the same input print the same bytes.

use std::fmt::Write as _;

use serde::Serialize;
use trackhom::cohomology::{LesReport, NodeVerdict, SesReport};
use trackhom::resolution::GateReport;
use trackhom::zmod::FinAbGroup;
use trackhom::ValidationReport;

use crate::error::CliError;
use crate::fixture::{Fixture, ModuleKind};

pub const REPORT_SCHEMA: &str = "trackhom.report/1";

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: CommandEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<FixtureSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub validation: Vec<ValidationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<GateSummary>,
    /// Generator counts of the resolution levels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cohomology: Vec<TheoryTable>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ses: Vec<SesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub les: Option<LesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nerve: Option<NerveSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRow>,
    pub outcome: Outcome,
}

#[derive(Debug, Serialize)]
pub struct CommandEcho {
    pub name: String,
    /// File name only, so reports do not depend on the working directory.
    pub fixture: String,
    pub max_degree: usize,
    pub theory: String,
    pub max_generators: u64,
}

#[derive(Debug, Serialize)]
pub struct FixtureSummary {
    pub name: String,
    pub description: String,
    pub sha256: String,
    pub objects: usize,
    pub one_cells: usize,
    pub two_cells: usize,
    pub module: String,
}

impl FixtureSummary {
    pub fn of(f: &Fixture) -> Self {
        let module = match &f.kind {
            ModuleKind::Constant(g) => format!("constant {g}"),
            ModuleKind::Cyclic => "cyclic".into(),
            ModuleKind::Explicit => "explicit".into(),
        };
        FixtureSummary {
            name: f.name.clone(),
            description: f.description.clone(),
            sha256: f.sha256.clone(),
            objects: f.track.n_objects(),
            one_cells: f.track.n_one_cells(),
            two_cells: f.track.n_two_cells(),
            module,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GateSummary {
    pub passed: bool,
    pub max_level: usize,
    pub bound: u64,
    /// Predicted generator counts, as decimal strings.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub predicted: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Names of the 2-cells along a cycle of the support quiver.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
}

impl GateSummary {
    pub fn passed(g: &GateReport) -> Self {
        GateSummary {
            passed: true,
            max_level: g.max_level(),
            bound: g.bound,
            predicted: g.predicted.iter().map(ToString::to_string).collect(),
            error: None,
            witness: Vec::new(),
        }
    }

    pub fn refused(max_level: usize, bound: u64, e: &trackhom::Error) -> Self {
        let witness = match e {
            trackhom::Error::CyclicSupport { witness } => witness.clone(),
            _ => Vec::new(),
        };
        GateSummary { passed: false, max_level, bound, predicted: Vec::new(), error: Some(e.to_string()), witness }
    }
}

#[derive(Debug, Serialize)]
pub struct GroupRow {
    pub degree: usize,
    pub group: String,
    pub invariant_factors: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct TheoryTable {
    pub theory: String,
    pub groups: Vec<GroupRow>,
}

impl TheoryTable {
    pub fn new(theory: &str, groups: &[FinAbGroup]) -> Self {
        TheoryTable { theory: theory.into(), groups: rows(groups) }
    }
}

pub fn rows(groups: &[FinAbGroup]) -> Vec<GroupRow> {
    groups
        .iter()
        .enumerate()
        .map(|(degree, g)| GroupRow {
            degree,
            group: g.to_string(),
            invariant_factors: g.invariant_factors().iter().map(ToString::to_string).collect(),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct NerveSummary {
    pub coefficients: String,
    pub simplices: Vec<usize>,
    pub nondegenerate: Vec<usize>,
    pub groups: Vec<GroupRow>,
}

#[derive(Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Outcome {
    pub status: String,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Report {
    pub fn new(command: CommandEcho) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            command,
            fixture: None,
            validation: Vec::new(),
            gate: None,
            resolution: None,
            cohomology: Vec::new(),
            ses: Vec::new(),
            les: None,
            nerve: None,
            checks: Vec::new(),
            outcome: Outcome { status: "ok".into(), exit_code: 0, message: None },
        }
    }

    pub fn finish(&mut self, result: Result<(), CliError>) {
        if let Err(e) = result {
            if let CliError::Validation(reports) = &e {
                self.validation = reports.clone();
            }
            self.outcome = Outcome { status: e.kind().into(), exit_code: e.exit_code(), message: Some(e.to_string()) };
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, elapsed_secs: f64) -> String {
        let mut out = String::new();
        let c = &self.command;
        let _ = writeln!(out, "trackhom {} {} (max degree {})", c.name, c.fixture, c.max_degree);
        if let Some(f) = &self.fixture {
            let _ = writeln!(
                out,
                "fixture {}: {} objects, {} 1-cells, {} 2-cells, {} module, sha256 {}",
                f.name, f.objects, f.one_cells, f.two_cells, f.module, f.sha256
            );
        }
        for v in &self.validation {
            if v.is_valid() {
                let _ = writeln!(out, "validation {}: ok ({} checks)", v.subject, v.checks);
            } else {
                let _ = writeln!(out, "validation {}: {} violation(s)", v.subject, v.violations.len());
                for msg in &v.violations {
                    let _ = writeln!(out, "  {msg}");
                }
            }
        }
        if let Some(g) = &self.gate {
            if g.passed {
                let _ = writeln!(out, "gate: passed to level {}, predicted [{}]", g.max_level, g.predicted.join(", "));
            } else {
                let _ = writeln!(out, "gate: refused, {}", g.error.as_deref().unwrap_or(""));
                if !g.witness.is_empty() {
                    let _ = writeln!(out, "  cycle witness: {}", g.witness.join(" -> "));
                }
            }
        }
        if let Some(r) = &self.resolution {
            let counts: Vec<String> = r.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "resolution levels: [{}]", counts.join(", "));
        }
        for t in &self.cohomology {
            let _ = writeln!(out, "{}:", t.theory);
            for row in &t.groups {
                let _ = writeln!(out, "  H^{} = {}", row.degree, pretty(&row.group));
            }
        }
        for s in &self.ses {
            let verdict = if s.is_exact() { "exact" } else { "NOT exact" };
            let _ = writeln!(
                out,
                "ses level {}: 0 -> {} -> {} -> {} -> 0 {verdict} ({} generators)",
                s.level,
                pretty(&s.a.to_string()),
                pretty(&s.b.to_string()),
                pretty(&s.c.to_string()),
                s.generators
            );
        }
        if let Some(l) = &self.les {
            for d in &l.degrees {
                let _ = writeln!(
                    out,
                    "les degree {}: H(A) = {} [{}], H(B) = {} [{}], H(C) = {} [{}]",
                    d.degree,
                    pretty(&d.h_a.to_string()),
                    verdict(&d.at_a),
                    pretty(&d.h_b.to_string()),
                    verdict(&d.at_b),
                    pretty(&d.h_c.to_string()),
                    verdict(&d.at_c)
                );
            }
            let _ = writeln!(out, "connecting maps independent of preimage choice: {}", l.delta_choice_invariant);
        }
        if let Some(n) = &self.nerve {
            let _ = writeln!(out, "nerve: simplices {:?}, nondegenerate {:?}", n.simplices, n.nondegenerate);
            for row in &n.groups {
                let _ = writeln!(out, "  H^{}(BX; {}) = {}", row.degree, pretty(&n.coefficients), pretty(&row.group));
            }
        }
        for ch in &self.checks {
            let mark = if ch.passed { "ok" } else { "FAILED" };
            let _ = writeln!(out, "check {}: {mark} ({})", ch.name, ch.detail);
        }
        let _ = write!(out, "outcome: {} (exit {})", self.outcome.status, self.outcome.exit_code);
        if let Some(m) = &self.outcome.message {
            let _ = write!(out, ": {m}");
        }
        let _ = writeln!(out, " in {elapsed_secs:.2}s");
        out
    }
}

/// Writes runs of equal summands as powers: `Z/2 + Z/2 + Z` becomes `(Z/2)^2 ⊕ Z`.
fn pretty(group: &str) -> String {
    let mut runs: Vec<(&str, usize)> = Vec::new();
    for term in group.split(" + ") {
        match runs.last_mut() {
            Some((t, n)) if *t == term => *n += 1,
            _ => runs.push((term, 1)),
        }
    }
    let parts: Vec<String> = runs
        .into_iter()
        .map(|(t, n)| match n {
            1 => t.to_string(),
            _ if t.contains('/') => format!("({t})^{n}"),
            _ => format!("{t}^{n}"),
        })
        .collect();
    parts.join(" ⊕ ")
}

fn verdict(v: &NodeVerdict) -> &'static str {
    match v {
        NodeVerdict::Exact => "exact",
        NodeVerdict::Inexact { .. } => "NOT exact",
        NodeVerdict::NotCheckable => "outside truncation",
    }
}

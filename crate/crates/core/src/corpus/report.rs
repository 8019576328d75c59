use std::collections::HashMap;
use std::fmt::Write;

use serde::Serialize;

use crate::checker::Environment;

use super::audit::Auditor;
use super::loader::LoadTrace;
use super::manifest::Manifest;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Checked,
    Failed,
    Missing,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportItem {
    pub name: String,
    pub tier: u8,
    pub status: Status,
    /// Audit result; empty unless checked.
    pub axioms: Vec<String>,
    pub ms: u64,
    /// Audit found an axiom outside the expected set.
    pub flagged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub items: Vec<ReportItem>,
}

impl CorpusReport {
    pub fn all_checked(&self) -> bool {
        self.items.iter().all(|i| i.status == Status::Checked && !i.flagged)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Human-readable table; omits timings so output is reproducible.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for it in &self.items {
            let status = match it.status {
                Status::Checked => "checked",
                Status::Failed => "failed",
                Status::Missing => "missing",
            };
            let axioms = if it.axioms.is_empty() { "-".to_string() } else { it.axioms.join(",") };
            let flag = if it.flagged { "  FLAGGED" } else { "" };
            let _ = writeln!(s, "{:<28} tier {}  {:<8} {}{}", it.name, it.tier, status, axioms, flag);
        }
        let checked = self.items.iter().filter(|i| i.status == Status::Checked).count();
        let flagged = self.items.iter().filter(|i| i.flagged).count();
        let _ = writeln!(s, "{checked}/{} items checked, {flagged} flagged", self.items.len());
        s
    }
}

/// Status of each manifest item against a loaded environment.
pub fn corpus_report(env: &Environment, manifest: &Manifest) -> CorpusReport {
    build(env, manifest, None)
}

/// As `corpus_report`, using a load trace for timings and for telling
/// failed items from missing ones.
pub fn corpus_report_from_trace(trace: &LoadTrace, manifest: &Manifest) -> CorpusReport {
    build(&trace.env, manifest, Some(trace))
}

fn file_stem(f: &str) -> &str {
    let base = f.rsplit(['/', '\\']).next().unwrap_or(f);
    base.strip_suffix(".ht").unwrap_or(base)
}

fn build(env: &Environment, manifest: &Manifest, trace: Option<&LoadTrace>) -> CorpusReport {
    let times: HashMap<&str, u64> = trace
        .map(|t| t.checked.iter().map(|c| (&*c.name, c.elapsed.as_millis() as u64)).collect())
        .unwrap_or_default();
    let failed_file = trace.and_then(|t| t.failed_at.as_ref()).map(|(f, _)| file_stem(f));
    let mut auditor = Auditor::new(env);
    let items = manifest
        .items
        .iter()
        .map(|it| {
            if env.contains(&it.name) {
                let axioms = auditor.audit(&it.name).unwrap_or_default();
                let flagged = !axioms.is_subset(&it.expected_axioms);
                ReportItem {
                    name: it.name.clone(),
                    tier: it.tier,
                    status: Status::Checked,
                    axioms: axioms.into_iter().collect(),
                    ms: times.get(it.name.as_str()).copied().unwrap_or(0),
                    flagged,
                }
            } else {
                let status = if failed_file == Some(file_stem(&it.file)) {
                    Status::Failed
                } else {
                    Status::Missing
                };
                ReportItem {
                    name: it.name.clone(),
                    tier: it.tier,
                    status,
                    axioms: Vec::new(),
                    ms: 0,
                    flagged: false,
                }
            }
        })
        .collect();
    CorpusReport { items }
}

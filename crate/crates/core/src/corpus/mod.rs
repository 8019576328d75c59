//! The formalization corpus: loading, auditing and reporting.

mod audit;
pub mod builtin;
mod loader;
mod manifest;
mod report;

pub use audit::{axiom_audit, Auditor, SQUASH};
pub use loader::{load_corpus, read_source, Checked, LoadError, LoadTrace};
pub use manifest::{CorpusItem, Manifest, ManifestError};
pub use report::{corpus_report, corpus_report_from_trace, CorpusReport, ReportItem, Status};

use crate::checker::{Environment, TruncMode};

/// Loads the named bundled files into a fresh environment.
pub fn load_builtin(mode: TruncMode, files: &[&str]) -> LoadTrace {
    let mut trace = LoadTrace::new(Environment::new(mode));
    for f in files {
        let src = builtin::source(f).unwrap_or_else(|| panic!("no bundled corpus file `{f}`"));
        trace.load_source(src, &format!("{f}.ht"), None);
    }
    trace
}

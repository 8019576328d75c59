use std::path::Path;
use std::time::{Duration, Instant};

use crate::checker::Environment;
use crate::diag::Diagnostic;
use crate::syntax::{parse_file_in, Name};

/// Why loading stopped early.
#[derive(Clone, Debug)]
pub enum LoadError {
    Parse(Vec<Diagnostic>),
    Check(Diagnostic),
    Timeout(Diagnostic),
    Io(Diagnostic),
}

impl LoadError {
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            LoadError::Parse(ds) => ds,
            LoadError::Check(d) | LoadError::Timeout(d) | LoadError::Io(d) => {
                std::slice::from_ref(d)
            }
        }
    }

    pub fn first(&self) -> &Diagnostic {
        &self.diagnostics()[0]
    }
}

/// One checked declaration.
#[derive(Clone, Debug)]
pub struct Checked {
    pub name: Name,
    pub file: String,
    pub elapsed: Duration,
}

/// Everything a load produced, including the partial environment when it
/// stopped early.
#[derive(Clone, Debug)]
pub struct LoadTrace {
    pub env: Environment,
    pub checked: Vec<Checked>,
    /// File whose processing failed, and the declaration if it got that far.
    pub failed_at: Option<(String, Option<String>)>,
    pub error: Option<LoadError>,
}

impl LoadTrace {
    pub fn new(env: Environment) -> LoadTrace {
        LoadTrace { env, checked: Vec::new(), failed_at: None, error: None }
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }

    pub fn into_result(self) -> Result<Environment, LoadError> {
        match self.error {
            None => Ok(self.env),
            Some(e) => Err(e),
        }
    }

    /// Parses and checks one file's text, appending to the trace. Does
    /// nothing once an earlier step has failed.
    pub fn load_source(&mut self, source: &str, file: &str, deadline: Option<Instant>) {
        self.load_source_with(source, file, deadline, &mut |_, _| {});
    }

    /// As `load_source`, calling `on_decl` after each declaration with its
    /// name and outcome.
    pub fn load_source_with(
        &mut self,
        source: &str,
        file: &str,
        deadline: Option<Instant>,
        on_decl: &mut dyn FnMut(&str, Result<Duration, &Diagnostic>),
    ) {
        if self.error.is_some() {
            return;
        }
        let decls = match parse_file_in(source, file, &self.env.scope()) {
            Ok(ds) => ds,
            Err(ds) => {
                self.failed_at = Some((file.to_string(), ds[0].definition.clone()));
                self.error = Some(LoadError::Parse(ds));
                return;
            }
        };
        for d in decls {
            if deadline.is_some_and(|t| Instant::now() >= t) {
                let diag = Diagnostic::error("cli/timeout", "time limit reached")
                    .in_file(file)
                    .at(source, d.span)
                    .for_definition(&d.name);
                self.failed_at = Some((file.to_string(), Some(d.name.to_string())));
                self.error = Some(LoadError::Timeout(diag));
                return;
            }
            let start = Instant::now();
            match self.env.check_only(&d) {
                Ok(()) => {
                    let elapsed = start.elapsed();
                    on_decl(&d.name, Ok(elapsed));
                    self.checked.push(Checked {
                        name: d.name.clone(),
                        file: file.to_string(),
                        elapsed,
                    });
                    self.env.push_checked_decl(d);
                }
                Err(diag) => {
                    on_decl(&d.name, Err(&diag));
                    self.failed_at = Some((file.to_string(), Some(d.name.to_string())));
                    self.error = Some(LoadError::Check(diag));
                    return;
                }
            }
        }
    }

    /// Reads a file from disk, or falls back to the bundled corpus file of
    /// that name.
    pub fn load_path(&mut self, path: &Path, deadline: Option<Instant>) {
        let shown = path.display().to_string();
        match read_source(path) {
            Ok(src) => self.load_source(&src, &shown, deadline),
            Err(d) => {
                self.failed_at = Some((shown, None));
                self.error = Some(LoadError::Io(d));
            }
        }
    }
}

/// File contents from disk, or from the bundled corpus when `path` names
/// one of its files and does not exist on disk.
pub fn read_source(path: &Path) -> Result<String, Diagnostic> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) => {
            let stem = path.to_str().map(|s| s.trim_end_matches(".ht"));
            if let Some(src) = stem.and_then(super::builtin::source) {
                if !path.exists() {
                    return Ok(src.to_string());
                }
            }
            Err(Diagnostic::error("cli/io", format!("cannot read {}: {e}", path.display()))
                .in_file(&path.display().to_string()))
        }
    }
}

/// Checks the files in order and returns the final environment, stopping at
/// the first failure.
pub fn load_corpus<P: AsRef<Path>>(env: Environment, files: &[P]) -> Result<Environment, Diagnostic> {
    let mut trace = LoadTrace::new(env);
    for f in files {
        trace.load_path(f.as_ref(), None);
    }
    trace.into_result().map_err(|e| e.first().clone())
}

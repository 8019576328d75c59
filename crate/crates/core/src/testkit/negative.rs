//! The negative corpus: files that must be rejected, each with a sidecar
//! `<name>.expect.json` holding the expected code and position.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::checker::TruncMode;
use crate::corpus::{builtin, load_builtin};
use crate::diag::Diagnostic;

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct Expectation {
    pub code: String,
    pub line: u32,
    pub col: u32,
    /// Bundled corpus files loaded before the case.
    #[serde(default)]
    pub requires: Vec<String>,
    #[serde(default)]
    pub mode: Option<String>,
}

#[derive(Clone, Debug)]
pub struct NegativeCase {
    pub name: String,
    pub path: PathBuf,
    pub source: String,
    pub expect: Expectation,
}

#[derive(Debug, Error)]
pub enum NegativeError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: bad sidecar: {source}")]
    Sidecar { path: PathBuf, source: serde_json::Error },
    #[error("{0}: unknown bundled file or mode in sidecar")]
    BadRequirement(PathBuf),
}

/// Loads every `*.ht` file in `dir` with its sidecar, sorted by name.
pub fn load_negative_dir(dir: &Path) -> Result<Vec<NegativeCase>, NegativeError> {
    fn io(path: &Path) -> impl FnOnce(std::io::Error) -> NegativeError + '_ {
        move |source| NegativeError::Io { path: path.to_path_buf(), source }
    }
    let mut cases = Vec::new();
    for entry in fs::read_dir(dir).map_err(io(dir))? {
        let path = entry.map_err(io(dir))?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("ht") {
            continue;
        }
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let sidecar = path.with_file_name(format!("{name}.expect.json"));
        let source = fs::read_to_string(&path).map_err(io(&path))?;
        let text = fs::read_to_string(&sidecar).map_err(io(&sidecar))?;
        let expect: Expectation = serde_json::from_str(&text)
            .map_err(|source| NegativeError::Sidecar { path: sidecar.clone(), source })?;
        let known = expect.requires.iter().all(|f| builtin::source(f).is_some());
        let mode_ok = expect.mode.as_deref().map_or(true, |m| m.parse::<TruncMode>().is_ok());
        if !known || !mode_ok {
            return Err(NegativeError::BadRequirement(sidecar));
        }
        cases.push(NegativeCase { name, path, source, expect });
    }
    cases.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(cases)
}

impl NegativeCase {
    pub fn mode(&self) -> TruncMode {
        self.expect.mode.as_deref().and_then(|m| m.parse().ok()).unwrap_or_default()
    }

    /// The first diagnostic produced when loading the case, if any.
    pub fn run(&self) -> Option<Diagnostic> {
        let files: Vec<&str> = self.expect.requires.iter().map(String::as_str).collect();
        let mut trace = load_builtin(self.mode(), &files);
        assert!(trace.is_ok(), "{}: required corpus files do not check", self.name);
        trace.load_source(&self.source, &format!("{}.ht", self.name), None);
        trace.error.map(|e| e.first().clone())
    }

    /// `Ok` when the case is rejected with the documented code and position.
    pub fn verify(&self) -> Result<Diagnostic, String> {
        let Some(d) = self.run() else {
            return Err(format!("{}: accepted, expected {}", self.name, self.expect.code));
        };
        let want = (&*self.expect.code, self.expect.line, self.expect.col);
        if (&*d.code, d.line, d.col) == want {
            Ok(d)
        } else {
            Err(format!(
                "{}: got {} at {}:{}, expected {} at {}:{}",
                self.name, d.code, d.line, d.col, want.0, want.1, want.2
            ))
        }
    }
}

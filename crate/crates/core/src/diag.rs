//! Structured diagnostics shared by the parser, the checker and the driver.

use std::fmt;

use serde::Serialize;

use crate::syntax::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Note,
}

/// One reported problem. Field names are part of the JSON output format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub file: String,
    pub line: u32,
    pub col: u32,
    pub definition: Option<String>,
    pub code: String,
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: &str, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            file: String::new(),
            line: 0,
            col: 0,
            definition: None,
            code: code.to_string(),
            severity: Severity::Error,
            message: message.into(),
        }
    }

    pub fn in_file(mut self, file: &str) -> Diagnostic {
        self.file = file.to_string();
        self
    }

    pub fn at(mut self, source: &str, span: Span) -> Diagnostic {
        let (line, col) = line_col(source, span.start as usize);
        self.line = line;
        self.col = col;
        self
    }

    pub fn at_line_col(mut self, line: u32, col: u32) -> Diagnostic {
        self.line = line;
        self.col = col;
        self
    }

    pub fn for_definition(mut self, name: &str) -> Diagnostic {
        self.definition = Some(name.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagnostics serialize")
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Note => "note",
        };
        if !self.file.is_empty() {
            write!(f, "{}:{}:{}: ", self.file, self.line, self.col)?;
        }
        write!(f, "{sev}[{}]", self.code)?;
        if let Some(d) = &self.definition {
            write!(f, " in `{d}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// 1-based line and column (in characters) of a byte offset.
pub fn line_col(source: &str, offset: usize) -> (u32, u32) {
    let offset = offset.min(source.len());
    let before = &source[..offset];
    let line = before.matches('\n').count() as u32 + 1;
    let line_start = before.rfind('\n').map(|i| i + 1).unwrap_or(0);
    let col = source[line_start..offset].chars().count() as u32 + 1;
    (line, col)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_col_is_one_based() {
        let src = "ab\ncde\n";
        assert_eq!(line_col(src, 0), (1, 1));
        assert_eq!(line_col(src, 4), (2, 2));
        assert_eq!(line_col(src, 100), (3, 1));
    }

    #[test]
    fn json_field_names() {
        let d = Diagnostic::error("parse/unexpected-eof", "unexpected end of input")
            .in_file("bad.ht")
            .at_line_col(1, 17);
        let v: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        for k in ["file", "line", "col", "definition", "code", "severity", "message"] {
            assert!(v.get(k).is_some(), "missing {k}");
        }
        assert_eq!(v["code"], "parse/unexpected-eof");
        assert_eq!(v["col"], 17);
    }
}

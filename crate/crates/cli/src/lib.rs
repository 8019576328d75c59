//! Batch driver: check files, normalize definitions, audit axioms, report on
//! the corpus manifest.

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use ztk_core::checker::{self, Context, Environment, TruncMode};
use ztk_core::corpus::{self, LoadError, LoadTrace, Manifest};
use ztk_core::diag::Diagnostic;
use ztk_core::syntax::print_term_in;

pub const EXIT_OK: i32 = 0;
pub const EXIT_TYPE_ERROR: i32 = 1;
pub const EXIT_PARSE_ERROR: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_TIMEOUT: i32 = 4;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Jne,
    Jde,
}

#[derive(Debug, Parser)]
#[command(name = "ztk", version, about = "Check, normalize and audit kernel-language files")]
struct Cli {
    /// Whether the dependent truncation eliminator computes.
    #[arg(long, value_enum, default_value = "jne", global = true)]
    trunc_mode: ModeArg,
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Wall-clock limit in seconds, checked between declarations.
    #[arg(long, default_value_t = 300, global = true)]
    timeout: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check files in order.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print the normal form of a definition's body. Without files, the
    /// bundled corpus is loaded.
    Normalize { name: String, files: Vec<PathBuf> },
    /// List the axioms a declaration depends on. Without files, the bundled
    /// corpus is loaded.
    Audit { name: String, files: Vec<PathBuf> },
    /// Check files and report on every manifest item.
    Report {
        manifest: PathBuf,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

/// Resolved configuration for one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: TruncMode,
    pub json: bool,
    pub timeout: Duration,
}

fn exit_code(e: &LoadError) -> i32 {
    match e {
        LoadError::Parse(_) => EXIT_PARSE_ERROR,
        LoadError::Check(_) => EXIT_TYPE_ERROR,
        LoadError::Timeout(_) => EXIT_TIMEOUT,
        LoadError::Io(_) => EXIT_USAGE,
    }
}

fn emit_diagnostics(out: &mut dyn Write, cfg: &RunConfig, ds: &[Diagnostic]) {
    for d in ds {
        if cfg.json {
            let _ = writeln!(out, "{}", d.to_json());
        } else {
            let _ = writeln!(out, "{d}");
        }
    }
}

/// Loads the files, printing per-declaration lines when `verbose`.
fn load(
    cfg: &RunConfig,
    files: &[PathBuf],
    out: &mut dyn Write,
    verbose: bool,
) -> LoadTrace {
    let deadline = Instant::now() + cfg.timeout;
    let mut trace = LoadTrace::new(Environment::new(cfg.mode));
    for f in files {
        let shown = f.display().to_string();
        let src = match corpus::read_source(f) {
            Ok(s) => s,
            Err(d) => {
                trace.failed_at = Some((shown, None));
                trace.error = Some(LoadError::Io(d));
                break;
            }
        };
        let mut on_decl = |name: &str, r: Result<Duration, &Diagnostic>| {
            if verbose && !cfg.json {
                let tag = if r.is_ok() { "OK  " } else { "FAIL" };
                let _ = writeln!(out, "{tag} {name}");
            }
        };
        trace.load_source_with(&src, &shown, Some(deadline), &mut on_decl);
        if trace.error.is_some() {
            break;
        }
    }
    trace
}

/// `files`, or the whole bundled corpus for the mode when none are given.
fn files_or_bundled(cfg: &RunConfig, files: Vec<PathBuf>) -> Vec<PathBuf> {
    if !files.is_empty() {
        return files;
    }
    let mut names = corpus::builtin::files_up_to(4);
    if cfg.mode == TruncMode::Jde {
        names.push("jde_extras");
    }
    names.into_iter().map(PathBuf::from).collect()
}

fn fail(out: &mut dyn Write, cfg: &RunConfig, d: Diagnostic, code: i32) -> i32 {
    emit_diagnostics(out, cfg, &[d]);
    code
}

fn execute(cmd: Command, cfg: &RunConfig, out: &mut dyn Write) -> i32 {
    match cmd {
        Command::Check { files } => {
            let trace = load(cfg, &files, out, true);
            match &trace.error {
                None => {
                    if !cfg.json {
                        let _ = writeln!(out, "{} definitions OK", trace.checked.len());
                    }
                    EXIT_OK
                }
                Some(e) => {
                    emit_diagnostics(out, cfg, e.diagnostics());
                    if !cfg.json {
                        let _ = writeln!(out, "{} definitions OK, 1 failed", trace.checked.len());
                    }
                    exit_code(e)
                }
            }
        }
        Command::Normalize { name, files } => {
            let files = files_or_bundled(cfg, files);
            let trace = load(cfg, &files, out, false);
            if let Some(e) = &trace.error {
                emit_diagnostics(out, cfg, e.diagnostics());
                return exit_code(e);
            }
            let Some(entry) = trace.env.get(&name) else {
                return fail(out, cfg, Diagnostic::error("cli/unknown-name", format!("unknown name `{name}`")), EXIT_USAGE);
            };
            let Some(body) = &entry.decl.body else {
                return fail(out, cfg, Diagnostic::error("cli/no-body", format!("`{name}` has no body to normalize")), EXIT_USAGE);
            };
            let nf = checker::normalize(&trace.env, &Context::new(), body);
            let text = print_term_in(&nf, &[], &entry.decl.level_params);
            if cfg.json {
                let _ = writeln!(out, "{}", serde_json::json!({ "name": name, "normal_form": text }));
            } else {
                let _ = writeln!(out, "{text}");
            }
            EXIT_OK
        }
        Command::Audit { name, files } => {
            let files = files_or_bundled(cfg, files);
            let trace = load(cfg, &files, out, false);
            if let Some(e) = &trace.error {
                emit_diagnostics(out, cfg, e.diagnostics());
                return exit_code(e);
            }
            match corpus::axiom_audit(&trace.env, &name) {
                Ok(axioms) => {
                    if cfg.json {
                        let _ = writeln!(out, "{}", serde_json::json!({ "axioms": axioms }));
                    } else if axioms.is_empty() {
                        let _ = writeln!(out, "no axioms");
                    } else {
                        for a in axioms {
                            let _ = writeln!(out, "{a}");
                        }
                    }
                    EXIT_OK
                }
                Err(d) => fail(out, cfg, d, EXIT_USAGE),
            }
        }
        Command::Report { manifest, files } => {
            let text = match std::fs::read_to_string(&manifest) {
                Ok(t) => t,
                Err(_) if !manifest.exists() && manifest.to_str() == Some("manifest") => {
                    corpus::builtin::MANIFEST.to_string()
                }
                Err(e) => {
                    let d = Diagnostic::error("cli/io", format!("cannot read {}: {e}", manifest.display()));
                    return fail(out, cfg, d, EXIT_USAGE);
                }
            };
            let m = match Manifest::parse(&text) {
                Ok(m) => m,
                Err(e) => {
                    let d = Diagnostic::error("parse/manifest", e.to_string())
                        .in_file(&manifest.display().to_string());
                    return fail(out, cfg, d, EXIT_PARSE_ERROR);
                }
            };
            let trace = load(cfg, &files, out, false);
            let report = corpus::corpus_report_from_trace(&trace, &m);
            if cfg.json {
                let _ = writeln!(out, "{}", report.to_json());
            } else {
                let _ = write!(out, "{}", report.to_text());
            }
            if let Some(e) = &trace.error {
                emit_diagnostics(out, cfg, e.diagnostics());
                return exit_code(e);
            }
            if report.items.iter().any(|i| i.flagged) {
                EXIT_TYPE_ERROR
            } else {
                EXIT_OK
            }
        }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let cfg = RunConfig {
        mode: match cli.trunc_mode {
            ModeArg::Jne => TruncMode::Jne,
            ModeArg::Jde => TruncMode::Jde,
        },
        json: cli.json,
        timeout: Duration::from_secs(cli.timeout),
    };
    execute(cli.command, &cfg, out)
}

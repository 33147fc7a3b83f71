//! `redlint`: validate a corpus (or a single file) and report findings.
//!
//! Exit codes: 0 clean, 1 warnings only, 2 errors, 3 I/O failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use atlas_core::{validate_corpus, validate_file, DocumentKind, ValidationReport};
use clap::{Parser, ValueEnum};

pub const EXIT_CLEAN: i32 = 0;
pub const EXIT_WARNINGS: i32 = 1;
pub const EXIT_ERRORS: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Problem,
    Reduction,
    Manifest,
}

impl From<Kind> for DocumentKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Problem => DocumentKind::Problem,
            Kind::Reduction => DocumentKind::Reduction,
            Kind::Manifest => DocumentKind::Manifest,
        }
    }
}

/// Checks a reduction-atlas corpus for format and integrity problems.
#[derive(Debug, Parser)]
#[command(name = "redlint", version)]
pub struct LintArgs {
    /// Corpus root directory. With `--kind`, the file to check (or the root
    /// followed by a file path relative to it).
    #[arg(required = true, num_args = 1..=2, value_name = "ROOT")]
    pub paths: Vec<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Check a single file of this kind; cross-file checks are skipped.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
}

/// What to print and how to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(report: &ValidationReport) -> i32 {
    if report.errors() > 0 {
        EXIT_ERRORS
    } else if report.warnings() > 0 {
        EXIT_WARNINGS
    } else {
        EXIT_CLEAN
    }
}

pub fn render_human(report: &ValidationReport) -> String {
    let mut out = String::new();
    for finding in report.findings() {
        let _ = writeln!(out, "{finding}");
    }
    let _ = writeln!(
        out,
        "{} error(s), {} warning(s)",
        report.errors(),
        report.warnings()
    );
    out
}

pub fn render_json(report: &ValidationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn target(args: &LintArgs) -> Result<(PathBuf, Option<DocumentKind>), String> {
    match (args.kind, args.paths.as_slice()) {
        (None, [root]) => Ok((root.clone(), None)),
        (None, [_, _]) => Err("a second path is only accepted together with --kind".into()),
        (Some(kind), [file]) => Ok((file.clone(), Some(kind.into()))),
        (Some(kind), [root, file]) => {
            let file = if file.is_absolute() {
                file.clone()
            } else {
                root.join(file)
            };
            Ok((file, Some(kind.into())))
        }
        _ => Err("expected one or two paths".into()),
    }
}

pub fn run(args: &LintArgs) -> Outcome {
    let (path, kind) = match target(args) {
        Ok(t) => t,
        Err(msg) => {
            return Outcome {
                code: EXIT_IO,
                stdout: String::new(),
                stderr: format!("redlint: {msg}\n"),
            }
        }
    };
    let result = match kind {
        None => validate_corpus(&path),
        Some(kind) => validate_file(&path, kind),
    };
    match result {
        Ok(report) => Outcome {
            code: exit_code(&report),
            stdout: match args.format {
                Format::Human => render_human(&report),
                Format::Json => render_json(&report),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_IO,
            stdout: String::new(),
            stderr: format!("redlint: {e}\n"),
        },
    }
}

/// Convenience for tests: lint a corpus root.
pub fn lint_root(root: &Path, format: Format) -> Outcome {
    run(&LintArgs {
        paths: vec![root.to_path_buf()],
        format,
        kind: None,
    })
}

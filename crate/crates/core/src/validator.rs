//! Corpus linting: directory layout, file format, slug uniqueness, referential
//! integrity and tag vocabularies.
//!
//! Validation never stops at the first problem. Every finding is collected and
//! the report is sorted by `(path, line)` so that identical trees produce
//! identical reports regardless of how files were scheduled.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::codec::{
    self, list_lines, parse_document_bytes, CodecError, DocumentKind, FieldMap, Parsed,
    SourceLocation, UnknownField, MANIFEST_FILE,
};
use crate::corpus::{CorpusFiles, IoError};
use crate::model::{is_kebab_case, NetworkId, NetworkManifest, Problem, Reduction, Slug, Tag};

pub const PROBLEMS_DIR: &str = "problems";
pub const REDUCTIONS_DIR: &str = "reductions";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Error => "error",
            Self::Warning => "warning",
        })
    }
}

/// Stable identifier of a finding kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingCode {
    /// Stray file or unexpected directory in the corpus layout.
    BadDirectory,
    /// Network directory or document file whose name is not kebab-case.
    InvalidName,
    InvalidEncoding,
    PreambleContent,
    EmptyKey,
    DuplicateField,
    MissingField,
    EmptyField,
    MalformedTag,
    MalformedSlug,
    InvalidValue,
    SelfLoop,
    DuplicateSlug,
    DanglingEndpoint,
    UnknownTag,
    UnknownField,
    EmptyNetwork,
}

impl FindingCode {
    pub const ALL: [FindingCode; 17] = [
        Self::BadDirectory,
        Self::InvalidName,
        Self::InvalidEncoding,
        Self::PreambleContent,
        Self::EmptyKey,
        Self::DuplicateField,
        Self::MissingField,
        Self::EmptyField,
        Self::MalformedTag,
        Self::MalformedSlug,
        Self::InvalidValue,
        Self::SelfLoop,
        Self::DuplicateSlug,
        Self::DanglingEndpoint,
        Self::UnknownTag,
        Self::UnknownField,
        Self::EmptyNetwork,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::BadDirectory => "bad-directory",
            Self::InvalidName => "invalid-name",
            Self::InvalidEncoding => "invalid-encoding",
            Self::PreambleContent => "preamble-content",
            Self::EmptyKey => "empty-key",
            Self::DuplicateField => "duplicate-field",
            Self::MissingField => "missing-field",
            Self::EmptyField => "empty-field",
            Self::MalformedTag => "malformed-tag",
            Self::MalformedSlug => "malformed-slug",
            Self::InvalidValue => "invalid-value",
            Self::SelfLoop => "self-loop",
            Self::DuplicateSlug => "duplicate-slug",
            Self::DanglingEndpoint => "dangling-endpoint",
            Self::UnknownTag => "unknown-tag",
            Self::UnknownField => "unknown-field",
            Self::EmptyNetwork => "empty-network",
        }
    }

    fn of(err: &CodecError) -> Self {
        match err {
            CodecError::InvalidEncoding { .. } => Self::InvalidEncoding,
            CodecError::PreambleContent { .. } => Self::PreambleContent,
            CodecError::EmptyKey { .. } => Self::EmptyKey,
            CodecError::DuplicateField { .. } => Self::DuplicateField,
            CodecError::MissingField(_) => Self::MissingField,
            CodecError::EmptyField { .. } => Self::EmptyField,
            CodecError::MalformedTag { .. } => Self::MalformedTag,
            CodecError::MalformedSlug { .. } => Self::MalformedSlug,
            CodecError::SelfLoop { .. } => Self::SelfLoop,
            CodecError::InvalidValue { .. } => Self::InvalidValue,
        }
    }
}

impl fmt::Display for FindingCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub code: FindingCode,
    pub message: String,
    #[serde(flatten)]
    pub location: SourceLocation,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}[{}]: {}",
            self.location, self.severity, self.code, self.message
        )
    }
}

/// Ordered findings plus their counts by severity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    findings: Vec<Finding>,
    errors: usize,
    warnings: usize,
}

impl ValidationReport {
    pub fn new(mut findings: Vec<Finding>) -> Self {
        findings.sort_by(|a, b| {
            (&a.location, a.severity, a.code, &a.message).cmp(&(
                &b.location,
                b.severity,
                b.code,
                &b.message,
            ))
        });
        let errors = findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
            .count();
        let warnings = findings.len() - errors;
        Self {
            findings,
            errors,
            warnings,
        }
    }

    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    pub fn errors(&self) -> usize {
        self.errors
    }

    pub fn warnings(&self) -> usize {
        self.warnings
    }

    pub fn has_errors(&self) -> bool {
        self.errors > 0
    }

    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn with_code(&self, code: FindingCode) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(move |f| f.code == code)
    }
}

#[derive(Default)]
struct Collector {
    findings: Vec<Finding>,
}

impl Collector {
    fn push(
        &mut self,
        severity: Severity,
        code: FindingCode,
        path: &str,
        line: usize,
        message: impl Into<String>,
    ) {
        self.findings.push(Finding {
            severity,
            code,
            message: message.into(),
            location: SourceLocation::new(path, line),
        });
    }

    fn error(&mut self, code: FindingCode, path: &str, line: usize, message: impl Into<String>) {
        self.push(Severity::Error, code, path, line, message);
    }

    fn warning(&mut self, code: FindingCode, path: &str, line: usize, message: impl Into<String>) {
        self.push(Severity::Warning, code, path, line, message);
    }

    fn codec_errors(&mut self, path: &str, errors: &[CodecError]) {
        for e in errors {
            self.error(FindingCode::of(e), path, e.line(), e.to_string());
        }
    }

    fn unknown_fields(&mut self, path: &str, unknown: &[UnknownField]) {
        for u in unknown {
            self.warning(
                FindingCode::UnknownField,
                path,
                u.line,
                format!("unknown field `{}` is ignored", u.key),
            );
        }
    }

    fn finish(self) -> ValidationReport {
        ValidationReport::new(self.findings)
    }
}

/// Parsed contents of one network, as far as they could be read.
#[derive(Debug, Clone, Default)]
pub struct LoadedNetwork {
    pub manifest: Option<NetworkManifest>,
    pub problems: Vec<Problem>,
    pub reductions: Vec<Reduction>,
}

/// Everything that parsed cleanly during a validation pass.
///
/// Only meaningful as ingest input when the accompanying report has no errors.
#[derive(Debug, Clone, Default)]
pub struct LoadedCorpus {
    pub networks: BTreeMap<NetworkId, LoadedNetwork>,
}

enum Job<'a> {
    Manifest {
        path: String,
        bytes: &'a [u8],
    },
    Problem {
        path: &'a str,
        slug: Slug,
        bytes: &'a [u8],
    },
    Reduction {
        path: &'a str,
        slug: Slug,
        bytes: &'a [u8],
    },
}

enum Outcome<T> {
    Parsed(FieldMap, Parsed<T>),
    Failed(Vec<CodecError>),
}

enum JobResult<'a> {
    Manifest(String, Outcome<NetworkManifest>),
    Problem(&'a str, Slug, Outcome<Problem>),
    Reduction(&'a str, Slug, Outcome<Reduction>),
}

fn run<T>(
    bytes: &[u8],
    decode: impl FnOnce(&FieldMap) -> Result<Parsed<T>, Vec<CodecError>>,
) -> Outcome<T> {
    match parse_document_bytes(bytes) {
        Err(errs) => Outcome::Failed(errs),
        Ok(fields) => match decode(&fields) {
            Ok(parsed) => Outcome::Parsed(fields, parsed),
            Err(errs) => Outcome::Failed(errs),
        },
    }
}

impl<'a> Job<'a> {
    fn run(self, network: &NetworkId) -> JobResult<'a> {
        match self {
            Job::Manifest { path, bytes } => JobResult::Manifest(
                path,
                run(bytes, |f| codec::parse_manifest(f, network.clone())),
            ),
            Job::Problem { path, slug, bytes } => {
                let outcome = run(bytes, |f| {
                    codec::parse_problem(f, slug.clone(), network.clone())
                });
                JobResult::Problem(path, slug, outcome)
            }
            Job::Reduction { path, slug, bytes } => {
                let outcome = run(bytes, |f| {
                    codec::parse_reduction(f, slug.clone(), network.clone())
                });
                JobResult::Reduction(path, slug, outcome)
            }
        }
    }
}

fn token_line(fields: &FieldMap, key: &str, token: &str) -> usize {
    fields
        .get(key)
        .and_then(|f| list_lines(f).find(|(_, t)| *t == token).map(|(l, _)| l))
        .unwrap_or(1)
}

/// Collects the document files of one kind below `dir`, reporting stray files.
fn document_jobs<'a>(
    files: &'a CorpusFiles,
    dir: &str,
    out: &mut Collector,
) -> Vec<(&'a str, Slug, &'a [u8])> {
    let mut docs = Vec::new();
    for (path, bytes) in files.files_under(dir) {
        let name = path.rsplit('/').next().unwrap_or(path);
        if !name.ends_with(".md") {
            out.warning(
                FindingCode::BadDirectory,
                path,
                1,
                format!("`{name}` is not a Markdown file and is ignored"),
            );
            continue;
        }
        match Slug::from_file_name(Path::new(name)) {
            Ok(slug) => docs.push((path, slug, bytes)),
            Err(_) => out.error(
                FindingCode::InvalidName,
                path,
                1,
                format!("file name `{name}` is not a kebab-case slug followed by `.md`"),
            ),
        }
    }
    docs
}

fn check_network(
    files: &CorpusFiles,
    dir: &str,
    network: NetworkId,
    out: &mut Collector,
) -> LoadedNetwork {
    let mut has_manifest = false;
    for (name, is_dir) in files.children(dir) {
        let path = format!("{dir}/{name}");
        match (name, is_dir) {
            (MANIFEST_FILE, false) => has_manifest = true,
            (PROBLEMS_DIR | REDUCTIONS_DIR, true) => {}
            (PROBLEMS_DIR | REDUCTIONS_DIR, false) => out.error(
                FindingCode::BadDirectory,
                &path,
                1,
                format!("`{name}` must be a directory"),
            ),
            (_, true) => out.error(
                FindingCode::BadDirectory,
                &path,
                1,
                format!(
                    "unexpected directory `{name}`; a network holds only `{PROBLEMS_DIR}/` and `{REDUCTIONS_DIR}/`"
                ),
            ),
            (_, false) => out.warning(
                FindingCode::BadDirectory,
                &path,
                1,
                format!("unexpected file `{name}` is ignored"),
            ),
        }
    }
    if !has_manifest {
        out.error(
            FindingCode::BadDirectory,
            dir,
            1,
            format!("network directory has no `{MANIFEST_FILE}`"),
        );
    }

    let problem_dir = format!("{dir}/{PROBLEMS_DIR}");
    let reduction_dir = format!("{dir}/{REDUCTIONS_DIR}");
    let problem_docs = if files.is_dir(&problem_dir) {
        document_jobs(files, &problem_dir, out)
    } else {
        Vec::new()
    };
    let reduction_docs = if files.is_dir(&reduction_dir) {
        document_jobs(files, &reduction_dir, out)
    } else {
        Vec::new()
    };

    let mut jobs = Vec::new();
    if has_manifest {
        let path = format!("{dir}/{MANIFEST_FILE}");
        let bytes = files.file(&path).unwrap_or_default();
        jobs.push(Job::Manifest { path, bytes });
    }
    jobs.extend(problem_docs.iter().map(|(path, slug, bytes)| Job::Problem {
        path,
        slug: slug.clone(),
        bytes,
    }));
    jobs.extend(
        reduction_docs
            .iter()
            .map(|(path, slug, bytes)| Job::Reduction {
                path,
                slug: slug.clone(),
                bytes,
            }),
    );
    let results: Vec<JobResult<'_>> = jobs.into_par_iter().map(|j| j.run(&network)).collect();

    let mut loaded = LoadedNetwork::default();
    let mut problems: Vec<(&str, FieldMap, Problem)> = Vec::new();
    let mut reductions: Vec<(&str, FieldMap, Reduction)> = Vec::new();
    let mut seen_problems: BTreeMap<Slug, &str> = BTreeMap::new();
    let mut seen_reductions: BTreeMap<Slug, &str> = BTreeMap::new();

    for result in results {
        match result {
            JobResult::Manifest(path, Outcome::Parsed(_, parsed)) => {
                out.unknown_fields(&path, &parsed.warnings);
                loaded.manifest = Some(parsed.value);
            }
            JobResult::Manifest(path, Outcome::Failed(errs)) => out.codec_errors(&path, &errs),
            JobResult::Problem(path, slug, outcome) => {
                let first = seen_problems.entry(slug.clone()).or_insert(path);
                let duplicate = *first != path;
                if duplicate {
                    out.error(
                        FindingCode::DuplicateSlug,
                        path,
                        1,
                        format!("problem slug `{slug}` is already defined by {first}"),
                    );
                }
                match outcome {
                    Outcome::Parsed(fields, parsed) => {
                        out.unknown_fields(path, &parsed.warnings);
                        if !duplicate {
                            problems.push((path, fields, parsed.value));
                        }
                    }
                    Outcome::Failed(errs) => out.codec_errors(path, &errs),
                }
            }
            JobResult::Reduction(path, slug, outcome) => {
                let first = seen_reductions.entry(slug.clone()).or_insert(path);
                let duplicate = *first != path;
                if duplicate {
                    out.error(
                        FindingCode::DuplicateSlug,
                        path,
                        1,
                        format!("reduction slug `{slug}` is already defined by {first}"),
                    );
                }
                match outcome {
                    Outcome::Parsed(fields, parsed) => {
                        out.unknown_fields(path, &parsed.warnings);
                        if !duplicate {
                            reductions.push((path, fields, parsed.value));
                        }
                    }
                    Outcome::Failed(errs) => out.codec_errors(path, &errs),
                }
            }
        }
    }

    if has_manifest && problem_docs.is_empty() {
        out.warning(
            FindingCode::EmptyNetwork,
            &format!("{dir}/{MANIFEST_FILE}"),
            1,
            "network has no problems",
        );
    }

    // Endpoints resolve against every problem file name, parsed or not, so a
    // broken problem file does not also break the reductions that point at it.
    let known: BTreeSet<&Slug> = seen_problems.keys().collect();
    let vocabulary = loaded.manifest.as_ref();

    for (path, fields, problem) in problems {
        if let Some(m) = vocabulary {
            unknown_tags(
                out,
                path,
                &fields,
                "complexity",
                problem.completeness(),
                m.problem_tags(),
                m.network(),
            );
        }
        loaded.problems.push(problem);
    }
    for (path, fields, reduction) in reductions {
        let mut dangling = false;
        for (key, endpoint) in [
            ("from", reduction.from_problem()),
            ("to", reduction.to_problem()),
        ] {
            if !known.contains(endpoint) {
                dangling = true;
                out.error(
                    FindingCode::DanglingEndpoint,
                    path,
                    fields.get(key).map_or(1, |f| f.value_line),
                    format!(
                        "`{key}` names `{endpoint}`, which is not a problem in network `{network}`"
                    ),
                );
            }
        }
        if let Some(m) = vocabulary {
            unknown_tags(
                out,
                path,
                &fields,
                "properties",
                reduction.properties(),
                m.reduction_tags(),
                m.network(),
            );
        }
        if !dangling {
            loaded.reductions.push(reduction);
        }
    }
    loaded
}

fn unknown_tags(
    out: &mut Collector,
    path: &str,
    fields: &FieldMap,
    key: &str,
    tags: &BTreeSet<Tag>,
    vocabulary: &BTreeSet<Tag>,
    network: &NetworkId,
) {
    for tag in tags.difference(vocabulary) {
        out.error(
            FindingCode::UnknownTag,
            path,
            token_line(fields, key, tag.as_str()),
            format!("tag `{tag}` is not declared in {network}/{MANIFEST_FILE}"),
        );
    }
}

/// Validates an in-memory corpus and returns whatever parsed alongside the report.
pub fn check_files(files: &CorpusFiles) -> (ValidationReport, LoadedCorpus) {
    let mut out = Collector::default();
    let mut corpus = LoadedCorpus::default();
    for (name, is_dir) in files.children("") {
        if !is_dir {
            out.warning(
                FindingCode::BadDirectory,
                name,
                1,
                format!("file `{name}` at the corpus root is ignored"),
            );
            continue;
        }
        if !is_kebab_case(name) {
            out.error(
                FindingCode::InvalidName,
                name,
                1,
                format!("network directory `{name}` is not a kebab-case identifier"),
            );
            continue;
        }
        let network = NetworkId::new(name).expect("checked kebab-case");
        let loaded = check_network(files, name, network.clone(), &mut out);
        corpus.networks.insert(network, loaded);
    }
    (out.finish(), corpus)
}

/// Reads and validates the corpus below `root`.
pub fn validate_corpus(root: &Path) -> Result<ValidationReport, IoError> {
    let files = CorpusFiles::read(root)?;
    Ok(check_files(&files).0)
}

/// Checks one file in isolation: format, required fields, lexical tag rules and
/// unknown fields. Cross-file checks are skipped.
pub fn validate_file(path: &Path, kind: DocumentKind) -> Result<ValidationReport, IoError> {
    let bytes = std::fs::read(path).map_err(|e| IoError::new(path, e))?;
    let shown = path.display().to_string();
    let mut out = Collector::default();

    // Cross-file identity does not matter here, so a stand-in id is enough
    // when the real one cannot be derived.
    let fallback = || Slug::new("unnamed").expect("valid slug");
    let network = NetworkId::new("unnamed").expect("valid id");
    let slug = match kind {
        DocumentKind::Manifest => fallback(),
        _ => Slug::from_file_name(path).unwrap_or_else(|_| {
            out.error(
                FindingCode::InvalidName,
                &shown,
                1,
                "file name is not a kebab-case slug followed by `.md`",
            );
            fallback()
        }),
    };

    let warnings = match kind {
        DocumentKind::Problem => match run(&bytes, |f| codec::parse_problem(f, slug, network)) {
            Outcome::Parsed(_, p) => Ok(p.warnings),
            Outcome::Failed(e) => Err(e),
        },
        DocumentKind::Reduction => {
            match run(&bytes, |f| codec::parse_reduction(f, slug, network)) {
                Outcome::Parsed(_, p) => Ok(p.warnings),
                Outcome::Failed(e) => Err(e),
            }
        }
        DocumentKind::Manifest => match run(&bytes, |f| codec::parse_manifest(f, network)) {
            Outcome::Parsed(_, p) => Ok(p.warnings),
            Outcome::Failed(e) => Err(e),
        },
    };
    match warnings {
        Ok(w) => out.unknown_fields(&shown, &w),
        Err(e) => out.codec_errors(&shown, &e),
    }
    Ok(out.finish())
}

//! Reader and writer for the field-heading Markdown format.
//!
//! A file is a sequence of fields. A line beginning with `# ` at column 0
//! opens a field whose key is the rest of that line, trimmed and lowercased.
//! Everything up to the next such line is the field value. Deeper headings
//! (`## ...`) are ordinary content.
//!
//! ```text
//! # name
//! Vertex Cover
//!
//! # abbreviation
//! VC
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    is_heading_line, is_kebab_case, normalize_block, ModelError, NetworkId, NetworkManifest,
    Problem, Reduction, Slug, Tag,
};

/// File name of the per-network manifest.
pub const MANIFEST_FILE: &str = "network.md";

/// Corpus-relative file path and 1-based line.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SourceLocation {
    pub path: String,
    pub line: usize,
}

impl SourceLocation {
    pub fn new(path: impl Into<String>, line: usize) -> Self {
        Self {
            path: path.into(),
            line: line.max(1),
        }
    }
}

impl std::fmt::Display for SourceLocation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.path, self.line)
    }
}

/// One `# key` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    pub key: String,
    pub value: String,
    /// Line of the `# key` heading (1-based).
    pub line: usize,
    /// Line on which the first line of `value` sits. Equals `line` for empty values.
    pub value_line: usize,
}

/// Ordered fields of one document, keys unique.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FieldMap {
    entries: Vec<Field>,
}

impl FieldMap {
    pub fn get(&self, key: &str) -> Option<&Field> {
        self.entries.iter().find(|f| f.key == key)
    }

    pub fn value(&self, key: &str) -> Option<&str> {
        self.get(key).map(|f| f.value.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Field> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(key, value)` pairs in file order.
    pub fn pairs(&self) -> Vec<(&str, &str)> {
        self.entries
            .iter()
            .map(|f| (f.key.as_str(), f.value.as_str()))
            .collect()
    }

    /// Builds a map directly from pairs, as if each field sat on its own line.
    /// Fails on repeated keys.
    pub fn from_pairs<K, V>(pairs: impl IntoIterator<Item = (K, V)>) -> Result<Self, CodecError>
    where
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let mut text = String::new();
        for (k, v) in pairs {
            let _ = writeln!(text, "# {}\n{}", k.as_ref(), v.as_ref());
        }
        parse_document(&text).map_err(|mut errs| errs.remove(0))
    }
}

/// A format violation inside one file. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("input is not valid UTF-8 (line {line})")]
    InvalidEncoding { line: usize },
    #[error("text before the first field heading")]
    PreambleContent { line: usize },
    #[error("field heading without a key")]
    EmptyKey { line: usize },
    #[error("field `{key}` appears more than once")]
    DuplicateField { key: String, line: usize },
    #[error("required field `{0}` is missing")]
    MissingField(&'static str),
    #[error("required field `{key}` is empty")]
    EmptyField { key: String, line: usize },
    #[error("`{token}` is not a valid tag (expected lowercase kebab-case)")]
    MalformedTag { token: String, line: usize },
    #[error("`{value}` in field `{key}` is not a valid slug")]
    MalformedSlug {
        key: &'static str,
        value: String,
        line: usize,
    },
    #[error("reduction `{slug}` goes from a problem to itself")]
    SelfLoop { slug: String, line: usize },
    #[error("field `{key}`: {source}")]
    InvalidValue {
        key: &'static str,
        line: usize,
        source: ModelError,
    },
}

impl CodecError {
    /// Line the error points at; whole-file errors point at line 1.
    pub fn line(&self) -> usize {
        match self {
            Self::MissingField(_) => 1,
            Self::InvalidEncoding { line }
            | Self::PreambleContent { line }
            | Self::EmptyKey { line }
            | Self::DuplicateField { line, .. }
            | Self::EmptyField { line, .. }
            | Self::MalformedTag { line, .. }
            | Self::MalformedSlug { line, .. }
            | Self::SelfLoop { line, .. }
            | Self::InvalidValue { line, .. } => *line,
        }
    }
}

/// A field the reader does not know. Reported, never fatal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownField {
    pub key: String,
    pub line: usize,
}

/// A decoded value plus the unknown fields found next to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<UnknownField>,
}

/// Which schema a file follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DocumentKind {
    Problem,
    Reduction,
    Manifest,
}

impl DocumentKind {
    pub fn known_keys(self) -> &'static [&'static str] {
        match self {
            Self::Problem => &[
                "name",
                "abbreviation",
                "alternative-names",
                "description",
                "complexity",
                "references",
            ],
            Self::Reduction => &["from", "to", "description", "properties", "references"],
            Self::Manifest => &["display-name", "problem-tags", "reduction-tags"],
        }
    }
}

/// Decodes bytes, reporting the line of the first invalid sequence.
pub fn decode_utf8(bytes: &[u8]) -> Result<&str, CodecError> {
    std::str::from_utf8(bytes).map_err(|e| {
        let valid = &bytes[..e.valid_up_to()];
        CodecError::InvalidEncoding {
            line: 1 + valid.iter().filter(|&&b| b == b'\n').count(),
        }
    })
}

/// Splits a document into its fields.
///
/// All structural errors in the document are returned, in line order.
pub fn parse_document(text: &str) -> Result<FieldMap, Vec<CodecError>> {
    struct Open {
        key: String,
        line: usize,
        body: Vec<(usize, String)>,
        discard: bool,
    }

    fn close(open: Open) -> Field {
        let first = open.body.iter().position(|(_, l)| !l.trim().is_empty());
        let value_line = first.map_or(open.line, |i| open.body[i].0);
        let raw: Vec<&str> = open.body.iter().map(|(_, l)| l.as_str()).collect();
        Field {
            key: open.key,
            value: normalize_block(&raw.join("\n")),
            line: open.line,
            value_line,
        }
    }

    let mut errors = Vec::new();
    let mut fields: Vec<Field> = Vec::new();
    let mut current: Option<Open> = None;

    // A trailing newline does not start another line.
    let body = text.strip_suffix('\n').unwrap_or(text);
    if !text.is_empty() {
        for (idx, raw) in body.split('\n').enumerate() {
            let line_no = idx + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if is_heading_line(line) {
                if let Some(open) = current.take().filter(|o| !o.discard) {
                    fields.push(close(open));
                }
                let key = line[1..].trim().to_lowercase();
                let mut discard = false;
                if key.is_empty() {
                    errors.push(CodecError::EmptyKey { line: line_no });
                    discard = true;
                } else if fields.iter().any(|f| f.key == key) {
                    errors.push(CodecError::DuplicateField {
                        key: key.clone(),
                        line: line_no,
                    });
                    discard = true;
                }
                current = Some(Open {
                    key,
                    line: line_no,
                    body: Vec::new(),
                    discard,
                });
            } else if let Some(open) = current.as_mut() {
                open.body.push((line_no, line.to_owned()));
            } else if !line.trim().is_empty() {
                // Only the first preamble line is reported.
                if !errors
                    .iter()
                    .any(|e| matches!(e, CodecError::PreambleContent { .. }))
                {
                    errors.push(CodecError::PreambleContent { line: line_no });
                }
            }
        }
    }
    if let Some(open) = current.take().filter(|o| !o.discard) {
        fields.push(close(open));
    }

    if errors.is_empty() {
        Ok(FieldMap { entries: fields })
    } else {
        Err(errors)
    }
}

/// [`parse_document`] over raw bytes.
pub fn parse_document_bytes(bytes: &[u8]) -> Result<FieldMap, Vec<CodecError>> {
    parse_document(decode_utf8(bytes).map_err(|e| vec![e])?)
}

fn unknown_fields(fields: &FieldMap, kind: DocumentKind) -> Vec<UnknownField> {
    let known = kind.known_keys();
    fields
        .iter()
        .filter(|f| !known.contains(&f.key.as_str()))
        .map(|f| UnknownField {
            key: f.key.clone(),
            line: f.line,
        })
        .collect()
}

fn required<'a>(
    fields: &'a FieldMap,
    key: &'static str,
    errors: &mut Vec<CodecError>,
) -> Option<&'a Field> {
    match fields.get(key) {
        None => {
            errors.push(CodecError::MissingField(key));
            None
        }
        Some(f) if f.value.trim().is_empty() => {
            errors.push(CodecError::EmptyField {
                key: key.to_owned(),
                line: f.line,
            });
            None
        }
        Some(f) => Some(f),
    }
}

/// Non-blank lines of a field, trimmed, with their line numbers.
pub(crate) fn list_lines(field: &Field) -> impl Iterator<Item = (usize, &str)> {
    field
        .value
        .split('\n')
        .enumerate()
        .map(move |(i, l)| (field.value_line + i, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn tag_list(fields: &FieldMap, key: &str, errors: &mut Vec<CodecError>) -> BTreeSet<Tag> {
    let mut out = BTreeSet::new();
    if let Some(field) = fields.get(key) {
        for (line, token) in list_lines(field) {
            match Tag::new(token) {
                Ok(tag) => {
                    out.insert(tag);
                }
                Err(_) => errors.push(CodecError::MalformedTag {
                    token: token.to_owned(),
                    line,
                }),
            }
        }
    }
    out
}

fn invalid<'a>(
    key: &'static str,
    fields: &'a FieldMap,
) -> impl FnOnce(ModelError) -> CodecError + 'a {
    move |source| CodecError::InvalidValue {
        key,
        line: fields.get(key).map_or(1, |f| f.value_line),
        source,
    }
}

/// Reads a problem from its fields.
///
/// Keys: `name` and `abbreviation` (required), `alternative-names` (one per
/// line), `description`, `complexity` (one tag per line), `references`.
pub fn parse_problem(
    fields: &FieldMap,
    slug: Slug,
    network: NetworkId,
) -> Result<Parsed<Problem>, Vec<CodecError>> {
    let mut errors = Vec::new();
    let name = required(fields, "name", &mut errors);
    let abbreviation = required(fields, "abbreviation", &mut errors);
    let completeness = tag_list(fields, "complexity", &mut errors);
    let (Some(name), Some(abbreviation)) = (name, abbreviation) else {
        return Err(errors);
    };

    let build = || -> Result<Problem, CodecError> {
        let mut problem =
            Problem::new(slug, network, &name.value, &abbreviation.value).map_err(|e| {
                let key = match e {
                    ModelError::Empty { field }
                    | ModelError::MultiLine { field }
                    | ModelError::HeadingInText { field, .. } => field,
                    _ => "name",
                };
                invalid(key, fields)(e)
            })?;
        if let Some(alts) = fields.get("alternative-names") {
            let names: Vec<&str> = list_lines(alts).map(|(_, l)| l).collect();
            problem = problem
                .with_alternative_names(names)
                .map_err(invalid("alternative-names", fields))?;
        }
        if let Some(desc) = fields.value("description") {
            problem = problem
                .with_description(desc)
                .map_err(invalid("description", fields))?;
        }
        if let Some(refs) = fields.value("references") {
            problem = problem
                .with_references(refs)
                .map_err(invalid("references", fields))?;
        }
        Ok(problem.with_completeness(completeness))
    };

    match build() {
        Ok(problem) if errors.is_empty() => Ok(Parsed {
            value: problem,
            warnings: unknown_fields(fields, DocumentKind::Problem),
        }),
        Ok(_) => Err(errors),
        Err(e) => {
            errors.push(e);
            Err(errors)
        }
    }
}

fn slug_field(fields: &FieldMap, key: &'static str, errors: &mut Vec<CodecError>) -> Option<Slug> {
    let field = required(fields, key, errors)?;
    let value = field.value.trim();
    match Slug::new(value) {
        Ok(slug) => Some(slug),
        Err(_) => {
            errors.push(CodecError::MalformedSlug {
                key,
                value: value.to_owned(),
                line: field.value_line,
            });
            None
        }
    }
}

/// Reads a reduction from its fields.
///
/// Keys: `from` and `to` (required slugs), `description`, `properties` (one tag
/// per line), `references`. Endpoints are checked lexically only.
pub fn parse_reduction(
    fields: &FieldMap,
    slug: Slug,
    network: NetworkId,
) -> Result<Parsed<Reduction>, Vec<CodecError>> {
    let mut errors = Vec::new();
    let from = slug_field(fields, "from", &mut errors);
    let to = slug_field(fields, "to", &mut errors);
    let properties = tag_list(fields, "properties", &mut errors);
    let (Some(from), Some(to)) = (from, to) else {
        return Err(errors);
    };
    if from == to {
        errors.push(CodecError::SelfLoop {
            slug: slug.to_string(),
            line: fields.get("to").map_or(1, |f| f.value_line),
        });
        return Err(errors);
    }

    let build = || -> Result<Reduction, CodecError> {
        let mut reduction =
            Reduction::new(slug, network, from, to).map_err(invalid("to", fields))?;
        if let Some(desc) = fields.value("description") {
            reduction = reduction
                .with_description(desc)
                .map_err(invalid("description", fields))?;
        }
        if let Some(refs) = fields.value("references") {
            reduction = reduction
                .with_references(refs)
                .map_err(invalid("references", fields))?;
        }
        Ok(reduction.with_properties(properties))
    };

    match build() {
        Ok(reduction) if errors.is_empty() => Ok(Parsed {
            value: reduction,
            warnings: unknown_fields(fields, DocumentKind::Reduction),
        }),
        Ok(_) => Err(errors),
        Err(e) => {
            errors.push(e);
            Err(errors)
        }
    }
}

/// Reads a network manifest: `display-name` (required), `problem-tags`,
/// `reduction-tags`.
pub fn parse_manifest(
    fields: &FieldMap,
    network: NetworkId,
) -> Result<Parsed<NetworkManifest>, Vec<CodecError>> {
    let mut errors = Vec::new();
    let display = required(fields, "display-name", &mut errors);
    let problem_tags = tag_list(fields, "problem-tags", &mut errors);
    let reduction_tags = tag_list(fields, "reduction-tags", &mut errors);
    let Some(display) = display else {
        return Err(errors);
    };
    match NetworkManifest::new(network, &display.value, problem_tags, reduction_tags) {
        Ok(manifest) if errors.is_empty() => Ok(Parsed {
            value: manifest,
            warnings: unknown_fields(fields, DocumentKind::Manifest),
        }),
        Ok(_) => Err(errors),
        Err(e) => {
            errors.push(CodecError::InvalidValue {
                key: "display-name",
                line: display.value_line,
                source: e,
            });
            Err(errors)
        }
    }
}

fn push_field(out: &mut String, key: &str, value: &str) {
    if !out.is_empty() {
        out.push('\n');
    }
    out.push_str("# ");
    out.push_str(key);
    out.push('\n');
    out.push_str(value);
    out.push('\n');
}

fn push_optional(out: &mut String, key: &str, value: &str) {
    if !value.is_empty() {
        push_field(out, key, value);
    }
}

fn join_tags<'a>(tags: impl IntoIterator<Item = &'a Tag>) -> String {
    tags.into_iter()
        .map(Tag::as_str)
        .collect::<Vec<_>>()
        .join("\n")
}

/// Canonical text of a problem file. Tags are written in sorted order and empty
/// optional fields are left out.
pub fn serialize_problem(p: &Problem) -> String {
    let mut out = String::new();
    push_field(&mut out, "name", p.name());
    push_field(&mut out, "abbreviation", p.abbreviation());
    push_optional(
        &mut out,
        "alternative-names",
        &p.alternative_names().join("\n"),
    );
    push_optional(&mut out, "description", p.description());
    push_optional(&mut out, "complexity", &join_tags(p.completeness()));
    push_optional(&mut out, "references", p.references());
    out
}

/// Canonical text of a reduction file.
pub fn serialize_reduction(r: &Reduction) -> String {
    let mut out = String::new();
    push_field(&mut out, "from", r.from_problem().as_str());
    push_field(&mut out, "to", r.to_problem().as_str());
    push_optional(&mut out, "description", r.description());
    push_optional(&mut out, "properties", &join_tags(r.properties()));
    push_optional(&mut out, "references", r.references());
    out
}

/// Canonical text of a `network.md` manifest.
pub fn serialize_manifest(m: &NetworkManifest) -> String {
    let mut out = String::new();
    push_field(&mut out, "display-name", m.display_name());
    push_optional(&mut out, "problem-tags", &join_tags(m.problem_tags()));
    push_optional(&mut out, "reduction-tags", &join_tags(m.reduction_tags()));
    out
}

/// True for a lexically valid tag token.
pub fn is_valid_tag(token: &str) -> bool {
    is_kebab_case(token)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net() -> NetworkId {
        NetworkId::new("classic").unwrap()
    }

    fn slug(s: &str) -> Slug {
        Slug::new(s).unwrap()
    }

    fn fields(pairs: &[(&str, &str)]) -> FieldMap {
        FieldMap::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn single_field_document() {
        let map = parse_document("# name\nVertex Cover\n").unwrap();
        assert_eq!(map.pairs(), [("name", "Vertex Cover")]);
    }

    #[test]
    fn empty_document_has_no_fields() {
        assert!(parse_document("").unwrap().is_empty());
        assert!(parse_document("\n\n  \n").unwrap().is_empty());
    }

    #[test]
    fn deeper_headings_stay_in_the_value() {
        let map = parse_document("# name\nA\n\n# abbreviation\nVC\n## note\nx\n").unwrap();
        assert_eq!(
            map.pairs(),
            [("name", "A"), ("abbreviation", "VC\n## note\nx")]
        );
    }

    #[test]
    fn keys_are_trimmed_and_lowercased() {
        let map = parse_document("#   Alternative-Names  \nSAT\n").unwrap();
        assert_eq!(map.pairs(), [("alternative-names", "SAT")]);
    }

    #[test]
    fn hash_without_space_is_content() {
        let map = parse_document("# description\n#hashtag\n#\tx\n").unwrap();
        assert_eq!(map.value("description"), Some("#hashtag\n#\tx"));
    }

    #[test]
    fn duplicate_field_reports_second_heading() {
        let errs = parse_document("# name\nA\n# name\nB\n").unwrap_err();
        assert_eq!(
            errs,
            [CodecError::DuplicateField {
                key: "name".into(),
                line: 3
            }]
        );
    }

    #[test]
    fn preamble_is_rejected() {
        let errs = parse_document("\nhello\nworld\n# name\nA\n").unwrap_err();
        assert_eq!(errs, [CodecError::PreambleContent { line: 2 }]);
    }

    #[test]
    fn heading_without_key() {
        let errs = parse_document("# \nA\n").unwrap_err();
        assert_eq!(errs, [CodecError::EmptyKey { line: 1 }]);
        let map = parse_document("# description\n#\nA\n").unwrap();
        assert_eq!(map.value("description"), Some("#\nA"));
    }

    #[test]
    fn invalid_utf8_points_at_line() {
        let errs = parse_document_bytes(b"# name\nA\n# description\n\xff\xfe\n").unwrap_err();
        assert_eq!(errs, [CodecError::InvalidEncoding { line: 4 }]);
    }

    #[test]
    fn crlf_and_lf_agree() {
        let lf = "# name\nA\n\n# description\nx\n\ny\n";
        let crlf = lf.replace('\n', "\r\n");
        assert_eq!(parse_document(lf).unwrap(), parse_document(&crlf).unwrap());
    }

    #[test]
    fn value_lines_are_tracked() {
        let map = parse_document("# name\n\n\nA\n# complexity\nnp-complete\n").unwrap();
        let name = map.get("name").unwrap();
        assert_eq!((name.line, name.value_line), (1, 4));
        let tags = map.get("complexity").unwrap();
        assert_eq!((tags.line, tags.value_line), (5, 6));
    }

    #[test]
    fn problem_from_fields() {
        let f = fields(&[
            ("name", "Vertex Cover"),
            ("abbreviation", "VC"),
            ("complexity", "np-complete"),
        ]);
        let p = parse_problem(&f, slug("vertex-cover"), net()).unwrap();
        assert!(p.warnings.is_empty());
        assert_eq!(p.value.name(), "Vertex Cover");
        assert_eq!(p.value.abbreviation(), "VC");
        assert_eq!(
            p.value
                .completeness()
                .iter()
                .map(Tag::as_str)
                .collect::<Vec<_>>(),
            ["np-complete"]
        );
    }

    #[test]
    fn problem_missing_name() {
        let f = fields(&[("abbreviation", "VC")]);
        let errs = parse_problem(&f, slug("vc"), net()).unwrap_err();
        assert_eq!(errs, [CodecError::MissingField("name")]);
    }

    #[test]
    fn problem_empty_required_field() {
        let f = fields(&[("name", "  "), ("abbreviation", "VC")]);
        let errs = parse_problem(&f, slug("vc"), net()).unwrap_err();
        assert_eq!(
            errs,
            [CodecError::EmptyField {
                key: "name".into(),
                line: 1
            }]
        );
    }

    #[test]
    fn problem_alternative_names_split_per_line() {
        let f = fields(&[
            ("name", "Satisfiability"),
            ("abbreviation", "SAT"),
            ("alternative-names", "SAT\n\n  Boolean Satisfiability \n"),
        ]);
        let p = parse_problem(&f, slug("satisfiability"), net())
            .unwrap()
            .value;
        assert_eq!(p.alternative_names(), ["SAT", "Boolean Satisfiability"]);
    }

    #[test]
    fn problem_malformed_tag_has_line() {
        let doc = "# name\nA\n# abbreviation\nB\n# complexity\nnp-complete\nNP Hard\n";
        let f = parse_document(doc).unwrap();
        let errs = parse_problem(&f, slug("a"), net()).unwrap_err();
        assert_eq!(
            errs,
            [CodecError::MalformedTag {
                token: "NP Hard".into(),
                line: 7
            }]
        );
    }

    #[test]
    fn problem_unknown_fields_are_warnings() {
        let doc = "# name\nA\n# abbreviation\nB\n# video\nhttps://example.org\n";
        let p = parse_problem(&parse_document(doc).unwrap(), slug("a"), net()).unwrap();
        assert_eq!(
            p.warnings,
            [UnknownField {
                key: "video".into(),
                line: 5
            }]
        );
    }

    #[test]
    fn reduction_from_fields() {
        let f = fields(&[
            ("from", "3-satisfiability"),
            ("to", "vertex-cover"),
            ("properties", "parsimonious"),
        ]);
        let r = parse_reduction(&f, slug("3-satisfiability-to-vertex-cover"), net())
            .unwrap()
            .value;
        assert_eq!(r.from_problem().as_str(), "3-satisfiability");
        assert_eq!(r.to_problem().as_str(), "vertex-cover");
        assert!(r.properties().contains("parsimonious"));
    }

    #[test]
    fn reduction_missing_to() {
        let errs = parse_reduction(&fields(&[("from", "a")]), slug("r"), net()).unwrap_err();
        assert_eq!(errs, [CodecError::MissingField("to")]);
    }

    #[test]
    fn reduction_self_loop() {
        let errs =
            parse_reduction(&fields(&[("from", "a"), ("to", "a")]), slug("r"), net()).unwrap_err();
        assert!(matches!(errs.as_slice(), [CodecError::SelfLoop { .. }]));
    }

    #[test]
    fn reduction_endpoint_must_be_slug() {
        let errs = parse_reduction(
            &fields(&[("from", "Vertex Cover"), ("to", "a")]),
            slug("r"),
            net(),
        )
        .unwrap_err();
        assert!(matches!(
            errs.as_slice(),
            [CodecError::MalformedSlug { key: "from", .. }]
        ));
    }

    #[test]
    fn manifest_variants() {
        let m = parse_manifest(
            &fields(&[
                ("display-name", "Classical"),
                ("problem-tags", "np-complete\nsharp-p-complete"),
            ]),
            net(),
        )
        .unwrap()
        .value;
        assert_eq!(m.problem_tags().len(), 2);
        assert!(m.reduction_tags().is_empty());

        let errs = parse_manifest(&FieldMap::default(), net()).unwrap_err();
        assert_eq!(errs, [CodecError::MissingField("display-name")]);

        let m = parse_manifest(
            &fields(&[("display-name", "Parameterized"), ("reduction-tags", "")]),
            net(),
        )
        .unwrap()
        .value;
        assert!(m.reduction_tags().is_empty());
    }

    #[test]
    fn serialize_minimal_problem() {
        let p = Problem::new(slug("vertex-cover"), net(), "Vertex Cover", "VC").unwrap();
        assert_eq!(
            serialize_problem(&p),
            "# name\nVertex Cover\n\n# abbreviation\nVC\n"
        );
    }

    #[test]
    fn serialize_reduction_sorts_tags() {
        let r = Reduction::new(slug("r"), net(), slug("a"), slug("b"))
            .unwrap()
            .with_properties([Tag::new("ssp").unwrap(), Tag::new("parsimonious").unwrap()]);
        assert_eq!(
            serialize_reduction(&r),
            "# from\na\n\n# to\nb\n\n# properties\nparsimonious\nssp\n"
        );
    }

    #[test]
    fn manifest_round_trip() {
        let m = NetworkManifest::new(
            net(),
            "Classical",
            [Tag::new("np-complete").unwrap()],
            [Tag::new("ssp").unwrap(), Tag::new("parsimonious").unwrap()],
        )
        .unwrap();
        let text = serialize_manifest(&m);
        let back = parse_manifest(&parse_document(&text).unwrap(), net())
            .unwrap()
            .value;
        assert_eq!(back, m);
    }
}

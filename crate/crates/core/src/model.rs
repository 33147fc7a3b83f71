//! Domain types shared by the codec, the validator and the store.
//!
//! Every constructor checks the invariants of its type and names the offending
//! field on failure. Values are immutable once built.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Violation of a domain invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{field}: `{value}` is not a lowercase kebab-case identifier")]
    NotKebabCase { field: &'static str, value: String },
    #[error("{field}: must not be empty")]
    Empty { field: &'static str },
    #[error("{field}: `{value}` is listed more than once")]
    Duplicate { field: &'static str, value: String },
    #[error("alternative-names: `{0}` repeats the main name")]
    AlternativeIsName(String),
    #[error("{field}: line {line} would be read back as a field heading")]
    HeadingInText { field: &'static str, line: usize },
    #[error("{field}: must fit on one line")]
    MultiLine { field: &'static str },
    #[error("reduction `{0}` starts and ends at the same problem")]
    SelfLoop(String),
}

/// Returns true when `s` matches `[a-z0-9]+(-[a-z0-9]+)*`.
pub fn is_kebab_case(s: &str) -> bool {
    !s.is_empty()
        && s.split('-').all(|part| {
            !part.is_empty()
                && part
                    .bytes()
                    .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
        })
}

fn kebab(field: &'static str, value: &str) -> Result<String, ModelError> {
    if is_kebab_case(value) {
        Ok(value.to_owned())
    } else {
        Err(ModelError::NotKebabCase {
            field,
            value: value.to_owned(),
        })
    }
}

macro_rules! kebab_newtype {
    ($(#[$meta:meta])* $name:ident, $field:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub struct $name(String);

        impl $name {
            pub fn new(value: impl AsRef<str>) -> Result<Self, ModelError> {
                kebab($field, value.as_ref()).map(Self)
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }

        impl std::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl TryFrom<String> for $name {
            type Error = ModelError;

            fn try_from(value: String) -> Result<Self, Self::Error> {
                Self::new(value)
            }
        }

        impl From<$name> for String {
            fn from(value: $name) -> String {
                value.0
            }
        }

        impl std::str::FromStr for $name {
            type Err = ModelError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                Self::new(s)
            }
        }
    };
}

kebab_newtype!(
    /// Identifier of a problem or reduction, taken from its file name.
    Slug,
    "slug"
);

kebab_newtype!(
    /// Identifier of a network, taken from its top-level directory name.
    NetworkId,
    "network"
);

kebab_newtype!(
    /// A completeness tag on a problem or a property tag on a reduction.
    Tag,
    "tag"
);

/// Tags attached to problems (completeness classes).
pub type ProblemTag = Tag;
/// Tags attached to reductions (reduction properties).
pub type ReductionTag = Tag;

impl Slug {
    /// Derives a slug from a `*.md` file name. The stem must already be kebab-case.
    pub fn from_file_name(path: &Path) -> Result<Self, ModelError> {
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default();
        let stem = name.strip_suffix(".md").unwrap_or(name);
        Self::new(stem)
    }
}

/// Normalizes a free-text block the way the file format reads it back:
/// CR before LF dropped, leading and trailing blank lines removed.
pub(crate) fn normalize_block(text: &str) -> String {
    let lines: Vec<&str> = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .collect();
    let first = lines.iter().position(|l| !l.trim().is_empty());
    let last = lines.iter().rposition(|l| !l.trim().is_empty());
    match (first, last) {
        (Some(first), Some(last)) => lines[first..=last].join("\n"),
        _ => String::new(),
    }
}

/// True when a line opens a field in the Markdown format.
pub(crate) fn is_heading_line(line: &str) -> bool {
    line.starts_with("# ")
}

fn text_block(field: &'static str, text: &str) -> Result<String, ModelError> {
    let text = normalize_block(text);
    if let Some(idx) = text.split('\n').position(is_heading_line) {
        return Err(ModelError::HeadingInText {
            field,
            line: idx + 1,
        });
    }
    Ok(text)
}

fn single_line(field: &'static str, text: &str) -> Result<String, ModelError> {
    let text = text_block(field, text)?;
    let text = text.trim();
    if text.is_empty() {
        return Err(ModelError::Empty { field });
    }
    if text.contains('\n') {
        return Err(ModelError::MultiLine { field });
    }
    if is_heading_line(text) {
        return Err(ModelError::HeadingInText { field, line: 1 });
    }
    Ok(text.to_owned())
}

/// One computational problem in one network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Problem {
    slug: Slug,
    network: NetworkId,
    name: String,
    abbreviation: String,
    alternative_names: Vec<String>,
    description: String,
    completeness: BTreeSet<ProblemTag>,
    references: String,
}

impl Problem {
    /// Builds a problem with only the required fields set.
    ///
    /// `name` and `abbreviation` are trimmed and must be non-empty.
    pub fn new(
        slug: Slug,
        network: NetworkId,
        name: &str,
        abbreviation: &str,
    ) -> Result<Self, ModelError> {
        Ok(Self {
            slug,
            network,
            name: single_line("name", name)?,
            abbreviation: single_line("abbreviation", abbreviation)?,
            alternative_names: Vec::new(),
            description: String::new(),
            completeness: BTreeSet::new(),
            references: String::new(),
        })
    }

    pub fn with_alternative_names<I, S>(mut self, names: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out: Vec<String> = Vec::new();
        for raw in names {
            let alt = single_line("alternative-names", raw.as_ref())?;
            if alt == self.name {
                return Err(ModelError::AlternativeIsName(alt));
            }
            if out.contains(&alt) {
                return Err(ModelError::Duplicate {
                    field: "alternative-names",
                    value: alt,
                });
            }
            out.push(alt);
        }
        self.alternative_names = out;
        Ok(self)
    }

    pub fn with_description(mut self, description: &str) -> Result<Self, ModelError> {
        self.description = text_block("description", description)?;
        Ok(self)
    }

    pub fn with_completeness(mut self, tags: impl IntoIterator<Item = ProblemTag>) -> Self {
        self.completeness = tags.into_iter().collect();
        self
    }

    pub fn with_references(mut self, references: &str) -> Result<Self, ModelError> {
        self.references = text_block("references", references)?;
        Ok(self)
    }

    pub fn slug(&self) -> &Slug {
        &self.slug
    }

    pub fn network(&self) -> &NetworkId {
        &self.network
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Short label used for the vertex in the network view.
    pub fn abbreviation(&self) -> &str {
        &self.abbreviation
    }

    pub fn alternative_names(&self) -> &[String] {
        &self.alternative_names
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn completeness(&self) -> &BTreeSet<ProblemTag> {
        &self.completeness
    }

    /// Raw BibTeX.
    pub fn references(&self) -> &str {
        &self.references
    }
}

/// A directed reduction between two problems of the same network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    slug: Slug,
    network: NetworkId,
    #[serde(rename = "from")]
    from_problem: Slug,
    #[serde(rename = "to")]
    to_problem: Slug,
    description: String,
    properties: BTreeSet<ReductionTag>,
    references: String,
}

impl Reduction {
    /// Fails with [`ModelError::SelfLoop`] when both endpoints are the same problem.
    pub fn new(
        slug: Slug,
        network: NetworkId,
        from_problem: Slug,
        to_problem: Slug,
    ) -> Result<Self, ModelError> {
        if from_problem == to_problem {
            return Err(ModelError::SelfLoop(slug.0));
        }
        Ok(Self {
            slug,
            network,
            from_problem,
            to_problem,
            description: String::new(),
            properties: BTreeSet::new(),
            references: String::new(),
        })
    }

    pub fn with_description(mut self, description: &str) -> Result<Self, ModelError> {
        self.description = text_block("description", description)?;
        Ok(self)
    }

    pub fn with_properties(mut self, tags: impl IntoIterator<Item = ReductionTag>) -> Self {
        self.properties = tags.into_iter().collect();
        self
    }

    pub fn with_references(mut self, references: &str) -> Result<Self, ModelError> {
        self.references = text_block("references", references)?;
        Ok(self)
    }

    pub fn slug(&self) -> &Slug {
        &self.slug
    }

    pub fn network(&self) -> &NetworkId {
        &self.network
    }

    pub fn from_problem(&self) -> &Slug {
        &self.from_problem
    }

    pub fn to_problem(&self) -> &Slug {
        &self.to_problem
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn properties(&self) -> &BTreeSet<ReductionTag> {
        &self.properties
    }

    pub fn references(&self) -> &str {
        &self.references
    }
}

/// Per-network display name and tag vocabularies, read from `network.md`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetworkManifest {
    network: NetworkId,
    display_name: String,
    problem_tags: BTreeSet<ProblemTag>,
    reduction_tags: BTreeSet<ReductionTag>,
}

impl NetworkManifest {
    pub fn new(
        network: NetworkId,
        display_name: &str,
        problem_tags: impl IntoIterator<Item = ProblemTag>,
        reduction_tags: impl IntoIterator<Item = ReductionTag>,
    ) -> Result<Self, ModelError> {
        Ok(Self {
            network,
            display_name: single_line("display-name", display_name)?,
            problem_tags: problem_tags.into_iter().collect(),
            reduction_tags: reduction_tags.into_iter().collect(),
        })
    }

    pub fn network(&self) -> &NetworkId {
        &self.network
    }

    pub fn display_name(&self) -> &str {
        &self.display_name
    }

    pub fn problem_tags(&self) -> &BTreeSet<ProblemTag> {
        &self.problem_tags
    }

    pub fn reduction_tags(&self) -> &BTreeSet<ReductionTag> {
        &self.reduction_tags
    }
}

/// Selection of problem and reduction tags. Empty on both sides means no filtering.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FilterSpec {
    pub problem_tags: BTreeSet<ProblemTag>,
    pub reduction_tags: BTreeSet<ReductionTag>,
}

impl FilterSpec {
    pub fn new(
        problem_tags: impl IntoIterator<Item = ProblemTag>,
        reduction_tags: impl IntoIterator<Item = ReductionTag>,
    ) -> Self {
        Self {
            problem_tags: problem_tags.into_iter().collect(),
            reduction_tags: reduction_tags.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.problem_tags.is_empty() && self.reduction_tags.is_empty()
    }
}

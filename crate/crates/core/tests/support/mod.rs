//! Test-only oracles that read corpus files without the crate's codec, plus
//! helpers for copying the fixture and seeding defects into it.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use regex::Regex;

pub fn fixture_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/corpus")
}

/// Splits a document on lines matching `^# ` and trims blank lines off each block.
pub fn raw_split(text: &str) -> Vec<(String, String)> {
    let heading = Regex::new(r"^# (.*)$").unwrap();
    let mut out: Vec<(String, Vec<String>)> = Vec::new();
    for line in text.lines() {
        if let Some(c) = heading.captures(line) {
            out.push((c[1].trim().to_lowercase(), Vec::new()));
        } else if let Some(last) = out.last_mut() {
            last.1.push(line.to_string());
        }
    }
    out.into_iter()
        .map(|(k, lines)| {
            let mut lines: Vec<String> = lines;
            while lines.first().is_some_and(|l| l.trim().is_empty()) {
                lines.remove(0);
            }
            while lines.last().is_some_and(|l| l.trim().is_empty()) {
                lines.pop();
            }
            (k, lines.join("\n"))
        })
        .collect()
}

fn lines_of(fields: &[(String, String)], key: &str) -> Vec<String> {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| {
            v.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(String::from)
                .collect()
        })
        .unwrap_or_default()
}

fn single(fields: &[(String, String)], key: &str) -> String {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.trim().to_string())
        .unwrap_or_default()
}

#[derive(Debug, Clone)]
pub struct RawProblem {
    pub name: String,
    pub abbreviation: String,
    pub alternative_names: Vec<String>,
    pub tags: BTreeSet<String>,
}

#[derive(Debug, Clone)]
pub struct RawReduction {
    pub from: String,
    pub to: String,
    pub tags: BTreeSet<String>,
}

#[derive(Debug, Clone)]
pub struct RawNetwork {
    pub problem_vocabulary: BTreeSet<String>,
    pub reduction_vocabulary: BTreeSet<String>,
    pub problems: BTreeMap<String, RawProblem>,
    pub reductions: BTreeMap<String, RawReduction>,
}

fn md_files(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    if let Ok(entries) = fs::read_dir(dir) {
        for e in entries.flatten() {
            let p = e.path();
            if p.is_dir() {
                out.extend(md_files(&p));
            } else if p.extension().is_some_and(|x| x == "md") {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

fn stem(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

pub fn read_raw_network(root: &Path, network: &str) -> RawNetwork {
    let dir = root.join(network);
    let manifest = raw_split(&fs::read_to_string(dir.join("network.md")).unwrap());
    let problems = md_files(&dir.join("problems"))
        .into_iter()
        .map(|p| {
            let f = raw_split(&fs::read_to_string(&p).unwrap());
            (
                stem(&p),
                RawProblem {
                    name: single(&f, "name"),
                    abbreviation: single(&f, "abbreviation"),
                    alternative_names: lines_of(&f, "alternative-names"),
                    tags: lines_of(&f, "complexity").into_iter().collect(),
                },
            )
        })
        .collect();
    let reductions = md_files(&dir.join("reductions"))
        .into_iter()
        .map(|p| {
            let f = raw_split(&fs::read_to_string(&p).unwrap());
            (
                stem(&p),
                RawReduction {
                    from: single(&f, "from"),
                    to: single(&f, "to"),
                    tags: lines_of(&f, "properties").into_iter().collect(),
                },
            )
        })
        .collect();
    RawNetwork {
        problem_vocabulary: lines_of(&manifest, "problem-tags").into_iter().collect(),
        reduction_vocabulary: lines_of(&manifest, "reduction-tags").into_iter().collect(),
        problems,
        reductions,
    }
}

/// Node and edge slugs of a filtered graph, computed by direct set comprehension.
pub fn oracle_graph(
    net: &RawNetwork,
    problem_tags: &BTreeSet<String>,
    reduction_tags: &BTreeSet<String>,
) -> (BTreeSet<String>, BTreeSet<String>) {
    if problem_tags.is_empty() && reduction_tags.is_empty() {
        return (
            net.problems.keys().cloned().collect(),
            net.reductions.keys().cloned().collect(),
        );
    }
    let tagged: BTreeSet<String> = net
        .problems
        .iter()
        .filter(|(_, p)| problem_tags.is_empty() || p.tags.iter().any(|t| problem_tags.contains(t)))
        .map(|(s, _)| s.clone())
        .collect();
    let edges: BTreeSet<String> = net
        .reductions
        .iter()
        .filter(|(_, r)| {
            if reduction_tags.is_empty() {
                tagged.contains(&r.from) && tagged.contains(&r.to)
            } else {
                reduction_tags.iter().all(|t| r.tags.contains(t))
            }
        })
        .map(|(s, _)| s.clone())
        .collect();
    let mut nodes = tagged;
    for e in &edges {
        nodes.insert(net.reductions[e].from.clone());
        nodes.insert(net.reductions[e].to.clone());
    }
    (nodes, edges)
}

/// Rank 0 exact main name, 1 exact alternative, 2 prefix, 3 substring.
pub fn oracle_search(net: &RawNetwork, query: &str) -> Vec<(String, u8)> {
    let q = query.trim().to_lowercase();
    let mut out: Vec<(String, u8)> = Vec::new();
    for (slug, p) in &net.problems {
        let mut names = vec![(p.name.to_lowercase(), true)];
        names.extend(
            p.alternative_names
                .iter()
                .map(|a| (a.to_lowercase(), false)),
        );
        let best = names
            .iter()
            .filter_map(|(n, main)| {
                if *n == q {
                    Some(if *main { 0 } else { 1 })
                } else if n.starts_with(&q) {
                    Some(2)
                } else if n.contains(&q) {
                    Some(3)
                } else {
                    None
                }
            })
            .min();
        if let Some(rank) = best {
            out.push((slug.clone(), rank));
        }
    }
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    out
}

/// All subsets of `items`.
pub fn power_set(items: &BTreeSet<String>) -> Vec<BTreeSet<String>> {
    let items: Vec<&String> = items.iter().collect();
    (0..1u32 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, s)| (*s).clone())
                .collect()
        })
        .collect()
}

pub fn copy_dir(src: &Path, dst: &Path) {
    fs::create_dir_all(dst).unwrap();
    for e in fs::read_dir(src).unwrap().flatten() {
        let target = dst.join(e.file_name());
        if e.path().is_dir() {
            copy_dir(&e.path(), &target);
        } else {
            fs::copy(e.path(), target).unwrap();
        }
    }
}

/// A fresh copy of the fixture in a temporary directory.
pub fn fixture_copy() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&fixture_root(), dir.path());
    dir
}

/// Single defects that can be seeded into the fixture. The first six are the
/// error classes the linter must detect one-for-one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Defect {
    MissingField,
    DuplicateField,
    DuplicateSlug,
    DanglingEndpoint,
    UnknownTag,
    BadDirectory,
    SelfLoop,
    MalformedTag,
    Preamble,
    UnknownField,
    StrayFile,
}

impl Defect {
    pub const ERROR_CLASSES: [Defect; 6] = [
        Defect::MissingField,
        Defect::DuplicateField,
        Defect::DuplicateSlug,
        Defect::DanglingEndpoint,
        Defect::UnknownTag,
        Defect::BadDirectory,
    ];

    pub const ALL: [Defect; 11] = [
        Defect::MissingField,
        Defect::DuplicateField,
        Defect::DuplicateSlug,
        Defect::DanglingEndpoint,
        Defect::UnknownTag,
        Defect::BadDirectory,
        Defect::SelfLoop,
        Defect::MalformedTag,
        Defect::Preamble,
        Defect::UnknownField,
        Defect::StrayFile,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Defect::MissingField => "missing-field",
            Defect::DuplicateField => "duplicate-field",
            Defect::DuplicateSlug => "duplicate-slug",
            Defect::DanglingEndpoint => "dangling-endpoint",
            Defect::UnknownTag => "unknown-tag",
            Defect::BadDirectory => "bad-directory",
            Defect::SelfLoop => "self-loop",
            Defect::MalformedTag => "malformed-tag",
            Defect::Preamble => "preamble-content",
            Defect::UnknownField => "unknown-field",
            Defect::StrayFile => "bad-directory",
        }
    }

    pub fn is_error(self) -> bool {
        !matches!(self, Defect::UnknownField | Defect::StrayFile)
    }

    /// Seeds the defect into the corpus at `root`. `variant` picks among
    /// equivalent targets so repeated seeding does not collide.
    pub fn seed(self, root: &Path, variant: usize) {
        let networks = ["classic", "parameterized", "approximation"];
        let net = networks[variant % networks.len()];
        let dir = root.join(net);
        let problems = md_files(&dir.join("problems"));
        let reductions = md_files(&dir.join("reductions"));
        let problem = &problems[variant % problems.len()];
        let reduction = &reductions[variant % reductions.len()];
        let n = variant;
        match self {
            Defect::MissingField => {
                let text = fs::read_to_string(problem).unwrap();
                let fields: Vec<_> = raw_split(&text)
                    .into_iter()
                    .filter(|(k, _)| k != "abbreviation")
                    .collect();
                fs::write(problem, render(&fields)).unwrap();
            }
            Defect::DuplicateField => {
                let mut text = fs::read_to_string(problem).unwrap();
                text.push_str("\n# name\nSecond Name\n");
                fs::write(problem, text).unwrap();
            }
            Defect::DuplicateSlug => {
                let category = dir.join("problems").join(format!("copied-{n}"));
                fs::create_dir_all(&category).unwrap();
                fs::copy(problem, category.join(problem.file_name().unwrap())).unwrap();
            }
            Defect::DanglingEndpoint => {
                fs::write(
                    dir.join("reductions").join(format!("dangling-{n}.md")),
                    format!("# from\n{}\n\n# to\nnonexistent-{n}\n", stem(problem)),
                )
                .unwrap();
            }
            Defect::UnknownTag => {
                let mut text = fs::read_to_string(reduction).unwrap();
                if raw_split(&text).iter().any(|(k, _)| k == "properties") {
                    let fields: Vec<_> = raw_split(&text)
                        .into_iter()
                        .map(|(k, v)| {
                            if k == "properties" {
                                (k, format!("{v}\nnot-in-vocabulary-{n}"))
                            } else {
                                (k, v)
                            }
                        })
                        .collect();
                    text = render(&fields);
                } else {
                    text.push_str(&format!("\n# properties\nnot-in-vocabulary-{n}\n"));
                }
                fs::write(reduction, text).unwrap();
            }
            Defect::BadDirectory => {
                let stray = dir.join(format!("drafts-{n}"));
                fs::create_dir_all(&stray).unwrap();
                fs::write(stray.join("note.md"), "# name\nDraft\n").unwrap();
            }
            Defect::SelfLoop => {
                fs::write(
                    dir.join("reductions").join(format!("loop-{n}.md")),
                    format!("# from\n{0}\n\n# to\n{0}\n", stem(problem)),
                )
                .unwrap();
            }
            Defect::MalformedTag => {
                let text = fs::read_to_string(problem).unwrap();
                let fields: Vec<_> = raw_split(&text)
                    .into_iter()
                    .filter(|(k, _)| k != "complexity")
                    .chain([("complexity".to_string(), format!("Not A Tag {n}"))])
                    .collect();
                fs::write(problem, render(&fields)).unwrap();
            }
            Defect::Preamble => {
                let text = fs::read_to_string(reduction).unwrap();
                fs::write(reduction, format!("stray preamble {n}\n{text}")).unwrap();
            }
            Defect::UnknownField => {
                let mut text = fs::read_to_string(reduction).unwrap();
                text.push_str(&format!("\n# video-{n}\nhttps://example.org/{n}\n"));
                fs::write(reduction, text).unwrap();
            }
            Defect::StrayFile => {
                fs::write(
                    dir.join("problems").join(format!("figure-{n}.png")),
                    [0x89, b'P', b'N', b'G'],
                )
                .unwrap();
            }
        }
    }
}

fn render(fields: &[(String, String)]) -> String {
    fields
        .iter()
        .map(|(k, v)| format!("# {k}\n{v}\n"))
        .collect::<Vec<_>>()
        .join("\n")
}

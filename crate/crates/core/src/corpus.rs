//! In-memory image of a corpus directory.
//!
//! The sync loop reads the tree once per tick and hashes, validates and ingests
//! that same image, so the digest always describes the data that was loaded.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;
use walkdir::WalkDir;

/// A file or directory could not be read.
#[derive(Debug, Error)]
#[error("cannot read {}: {source}", path.display())]
pub struct IoError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

impl IoError {
    pub(crate) fn new(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self {
            path: path.into(),
            source,
        }
    }
}

/// Files and directories under a corpus root, keyed by `/`-separated relative path.
///
/// Entries whose name starts with `.` (such as `.git`) are not part of the corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusFiles {
    dirs: BTreeSet<String>,
    files: BTreeMap<String, Vec<u8>>,
}

fn is_hidden(entry: &walkdir::DirEntry) -> bool {
    entry.depth() > 0 && entry.file_name().to_string_lossy().starts_with('.')
}

impl CorpusFiles {
    pub fn read(root: &Path) -> Result<Self, IoError> {
        let meta = std::fs::metadata(root).map_err(|e| IoError::new(root, e))?;
        if !meta.is_dir() {
            return Err(IoError::new(
                root,
                std::io::Error::new(std::io::ErrorKind::NotADirectory, "not a directory"),
            ));
        }

        let mut out = Self::default();
        let walker = WalkDir::new(root)
            .follow_links(true)
            .min_depth(1)
            .sort_by_file_name()
            .into_iter()
            .filter_entry(|e| !is_hidden(e));
        for entry in walker {
            let entry = entry.map_err(|e| {
                let path = e.path().unwrap_or(root).to_path_buf();
                let source = e
                    .into_io_error()
                    .unwrap_or_else(|| std::io::Error::other("filesystem loop"));
                IoError::new(path, source)
            })?;
            let rel = relative(root, entry.path());
            if entry.file_type().is_dir() {
                out.dirs.insert(rel);
            } else {
                let bytes =
                    std::fs::read(entry.path()).map_err(|e| IoError::new(entry.path(), e))?;
                out.files.insert(rel, bytes);
            }
        }
        Ok(out)
    }

    /// Builds an image from `(path, contents)` pairs; parent directories are implied.
    pub fn from_entries<P, C>(entries: impl IntoIterator<Item = (P, C)>) -> Self
    where
        P: Into<String>,
        C: Into<Vec<u8>>,
    {
        let mut out = Self::default();
        for (path, contents) in entries {
            let path: String = path.into();
            let mut prefix = String::new();
            let parts: Vec<&str> = path.split('/').collect();
            for part in &parts[..parts.len() - 1] {
                if !prefix.is_empty() {
                    prefix.push('/');
                }
                prefix.push_str(part);
                out.dirs.insert(prefix.clone());
            }
            out.files.insert(path, contents.into());
        }
        out
    }

    pub fn files(&self) -> &BTreeMap<String, Vec<u8>> {
        &self.files
    }

    pub fn dirs(&self) -> &BTreeSet<String> {
        &self.dirs
    }

    pub fn is_dir(&self, path: &str) -> bool {
        self.dirs.contains(path)
    }

    pub fn file(&self, path: &str) -> Option<&[u8]> {
        self.files.get(path).map(Vec::as_slice)
    }

    /// Direct children of `dir` (`""` for the root) as `(name, is_dir)`, name-sorted.
    pub fn children(&self, dir: &str) -> Vec<(&str, bool)> {
        let prefix = if dir.is_empty() {
            String::new()
        } else {
            format!("{dir}/")
        };
        let direct = |p: &&String| {
            p.strip_prefix(prefix.as_str())
                .is_some_and(|rest| !rest.is_empty() && !rest.contains('/'))
        };
        let mut out: Vec<(&str, bool)> = self
            .dirs
            .iter()
            .filter(direct)
            .map(|p| (&p[prefix.len()..], true))
            .chain(
                self.files
                    .keys()
                    .filter(direct)
                    .map(|p| (&p[prefix.len()..], false)),
            )
            .collect();
        out.sort();
        out
    }

    /// Every file below `dir`, recursively, in path order.
    pub fn files_under<'a>(&'a self, dir: &str) -> impl Iterator<Item = (&'a str, &'a [u8])> {
        let prefix = format!("{dir}/");
        self.files
            .range(prefix.clone()..)
            .take_while(move |(p, _)| p.starts_with(&prefix))
            .map(|(p, c)| (p.as_str(), c.as_slice()))
    }

    /// Subdirectories below `dir`, recursively.
    pub fn dirs_under<'a>(&'a self, dir: &str) -> impl Iterator<Item = &'a str> {
        let prefix = format!("{dir}/");
        self.dirs
            .range(prefix.clone()..)
            .take_while(move |p| p.starts_with(&prefix))
            .map(String::as_str)
    }

    /// Hex SHA-256 over the sorted `(path, content hash)` pairs of all files.
    pub fn digest(&self) -> String {
        let mut outer = Sha256::new();
        for (path, contents) in &self.files {
            outer.update(path.as_bytes());
            outer.update([0u8]);
            outer.update(hex::encode(Sha256::digest(contents)).as_bytes());
            outer.update(b"\n");
        }
        hex::encode(outer.finalize())
    }
}

fn relative(root: &Path, path: &Path) -> String {
    path.strip_prefix(root)
        .unwrap_or(path)
        .components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

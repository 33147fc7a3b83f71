//! Immutable, indexed snapshots of a validated corpus and the read queries
//! served from them.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use chrono::{DateTime, Utc};
use serde::Serialize;
use thiserror::Error;

use crate::corpus::{CorpusFiles, IoError};
use crate::model::{FilterSpec, NetworkId, NetworkManifest, Problem, Reduction, Slug, Tag};
use crate::validator::{check_files, LoadedNetwork, ValidationReport};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("corpus has {} validation error(s)", .0.errors())]
    ValidationFailed(ValidationReport),
    #[error(transparent)]
    Io(#[from] IoError),
    /// Validation passed but the data could not be indexed.
    #[error("network `{network}`: {message}")]
    Inconsistent { network: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("unknown network `{0}`")]
    UnknownNetwork(String),
    #[error("tag `{0}` is not in the network's vocabulary")]
    UnknownTag(String),
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("unknown reduction `{0}`")]
    UnknownReduction(String),
    #[error("search query is empty")]
    EmptyQuery,
}

/// Incoming and outgoing reductions of one problem, each slug-sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Incidence {
    pub outgoing: Vec<Slug>,
    pub incoming: Vec<Slug>,
}

#[derive(Debug, Clone)]
struct NameEntry {
    slug: Slug,
    name: String,
    folded: String,
    main: bool,
}

/// Case-insensitive lookup over main and alternative names.
#[derive(Debug, Clone, Default)]
pub struct NameIndex {
    entries: Vec<NameEntry>,
}

impl NameIndex {
    fn build<'a>(problems: impl IntoIterator<Item = &'a Problem>) -> Self {
        let mut entries = Vec::new();
        for p in problems {
            entries.push(NameEntry {
                slug: p.slug().clone(),
                name: p.name().to_owned(),
                folded: p.name().to_lowercase(),
                main: true,
            });
            entries.extend(p.alternative_names().iter().map(|alt| NameEntry {
                slug: p.slug().clone(),
                name: alt.clone(),
                folded: alt.to_lowercase(),
                main: false,
            }));
        }
        Self { entries }
    }

    /// Best match per problem, ordered by rank class and then slug.
    pub fn search(&self, query: &str) -> Vec<SearchHit> {
        let needle = query.trim().to_lowercase();
        let mut best: BTreeMap<&Slug, (RankClass, &NameEntry)> = BTreeMap::new();
        for entry in &self.entries {
            let class = if entry.folded == needle {
                if entry.main {
                    RankClass::ExactName
                } else {
                    RankClass::ExactAlternative
                }
            } else if entry.folded.starts_with(&needle) {
                RankClass::Prefix
            } else if entry.folded.contains(&needle) {
                RankClass::Substring
            } else {
                continue;
            };
            // Entries arrive main name first, so ties keep the main name.
            best.entry(&entry.slug)
                .and_modify(|cur| {
                    if class < cur.0 {
                        *cur = (class, entry);
                    }
                })
                .or_insert((class, entry));
        }
        let mut hits: Vec<SearchHit> = best
            .into_values()
            .map(|(rank_class, e)| SearchHit {
                slug: e.slug.clone(),
                matched_name: e.name.clone(),
                rank_class,
            })
            .collect();
        hits.sort_by(|a, b| (a.rank_class, &a.slug).cmp(&(b.rank_class, &b.slug)));
        hits
    }
}

/// How a search hit matched, best first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankClass {
    ExactName,
    ExactAlternative,
    Prefix,
    Substring,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub slug: Slug,
    pub matched_name: String,
    pub rank_class: RankClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    pub slug: Slug,
    pub label: String,
    pub tags: BTreeSet<Tag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub slug: Slug,
    pub from: Slug,
    pub to: Slug,
    pub tags: BTreeSet<Tag>,
}

/// Nodes and edges of one network, slug-sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NetworkGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProblemDetail {
    pub problem: Problem,
    /// Outgoing reductions first, then incoming; each group slug-sorted.
    pub incident_reductions: Vec<Reduction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionDetail {
    pub reduction: Reduction,
    pub from_problem: Problem,
    pub to_problem: Problem,
}

/// One network with its lookup structures.
#[derive(Debug, Clone)]
pub struct NetworkData {
    manifest: NetworkManifest,
    problems: BTreeMap<Slug, Problem>,
    reductions: BTreeMap<Slug, Reduction>,
    adjacency: BTreeMap<Slug, Incidence>,
    name_index: NameIndex,
}

impl NetworkData {
    /// Indexes a network. Fails on duplicate slugs or endpoints that name no problem.
    pub fn build(
        manifest: NetworkManifest,
        problems: impl IntoIterator<Item = Problem>,
        reductions: impl IntoIterator<Item = Reduction>,
    ) -> Result<Self, String> {
        let mut problem_map = BTreeMap::new();
        for p in problems {
            let slug = p.slug().clone();
            if problem_map.insert(slug.clone(), p).is_some() {
                return Err(format!("problem `{slug}` defined twice"));
            }
        }
        let mut adjacency: BTreeMap<Slug, Incidence> = problem_map
            .keys()
            .map(|s| (s.clone(), Incidence::default()))
            .collect();
        let mut reduction_map = BTreeMap::new();
        for r in reductions {
            let slug = r.slug().clone();
            for end in [r.from_problem(), r.to_problem()] {
                if !problem_map.contains_key(end) {
                    return Err(format!("reduction `{slug}` names missing problem `{end}`"));
                }
            }
            if let Some(inc) = adjacency.get_mut(r.from_problem()) {
                inc.outgoing.push(slug.clone());
            }
            if let Some(inc) = adjacency.get_mut(r.to_problem()) {
                inc.incoming.push(slug.clone());
            }
            if reduction_map.insert(slug.clone(), r).is_some() {
                return Err(format!("reduction `{slug}` defined twice"));
            }
        }
        for inc in adjacency.values_mut() {
            inc.outgoing.sort();
            inc.incoming.sort();
        }
        let name_index = NameIndex::build(problem_map.values());
        Ok(Self {
            manifest,
            problems: problem_map,
            reductions: reduction_map,
            adjacency,
            name_index,
        })
    }

    pub fn manifest(&self) -> &NetworkManifest {
        &self.manifest
    }

    pub fn problems(&self) -> &BTreeMap<Slug, Problem> {
        &self.problems
    }

    pub fn reductions(&self) -> &BTreeMap<Slug, Reduction> {
        &self.reductions
    }

    pub fn incidence(&self, slug: &str) -> Option<&Incidence> {
        self.adjacency.get(slug)
    }

    /// The (possibly filtered) graph of this network.
    ///
    /// Reduction tags combine conjunctively: an edge is kept when it carries all
    /// of them. A problem is tagged when it carries any selected problem tag, or
    /// unconditionally when no problem tag is selected. The node set is the tagged
    /// problems plus the endpoints of kept edges. With reduction tags empty but
    /// problem tags set, only edges between two tagged problems are kept.
    pub fn graph(&self, filter: &FilterSpec) -> Result<NetworkGraph, QueryError> {
        if let Some(t) = filter
            .problem_tags
            .iter()
            .find(|t| !self.manifest.problem_tags().contains(*t))
        {
            return Err(QueryError::UnknownTag(t.to_string()));
        }
        if let Some(t) = filter
            .reduction_tags
            .iter()
            .find(|t| !self.manifest.reduction_tags().contains(*t))
        {
            return Err(QueryError::UnknownTag(t.to_string()));
        }

        let tagged = |p: &Problem| {
            filter.problem_tags.is_empty() || !p.completeness().is_disjoint(&filter.problem_tags)
        };
        let mut nodes: BTreeSet<&Slug> = self
            .problems
            .values()
            .filter(|p| tagged(p))
            .map(Problem::slug)
            .collect();

        let kept: Vec<&Reduction> = if filter.reduction_tags.is_empty() {
            self.reductions
                .values()
                .filter(|r| nodes.contains(r.from_problem()) && nodes.contains(r.to_problem()))
                .collect()
        } else {
            self.reductions
                .values()
                .filter(|r| r.properties().is_superset(&filter.reduction_tags))
                .collect()
        };
        for r in &kept {
            nodes.insert(r.from_problem());
            nodes.insert(r.to_problem());
        }

        Ok(NetworkGraph {
            nodes: nodes
                .into_iter()
                .map(|s| {
                    let p = &self.problems[s];
                    GraphNode {
                        slug: s.clone(),
                        label: p.abbreviation().to_owned(),
                        tags: p.completeness().clone(),
                    }
                })
                .collect(),
            edges: kept
                .into_iter()
                .map(|r| GraphEdge {
                    slug: r.slug().clone(),
                    from: r.from_problem().clone(),
                    to: r.to_problem().clone(),
                    tags: r.properties().clone(),
                })
                .collect(),
        })
    }

    pub fn search(&self, query: &str) -> Result<Vec<SearchHit>, QueryError> {
        if query.trim().is_empty() {
            return Err(QueryError::EmptyQuery);
        }
        Ok(self.name_index.search(query))
    }

    pub fn problem_detail(&self, slug: &str) -> Result<ProblemDetail, QueryError> {
        let problem = self
            .problems
            .get(slug)
            .ok_or_else(|| QueryError::UnknownProblem(slug.to_owned()))?;
        let inc = &self.adjacency[slug];
        let incident_reductions = inc
            .outgoing
            .iter()
            .chain(&inc.incoming)
            .map(|r| self.reductions[r].clone())
            .collect();
        Ok(ProblemDetail {
            problem: problem.clone(),
            incident_reductions,
        })
    }

    pub fn reduction_detail(&self, slug: &str) -> Result<ReductionDetail, QueryError> {
        let reduction = self
            .reductions
            .get(slug)
            .ok_or_else(|| QueryError::UnknownReduction(slug.to_owned()))?;
        Ok(ReductionDetail {
            reduction: reduction.clone(),
            from_problem: self.problems[reduction.from_problem()].clone(),
            to_problem: self.problems[reduction.to_problem()].clone(),
        })
    }
}

/// A validated, indexed image of the whole corpus at one instant.
#[derive(Debug, Clone)]
pub struct Snapshot {
    networks: BTreeMap<NetworkId, NetworkData>,
    ingested_at: DateTime<Utc>,
    corpus_digest: String,
}

impl Snapshot {
    pub fn networks(&self) -> &BTreeMap<NetworkId, NetworkData> {
        &self.networks
    }

    pub fn ingested_at(&self) -> DateTime<Utc> {
        self.ingested_at
    }

    /// Hex SHA-256 of the corpus this snapshot was built from.
    pub fn corpus_digest(&self) -> &str {
        &self.corpus_digest
    }

    pub fn network(&self, net: &str) -> Result<&NetworkData, QueryError> {
        self.networks
            .get(net)
            .ok_or_else(|| QueryError::UnknownNetwork(net.to_owned()))
    }

    pub fn network_graph(
        &self,
        net: &str,
        filter: &FilterSpec,
    ) -> Result<NetworkGraph, QueryError> {
        self.network(net)?.graph(filter)
    }

    pub fn search(&self, net: &str, query: &str) -> Result<Vec<SearchHit>, QueryError> {
        self.network(net)?.search(query)
    }

    pub fn problem_detail(&self, net: &str, slug: &str) -> Result<ProblemDetail, QueryError> {
        self.network(net)?.problem_detail(slug)
    }

    pub fn reduction_detail(&self, net: &str, slug: &str) -> Result<ReductionDetail, QueryError> {
        self.network(net)?.reduction_detail(slug)
    }
}

/// Reads, validates and indexes the corpus below `root`.
pub fn ingest(root: &Path) -> Result<Snapshot, IngestError> {
    ingest_files(&CorpusFiles::read(root)?)
}

/// Validates and indexes an in-memory corpus.
pub fn ingest_files(files: &CorpusFiles) -> Result<Snapshot, IngestError> {
    let (report, loaded) = check_files(files);
    if report.has_errors() {
        return Err(IngestError::ValidationFailed(report));
    }
    let mut networks = BTreeMap::new();
    for (
        id,
        LoadedNetwork {
            manifest,
            problems,
            reductions,
        },
    ) in loaded.networks
    {
        let manifest = manifest.ok_or_else(|| IngestError::Inconsistent {
            network: id.to_string(),
            message: "manifest missing".into(),
        })?;
        let data = NetworkData::build(manifest, problems, reductions).map_err(|message| {
            IngestError::Inconsistent {
                network: id.to_string(),
                message,
            }
        })?;
        networks.insert(id, data);
    }
    Ok(Snapshot {
        networks,
        ingested_at: Utc::now(),
        corpus_digest: files.digest(),
    })
}

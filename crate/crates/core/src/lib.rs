//! Core of the reduction atlas: the corpus data model, the field-heading
//! Markdown codec, the corpus validator and the snapshot store that the HTTP
//! service reads from.
//!
//! A corpus is a directory tree:
//!
//! ```text
//! <root>/<network>/network.md
//! <root>/<network>/problems/*.md
//! <root>/<network>/reductions/*.md
//! ```

pub mod codec;
pub mod corpus;
pub mod model;
pub mod store;
pub mod sync;
pub mod validator;

#[cfg(feature = "testing")]
pub mod testing;

pub use codec::{
    parse_document, parse_manifest, parse_problem, parse_reduction, serialize_problem,
    serialize_reduction, CodecError, DocumentKind, FieldMap, SourceLocation,
};
pub use corpus::{CorpusFiles, IoError};
pub use model::{
    FilterSpec, ModelError, NetworkId, NetworkManifest, Problem, ProblemTag, Reduction,
    ReductionTag, Slug, Tag,
};
pub use store::{
    ingest, ingest_files, GraphEdge, GraphNode, IngestError, NetworkData, NetworkGraph,
    ProblemDetail, QueryError, RankClass, ReductionDetail, SearchHit, Snapshot,
};
pub use sync::{SnapshotSlot, SyncHandle, SyncWorker, TickOutcome};
pub use validator::{
    validate_corpus, validate_file, Finding, FindingCode, Severity, ValidationReport,
};

//! Executable versions of the constructive arguments behind bipartite
//! Turan bounds: host and pattern generators, preprocessing transforms,
//! homomorphism and cycle counting, deletion-process collection builders,
//! shifting embedders, and brute-force oracles to check all of them.

pub mod collections;
pub mod counting;
pub mod embedders;
pub mod error;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod pipeline;
pub mod transforms;

pub use collections::{CollectionKind, LabeledCollection, PruneAudit};
pub use embedders::EmbeddingCertificate;
pub use error::{Error, Result};
pub use generators::{Pattern, PatternSpec};
pub use graph::{Graph, VertexSet};

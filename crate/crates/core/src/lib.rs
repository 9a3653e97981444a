//! Name-synonym suggestion from genealogical name graphs.
//!
//! Pipeline: [`ingest`] → [`normalize`] → [`treegraph`] → [`namegraph`] →
//! [`suggest`], with [`eval`] measuring suggestions against ground truth.

pub mod eval;
pub mod ingest;
pub mod namegraph;
pub mod normalize;
pub mod phonetic;
pub mod pipeline;
pub mod scalar;
pub mod strsim;
pub mod suggest;
pub mod treegraph;

/// Jaro-Winkler similarity.
pub type Similarity = f64;
/// Evaluation metric value.
pub type Metric = f64;

pub use ingest::{GroundTruth, GroundTruthEntry, IngestError, RawProfile, TableFormat};
pub use namegraph::{build_name_graph, neighbors_within, EdgeRecord, NameGraph, PairCounts};
pub use normalize::{normalize_name, NameView, NormalizationConfig, ProfileRecord};
pub use phonetic::{build_code_index, encode, CodeIndex, PhoneticAlgorithm, PhoneticCode};
pub use scalar::Scalar;
pub use strsim::{damerau_levenshtein, edit_distance, jaro_winkler, EditDistanceRange, StringMetric};
pub use suggest::{Score, graft_suggest, hgraft_suggest, OrderingFunction, RankedSuggestion, Source};
pub use treegraph::{build_tree, FamilyTreeGraph, RelationKind};

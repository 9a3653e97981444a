//! Pipeline settings, their `key = value` file form, and the build stage.

use std::collections::BTreeMap;
use std::str::FromStr;

use thiserror::Error;

use crate::ingest::RawProfile;
use crate::namegraph::{NameGraph, PairCounts};
use crate::normalize::{normalize_profiles, NameView, NormalizationConfig, NormalizationStats};
use crate::phonetic::PhoneticAlgorithm;
use crate::strsim::EditDistanceRange;
use crate::suggest::{OrderingFunction, DEFAULT_DEPTH, DEFAULT_K};
use crate::treegraph::{build_tree, RelationKind, TreeStats};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub name_view: NameView,
    pub relation: RelationKind,
    pub ed_range: EditDistanceRange,
    pub depth: u32,
    pub k: usize,
    pub function: OrderingFunction,
    pub hybrid: bool,
    /// `None` picks Double Metaphone for forenames and NYSIIS for surnames.
    pub fallback: Option<PhoneticAlgorithm>,
    pub normalization: NormalizationConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            name_view: NameView::Forename,
            relation: RelationKind::ParentChild,
            ed_range: EditDistanceRange::default(),
            depth: DEFAULT_DEPTH,
            k: DEFAULT_K,
            function: OrderingFunction::NetEdOfDmPhoneEd,
            hybrid: false,
            fallback: None,
            normalization: NormalizationConfig::default(),
        }
    }
}

pub fn default_fallback(view: NameView) -> PhoneticAlgorithm {
    match view {
        NameView::Forename => PhoneticAlgorithm::DoubleMetaphone,
        NameView::Surname => PhoneticAlgorithm::Nysiis,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("config line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("config key `{key}`: {reason}")]
    BadValue { key: String, reason: String },
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: ToString,
{
    value.parse::<T>().map_err(|e| ConfigError::BadValue { key: key.into(), reason: e.to_string() })
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(ConfigError::BadValue { key: key.into(), reason: format!("`{value}` is not a boolean") }),
    }
}

fn parse_list(value: &str) -> Vec<&str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

pub const CONFIG_KEYS: &[&str] = &[
    "name_view",
    "relation",
    "ed_lo",
    "ed_hi",
    "depth",
    "k",
    "function",
    "hybrid",
    "fallback",
    "min_name_length",
    "prefixes",
    "honorifics",
    "case_fold",
];

/// Parses `key = value` lines. `#` starts a comment; blank lines are skipped.
pub fn parse_config_entries(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey { line: i + 1, key });
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

impl PipelineConfig {
    /// Applies parsed entries on top of `self`.
    pub fn apply(mut self, entries: &BTreeMap<String, String>) -> Result<Self, ConfigError> {
        let mut lo = self.ed_range.lo();
        let mut hi = self.ed_range.hi();
        for (key, value) in entries {
            let v = value.as_str();
            match key.as_str() {
                "name_view" => self.name_view = parse_value(key, v)?,
                "relation" => self.relation = parse_value(key, v)?,
                "ed_lo" => lo = parse_value(key, v)?,
                "ed_hi" => hi = parse_value(key, v)?,
                "depth" => self.depth = parse_value(key, v)?,
                "k" => self.k = parse_value(key, v)?,
                "function" => self.function = parse_value(key, v)?,
                "hybrid" => self.hybrid = parse_bool(key, v)?,
                "fallback" => self.fallback = Some(parse_value(key, v)?),
                "min_name_length" => {
                    let n: usize = parse_value(key, v)?;
                    self.normalization = self.normalization.with_min_name_length(n);
                }
                "prefixes" => self.normalization = self.normalization.with_prefixes(parse_list(v)),
                "honorifics" => self.normalization = self.normalization.with_honorifics(parse_list(v)),
                "case_fold" => self.normalization = self.normalization.with_case_fold(parse_bool(key, v)?),
                other => return Err(ConfigError::UnknownKey { line: 0, key: other.into() }),
            }
        }
        self.ed_range = EditDistanceRange::new(lo, hi)
            .map_err(|e| ConfigError::BadValue { key: "ed_lo/ed_hi".into(), reason: e.to_string() })?;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |key: &str, reason: &str| Err(ConfigError::BadValue { key: key.into(), reason: reason.into() });
        if self.ed_range.lo() < 1 {
            return bad("ed_lo", "must be at least 1");
        }
        if self.depth < 1 {
            return bad("depth", "must be at least 1");
        }
        if self.k < 1 {
            return bad("k", "must be at least 1");
        }
        Ok(())
    }

    pub fn fallback(&self) -> PhoneticAlgorithm {
        self.fallback.unwrap_or_else(|| default_fallback(self.name_view))
    }
}

/// Everything the build stage produces.
#[derive(Debug, Clone)]
pub struct BuildOutput {
    pub normalization: NormalizationStats,
    pub tree: TreeStats,
    pub cycles: Vec<Vec<String>>,
    pub pairs: u64,
    pub graph: NameGraph,
}

/// normalize → tree → ancestor pairs → name graph.
pub fn build_graph(profiles: &[RawProfile], config: &PipelineConfig) -> BuildOutput {
    let (records, normalization) = normalize_profiles(profiles, &config.normalization);
    let tree = build_tree(&records, config.name_view);
    let counts = PairCounts::from_tree(&tree, config.relation);
    let graph = NameGraph::from_counts(&counts, config.ed_range)
        .expect("validated range")
        .with_origin(config.name_view, config.relation);
    BuildOutput {
        normalization,
        tree: tree.stats().clone(),
        cycles: tree.cycles().to_vec(),
        pairs: counts.total_pairs(),
        graph,
    }
}

//! GRAFT ranking, the HGRAFT hybrid and the baseline retrievers.
//!
//! Scores are exact rationals. With `SP` the hop distance, `ED` the edit
//! distance and `minDM` the smallest edit distance between any primary or
//! secondary Double Metaphone code of the two names:
//!
//! | function            | score                          |
//! |---------------------|--------------------------------|
//! | `neted`             | 1 / (SP·ED)                    |
//! | `net2ed`            | 1 / (SP²·ED)                   |
//! | `edofdmphone`       | 1 / max(minDM, ½)              |
//! | `netedofdmphoneed`  | 1 / (SP·ED·max(minDM, ½))      |
//!
//! Ranking is score descending, then ED ascending, then name ascending.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::namegraph::{neighbors_within, NameGraph};
use crate::phonetic::{double_metaphone, CodeIndex, Unencodable};
use crate::scalar::Scalar;
use crate::strsim::{damerau_levenshtein, edit_distance, jaro_winkler, StringMetric};

pub const DEFAULT_K: usize = 10;
pub const DEFAULT_DEPTH: u32 = 2;

/// Exact ranking score.
pub type Score = Ratio<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum OrderingFunction {
    NetEd,
    Net2Ed,
    EdOfDmPhone,
    #[default]
    NetEdOfDmPhoneEd,
}

impl OrderingFunction {
    pub const ALL: [OrderingFunction; 4] = [
        OrderingFunction::NetEd,
        OrderingFunction::Net2Ed,
        OrderingFunction::EdOfDmPhone,
        OrderingFunction::NetEdOfDmPhoneEd,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            OrderingFunction::NetEd => "neted",
            OrderingFunction::Net2Ed => "net2ed",
            OrderingFunction::EdOfDmPhone => "edofdmphone",
            OrderingFunction::NetEdOfDmPhoneEd => "netedofdmphoneed",
        }
    }

    pub fn uses_phonetics(&self) -> bool {
        matches!(self, OrderingFunction::EdOfDmPhone | OrderingFunction::NetEdOfDmPhoneEd)
    }

    /// Score as `(numerator, denominator)`. `min_dm` is ignored by the
    /// functions that do not use it.
    pub fn ratio_parts(&self, hop: u32, ed: u32, min_dm: u32) -> (u64, u64) {
        let (sp, ed) = (hop as u64, ed as u64);
        // max(minDM, 1/2) = 1/2 when minDM = 0, written as num/den below.
        let (dm_num, dm_den) = if min_dm == 0 { (1, 2) } else { (min_dm as u64, 1) };
        match self {
            OrderingFunction::NetEd => (1, sp * ed),
            OrderingFunction::Net2Ed => (1, sp * sp * ed),
            OrderingFunction::EdOfDmPhone => (dm_den, dm_num),
            OrderingFunction::NetEdOfDmPhoneEd => (dm_den, sp * ed * dm_num),
        }
    }
}

impl fmt::Display for OrderingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderingFunction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "neted" => Ok(OrderingFunction::NetEd),
            "net2ed" => Ok(OrderingFunction::Net2Ed),
            "edofdmphone" => Ok(OrderingFunction::EdOfDmPhone),
            "netedofdmphoneed" => Ok(OrderingFunction::NetEdOfDmPhoneEd),
            _ => Err(format!(
                "unknown ordering function `{s}` (expected neted, net2ed, edofdmphone or netedofdmphoneed)"
            )),
        }
    }
}

/// Where a suggestion came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Graph,
    PhoneticFallback,
    StringSimilarity,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::Graph => "graph",
            Source::PhoneticFallback => "phonetic_fallback",
            Source::StringSimilarity => "string_similarity",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedSuggestion {
    pub name: String,
    /// Graph suggestions carry their ordering-function score; baselines,
    /// which rank by edit distance, carry `1/ED`.
    pub score: Score,
    /// `None` outside the graph.
    pub hop_distance: Option<u32>,
    pub edit_distance: u32,
    pub phonetic_factor: Option<u32>,
    pub source: Source,
}

impl RankedSuggestion {
    pub fn score_as<T: Scalar>(&self) -> T {
        T::from_ratio(*self.score.numer(), *self.score.denom())
    }
}

/// Double Metaphone codes with unencodable names mapped to the empty code.
fn dm_codes(name: &str) -> [String; 2] {
    match double_metaphone(name) {
        Ok((p, s)) => [p, s],
        Err(Unencodable(_)) => [String::new(), String::new()],
    }
}

fn min_code_distance(a: &[String; 2], b: &[String; 2]) -> u32 {
    a.iter().flat_map(|x| b.iter().map(move |y| edit_distance(x, y))).min().unwrap()
}

/// Smallest edit distance over the four primary/secondary code pairs.
pub fn min_dm_distance(a: &str, b: &str) -> u32 {
    min_code_distance(&dm_codes(a), &dm_codes(b))
}

/// Ordering-function score from its inputs, in any scalar type.
pub fn score_from_parts<T: Scalar>(hop: u32, ed: u32, min_dm: u32, function: OrderingFunction) -> T {
    let (num, den) = function.ratio_parts(hop, ed, min_dm);
    T::from_ratio(num, den)
}

/// Exact score of `candidate` for `query` at `hop` hops.
pub fn score(query: &str, candidate: &str, hop: u32, function: OrderingFunction) -> Score {
    let ed = edit_distance(query, candidate);
    let min_dm = if function.uses_phonetics() { min_dm_distance(query, candidate) } else { 0 };
    score_from_parts(hop, ed, min_dm, function)
}

fn rank_order(a: &RankedSuggestion, b: &RankedSuggestion) -> Ordering {
    b.score
        .cmp(&a.score)
        .then(a.edit_distance.cmp(&b.edit_distance))
        .then_with(|| a.name.cmp(&b.name))
}

/// Sorts with the ranking tie-break chain and keeps the best `k`.
pub fn rank_top_k(mut candidates: Vec<RankedSuggestion>, k: usize) -> Vec<RankedSuggestion> {
    if candidates.len() > k && k > 0 {
        candidates.select_nth_unstable_by(k - 1, rank_order);
    }
    candidates.truncate(k);
    candidates.sort_unstable_by(rank_order);
    candidates
}

/// GRAFT: BFS to `depth`, score every reached name, return the top `k`.
pub fn graft_suggest(
    graph: &NameGraph,
    query: &str,
    k: usize,
    depth: u32,
    function: OrderingFunction,
) -> Vec<RankedSuggestion> {
    let reached = neighbors_within(graph, query, depth);
    if reached.is_empty() {
        return Vec::new();
    }
    let query_chars: Vec<char> = query.chars().collect();
    let query_dm = function.uses_phonetics().then(|| dm_codes(query));
    let candidates = reached
        .into_iter()
        .map(|(name, hop)| {
            let cand_chars: Vec<char> = name.chars().collect();
            let ed = crate::strsim::levenshtein_chars(&query_chars, &cand_chars);
            let min_dm = query_dm.as_ref().map(|q| min_code_distance(q, &dm_codes(name)));
            RankedSuggestion {
                name: name.to_string(),
                score: score_from_parts(hop, ed, min_dm.unwrap_or(0), function),
                hop_distance: Some(hop),
                edit_distance: ed,
                phonetic_factor: min_dm,
                source: Source::Graph,
            }
        })
        .collect();
    rank_top_k(candidates, k)
}

/// HGRAFT: GRAFT for names with at least one edge, phonetic buckets otherwise.
/// An unencodable fallback query gets no suggestions.
pub fn hgraft_suggest(
    graph: &NameGraph,
    code_index: &CodeIndex,
    query: &str,
    k: usize,
    depth: u32,
    function: OrderingFunction,
) -> Vec<RankedSuggestion> {
    if graph.is_non_isolated(query) {
        graft_suggest(graph, query, k, depth, function)
    } else {
        phonetic_retrieve(code_index, query, k).unwrap_or_default()
    }
}

fn by_distance(query: &str, name: &str, ed: u32, source: Source) -> RankedSuggestion {
    debug_assert_ne!(query, name);
    RankedSuggestion {
        name: name.to_string(),
        score: Ratio::new(1, ed.max(1) as u64),
        hop_distance: None,
        edit_distance: ed,
        phonetic_factor: None,
        source,
    }
}

/// Names sharing a phonetic code with `query`, nearest edit distance first.
pub fn phonetic_retrieve(code_index: &CodeIndex, query: &str, k: usize) -> Result<Vec<RankedSuggestion>, Unencodable> {
    let bucket = code_index.lookup(query)?;
    let mut out: Vec<RankedSuggestion> = bucket
        .into_iter()
        .filter(|&n| n != query)
        .map(|n| by_distance(query, n, edit_distance(query, n), Source::PhoneticFallback))
        .collect();
    // Buckets iterate in name order, so a stable sort on distance gives the tie-break.
    out.sort_by_key(|s| s.edit_distance);
    out.truncate(k);
    Ok(out)
}

/// Brute-force nearest names under a string metric.
///
/// For `ed` and `dld` the `k` smallest distances are kept (ties by name).
/// For `jw` the `k` most similar names are kept (ties by name) and then
/// re-ordered by edit distance to the query.
pub fn string_sim_retrieve<'a, I>(corpus: I, query: &str, metric: StringMetric, k: usize) -> Vec<RankedSuggestion>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut names: Vec<&str> = corpus.into_iter().filter(|&n| n != query).collect();
    names.sort_unstable();
    names.dedup();
    let mut out = match metric {
        StringMetric::EditDistance | StringMetric::DamerauLevenshtein => {
            let dist = if metric == StringMetric::EditDistance { edit_distance } else { damerau_levenshtein };
            let mut scored: Vec<(u32, &str)> = names.iter().map(|&n| (dist(query, n), n)).collect();
            if scored.len() > k && k > 0 {
                scored.select_nth_unstable(k - 1);
            }
            scored.truncate(k);
            scored.sort_unstable();
            scored
                .into_iter()
                .map(|(d, n)| {
                    let mut s = by_distance(query, n, edit_distance(query, n), Source::StringSimilarity);
                    s.score = Ratio::new(1, d.max(1) as u64);
                    s
                })
                .collect::<Vec<_>>()
        }
        StringMetric::JaroWinkler => {
            let mut scored: Vec<(f64, &str)> = names.iter().map(|&n| (jaro_winkler(query, n), n)).collect();
            let by_sim = |a: &(f64, &str), b: &(f64, &str)| b.0.total_cmp(&a.0).then(a.1.cmp(b.1));
            if scored.len() > k && k > 0 {
                scored.select_nth_unstable_by(k - 1, by_sim);
            }
            scored.truncate(k);
            scored.sort_unstable_by(by_sim);
            let mut top: Vec<RankedSuggestion> = scored
                .into_iter()
                .map(|(_, n)| by_distance(query, n, edit_distance(query, n), Source::StringSimilarity))
                .collect();
            top.sort_by_key(|s| s.edit_distance);
            top
        }
    };
    out.truncate(k);
    out
}

use std::fmt;
use std::str::FromStr;

use crate::ingest::GroundTruth;
use crate::namegraph::NameGraph;
use crate::phonetic::{build_code_index, PhoneticAlgorithm};
use crate::suggest::{graft_suggest, hgraft_suggest, phonetic_retrieve, string_sim_retrieve, OrderingFunction};
use crate::strsim::StringMetric;

use super::{evaluate_method, EvalOptions, EvaluationReport};

/// A suggestion method that can be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Graft,
    Hgraft,
    Phonetic(PhoneticAlgorithm),
    StringSim(StringMetric),
}

impl Method {
    pub fn all() -> Vec<Method> {
        let mut all = vec![Method::Graft, Method::Hgraft];
        all.extend(PhoneticAlgorithm::ALL.map(Method::Phonetic));
        all.extend(StringMetric::ALL.map(Method::StringSim));
        all
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::Graft => "graft",
            Method::Hgraft => "hgraft",
            Method::Phonetic(a) => a.as_str(),
            Method::StringSim(m) => m.as_str(),
        }
    }

    /// Evaluates the method over `ground_truth`. Baselines search the
    /// graph's whole vocabulary, isolated names included.
    pub fn evaluate(&self, ctx: &MethodContext<'_>, ground_truth: &GroundTruth, options: EvalOptions) -> EvaluationReport {
        let MethodContext { graph, depth, function, fallback } = *ctx;
        let k = options.k;
        let names = |v: Vec<crate::suggest::RankedSuggestion>| v.into_iter().map(|s| s.name).collect::<Vec<_>>();
        let vocab = || graph.vocabulary().iter().map(String::as_str);
        match *self {
            Method::Graft => evaluate_method(self.name(), |q| names(graft_suggest(graph, q, k, depth, function)), ground_truth, options),
            Method::Hgraft => {
                let index = build_code_index(vocab(), fallback);
                evaluate_method(
                    self.name(),
                    |q| names(hgraft_suggest(graph, &index, q, k, depth, function)),
                    ground_truth,
                    options,
                )
            }
            Method::Phonetic(alg) => {
                let index = build_code_index(vocab(), alg);
                evaluate_method(
                    self.name(),
                    |q| names(phonetic_retrieve(&index, q, k).unwrap_or_default()),
                    ground_truth,
                    options,
                )
            }
            Method::StringSim(metric) => {
                evaluate_method(self.name(), |q| names(string_sim_retrieve(vocab(), q, metric, k)), ground_truth, options)
            }
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "graft" => Ok(Method::Graft),
            "hgraft" => Ok(Method::Hgraft),
            other => other
                .parse::<PhoneticAlgorithm>()
                .map(Method::Phonetic)
                .or_else(|_| other.parse::<StringMetric>().map(Method::StringSim))
                .map_err(|_| {
                    format!(
                        "unknown method `{s}` (expected graft, hgraft, soundex, metaphone, dmetaphone, nysiis, mra, ed, dld or jw)"
                    )
                }),
        }
    }
}

/// Graph and GRAFT settings shared by every method.
#[derive(Debug, Clone, Copy)]
pub struct MethodContext<'a> {
    pub graph: &'a NameGraph,
    pub depth: u32,
    pub function: OrderingFunction,
    /// Phonetic algorithm behind HGRAFT's fallback.
    pub fallback: PhoneticAlgorithm,
}

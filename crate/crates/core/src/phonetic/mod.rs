//! Phonetic encoders and code-bucket indexes.
//!
//! Every encoder first folds accents to their ASCII base letters (`é` → `e`,
//! `ß` → `ss`), uppercases, and drops anything that is not a letter. Double
//! Metaphone additionally keeps single spaces between words, since a few of
//! its rules look at word boundaries.

mod double_metaphone;
mod metaphone;
mod mra;
mod nysiis;
mod soundex;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

pub use double_metaphone::{double_metaphone, DOUBLE_METAPHONE_MAX_LEN};
pub use metaphone::metaphone;
pub use mra::mra;
pub use nysiis::{nysiis, NYSIIS_MAX_LEN};
pub use soundex::soundex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("name `{0}` has no letters to encode")]
pub struct Unencodable(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhoneticAlgorithm {
    Soundex,
    Metaphone,
    DoubleMetaphone,
    Nysiis,
    Mra,
}

impl PhoneticAlgorithm {
    pub const ALL: [PhoneticAlgorithm; 5] = [
        PhoneticAlgorithm::Soundex,
        PhoneticAlgorithm::Metaphone,
        PhoneticAlgorithm::DoubleMetaphone,
        PhoneticAlgorithm::Nysiis,
        PhoneticAlgorithm::Mra,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PhoneticAlgorithm::Soundex => "soundex",
            PhoneticAlgorithm::Metaphone => "metaphone",
            PhoneticAlgorithm::DoubleMetaphone => "dmetaphone",
            PhoneticAlgorithm::Nysiis => "nysiis",
            PhoneticAlgorithm::Mra => "mra",
        }
    }
}

impl fmt::Display for PhoneticAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PhoneticAlgorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "soundex" => Ok(PhoneticAlgorithm::Soundex),
            "metaphone" => Ok(PhoneticAlgorithm::Metaphone),
            "dmetaphone" | "doublemetaphone" | "dm" => Ok(PhoneticAlgorithm::DoubleMetaphone),
            "nysiis" => Ok(PhoneticAlgorithm::Nysiis),
            "mra" | "matchratingapproach" => Ok(PhoneticAlgorithm::Mra),
            _ => Err(format!(
                "unknown phonetic algorithm `{s}` (expected soundex, metaphone, dmetaphone, nysiis or mra)"
            )),
        }
    }
}

/// Output of an encoder. Only Double Metaphone fills `secondary`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhoneticCode {
    pub primary: String,
    pub secondary: Option<String>,
}

impl PhoneticCode {
    pub fn single(primary: String) -> Self {
        Self { primary, secondary: None }
    }

    /// Primary, then secondary when it differs.
    pub fn codes(&self) -> impl Iterator<Item = &str> {
        let secondary = self.secondary.as_deref().filter(|s| *s != self.primary && !s.is_empty());
        std::iter::once(self.primary.as_str()).chain(secondary)
    }
}

impl fmt::Display for PhoneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.secondary {
            Some(secondary) => write!(f, "{}\t{}", self.primary, secondary),
            None => f.write_str(&self.primary),
        }
    }
}

/// Folds accents and uppercases, keeping ASCII letters and (optionally)
/// single spaces between words.
pub(crate) fn fold_to_ascii_upper(name: &str, keep_spaces: bool) -> String {
    let folded = deunicode::deunicode(name);
    let mut out = String::with_capacity(folded.len());
    for c in folded.chars() {
        if c.is_ascii_alphabetic() {
            out.push(c.to_ascii_uppercase());
        } else if keep_spaces && (c.is_whitespace() || c == '-') && !out.is_empty() && !out.ends_with(' ') {
            out.push(' ');
        }
    }
    if out.ends_with(' ') {
        out.pop();
    }
    out
}

pub fn encode(name: &str, algorithm: PhoneticAlgorithm) -> Result<PhoneticCode, Unencodable> {
    let keep_spaces = algorithm == PhoneticAlgorithm::DoubleMetaphone;
    let letters = fold_to_ascii_upper(name, keep_spaces);
    if letters.is_empty() {
        return Err(Unencodable(name.to_string()));
    }
    Ok(match algorithm {
        PhoneticAlgorithm::Soundex => PhoneticCode::single(soundex::encode_letters(&letters)),
        PhoneticAlgorithm::Metaphone => PhoneticCode::single(metaphone::encode_letters(&letters)),
        PhoneticAlgorithm::Nysiis => PhoneticCode::single(nysiis::encode_letters(&letters)),
        PhoneticAlgorithm::Mra => PhoneticCode::single(mra::encode_letters(&letters)),
        PhoneticAlgorithm::DoubleMetaphone => {
            let (primary, secondary) = double_metaphone::encode_letters(&letters);
            PhoneticCode { primary, secondary: Some(secondary) }
        }
    })
}

/// Names grouped by phonetic code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeIndex {
    algorithm: PhoneticAlgorithm,
    buckets: BTreeMap<String, BTreeSet<String>>,
    skipped: usize,
}

impl CodeIndex {
    pub fn algorithm(&self) -> PhoneticAlgorithm {
        self.algorithm
    }

    /// Number of input names that could not be encoded.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn bucket(&self, code: &str) -> Option<&BTreeSet<String>> {
        self.buckets.get(code)
    }

    pub fn buckets(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.buckets.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    /// Union of the buckets of all of `query`'s codes, including `query` itself
    /// when it was indexed.
    pub fn lookup(&self, query: &str) -> Result<BTreeSet<&str>, Unencodable> {
        let code = encode(query, self.algorithm)?;
        Ok(code
            .codes()
            .filter_map(|c| self.buckets.get(c))
            .flat_map(|bucket| bucket.iter().map(String::as_str))
            .collect())
    }
}

/// Buckets every encodable name under its code(s). Double Metaphone names go
/// under both their primary and secondary code.
pub fn build_code_index<'a, I>(names: I, algorithm: PhoneticAlgorithm) -> CodeIndex
where
    I: IntoIterator<Item = &'a str>,
{
    let names: Vec<&str> = names.into_iter().collect();
    let encoded: Vec<(&str, Option<PhoneticCode>)> =
        names.par_iter().map(|&n| (n, encode(n, algorithm).ok())).collect();

    let mut buckets: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut skipped = 0;
    for (name, code) in encoded {
        match code {
            Some(code) => {
                for c in code.codes() {
                    buckets.entry(c.to_string()).or_default().insert(name.to_string());
                }
            }
            None => skipped += 1,
        }
    }
    CodeIndex { algorithm, buckets, skipped }
}

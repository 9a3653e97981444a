//! Name cleaning: honorifics, prepositional prefixes and abbreviations.
//!
//! Names are NFC-normalized, split on whitespace, stripped of edge
//! punctuation, filtered token-wise against the prefix and honorific lists,
//! and rejoined with single spaces. Matching is always token-wise, so
//! `Devon` survives the `de` prefix.

use std::collections::BTreeSet;

use unicode_normalization::UnicodeNormalization;

use crate::ingest::RawProfile;

pub const DEFAULT_MIN_NAME_LENGTH: usize = 2;

pub const DEFAULT_HONORIFICS: &[&str] = &["mr", "mrs", "ms", "dr", "jr", "sr", "prof"];

pub const DEFAULT_PREFIXES: &[&str] =
    &["van", "de", "da", "der", "la", "le", "das", "dos", "dele", "du"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationConfig {
    min_name_length: usize,
    prefixes: BTreeSet<String>,
    honorifics: BTreeSet<String>,
    case_fold: bool,
}

impl Default for NormalizationConfig {
    fn default() -> Self {
        Self {
            min_name_length: DEFAULT_MIN_NAME_LENGTH,
            prefixes: DEFAULT_PREFIXES.iter().map(|s| s.to_string()).collect(),
            honorifics: DEFAULT_HONORIFICS.iter().map(|s| s.to_string()).collect(),
            case_fold: true,
        }
    }
}

fn clean_list<I, S>(tokens: I) -> BTreeSet<String>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    tokens
        .into_iter()
        .map(|t| t.as_ref().trim().to_lowercase())
        .filter(|t| !t.is_empty())
        .collect()
}

impl NormalizationConfig {
    pub fn min_name_length(&self) -> usize {
        self.min_name_length
    }

    pub fn prefixes(&self) -> &BTreeSet<String> {
        &self.prefixes
    }

    pub fn honorifics(&self) -> &BTreeSet<String> {
        &self.honorifics
    }

    pub fn case_fold(&self) -> bool {
        self.case_fold
    }

    /// Values below one are clamped to one.
    pub fn with_min_name_length(mut self, len: usize) -> Self {
        self.min_name_length = len.max(1);
        self
    }

    /// Tokens are trimmed and lowercased; empty tokens are discarded.
    pub fn with_prefixes<I, S>(mut self, tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.prefixes = clean_list(tokens);
        self
    }

    pub fn with_honorifics<I, S>(mut self, tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.honorifics = clean_list(tokens);
        self
    }

    pub fn with_case_fold(mut self, case_fold: bool) -> Self {
        self.case_fold = case_fold;
        self
    }
}

/// Counters accumulated while normalizing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NormalizationStats {
    /// Names that were present in the input but normalized to nothing.
    pub names_dropped: usize,
    pub prefixes_stripped: usize,
    pub honorifics_stripped: usize,
    /// Tokens shorter than the minimum length (initials, abbreviations).
    pub short_tokens_stripped: usize,
}

impl NormalizationStats {
    fn absorb(&mut self, other: NormalizationStats) {
        self.names_dropped += other.names_dropped;
        self.prefixes_stripped += other.prefixes_stripped;
        self.honorifics_stripped += other.honorifics_stripped;
        self.short_tokens_stripped += other.short_tokens_stripped;
    }
}

/// A profile after name cleaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRecord {
    pub id: String,
    pub forename: Option<String>,
    pub surname: Option<String>,
    pub father_id: Option<String>,
    pub mother_id: Option<String>,
}

impl ProfileRecord {
    pub fn name(&self, view: NameView) -> Option<&str> {
        match view {
            NameView::Forename => self.forename.as_deref(),
            NameView::Surname => self.surname.as_deref(),
        }
    }

    pub fn parents(&self) -> impl Iterator<Item = &str> {
        self.father_id.as_deref().into_iter().chain(self.mother_id.as_deref())
    }
}

/// Which name field labels a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NameView {
    #[default]
    Forename,
    Surname,
}

impl NameView {
    pub fn as_str(&self) -> &'static str {
        match self {
            NameView::Forename => "forename",
            NameView::Surname => "surname",
        }
    }
}

impl std::fmt::Display for NameView {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for NameView {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "forename" | "forenames" | "first" => Ok(NameView::Forename),
            "surname" | "surnames" | "last" => Ok(NameView::Surname),
            other => Err(format!("unknown name view `{other}` (expected forename or surname)")),
        }
    }
}

fn trim_edge_punctuation(token: &str) -> &str {
    token.trim_matches(|c: char| !c.is_alphanumeric())
}

/// Cleans one raw name. Returns `None` when no usable token remains.
pub fn normalize_name(raw: &str, config: &NormalizationConfig) -> Option<String> {
    normalize_name_counted(raw, config, &mut NormalizationStats::default())
}

fn normalize_name_counted(
    raw: &str,
    config: &NormalizationConfig,
    stats: &mut NormalizationStats,
) -> Option<String> {
    let composed: String = raw.nfc().collect();
    let mut kept: Vec<String> = Vec::new();
    for token in composed.split_whitespace() {
        // Fold before trimming: lowercasing may emit a trailing combining mark.
        let folded: String =
            if config.case_fold { token.to_lowercase().nfc().collect() } else { token.to_string() };
        let token = trim_edge_punctuation(&folded);
        if token.is_empty() {
            continue;
        }
        let lower = token.to_lowercase();
        if config.honorifics.contains(&lower) {
            stats.honorifics_stripped += 1;
            continue;
        }
        if config.prefixes.contains(&lower) {
            stats.prefixes_stripped += 1;
            continue;
        }
        if token.chars().count() < config.min_name_length {
            stats.short_tokens_stripped += 1;
            continue;
        }
        kept.push(token.to_string());
    }
    if kept.is_empty() {
        if !raw.trim().is_empty() {
            stats.names_dropped += 1;
        }
        return None;
    }
    Some(kept.join(" "))
}

/// Normalizes both name fields of every profile. Profiles are always kept,
/// even when both names end up absent: they still link generations.
pub fn normalize_profiles(
    profiles: &[RawProfile],
    config: &NormalizationConfig,
) -> (Vec<ProfileRecord>, NormalizationStats) {
    let mut stats = NormalizationStats::default();
    let records = profiles
        .iter()
        .map(|p| {
            let mut local = NormalizationStats::default();
            let record = ProfileRecord {
                id: p.profile_id.clone(),
                forename: normalize_name_counted(&p.forename, config, &mut local),
                surname: normalize_name_counted(&p.surname, config, &mut local),
                father_id: p.father_id.clone(),
                mother_id: p.mother_id.clone(),
            };
            stats.absorb(local);
            record
        })
        .collect();
    (records, stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(raw: &str) -> Option<String> {
        normalize_name(raw, &NormalizationConfig::default())
    }

    fn raw(id: &str, forename: &str, surname: &str) -> RawProfile {
        RawProfile {
            profile_id: id.into(),
            forename: forename.into(),
            surname: surname.into(),
            father_id: None,
            mother_id: None,
        }
    }

    #[test]
    fn middle_initial_is_dropped() {
        assert_eq!(norm("Aaron T Jones").as_deref(), Some("aaron jones"));
    }

    #[test]
    fn honorific_with_period() {
        assert_eq!(norm("Dr. Robert").as_deref(), Some("robert"));
        assert_eq!(norm("Robert Jr.").as_deref(), Some("robert"));
    }

    #[test]
    fn nothing_left() {
        assert_eq!(norm("T"), None);
        assert_eq!(norm(""), None);
        assert_eq!(norm("  Mr.  "), None);
    }

    #[test]
    fn prefixes_are_token_wise() {
        assert_eq!(norm("van Dyk").as_deref(), Some("dyk"));
        assert_eq!(norm("Devon").as_deref(), Some("devon"));
        assert_eq!(norm("Maria da Silva").as_deref(), Some("maria silva"));
    }

    #[test]
    fn interior_hyphen_survives() {
        assert_eq!(norm("Anne-Marie").as_deref(), Some("anne-marie"));
        assert_eq!(norm("-Anne-").as_deref(), Some("anne"));
    }

    #[test]
    fn nfc_collapses_decomposed_accents() {
        let decomposed = "Rene\u{301}e";
        assert_eq!(norm(decomposed), norm("Renée"));
        assert_eq!(norm(decomposed).unwrap().chars().count(), 5);
    }

    #[test]
    fn case_fold_off_keeps_case() {
        let cfg = NormalizationConfig::default().with_case_fold(false);
        assert_eq!(normalize_name("Dr. McDonald", &cfg).as_deref(), Some("McDonald"));
    }

    #[test]
    fn custom_lists_and_min_length() {
        let cfg = NormalizationConfig::default()
            .with_prefixes([" Von ", ""])
            .with_honorifics(["SIR"])
            .with_min_name_length(0);
        assert_eq!(cfg.min_name_length(), 1);
        assert!(cfg.prefixes().contains("von"));
        assert_eq!(cfg.prefixes().len(), 1);
        assert_eq!(normalize_name("Sir Otto von Bismarck", &cfg).as_deref(), Some("otto bismarck"));
        assert_eq!(normalize_name("A van", &cfg).as_deref(), Some("a van"));
    }

    #[test]
    fn profiles_compose_rules_and_count() {
        let profiles = vec![
            raw("p1", "Aaron T", "van Dyk"),
            raw("p2", "", "Smith"),
            raw("p3", "Mrs Mary", "Jones"),
        ];
        let (records, stats) = normalize_profiles(&profiles, &NormalizationConfig::default());
        assert_eq!(records.len(), 3);
        assert_eq!(records[0].forename.as_deref(), Some("aaron"));
        assert_eq!(records[0].surname.as_deref(), Some("dyk"));
        assert_eq!(records[1].forename, None);
        assert_eq!(records[1].surname.as_deref(), Some("smith"));
        assert_eq!(stats.honorifics_stripped, 1);
        assert_eq!(stats.prefixes_stripped, 1);
        assert_eq!(stats.short_tokens_stripped, 1);
        // An empty input field is absent, not dropped.
        assert_eq!(stats.names_dropped, 0);
    }

    #[test]
    fn name_view_parses() {
        assert_eq!("Surname".parse::<NameView>().unwrap(), NameView::Surname);
        assert!("middle".parse::<NameView>().is_err());
    }
}

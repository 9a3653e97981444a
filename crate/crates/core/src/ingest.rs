//! Loading profile dumps and ground-truth synonym lists.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::normalize::{normalize_name, NormalizationConfig};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error("duplicate profile id `{0}`")]
    DuplicateId(String),
    #[error("missing column `{0}` in header")]
    MissingColumn(String),
    #[error("file contains no usable rows")]
    EmptyFile,
}

impl IngestError {
    fn io(path: &Path, source: io::Error) -> Self {
        IngestError::Io { path: path.to_path_buf(), source }
    }

    fn malformed(line: u64, reason: impl Into<String>) -> Self {
        IngestError::MalformedRow { line, reason: reason.into() }
    }
}

/// Delimiter flavour of a profile file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Tsv,
    Csv,
}

impl TableFormat {
    /// Guesses from the file extension; anything but `.csv` is TSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => TableFormat::Csv,
            _ => TableFormat::Tsv,
        }
    }

    fn delimiter(self) -> u8 {
        match self {
            TableFormat::Tsv => b'\t',
            TableFormat::Csv => b',',
        }
    }
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(TableFormat::Tsv),
            "csv" => Ok(TableFormat::Csv),
            other => Err(format!("unknown table format `{other}` (expected tsv or csv)")),
        }
    }
}

/// One profile row as it appears in the dump.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawProfile {
    pub profile_id: String,
    pub forename: String,
    pub surname: String,
    pub father_id: Option<String>,
    pub mother_id: Option<String>,
}

pub const PROFILE_COLUMNS: [&str; 5] = ["id", "forename", "surname", "father_id", "mother_id"];

fn valid_key(key: &str) -> bool {
    !key.is_empty() && !key.chars().any(|c| c.is_whitespace() || c.is_control())
}

pub fn load_profiles(path: &Path, format: TableFormat) -> Result<Vec<RawProfile>, IngestError> {
    let file = File::open(path).map_err(|e| IngestError::io(path, e))?;
    read_profiles(BufReader::new(file), format).map_err(|e| match e {
        IngestError::Io { source, .. } => IngestError::io(path, source),
        other => other,
    })
}

/// Parses profiles from any reader. Header columns may come in any order;
/// extra columns are ignored.
pub fn read_profiles<R: Read>(reader: R, format: TableFormat) -> Result<Vec<RawProfile>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(format.delimiter())
        .quoting(format == TableFormat::Csv)
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);

    let header = rdr.headers().map_err(|e| csv_error(e, 1))?.clone();
    let mut columns = [0usize; 5];
    for (slot, name) in columns.iter_mut().zip(PROFILE_COLUMNS) {
        *slot = header
            .iter()
            .position(|h| h.trim().eq_ignore_ascii_case(name))
            .ok_or_else(|| IngestError::MissingColumn(name.to_string()))?;
    }
    let width = header.len();

    let mut seen: HashSet<String> = HashSet::new();
    let mut profiles = Vec::new();
    let mut record = csv::StringRecord::new();
    loop {
        let more = rdr.read_record(&mut record).map_err(|e| csv_error(e, 0))?;
        if !more {
            break;
        }
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        if record.len() != width {
            return Err(IngestError::malformed(
                line,
                format!("expected {width} fields, found {}", record.len()),
            ));
        }
        let id = record[columns[0]].trim();
        if !valid_key(id) {
            return Err(IngestError::malformed(line, format!("invalid profile id `{id}`")));
        }
        let parent = |idx: usize| -> Result<Option<String>, IngestError> {
            let key = record[columns[idx]].trim();
            if key.is_empty() {
                Ok(None)
            } else if valid_key(key) {
                Ok(Some(key.to_string()))
            } else {
                Err(IngestError::malformed(line, format!("invalid parent id `{key}`")))
            }
        };
        let profile = RawProfile {
            profile_id: id.to_string(),
            forename: record[columns[1]].to_string(),
            surname: record[columns[2]].to_string(),
            father_id: parent(3)?,
            mother_id: parent(4)?,
        };
        if !seen.insert(profile.profile_id.clone()) {
            return Err(IngestError::DuplicateId(profile.profile_id));
        }
        profiles.push(profile);
    }
    Ok(profiles)
}

fn csv_error(err: csv::Error, fallback_line: u64) -> IngestError {
    let line = err.position().map_or(fallback_line, |p| p.line());
    match err.into_kind() {
        csv::ErrorKind::Io(source) => IngestError::Io { path: PathBuf::new(), source },
        csv::ErrorKind::Utf8 { err, .. } => IngestError::malformed(line, format!("invalid UTF-8: {err}")),
        other => IngestError::malformed(line, format!("{other:?}")),
    }
}

/// Writes profiles with the canonical column order.
pub fn write_profiles<W: Write>(
    writer: W,
    profiles: &[RawProfile],
    format: TableFormat,
) -> io::Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .delimiter(format.delimiter())
        .quote_style(match format {
            TableFormat::Csv => csv::QuoteStyle::Necessary,
            TableFormat::Tsv => csv::QuoteStyle::Never,
        })
        .from_writer(writer);
    wtr.write_record(PROFILE_COLUMNS)?;
    for p in profiles {
        wtr.write_record([
            p.profile_id.as_str(),
            p.forename.as_str(),
            p.surname.as_str(),
            p.father_id.as_deref().unwrap_or(""),
            p.mother_id.as_deref().unwrap_or(""),
        ])?;
    }
    wtr.flush()
}

/// A query name with its known synonyms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruthEntry {
    pub query: String,
    pub synonyms: BTreeSet<String>,
}

/// Parsed ground truth, sorted by query name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroundTruth {
    pub entries: Vec<GroundTruthEntry>,
    /// Pairs whose synonym equals the query after normalization.
    pub self_pairs_dropped: usize,
    /// Pairs where either side normalized to nothing.
    pub unusable_pairs_dropped: usize,
}

impl GroundTruth {
    /// Groups `(query, synonym)` pairs that are already normalized.
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut grouped: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        let mut self_pairs = 0;
        for (q, s) in pairs {
            let (q, s) = (q.into(), s.into());
            if q == s {
                self_pairs += 1;
                continue;
            }
            grouped.entry(q).or_default().insert(s);
        }
        GroundTruth {
            entries: grouped
                .into_iter()
                .map(|(query, synonyms)| GroundTruthEntry { query, synonyms })
                .collect(),
            self_pairs_dropped: self_pairs,
            unusable_pairs_dropped: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pair_count(&self) -> usize {
        self.entries.iter().map(|e| e.synonyms.len()).sum()
    }
}

pub fn load_ground_truth(path: &Path) -> Result<GroundTruth, IngestError> {
    load_ground_truth_with(path, &NormalizationConfig::default())
}

/// Loads a ground-truth file, normalizing both columns with `config`.
pub fn load_ground_truth_with(
    path: &Path,
    config: &NormalizationConfig,
) -> Result<GroundTruth, IngestError> {
    let file = File::open(path).map_err(|e| IngestError::io(path, e))?;
    read_ground_truth(BufReader::new(file), config).map_err(|e| match e {
        IngestError::Io { source, .. } => IngestError::io(path, source),
        other => other,
    })
}

pub fn read_ground_truth<R: BufRead>(
    reader: R,
    config: &NormalizationConfig,
) -> Result<GroundTruth, IngestError> {
    let mut pairs = Vec::new();
    let mut unusable = 0;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx as u64 + 1;
        let line = line.map_err(|e| IngestError::Io { path: PathBuf::new(), source: e })?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(IngestError::malformed(
                line_no,
                format!("expected `query<TAB>synonym`, found {} fields", fields.len()),
            ));
        }
        match (normalize_name(fields[0], config), normalize_name(fields[1], config)) {
            (Some(q), Some(s)) => pairs.push((q, s)),
            _ => unusable += 1,
        }
    }
    if pairs.is_empty() {
        return Err(IngestError::EmptyFile);
    }
    let mut gt = GroundTruth::from_pairs(pairs);
    gt.unusable_pairs_dropped = unusable;
    if gt.is_empty() {
        return Err(IngestError::EmptyFile);
    }
    Ok(gt)
}

/// Writes one `query<TAB>synonym` line per pair.
pub fn write_ground_truth<W: Write>(mut writer: W, gt: &GroundTruth) -> io::Result<()> {
    for entry in &gt.entries {
        for syn in &entry.synonyms {
            writeln!(writer, "{}\t{}", entry.query, syn)?;
        }
    }
    writer.flush()
}

//! String distance kernels over Unicode scalar values.
//!
//! * [`edit_distance`]: Levenshtein (insert, delete, substitute; unit costs).
//! * [`damerau_levenshtein`]: optimal string alignment, i.e. Levenshtein plus
//!   adjacent transposition, where no substring is edited more than once.
//! * [`jaro_winkler`]: Jaro similarity with the Winkler common-prefix boost
//!   (scaling factor 0.1, prefix capped at four characters).
//!
//! All kernels are pure and allocate only scratch rows.

use std::fmt;
use std::str::FromStr;

use num_traits::Float;
use thiserror::Error;

/// Winkler prefix scaling factor.
pub const WINKLER_PREFIX_WEIGHT: f64 = 0.1;
/// Longest common prefix the Winkler boost looks at.
pub const WINKLER_MAX_PREFIX: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid edit-distance range [{lo}, {hi}]: {reason}")]
pub struct InvalidRange {
    pub lo: u32,
    pub hi: u32,
    pub reason: &'static str,
}

/// Inclusive interval `[lo, hi]` of edit distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EditDistanceRange {
    lo: u32,
    hi: u32,
}

impl EditDistanceRange {
    pub fn new(lo: u32, hi: u32) -> Result<Self, InvalidRange> {
        if lo > hi {
            return Err(InvalidRange { lo, hi, reason: "lo must not exceed hi" });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> u32 {
        self.hi
    }

    pub fn contains(&self, distance: u32) -> bool {
        self.lo <= distance && distance <= self.hi
    }
}

impl Default for EditDistanceRange {
    fn default() -> Self {
        Self { lo: 1, hi: 3 }
    }
}

impl fmt::Display for EditDistanceRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Which string metric a baseline ranks by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StringMetric {
    EditDistance,
    DamerauLevenshtein,
    JaroWinkler,
}

impl StringMetric {
    pub const ALL: [StringMetric; 3] =
        [StringMetric::EditDistance, StringMetric::DamerauLevenshtein, StringMetric::JaroWinkler];

    pub fn as_str(&self) -> &'static str {
        match self {
            StringMetric::EditDistance => "ed",
            StringMetric::DamerauLevenshtein => "dld",
            StringMetric::JaroWinkler => "jw",
        }
    }
}

impl fmt::Display for StringMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StringMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ed" | "edit" | "edit_distance" | "levenshtein" => Ok(StringMetric::EditDistance),
            "dld" | "damerau" | "damerau_levenshtein" => Ok(StringMetric::DamerauLevenshtein),
            "jw" | "jaro_winkler" | "jarowinkler" => Ok(StringMetric::JaroWinkler),
            other => Err(format!("unknown string metric `{other}` (expected ed, dld or jw)")),
        }
    }
}

/// Strips the common prefix and suffix; neither changes any of the edit distances.
fn trim_common<'a>(mut a: &'a [char], mut b: &'a [char]) -> (&'a [char], &'a [char]) {
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    a = &a[prefix..];
    b = &b[prefix..];
    let suffix = a.iter().rev().zip(b.iter().rev()).take_while(|(x, y)| x == y).count();
    (&a[..a.len() - suffix], &b[..b.len() - suffix])
}

/// Levenshtein distance between `a` and `b`, counted in Unicode scalar values.
pub fn edit_distance(a: &str, b: &str) -> u32 {
    if a == b {
        return 0;
    }
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    levenshtein_chars(&a, &b)
}

pub(crate) fn levenshtein_chars(a: &[char], b: &[char]) -> u32 {
    let (a, b) = trim_common(a, b);
    // Keep the scratch row on the shorter side.
    let (a, b) = if a.len() < b.len() { (b, a) } else { (a, b) };
    if b.is_empty() {
        return a.len() as u32;
    }

    let mut row: Vec<u32> = (0..=b.len() as u32).collect();
    for (i, &ca) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i as u32 + 1;
        for (j, &cb) in b.iter().enumerate() {
            let above = row[j + 1];
            let cost = u32::from(ca != cb);
            row[j + 1] = (diag + cost).min(above + 1).min(row[j] + 1);
            diag = above;
        }
    }
    row[b.len()]
}

/// Restricted Damerau-Levenshtein (optimal string alignment) distance.
pub fn damerau_levenshtein(a: &str, b: &str) -> u32 {
    if a == b {
        return 0;
    }
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let (a, b) = trim_common(&a, &b);
    if a.is_empty() {
        return b.len() as u32;
    }
    if b.is_empty() {
        return a.len() as u32;
    }

    let width = b.len() + 1;
    // Three rolling rows: i-2, i-1, i.
    let mut two_back = vec![0u32; width];
    let mut prev: Vec<u32> = (0..=b.len() as u32).collect();
    let mut cur = vec![0u32; width];
    for i in 1..=a.len() {
        cur[0] = i as u32;
        for j in 1..=b.len() {
            let cost = u32::from(a[i - 1] != b[j - 1]);
            let mut best = (prev[j - 1] + cost).min(prev[j] + 1).min(cur[j - 1] + 1);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                best = best.min(two_back[j - 2] + 1);
            }
            cur[j] = best;
        }
        std::mem::swap(&mut two_back, &mut prev);
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Jaro similarity in `[0, 1]`.
pub fn jaro_in<F: Float>(a: &str, b: &str) -> F {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    jaro_chars(&a, &b)
}

fn jaro_chars<F: Float>(a: &[char], b: &[char]) -> F {
    if a.is_empty() && b.is_empty() {
        return F::one();
    }
    if a.is_empty() || b.is_empty() {
        return F::zero();
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);

    let mut b_taken = vec![false; b.len()];
    let mut a_matched: Vec<char> = Vec::with_capacity(a.len());
    for (i, &ca) in a.iter().enumerate() {
        let start = i.saturating_sub(window);
        let end = (i + window + 1).min(b.len());
        for j in start..end {
            if !b_taken[j] && b[j] == ca {
                b_taken[j] = true;
                a_matched.push(ca);
                break;
            }
        }
    }
    let matches = a_matched.len();
    if matches == 0 {
        return F::zero();
    }
    let b_matched = b.iter().zip(&b_taken).filter(|(_, &t)| t).map(|(&c, _)| c);
    let half_transpositions = a_matched.iter().zip(b_matched).filter(|(x, y)| **x != *y).count();

    let m = F::from(matches).unwrap();
    let t = F::from(half_transpositions).unwrap() / F::from(2.0).unwrap();
    let three = F::from(3.0).unwrap();
    (m / F::from(a.len()).unwrap() + m / F::from(b.len()).unwrap() + (m - t) / m) / three
}

/// Jaro-Winkler similarity in `[0, 1]`, computed in the float type `F`.
pub fn jaro_winkler_in<F: Float>(a: &str, b: &str) -> F {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let jaro: F = jaro_chars(&a, &b);
    let prefix = a.iter().zip(&b).take(WINKLER_MAX_PREFIX).take_while(|(x, y)| x == y).count();
    let boost = F::from(prefix as f64 * WINKLER_PREFIX_WEIGHT).unwrap();
    let sim = jaro + boost * (F::one() - jaro);
    sim.min(F::one())
}

/// Jaro-Winkler similarity as `f64`.
pub fn jaro_winkler(a: &str, b: &str) -> f64 {
    jaro_winkler_in::<f64>(a, b)
}

//! Independent reference implementations used as test oracles. They share no
//! code with the library beyond the phonetic encoder.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use graft_core::phonetic::double_metaphone;
use graft_core::suggest::OrderingFunction;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Full-matrix Levenshtein.
pub fn levenshtein(a: &str, b: &str) -> u32 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0u32; b.len() + 1]; a.len() + 1];
    for i in 0..=a.len() {
        d[i][0] = i as u32;
    }
    for j in 0..=b.len() {
        d[0][j] = j as u32;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + u32::from(a[i - 1] != b[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

/// Full-matrix optimal string alignment.
pub fn osa(a: &str, b: &str) -> u32 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0u32; b.len() + 1]; a.len() + 1];
    for i in 0..=a.len() {
        d[i][0] = i as u32;
    }
    for j in 0..=b.len() {
        d[0][j] = j as u32;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = u32::from(a[i - 1] != b[j - 1]);
            let mut v = (d[i - 1][j - 1] + cost).min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                v = v.min(d[i - 2][j - 2] + 1);
            }
            d[i][j] = v;
        }
    }
    d[a.len()][b.len()]
}

/// Textbook Jaro-Winkler, boost always applied, p = 0.1, prefix ≤ 4.
pub fn jaro_winkler(s1: &str, s2: &str) -> f64 {
    let a: Vec<char> = s1.chars().collect();
    let b: Vec<char> = s2.chars().collect();
    let jaro = if a.is_empty() && b.is_empty() {
        1.0
    } else if a.is_empty() || b.is_empty() {
        0.0
    } else {
        let range = (a.len().max(b.len()) / 2).saturating_sub(1);
        let mut am = vec![false; a.len()];
        let mut bm = vec![false; b.len()];
        let mut m = 0usize;
        for i in 0..a.len() {
            let lo = i.saturating_sub(range);
            let hi = usize::min(i + range + 1, b.len());
            for j in lo..hi {
                if !bm[j] && a[i] == b[j] {
                    am[i] = true;
                    bm[j] = true;
                    m += 1;
                    break;
                }
            }
        }
        if m == 0 {
            0.0
        } else {
            let mut k = 0;
            let mut half = 0;
            for i in 0..a.len() {
                if am[i] {
                    while !bm[k] {
                        k += 1;
                    }
                    if a[i] != b[k] {
                        half += 1;
                    }
                    k += 1;
                }
            }
            let m = m as f64;
            (m / a.len() as f64 + m / b.len() as f64 + (m - half as f64 / 2.0) / m) / 3.0
        }
    };
    let mut l = 0;
    while l < 4 && l < a.len() && l < b.len() && a[l] == b[l] {
        l += 1;
    }
    jaro + l as f64 * 0.1 * (1.0 - jaro)
}

pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &[char], min: usize, max: usize) -> String {
    let len = rng.gen_range(min..=max);
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

/// Undirected graph given as sorted vocabulary and edge list.
pub struct OracleGraph {
    pub names: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl OracleGraph {
    /// Hop distances between all vertex pairs by repeated relaxation
    /// (Floyd-Warshall with unit weights). `u32::MAX` when unreachable.
    pub fn all_pairs(&self) -> Vec<Vec<u32>> {
        let n = self.names.len();
        let inf = u32::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for i in 0..n {
            d[i][i] = 0;
        }
        for &(a, b) in &self.edges {
            d[a][b] = 1;
            d[b][a] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        for row in &mut d {
            for v in row.iter_mut() {
                if *v >= inf {
                    *v = u32::MAX;
                }
            }
        }
        d
    }
}

fn dm_codes(name: &str) -> Vec<String> {
    match double_metaphone(name) {
        Ok((p, s)) => vec![p, s],
        Err(_) => vec![String::new(), String::new()],
    }
}

pub fn min_dm(a: &str, b: &str) -> u32 {
    let (ca, cb) = (dm_codes(a), dm_codes(b));
    let mut best = u32::MAX;
    for x in &ca {
        for y in &cb {
            best = best.min(levenshtein(x, y));
        }
    }
    best
}

/// Score as an exact fraction straight from the formula table, with the
/// half written as doubling numerator and denominator.
pub fn formula(sp: u32, ed: u32, dm: u32, f: OrderingFunction) -> (u128, u128) {
    let (sp, ed, dm) = (sp as u128, ed as u128, dm as u128);
    let dm2 = if dm == 0 { 1 } else { 2 * dm }; // 2 * max(dm, 1/2)
    match f {
        OrderingFunction::NetEd => (1, sp * ed),
        OrderingFunction::Net2Ed => (1, sp * sp * ed),
        OrderingFunction::EdOfDmPhone => (2, dm2),
        OrderingFunction::NetEdOfDmPhoneEd => (2, sp * ed * dm2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleHit {
    pub name: String,
    pub num: u128,
    pub den: u128,
    pub hop: u32,
    pub ed: u32,
}

/// Enumerate every reachable vertex, score it, sort, cut at `k`.
pub fn graft_oracle(g: &OracleGraph, dist: &[Vec<u32>], query: &str, depth: u32, f: OrderingFunction, k: usize) -> Vec<OracleHit> {
    let Some(q) = g.names.iter().position(|n| n == query) else {
        return Vec::new();
    };
    let mut hits: Vec<OracleHit> = (0..g.names.len())
        .filter(|&v| v != q && dist[q][v] != u32::MAX && dist[q][v] <= depth)
        .map(|v| {
            let name = &g.names[v];
            let ed = levenshtein(query, name);
            let (num, den) = formula(dist[q][v], ed, min_dm(query, name), f);
            OracleHit { name: name.clone(), num, den, hop: dist[q][v], ed }
        })
        .collect();
    hits.sort_by(|a, b| {
        (b.num * a.den)
            .cmp(&(a.num * b.den))
            .then(a.ed.cmp(&b.ed))
            .then_with(|| a.name.cmp(&b.name))
    });
    hits.truncate(k);
    hits
}

/// Random graph: random short names joined by random pairs, filtered by
/// an edit-distance ceiling of 4.
pub fn random_graph_pairs(rng: &mut ChaCha8Rng, max_names: usize, max_pairs: usize) -> (Vec<String>, Vec<(String, String)>) {
    let alphabet: Vec<char> = "aeiobdklmnrst".chars().collect();
    let n = rng.gen_range(2..=max_names);
    let mut names: BTreeSet<String> = BTreeSet::new();
    while names.len() < n {
        names.insert(random_word(rng, &alphabet, 2, 5));
    }
    let names: Vec<String> = names.into_iter().collect();
    let m = rng.gen_range(0..=max_pairs);
    let pairs = (0..m)
        .map(|_| {
            let a = &names[rng.gen_range(0..names.len())];
            let b = &names[rng.gen_range(0..names.len())];
            (a.clone(), b.clone())
        })
        .collect();
    (names, pairs)
}

/// Oracle view of the graph a pair list produces under `[lo, hi]`.
pub fn oracle_graph(names: &[String], pairs: &[(String, String)], lo: u32, hi: u32) -> OracleGraph {
    let mut all: BTreeSet<String> = names.iter().cloned().collect();
    for (a, b) in pairs {
        all.insert(a.clone());
        all.insert(b.clone());
    }
    let names: Vec<String> = all.into_iter().collect();
    let idx: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut edges = BTreeSet::new();
    for (a, b) in pairs {
        let d = levenshtein(a, b);
        if a != b && lo <= d && d <= hi {
            let (x, y) = (idx[a.as_str()], idx[b.as_str()]);
            edges.insert((x.min(y), x.max(y)));
        }
    }
    OracleGraph { names, edges }
}


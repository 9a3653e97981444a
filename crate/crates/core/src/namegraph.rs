//! Weighted name graph `G_N^{lo,hi}`.
//!
//! Ancestor/descendant name pairs are first tallied per distinct unordered
//! pair ([`PairCounts`]), with the edit distance computed once per pair. A
//! [`NameGraph`] is then a filter of the tally by an edit-distance range, so
//! a range sweep reuses one tally.
//!
//! Traversal is undirected. Direction counts are kept for diagnostics.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::io::{self, BufRead, Write};

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use thiserror::Error;

use crate::normalize::NameView;
use crate::strsim::{edit_distance, EditDistanceRange, InvalidRange};
use crate::treegraph::{FamilyTreeGraph, RelationKind};

pub const GRAPH_FORMAT_MAGIC: &str = "graft-namegraph";
pub const GRAPH_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeRecord {
    pub weight: u64,
    pub distance: u32,
    /// (smaller name was the ancestor, smaller name was the descendant),
    /// "smaller" in byte order.
    pub direction_counts: (u64, u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PairTally {
    a: u32,
    b: u32,
    distance: u32,
    forward: u64,
    backward: u64,
}

/// Distinct unordered name pairs with occurrence counts and cached distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCounts {
    vocabulary: Vec<String>,
    tallies: Vec<PairTally>,
    /// Pairs whose two names are identical (distance 0).
    identical: u64,
    total: u64,
}

impl PairCounts {
    /// `vocabulary` must be sorted and deduplicated; pairs index into it.
    pub fn from_ids<I>(vocabulary: Vec<String>, pairs: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        debug_assert!(vocabulary.windows(2).all(|w| w[0] < w[1]));
        let mut counts: HashMap<(u32, u32), (u64, u64)> = HashMap::new();
        let mut identical = 0;
        let mut total = 0;
        for (anc, desc) in pairs {
            total += 1;
            if anc == desc {
                identical += 1;
                continue;
            }
            let entry = counts.entry((anc.min(desc), anc.max(desc))).or_default();
            if anc < desc {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
        let mut keyed: Vec<((u32, u32), (u64, u64))> = counts.into_iter().collect();
        keyed.sort_unstable_by_key(|&(k, _)| k);
        let tallies = keyed
            .par_iter()
            .map(|&((a, b), (forward, backward))| PairTally {
                a,
                b,
                distance: edit_distance(&vocabulary[a as usize], &vocabulary[b as usize]),
                forward,
                backward,
            })
            .collect();
        Self { vocabulary, tallies, identical, total }
    }

    /// Interns string pairs. Names occurring only in pairs join the vocabulary.
    pub fn from_names<'a, P, V>(pairs: P, vocabulary: V) -> Self
    where
        P: IntoIterator<Item = (&'a str, &'a str)>,
        V: IntoIterator<Item = &'a str>,
    {
        let pairs: Vec<(&str, &str)> = pairs.into_iter().collect();
        let mut vocab: Vec<String> = vocabulary
            .into_iter()
            .chain(pairs.iter().flat_map(|&(a, d)| [a, d]))
            .map(str::to_string)
            .collect();
        vocab.sort_unstable();
        vocab.dedup();
        let id = |n: &str| vocab.binary_search_by(|x| x.as_str().cmp(n)).unwrap() as u32;
        let ids: Vec<(u32, u32)> = pairs.iter().map(|&(a, d)| (id(a), id(d))).collect();
        Self::from_ids(vocab, ids)
    }

    /// Tally for one relation of a built tree. The vocabulary is every name
    /// in the tree.
    pub fn from_tree(tree: &FamilyTreeGraph, relation: RelationKind) -> Self {
        Self::from_ids(tree.names().to_vec(), tree.ancestor_name_id_pairs(relation))
    }

    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    /// Number of input pairs, including identical-name pairs.
    pub fn total_pairs(&self) -> u64 {
        self.total
    }

    pub fn identical_pairs(&self) -> u64 {
        self.identical
    }

    pub fn distinct_pairs(&self) -> usize {
        self.tallies.len()
    }
}

/// `G_N^{lo,hi}`: undirected, weighted, no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameGraph {
    range: EditDistanceRange,
    view: Option<NameView>,
    relation: Option<RelationKind>,
    vocabulary: Vec<String>,
    /// Keyed by `(a, b)` with `a < b`.
    edges: BTreeMap<(u32, u32), EdgeRecord>,
    /// Only names with at least one edge; neighbours sorted.
    adjacency: BTreeMap<u32, Vec<u32>>,
}

impl NameGraph {
    /// Keeps the tallied pairs whose distance lies in `range`.
    pub fn from_counts(counts: &PairCounts, range: EditDistanceRange) -> Result<Self, InvalidRange> {
        if range.lo() < 1 {
            return Err(InvalidRange { lo: range.lo(), hi: range.hi(), reason: "lo must be at least 1" });
        }
        let edges: BTreeMap<(u32, u32), EdgeRecord> = counts
            .tallies
            .iter()
            .filter(|t| range.contains(t.distance))
            .map(|t| {
                let record = EdgeRecord {
                    weight: t.forward + t.backward,
                    distance: t.distance,
                    direction_counts: (t.forward, t.backward),
                };
                ((t.a, t.b), record)
            })
            .collect();
        Ok(Self::assemble(range, counts.vocabulary.clone(), edges))
    }

    fn assemble(range: EditDistanceRange, vocabulary: Vec<String>, edges: BTreeMap<(u32, u32), EdgeRecord>) -> Self {
        let mut adjacency: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &(a, b) in edges.keys() {
            adjacency.entry(a).or_default().push(b);
            adjacency.entry(b).or_default().push(a);
        }
        for list in adjacency.values_mut() {
            list.sort_unstable();
        }
        Self { range, view: None, relation: None, vocabulary, edges, adjacency }
    }

    /// Records which tree view and relation the graph was built from.
    pub fn with_origin(mut self, view: NameView, relation: RelationKind) -> Self {
        self.view = Some(view);
        self.relation = Some(relation);
        self
    }

    pub fn range(&self) -> EditDistanceRange {
        self.range
    }

    pub fn view(&self) -> Option<NameView> {
        self.view
    }

    pub fn relation(&self) -> Option<RelationKind> {
        self.relation
    }

    /// All names, isolated ones included, sorted.
    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    pub fn contains(&self, name: &str) -> bool {
        self.id_of(name).is_some()
    }

    pub fn vertex_count(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn non_isolated_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().map(|e| e.weight).sum()
    }

    pub fn degree(&self, name: &str) -> usize {
        self.id_of(name).and_then(|id| self.adjacency.get(&id)).map_or(0, Vec::len)
    }

    pub fn is_non_isolated(&self, name: &str) -> bool {
        self.degree(name) > 0
    }

    pub fn neighbors(&self, name: &str) -> impl Iterator<Item = &str> {
        self.id_of(name)
            .and_then(|id| self.adjacency.get(&id))
            .into_iter()
            .flatten()
            .map(move |&n| self.vocabulary[n as usize].as_str())
    }

    pub fn edge(&self, a: &str, b: &str) -> Option<&EdgeRecord> {
        let (a, b) = (self.id_of(a)?, self.id_of(b)?);
        self.edges.get(&(a.min(b), a.max(b)))
    }

    /// Edges as `(a, b, record)` with `a < b`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, &EdgeRecord)> {
        self.edges
            .iter()
            .map(|(&(a, b), e)| (self.vocabulary[a as usize].as_str(), self.vocabulary[b as usize].as_str(), e))
    }

    /// Connected components among non-isolated vertices.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::<u32>::new(self.vocabulary.len());
        for &(a, b) in self.edges.keys() {
            uf.union(a, b);
        }
        self.adjacency.keys().filter(|&&v| uf.find_mut(v) == v).count()
    }

    fn id_of(&self, name: &str) -> Option<u32> {
        self.vocabulary.binary_search_by(|x| x.as_str().cmp(name)).ok().map(|i| i as u32)
    }

    /// Writes the versioned line format. Output is a pure function of the graph.
    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{GRAPH_FORMAT_MAGIC}\t{GRAPH_FORMAT_VERSION}")?;
        writeln!(w, "range\t{}\t{}", self.range.lo(), self.range.hi())?;
        if let Some(view) = self.view {
            writeln!(w, "view\t{view}")?;
        }
        if let Some(relation) = self.relation {
            writeln!(w, "relation\t{relation}")?;
        }
        writeln!(w, "vocabulary\t{}", self.vocabulary.len())?;
        for name in &self.vocabulary {
            writeln!(w, "{name}")?;
        }
        writeln!(w, "edges\t{}", self.edges.len())?;
        for (&(a, b), e) in &self.edges {
            let (f, r) = e.direction_counts;
            writeln!(w, "{a}\t{b}\t{}\t{}\t{f}\t{r}", e.weight, e.distance)?;
        }
        w.flush()
    }

    pub fn read_from<R: BufRead>(reader: R) -> Result<Self, GraphFormatError> {
        let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut next = |what: &'static str| -> Result<(usize, String), GraphFormatError> {
            match lines.next() {
                Some((n, Ok(line))) => Ok((n, line)),
                Some((_, Err(e))) => Err(GraphFormatError::Io(e)),
                None => Err(GraphFormatError::Truncated(what)),
            }
        };
        let bad = |line: usize, reason: String| GraphFormatError::Malformed { line, reason };

        let (n, header) = next("header")?;
        match header.split_once('\t') {
            Some((GRAPH_FORMAT_MAGIC, v)) => {
                let version: u32 = v.parse().map_err(|_| bad(n, format!("bad version `{v}`")))?;
                if version != GRAPH_FORMAT_VERSION {
                    return Err(GraphFormatError::UnsupportedVersion(version));
                }
            }
            _ => return Err(GraphFormatError::NotAGraphFile),
        }

        let mut range = None;
        let mut view = None;
        let mut relation = None;
        let vocab_len = loop {
            let (n, line) = next("vocabulary")?;
            let fields: Vec<&str> = line.split('\t').collect();
            match fields.as_slice() {
                ["range", lo, hi] => {
                    let parse = |s: &str| s.parse::<u32>().map_err(|_| bad(n, format!("bad range bound `{s}`")));
                    let r = EditDistanceRange::new(parse(lo)?, parse(hi)?).map_err(|e| bad(n, e.to_string()))?;
                    range = Some(r);
                }
                ["view", v] => view = Some(v.parse().map_err(|e: String| bad(n, e))?),
                ["relation", r] => relation = Some(r.parse().map_err(|e: String| bad(n, e))?),
                ["vocabulary", len] => break len.parse::<usize>().map_err(|_| bad(n, format!("bad count `{len}`")))?,
                _ => return Err(bad(n, format!("unexpected line `{line}`"))),
            }
        };
        let range = range.ok_or(GraphFormatError::Truncated("range"))?;

        let mut vocabulary = Vec::with_capacity(vocab_len);
        for _ in 0..vocab_len {
            let (n, name) = next("vocabulary entry")?;
            if vocabulary.last().is_some_and(|prev: &String| prev.as_str() >= name.as_str()) {
                return Err(bad(n, "vocabulary not strictly sorted".into()));
            }
            vocabulary.push(name);
        }

        let (n, line) = next("edge count")?;
        let edge_len: usize = match line.split_once('\t') {
            Some(("edges", len)) => len.parse().map_err(|_| bad(n, format!("bad count `{len}`")))?,
            _ => return Err(bad(n, format!("expected edge count, got `{line}`"))),
        };
        let mut edges = BTreeMap::new();
        for _ in 0..edge_len {
            let (n, line) = next("edge")?;
            let nums: Result<Vec<u64>, _> = line.split('\t').map(str::parse::<u64>).collect();
            let nums = nums.map_err(|_| bad(n, format!("bad edge line `{line}`")))?;
            let [a, b, weight, distance, f, r] = nums[..] else {
                return Err(bad(n, format!("edge line needs 6 fields, got {}", nums.len())));
            };
            if a >= b || b as usize >= vocabulary.len() {
                return Err(bad(n, format!("bad endpoints {a}, {b}")));
            }
            if weight != f + r || weight == 0 || !range.contains(distance as u32) {
                return Err(bad(n, "edge record violates graph invariants".into()));
            }
            let record = EdgeRecord { weight, distance: distance as u32, direction_counts: (f, r) };
            edges.insert((a as u32, b as u32), record);
        }
        if let Some((n, Ok(extra))) = lines.next() {
            return Err(bad(n, format!("trailing data `{extra}`")));
        }
        let mut graph = Self::assemble(range, vocabulary, edges);
        graph.view = view;
        graph.relation = relation;
        Ok(graph)
    }
}

#[derive(Debug, Error)]
pub enum GraphFormatError {
    #[error("not a name-graph file (missing `{GRAPH_FORMAT_MAGIC}` header)")]
    NotAGraphFile,
    #[error("unsupported name-graph format version {0} (this build reads version {GRAPH_FORMAT_VERSION})")]
    UnsupportedVersion(u32),
    #[error("name-graph file ends early: missing {0}")]
    Truncated(&'static str),
    #[error("name-graph line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Builds `G_N^{lo,hi}` from `(ancestor, descendant)` name pairs.
pub fn build_name_graph<'a, P, V>(pairs: P, range: EditDistanceRange, vocabulary: V) -> Result<NameGraph, InvalidRange>
where
    P: IntoIterator<Item = (&'a str, &'a str)>,
    V: IntoIterator<Item = &'a str>,
{
    NameGraph::from_counts(&PairCounts::from_names(pairs, vocabulary), range)
}

/// Breadth-first hop counts from `name`, excluding `name` itself.
pub fn neighbors_within<'g>(graph: &'g NameGraph, name: &str, depth: u32) -> BTreeMap<&'g str, u32> {
    let mut out = BTreeMap::new();
    let Some(start) = graph.id_of(name) else {
        return out;
    };
    let mut seen: HashMap<u32, u32> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let hop = seen[&v];
        if hop == depth {
            continue;
        }
        for &w in graph.adjacency.get(&v).into_iter().flatten() {
            if !seen.contains_key(&w) {
                seen.insert(w, hop + 1);
                out.insert(graph.vocabulary[w as usize].as_str(), hop + 1);
                queue.push_back(w);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSizeRow {
    pub relation: RelationKind,
    pub range: EditDistanceRange,
    pub vertices: usize,
    pub non_isolated: usize,
    pub edges: usize,
    pub components: usize,
}

pub fn graph_size_report(graphs: &[(RelationKind, EditDistanceRange, &NameGraph)]) -> Vec<GraphSizeRow> {
    graphs
        .iter()
        .map(|&(relation, range, g)| GraphSizeRow {
            relation,
            range,
            vertices: g.vertex_count(),
            non_isolated: g.non_isolated_count(),
            edges: g.edge_count(),
            components: g.component_count(),
        })
        .collect()
}

pub fn write_size_report<W: Write>(mut w: W, rows: &[GraphSizeRow]) -> io::Result<()> {
    writeln!(w, "relation\trange\tvertices\tnon_isolated\tedges\tcomponents")?;
    for r in rows {
        writeln!(w, "{}\t{}\t{}\t{}\t{}\t{}", r.relation, r.range, r.vertices, r.non_isolated, r.edges, r.components)?;
    }
    Ok(())
}

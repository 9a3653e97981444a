//! Directed family-tree graph over profiles, and ancestor name-pair streams.
//!
//! Every profile is a vertex. A profile whose selected name field is absent
//! stays in the graph as an unnamed vertex so that a grandchild still links
//! to a grandparent through it; it just never appears in an emitted pair.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use petgraph::algo::kosaraju_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::normalize::{NameView, ProfileRecord};

const UNNAMED: u32 = u32::MAX;

/// Which generational link populates a name graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    ParentChild,
    GrandparentGrandchild,
    GreatGrandparentGreatGrandchild,
    AllAncestors,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] = [
        RelationKind::ParentChild,
        RelationKind::GrandparentGrandchild,
        RelationKind::GreatGrandparentGreatGrandchild,
        RelationKind::AllAncestors,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RelationKind::ParentChild => "parent_child",
            RelationKind::GrandparentGrandchild => "grandparent_grandchild",
            RelationKind::GreatGrandparentGreatGrandchild => "greatgrandparent_greatgrandchild",
            RelationKind::AllAncestors => "all_ancestors",
        }
    }

    /// Path lengths whose endpoints this relation pairs up.
    pub fn path_lengths(&self) -> &'static [usize] {
        match self {
            RelationKind::ParentChild => &[1],
            RelationKind::GrandparentGrandchild => &[2],
            RelationKind::GreatGrandparentGreatGrandchild => &[3],
            RelationKind::AllAncestors => &[1, 2, 3],
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "parent_child" | "parent" | "pc" => Ok(RelationKind::ParentChild),
            "grandparent_grandchild" | "grandparent" | "gp" => Ok(RelationKind::GrandparentGrandchild),
            "greatgrandparent_greatgrandchild" | "great_grandparent" | "greatgrandparent" | "ggp" => {
                Ok(RelationKind::GreatGrandparentGreatGrandchild)
            }
            "all_ancestors" | "all" => Ok(RelationKind::AllAncestors),
            other => Err(format!(
                "unknown relation `{other}` (expected parent_child, grandparent_grandchild, \
                 greatgrandparent_greatgrandchild or all_ancestors)"
            )),
        }
    }
}

/// Data-quality counters and shape of a built tree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeStats {
    pub vertices: usize,
    pub named_vertices: usize,
    pub edges: usize,
    /// Weakly-connected components of the whole vertex set.
    pub components: usize,
    /// Parent references to keys that are not in the data.
    pub dangling_parents: usize,
    /// Profiles listed as their own parent.
    pub self_parents: usize,
    /// Father and mother pointing at the same profile.
    pub duplicate_parents: usize,
}

/// `G_T`: parent → child edges over profile keys.
#[derive(Debug, Clone)]
pub struct FamilyTreeGraph {
    view: NameView,
    keys: Vec<String>,
    /// Interned name per vertex, `UNNAMED` when absent.
    name_ids: Vec<u32>,
    /// Distinct names, sorted; ids index into this.
    names: Vec<String>,
    child_offsets: Vec<usize>,
    children: Vec<u32>,
    stats: TreeStats,
    cycles: Vec<Vec<String>>,
}

impl FamilyTreeGraph {
    pub fn view(&self) -> NameView {
        self.view
    }

    pub fn stats(&self) -> &TreeStats {
        &self.stats
    }

    pub fn vertex_count(&self) -> usize {
        self.keys.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.len()
    }

    /// Strongly-connected groups of two or more profiles, each sorted, listed
    /// in key order. Non-empty only for corrupt ancestry.
    pub fn cycles(&self) -> &[Vec<String>] {
        &self.cycles
    }

    /// Distinct names carried by vertices, sorted.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn key(&self, vertex: u32) -> &str {
        &self.keys[vertex as usize]
    }

    pub fn name_of(&self, vertex: u32) -> Option<&str> {
        match self.name_ids[vertex as usize] {
            UNNAMED => None,
            id => Some(&self.names[id as usize]),
        }
    }

    pub fn children_of(&self, vertex: u32) -> &[u32] {
        let v = vertex as usize;
        &self.children[self.child_offsets[v]..self.child_offsets[v + 1]]
    }

    /// All `(parent, child)` edges in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        (0..self.keys.len() as u32)
            .flat_map(move |u| self.children_of(u).iter().map(move |&v| (self.key(u), self.key(v))))
    }

    /// Name-id pairs `(ancestor, descendant)` for one relation, one per path
    /// instance. Ids index into [`names`](Self::names).
    pub fn ancestor_name_id_pairs(&self, relation: RelationKind) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for &len in relation.path_lengths() {
            let chunk: Vec<(u32, u32)> = (0..self.keys.len() as u32)
                .into_par_iter()
                .flat_map_iter(|u| self.paths_from(u, len))
                .collect();
            out.extend(chunk);
        }
        out
    }

    fn paths_from(&self, source: u32, len: usize) -> Vec<(u32, u32)> {
        let a = self.name_ids[source as usize];
        if a == UNNAMED {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut stack: Vec<(u32, usize)> = vec![(source, 0)];
        while let Some((v, depth)) = stack.pop() {
            if depth == len {
                let d = self.name_ids[v as usize];
                if d != UNNAMED {
                    out.push((a, d));
                }
                continue;
            }
            // Reverse so that pairs come out in child order.
            for &c in self.children_of(v).iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        out
    }
}

/// Builds `G_T`, labelling vertices with the `view` name field.
pub fn build_tree(profiles: &[ProfileRecord], view: NameView) -> FamilyTreeGraph {
    let mut index: HashMap<&str, u32> = HashMap::with_capacity(profiles.len());
    for (i, p) in profiles.iter().enumerate() {
        index.entry(p.id.as_str()).or_insert(i as u32);
    }

    let mut names: Vec<String> = profiles.iter().filter_map(|p| p.name(view)).map(str::to_string).collect();
    names.sort_unstable();
    names.dedup();
    let name_ids: Vec<u32> = profiles
        .iter()
        .map(|p| match p.name(view) {
            Some(n) => names.binary_search_by(|x| x.as_str().cmp(n)).unwrap() as u32,
            None => UNNAMED,
        })
        .collect();

    let mut stats = TreeStats {
        vertices: profiles.len(),
        named_vertices: name_ids.iter().filter(|&&id| id != UNNAMED).count(),
        ..TreeStats::default()
    };
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(profiles.len() * 2);
    for (child, p) in profiles.iter().enumerate() {
        let child = child as u32;
        if p.father_id.is_some() && p.father_id == p.mother_id {
            stats.duplicate_parents += 1;
        }
        for parent in p.parents() {
            match index.get(parent) {
                None => stats.dangling_parents += 1,
                Some(&u) if u == child => stats.self_parents += 1,
                Some(&u) => edges.push((u, child)),
            }
        }
    }
    edges.par_sort_unstable();
    edges.dedup();
    stats.edges = edges.len();

    let n = profiles.len();
    let mut child_offsets = vec![0usize; n + 1];
    for &(u, _) in &edges {
        child_offsets[u as usize + 1] += 1;
    }
    for i in 0..n {
        child_offsets[i + 1] += child_offsets[i];
    }
    let children: Vec<u32> = edges.iter().map(|&(_, v)| v).collect();

    let mut uf = UnionFind::<u32>::new(n);
    for &(u, v) in &edges {
        uf.union(u, v);
    }
    stats.components = (0..n as u32).filter(|&v| uf.find_mut(v) == v).count();

    let keys: Vec<String> = profiles.iter().map(|p| p.id.clone()).collect();
    let cycles = find_cycles(n, &edges, &keys);

    FamilyTreeGraph { view, keys, name_ids, names, child_offsets, children, stats, cycles }
}

fn find_cycles(n: usize, edges: &[(u32, u32)], keys: &[String]) -> Vec<Vec<String>> {
    if edges.is_empty() {
        return Vec::new();
    }
    let mut g: DiGraph<(), (), u32> = DiGraph::with_capacity(n, edges.len());
    for _ in 0..n {
        g.add_node(());
    }
    for &(u, v) in edges {
        g.add_edge(u.into(), v.into(), ());
    }
    let mut cycles: Vec<Vec<String>> = kosaraju_scc(&g)
        .into_iter()
        .filter(|scc| scc.len() > 1)
        .map(|scc| {
            let mut members: Vec<String> = scc.iter().map(|v| keys[v.index()].clone()).collect();
            members.sort();
            members
        })
        .collect();
    cycles.sort();
    cycles
}

/// `(ancestor_name, descendant_name)` for every path instance of the
/// relation, skipping paths whose endpoints lack a name.
pub fn ancestor_name_pairs(tree: &FamilyTreeGraph, relation: RelationKind) -> Vec<(&str, &str)> {
    tree.ancestor_name_id_pairs(relation)
        .into_iter()
        .map(|(a, d)| (tree.names[a as usize].as_str(), tree.names[d as usize].as_str()))
        .collect()
}

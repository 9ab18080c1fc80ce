use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Marker stored in a [`DistanceMatrix`] for pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// A set of vertex ids drawn from a fixed universe `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Self { bits }
    }

    /// Builds a set from ids, rejecting any id outside `0..n`.
    pub fn from_ids<I: IntoIterator<Item = VertexId>>(n: usize, ids: I) -> Result<Self> {
        let mut set = Self::new(n);
        for v in ids {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.bits.insert(v);
        }
        Ok(set)
    }

    /// Size of the universe the set lives in.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Inserts `v`, returning `true` if it was not present.
    ///
    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: VertexId) -> bool {
        !self.bits.put(v)
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        let had = self.contains(v);
        if had {
            self.bits.set(v, false);
        }
        had
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        self.bits.intersection_count(&other.bits)
    }

    /// Lexicographic comparison of the ascending member lists.
    pub fn lex_cmp(&self, other: &VertexSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Immutable simple undirected graph with dense ids and distinct text labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
}

/// Builds a graph from labels and label pairs.
///
/// Ids follow label order. Duplicate edges collapse; self-loops, unknown
/// endpoints, duplicate or empty labels are rejected.
pub fn build_graph<L, A, B>(labels: &[L], edges: &[(A, B)]) -> Result<Graph>
where
    L: AsRef<str>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_owned()).collect();
    let index = label_index(&labels)?;
    let lookup = |l: &str| {
        index
            .get(l)
            .copied()
            .ok_or_else(|| Error::UnknownEndpoint(l.to_owned()))
    };
    let mut id_edges = Vec::with_capacity(edges.len());
    for (a, b) in edges {
        id_edges.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
    }
    Graph::assemble(labels, index, id_edges)
}

fn label_index(labels: &[String]) -> Result<HashMap<String, VertexId>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl Graph {
    /// Builds a graph from labels and id pairs.
    pub fn from_id_edges<I>(labels: Vec<String>, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let index = label_index(&labels)?;
        Graph::assemble(labels, index, edges)
    }

    fn assemble<I>(labels: Vec<String>, index: HashMap<String, VertexId>, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(labels[u].clone()));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut twice = 0;
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
            twice += nbrs.len();
        }
        Ok(Graph {
            labels,
            index,
            adjacency,
            edge_count: twice / 2,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn id_of(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    /// Resolves a label, failing with [`Error::UnknownLabel`].
    pub fn require_id(&self, label: &str) -> Result<VertexId> {
        self.id_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    /// Sorted neighbor ids of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() == self.n() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "vertex set over {} ids used with graph of {} vertices",
                s.universe(),
                self.n()
            )))
        }
    }

    pub fn vertex_set<I: IntoIterator<Item = VertexId>>(&self, ids: I) -> Result<VertexSet> {
        VertexSet::from_ids(self.n(), ids)
    }

    /// Looks up every label and collects the ids into a set.
    pub fn vertex_set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        let mut set = VertexSet::new(self.n());
        for l in labels {
            set.insert(self.require_id(l.as_ref())?);
        }
        Ok(set)
    }

    pub fn set_labels(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.labels[v].clone()).collect()
    }

    /// Vertices at distance exactly `r` from `v`.
    pub fn open_neighborhood(&self, v: VertexId, r: u32) -> Result<VertexSet> {
        self.check_vertex(v)?;
        if r == 0 {
            return Err(Error::InvalidArgument("radius must be positive".into()));
        }
        if r == 1 {
            return self.vertex_set(self.adjacency[v].iter().copied());
        }
        let dist = self.bfs(v);
        self.vertex_set(
            dist.iter()
                .enumerate()
                .filter(|(_, &d)| d == r)
                .map(|(u, _)| u),
        )
    }

    /// `N(S)`: union of the open neighborhoods of the members of `s`.
    pub fn open_neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n());
        for v in s.iter() {
            for &u in &self.adjacency[v] {
                out.insert(u);
            }
        }
        out
    }

    /// `N[S] = N(S) ∪ S`.
    pub fn closed_neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.open_neighborhood_of_set(s);
        out.union_with(s);
        out
    }

    /// Single-source hop distances; [`UNREACHABLE`] for other components.
    pub fn bfs(&self, source: VertexId) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in &self.adjacency[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.n();
        let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|s| self.bfs(s)).collect();
        DistanceMatrix {
            n,
            dist: rows.concat(),
        }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Fails with [`Error::Disconnected`] naming one label per component.
    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            return Ok(());
        }
        Err(Error::Disconnected {
            representatives: self
                .components()
                .iter()
                .map(|c| self.labels[c[0]].clone())
                .collect(),
        })
    }

    /// Maximum eccentricity, computed with one BFS per vertex.
    pub fn diameter(&self) -> Diameter {
        if !self.is_connected() {
            return Diameter::Disconnected;
        }
        let d = (0..self.n())
            .into_par_iter()
            .map(|s| self.bfs(s).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        Diameter::Finite(d)
    }

    /// Subgraph induced by `vertices` (sorted ascending). Vertex `i` of the
    /// result is `vertices[i]` of `self`.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let labels: Vec<String> = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let index = labels.iter().cloned().zip(0..).collect();
        let adjacency: Vec<Vec<VertexId>> = vertices
            .iter()
            .map(|&v| {
                let mut nbrs: Vec<_> = self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                nbrs.sort_unstable();
                nbrs
            })
            .collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            labels,
            index,
            adjacency,
            edge_count,
        }
    }

    /// Map from degree to number of vertices with that degree.
    pub fn degree_histogram(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut hist = std::collections::BTreeMap::new();
        for nbrs in &self.adjacency {
            *hist.entry(nbrs.len()).or_insert(0) += 1;
        }
        hist
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(u32),
    Disconnected,
}

/// Dense `n × n` hop-count table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `None` when `u` and `v` lie in different components.
    pub fn get(&self, u: VertexId, v: VertexId) -> Option<u32> {
        let d = self.dist[u * self.n + v];
        (d != UNREACHABLE).then_some(d)
    }

    /// Raw row for `u`, with [`UNREACHABLE`] entries.
    pub fn row(&self, u: VertexId) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        !self.dist.contains(&UNREACHABLE)
    }
}

//! Hypergraphs, token configurations, and the solution conditions.
//!
//! Ordinary graphs are hypergraphs whose edges all have rank 2. Distances
//! count shared-edge hops, so on rank-2 edges they coincide with the usual
//! graph distance.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A hypergraph on vertices `0..n`. Immutable after construction; the edge
/// list keeps its construction order so iteration is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    /// Incident edge indices per vertex, built once at construction.
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph from an edge list. Each edge is sorted; empty
    /// edges, repeated vertices within an edge, and out-of-range ids are
    /// rejected.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted_edges = Vec::with_capacity(edges.len());
        for (index, mut edge) in edges.into_iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::EmptyEdge { index });
            }
            edge.sort_unstable();
            for pair in edge.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::RepeatedVertexInEdge {
                        index,
                        vertex: pair[0],
                    });
                }
            }
            if let Some(&v) = edge.last() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            sorted_edges.push(edge);
        }
        let mut incidence = vec![Vec::new(); n];
        for (i, edge) in sorted_edges.iter().enumerate() {
            for &v in edge {
                incidence[v].push(i);
            }
        }
        Ok(Self {
            n,
            edges: sorted_edges,
            incidence,
        })
    }

    /// Builds a simple graph: all edges rank 2, no self-loops, no duplicates.
    pub fn simple_graph(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(pairs.len());
        for (index, &(u, v)) in pairs.iter().enumerate() {
            if u == v {
                return Err(Error::SelfLoop { index });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge {
                    index,
                    u: key.0,
                    v: key.1,
                });
            }
            edges.push(vec![u, v]);
        }
        Self::new(n, edges)
    }

    /// Cycle graph `C_n`.
    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::simple_graph(n, &pairs).expect("cycle edges are simple")
    }

    /// Path graph on vertices `0..n` in order.
    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Self::simple_graph(n, &pairs).expect("path edges are simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Largest edge rank, 0 for an edgeless graph.
    pub fn max_rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Errors unless every edge has rank exactly 2.
    pub fn require_rank_two(&self) -> Result<()> {
        for (index, edge) in self.edges.iter().enumerate() {
            if edge.len() != 2 {
                return Err(Error::NotRankTwo {
                    index,
                    rank: edge.len(),
                });
            }
        }
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    /// True when `u` and `v` share an edge or are equal (distance <= 1).
    pub fn within_one(&self, u: usize, v: usize) -> bool {
        u == v || self.are_adjacent(u, v)
    }

    /// True when `u != v` and some edge contains both.
    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        self.incidence[u]
            .iter()
            .any(|&e| self.edges[e].binary_search(&v).is_ok())
    }

    /// All vertices sharing an edge with `v`, excluding `v`.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for &e in &self.incidence[v] {
            for &u in &self.edges[e] {
                if u != v {
                    out.insert(u);
                }
            }
        }
        out.into_iter().collect()
    }

    /// `N[v]`: the closed neighborhood of `v`.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = BTreeSet::new();
        out.insert(v);
        for &e in &self.incidence[v] {
            for &u in &self.edges[e] {
                out.insert(u);
            }
        }
        out.into_iter().collect()
    }

    /// `N[A]` for a vertex set `A`.
    pub fn closed_neighborhood_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for &v in set {
            out.extend(self.closed_neighborhood(v));
        }
        out.into_iter().collect()
    }

    /// BFS distances from `src` over shared-edge hops. `None` marks
    /// unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Result<Vec<Option<usize>>> {
        self.check_vertex(src)?;
        let mut dist = vec![None; self.n];
        let mut edge_seen = vec![false; self.edges.len()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &e in &self.incidence[v] {
                if edge_seen[e] {
                    continue;
                }
                edge_seen[e] = true;
                for &u in &self.edges[e] {
                    if dist[u].is_none() {
                        dist[u] = Some(d + 1);
                        queue.push_back(u);
                    }
                }
            }
        }
        Ok(dist)
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>> {
        self.check_vertex(v)?;
        Ok(self.distances_from(u)?[v])
    }

    /// Shortest path between `u` and `v` as a vertex list, or `None` when
    /// disconnected. Ties broken by expanding edges and vertices in stored
    /// order, so the witness is deterministic.
    pub fn shortest_path(&self, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(Some(vec![u]));
        }
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut edge_seen = vec![false; self.edges.len()];
        let mut queue = VecDeque::new();
        seen[u] = true;
        queue.push_back(u);
        'bfs: while let Some(x) = queue.pop_front() {
            for &e in &self.incidence[x] {
                if edge_seen[e] {
                    continue;
                }
                edge_seen[e] = true;
                for &y in &self.edges[e] {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some(x);
                        if y == v {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
        }
        if !seen[v] {
            return Ok(None);
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Ok(Some(path))
    }

    /// Returns a disconnected vertex pair if any, `None` when connected.
    /// Graphs with at most one vertex count as connected.
    pub fn disconnected_pair(&self) -> Option<(usize, usize)> {
        if self.n <= 1 {
            return None;
        }
        let dist = self.distances_from(0).expect("vertex 0 exists");
        dist.iter()
            .position(Option::is_none)
            .map(|v| (0, v))
    }

    pub fn is_connected(&self) -> bool {
        self.disconnected_pair().is_none()
    }

    pub fn require_connected(&self) -> Result<()> {
        match self.disconnected_pair() {
            Some((u, v)) => Err(Error::Disconnected { u, v }),
            None => Ok(()),
        }
    }

    /// Maximum pairwise distance. Errors on disconnected graphs, naming a
    /// disconnected pair.
    pub fn diameter(&self) -> Result<usize> {
        self.require_connected()?;
        let mut best = 0;
        for v in 0..self.n {
            for d in self.distances_from(v)?.into_iter().flatten() {
                best = best.max(d);
            }
        }
        Ok(best)
    }
}

/// All-pairs distances, precomputed once. `dist(u, v)` is `None` for
/// unreachable pairs.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    d: Vec<Vec<Option<usize>>>,
}

impl DistanceMatrix {
    pub fn new(h: &Hypergraph) -> Self {
        let d = (0..h.n())
            .map(|v| h.distances_from(v).expect("vertex in range"))
            .collect();
        Self { d }
    }

    pub fn dist(&self, u: usize, v: usize) -> Option<usize> {
        self.d[u][v]
    }

    pub fn within(&self, u: usize, v: usize, bound: usize) -> bool {
        matches!(self.d[u][v], Some(d) if d <= bound)
    }
}

/// A placement of k tokens on distinct vertices, stored sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    verts: Vec<usize>,
}

impl Configuration {
    pub fn new(mut verts: Vec<usize>) -> Result<Self> {
        verts.sort_unstable();
        for pair in verts.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateConfigVertex { vertex: pair[0] });
            }
        }
        Ok(Self { verts })
    }

    pub fn empty() -> Self {
        Self { verts: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.verts.iter().copied()
    }

    pub fn check_range(&self, h: &Hypergraph) -> Result<()> {
        if let Some(&v) = self.verts.last() {
            h.check_vertex(v)?;
        }
        Ok(())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let verts = self
            .verts
            .iter()
            .copied()
            .filter(|&v| other.contains(v))
            .collect();
        Self { verts }
    }

    pub fn difference(&self, other: &Self) -> Vec<usize> {
        self.verts
            .iter()
            .copied()
            .filter(|&v| !other.contains(v))
            .collect()
    }

    pub fn union_with(&self, extra: &[usize]) -> Result<Self> {
        let mut verts = self.verts.clone();
        verts.extend_from_slice(extra);
        Self::new(verts)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.verts.iter().all(|&v| other.contains(v))
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The condition every configuration of a sequence must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    VertexCover,
    DominatingSet,
    IndependentSet,
    /// Only the distinct-vertex rule applies.
    Unconstrained,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::VertexCover => "vertex cover",
            Condition::DominatingSet => "dominating set",
            Condition::IndependentSet => "independent set",
            Condition::Unconstrained => "configuration",
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Condition::VertexCover => "vc",
            Condition::DominatingSet => "ds",
            Condition::IndependentSet => "is",
            Condition::Unconstrained => "unconstrained",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "vc" | "vertex-cover" => Ok(Condition::VertexCover),
            "ds" | "dominating-set" => Ok(Condition::DominatingSet),
            "is" | "independent-set" => Ok(Condition::IndependentSet),
            "unconstrained" | "free" => Ok(Condition::Unconstrained),
            other => Err(Error::InvalidCondition(other.to_string())),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Checks whether `c` satisfies `cond` on `h`. Dominating set and
/// independent set are defined on simple graphs only; requesting them on a
/// hypergraph with an edge of other rank is an input error.
pub fn check_condition(h: &Hypergraph, cond: Condition, c: &Configuration) -> Result<bool> {
    c.check_range(h)?;
    match cond {
        Condition::Unconstrained => Ok(true),
        Condition::VertexCover => Ok(h
            .edges()
            .iter()
            .all(|edge| edge.iter().any(|&v| c.contains(v)))),
        Condition::IndependentSet => {
            h.require_rank_two()?;
            Ok(h
                .edges()
                .iter()
                .all(|edge| !(c.contains(edge[0]) && c.contains(edge[1]))))
        }
        Condition::DominatingSet => {
            h.require_rank_two()?;
            let mut dominated = vec![false; h.n()];
            for v in c.iter() {
                dominated[v] = true;
                for u in h.neighbors(v) {
                    dominated[u] = true;
                }
            }
            Ok(dominated.into_iter().all(|b| b))
        }
    }
}

/// The hypergraph whose edges are all closed neighborhoods of `g`.
///
/// A set is a dominating set of `g` exactly when it is a vertex cover of the
/// result, and two vertices share an edge in the result exactly when their
/// distance in `g` is at most 2.
pub fn closed_neighborhood_hypergraph(g: &Hypergraph) -> Result<Hypergraph> {
    g.require_rank_two()?;
    let edges = (0..g.n()).map(|v| g.closed_neighborhood(v)).collect();
    Hypergraph::new(g.n(), edges)
}

/// A rank-2 graph on a relabeled vertex subset, with the id map retained.
#[derive(Clone, Debug)]
pub struct BoundedDistanceGraph {
    pub graph: Hypergraph,
    /// New id -> original id, ascending.
    pub to_original: Vec<usize>,
}

impl BoundedDistanceGraph {
    pub fn from_original(&self, v: usize) -> Option<usize> {
        self.to_original.binary_search(&v).ok()
    }
}

/// Graph on `s` with an edge wherever the distance in `g` is at most `d`.
pub fn bounded_distance_graph(g: &Hypergraph, s: &[usize], d: usize) -> Result<BoundedDistanceGraph> {
    let mut to_original: Vec<usize> = s.to_vec();
    to_original.sort_unstable();
    to_original.dedup();
    if let Some(&v) = to_original.last() {
        g.check_vertex(v)?;
    }
    let mut pairs = Vec::new();
    for (i, &u) in to_original.iter().enumerate() {
        let dist = g.distances_from(u)?;
        for (j, &v) in to_original.iter().enumerate().skip(i + 1) {
            if matches!(dist[v], Some(x) if x <= d) {
                pairs.push((i, j));
            }
        }
    }
    let graph = Hypergraph::simple_graph(to_original.len(), &pairs)?;
    Ok(BoundedDistanceGraph { graph, to_original })
}

/// Result of contracting a hypergraph through a kept vertex set: the graph
/// on the remaining vertices (relabeled), plus one witness path per added
/// shortcut edge, recorded in original ids.
#[derive(Clone, Debug)]
pub struct ContractedHypergraph {
    pub graph: Hypergraph,
    /// New id -> original id, ascending.
    pub to_original: Vec<usize>,
    /// Witness paths for added edges, keyed by (new u, new v) with u < v.
    /// Each path runs from the original id of u to the original id of v with
    /// every internal vertex in the kept set.
    witnesses: BTreeMap<(usize, usize), Vec<usize>>,
}

impl ContractedHypergraph {
    pub fn from_original(&self, v: usize) -> Option<usize> {
        self.to_original.binary_search(&v).ok()
    }

    pub fn witness(&self, u: usize, v: usize) -> Option<&[usize]> {
        let key = (u.min(v), u.max(v));
        self.witnesses.get(&key).map(Vec::as_slice)
    }

    pub fn added_edges(&self) -> impl Iterator<Item = ((usize, usize), &[usize])> {
        self.witnesses.iter().map(|(&k, p)| (k, p.as_slice()))
    }
}

/// Contracts `h` through `keep`: original edges are restricted to the
/// remaining vertices, and a rank-2 shortcut is added for every pair joined
/// by a path whose internal vertices all lie in `keep`. The witness path for
/// each shortcut is recorded so moves over it can be expanded later.
pub fn contract_through(h: &Hypergraph, keep: &BTreeSet<usize>) -> Result<ContractedHypergraph> {
    for &v in keep {
        h.check_vertex(v)?;
    }
    let to_original: Vec<usize> = (0..h.n()).filter(|v| !keep.contains(v)).collect();
    let from_original: BTreeMap<usize, usize> = to_original
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();

    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut seen_edges: BTreeSet<Vec<usize>> = BTreeSet::new();
    for edge in h.edges() {
        let restricted: Vec<usize> = edge
            .iter()
            .filter_map(|v| from_original.get(v).copied())
            .collect();
        if restricted.len() >= 2 && seen_edges.insert(restricted.clone()) {
            edges.push(restricted);
        }
    }

    // Shortcuts: BFS from each remaining vertex, expanding only through kept
    // vertices, recording the first (shortest) witness per endpoint pair.
    let mut witnesses = BTreeMap::new();
    for (new_u, &u) in to_original.iter().enumerate() {
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut reached: BTreeMap<usize, usize> = BTreeMap::new(); // endpoint -> kept parent
        let mut seen = vec![false; h.n()];
        seen[u] = true;
        let mut queue: VecDeque<usize> = VecDeque::new();
        for w in h.neighbors(u) {
            if keep.contains(&w) && !seen[w] {
                seen[w] = true;
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
        while let Some(x) = queue.pop_front() {
            for w in h.neighbors(x) {
                if seen[w] {
                    continue;
                }
                if keep.contains(&w) {
                    seen[w] = true;
                    parent.insert(w, x);
                    queue.push_back(w);
                } else {
                    seen[w] = true;
                    reached.insert(w, x);
                }
            }
        }
        for (&v, &via) in &reached {
            let new_v = from_original[&v];
            if new_v <= new_u {
                continue;
            }
            let mut path = vec![v, via];
            let mut cur = via;
            while let Some(&p) = parent.get(&cur) {
                path.push(p);
                cur = p;
            }
            path.reverse(); // runs u .. v with internals in keep
            witnesses.insert((new_u, new_v), path);
        }
    }

    for &(a, b) in witnesses.keys() {
        let edge = vec![a, b];
        if seen_edges.insert(edge.clone()) {
            edges.push(edge);
        }
    }

    let graph = Hypergraph::new(to_original.len(), edges)?;
    Ok(ContractedHypergraph {
        graph,
        to_original,
        witnesses,
    })
}

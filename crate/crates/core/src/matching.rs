//! Bipartite matching toolkit: maximum matching, Hall violators,
//! minimum-cost saturating matchings, and the alternating-cycle repair used
//! by the dominating-set solver.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Which side of the bipartition a saturation request refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A bipartite graph with non-negative integer edge costs. At most one edge
/// per (left, right) pair.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize, u64)>,
    adj: Vec<Vec<usize>>, // left vertex -> edge indices, rights ascending
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, mut edges: Vec<(usize, usize, u64)>) -> Result<Self> {
        edges.sort_unstable_by_key(|&(l, r, _)| (l, r));
        for w in edges.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::DuplicateEdge {
                    index: 0,
                    u: w[0].0,
                    v: w[0].1,
                });
            }
        }
        for &(l, r, _) in &edges {
            if l >= left {
                return Err(Error::VertexOutOfRange { vertex: l, n: left });
            }
            if r >= right {
                return Err(Error::VertexOutOfRange {
                    vertex: r,
                    n: right,
                });
            }
        }
        let mut adj = vec![Vec::new(); left];
        for (i, &(l, _, _)) in edges.iter().enumerate() {
            adj[l].push(i);
        }
        Ok(Self {
            left,
            right,
            edges,
            adj,
        })
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn cost_of(&self, l: usize, r: usize) -> Option<u64> {
        self.adj[l]
            .iter()
            .find(|&&e| self.edges[e].1 == r)
            .map(|&e| self.edges[e].2)
    }

    fn transposed(&self) -> Self {
        let edges = self.edges.iter().map(|&(l, r, c)| (r, l, c)).collect();
        Self::new(self.right, self.left, edges).expect("transpose preserves validity")
    }
}

/// A matching, stored as (left, right) pairs sorted by left index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn total_cost(&self, b: &BipartiteGraph) -> u64 {
        self.pairs
            .iter()
            .map(|&(l, r)| b.cost_of(l, r).unwrap_or(0))
            .sum()
    }

    pub fn right_of(&self, l: usize) -> Option<usize> {
        self.pairs
            .iter()
            .find(|&&(pl, _)| pl == l)
            .map(|&(_, r)| r)
    }
}

/// Maximum-cardinality matching via augmenting paths, augmenting in
/// ascending left-index order so the result is deterministic.
pub fn max_matching(b: &BipartiteGraph) -> Matching {
    let mut match_r: Vec<Option<usize>> = vec![None; b.right];
    let mut used = vec![false; b.left];

    fn try_augment(
        b: &BipartiteGraph,
        l: usize,
        used: &mut [bool],
        match_r: &mut [Option<usize>],
    ) -> bool {
        if used[l] {
            return false;
        }
        used[l] = true;
        for &e in &b.adj[l] {
            let r = b.edges[e].1;
            if match_r[r].is_none() {
                match_r[r] = Some(l);
                return true;
            }
        }
        for &e in &b.adj[l] {
            let r = b.edges[e].1;
            if let Some(l2) = match_r[r] {
                if try_augment(b, l2, used, match_r) {
                    match_r[r] = Some(l);
                    return true;
                }
            }
        }
        false
    }

    for l in 0..b.left {
        used.iter_mut().for_each(|u| *u = false);
        try_augment(b, l, &mut used, &mut match_r);
    }
    let pairs = match_r
        .iter()
        .enumerate()
        .filter_map(|(r, l)| l.map(|l| (l, r)))
        .collect();
    Matching::new(pairs)
}

/// Returns `None` when a matching saturating `side` exists; otherwise a Hall
/// violator S on that side with |N(S)| < |S|, produced by alternating
/// reachability from the smallest unmatched vertex.
pub fn hall_violator(b: &BipartiteGraph, side: Side) -> Option<Vec<usize>> {
    match side {
        Side::Right => return hall_violator(&b.transposed(), Side::Left),
        Side::Left => {}
    }
    let m = max_matching(b);
    if m.len() == b.left {
        return None;
    }
    let mut match_l: Vec<Option<usize>> = vec![None; b.left];
    let mut match_r: Vec<Option<usize>> = vec![None; b.right];
    for &(l, r) in m.pairs() {
        match_l[l] = Some(r);
        match_r[r] = Some(l);
    }
    let x0 = (0..b.left)
        .find(|&l| match_l[l].is_none())
        .expect("an unmatched left vertex exists");

    let mut in_s = vec![false; b.left];
    let mut in_t = vec![false; b.right];
    in_s[x0] = true;
    let mut queue = vec![x0];
    while let Some(l) = queue.pop() {
        for &e in &b.adj[l] {
            let r = b.edges[e].1;
            if !in_t[r] {
                in_t[r] = true;
                let l2 = match_r[r].expect("reachable rights are matched");
                if !in_s[l2] {
                    in_s[l2] = true;
                    queue.push(l2);
                }
            }
        }
    }
    let s: Vec<usize> = (0..b.left).filter(|&l| in_s[l]).collect();
    let neigh = left_set_neighborhood(b, &s);
    assert!(neigh.len() < s.len(), "constructed set must violate Hall");
    Some(s)
}

/// N(S) for a set of left vertices.
pub fn left_set_neighborhood(b: &BipartiteGraph, s: &[usize]) -> Vec<usize> {
    let mut out = BTreeSet::new();
    for &l in s {
        for &e in &b.adj[l] {
            out.insert(b.edges[e].1);
        }
    }
    out.into_iter().collect()
}

const INF: i64 = i64::MAX / 4;

/// Minimum total cost over matchings saturating every left vertex, or `None`
/// when no saturating matching exists. Successive shortest augmenting paths
/// with potentials; costs stay well below overflow at the target scales.
fn hungarian_left(b: &BipartiteGraph) -> Option<(u64, Vec<Option<usize>>)> {
    let n = b.left;
    let m = b.right;
    if n > m {
        return None;
    }
    if n == 0 {
        return Some((0, vec![None; m]));
    }
    // Dense cost table; absent edges are INF.
    let mut cost = vec![vec![INF; m + 1]; n + 1];
    for &(l, r, c) in &b.edges {
        cost[l + 1][r + 1] = c as i64;
    }
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; m + 1];
    let mut p = vec![0usize; m + 1]; // matched left (1-based), 0 = free
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost[i0][j].saturating_sub(u[i0]).saturating_sub(v[j]);
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if delta >= INF / 2 {
                return None; // no finite augmenting path: left cannot saturate
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut match_l = vec![None; n];
    let mut total: u64 = 0;
    for j in 1..=m {
        if p[j] != 0 {
            match_l[p[j] - 1] = Some(j - 1);
            let c = cost[p[j]][j];
            if c >= INF {
                return None;
            }
            total += c as u64;
        }
    }
    if match_l.iter().any(Option::is_none) {
        return None;
    }
    Some((total, match_l))
}

/// Cost of a cheapest matching saturating `side`, without the lexicographic
/// tie-break. `None` when no saturating matching exists. This is the fast
/// path for move-existence checks.
pub fn min_cost_of_saturating(b: &BipartiteGraph, side: Side) -> Option<u64> {
    match side {
        Side::Left => hungarian_left(b).map(|(c, _)| c),
        Side::Right => hungarian_left(&b.transposed()).map(|(c, _)| c),
    }
}

/// Minimum-cost matching saturating `side`. Among all minimum-cost
/// saturating matchings the one with the lexicographically smallest sorted
/// pair list is returned, found by forcing pairs in ascending (left, right)
/// order and re-solving the residual instance.
pub fn min_cost_saturating_matching(b: &BipartiteGraph, side: Side) -> Result<Matching> {
    let solve = |bb: &BipartiteGraph| -> Option<u64> {
        match side {
            Side::Left => hungarian_left(bb).map(|(c, _)| c),
            Side::Right => hungarian_left(&bb.transposed()).map(|(c, _)| c),
        }
    };
    let best = solve(b).ok_or(Error::NoSaturatingMatching)?;
    let target = match side {
        Side::Left => b.left,
        Side::Right => b.right,
    };
    let mut forced: Vec<(usize, usize)> = Vec::new();
    let mut used_l = vec![false; b.left];
    let mut used_r = vec![false; b.right];
    let mut forced_cost: u64 = 0;

    // Edges are stored sorted by (left, right), which is exactly the order
    // the tie-break needs.
    for &(l, r, c) in &b.edges {
        if forced.len() == target {
            break;
        }
        if used_l[l] || used_r[r] {
            continue;
        }
        let residual = residual_graph(b, &used_l, &used_r, (l, r));
        if let Some(rest) = solve(&residual) {
            if forced_cost + c + rest == best {
                forced.push((l, r));
                used_l[l] = true;
                used_r[r] = true;
                forced_cost += c;
            }
        }
    }
    if forced.len() != target {
        return Err(Error::Internal(
            "lexicographic refinement failed to rebuild the matching".into(),
        ));
    }
    Ok(Matching::new(forced))
}

/// The sub-instance with the used vertices (plus the candidate pair) removed,
/// remapped to dense indices.
fn residual_graph(
    b: &BipartiteGraph,
    used_l: &[bool],
    used_r: &[bool],
    candidate: (usize, usize),
) -> BipartiteGraph {
    let mut map_l = vec![usize::MAX; b.left];
    let mut map_r = vec![usize::MAX; b.right];
    let mut nl = 0;
    for l in 0..b.left {
        if !used_l[l] && l != candidate.0 {
            map_l[l] = nl;
            nl += 1;
        }
    }
    let mut nr = 0;
    for r in 0..b.right {
        if !used_r[r] && r != candidate.1 {
            map_r[r] = nr;
            nr += 1;
        }
    }
    let edges = b
        .edges
        .iter()
        .filter(|&&(l, r, _)| map_l[l] != usize::MAX && map_r[r] != usize::MAX)
        .map(|&(l, r, c)| (map_l[l], map_r[r], c))
        .collect();
    BipartiteGraph::new(nl, nr, edges).expect("residual instance stays valid")
}

/// Repairs a perfect matching so that at most `budget` of its edges lie
/// outside `w`, by repeatedly taking the symmetric difference with a cycle
/// alternating between matching edges and edges of `w`.
///
/// Preconditions mirror the dominating-set setting: the matching is perfect,
/// every vertex is incident to some edge of `w`, and either the matching is
/// already within budget or it shares at most one edge with `w`.
pub fn alternating_cycle_repair(
    b: &BipartiteGraph,
    m: &Matching,
    w: &BTreeSet<(usize, usize)>,
    budget: usize,
) -> Result<Matching> {
    if b.left != b.right || m.len() != b.left {
        return Err(Error::RepairPrecondition(
            "matching must be perfect".into(),
        ));
    }
    for &(l, r) in m.pairs() {
        if b.cost_of(l, r).is_none() {
            return Err(Error::RepairPrecondition(format!(
                "matched pair ({l}, {r}) is not an edge"
            )));
        }
    }
    for &(l, r) in w {
        if b.cost_of(l, r).is_none() {
            return Err(Error::RepairPrecondition(format!(
                "w edge ({l}, {r}) is not an edge of the graph"
            )));
        }
    }
    let mut covered_l = vec![false; b.left];
    let mut covered_r = vec![false; b.right];
    for &(l, r) in w {
        covered_l[l] = true;
        covered_r[r] = true;
    }
    if !covered_l.iter().all(|&x| x) || !covered_r.iter().all(|&x| x) {
        return Err(Error::RepairPrecondition(
            "every vertex must be incident to an edge of w".into(),
        ));
    }

    let mut pairs: Vec<(usize, usize)> = m.pairs().to_vec();
    let in_w = |p: &(usize, usize)| w.contains(p);
    let out_count = |ps: &[(usize, usize)]| ps.iter().filter(|p| !in_w(p)).count();

    if out_count(&pairs) <= budget {
        return Ok(Matching::new(pairs));
    }
    if pairs.iter().filter(|p| in_w(p)).count() > 1 {
        return Err(Error::RepairPrecondition(
            "matching shares more than one edge with w yet exceeds the budget".into(),
        ));
    }

    let mut guard = pairs.len() + 2;
    loop {
        let outside = out_count(&pairs);
        if outside <= budget {
            break;
        }
        guard -= 1;
        if guard == 0 {
            return Err(Error::Internal("repair failed to make progress".into()));
        }
        // Directed graph on matched pairs: an arc i -> j when the w-edge
        // (left of j, right of i) exists, i.e. the alternating walk can hop
        // from pair i to pair j. Pairs whose vertices have no w-edge beyond
        // their own matched edge end up with no arcs, which plays the role
        // of deleting the vertices of M ∩ W.
        let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
        for (i, &(_, r_i)) in pairs.iter().enumerate() {
            for (j, &(l_j, _)) in pairs.iter().enumerate() {
                if i != j && w.contains(&(l_j, r_i)) {
                    arcs[i].push(j);
                }
            }
        }
        // A cycle through at least one non-w pair swaps that pair for
        // unit-distance edges, so the outside count strictly drops.
        let cycle = (0..pairs.len())
            .filter(|&i| !in_w(&pairs[i]))
            .find_map(|i| cycle_through(&arcs, i));
        let cycle = match cycle {
            Some(c) => c,
            None => return Err(Error::RepairStuck),
        };
        let olds: Vec<(usize, usize)> = cycle.iter().map(|&i| pairs[i]).collect();
        let mut news = Vec::with_capacity(olds.len());
        for (t, &i) in cycle.iter().enumerate() {
            let next = cycle[(t + 1) % cycle.len()];
            let (_, r_i) = pairs[i];
            let (l_j, _) = pairs[next];
            news.push((l_j, r_i));
        }
        pairs.retain(|p| !olds.contains(p));
        pairs.extend(news);
        pairs.sort_unstable();
    }
    Ok(Matching::new(pairs))
}

/// A directed cycle through `start`, as a node list beginning at `start`,
/// found by DFS with ascending arc order.
fn cycle_through(arcs: &[Vec<usize>], start: usize) -> Option<Vec<usize>> {
    let mut visited = vec![false; arcs.len()];
    let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
    let mut path: Vec<usize> = vec![start];
    visited[start] = true;
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if top.1 < arcs[v].len() {
            let u = arcs[v][top.1];
            top.1 += 1;
            if u == start {
                return Some(path.clone());
            }
            if !visited[u] {
                visited[u] = true;
                stack.push((u, 0));
                path.push(u);
            }
        } else {
            stack.pop();
            path.pop();
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(l: usize, r: usize, edges: &[(usize, usize, u64)]) -> BipartiteGraph {
        BipartiteGraph::new(l, r, edges.to_vec()).unwrap()
    }

    #[test]
    fn complete_three_by_three() {
        let mut edges = Vec::new();
        for l in 0..3 {
            for r in 0..3 {
                edges.push((l, r, 0));
            }
        }
        assert_eq!(max_matching(&graph(3, 3, &edges)).len(), 3);
    }

    #[test]
    fn hall_failure_caps_the_matching() {
        let b = graph(2, 1, &[(0, 0, 0), (1, 0, 0)]);
        assert_eq!(max_matching(&b).len(), 1);
        let s = hall_violator(&b, Side::Left).unwrap();
        assert_eq!(s, vec![0, 1]);
        assert_eq!(left_set_neighborhood(&b, &s), vec![0]);
    }

    #[test]
    fn empty_edge_set() {
        let b = graph(3, 3, &[]);
        assert_eq!(max_matching(&b).len(), 0);
    }

    #[test]
    fn saturable_square_has_no_violator() {
        let b = graph(2, 2, &[(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0)]);
        assert!(hall_violator(&b, Side::Left).is_none());
        assert!(hall_violator(&b, Side::Right).is_none());
    }

    #[test]
    fn cascading_violator() {
        // left 0 -> {0}, 1 -> {0,1}, 2 -> {1}: the whole left side is the
        // violator with neighborhood {0, 1}.
        let b = graph(3, 2, &[(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 1, 0)]);
        let s = hall_violator(&b, Side::Left).unwrap();
        assert_eq!(s, vec![0, 1, 2]);
        assert_eq!(left_set_neighborhood(&b, &s), vec![0, 1]);
    }

    #[test]
    fn min_cost_prefers_the_zero_diagonal() {
        let b = graph(2, 2, &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]);
        let m = min_cost_saturating_matching(&b, Side::Left).unwrap();
        assert_eq!(m.pairs(), &[(0, 0), (1, 1)]);
        assert_eq!(m.total_cost(&b), 0);
    }

    #[test]
    fn min_cost_single_left() {
        let b = graph(1, 2, &[(0, 0, 5), (0, 1, 3)]);
        let m = min_cost_saturating_matching(&b, Side::Left).unwrap();
        assert_eq!(m.pairs(), &[(0, 1)]);
    }

    #[test]
    fn min_cost_reports_missing_saturation() {
        let b = graph(2, 1, &[(0, 0, 0), (1, 0, 0)]);
        assert!(matches!(
            min_cost_saturating_matching(&b, Side::Left),
            Err(Error::NoSaturatingMatching)
        ));
    }

    #[test]
    fn zero_cost_self_edges_stay_matched() {
        // A left vertex with a free zero-cost partner never takes a costly
        // edge: minimum cost forces the diagonal here.
        let b = graph(
            2,
            2,
            &[(0, 0, 0), (0, 1, 1), (1, 1, 0)],
        );
        let m = min_cost_saturating_matching(&b, Side::Right).unwrap();
        assert_eq!(m.pairs(), &[(0, 0), (1, 1)]);
    }

    #[test]
    fn repair_identity_when_within_budget() {
        let b = graph(2, 2, &[(0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)]);
        let m = Matching::new(vec![(0, 0), (1, 1)]);
        let w: BTreeSet<_> = [(0, 0), (1, 1)].into_iter().collect();
        let out = alternating_cycle_repair(&b, &m, &w, 0).unwrap();
        assert_eq!(out.pairs(), m.pairs());
    }

    #[test]
    fn repair_swaps_the_antidiagonal() {
        let b = graph(2, 2, &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]);
        let m = Matching::new(vec![(0, 1), (1, 0)]);
        let w: BTreeSet<_> = [(0, 0), (1, 1)].into_iter().collect();
        let out = alternating_cycle_repair(&b, &m, &w, 0).unwrap();
        assert_eq!(out.pairs(), &[(0, 0), (1, 1)]);
    }

    #[test]
    fn repair_never_grows_the_outside_count() {
        let b = graph(
            3,
            3,
            &[
                (0, 0, 1),
                (0, 1, 0),
                (1, 0, 0),
                (1, 1, 1),
                (2, 2, 0),
                (0, 2, 1),
                (2, 0, 1),
            ],
        );
        let m = Matching::new(vec![(0, 0), (1, 1), (2, 2)]);
        let w: BTreeSet<_> = [(0, 1), (1, 0), (2, 2)].into_iter().collect();
        let before = m.pairs().iter().filter(|p| !w.contains(p)).count();
        let out = alternating_cycle_repair(&b, &m, &w, 0).unwrap();
        let after = out.pairs().iter().filter(|p| !w.contains(p)).count();
        assert!(after <= before);
        assert_eq!(out.len(), 3);
        assert_eq!(after, 0);
    }
}

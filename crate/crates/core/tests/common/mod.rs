//! Shared test support: seeded random instance generators and independent
//! brute-force oracles. Everything here is deliberately naive so it can
//! serve as ground truth for the library code.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use reconfig::graph::{check_condition, Condition, Configuration, Hypergraph};
use reconfig::matching::BipartiteGraph;
use reconfig::rules::{Movers, Rule};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected simple graph on `n` vertices: a random spanning tree
/// plus each remaining edge with probability `extra_p`.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, extra_p: f64) -> Hypergraph {
    assert!(n >= 1);
    let mut pairs = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.random_range(0..i);
        pairs.push((order[i], order[j]));
    }
    for u in 0..n {
        for v in u + 1..n {
            let present = pairs
                .iter()
                .any(|&(a, b)| (a.min(b), a.max(b)) == (u, v));
            if !present && rng.random_bool(extra_p) {
                pairs.push((u, v));
            }
        }
    }
    Hypergraph::simple_graph(n, &pairs).expect("generated edges are simple")
}

/// Random connected hypergraph: a connected graph skeleton plus a few
/// random hyperedges of rank 2 or 3.
pub fn random_connected_hypergraph(rng: &mut ChaCha8Rng, n: usize, extra_p: f64) -> Hypergraph {
    let skeleton = random_connected_graph(rng, n, extra_p);
    let mut edges: Vec<Vec<usize>> = skeleton.edges().to_vec();
    if n >= 3 {
        let extra = rng.random_range(0..=n / 2);
        for _ in 0..extra {
            let mut verts: Vec<usize> = (0..n).collect();
            verts.shuffle(rng);
            let rank = rng.random_range(2..=3.min(n));
            let mut edge: Vec<usize> = verts[..rank].to_vec();
            edge.sort_unstable();
            if !edges.contains(&edge) {
                edges.push(edge);
            }
        }
    }
    Hypergraph::new(n, edges).expect("generated hyperedges are valid")
}

/// Removal-greedy solution for an upward-closed condition (covers and
/// dominating sets): start from all vertices and drop whatever stays
/// feasible, in random order.
fn greedy_minimal(rng: &mut ChaCha8Rng, h: &Hypergraph, cond: Condition) -> Vec<usize> {
    let mut verts: Vec<usize> = (0..h.n()).collect();
    let mut order = verts.clone();
    order.shuffle(rng);
    for v in order {
        let mut trial = verts.clone();
        trial.retain(|&u| u != v);
        let c = Configuration::new(trial.clone()).unwrap();
        if check_condition(h, cond, &c).unwrap() {
            verts = trial;
        }
    }
    verts
}

/// Pads an upward-closed solution with random extra vertices up to size k.
fn pad_to(rng: &mut ChaCha8Rng, n: usize, mut verts: Vec<usize>, k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).filter(|v| !verts.contains(v)).collect();
    pool.shuffle(rng);
    while verts.len() < k {
        verts.push(pool.pop().expect("k is at most n"));
    }
    verts
}

/// A random same-size pair of solutions for an upward-closed condition.
pub fn random_solution_pair(
    rng: &mut ChaCha8Rng,
    h: &Hypergraph,
    cond: Condition,
    min_k: usize,
) -> (Configuration, Configuration) {
    let a = greedy_minimal(rng, h, cond);
    let b = greedy_minimal(rng, h, cond);
    let mut k = a.len().max(b.len()).max(min_k);
    k = k.min(h.n());
    let slack = h.n() - k;
    if slack > 0 && rng.random_bool(0.3) {
        k += rng.random_range(0..=slack.min(2));
    }
    let a = Configuration::new(pad_to(rng, h.n(), a, k)).unwrap();
    let b = Configuration::new(pad_to(rng, h.n(), b, k)).unwrap();
    (a, b)
}

/// Random maximal independent set: greedy over a random vertex order.
pub fn random_maximal_is(rng: &mut ChaCha8Rng, g: &Hypergraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(rng);
    let mut picked: Vec<usize> = Vec::new();
    for v in order {
        if picked.iter().all(|&u| !g.are_adjacent(u, v)) {
            picked.push(v);
        }
    }
    picked.sort_unstable();
    picked
}

/// A random same-size pair of independent sets (subsets of random maximal
/// ones).
pub fn random_is_pair(
    rng: &mut ChaCha8Rng,
    g: &Hypergraph,
    min_k: usize,
) -> Option<(Configuration, Configuration)> {
    let a = random_maximal_is(rng, g);
    let b = random_maximal_is(rng, g);
    let cap = a.len().min(b.len());
    if cap < min_k {
        return None;
    }
    let k = rng.random_range(min_k..=cap);
    let pick = |rng: &mut ChaCha8Rng, mut from: Vec<usize>| {
        from.shuffle(rng);
        Configuration::new(from[..k].to_vec()).unwrap()
    };
    Some((pick(rng, a), pick(rng, b)))
}

/// Random bipartite graph with edge probability `p` and costs below
/// `cost_max`.
pub fn random_bipartite(
    rng: &mut ChaCha8Rng,
    left: usize,
    right: usize,
    p: f64,
    cost_max: u64,
) -> BipartiteGraph {
    let mut edges = Vec::new();
    for l in 0..left {
        for r in 0..right {
            if rng.random_bool(p) {
                edges.push((l, r, rng.random_range(0..cost_max)));
            }
        }
    }
    BipartiteGraph::new(left, right, edges).unwrap()
}

/// Random connected split graph: a clique on `0..nc`, an independent set on
/// `nc..nc+ni`, and random cross edges with at least one per independent
/// vertex.
pub fn random_split_graph(
    rng: &mut ChaCha8Rng,
    nc: usize,
    ni: usize,
    p: f64,
) -> (Hypergraph, Configuration) {
    assert!(nc >= 1);
    let n = nc + ni;
    let mut pairs = Vec::new();
    for u in 0..nc {
        for v in u + 1..nc {
            pairs.push((u, v));
        }
    }
    for i in nc..n {
        let forced = rng.random_range(0..nc);
        for c in 0..nc {
            if c == forced || rng.random_bool(p) {
                pairs.push((c, i));
            }
        }
    }
    let g = Hypergraph::simple_graph(n, &pairs).unwrap();
    let clique = Configuration::new((0..nc).collect()).unwrap();
    (g, clique)
}

/// All bijections between two equal-size configurations, as pair lists.
pub fn bijections(c1: &Configuration, c2: &Configuration) -> Vec<Vec<(usize, usize)>> {
    let from = c1.vertices().to_vec();
    let to = c2.vertices().to_vec();
    let mut out = Vec::new();
    let mut used = vec![false; to.len()];
    let mut cur = Vec::new();
    fn rec(
        i: usize,
        from: &[usize],
        to: &[usize],
        used: &mut [bool],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i == from.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..to.len() {
            if !used[j] {
                used[j] = true;
                cur.push((from[i], to[j]));
                rec(i + 1, from, to, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    rec(0, &from, &to, &mut used, &mut cur, &mut out);
    out
}

/// Move existence by exhaustive bijection enumeration: the independent
/// ground truth for `find_move`.
pub fn move_exists_brute(
    h: &Hypergraph,
    c1: &Configuration,
    c2: &Configuration,
    rule: &Rule,
) -> bool {
    let dm = reconfig::graph::DistanceMatrix::new(h);
    bijections(c1, c2).into_iter().any(|pairs| match *rule {
        Rule::TokenJumping { movers, dist } => {
            let mut moving = 0;
            for &(u, v) in &pairs {
                if u == v {
                    continue;
                }
                moving += 1;
                if !dm.within(u, v, dist) {
                    return false;
                }
            }
            match movers {
                Movers::All => true,
                Movers::AtMost(k) => moving <= k,
            }
        }
        Rule::TwoTier {
            extra_movers,
            extra_dist,
        } => {
            let mut long = 0;
            for &(u, v) in &pairs {
                if u == v {
                    continue;
                }
                match dm.dist(u, v) {
                    Some(1) => {}
                    Some(d) if d <= extra_dist => long += 1,
                    _ => return false,
                }
            }
            long <= extra_movers
        }
        Rule::Relaxed => false,
    })
}

/// All matchings of a bipartite graph, by brute force over the left side.
pub fn all_matchings(b: &BipartiteGraph) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut used_r = vec![false; b.right_size()];
    let mut cur: Vec<(usize, usize)> = Vec::new();
    fn rec(
        l: usize,
        b: &BipartiteGraph,
        used_r: &mut [bool],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if l == b.left_size() {
            out.push(cur.clone());
            return;
        }
        rec(l + 1, b, used_r, cur, out); // leave l unmatched
        for &(el, er, _) in b.edges() {
            if el == l && !used_r[er] {
                used_r[er] = true;
                cur.push((l, er));
                rec(l + 1, b, used_r, cur, out);
                cur.pop();
                used_r[er] = false;
            }
        }
    }
    rec(0, b, &mut used_r, &mut cur, &mut out);
    out
}

pub fn matching_cost(b: &BipartiteGraph, pairs: &[(usize, usize)]) -> u64 {
    pairs.iter().map(|&(l, r)| b.cost_of(l, r).unwrap()).sum()
}

/// Brute-force minimum cost over matchings saturating a side, with the
/// lexicographically smallest sorted pair list among the optima.
pub fn brute_min_cost_saturating(
    b: &BipartiteGraph,
    left_side: bool,
) -> Option<(u64, Vec<(usize, usize)>)> {
    let saturated = |pairs: &Vec<(usize, usize)>| {
        if left_side {
            pairs.len() == b.left_size()
        } else {
            pairs.len() == b.right_size()
        }
    };
    let mut best: Option<(u64, Vec<(usize, usize)>)> = None;
    for pairs in all_matchings(b) {
        if !saturated(&pairs) {
            continue;
        }
        let mut sorted = pairs.clone();
        sorted.sort_unstable();
        let cost = matching_cost(b, &sorted);
        best = match best {
            None => Some((cost, sorted)),
            Some((bc, bp)) => {
                if cost < bc || (cost == bc && sorted < bp) {
                    Some((cost, sorted))
                } else {
                    Some((bc, bp))
                }
            }
        };
    }
    best
}

/// Brute-force maximum matching cardinality.
pub fn brute_max_matching(b: &BipartiteGraph) -> usize {
    all_matchings(b).into_iter().map(|m| m.len()).max().unwrap_or(0)
}

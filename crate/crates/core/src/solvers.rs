//! Constructive reachability algorithms. Each solver emits an explicit
//! sequence that validates under its advertised rule:
//! vertex cover under `tj:all:1`, dominating set under `tt:k-2:2`, and
//! independent set under `tt:1:3`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{
    bounded_distance_graph, check_condition, closed_neighborhood_hypergraph, contract_through,
    Condition, Configuration, Hypergraph,
};
use crate::matching::{
    alternating_cycle_repair, hall_violator, max_matching, min_cost_saturating_matching,
    BipartiteGraph, Matching, Side,
};
use crate::rules::{Move, ReconfSequence};

/// The bipartite graph B(from, to, h) with an edge wherever the hypergraph
/// distance is at most 1, costed by that distance.
fn unit_move_graph(h: &Hypergraph, from: &Configuration, to: &Configuration) -> BipartiteGraph {
    let mut edges = Vec::new();
    for (i, u) in from.iter().enumerate() {
        for (j, v) in to.iter().enumerate() {
            if u == v {
                edges.push((i, j, 0));
            } else if h.are_adjacent(u, v) {
                edges.push((i, j, 1));
            }
        }
    }
    BipartiteGraph::new(from.len(), to.len(), edges).expect("dense indices")
}

fn single_jump_move(cur: &Configuration, from: usize, to: usize) -> Move {
    let pairs = cur
        .iter()
        .map(|v| if v == from { (v, to) } else { (v, v) })
        .collect();
    Move::new(pairs).expect("single jump keeps both sides distinct")
}

fn require_solution(
    h: &Hypergraph,
    cond: Condition,
    c: &Configuration,
) -> Result<()> {
    if !check_condition(h, cond, c)? {
        return Err(Error::NotASolution(cond.name()));
    }
    Ok(())
}

/// Reconfigures between any two equal-size configurations of a connected
/// hypergraph under `tj:1:1` with no condition beyond token distinctness.
///
/// Works one token at a time: pick `s` in the current configuration but not
/// the target and `t` vice versa, walk a shortest path, and clear occupied
/// blocks by sliding their far token first. Uses at most one slide per path
/// vertex per token, so O(n * diameter) moves overall.
pub fn reconfigure_unconstrained(
    h: &Hypergraph,
    vs: &Configuration,
    vt: &Configuration,
) -> Result<ReconfSequence> {
    h.require_connected()?;
    if vs.len() != vt.len() {
        return Err(Error::SizeMismatch {
            left: vs.len(),
            right: vt.len(),
        });
    }
    vs.check_range(h)?;
    vt.check_range(h)?;
    let mut seq = ReconfSequence::single(vs.clone());
    loop {
        let cur = seq.end().clone();
        let s = match cur.difference(vt).first() {
            Some(&s) => s,
            None => break,
        };
        let t = *vt
            .difference(&cur)
            .first()
            .expect("equal sizes leave a free target");
        let path = h
            .shortest_path(s, t)?
            .expect("connected graphs have paths");
        let mut i = 0;
        while i + 1 < path.len() {
            let mut block = 0;
            while seq.end().contains(path[i + 1 + block]) {
                block += 1; // the target end of the path is unoccupied
            }
            for q in 0..=block {
                let from = path[i + block - q];
                let to = path[i + block + 1 - q];
                let mv = single_jump_move(seq.end(), from, to);
                seq.push_move(mv)?;
            }
            i += block + 1;
        }
    }
    Ok(seq)
}

/// Reconfigures between two equal-size configurations under `tj:all:1`
/// while keeping their intersection occupied in every intermediate step.
///
/// The kept vertices are contracted away; the remaining tokens run the
/// unconstrained solver on the contracted hypergraph, and every slide across
/// an added shortcut expands into a simultaneous cascade of unit slides
/// along the recorded witness path through the kept set.
pub fn reconfigure_keep_intersection(
    h: &Hypergraph,
    vs: &Configuration,
    vt: &Configuration,
) -> Result<ReconfSequence> {
    h.require_connected()?;
    if vs.len() != vt.len() {
        return Err(Error::SizeMismatch {
            left: vs.len(),
            right: vt.len(),
        });
    }
    if vs == vt {
        return Ok(ReconfSequence::single(vs.clone()));
    }
    let keep: BTreeSet<usize> = vs.intersection(vt).iter().collect();
    let contracted = contract_through(h, &keep)?;
    let map = |v: usize| {
        contracted
            .from_original(v)
            .expect("moving tokens survive the contraction")
    };
    let ms = Configuration::new(vs.difference(vt).into_iter().map(map).collect())?;
    let mt = Configuration::new(vt.difference(vs).into_iter().map(map).collect())?;
    let inner = reconfigure_unconstrained(&contracted.graph, &ms, &mt)?;

    let mut seq = ReconfSequence::single(vs.clone());
    for mv in &inner.moves {
        let (a_new, b_new) = mv
            .moving_pairs()
            .next()
            .expect("unconstrained moves slide exactly one token");
        let a = contracted.to_original[a_new];
        let b = contracted.to_original[b_new];
        let outer = if h.within_one(a, b) {
            single_jump_move(seq.end(), a, b)
        } else {
            let stored = contracted
                .witness(a_new, b_new)
                .expect("non-adjacent contracted edges carry a witness");
            let path: Vec<usize> = if stored[0] == a {
                stored.to_vec()
            } else {
                stored.iter().rev().copied().collect()
            };
            let on_path: BTreeSet<usize> = path[..path.len() - 1].iter().copied().collect();
            let mut pairs: Vec<(usize, usize)> = path
                .windows(2)
                .map(|w| (w[0], w[1]))
                .collect();
            for v in seq.end().iter() {
                if !on_path.contains(&v) {
                    pairs.push((v, v));
                }
            }
            Move::new(pairs)?
        };
        seq.push_move(outer)?;
    }
    debug_assert_eq!(seq.end(), vt);
    Ok(seq)
}

/// Computes a vertex cover `vm` such that both B(vs, vm) and B(vt, vm) have
/// matchings saturating the `vm` side.
///
/// Starts from `vs`; every Hall failure on the `vm` side yields a violator
/// `A` and the strictly smaller cover `(vm \ A) ∪ (N[A] ∩ source)`, so the
/// loop ends within n rounds.
pub fn move_to_common(
    h: &Hypergraph,
    vs: &Configuration,
    vt: &Configuration,
) -> Result<Configuration> {
    require_solution(h, Condition::VertexCover, vs)?;
    require_solution(h, Condition::VertexCover, vt)?;
    let mut vm = vs.clone();
    for _ in 0..=h.n() + 1 {
        let violator = [vs, vt]
            .into_iter()
            .find_map(|source| {
                let b = unit_move_graph(h, source, &vm);
                hall_violator(&b, Side::Right).map(|idx| (source, idx))
            });
        let (source, violator_idx) = match violator {
            None => return Ok(vm),
            Some(v) => v,
        };
        let vm_verts = vm.vertices();
        let a: Vec<usize> = violator_idx.into_iter().map(|i| vm_verts[i]).collect();
        let replacement: Vec<usize> = h
            .closed_neighborhood_of_set(&a)
            .into_iter()
            .filter(|&v| source.contains(v))
            .collect();
        let mut next: Vec<usize> = vm
            .iter()
            .filter(|v| !a.contains(v))
            .collect();
        next.extend(replacement);
        next.sort_unstable();
        next.dedup();
        let next = Configuration::new(next)?;
        if next.len() >= vm.len() {
            return Err(Error::Internal(
                "Hall violator replacement did not shrink the cover".into(),
            ));
        }
        require_solution(h, Condition::VertexCover, &next)
            .map_err(|_| Error::Internal("shrunken set lost the cover property".into()))?;
        vm = next;
    }
    Err(Error::Internal("move_to_common failed to converge".into()))
}

/// Given `vm` reachable from `vs` (B(vs, vm) saturates vm's side), returns a
/// superset `v' ⊇ vm` of size |vs| together with a `tj:all:1` move from `vs`
/// to `v'`. Minimum-distance matching keeps the unmatched tokens clear of
/// `vm`.
pub fn move_to_superset(
    h: &Hypergraph,
    vs: &Configuration,
    vm: &Configuration,
) -> Result<(Configuration, Move)> {
    let b = unit_move_graph(h, vs, vm);
    if hall_violator(&b, Side::Right).is_some() {
        return Err(Error::NoSaturatingMatching);
    }
    let m = min_cost_saturating_matching(&b, Side::Right)?;
    let vs_verts = vs.vertices();
    let vm_verts = vm.vertices();
    let matched_left: BTreeSet<usize> = m.pairs().iter().map(|&(l, _)| l).collect();
    let stay: Vec<usize> = (0..vs.len())
        .filter(|l| !matched_left.contains(l))
        .map(|l| vs_verts[l])
        .collect();
    if stay.iter().any(|&v| vm.contains(v)) {
        return Err(Error::Internal(
            "minimum-cost matching left a token inside vm".into(),
        ));
    }
    let mut pairs: Vec<(usize, usize)> = stay.iter().map(|&v| (v, v)).collect();
    pairs.extend(m.pairs().iter().map(|&(l, r)| (vs_verts[l], vm_verts[r])));
    let mv = Move::new(pairs)?;
    let vprime = mv.targets();
    debug_assert_eq!(vprime.len(), vs.len());
    debug_assert!(vm.is_subset_of(&vprime));
    Ok((vprime, mv))
}

/// Walks a single token between singleton solutions, moving at most
/// `step` per move. Fallback used by all three solvers at k = 1.
fn singleton_walk(
    h: &Hypergraph,
    cond: Condition,
    step: usize,
    start: usize,
    target: usize,
) -> Result<ReconfSequence> {
    let feasible: Vec<bool> = (0..h.n())
        .map(|v| {
            Configuration::new(vec![v])
                .and_then(|c| check_condition(h, cond, &c))
                .unwrap_or(false)
        })
        .collect();
    let mut parent: Vec<Option<usize>> = vec![None; h.n()];
    let mut seen = vec![false; h.n()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if v == target {
            break;
        }
        let dist = h.distances_from(v)?;
        for u in 0..h.n() {
            if !seen[u] && feasible[u] && matches!(dist[u], Some(d) if d <= step) {
                seen[u] = true;
                parent[u] = Some(v);
                queue.push_back(u);
            }
        }
    }
    if !seen[target] {
        return Err(Error::OutsideGuarantee(format!(
            "no single-token walk from {start} to {target} with steps of at most {step}"
        )));
    }
    let mut walk = vec![target];
    let mut cur = target;
    while let Some(p) = parent[cur] {
        walk.push(p);
        cur = p;
    }
    walk.reverse();
    let mut seq = ReconfSequence::single(Configuration::new(vec![start])?);
    for w in walk.windows(2) {
        seq.push_move(Move::new(vec![(w[0], w[1])])?)?;
    }
    Ok(seq)
}

/// Reconfigures two equal-size vertex covers of a connected hypergraph under
/// `tj:all:1`: one move into a superset of the common cover `vm`, a
/// keep-intersection phase that never vacates `vm`, and one move out.
pub fn solve_vertex_cover(
    h: &Hypergraph,
    vs: &Configuration,
    vt: &Configuration,
) -> Result<ReconfSequence> {
    h.require_connected()?;
    if vs.len() != vt.len() {
        return Err(Error::SizeMismatch {
            left: vs.len(),
            right: vt.len(),
        });
    }
    require_solution(h, Condition::VertexCover, vs)?;
    require_solution(h, Condition::VertexCover, vt)?;
    if vs == vt {
        return Ok(ReconfSequence::single(vs.clone()));
    }
    if vs.len() == 1 {
        return singleton_walk(h, Condition::VertexCover, 1, vs.vertices()[0], vt.vertices()[0]);
    }
    let vm = move_to_common(h, vs, vt)?;
    let (vps, mv_s) = move_to_superset(h, vs, &vm)?;
    let (vpt, mv_t) = move_to_superset(h, vt, &vm)?;
    let mut seq = ReconfSequence::single(vs.clone());
    if !mv_s.is_identity() {
        seq.push_move(mv_s)?;
    }
    let middle = reconfigure_keep_intersection(h, &vps, &vpt)?;
    seq.extend_with(middle)?;
    if !mv_t.is_identity() {
        seq.push_move(mv_t.reversed())?;
    }
    debug_assert_eq!(seq.end(), vt);
    Ok(seq)
}

/// Rebuilds a move's bijection so that at most `budget` of its pairs sit at
/// graph distance 2, exchanging pairs along a cycle that alternates between
/// the move and the unit-distance edges.
fn repair_ds_move(g: &Hypergraph, h: &Hypergraph, mv: &Move, budget: usize) -> Result<Move> {
    let long = mv
        .pairs()
        .iter()
        .filter(|&&(u, v)| !g.within_one(u, v))
        .count();
    if long <= budget {
        return Ok(mv.clone());
    }
    let from = mv.sources();
    let to = mv.targets();
    let fv = from.vertices();
    let tv = to.vertices();
    let b = unit_move_graph(h, &from, &to);
    let mpairs = mv
        .pairs()
        .iter()
        .map(|&(u, v)| {
            (
                fv.binary_search(&u).expect("source in config"),
                tv.binary_search(&v).expect("target in config"),
            )
        })
        .collect();
    let m = Matching::new(mpairs);
    let mut w = BTreeSet::new();
    for (i, u) in from.iter().enumerate() {
        for (j, v) in to.iter().enumerate() {
            if g.within_one(u, v) {
                w.insert((i, j));
            }
        }
    }
    let repaired = alternating_cycle_repair(&b, &m, &w, budget).map_err(|e| {
        Error::OutsideGuarantee(format!(
            "distance-2 budget repair failed between {from} and {to}: {e}"
        ))
    })?;
    let pairs = repaired
        .pairs()
        .iter()
        .map(|&(i, j)| (fv[i], tv[j]))
        .collect();
    Move::new(pairs)
}

/// Reconfigures two equal-size dominating sets of a connected graph under
/// `tt:k-2:2`: the vertex-cover pipeline runs on the closed-neighborhood
/// hypergraph, where unit moves are distance-2 moves in the graph, and every
/// move that spends more than k-2 distance-2 jumps is repaired against the
/// unit-distance edges.
pub fn solve_dominating_set(
    g: &Hypergraph,
    ds: &Configuration,
    dt: &Configuration,
) -> Result<ReconfSequence> {
    g.require_rank_two()?;
    g.require_connected()?;
    if ds.len() != dt.len() {
        return Err(Error::SizeMismatch {
            left: ds.len(),
            right: dt.len(),
        });
    }
    require_solution(g, Condition::DominatingSet, ds)?;
    require_solution(g, Condition::DominatingSet, dt)?;
    if ds == dt {
        return Ok(ReconfSequence::single(ds.clone()));
    }
    let k = ds.len();
    if k == 1 {
        return singleton_walk(
            g,
            Condition::DominatingSet,
            1,
            ds.vertices()[0],
            dt.vertices()[0],
        );
    }
    let budget = k - 2;
    let h = closed_neighborhood_hypergraph(g)?;
    let dm = move_to_common(&h, ds, dt)?;
    let (vps, mv_s) = move_to_superset(&h, ds, &dm)?;
    let (vpt, mv_t) = move_to_superset(&h, dt, &dm)?;
    let mut seq = ReconfSequence::single(ds.clone());
    if !mv_s.is_identity() {
        seq.push_move(repair_ds_move(g, &h, &mv_s, budget)?)?;
    }
    let middle = reconfigure_keep_intersection(&h, &vps, &vpt)?;
    for mv in &middle.moves {
        seq.push_move(repair_ds_move(g, &h, mv, budget)?)?;
    }
    if !mv_t.is_identity() {
        seq.push_move(repair_ds_move(g, &h, &mv_t, budget)?.reversed())?;
    }
    debug_assert_eq!(seq.end(), dt);
    Ok(seq)
}

/// The common independent set both endpoint sets can jump into, plus its
/// maximal extension and the two entry moves.
#[derive(Clone, Debug)]
pub struct GoodMis {
    pub im: Configuration,
    pub istar: Configuration,
    /// One `tj:all:1` move taking the start set into a subset of `im`.
    pub entry_from_start: Move,
    /// One `tj:all:1` move taking the target set into a subset of `im`.
    pub entry_from_target: Move,
}

/// Builds an independent set `im` whose move graphs from both endpoints
/// saturate the endpoint sides, growing `im` on every Hall failure, then
/// completes it greedily (ascending vertex id) to a maximal independent set.
pub fn build_good_mis(
    g: &Hypergraph,
    is_: &Configuration,
    it: &Configuration,
) -> Result<GoodMis> {
    g.require_rank_two()?;
    g.require_connected()?;
    if is_.len() != it.len() {
        return Err(Error::SizeMismatch {
            left: is_.len(),
            right: it.len(),
        });
    }
    require_solution(g, Condition::IndependentSet, is_)?;
    require_solution(g, Condition::IndependentSet, it)?;

    let mut im = is_.clone();
    for _ in 0..=g.n() + 1 {
        let violator = [is_, it].into_iter().find_map(|source| {
            let b = unit_move_graph(g, source, &im);
            hall_violator(&b, Side::Left).map(|idx| (source, idx))
        });
        let (source, violator_idx) = match violator {
            None => break,
            Some(v) => v,
        };
        let source_verts = source.vertices();
        let a: Vec<usize> = violator_idx.into_iter().map(|i| source_verts[i]).collect();
        let closed = g.closed_neighborhood_of_set(&a);
        let mut next: Vec<usize> = im
            .iter()
            .filter(|v| closed.binary_search(v).is_err())
            .collect();
        next.extend(a.iter().copied());
        let next = Configuration::new(next)?;
        if next.len() <= im.len() {
            return Err(Error::Internal(
                "Hall violator replacement did not grow the independent set".into(),
            ));
        }
        require_solution(g, Condition::IndependentSet, &next)
            .map_err(|_| Error::Internal("grown set lost independence".into()))?;
        im = next;
    }

    let b_s = unit_move_graph(g, is_, &im);
    let b_t = unit_move_graph(g, it, &im);
    if hall_violator(&b_s, Side::Left).is_some() || hall_violator(&b_t, Side::Left).is_some() {
        return Err(Error::Internal("good-set loop failed to converge".into()));
    }

    let mut istar_verts: Vec<usize> = im.vertices().to_vec();
    for v in 0..g.n() {
        if istar_verts.binary_search(&v).is_ok() {
            continue;
        }
        if istar_verts.iter().all(|&u| !g.are_adjacent(u, v)) {
            istar_verts.push(v);
            istar_verts.sort_unstable();
        }
    }
    let istar = Configuration::new(istar_verts)?;

    let entry = |source: &Configuration, b: &BipartiteGraph| -> Result<Move> {
        let m = max_matching(b);
        if m.len() != source.len() {
            return Err(Error::Internal("entry matching must saturate".into()));
        }
        let sv = source.vertices();
        let iv = im.vertices();
        Move::new(m.pairs().iter().map(|&(l, r)| (sv[l], iv[r])).collect())
    };
    let entry_from_start = entry(is_, &b_s)?;
    let entry_from_target = entry(it, &b_t)?;
    Ok(GoodMis {
        im,
        istar,
        entry_from_start,
        entry_from_target,
    })
}

/// Reconfigures two subsets of a maximal independent set under `tj:1:3` by
/// running the unconstrained solver on the distance-3 graph over `istar`,
/// which is connected whenever the host graph is.
pub fn reconfigure_within_mis(
    g: &Hypergraph,
    istar: &Configuration,
    i1: &Configuration,
    i2: &Configuration,
) -> Result<ReconfSequence> {
    g.require_rank_two()?;
    if !check_condition(g, Condition::IndependentSet, istar)? {
        return Err(Error::NotMaximal("the set is not independent".into()));
    }
    for v in 0..g.n() {
        if !istar.contains(v) && istar.iter().all(|u| !g.are_adjacent(u, v)) {
            return Err(Error::NotMaximal(format!(
                "vertex {v} could still be added"
            )));
        }
    }
    if !i1.is_subset_of(istar) || !i2.is_subset_of(istar) {
        return Err(Error::InvalidInput(
            "endpoint sets must be subsets of the maximal independent set".into(),
        ));
    }
    let bdg = bounded_distance_graph(g, istar.vertices(), 3)?;
    let map = |v: usize| bdg.from_original(v).expect("subset of istar");
    let j1 = Configuration::new(i1.iter().map(map).collect())?;
    let j2 = Configuration::new(i2.iter().map(map).collect())?;
    let inner = reconfigure_unconstrained(&bdg.graph, &j1, &j2)?;
    let mut seq = ReconfSequence::single(i1.clone());
    for mv in &inner.moves {
        let (a_new, b_new) = mv
            .moving_pairs()
            .next()
            .expect("unconstrained moves slide exactly one token");
        let a = bdg.to_original[a_new];
        let b = bdg.to_original[b_new];
        seq.push_move(single_jump_move(seq.end(), a, b))?;
    }
    debug_assert_eq!(seq.end(), i2);
    Ok(seq)
}

/// Reconfigures two equal-size independent sets of a connected graph under
/// `tt:1:3`: one all-slide move into the good set, distance-3 single jumps
/// inside the maximal extension, and one all-slide move out.
pub fn solve_independent_set(
    g: &Hypergraph,
    is_: &Configuration,
    it: &Configuration,
) -> Result<ReconfSequence> {
    g.require_rank_two()?;
    g.require_connected()?;
    if is_.len() != it.len() {
        return Err(Error::SizeMismatch {
            left: is_.len(),
            right: it.len(),
        });
    }
    require_solution(g, Condition::IndependentSet, is_)?;
    require_solution(g, Condition::IndependentSet, it)?;
    if is_ == it {
        return Ok(ReconfSequence::single(is_.clone()));
    }
    if is_.len() == 1 {
        return singleton_walk(
            g,
            Condition::IndependentSet,
            3,
            is_.vertices()[0],
            it.vertices()[0],
        );
    }
    let good = build_good_mis(g, is_, it)?;
    let mut seq = ReconfSequence::single(is_.clone());
    if !good.entry_from_start.is_identity() {
        seq.push_move(good.entry_from_start.clone())?;
    }
    let i1 = good.entry_from_start.targets();
    let i2 = good.entry_from_target.targets();
    let middle = reconfigure_within_mis(g, &good.istar, &i1, &i2)?;
    seq.extend_with(middle)?;
    if !good.entry_from_target.is_identity() {
        seq.push_move(good.entry_from_target.reversed())?;
    }
    debug_assert_eq!(seq.end(), it);
    Ok(seq)
}

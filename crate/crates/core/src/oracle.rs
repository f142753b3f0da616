//! Brute-force ground truth: enumerate all size-k solutions as bit masks,
//! build single-move adjacency lazily, and answer reachability and
//! shortest-sequence queries by breadth-first search.
//!
//! The oracle is a desk-scale tool: it accepts at most 64 vertices and
//! refuses to enumerate more than the configured cap of subsets.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{check_condition, Condition, Configuration, DistanceMatrix, Hypergraph};
use crate::rules::{find_move, move_exists_with, ReconfSequence, Rule};

pub const DEFAULT_ENUM_CAP: u64 = 5_000_000;

/// The enumeration cap, overridable through `RECONFIG_ENUM_CAP`.
pub fn enumeration_cap() -> u64 {
    std::env::var("RECONFIG_ENUM_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn mask_of(c: &Configuration) -> u64 {
    c.iter().fold(0u64, |m, v| m | (1u64 << v))
}

fn config_of(mask: u64) -> Configuration {
    let verts = (0..64).filter(|&v| mask & (1u64 << v) != 0).collect();
    Configuration::new(verts).expect("bit masks have distinct vertices")
}

/// Fast condition checks over bit masks.
struct MaskChecker {
    cond: Condition,
    edge_masks: Vec<u64>,
    closed_masks: Vec<u64>,
}

impl MaskChecker {
    fn new(h: &Hypergraph, cond: Condition) -> Result<Self> {
        if matches!(cond, Condition::DominatingSet | Condition::IndependentSet) {
            h.require_rank_two()?;
        }
        let edge_masks = h
            .edges()
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect();
        let closed_masks = match cond {
            Condition::DominatingSet => (0..h.n())
                .map(|v| {
                    h.closed_neighborhood(v)
                        .iter()
                        .fold(0u64, |m, &u| m | (1u64 << u))
                })
                .collect(),
            _ => Vec::new(),
        };
        Ok(Self {
            cond,
            edge_masks,
            closed_masks,
        })
    }

    fn satisfies(&self, mask: u64) -> bool {
        match self.cond {
            Condition::Unconstrained => true,
            Condition::VertexCover => self.edge_masks.iter().all(|&e| e & mask != 0),
            Condition::IndependentSet => self
                .edge_masks
                .iter()
                .all(|&e| (e & mask).count_ones() < 2),
            Condition::DominatingSet => self.closed_masks.iter().all(|&c| c & mask != 0),
        }
    }
}

fn check_oracle_size(h: &Hypergraph, k: usize) -> Result<()> {
    if h.n() > 64 {
        return Err(Error::OracleTooLarge { n: h.n() });
    }
    let count = binomial(h.n(), k);
    let cap = enumeration_cap();
    if count > cap as u128 {
        return Err(Error::EnumerationCap {
            n: h.n(),
            k,
            count,
            cap,
        });
    }
    Ok(())
}

fn solution_masks(h: &Hypergraph, cond: Condition, k: usize) -> Result<Vec<u64>> {
    check_oracle_size(h, k)?;
    let checker = MaskChecker::new(h, cond)?;
    let n = h.n();
    let mut out = Vec::new();
    if k == 0 {
        if checker.satisfies(0) {
            out.push(0);
        }
        return Ok(out);
    }
    if k > n {
        return Ok(out);
    }
    let limit: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut mask: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    loop {
        if checker.satisfies(mask) {
            out.push(mask);
        }
        // Gosper's hack: next subset of the same size.
        let c = mask & mask.wrapping_neg();
        let r = match mask.checked_add(c) {
            Some(r) => r,
            None => break,
        };
        let next = (((r ^ mask) >> 2) / c) | r;
        if next > limit || next < mask {
            break;
        }
        mask = next;
    }
    Ok(out)
}

/// All size-k configurations satisfying `cond`, in canonical (ascending
/// mask) order.
pub fn enumerate_solutions(
    h: &Hypergraph,
    cond: Condition,
    k: usize,
) -> Result<Vec<Configuration>> {
    Ok(solution_masks(h, cond, k)?
        .into_iter()
        .map(config_of)
        .collect())
}

type BfsOutcome = (Vec<Option<usize>>, Vec<Option<usize>>);

/// The solution space of one (graph, condition, rule, k) instance with lazy
/// adjacency.
struct Space {
    rule: Rule,
    masks: Vec<u64>,
    configs: Vec<Configuration>,
    index: HashMap<u64, usize>,
    dm: DistanceMatrix,
    /// Union of per-token distance balls per state; a move can only land
    /// inside this mask.
    reach: Vec<u64>,
}

impl Space {
    fn new(h: &Hypergraph, cond: Condition, rule: &Rule, k: usize) -> Result<Self> {
        rule.validate()?;
        if matches!(rule, Rule::Relaxed) {
            return Err(Error::RelaxedRuleMisuse);
        }
        let masks = solution_masks(h, cond, k)?;
        let configs: Vec<Configuration> = masks.iter().map(|&m| config_of(m)).collect();
        let index = masks
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect();
        let dm = DistanceMatrix::new(h);
        let max_d = match *rule {
            Rule::TokenJumping { dist, .. } => dist,
            Rule::TwoTier { extra_dist, .. } => extra_dist,
            Rule::Relaxed => unreachable!(),
        };
        let mut ball = vec![0u64; h.n()];
        for (v, mask) in ball.iter_mut().enumerate() {
            for u in 0..h.n() {
                if matches!(dm.dist(v, u), Some(d) if d <= max_d) {
                    *mask |= 1u64 << u;
                }
            }
        }
        let reach = masks
            .iter()
            .map(|&m| {
                (0..h.n())
                    .filter(|&v| m & (1u64 << v) != 0)
                    .fold(0u64, |acc, v| acc | ball[v])
            })
            .collect();
        Ok(Self {
            rule: *rule,
            masks,
            configs,
            index,
            dm,
            reach,
        })
    }

    fn neighbors(&self, i: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for j in 0..self.masks.len() {
            if j == i {
                continue;
            }
            if self.masks[j] & !self.reach[i] != 0 || self.masks[i] & !self.reach[j] != 0 {
                continue;
            }
            if move_exists_with(&self.dm, &self.configs[i], &self.configs[j], &self.rule)? {
                out.push(j);
            }
        }
        Ok(out)
    }

    /// BFS distances from `src`, stopping early once `goal` (if any) is
    /// settled or the depth bound is passed.
    fn bfs(
        &self,
        src: usize,
        goal: Option<usize>,
        max_depth: Option<usize>,
    ) -> Result<BfsOutcome> {
        let mut dist = vec![None; self.masks.len()];
        let mut parent = vec![None; self.masks.len()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(i) = queue.pop_front() {
            let d = dist[i].unwrap();
            if goal == Some(i) {
                break;
            }
            if matches!(max_depth, Some(b) if d >= b) {
                continue;
            }
            for j in self.neighbors(i)? {
                if dist[j].is_none() {
                    dist[j] = Some(d + 1);
                    parent[j] = Some(i);
                    queue.push_back(j);
                }
            }
        }
        Ok((dist, parent))
    }
}

/// Oracle answer: exact reachability, the exact shortest length, and a
/// validating witness sequence.
#[derive(Clone, Debug)]
pub struct Reachability {
    pub reachable: bool,
    pub shortest: Option<usize>,
    pub witness: Option<ReconfSequence>,
}

fn endpoints_index(
    space: &Space,
    h: &Hypergraph,
    cond: Condition,
    cs: &Configuration,
    ct: &Configuration,
) -> Result<(usize, usize)> {
    if cs.len() != ct.len() {
        return Err(Error::SizeMismatch {
            left: cs.len(),
            right: ct.len(),
        });
    }
    cs.check_range(h)?;
    ct.check_range(h)?;
    if !check_condition(h, cond, cs)? || !check_condition(h, cond, ct)? {
        return Err(Error::InfeasibleEndpoint);
    }
    let si = *space
        .index
        .get(&mask_of(cs))
        .ok_or(Error::InfeasibleEndpoint)?;
    let ti = *space
        .index
        .get(&mask_of(ct))
        .ok_or(Error::InfeasibleEndpoint)?;
    Ok((si, ti))
}

/// Exact reachability between two solutions by BFS over the solution space.
pub fn reachability(
    h: &Hypergraph,
    cond: Condition,
    rule: &Rule,
    cs: &Configuration,
    ct: &Configuration,
) -> Result<Reachability> {
    let space = Space::new(h, cond, rule, cs.len())?;
    let (si, ti) = endpoints_index(&space, h, cond, cs, ct)?;
    let (dist, parent) = space.bfs(si, Some(ti), None)?;
    match dist[ti] {
        None => Ok(Reachability {
            reachable: false,
            shortest: None,
            witness: None,
        }),
        Some(d) => {
            let mut order = vec![ti];
            let mut cur = ti;
            while let Some(p) = parent[cur] {
                order.push(p);
                cur = p;
            }
            order.reverse();
            let mut seq = ReconfSequence::single(space.configs[order[0]].clone());
            for w in order.windows(2) {
                let mv = find_move(h, &space.configs[w[0]], &space.configs[w[1]], rule)?
                    .ok_or_else(|| {
                        Error::Internal("adjacent states must admit a move".into())
                    })?;
                seq.push_move(mv)?;
            }
            Ok(Reachability {
                reachable: true,
                shortest: Some(d),
                witness: Some(seq),
            })
        }
    }
}

/// Shortest length within a move bound, or `None` when the target is not
/// reachable within it. Useful for lower-bound checks without exploring the
/// whole component.
pub fn shortest_within(
    h: &Hypergraph,
    cond: Condition,
    rule: &Rule,
    cs: &Configuration,
    ct: &Configuration,
    max_moves: usize,
) -> Result<Option<usize>> {
    let space = Space::new(h, cond, rule, cs.len())?;
    let (si, ti) = endpoints_index(&space, h, cond, cs, ct)?;
    let (dist, _) = space.bfs(si, Some(ti), Some(max_moves))?;
    Ok(dist[ti].filter(|&d| d <= max_moves))
}

/// Connected components of the solution space as (size, diameter) pairs,
/// ordered by their smallest state.
pub fn component_report(
    h: &Hypergraph,
    cond: Condition,
    rule: &Rule,
    k: usize,
) -> Result<Vec<(usize, usize)>> {
    let space = Space::new(h, cond, rule, k)?;
    let m = space.masks.len();
    let mut comp = vec![usize::MAX; m];
    let mut report = Vec::new();
    for start in 0..m {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = report.len();
        let (dist, _) = space.bfs(start, None, None)?;
        let members: Vec<usize> = (0..m).filter(|&i| dist[i].is_some()).collect();
        for &i in &members {
            comp[i] = id;
        }
        let mut diameter = 0;
        for &i in &members {
            let (d, _) = space.bfs(i, None, None)?;
            for &j in &members {
                if let Some(x) = d[j] {
                    diameter = diameter.max(x);
                }
            }
        }
        report.push((members.len(), diameter));
    }
    Ok(report)
}

/// True when every same-size solution pair is reachable, i.e. the solution
/// space has at most one component.
pub fn fully_connected(h: &Hypergraph, cond: Condition, rule: &Rule, k: usize) -> Result<bool> {
    let space = Space::new(h, cond, rule, k)?;
    let m = space.masks.len();
    if m <= 1 {
        return Ok(true);
    }
    let (dist, _) = space.bfs(0, None, None)?;
    Ok(dist.iter().all(Option::is_some))
}

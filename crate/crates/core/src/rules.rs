//! Reconfiguration-rule semantics: single-move existence and validation,
//! full-sequence validation, and the relaxed-rule validator.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{check_condition, Condition, Configuration, DistanceMatrix, Hypergraph};
use crate::matching::{self, BipartiteGraph, Side};

/// How many tokens may relocate in one move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Movers {
    All,
    AtMost(usize),
}

/// A reconfiguration rule.
///
/// `TokenJumping { movers, dist }` lets at most `movers` tokens move, each by
/// distance at most `dist`. Token sliding is `TokenJumping { AtMost(1), 1 }`
/// and classic token jumping on a connected graph is
/// `TokenJumping { AtMost(1), n }`.
///
/// `TwoTier { extra_movers, extra_dist }` lets every token move by distance
/// at most 1, and up to `extra_movers` of them by distance at most
/// `extra_dist` instead.
///
/// `Relaxed` marks sequences of removal/addition/jump step lists; those are
/// validated by [`validate_relaxed_sequence`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    TokenJumping { movers: Movers, dist: usize },
    TwoTier { extra_movers: usize, extra_dist: usize },
    Relaxed,
}

impl Rule {
    pub fn token_sliding() -> Self {
        Rule::TokenJumping {
            movers: Movers::AtMost(1),
            dist: 1,
        }
    }

    pub fn all_slide() -> Self {
        Rule::TokenJumping {
            movers: Movers::All,
            dist: 1,
        }
    }

    /// The dominating-set guarantee rule for solution size `k`.
    pub fn ds_guarantee(k: usize) -> Self {
        Rule::TwoTier {
            extra_movers: k.saturating_sub(2),
            extra_dist: 2,
        }
    }

    /// The independent-set guarantee rule.
    pub fn is_guarantee() -> Self {
        Rule::TwoTier {
            extra_movers: 1,
            extra_dist: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Rule::TokenJumping { dist, .. } if dist < 1 => {
                Err(Error::InvalidRule("token jumping needs dist >= 1".into()))
            }
            Rule::TwoTier { extra_dist, .. } if extra_dist < 2 => Err(Error::InvalidRule(
                "two-tier rules need dist >= 2 (dist 1 is tj:all:1)".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Parses the CLI form: `tj:<movers>:<dist>` with movers `all` or an
    /// integer, `tt:<k'>:<d>`, or `relaxed`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRule(s.to_string());
        if s == "relaxed" {
            return Ok(Rule::Relaxed);
        }
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let rule = match parts[0] {
            "tj" => {
                let movers = if parts[1] == "all" {
                    Movers::All
                } else {
                    Movers::AtMost(parts[1].parse().map_err(|_| bad())?)
                };
                Rule::TokenJumping {
                    movers,
                    dist: parts[2].parse().map_err(|_| bad())?,
                }
            }
            "tt" => Rule::TwoTier {
                extra_movers: parts[1].parse().map_err(|_| bad())?,
                extra_dist: parts[2].parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        rule.validate()?;
        Ok(rule)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Rule::TokenJumping { movers, dist } => match movers {
                Movers::All => write!(f, "tj:all:{dist}"),
                Movers::AtMost(k) => write!(f, "tj:{k}:{dist}"),
            },
            Rule::TwoTier {
                extra_movers,
                extra_dist,
            } => write!(f, "tt:{extra_movers}:{extra_dist}"),
            Rule::Relaxed => f.write_str("relaxed"),
        }
    }
}

/// A move: one (from, to) pair per token, stationary tokens as (v, v).
/// Sorted by source vertex; both sides are duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pairs: Vec<(usize, usize)>,
}

impl Move {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateConfigVertex { vertex: w[0].0 });
            }
        }
        let mut tos: Vec<usize> = pairs.iter().map(|&(_, t)| t).collect();
        tos.sort_unstable();
        for w in tos.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateMoveTarget { vertex: w[0] });
            }
        }
        Ok(Self { pairs })
    }

    /// The identity move on a configuration.
    pub fn identity(c: &Configuration) -> Self {
        Self {
            pairs: c.iter().map(|v| (v, v)).collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn sources(&self) -> Configuration {
        Configuration::new(self.pairs.iter().map(|&(s, _)| s).collect())
            .expect("sources are duplicate-free")
    }

    pub fn targets(&self) -> Configuration {
        Configuration::new(self.pairs.iter().map(|&(_, t)| t).collect())
            .expect("targets are duplicate-free")
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.pairs.iter().map(|&(s, t)| (t, s)).collect())
            .expect("reversal preserves validity")
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|&(s, t)| s == t)
    }

    /// Pairs that actually relocate a token.
    pub fn moving_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied().filter(|&(s, t)| s != t)
    }
}

/// One step of a relaxed token-jumping move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelaxedStep {
    Remove(usize),
    Add(usize),
    Jump(usize, usize),
}

/// A reconfiguration sequence: configurations plus the move between each
/// consecutive pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfSequence {
    pub configurations: Vec<Configuration>,
    pub moves: Vec<Move>,
}

impl ReconfSequence {
    pub fn single(c: Configuration) -> Self {
        Self {
            configurations: vec![c],
            moves: Vec::new(),
        }
    }

    pub fn start(&self) -> &Configuration {
        self.configurations.first().expect("sequence is non-empty")
    }

    pub fn end(&self) -> &Configuration {
        self.configurations.last().expect("sequence is non-empty")
    }

    pub fn move_count(&self) -> usize {
        self.moves.len()
    }

    /// Appends a move whose sources must match the current final
    /// configuration.
    pub fn push_move(&mut self, mv: Move) -> Result<()> {
        if &mv.sources() != self.end() {
            return Err(Error::MoveSourceMismatch);
        }
        let next = mv.targets();
        self.moves.push(mv);
        self.configurations.push(next);
        Ok(())
    }

    /// Appends every move of `other`, which must start at the current end.
    pub fn extend_with(&mut self, other: ReconfSequence) -> Result<()> {
        if other.start() != self.end() {
            return Err(Error::MoveSourceMismatch);
        }
        for mv in other.moves {
            self.push_move(mv)?;
        }
        Ok(())
    }
}

fn rule_max_distance(rule: &Rule) -> usize {
    match *rule {
        Rule::TokenJumping { dist, .. } => dist,
        Rule::TwoTier { extra_dist, .. } => extra_dist,
        Rule::Relaxed => 0,
    }
}

/// Validates `mv` as a move from `c1` under `rule` and returns the resulting
/// configuration.
pub fn validate_move(
    h: &Hypergraph,
    c1: &Configuration,
    mv: &Move,
    rule: &Rule,
) -> Result<Configuration> {
    rule.validate()?;
    if matches!(rule, Rule::Relaxed) {
        return Err(Error::RelaxedRuleMisuse);
    }
    if &mv.sources() != c1 {
        return Err(Error::MoveSourceMismatch);
    }
    let c2 = mv.targets();
    c2.check_range(h)?;

    // One BFS per distinct source that moves.
    let mut dist_cache: BTreeMap<usize, Vec<Option<usize>>> = BTreeMap::new();
    let mut dist = |from: usize, to: usize| -> Result<Option<usize>> {
        if from == to {
            return Ok(Some(0));
        }
        if let std::collections::btree_map::Entry::Vacant(e) = dist_cache.entry(from) {
            e.insert(h.distances_from(from)?);
        }
        Ok(dist_cache[&from][to])
    };

    match *rule {
        Rule::TokenJumping { movers, dist: d } => {
            let mut moving = 0;
            for (s, t) in mv.moving_pairs() {
                moving += 1;
                match dist(s, t)? {
                    Some(x) if x <= d => {}
                    Some(_) => {
                        return Err(Error::MoveDistanceExceeded {
                            from: s,
                            to: t,
                            max: d,
                        })
                    }
                    None => return Err(Error::MoveUnreachablePair { from: s, to: t }),
                }
            }
            if let Movers::AtMost(k) = movers {
                if moving > k {
                    return Err(Error::MoverBudgetExceeded {
                        used: moving,
                        budget: k,
                    });
                }
            }
        }
        Rule::TwoTier {
            extra_movers,
            extra_dist,
        } => {
            let mut long = 0;
            for (s, t) in mv.moving_pairs() {
                match dist(s, t)? {
                    Some(1) => {}
                    Some(x) if x <= extra_dist => long += 1,
                    Some(_) => {
                        return Err(Error::MoveDistanceExceeded {
                            from: s,
                            to: t,
                            max: extra_dist,
                        })
                    }
                    None => return Err(Error::MoveUnreachablePair { from: s, to: t }),
                }
            }
            if long > extra_movers {
                return Err(Error::MoverBudgetExceeded {
                    used: long,
                    budget: extra_movers,
                });
            }
        }
        Rule::Relaxed => unreachable!(),
    }
    Ok(c2)
}

/// The bipartite move graph between two configurations under a rule: an edge
/// wherever the distance permits a jump, with cost 1 on the pairs that count
/// against the rule's mover budget.
fn move_graph(
    dist: &impl Fn(usize, usize) -> Option<usize>,
    c1: &Configuration,
    c2: &Configuration,
    rule: &Rule,
) -> (BipartiteGraph, Option<usize>) {
    let max_d = rule_max_distance(rule);
    let mut edges = Vec::new();
    for (i, u) in c1.iter().enumerate() {
        for (j, v) in c2.iter().enumerate() {
            let d = if u == v { Some(0) } else { dist(u, v) };
            let d = match d {
                Some(d) if d <= max_d => d,
                _ => continue,
            };
            let cost = match *rule {
                Rule::TokenJumping {
                    movers: Movers::All,
                    ..
                } => 0,
                Rule::TokenJumping { .. } => u64::from(u != v),
                Rule::TwoTier { .. } => u64::from(d > 1),
                Rule::Relaxed => 0,
            };
            edges.push((i, j, cost));
        }
    }
    let budget = match *rule {
        Rule::TokenJumping {
            movers: Movers::All,
            ..
        } => None,
        Rule::TokenJumping {
            movers: Movers::AtMost(k),
            ..
        } => Some(k),
        Rule::TwoTier { extra_movers, .. } => Some(extra_movers),
        Rule::Relaxed => None,
    };
    let b = BipartiteGraph::new(c1.len(), c2.len(), edges).expect("indices are dense");
    (b, budget)
}

/// Whether a single move from `c1` to `c2` exists under `rule`, using
/// precomputed distances. A move exists exactly when the move graph has a
/// perfect matching whose cost stays within the rule's budget.
pub fn move_exists_with(
    dm: &DistanceMatrix,
    c1: &Configuration,
    c2: &Configuration,
    rule: &Rule,
) -> Result<bool> {
    rule.validate()?;
    if matches!(rule, Rule::Relaxed) {
        return Err(Error::RelaxedRuleMisuse);
    }
    if c1.len() != c2.len() {
        return Err(Error::SizeMismatch {
            left: c1.len(),
            right: c2.len(),
        });
    }
    let (b, budget) = move_graph(&|u, v| dm.dist(u, v), c1, c2, rule);
    Ok(match budget {
        None => matching::max_matching(&b).len() == c1.len(),
        Some(k) => match matching::min_cost_of_saturating(&b, Side::Left) {
            Some(cost) => cost <= k as u64,
            None => false,
        },
    })
}

/// Finds a move from `c1` to `c2` under `rule`, or `None` when no bijection
/// obeys the rule. Deterministic: the minimum-cost matching is refined to
/// the lexicographically smallest pair list.
pub fn find_move(
    h: &Hypergraph,
    c1: &Configuration,
    c2: &Configuration,
    rule: &Rule,
) -> Result<Option<Move>> {
    rule.validate()?;
    if matches!(rule, Rule::Relaxed) {
        return Err(Error::RelaxedRuleMisuse);
    }
    if c1.len() != c2.len() {
        return Err(Error::SizeMismatch {
            left: c1.len(),
            right: c2.len(),
        });
    }
    c1.check_range(h)?;
    c2.check_range(h)?;
    let mut dists = BTreeMap::new();
    for u in c1.iter() {
        dists.insert(u, h.distances_from(u)?);
    }
    let (b, budget) = move_graph(
        &|u, v| dists.get(&u).and_then(|d| d[v]),
        c1,
        c2,
        rule,
    );
    let m = match budget {
        None => {
            let m = matching::max_matching(&b);
            if m.len() != c1.len() {
                return Ok(None);
            }
            m
        }
        Some(k) => match matching::min_cost_saturating_matching(&b, Side::Left) {
            Ok(m) => {
                if m.total_cost(&b) > k as u64 {
                    return Ok(None);
                }
                m
            }
            Err(Error::NoSaturatingMatching) => return Ok(None),
            Err(e) => return Err(e),
        },
    };
    let vs1 = c1.vertices();
    let vs2 = c2.vertices();
    let pairs = m
        .pairs()
        .iter()
        .map(|&(i, j)| (vs1[i], vs2[j]))
        .collect();
    Ok(Some(Move::new(pairs)?))
}

/// Validates a whole sequence: every configuration satisfies `cond`
/// (endpoints included) and every move is rule-legal and lands on the next
/// configuration. Reports the first failing index.
pub fn validate_sequence(
    h: &Hypergraph,
    cond: Condition,
    rule: &Rule,
    seq: &ReconfSequence,
) -> Result<()> {
    if matches!(rule, Rule::Relaxed) {
        return Err(Error::RelaxedRuleMisuse);
    }
    if seq.configurations.is_empty() {
        return Err(Error::SequenceStructure(
            "a sequence needs at least one configuration".into(),
        ));
    }
    if seq.moves.len() + 1 != seq.configurations.len() {
        return Err(Error::SequenceStructure(format!(
            "{} configurations need {} moves, found {}",
            seq.configurations.len(),
            seq.configurations.len() - 1,
            seq.moves.len()
        )));
    }
    for (index, cfg) in seq.configurations.iter().enumerate() {
        let ok = check_condition(h, cond, cfg).map_err(|e| Error::SequenceInvalid {
            index,
            reason: Box::new(e),
        })?;
        if !ok {
            return Err(Error::SequenceInvalid {
                index,
                reason: Box::new(Error::NotASolution(cond.name())),
            });
        }
        let expected = seq.configurations.len() == 1 || cfg.len() == seq.configurations[0].len();
        if !expected {
            return Err(Error::SequenceInvalid {
                index,
                reason: Box::new(Error::SizeMismatch {
                    left: seq.configurations[0].len(),
                    right: cfg.len(),
                }),
            });
        }
    }
    for (index, mv) in seq.moves.iter().enumerate() {
        let out = validate_move(h, &seq.configurations[index], mv, rule).map_err(|e| {
            Error::SequenceInvalid {
                index,
                reason: Box::new(e),
            }
        })?;
        if out != seq.configurations[index + 1] {
            return Err(Error::SequenceInvalid {
                index,
                reason: Box::new(Error::SequenceStructure(
                    "move does not produce the next configuration".into(),
                )),
            });
        }
    }
    Ok(())
}

/// Validates a relaxed token-jumping sequence for vertex covers.
///
/// Configurations are multisets: jumps and additions may target occupied
/// vertices. With `V_s` the start and `V_i` the configuration before move
/// `i`, each move allows at most `|V_s| - |V_i|` additions and at most
/// `|V_s| - |V_i| + 1` jumps and additions in total, and `|V_i| <= |V_s|`
/// throughout. The occupied set must stay a vertex cover after every move.
pub fn validate_relaxed_sequence(
    h: &Hypergraph,
    vs: &Configuration,
    vt: &Configuration,
    moves: &[Vec<RelaxedStep>],
) -> Result<()> {
    vs.check_range(h)?;
    vt.check_range(h)?;
    if vs.len() != vt.len() {
        return Err(Error::RelaxedEndpointMismatch);
    }
    let k = vs.len();
    if !check_condition(h, Condition::VertexCover, vs)? {
        return Err(Error::NotASolution("vertex cover"));
    }

    let mut counts = vec![0usize; h.n()];
    for v in vs.iter() {
        counts[v] = 1;
    }
    let mut population = k;

    for (index, steps) in moves.iter().enumerate() {
        let adds = steps
            .iter()
            .filter(|s| matches!(s, RelaxedStep::Add(_)))
            .count();
        let jumps = steps
            .iter()
            .filter(|s| matches!(s, RelaxedStep::Jump(..)))
            .count();
        let slack = k - population; // population <= k is an invariant
        if adds > slack {
            return Err(Error::RelaxedAdditionBudget {
                index,
                used: adds,
                allowed: slack,
            });
        }
        if jumps + adds > slack + 1 {
            return Err(Error::RelaxedJumpBudget {
                index,
                used: jumps + adds,
                allowed: slack + 1,
            });
        }
        // Steps are parallel: removals and jump sources consume tokens of
        // the configuration before the move.
        let mut consumed = vec![0usize; h.n()];
        for step in steps {
            let (src, dst) = match *step {
                RelaxedStep::Remove(v) => (Some(v), None),
                RelaxedStep::Add(v) => (None, Some(v)),
                RelaxedStep::Jump(u, v) => (Some(u), Some(v)),
            };
            if let Some(v) = src.into_iter().chain(dst).max() {
                h.check_vertex(v)?;
            }
            if let Some(u) = src {
                consumed[u] += 1;
                if consumed[u] > counts[u] {
                    return Err(Error::RelaxedMissingToken { index, vertex: u });
                }
            }
        }
        for step in steps {
            match *step {
                RelaxedStep::Remove(u) => {
                    counts[u] -= 1;
                    population -= 1;
                }
                RelaxedStep::Add(v) => {
                    counts[v] += 1;
                    population += 1;
                }
                RelaxedStep::Jump(u, v) => {
                    counts[u] -= 1;
                    counts[v] += 1;
                }
            }
        }
        let support: Vec<usize> = (0..h.n()).filter(|&v| counts[v] > 0).collect();
        let cover = check_condition(h, Condition::VertexCover, &Configuration::new(support)?)?;
        if !cover {
            return Err(Error::RelaxedNotACover { index });
        }
    }

    let support: Vec<usize> = (0..h.n()).filter(|&v| counts[v] > 0).collect();
    if population != k || support != vt.vertices() {
        return Err(Error::RelaxedEndpointMismatch);
    }
    Ok(())
}

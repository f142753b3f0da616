//! Hardness-reduction constructions and the sequence transformations that
//! accompany them: the shortest-sequence reduction with its explicit
//! yes-schedule, the cover-to-dominating-set reduction with both sequence
//! translators, relaxed-sequence normalization, and the split-graph
//! transformation to single token slides.

use crate::error::{Error, Result};
use crate::gadgets::TGadgetIds;
use crate::graph::{check_condition, Condition, Configuration, Hypergraph};
use crate::rules::{
    validate_relaxed_sequence, validate_sequence, Move, ReconfSequence, RelaxedStep, Rule,
};

/// The shortest-sequence hardness instance: the source graph plus n - k
/// T^l gadget copies, each with its fourth path vertex joined to every
/// source vertex.
#[derive(Clone, Debug)]
pub struct VcShortestReduction {
    pub graph: Hypergraph,
    pub start: Configuration,
    pub target: Configuration,
    /// The move bound: a size-k cover of the source graph exists exactly
    /// when `start` reaches `target` within `bound` moves.
    pub bound: usize,
    pub source_n: usize,
    pub cover_size: usize,
    pub copies: usize,
    l: usize,
}

impl VcShortestReduction {
    pub fn gadget(&self, i: usize) -> TGadgetIds {
        TGadgetIds {
            base: self.source_n + i * TGadgetIds::size(self.l),
            l: self.l,
        }
    }
}

/// Builds the reduced instance for the question "does `g` have a vertex
/// cover of size `k`", with move bound `l >= 2`.
pub fn reduce_vc_shortest(g: &Hypergraph, k: usize, l: usize) -> Result<VcShortestReduction> {
    g.require_rank_two()?;
    if l < 2 {
        return Err(Error::InvalidInput(
            "the shortest-sequence reduction needs a bound of at least 2".into(),
        ));
    }
    let n = g.n();
    if k > n {
        return Err(Error::InvalidInput(format!(
            "cover size {k} exceeds the vertex count {n}"
        )));
    }
    let copies = n - k;
    let total = n + copies * TGadgetIds::size(l);
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (e[0], e[1]))
        .collect();
    let mut start_verts: Vec<usize> = (0..n).collect();
    let mut target_verts: Vec<usize> = (0..n).collect();
    for i in 0..copies {
        let ids = TGadgetIds {
            base: n + i * TGadgetIds::size(l),
            l,
        };
        pairs.extend(ids.edges());
        for u in 0..n {
            pairs.push((ids.v(4), u));
        }
        start_verts.extend(ids.start());
        target_verts.extend(ids.target());
    }
    let graph = Hypergraph::simple_graph(total, &pairs)?;
    Ok(VcShortestReduction {
        graph,
        start: Configuration::new(start_verts)?,
        target: Configuration::new(target_verts)?,
        bound: l,
        source_n: n,
        cover_size: k,
        copies,
        l,
    })
}

/// Emits the explicit `l`-move schedule that witnesses a yes-instance,
/// given a size-k cover of the source graph: the uncovered source vertices
/// lend their tokens to the gadgets for one round while the waves roll
/// down the paths.
pub fn build_yes_schedule(
    red: &VcShortestReduction,
    cover: &Configuration,
) -> Result<ReconfSequence> {
    if cover.len() != red.cover_size {
        return Err(Error::InvalidInput(format!(
            "cover has size {}, expected {}",
            cover.len(),
            red.cover_size
        )));
    }
    if cover.vertices().iter().any(|&v| v >= red.source_n) {
        return Err(Error::InvalidInput(
            "the cover must use source-graph vertices".into(),
        ));
    }
    let free: Vec<usize> = (0..red.source_n).filter(|&v| !cover.contains(v)).collect();

    let mut seq = ReconfSequence::single(red.start.clone());
    let push = |seq: &mut ReconfSequence, jumps: Vec<(usize, usize)>| -> Result<()> {
        let sources: Vec<usize> = jumps.iter().map(|&(s, _)| s).collect();
        let mut pairs = jumps;
        for v in seq.end().iter() {
            if !sources.contains(&v) {
                pairs.push((v, v));
            }
        }
        seq.push_move(Move::new(pairs)?)
    };

    let mut first = Vec::new();
    let mut second = Vec::new();
    for (i, &c) in free.iter().enumerate().take(red.copies) {
        let t = red.gadget(i);
        first.extend([
            (t.v(1), t.v(2)),
            (t.v(2), t.v(3)),
            (c, t.v(4)),
            (t.v(4), t.v(5)),
        ]);
        second.extend([
            (t.v(3), t.v(4)),
            (t.v(4), c),
            (t.v(5), t.v(6)),
            (t.v(6), t.v(7)),
        ]);
    }
    push(&mut seq, first)?;
    push(&mut seq, second)?;
    for j in 3..=red.l {
        let mut wave = Vec::new();
        for i in 0..red.copies {
            let t = red.gadget(i);
            wave.extend([
                (t.v(2 * j + 1), t.v(2 * j + 2)),
                (t.v(2 * j + 2), t.v(2 * j + 3)),
            ]);
        }
        push(&mut seq, wave)?;
    }
    if seq.end() != &red.target {
        return Err(Error::Internal(
            "yes-schedule did not land on the target configuration".into(),
        ));
    }
    Ok(seq)
}

/// The cover-to-dominating-set instance: k + 1 subdivision copies of the
/// source edge set, an apex `x` joined to every source vertex, and a
/// pendant-style `y` on `x`.
#[derive(Clone, Debug)]
pub struct DsReduction {
    pub graph: Hypergraph,
    pub start: Configuration,
    pub target: Configuration,
    pub x: usize,
    pub y: usize,
    pub source_n: usize,
    pub source_m: usize,
    pub copies: usize,
}

impl DsReduction {
    fn on_source(&self, v: usize) -> bool {
        v < self.source_n
    }
}

/// Reduces reconfiguration of vertex covers under classic token jumping to
/// reconfiguration of dominating sets under `tj:all:1`.
pub fn reduce_vctj_to_ds(
    g: &Hypergraph,
    vs: &Configuration,
    vt: &Configuration,
) -> Result<DsReduction> {
    g.require_rank_two()?;
    for c in [vs, vt] {
        if !check_condition(g, Condition::VertexCover, c)? {
            return Err(Error::NotASolution("vertex cover"));
        }
    }
    if vs.len() != vt.len() {
        return Err(Error::SizeMismatch {
            left: vs.len(),
            right: vt.len(),
        });
    }
    let n = g.n();
    let m = g.edge_count();
    let k = vs.len();
    let copies = k + 1;
    let x = n + copies * m;
    let y = x + 1;
    let mut pairs = Vec::new();
    for i in 0..copies {
        for (j, e) in g.edges().iter().enumerate() {
            let id = n + i * m + j;
            pairs.push((id, e[0]));
            pairs.push((id, e[1]));
        }
    }
    for v in 0..n {
        pairs.push((x, v));
    }
    pairs.push((x, y));
    let graph = Hypergraph::simple_graph(y + 1, &pairs)?;
    let start = Configuration::new(vs.iter().chain(std::iter::once(x)).collect())?;
    let target = Configuration::new(vt.iter().chain(std::iter::once(x)).collect())?;
    Ok(DsReduction {
        graph,
        start,
        target,
        x,
        y,
        source_n: n,
        source_m: m,
        copies,
    })
}

/// Translates a classic token-jumping cover sequence on the source graph
/// into a `tj:all:1` dominating-set sequence on the reduced graph: a jump
/// u -> v becomes the parallel pair u -> x, x -> v.
pub fn vc_seq_to_ds_seq(red: &DsReduction, seq: &ReconfSequence) -> Result<ReconfSequence> {
    let mut out = ReconfSequence::single(red.start.clone());
    if seq.start().vertices()
        != red
            .start
            .vertices()
            .iter()
            .copied()
            .filter(|&v| v != red.x)
            .collect::<Vec<_>>()
    {
        return Err(Error::InvalidInput(
            "sequence does not start at the reduced instance's source cover".into(),
        ));
    }
    for (index, mv) in seq.moves.iter().enumerate() {
        let moving: Vec<(usize, usize)> = mv.moving_pairs().collect();
        match moving.len() {
            0 => {}
            1 => {
                let (u, v) = moving[0];
                if u >= red.source_n || v >= red.source_n {
                    return Err(Error::InvalidInput(format!(
                        "move {index} leaves the source graph"
                    )));
                }
                let mut pairs = vec![(u, red.x), (red.x, v)];
                for w in out.end().iter() {
                    if w != u && w != red.x {
                        pairs.push((w, w));
                    }
                }
                out.push_move(Move::new(pairs)?)?;
            }
            s => {
                return Err(Error::TooManySlides { index, slides: s });
            }
        }
    }
    Ok(out)
}

/// Translates a `tj:all:1` dominating-set sequence on the reduced graph
/// back into a relaxed cover sequence on the source graph. Moves within the
/// source graph stay jumps; moves to the apex side pair up with moves back
/// as jumps, and the leftovers become removals and additions.
pub fn ds_seq_to_relaxed_vc_seq(
    red: &DsReduction,
    seq: &ReconfSequence,
) -> Result<Vec<Vec<RelaxedStep>>> {
    let mut out = Vec::new();
    for mv in &seq.moves {
        let mut steps = Vec::new();
        let mut removals = Vec::new();
        let mut additions = Vec::new();
        for (p, q) in mv.moving_pairs() {
            match (red.on_source(p), red.on_source(q)) {
                (true, true) => steps.push(RelaxedStep::Jump(p, q)),
                (true, false) => removals.push(p),
                (false, true) => additions.push(q),
                (false, false) => {}
            }
        }
        removals.sort_unstable();
        additions.sort_unstable();
        let paired = removals.len().min(additions.len());
        for i in 0..paired {
            steps.push(RelaxedStep::Jump(removals[i], additions[i]));
        }
        steps.extend(removals[paired..].iter().map(|&v| RelaxedStep::Remove(v)));
        steps.extend(additions[paired..].iter().map(|&v| RelaxedStep::Add(v)));
        if !steps.is_empty() {
            out.push(steps);
        }
    }
    Ok(out)
}

fn is_noop(step: &RelaxedStep) -> bool {
    matches!(step, RelaxedStep::Jump(u, v) if u == v)
}

/// Rewrites a valid relaxed cover sequence into a classic single-jump cover
/// sequence with the same endpoints: pair additions with removals into
/// jumps, split multi-step moves apart, turn every remaining removal plus a
/// later budget-critical addition into a jump, and reroute jumps onto
/// occupied vertices through a free vertex.
pub fn normalize_relaxed(
    h: &Hypergraph,
    vs: &Configuration,
    vt: &Configuration,
    moves: &[Vec<RelaxedStep>],
) -> Result<ReconfSequence> {
    validate_relaxed_sequence(h, vs, vt, moves)?;
    let k = vs.len();
    let mut seq: Vec<Vec<RelaxedStep>> = moves.to_vec();
    for mv in &mut seq {
        mv.retain(|s| !is_noop(s));
    }
    seq.retain(|m| !m.is_empty());

    // Pair additions with removals inside each move: A(v) with R(u) has the
    // net effect of the jump u -> v.
    for mv in &mut seq {
        loop {
            let ai = mv.iter().position(|s| matches!(s, RelaxedStep::Add(_)));
            let ri = mv.iter().position(|s| matches!(s, RelaxedStep::Remove(_)));
            let (ai, ri) = match (ai, ri) {
                (Some(a), Some(r)) => (a, r),
                _ => break,
            };
            let added = match mv[ai] {
                RelaxedStep::Add(v) => v,
                _ => unreachable!(),
            };
            let removed = match mv[ri] {
                RelaxedStep::Remove(v) => v,
                _ => unreachable!(),
            };
            let (first, second) = (ai.min(ri), ai.max(ri));
            mv.remove(second);
            mv.remove(first);
            if removed != added {
                mv.push(RelaxedStep::Jump(removed, added));
            }
        }
    }
    seq.retain(|m| !m.is_empty());

    // Split multi-step moves: removals go to their own move directly after,
    // additions directly before, and a jump inside a multi-jump move splits
    // into an addition before and a removal after. Configurations only grow
    // under these rewrites, so covers stay covers; the budget slack of the
    // original move pays for the extracted steps.
    loop {
        let multi = seq.iter().position(|m| m.len() > 1);
        let i = match multi {
            None => break,
            Some(i) => i,
        };
        if let Some(r) = seq[i]
            .iter()
            .position(|s| matches!(s, RelaxedStep::Remove(_)))
        {
            let step = seq[i].remove(r);
            seq.insert(i + 1, vec![step]);
        } else if let Some(a) = seq[i]
            .iter()
            .position(|s| matches!(s, RelaxedStep::Add(_)))
        {
            let step = seq[i].remove(a);
            seq.insert(i, vec![step]);
        } else {
            let (u, v) = match seq[i].remove(0) {
                RelaxedStep::Jump(u, v) => (u, v),
                _ => unreachable!("multi-step moves hold only jumps here"),
            };
            seq.insert(i, vec![RelaxedStep::Add(v)]);
            seq.insert(i + 2, vec![RelaxedStep::Remove(u)]);
        }
    }

    // Eliminate removals: take the last one, find the first later move that
    // would break without it (always an addition), and merge the two into a
    // jump placed where the addition was.
    loop {
        let i = match seq
            .iter()
            .rposition(|m| matches!(m[0], RelaxedStep::Remove(_)))
        {
            None => break,
            Some(i) => i,
        };
        let removed = match seq[i][0] {
            RelaxedStep::Remove(v) => v,
            _ => unreachable!(),
        };
        let j = first_violation_without(h.n(), k, vs, &seq, i)?;
        let added = match seq[j][0] {
            RelaxedStep::Add(v) => v,
            _ => {
                return Err(Error::Internal(
                    "the move enabled by a removal must be an addition".into(),
                ))
            }
        };
        seq.remove(i);
        if removed == added {
            seq.remove(j - 1);
        } else {
            seq[j - 1] = vec![RelaxedStep::Jump(removed, added)];
        }
    }

    // Reroute jumps that land on occupied vertices through a free vertex.
    let mut guard = (seq.len() + 2) * (seq.len() + 2);
    loop {
        let mut counts = vec![0usize; h.n()];
        for v in vs.iter() {
            counts[v] = 1;
        }
        let mut collision = None;
        for (idx, mv) in seq.iter().enumerate() {
            let (u, v) = match mv[0] {
                RelaxedStep::Jump(u, v) => (u, v),
                _ => unreachable!("only jumps remain"),
            };
            if counts[v] > 0 && collision.is_none() {
                collision = Some((idx, u, v, counts.clone()));
            }
            counts[u] -= 1;
            counts[v] += 1;
        }
        let (i, u, v, pre_counts) = match collision {
            None => break,
            Some(c) => c,
        };
        let j = (i + 1..seq.len())
            .find(|&j| matches!(seq[j][0], RelaxedStep::Jump(src, _) if src == v))
            .ok_or_else(|| {
                Error::Internal("a doubled vertex must lose a token before the end".into())
            })?;
        let y = match seq[j][0] {
            RelaxedStep::Jump(_, y) => y,
            _ => unreachable!(),
        };
        match (0..h.n()).find(|&x| pre_counts[x] == 0) {
            Some(free) => {
                seq[i] = vec![RelaxedStep::Jump(u, free)];
                seq[j] = vec![RelaxedStep::Jump(free, y)];
            }
            None => {
                // Every vertex is occupied (only possible when k = n): the
                // two jumps compose into one, keeping v's token in place.
                seq[j] = vec![RelaxedStep::Jump(u, y)];
                seq.remove(i);
            }
        }
        for idx in (0..seq.len()).rev() {
            if seq[idx].iter().all(is_noop) {
                seq.remove(idx);
            } else {
                seq[idx].retain(|s| !is_noop(s));
            }
        }
        guard -= 1;
        if guard == 0 {
            return Err(Error::Internal(
                "collision rerouting failed to make progress".into(),
            ));
        }
    }

    // All moves are now single jumps between plain sets.
    let mut out = ReconfSequence::single(vs.clone());
    for mv in &seq {
        let (u, v) = match mv[0] {
            RelaxedStep::Jump(u, v) => (u, v),
            _ => unreachable!(),
        };
        let pairs = out
            .end()
            .iter()
            .map(|w| if w == u { (w, v) } else { (w, w) })
            .collect();
        out.push_move(Move::new(pairs)?)?;
    }
    if out.end() != vt {
        return Err(Error::Internal(
            "normalization changed the endpoint".into(),
        ));
    }
    Ok(out)
}

/// Simulates the sequence with move `skip` deleted and returns the index of
/// the first move that violates a budget or the population cap.
fn first_violation_without(
    n: usize,
    k: usize,
    vs: &Configuration,
    seq: &[Vec<RelaxedStep>],
    skip: usize,
) -> Result<usize> {
    let mut counts = vec![0usize; n];
    for v in vs.iter() {
        counts[v] = 1;
    }
    let mut population = k;
    for (idx, mv) in seq.iter().enumerate() {
        if idx == skip {
            continue;
        }
        match mv[0] {
            RelaxedStep::Add(v) => {
                if population >= k {
                    return Ok(idx);
                }
                counts[v] += 1;
                population += 1;
            }
            RelaxedStep::Remove(v) => {
                if counts[v] == 0 {
                    return Ok(idx);
                }
                counts[v] -= 1;
                population -= 1;
            }
            RelaxedStep::Jump(u, v) => {
                if counts[u] == 0 {
                    return Ok(idx);
                }
                counts[u] -= 1;
                counts[v] += 1;
            }
        }
    }
    Err(Error::Internal(
        "deleting a removal must break a later move".into(),
    ))
}

/// Rewrites a `tj:all:1` independent-set sequence on a split graph into a
/// token-sliding sequence: a two-slide move through the clique becomes two
/// sequential slides (independent-set-side first), and a two-slide move
/// through a single independent vertex collapses into one clique slide.
pub fn split_to_token_sliding(
    g: &Hypergraph,
    clique: &Configuration,
    seq: &ReconfSequence,
) -> Result<ReconfSequence> {
    g.require_rank_two()?;
    clique.check_range(g)?;
    let cv = clique.vertices();
    for (i, &u) in cv.iter().enumerate() {
        for &v in &cv[i + 1..] {
            if !g.are_adjacent(u, v) {
                return Err(Error::SplitWitness(format!(
                    "clique vertices {u} and {v} are not adjacent"
                )));
            }
        }
    }
    for e in g.edges() {
        if !clique.contains(e[0]) && !clique.contains(e[1]) {
            return Err(Error::SplitWitness(format!(
                "edge {{{}, {}}} lies inside the independent side",
                e[0], e[1]
            )));
        }
    }
    validate_sequence(g, Condition::IndependentSet, &Rule::all_slide(), seq)?;

    let in_clique = |v: usize| clique.contains(v);
    let mut out = ReconfSequence::single(seq.start().clone());
    let slide = |out: &mut ReconfSequence, from: usize, to: usize| -> Result<()> {
        let pairs = out
            .end()
            .iter()
            .map(|w| if w == from { (w, to) } else { (w, w) })
            .collect();
        out.push_move(Move::new(pairs)?)
    };
    for (index, mv) in seq.moves.iter().enumerate() {
        let moving: Vec<(usize, usize)> = mv.moving_pairs().collect();
        match moving.len() {
            0 => {}
            1 => slide(&mut out, moving[0].0, moving[0].1)?,
            2 => {
                let from_c = moving
                    .iter()
                    .find(|&&(u, v)| in_clique(u) && !in_clique(v))
                    .copied();
                let to_c = moving
                    .iter()
                    .find(|&&(u, v)| !in_clique(u) && in_clique(v))
                    .copied();
                match (from_c, to_c) {
                    (Some((c1, i1)), Some((i2, c2))) => {
                        if i1 == i2 {
                            if c1 != c2 {
                                slide(&mut out, c1, c2)?;
                            }
                        } else {
                            slide(&mut out, c1, i1)?;
                            slide(&mut out, i2, c2)?;
                        }
                    }
                    _ => {
                        return Err(Error::InvalidInput(format!(
                            "move {index} slides two tokens without passing through the clique"
                        )))
                    }
                }
            }
            s => return Err(Error::TooManySlides { index, slides: s }),
        }
    }
    if out.end() != seq.end() {
        return Err(Error::Internal(
            "split transformation changed the endpoint".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::rules::Movers;

    fn cfg(v: &[usize]) -> Configuration {
        Configuration::new(v.to_vec()).unwrap()
    }

    #[test]
    fn yes_schedule_on_k3_with_cover() {
        let k3 = Hypergraph::simple_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let red = reduce_vc_shortest(&k3, 2, 2).unwrap();
        assert_eq!(red.copies, 1);
        let seq = build_yes_schedule(&red, &cfg(&[0, 1])).unwrap();
        assert_eq!(seq.move_count(), 2);
        validate_sequence(
            &red.graph,
            Condition::VertexCover,
            &Rule::all_slide(),
            &seq,
        )
        .unwrap();
        assert_eq!(seq.start(), &red.start);
        assert_eq!(seq.end(), &red.target);
    }

    #[test]
    fn yes_schedule_on_p3() {
        let p3 = Hypergraph::path(3);
        let red = reduce_vc_shortest(&p3, 1, 2).unwrap();
        let seq = build_yes_schedule(&red, &cfg(&[1])).unwrap();
        assert_eq!(seq.move_count(), 2);
        validate_sequence(
            &red.graph,
            Condition::VertexCover,
            &Rule::all_slide(),
            &seq,
        )
        .unwrap();
    }

    #[test]
    fn yes_schedule_three_moves() {
        let p3 = Hypergraph::path(3);
        let red = reduce_vc_shortest(&p3, 1, 3).unwrap();
        let seq = build_yes_schedule(&red, &cfg(&[1])).unwrap();
        assert_eq!(seq.move_count(), 3);
        validate_sequence(
            &red.graph,
            Condition::VertexCover,
            &Rule::all_slide(),
            &seq,
        )
        .unwrap();
    }

    #[test]
    fn ds_reduction_counts_for_k2() {
        let k2 = Hypergraph::path(2);
        let red = reduce_vctj_to_ds(&k2, &cfg(&[0]), &cfg(&[1])).unwrap();
        assert_eq!(red.graph.n(), 6); // 2 originals + 2 edge copies + x + y
        assert!(red.start.contains(red.x));
        assert!(
            check_condition(&red.graph, Condition::DominatingSet, &red.start).unwrap()
        );
        assert!(
            check_condition(&red.graph, Condition::DominatingSet, &red.target).unwrap()
        );
    }

    #[test]
    fn forward_translation_validates() {
        let k2 = Hypergraph::path(2);
        let vs = cfg(&[0]);
        let vt = cfg(&[1]);
        let red = reduce_vctj_to_ds(&k2, &vs, &vt).unwrap();
        let mut vc_seq = ReconfSequence::single(vs);
        vc_seq.push_move(Move::new(vec![(0, 1)]).unwrap()).unwrap();
        let ds_seq = vc_seq_to_ds_seq(&red, &vc_seq).unwrap();
        assert_eq!(ds_seq.move_count(), 1);
        validate_sequence(
            &red.graph,
            Condition::DominatingSet,
            &Rule::all_slide(),
            &ds_seq,
        )
        .unwrap();
    }

    #[test]
    fn backward_translation_is_relaxed_valid() {
        let k2 = Hypergraph::path(2);
        let vs = cfg(&[0]);
        let vt = cfg(&[1]);
        let red = reduce_vctj_to_ds(&k2, &vs, &vt).unwrap();
        let r = oracle::reachability(
            &red.graph,
            Condition::DominatingSet,
            &Rule::all_slide(),
            &red.start,
            &red.target,
        )
        .unwrap();
        let witness = r.witness.unwrap();
        let relaxed = ds_seq_to_relaxed_vc_seq(&red, &witness).unwrap();
        validate_relaxed_sequence(&k2, &vs, &vt, &relaxed).unwrap();
    }

    #[test]
    fn normalize_fixpoint_on_singleton_jumps() {
        let p3 = Hypergraph::path(3);
        let vs = cfg(&[0, 1]);
        let vt = cfg(&[1, 2]);
        let moves = vec![vec![RelaxedStep::Jump(0, 2)]];
        let seq = normalize_relaxed(&p3, &vs, &vt, &moves).unwrap();
        assert_eq!(seq.move_count(), 1);
        assert_eq!(seq.moves[0].pairs(), &[(0, 2), (1, 1)]);
    }

    #[test]
    fn normalize_pairs_addition_with_removal() {
        // Drop the redundant token on 0, trade the token on 2 for one on 3
        // inside a single move (the Add/Remove pair becomes the jump
        // 2 -> 3), and refill vertex 0. Everything compresses to one jump.
        let p4 = Hypergraph::path(4);
        let vs = cfg(&[0, 1, 2]);
        let vt = cfg(&[0, 1, 3]);
        let moves = vec![
            vec![RelaxedStep::Remove(0)],
            vec![RelaxedStep::Add(3), RelaxedStep::Remove(2)],
            vec![RelaxedStep::Add(0)],
        ];
        let seq = normalize_relaxed(&p4, &vs, &vt, &moves).unwrap();
        assert_eq!(seq.move_count(), 1);
        assert_eq!(seq.moves[0].pairs(), &[(0, 0), (1, 1), (2, 3)]);
        validate_sequence(
            &p4,
            Condition::VertexCover,
            &Rule::TokenJumping {
                movers: Movers::AtMost(1),
                dist: p4.n(),
            },
            &seq,
        )
        .unwrap();
    }

    #[test]
    fn normalize_full_population_loop_collapses() {
        // With k = n every configuration is the full vertex set; any relaxed
        // walk normalizes to the empty sequence.
        let k3 = Hypergraph::simple_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let vs = cfg(&[0, 1, 2]);
        let moves = vec![
            vec![RelaxedStep::Remove(2)],
            vec![RelaxedStep::Add(2), RelaxedStep::Remove(0)],
            vec![RelaxedStep::Add(0)],
        ];
        let seq = normalize_relaxed(&k3, &vs, &vs, &moves).unwrap();
        assert_eq!(seq.move_count(), 0);
    }

    #[test]
    fn normalize_handles_separated_removal_and_addition() {
        // Remove a redundant token, slide elsewhere, add it back later.
        let p4 = Hypergraph::path(4);
        let vs = cfg(&[0, 1, 2]);
        let vt = cfg(&[1, 2, 3]);
        let moves = vec![
            vec![RelaxedStep::Remove(0)],
            vec![RelaxedStep::Add(3)],
        ];
        let seq = normalize_relaxed(&p4, &vs, &vt, &moves).unwrap();
        validate_sequence(
            &p4,
            Condition::VertexCover,
            &Rule::TokenJumping {
                movers: Movers::AtMost(1),
                dist: p4.n(),
            },
            &seq,
        )
        .unwrap();
        assert_eq!(seq.start(), &vs);
        assert_eq!(seq.end(), &vt);
    }

    #[test]
    fn split_transformation_passthrough_and_sequencing() {
        // Split graph: clique {0, 1}, independent {2, 3}.
        let g = Hypergraph::simple_graph(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let clique = cfg(&[0, 1]);
        // Single-slide moves pass through unchanged.
        let mut seq = ReconfSequence::single(cfg(&[2, 3]));
        seq.push_move(Move::new(vec![(2, 0), (3, 3)]).unwrap()).unwrap();
        let out = split_to_token_sliding(&g, &clique, &seq).unwrap();
        assert_eq!(out.move_count(), 1);
        validate_sequence(
            &g,
            Condition::IndependentSet,
            &Rule::token_sliding(),
            &out,
        )
        .unwrap();

        // A two-slide move through the clique becomes two sequential
        // slides, independent-set side first.
        let g2 = Hypergraph::simple_graph(
            5,
            &[(0, 1), (0, 2), (0, 4), (1, 3), (1, 4)],
        )
        .unwrap();
        let clique2 = cfg(&[0, 1]);
        let mut two = ReconfSequence::single(cfg(&[0, 3]));
        // Token on clique vertex 0 slides to 2 while token on 3 enters 1.
        two.push_move(Move::new(vec![(0, 2), (3, 1)]).unwrap()).unwrap();
        let out2 = split_to_token_sliding(&g2, &clique2, &two).unwrap();
        assert_eq!(out2.move_count(), 2);
        assert_eq!(out2.moves[0].moving_pairs().next(), Some((0, 2)));
        assert_eq!(out2.moves[1].moving_pairs().next(), Some((3, 1)));
        validate_sequence(
            &g2,
            Condition::IndependentSet,
            &Rule::token_sliding(),
            &out2,
        )
        .unwrap();
        assert_eq!(out2.end(), two.end());
    }
}

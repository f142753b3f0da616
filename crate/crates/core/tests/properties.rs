//! Property suites for the spec invariants: metric laws, move-existence
//! against exhaustive bijection enumeration, rule equivalences, solver
//! structure, and oracle witness health.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use reconfig::graph::{
    bounded_distance_graph, check_condition, closed_neighborhood_hypergraph, contract_through,
    Condition, Configuration, DistanceMatrix, Hypergraph,
};
use reconfig::matching::{alternating_cycle_repair, BipartiteGraph, Matching};
use reconfig::oracle;
use reconfig::rules::{
    find_move, move_exists_with, validate_move, validate_relaxed_sequence, validate_sequence,
    Movers, RelaxedStep, Rule,
};
use reconfig::solvers;

#[test]
fn distances_are_symmetric_and_triangular() {
    let mut r = rng(101);
    for _ in 0..60 {
        let n = r.random_range(2..=8);
        let h = random_connected_hypergraph(&mut r, n, 0.3);
        let dm = DistanceMatrix::new(&h);
        for u in 0..n {
            for v in 0..n {
                assert_eq!(dm.dist(u, v), dm.dist(v, u));
                for w in 0..n {
                    if let (Some(a), Some(b), Some(c)) =
                        (dm.dist(u, w), dm.dist(u, v), dm.dist(v, w))
                    {
                        assert!(a <= b + c);
                    }
                }
            }
        }
    }
}

#[test]
fn closed_neighborhood_hypergraph_laws() {
    let mut r = rng(102);
    for _ in 0..200 {
        let n = r.random_range(2..=10);
        let g = random_connected_graph(&mut r, n, 0.3);
        let h = closed_neighborhood_hypergraph(&g).unwrap();
        // Dominating sets of g are exactly the covers of h.
        let mut verts: Vec<usize> = (0..n).collect();
        let k = r.random_range(1..=n);
        for _ in 0..4 {
            use rand::seq::SliceRandom;
            verts.shuffle(&mut r);
            let s = Configuration::new(verts[..k].to_vec()).unwrap();
            let dom = check_condition(&g, Condition::DominatingSet, &s).unwrap();
            let cov = check_condition(&h, Condition::VertexCover, &s).unwrap();
            assert_eq!(dom, cov);
        }
        // Unit distance in h is distance at most 2 in g.
        let dg = DistanceMatrix::new(&g);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    assert_eq!(h.within_one(u, v), dg.within(u, v, 2));
                }
            }
        }
    }
}

#[test]
fn contract_through_witnesses_expand_inside_keep() {
    let mut r = rng(103);
    for _ in 0..100 {
        let n = r.random_range(3..=9);
        let h = random_connected_hypergraph(&mut r, n, 0.25);
        let size = r.random_range(0..n);
        let mut verts: Vec<usize> = (0..n).collect();
        use rand::seq::SliceRandom;
        verts.shuffle(&mut r);
        let keep: BTreeSet<usize> = verts[..size].iter().copied().collect();
        let c = contract_through(&h, &keep).unwrap();
        for ((a, b), path) in c.added_edges() {
            assert_eq!(path[0], c.to_original[a]);
            assert_eq!(*path.last().unwrap(), c.to_original[b]);
            assert!(path.len() >= 3);
            for &w in &path[1..path.len() - 1] {
                assert!(keep.contains(&w));
            }
            for pair in path.windows(2) {
                assert!(h.within_one(pair[0], pair[1]));
            }
        }
    }
}

#[test]
fn find_move_matches_bijection_enumeration() {
    let mut r = rng(104);
    let rules = [
        Rule::all_slide(),
        Rule::token_sliding(),
        Rule::TokenJumping {
            movers: Movers::AtMost(2),
            dist: 2,
        },
        Rule::TwoTier {
            extra_movers: 1,
            extra_dist: 3,
        },
        Rule::TwoTier {
            extra_movers: 0,
            extra_dist: 2,
        },
    ];
    for _ in 0..60 {
        let n = r.random_range(2..=7);
        let h = random_connected_hypergraph(&mut r, n, 0.3);
        let k = r.random_range(1..=n.min(3));
        let dm = DistanceMatrix::new(&h);
        let sols = oracle::enumerate_solutions(&h, Condition::Unconstrained, k).unwrap();
        for c1 in &sols {
            for c2 in &sols {
                for rule in &rules {
                    let fast = move_exists_with(&dm, c1, c2, rule).unwrap();
                    let brute = move_exists_brute(&h, c1, c2, rule);
                    assert_eq!(fast, brute, "disagreement on {c1} -> {c2} under {rule}");
                    let found = find_move(&h, c1, c2, rule).unwrap();
                    assert_eq!(found.is_some(), brute);
                    if let Some(mv) = found {
                        // Round trip: any returned move validates.
                        let out = validate_move(&h, c1, &mv, rule).unwrap();
                        assert_eq!(&out, c2);
                    }
                    // Symmetry: rules are distance-symmetric.
                    let back = move_exists_with(&dm, c2, c1, rule).unwrap();
                    assert_eq!(fast, back);
                }
            }
        }
    }
}

#[test]
fn two_tier_extremes_agree_with_token_jumping() {
    let mut r = rng(105);
    for _ in 0..40 {
        let n = r.random_range(2..=7);
        let h = random_connected_graph(&mut r, n, 0.3);
        let k = r.random_range(1..=n.min(3));
        let dm = DistanceMatrix::new(&h);
        let sols = oracle::enumerate_solutions(&h, Condition::Unconstrained, k).unwrap();
        let tt_full = Rule::TwoTier {
            extra_movers: k,
            extra_dist: 2,
        };
        let tj_full = Rule::TokenJumping {
            movers: Movers::All,
            dist: 2,
        };
        let tt_zero = Rule::TwoTier {
            extra_movers: 0,
            extra_dist: 2,
        };
        let tj_slide = Rule::all_slide();
        for c1 in &sols {
            for c2 in &sols {
                assert_eq!(
                    move_exists_with(&dm, c1, c2, &tt_full).unwrap(),
                    move_exists_with(&dm, c1, c2, &tj_full).unwrap()
                );
                assert_eq!(
                    move_exists_with(&dm, c1, c2, &tt_zero).unwrap(),
                    move_exists_with(&dm, c1, c2, &tj_slide).unwrap()
                );
            }
        }
    }
}

#[test]
fn unconstrained_solver_matches_oracle_on_p4() {
    let p4 = Hypergraph::path(4);
    let vs = Configuration::new(vec![0, 1]).unwrap();
    let vt = Configuration::new(vec![2, 3]).unwrap();
    let seq = solvers::reconfigure_unconstrained(&p4, &vs, &vt).unwrap();
    validate_sequence(
        &p4,
        Condition::Unconstrained,
        &Rule::token_sliding(),
        &seq,
    )
    .unwrap();
    let r = oracle::reachability(
        &p4,
        Condition::Unconstrained,
        &Rule::token_sliding(),
        &vs,
        &vt,
    )
    .unwrap();
    assert_eq!(r.shortest, Some(4));
    assert!(seq.move_count() >= 4);
    let bound = 4 * p4.n() * p4.diameter().unwrap();
    assert!(seq.move_count() <= bound);
}

#[test]
fn move_to_superset_structure_on_random_covers() {
    let mut r = rng(106);
    for _ in 0..80 {
        let n = r.random_range(2..=9);
        let h = random_connected_hypergraph(&mut r, n, 0.3);
        let (vs, vt) = random_solution_pair(&mut r, &h, Condition::VertexCover, 1);
        let vm = solvers::move_to_common(&h, &vs, &vt).unwrap();
        for source in [&vs, &vt] {
            let (vp, mv) = solvers::move_to_superset(&h, source, &vm).unwrap();
            assert_eq!(vp.len(), source.len());
            assert!(vm.is_subset_of(&vp));
            // Stationary tokens stay off vm and inside the source.
            let stay: Vec<usize> = mv
                .pairs()
                .iter()
                .filter(|&&(a, b)| a == b)
                .map(|&(a, _)| a)
                .collect();
            for v in vp.difference(&vm) {
                assert!(source.contains(v));
                assert!(!vm.contains(v));
            }
            for &s in &stay {
                assert!(source.contains(s));
            }
            validate_move(&h, source, &mv, &Rule::all_slide()).unwrap();
        }
    }
}

#[test]
fn bounded_distance_graph_connects_over_maximal_is() {
    let mut r = rng(107);
    for _ in 0..200 {
        let n = r.random_range(2..=10);
        let g = random_connected_graph(&mut r, n, 0.25);
        let istar = random_maximal_is(&mut r, &g);
        let b = bounded_distance_graph(&g, &istar, 3).unwrap();
        assert!(
            b.graph.is_connected(),
            "distance-3 graph over a maximal IS must be connected"
        );
    }
}

#[test]
fn ds_gadget_solution_uses_exactly_the_budget() {
    let gadget = reconfig::gadgets::gen_ds_gadget(2).unwrap();
    let k = gadget.k;
    let seq =
        solvers::solve_dominating_set(&gadget.graph, &gadget.start, &gadget.target).unwrap();
    validate_sequence(
        &gadget.graph,
        Condition::DominatingSet,
        &Rule::ds_guarantee(k),
        &seq,
    )
    .unwrap();
    let long_counts: Vec<usize> = seq
        .moves
        .iter()
        .map(|m| {
            m.moving_pairs()
                .filter(|&(u, v)| !gadget.graph.within_one(u, v))
                .count()
        })
        .collect();
    assert!(
        long_counts.iter().any(|&c| c == k - 2),
        "some move must spend exactly k-2 distance-2 jumps, got {long_counts:?}"
    );
    assert!(long_counts.iter().all(|&c| c <= k - 2));
}

#[test]
fn ds_middle_moves_respect_the_budget_on_sparse_graphs() {
    // Path-like graphs force a real keep-intersection phase whose cascade
    // moves carry distance-2 jumps; each must stay within the k-2 budget
    // (repaired when necessary).
    let mut r = rng(112);
    let mut middle_long = 0;
    for _ in 0..400 {
        let n = r.random_range(6..=14);
        let mut pairs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        for _ in 0..r.random_range(0..=2) {
            let u = r.random_range(0..n);
            let v = r.random_range(0..n);
            let key = (u.min(v), u.max(v));
            if u != v && !pairs.iter().any(|&(a, b)| (a.min(b), a.max(b)) == key) {
                pairs.push((u, v));
            }
        }
        let g = Hypergraph::simple_graph(n, &pairs).unwrap();
        let (ds0, dt0) = random_solution_pair(&mut r, &g, Condition::DominatingSet, 3);
        // Pad both sides a little more: slack tokens make the kept
        // intersection larger and the middle phase longer.
        let k = (ds0.len() + r.random_range(0..=2)).min(n);
        let pad = |r: &mut rand_chacha::ChaCha8Rng, c: &Configuration| {
            let mut verts = c.vertices().to_vec();
            let mut pool: Vec<usize> = (0..n).filter(|v| !c.contains(*v)).collect();
            use rand::seq::SliceRandom;
            pool.shuffle(r);
            while verts.len() < k {
                verts.push(pool.pop().unwrap());
            }
            Configuration::new(verts).unwrap()
        };
        let ds = pad(&mut r, &ds0);
        let dt = pad(&mut r, &dt0);
        let seq = solvers::solve_dominating_set(&g, &ds, &dt).unwrap();
        validate_sequence(&g, Condition::DominatingSet, &Rule::ds_guarantee(k), &seq).unwrap();
        if seq.moves.len() > 2 {
            for mv in &seq.moves[1..seq.moves.len() - 1] {
                let long = mv
                    .moving_pairs()
                    .filter(|&(u, v)| !g.within_one(u, v))
                    .count();
                assert!(long <= k - 2);
                if long > 0 {
                    middle_long += 1;
                }
            }
        }
    }
    assert!(
        middle_long > 5,
        "the distribution must exercise middle moves with distance-2 jumps (got {middle_long})"
    );
}

#[test]
fn repair_gains_w_edges_per_swap() {
    let mut r = rng(108);
    let mut disjoint_cases = 0;
    let mut shared_cases = 0;
    for _ in 0..400 {
        let k = r.random_range(2..=5);
        // Complete bipartite instance; w covers every vertex by construction.
        let mut edges = Vec::new();
        for l in 0..k {
            for rr in 0..k {
                edges.push((l, rr, 0));
            }
        }
        let b = BipartiteGraph::new(k, k, edges).unwrap();
        let mut w: BTreeSet<(usize, usize)> = BTreeSet::new();
        for v in 0..k {
            w.insert((v, v));
        }
        for _ in 0..k {
            w.insert((r.random_range(0..k), r.random_range(0..k)));
        }
        // Random perfect matching.
        let mut perm: Vec<usize> = (0..k).collect();
        use rand::seq::SliceRandom;
        perm.shuffle(&mut r);
        let pairs: Vec<(usize, usize)> = (0..k).map(|l| (l, perm[l])).collect();
        let in_w = pairs.iter().filter(|p| w.contains(p)).count();
        if in_w > 1 {
            continue; // outside the repair precondition
        }
        let outside = k - in_w;
        if outside == 0 {
            continue;
        }
        // When the matching shares no w-edge, every cycle exchanges at
        // least two matched edges for w-edges; with one shared edge the
        // net gain per swap can drop to one.
        let gain_floor = if in_w == 0 { 2 } else { 1 };
        let budget = outside - gain_floor;
        let m = Matching::new(pairs);
        let repaired = alternating_cycle_repair(&b, &m, &w, budget).unwrap();
        let out_after = repaired
            .pairs()
            .iter()
            .filter(|p| !w.contains(*p))
            .count();
        assert!(out_after <= budget);
        assert!(outside - out_after >= gain_floor);
        assert_eq!(repaired.len(), k);
        if in_w == 0 {
            disjoint_cases += 1;
        } else {
            shared_cases += 1;
        }
    }
    assert!(disjoint_cases > 10, "the generator must hit the disjoint case");
    assert!(shared_cases > 10, "the generator must hit the shared-edge case");
}

#[test]
fn oracle_witnesses_validate_and_reverse() {
    let mut r = rng(109);
    let mut seen_reachable = 0;
    for _ in 0..40 {
        let n = r.random_range(3..=7);
        let g = random_connected_graph(&mut r, n, 0.35);
        let (vs, vt) = random_solution_pair(&mut r, &g, Condition::VertexCover, 1);
        let rule = Rule::all_slide();
        let fwd = oracle::reachability(&g, Condition::VertexCover, &rule, &vs, &vt).unwrap();
        let bwd = oracle::reachability(&g, Condition::VertexCover, &rule, &vt, &vs).unwrap();
        assert_eq!(fwd.reachable, bwd.reachable);
        assert_eq!(fwd.shortest, bwd.shortest);
        if let Some(w) = fwd.witness {
            seen_reachable += 1;
            validate_sequence(&g, Condition::VertexCover, &rule, &w).unwrap();
            assert_eq!(w.start(), &vs);
            assert_eq!(w.end(), &vt);
            assert_eq!(w.move_count(), fwd.shortest.unwrap());
        }
    }
    assert!(seen_reachable > 10);
}

#[test]
fn ds_reduction_round_trips_through_relaxed_normalization() {
    // Reduce, take a dominating-set witness on the reduced graph, translate
    // it back to a relaxed cover sequence, and normalize: the result must
    // be a classic token-jumping sequence between the original covers.
    let mut r = rng(113);
    let mut round_trips = 0;
    let mut attempts = 0;
    while round_trips < 15 {
        attempts += 1;
        assert!(attempts < 400, "generator starved");
        let n = r.random_range(2..=4);
        let g = random_connected_graph(&mut r, n, 0.3);
        if g.edge_count() > 4 {
            continue;
        }
        let (vs, vt) = random_solution_pair(&mut r, &g, Condition::VertexCover, 1);
        if vs.len() > 3 {
            continue;
        }
        let red = reconfig::reductions::reduce_vctj_to_ds(&g, &vs, &vt).unwrap();
        let reach = oracle::reachability(
            &red.graph,
            Condition::DominatingSet,
            &Rule::all_slide(),
            &red.start,
            &red.target,
        )
        .unwrap();
        let Some(witness) = reach.witness else {
            continue;
        };
        let relaxed = reconfig::reductions::ds_seq_to_relaxed_vc_seq(&red, &witness).unwrap();
        validate_relaxed_sequence(&g, &vs, &vt, &relaxed).unwrap();
        let classic = reconfig::reductions::normalize_relaxed(&g, &vs, &vt, &relaxed).unwrap();
        let rule = Rule::TokenJumping {
            movers: Movers::AtMost(1),
            dist: g.n(),
        };
        validate_sequence(&g, Condition::VertexCover, &rule, &classic).unwrap();
        assert_eq!(classic.start(), &vs);
        assert_eq!(classic.end(), &vt);
        round_trips += 1;
    }
}

#[test]
fn classic_jumps_reinterpret_as_relaxed_moves() {
    let mut r = rng(110);
    let mut checked = 0;
    for _ in 0..40 {
        let n = r.random_range(3..=6);
        let g = random_connected_graph(&mut r, n, 0.4);
        let (vs, vt) = random_solution_pair(&mut r, &g, Condition::VertexCover, 1);
        let rule = Rule::TokenJumping {
            movers: Movers::AtMost(1),
            dist: g.n(),
        };
        let reach = oracle::reachability(&g, Condition::VertexCover, &rule, &vs, &vt).unwrap();
        let Some(witness) = reach.witness else {
            continue;
        };
        let moves: Vec<Vec<RelaxedStep>> = witness
            .moves
            .iter()
            .filter_map(|m| {
                m.moving_pairs()
                    .next()
                    .map(|(u, v)| vec![RelaxedStep::Jump(u, v)])
            })
            .collect();
        validate_relaxed_sequence(&g, &vs, &vt, &moves).unwrap();
        checked += 1;
    }
    assert!(checked > 5);
}

#[test]
fn solver_outputs_singleton_move_shapes() {
    // First and last independent-set moves slide everything by at most one;
    // middle moves relocate exactly one token by at most three.
    let mut r = rng(111);
    let mut middles = 0;
    for _ in 0..60 {
        let n = r.random_range(3..=9);
        let g = random_connected_graph(&mut r, n, 0.3);
        let Some((is_, it)) = random_is_pair(&mut r, &g, 2) else {
            continue;
        };
        let seq = solvers::solve_independent_set(&g, &is_, &it).unwrap();
        validate_sequence(&g, Condition::IndependentSet, &Rule::is_guarantee(), &seq).unwrap();
        let dm = DistanceMatrix::new(&g);
        for mv in &seq.moves {
            let moving: Vec<_> = mv.moving_pairs().collect();
            let all_unit = moving.iter().all(|&(u, v)| dm.within(u, v, 1));
            if !all_unit {
                // Within-the-maximal-set move: one token, distance <= 3.
                assert_eq!(moving.len(), 1);
                let (u, v) = moving[0];
                assert!(dm.within(u, v, 3));
                middles += 1;
            }
        }
    }
    assert!(middles > 0, "the suite must exercise middle moves");
}

proptest! {
    #[test]
    fn rule_strings_always_round_trip(movers in 0usize..20, dist in 1usize..20, tt in proptest::bool::ANY) {
        let rule = if tt {
            Rule::TwoTier { extra_movers: movers, extra_dist: dist.max(2) }
        } else {
            Rule::TokenJumping { movers: if movers == 0 { Movers::All } else { Movers::AtMost(movers) }, dist }
        };
        let s = rule.to_string();
        prop_assert_eq!(Rule::parse(&s).unwrap(), rule);
    }

    #[test]
    fn configurations_sort_and_dedup(mut verts in proptest::collection::vec(0usize..32, 0..10)) {
        verts.sort_unstable();
        verts.dedup();
        let c = Configuration::new(verts.clone()).unwrap();
        prop_assert_eq!(c.vertices(), &verts[..]);
    }
}

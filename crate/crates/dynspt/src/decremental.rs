//! Repairing a shortest-path tree after a single edge-weight decrease,
//! including negative-cycle detection with an explicit witness.
//!
//! Lowering (x0, y0) to w' matters only when dist(x0) + w' beats dist(y0).
//! Improvements then spread outward from y0 in best-improvement-first order;
//! each extraction consolidates the vertex's whole current subtree with one
//! shift.  If an improvement ever reaches an ancestor of x0 (in the input
//! tree), going around through (x0, y0) again would keep shortening the walk:
//! that closes a cycle of negative total weight, which is returned as a
//! witness and the tree is rolled back to its input state.

use std::collections::HashMap;

use crate::error::{checked_add, checked_sub, Error, Result};
use crate::graph::{Graph, VertexId, Weight, WeightUpdate};
use crate::incremental::{apply_restoration, final_edge_changes, run_post_pass};
use crate::minchange::MergeState;
use crate::pqueue::{EnqueueResult, PQueue, QueueEntry};
use crate::sssp::{bellman_ford, SsspResult};
use crate::tree::ShortestPathTree;
use crate::update::{
    MergeMode, MoveJournal, MoveRecord, RunTrace, UpdateOptions, UpdateOutcome, UpdateStats,
};

/// Applies a single weight decrease to `graph` and repairs `tree` in place,
/// or reports a negative cycle (leaving the tree in its input state; the new
/// weight stays applied, so the store is inconsistent and the caller must
/// stop).  With `merge` set, an updated tree additionally has the fewest
/// possible tree edge changes.
pub fn decrease_weight(
    graph: &mut Graph,
    tree: &mut ShortestPathTree,
    update: &WeightUpdate,
    merge: bool,
) -> Result<UpdateOutcome> {
    let options = UpdateOptions::merged(if merge { MergeMode::Verify } else { MergeMode::Off });
    decrease_weight_traced(graph, tree, update, &options).map(|(outcome, _)| outcome)
}

/// As [`decrease_weight`], returning the run trace used by verification.
pub fn decrease_weight_traced(
    graph: &mut Graph,
    tree: &mut ShortestPathTree,
    update: &WeightUpdate,
    options: &UpdateOptions,
) -> Result<(UpdateOutcome, RunTrace)> {
    let (x0, y0) = (update.tail, update.head);
    let old_weight = graph
        .weight(x0, y0)
        .ok_or(Error::NoSuchEdge(x0, y0))?;
    if update.new_weight >= old_weight {
        return Err(Error::NotADecrease);
    }
    if options.merge == MergeMode::Verify {
        if let Some(cycle) = crate::sssp::detect_zero_cycle(graph)? {
            return Err(Error::MergeUnavailable(cycle));
        }
    }
    graph.set_weight(update)?;

    let new_dist_y0 = checked_add(tree.dist(x0), update.new_weight)?;
    if new_dist_y0 >= tree.dist(y0) {
        // The lowered edge still offers nothing shorter.
        return Ok((UpdateOutcome::Unchanged, RunTrace::default()));
    }

    // Ancestors of x0 in the input tree, x0 included.  Shortening the way to
    // any of them shortens the way back to x0, hence around through (x0, y0)
    // forever: a negative cycle.
    let n = graph.vertex_count();
    let mut ancestor = vec![false; n];
    for v in tree.ancestors(x0) {
        ancestor[v as usize] = true;
    }
    if ancestor[y0 as usize] {
        let mut cycle = tree_path_between(tree, y0, x0);
        cycle.push(y0);
        debug_assert!(graph.path_length(&cycle)? < 0);
        return Ok((UpdateOutcome::NegativeCycle(cycle), RunTrace::default()));
    }

    let e0_in_old_tree = tree.parent(y0) == Some(x0);
    let mut settled = vec![false; n];
    let mut orig_dist: HashMap<VertexId, Weight> = HashMap::new();
    let mut queue = PQueue::new();
    let mut stats = UpdateStats::default();
    let mut trace = RunTrace::default();
    let mut journal = MoveJournal::default();
    let mut merge_state = (options.merge != MergeMode::Off).then(MergeState::new);

    let delta0 = checked_sub(new_dist_y0, tree.dist(y0))?;
    queue.enqueue(QueueEntry::new(y0, x0, delta0, new_dist_y0, tree.depth(y0)));
    stats.enqueues += 1;

    while let Some(entry) = queue.extract_min() {
        let (y, x, delta) = (entry.vertex, entry.candidate_parent, entry.delta());
        debug_assert!(delta < 0);
        stats.strongly_affected += 1;
        trace.extraction_log.push((y, x, delta));

        if let Some(state) = merge_state.as_mut() {
            let original_parent = tree.parent(y).expect("unsettled vertex keeps its parent");
            let restorations = {
                let settled_dist = |v: VertexId| settled[v as usize].then(|| tree.dist(v));
                let dist_old =
                    |v: VertexId| orig_dist.get(&v).copied().unwrap_or_else(|| tree.dist(v));
                state.on_extract(delta, y, original_parent, &settled_dist, &dist_old)
            };
            for r in restorations {
                apply_restoration(graph, tree, &mut journal, state, &mut stats, r);
            }
        }

        let edge_weight = graph.weight(x, y).expect("candidate parent edge exists");
        journal.moves.push(MoveRecord {
            vertex: y,
            old_parent: tree.parent(y).expect("non-source"),
            old_parent_weight: tree.parent_weight(y),
            old_depth: tree.depth(y),
        });
        tree.reparent(y, x, edge_weight);

        let batch = tree.subtree(y);
        for &w in &batch {
            debug_assert!(!settled[w as usize]);
            settled[w as usize] = true;
            let old = tree.dist(w);
            orig_dist.insert(w, old);
            tree.set_dist(w, checked_add(old, delta)?);
            trace.affected.push(w);
            if w != y && queue.remove(w) {
                stats.removals += 1;
            }
        }
        for &w in &batch {
            for &eid in graph.out_edges(w) {
                let e = graph.edge(eid);
                stats.edges_examined += 1;
                trace.examined_edges.push(eid);
                let cand_dist = checked_add(tree.dist(w), e.weight)?;
                if settled[e.head as usize] {
                    if cand_dist < tree.dist(e.head) {
                        // A settled vertex can only be undercut by going
                        // around a negative cycle; fall back to a full
                        // search for the witness.
                        return negative_exit(graph, tree, journal, &orig_dist);
                    }
                    continue;
                }
                if cand_dist < tree.dist(e.head) {
                    if ancestor[e.head as usize] {
                        let cycle =
                            ancestor_cycle(graph, tree, e.head, x0, y0, w)?;
                        return rolled_back(tree, journal, &orig_dist, cycle);
                    }
                    let d = checked_sub(cand_dist, tree.dist(e.head))?;
                    match queue.enqueue(QueueEntry::new(
                        e.head,
                        w,
                        d,
                        cand_dist,
                        tree.depth(e.head),
                    )) {
                        EnqueueResult::Inserted | EnqueueResult::Replaced => stats.enqueues += 1,
                        EnqueueResult::Ignored => {}
                    }
                }
            }
        }
    }

    if let Some(state) = merge_state.as_mut() {
        let restorations = {
            let settled_dist = |v: VertexId| settled[v as usize].then(|| tree.dist(v));
            let dist_old =
                |v: VertexId| orig_dist.get(&v).copied().unwrap_or_else(|| tree.dist(v));
            state.finish(&settled_dist, &dist_old)
        };
        for r in restorations {
            apply_restoration(graph, tree, &mut journal, state, &mut stats, r);
        }
        if options.run_post_pass {
            run_post_pass(graph, tree, &journal, &mut stats);
        }
    }

    stats.affected = orig_dist.len();
    stats.edge_changes = final_edge_changes(tree, &journal, update, e0_in_old_tree);
    Ok((UpdateOutcome::Updated(stats), trace))
}

/// Tree path from ancestor `from` down to descendant `to`, both included.
fn tree_path_between(tree: &ShortestPathTree, from: VertexId, to: VertexId) -> Vec<VertexId> {
    let mut path = Vec::new();
    let mut v = to;
    loop {
        path.push(v);
        if v == from {
            break;
        }
        v = tree.parent(v).expect("`from` must be an ancestor of `to`");
    }
    path.reverse();
    path
}

/// Witness when an improvement reaches `z`, an input-tree ancestor of x0:
/// input-tree path z..x0, the updated edge (x0, y0), the current-tree path
/// y0..w (w is settled, hence below y0), and the improving edge (w, z).
fn ancestor_cycle(
    graph: &Graph,
    tree: &ShortestPathTree,
    z: VertexId,
    x0: VertexId,
    y0: VertexId,
    w: VertexId,
) -> Result<Vec<VertexId>> {
    // Ancestors of x0 are untouched until a detection fires, so the input
    // tree path survives in the current tree.
    let mut cycle = tree_path_between(tree, z, x0);
    cycle.extend(tree_path_between(tree, y0, w));
    cycle.push(z);
    if graph.path_length(&cycle)? < 0 {
        Ok(cycle)
    } else {
        // Unreachable per the detection argument; kept as a safety net so a
        // returned witness is always genuine.
        match bellman_ford(graph)? {
            SsspResult::NegativeCycle(c) => Ok(c),
            SsspResult::Tree(_) => Err(Error::InconsistentGraph),
        }
    }
}

/// Negative-cycle exit without a direct witness: recompute from scratch.
fn negative_exit(
    graph: &Graph,
    tree: &mut ShortestPathTree,
    journal: MoveJournal,
    orig_dist: &HashMap<VertexId, Weight>,
) -> Result<(UpdateOutcome, RunTrace)> {
    match bellman_ford(graph)? {
        SsspResult::NegativeCycle(c) => rolled_back(tree, journal, orig_dist, c),
        SsspResult::Tree(_) => Err(Error::InconsistentGraph),
    }
}

/// Undoes every journaled move and distance write, then reports the cycle.
fn rolled_back(
    tree: &mut ShortestPathTree,
    journal: MoveJournal,
    orig_dist: &HashMap<VertexId, Weight>,
    cycle: Vec<VertexId>,
) -> Result<(UpdateOutcome, RunTrace)> {
    for m in journal.moves.iter().rev() {
        tree.reparent(m.vertex, m.old_parent, m.old_parent_weight);
    }
    for (&v, &d) in orig_dist {
        tree.set_dist(v, d);
    }
    tree.refresh_depths();
    Ok((UpdateOutcome::NegativeCycle(cycle), RunTrace::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::samples::{self, S, U, V, W, X, Z};

    fn demo() -> (Graph, ShortestPathTree) {
        let g = samples::increase_demo();
        let t = bellman_ford(&g).unwrap().expect_tree();
        (g, t)
    }

    #[test]
    fn rejects_non_decrease() {
        let (mut g, mut t) = demo();
        let upd = WeightUpdate { tail: S, head: U, new_weight: 1 };
        assert_eq!(
            decrease_weight(&mut g, &mut t, &upd, false),
            Err(Error::NotADecrease)
        );
    }

    #[test]
    fn slack_decrease_is_unchanged() {
        let (mut g, mut t) = demo();
        let before = t.clone();
        // (s, z) from 6 to 4 still loses to dist(z) = 4.
        let upd = WeightUpdate { tail: S, head: Z, new_weight: 4 };
        let outcome = decrease_weight(&mut g, &mut t, &upd, false).unwrap();
        assert_eq!(outcome, UpdateOutcome::Unchanged);
        assert_eq!(t, before);
        assert_eq!(g.weight(S, Z), Some(4));
    }

    #[test]
    fn nontree_decrease_reroutes() {
        let (mut g, mut t) = demo();
        // (s, z) from 6 to 1: z and its subtree reattach under s.
        let upd = WeightUpdate { tail: S, head: Z, new_weight: 1 };
        let outcome = decrease_weight(&mut g, &mut t, &upd, false).unwrap();
        let stats = outcome.stats().unwrap();
        t.validate(&g).unwrap();
        let fresh = bellman_ford(&g).unwrap().expect_tree();
        for v in 0..g.vertex_count() as VertexId {
            assert_eq!(t.dist(v), fresh.dist(v), "dist mismatch at {v}");
        }
        assert_eq!(t.parent(Z), Some(S));
        assert_eq!(t.dist(Z), 1);
        assert_eq!(t.dist(V), -1); // through (z, v) = -2
        assert_eq!(t.dist(X), 0);
        assert!(stats.affected >= 3);
        assert!(stats.edge_changes >= 1);
    }

    #[test]
    fn tree_edge_decrease_shifts_subtree() {
        let (mut g, mut t) = demo();
        let upd = WeightUpdate { tail: U, head: W, new_weight: -3 };
        let outcome = decrease_weight(&mut g, &mut t, &upd, false).unwrap();
        t.validate(&g).unwrap();
        let fresh = bellman_ford(&g).unwrap().expect_tree();
        for v in 0..g.vertex_count() as VertexId {
            assert_eq!(t.dist(v), fresh.dist(v), "dist mismatch at {v}");
        }
        // The drop pulls v over to (z, v); the updated tree edge (u, w)
        // itself also counts since it stays a tree edge on both sides.
        assert_eq!(t.parent(V), Some(Z));
        let stats = outcome.stats().unwrap();
        assert_eq!(stats.edge_changes, 2);
    }

    #[test]
    fn figure_cycle_decrease_reports_negative_cycle() {
        let mut g = samples::negative_cycle_demo();
        let mut t = bellman_ford(&g).unwrap().expect_tree();
        let before = t.clone();
        let upd = WeightUpdate { tail: V, head: U, new_weight: -2 };
        let outcome = decrease_weight(&mut g, &mut t, &upd, false).unwrap();
        match outcome {
            UpdateOutcome::NegativeCycle(cycle) => {
                assert_eq!(cycle.first(), cycle.last());
                assert!(g.path_length(&cycle).unwrap() < 0);
            }
            other => panic!("expected NegativeCycle, got {other:?}"),
        }
        // Tree untouched; weight applied.
        assert_eq!(t, before);
        assert_eq!(g.weight(V, U), Some(-2));
    }

    #[test]
    fn deep_negative_cycle_detected_mid_run() {
        // s -> a -> b -> c, with a cheap shortcut c -> a appearing when
        // (b, c) drops: cycle a -> b -> c -> a becomes negative.
        let mut g = build_graph(
            4,
            0,
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 1, 1)],
        )
        .unwrap();
        let mut t = bellman_ford(&g).unwrap().expect_tree();
        let before = t.clone();
        let upd = WeightUpdate { tail: 2, head: 3, new_weight: -3 };
        match decrease_weight(&mut g, &mut t, &upd, false).unwrap() {
            UpdateOutcome::NegativeCycle(cycle) => {
                assert!(g.path_length(&cycle).unwrap() < 0);
            }
            other => panic!("expected NegativeCycle, got {other:?}"),
        }
        assert_eq!(t, before);
    }

    #[test]
    fn decrease_matches_recompute_on_chain() {
        let mut g = build_graph(4, 0, &[(0, 1, 4), (1, 2, 4), (2, 3, 4), (0, 3, 20)]).unwrap();
        let mut t = bellman_ford(&g).unwrap().expect_tree();
        let upd = WeightUpdate { tail: 0, head: 3, new_weight: 5 };
        let outcome = decrease_weight(&mut g, &mut t, &upd, false).unwrap();
        t.validate(&g).unwrap();
        assert_eq!(t.dist(3), 5);
        assert_eq!(t.parent(3), Some(0));
        assert_eq!(outcome.stats().unwrap().affected, 1);
    }

    #[test]
    fn merge_on_decrease_minimises_changes() {
        // Two parallel routes of equal structure; decreasing a shared prefix
        // edge moves a subtree which can then be fully restored.
        let (mut g, mut t) = demo();
        let upd = WeightUpdate { tail: S, head: Z, new_weight: 1 };
        let merged = decrease_weight(&mut g, &mut t, &upd, true).unwrap();
        t.validate(&g).unwrap();
        let (mut g2, mut t2) = demo();
        let plain = decrease_weight(&mut g2, &mut t2, &upd, false).unwrap();
        assert!(
            merged.stats().unwrap().edge_changes <= plain.stats().unwrap().edge_changes
        );
    }
}

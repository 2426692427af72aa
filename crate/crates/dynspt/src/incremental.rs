//! Repairing a shortest-path tree after a single edge-weight increase.
//!
//! Raising the weight of a non-tree edge changes nothing.  Raising a tree
//! edge (x0, y0) by theta can only increase distances of y0's subtree, each
//! by some shift in [0, theta].  Vertices that can do better than the full
//! theta shift are found in best-shift-first order with an addressable
//! priority queue; each extraction consolidates the vertex's whole current
//! subtree at once.  Everything never extracted shifts by exactly theta and
//! keeps its parent.

use std::collections::HashMap;

use crate::error::{checked_add, checked_sub, Error, Result};
use crate::graph::{Graph, VertexId, Weight, WeightUpdate};
use crate::minchange::{self, MergeState};
use crate::pqueue::{EnqueueResult, PQueue, QueueEntry};
use crate::tree::ShortestPathTree;
use crate::update::{
    MergeMode, MoveJournal, MoveRecord, RunTrace, UpdateOptions, UpdateOutcome, UpdateStats,
};

/// Applies a single weight increase to `graph` and repairs `tree` in place.
/// With `merge` set, the result additionally has the fewest possible tree
/// edge changes (refused if the pre-update graph has a 0-cycle).
pub fn increase_weight(
    graph: &mut Graph,
    tree: &mut ShortestPathTree,
    update: &WeightUpdate,
    merge: bool,
) -> Result<UpdateOutcome> {
    let options = UpdateOptions::merged(if merge { MergeMode::Verify } else { MergeMode::Off });
    increase_weight_traced(graph, tree, update, &options).map(|(outcome, _)| outcome)
}

/// As [`increase_weight`], returning the run trace used by verification.
pub fn increase_weight_traced(
    graph: &mut Graph,
    tree: &mut ShortestPathTree,
    update: &WeightUpdate,
    options: &UpdateOptions,
) -> Result<(UpdateOutcome, RunTrace)> {
    let (x0, y0) = (update.tail, update.head);
    let old_weight = graph
        .weight(x0, y0)
        .ok_or(Error::NoSuchEdge(x0, y0))?;
    if update.new_weight <= old_weight {
        return Err(Error::NotAnIncrease);
    }
    if options.merge == MergeMode::Verify {
        if let Some(cycle) = crate::sssp::detect_zero_cycle(graph)? {
            return Err(Error::MergeUnavailable(cycle));
        }
    }
    let theta = checked_sub(update.new_weight, old_weight)?;
    graph.set_weight(update)?;
    if tree.parent(y0) != Some(x0) {
        // Increasing a non-tree edge cannot shorten any path.
        return Ok((UpdateOutcome::Unchanged, RunTrace::default()));
    }

    let n = graph.vertex_count();
    let down = tree.subtree(y0);
    let mut in_region = vec![false; n];
    for &v in &down {
        in_region[v as usize] = true;
    }
    let mut settled = vec![false; n];
    // Pre-update distances of settled vertices (their tree dist is rewritten
    // at consolidation time).
    let mut orig_dist: HashMap<VertexId, Weight> = HashMap::new();

    let mut queue = PQueue::new();
    let mut stats = UpdateStats { affected: down.len(), ..Default::default() };
    let mut trace = RunTrace { affected: down.clone(), ..Default::default() };
    let mut journal = MoveJournal::default();
    let mut merge_state =
        (options.merge != MergeMode::Off).then(MergeState::new);

    // Initialization: alternative routes into the affected region from the
    // untouched rest of the graph.  The updated edge itself yields exactly
    // theta (its weight is already new) and is skipped by the strict filter.
    for &y in &down {
        for &eid in graph.in_edges(y) {
            let e = graph.edge(eid);
            if in_region[e.tail as usize] {
                continue;
            }
            stats.edges_examined += 1;
            trace.examined_edges.push(eid);
            let delta = checked_sub(checked_add(tree.dist(e.tail), e.weight)?, tree.dist(y))?;
            debug_assert!(delta >= 0, "input tree was not optimal");
            if delta < theta {
                let cand = checked_add(tree.dist(y), delta)?;
                match queue.enqueue(QueueEntry::new(y, e.tail, delta, cand, tree.depth(y))) {
                    EnqueueResult::Inserted | EnqueueResult::Replaced => stats.enqueues += 1,
                    EnqueueResult::Ignored => {}
                }
            }
        }
    }

    while let Some(entry) = queue.extract_min() {
        let (y, x, delta) = (entry.vertex, entry.candidate_parent, entry.delta());
        debug_assert!((0..theta).contains(&delta));
        stats.strongly_affected += 1;
        trace.extraction_log.push((y, x, delta));

        if let Some(state) = merge_state.as_mut() {
            let original_parent = tree.parent(y).expect("unsettled vertex keeps its parent");
            let restorations = {
                let settled_dist =
                    |v: VertexId| settled[v as usize].then(|| tree.dist(v));
                let dist_old = |v: VertexId| {
                    orig_dist.get(&v).copied().unwrap_or_else(|| tree.dist(v))
                };
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

        // Consolidate the whole current subtree with the same shift.
        let batch = tree.subtree(y);
        for &w in &batch {
            debug_assert!(in_region[w as usize] && !settled[w as usize]);
            settled[w as usize] = true;
            let old = tree.dist(w);
            orig_dist.insert(w, old);
            tree.set_dist(w, checked_add(old, delta)?);
            if w != y && queue.remove(w) {
                stats.removals += 1;
            }
        }
        // Scan routes leaving the freshly settled batch into the region.
        for &w in &batch {
            for &eid in graph.out_edges(w) {
                let e = graph.edge(eid);
                if !in_region[e.head as usize] {
                    continue;
                }
                stats.edges_examined += 1;
                trace.examined_edges.push(eid);
                if settled[e.head as usize] {
                    continue;
                }
                let cand_dist = checked_add(tree.dist(w), e.weight)?;
                let d = checked_sub(cand_dist, tree.dist(e.head))?;
                if d < theta {
                    match queue.enqueue(QueueEntry::new(
                        e.head,
                        w,
                        d,
                        checked_add(tree.dist(e.head), d)?,
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
    }

    // Everyone never consolidated shifts by the full increase, parent kept.
    for &v in &down {
        if !settled[v as usize] {
            tree.set_dist(v, checked_add(tree.dist(v), theta)?);
        }
    }
    if tree.parent(y0) == Some(x0) {
        // Refresh the stored weight of the updated tree edge.
        tree.reparent(y0, x0, update.new_weight);
    }

    if merge_state.is_some() && options.run_post_pass {
        run_post_pass(graph, tree, &journal, &mut stats);
    }

    stats.edge_changes = final_edge_changes(tree, &journal, update, true);
    Ok((UpdateOutcome::Updated(stats), trace))
}

/// Applies a hook-emitted restoration, guarded so the tree stays a
/// shortest-path tree, and journals it for accounting.
pub(crate) fn apply_restoration(
    graph: &Graph,
    tree: &mut ShortestPathTree,
    journal: &mut MoveJournal,
    state: &mut MergeState,
    stats: &mut UpdateStats,
    r: minchange::Restoration,
) {
    let record = MoveRecord {
        vertex: r.vertex,
        old_parent: match tree.parent(r.vertex) {
            Some(p) => p,
            None => return,
        },
        old_parent_weight: tree.parent_weight(r.vertex),
        old_depth: tree.depth(r.vertex),
    };
    if minchange::try_restore(graph, tree, r.vertex, r.parent) {
        journal.moves.push(record);
        state.merges_done += 1;
        stats.merges += 1;
    }
}

/// Completion pass over every vertex still away from its original parent,
/// in original-depth order.
pub(crate) fn run_post_pass(
    graph: &Graph,
    tree: &mut ShortestPathTree,
    journal: &MoveJournal,
    stats: &mut UpdateStats,
) {
    let mut moved: Vec<MoveRecord> = journal
        .original_positions()
        .into_iter()
        .filter(|m| tree.parent(m.vertex) != Some(m.old_parent))
        .collect();
    moved.sort_unstable_by_key(|m| (m.old_depth, m.vertex));
    for m in moved {
        if minchange::try_restore(graph, tree, m.vertex, m.old_parent) {
            stats.merges += 1;
        }
    }
}

/// Edge changes of the final tree against the input tree: moved vertices that
/// did not return to their original parent, plus the updated edge itself when
/// it is a tree edge on both sides.
pub(crate) fn final_edge_changes(
    tree: &ShortestPathTree,
    journal: &MoveJournal,
    update: &WeightUpdate,
    e0_in_old_tree: bool,
) -> usize {
    let mut changes = journal
        .original_positions()
        .iter()
        .filter(|m| tree.parent(m.vertex) != Some(m.old_parent))
        .count();
    if e0_in_old_tree && tree.parent(update.head) == Some(update.tail) {
        changes += 1;
    }
    changes
}

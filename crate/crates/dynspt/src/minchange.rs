//! Minimal-edge-change machinery: branch decomposition of an updated tree
//! against its predecessor, the in-loop merge hook driven by the update
//! algorithms, and the standalone completion pass that restores every
//! original parent edge that is still tight.
//!
//! The minimality guarantee requires the pre-update graph to be free of
//! cycles of total weight zero; with a 0-cycle present the merge is refused.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, Weight, WeightUpdate};
use crate::sssp::detect_zero_cycle;
use crate::tree::ShortestPathTree;

/// A maximal set of vertices that kept their relative tree structure across
/// an update: a connected component of the new tree after deleting the
/// updated edge and every tree edge absent from the old tree.  All members
/// share one distance shift `delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub members: Vec<VertexId>,
    /// The component's root in the new tree.
    pub miniroot: VertexId,
    /// Common dist_new - dist_old of the members.
    pub delta: Weight,
}

/// A parent restoration emitted by the merge hook: set parent(vertex) back to
/// its original parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Restoration {
    pub vertex: VertexId,
    pub parent: VertexId,
}

/// In-loop merge bookkeeping: `sigma` collects the vertices extracted with
/// the current priority value `lambda` together with their original parents;
/// when a strictly larger priority arrives (or the queue empties) the batch
/// is flushed and restorations are emitted for every member whose original
/// parent settled with the same distance shift.
#[derive(Debug, Default)]
pub struct MergeState {
    lambda: Option<Weight>,
    sigma: Vec<(VertexId, VertexId)>,
    pub merges_done: usize,
}

impl MergeState {
    pub fn new() -> Self {
        MergeState::default()
    }

    /// Called once per queue extraction, before the extracted vertex is
    /// reparented.  `settled_dist` returns the final distance of vertices
    /// settled so far (None otherwise); `dist_old` returns pre-update
    /// distances.
    pub fn on_extract(
        &mut self,
        delta: Weight,
        vertex: VertexId,
        original_parent: VertexId,
        settled_dist: &dyn Fn(VertexId) -> Option<Weight>,
        dist_old: &dyn Fn(VertexId) -> Weight,
    ) -> Vec<Restoration> {
        let mut out = Vec::new();
        match self.lambda {
            Some(l) if delta > l => {
                out = self.flush(settled_dist, dist_old);
                self.lambda = Some(delta);
            }
            None => self.lambda = Some(delta),
            _ => {}
        }
        self.sigma.push((vertex, original_parent));
        out
    }

    /// Terminal flush once the queue is exhausted.
    pub fn finish(
        &mut self,
        settled_dist: &dyn Fn(VertexId) -> Option<Weight>,
        dist_old: &dyn Fn(VertexId) -> Weight,
    ) -> Vec<Restoration> {
        self.flush(settled_dist, dist_old)
    }

    /// Emits a restoration for every batch member whose original parent has a
    /// settled distance shifted by exactly the batch's lambda.  An unsettled
    /// original parent yields no restoration here; the completion pass is the
    /// guarantee.
    fn flush(
        &mut self,
        settled_dist: &dyn Fn(VertexId) -> Option<Weight>,
        dist_old: &dyn Fn(VertexId) -> Weight,
    ) -> Vec<Restoration> {
        let Some(lambda) = self.lambda else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for &(vertex, parent) in &self.sigma {
            if settled_dist(parent) == dist_old(parent).checked_add(lambda) {
                out.push(Restoration { vertex, parent });
            }
        }
        self.sigma.clear();
        out
    }
}

/// Applies one restoration if it keeps the tree a shortest-path tree: the
/// original edge must exist, be tight under the current distances and weight,
/// and must not create a parent cycle.  Returns whether the tree changed.
///
/// The tightness check is evaluated at the *current* weight, so a restoration
/// through the updated edge itself is accepted exactly when the new weight
/// keeps the edge on a shortest path.
pub(crate) fn try_restore(
    graph: &Graph,
    tree: &mut ShortestPathTree,
    vertex: VertexId,
    orig_parent: VertexId,
) -> bool {
    if tree.parent(vertex) == Some(orig_parent) {
        return false;
    }
    let Some(w) = graph.weight(orig_parent, vertex) else {
        return false;
    };
    let Some(through) = tree.dist(orig_parent).checked_add(w) else {
        return false;
    };
    if through != tree.dist(vertex) {
        return false;
    }
    if tree.is_ancestor_of(vertex, orig_parent) {
        return false;
    }
    tree.reparent(vertex, orig_parent, w);
    true
}

/// Decomposes `new_tree` into branches relative to `old_tree`: components of
/// the new tree after cutting the updated edge `e0` and every tree edge that
/// is not also an old-tree edge.  Branches appear in preorder of their
/// miniroots.
pub fn compute_branches(
    old_tree: &ShortestPathTree,
    new_tree: &ShortestPathTree,
    e0: &WeightUpdate,
) -> Vec<Branch> {
    let n = new_tree.vertex_count();
    let mut branch_of = vec![usize::MAX; n];
    let mut branches: Vec<Branch> = Vec::new();
    for v in new_tree.subtree(new_tree.source()) {
        let cut = match new_tree.parent(v) {
            None => true,
            Some(p) => {
                old_tree.parent(v) != Some(p) || (v == e0.head && p == e0.tail)
            }
        };
        if cut {
            branch_of[v as usize] = branches.len();
            branches.push(Branch {
                members: vec![v],
                miniroot: v,
                delta: new_tree.dist(v) - old_tree.dist(v),
            });
        } else {
            let b = branch_of[new_tree.parent(v).unwrap() as usize];
            branch_of[v as usize] = b;
            branches[b].members.push(v);
        }
    }
    branches
}

/// Completion pass: restores the original parent edge of every moved vertex
/// whose edge is tight again under the new distances, producing a tree with
/// the fewest edge changes relative to `old_tree`.
///
/// When `pre_update_graph` is given it is checked for 0-cycles first, since
/// the minimality guarantee does not survive them; pass `None` if the graph
/// was already certified.  Returns the merged tree and the number of
/// restorations performed.
pub fn merge_linked_branches(
    old_tree: &ShortestPathTree,
    new_tree: &ShortestPathTree,
    graph_new: &Graph,
    pre_update_graph: Option<&Graph>,
) -> Result<(ShortestPathTree, usize)> {
    if let Some(pre) = pre_update_graph {
        if let Some(cycle) = detect_zero_cycle(pre)? {
            return Err(Error::ZeroCyclePresent(cycle));
        }
    }
    let mut merged = new_tree.clone();
    let mut moved: Vec<VertexId> = (0..new_tree.vertex_count() as VertexId)
        .filter(|&v| old_tree.parent(v) != new_tree.parent(v))
        .collect();
    moved.sort_unstable_by_key(|&v| (old_tree.depth(v), v));
    let mut merges = 0;
    for v in moved {
        let p = old_tree.parent(v).expect("moved vertex is not the source");
        if try_restore(graph_new, &mut merged, v, p) {
            merges += 1;
        }
    }
    Ok((merged, merges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::samples::{self, S, U, V, W, X, Y, Z};
    use crate::sssp::bellman_ford;
    use crate::tree::count_edge_changes;

    /// The seven-vertex demo after raising (s, u) to 9, together with the
    /// pre-update tree and the post-update tree before any merging.
    fn increase_demo_mid() -> (Graph, ShortestPathTree, ShortestPathTree) {
        let mut graph = samples::increase_demo();
        let old = bellman_ford(&graph).unwrap().expect_tree();
        graph
            .set_weight(&WeightUpdate { tail: S, head: U, new_weight: 9 })
            .unwrap();
        let parent = vec![None, Some(S), Some(Z), Some(U), Some(S), Some(W), Some(S)];
        let parent_weight = vec![0, 9, -2, 1, 5, 1, 6];
        let dist = vec![0, 9, 4, 10, 5, 11, 6];
        let mid = ShortestPathTree::from_parents(S, parent, parent_weight, dist);
        mid.validate(&graph).unwrap();
        (graph, old, mid)
    }

    #[test]
    fn identical_trees_single_branch() {
        let g = samples::increase_demo();
        let t = bellman_ford(&g).unwrap().expect_tree();
        // A non-tree edge as e0.
        let e0 = WeightUpdate { tail: S, head: X, new_weight: 7 };
        let branches = compute_branches(&t, &t, &e0);
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].miniroot, S);
        assert_eq!(branches[0].delta, 0);
        assert_eq!(branches[0].members.len(), 7);
    }

    #[test]
    fn demo_mid_tree_branches() {
        let (_, old, mid) = increase_demo_mid();
        let e0 = WeightUpdate { tail: S, head: U, new_weight: 9 };
        let mut branches = compute_branches(&old, &mid, &e0);
        branches.sort_by_key(|b| b.miniroot);
        let summary: Vec<(VertexId, Weight, Vec<VertexId>)> = branches
            .iter()
            .map(|b| {
                let mut m = b.members.clone();
                m.sort_unstable();
                (b.miniroot, b.delta, m)
            })
            .collect();
        assert_eq!(
            summary,
            vec![
                (S, 0, vec![S]),
                (U, 8, vec![U, W, Y]),
                (V, 2, vec![V]),
                (X, 2, vec![X]),
                (Z, 2, vec![Z]),
            ]
        );
    }

    #[test]
    fn demo_merge_restores_x_under_v() {
        let (graph, old, mid) = increase_demo_mid();
        let e0 = WeightUpdate { tail: S, head: U, new_weight: 9 };
        assert_eq!(count_edge_changes(&old, &mid, &e0), 4);
        let (merged, merges) = merge_linked_branches(&old, &mid, &graph, None).unwrap();
        assert_eq!(merges, 1);
        assert_eq!(merged.parent(X), Some(V));
        merged.validate(&graph).unwrap();
        assert_eq!(count_edge_changes(&old, &merged, &e0), 3);
    }

    #[test]
    fn merge_refused_with_zero_cycle() {
        let g = samples::zero_cycle_demo();
        let t = bellman_ford(&g).unwrap().expect_tree();
        match merge_linked_branches(&t, &t, &g, Some(&g)) {
            Err(Error::ZeroCyclePresent(c)) => assert_eq!(g.path_length(&c).unwrap(), 0),
            other => panic!("expected ZeroCyclePresent, got {other:?}"),
        }
    }

    #[test]
    fn already_minimal_tree_unchanged() {
        let g = build_graph(3, 0, &[(0, 1, 1), (1, 2, 1), (0, 2, 5)]).unwrap();
        let t = bellman_ford(&g).unwrap().expect_tree();
        let (merged, merges) = merge_linked_branches(&t, &t, &g, Some(&g)).unwrap();
        assert_eq!(merges, 0);
        assert_eq!(merged, t);
    }

    #[test]
    fn hook_flushes_on_larger_delta_and_at_finish() {
        // Two settled vertices shifted by 2, their original parents settled
        // with the same shift; a third vertex in a later batch.
        let settled: Vec<(VertexId, Weight)> = vec![(10, 7), (11, 9), (12, 20)];
        let settled_dist = |v: VertexId| {
            settled.iter().find(|&&(u, _)| u == v).map(|&(_, d)| d)
        };
        let dist_old = |v: VertexId| match v {
            10 => 5,
            11 => 7,
            12 => 15,
            _ => 0,
        };
        let mut state = MergeState::new();
        assert_eq!(state.on_extract(2, 10, 99, &settled_dist, &dist_old), vec![]);
        assert_eq!(state.on_extract(2, 11, 10, &settled_dist, &dist_old), vec![]);
        // Larger delta arrives: the lambda=2 batch flushes.  Vertex 10's
        // original parent 99 never settled, vertex 11's parent 10 settled
        // with shift 7-5=2 = lambda.
        assert_eq!(
            state.on_extract(5, 12, 11, &settled_dist, &dist_old),
            vec![Restoration { vertex: 11, parent: 10 }]
        );
        // Terminal flush: vertex 12's parent 11 settled with shift 2 != 5.
        assert_eq!(state.finish(&settled_dist, &dist_old), vec![]);
    }
}

//! Shortest-path tree representation: parent / distance / children arrays
//! rooted at the graph source, with eagerly maintained children lists and
//! depths so subtree traversal costs O(output).

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, Weight, WeightUpdate};

#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    source: VertexId,
    parent: Vec<Option<VertexId>>,
    parent_weight: Vec<Weight>,
    dist: Vec<Weight>,
    children: Vec<Vec<VertexId>>,
    depth: Vec<u32>,
}

/// Children lists and depths are derived from the parent pointers (children
/// in arbitrary order), so equality compares the canonical fields only.
impl PartialEq for ShortestPathTree {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.parent == other.parent
            && self.parent_weight == other.parent_weight
            && self.dist == other.dist
    }
}

impl Eq for ShortestPathTree {}

impl ShortestPathTree {
    /// Assembles a tree from parent pointers and distances.  Children and
    /// depths are derived; the caller is responsible for tree-shapedness.
    pub(crate) fn from_parents(
        source: VertexId,
        parent: Vec<Option<VertexId>>,
        parent_weight: Vec<Weight>,
        dist: Vec<Weight>,
    ) -> Self {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p as usize].push(v as VertexId);
            }
        }
        let mut tree = ShortestPathTree {
            source,
            parent,
            parent_weight,
            dist,
            children,
            depth: vec![0; n],
        };
        tree.recompute_depths(source);
        tree
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v as usize]
    }

    pub fn parent_weight(&self, v: VertexId) -> Weight {
        self.parent_weight[v as usize]
    }

    pub fn dist(&self, v: VertexId) -> Weight {
        self.dist[v as usize]
    }

    pub fn depth(&self, v: VertexId) -> u32 {
        self.depth[v as usize]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v as usize]
    }

    pub(crate) fn set_dist(&mut self, v: VertexId, d: Weight) {
        self.dist[v as usize] = d;
    }

    /// All descendants of `v` in the tree, `v` included, in preorder.
    pub fn subtree(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend_from_slice(&self.children[u as usize]);
        }
        out
    }

    /// Parent chain from `v` up to the source, both ends included.
    pub fn ancestors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = vec![v];
        let mut u = v;
        while let Some(p) = self.parent[u as usize] {
            out.push(p);
            u = p;
        }
        out
    }

    /// Tree path from the source down to `v`.
    pub fn path_from_source(&self, v: VertexId) -> Vec<VertexId> {
        let mut path = self.ancestors(v);
        path.reverse();
        path
    }

    pub fn is_ancestor_of(&self, anc: VertexId, v: VertexId) -> bool {
        let mut u = v;
        loop {
            if u == anc {
                return true;
            }
            match self.parent[u as usize] {
                Some(p) => u = p,
                None => return false,
            }
        }
    }

    /// Moves `v` (with its whole subtree) under `new_parent`.  Distances are
    /// left untouched; depths of the moved subtree are refreshed.
    pub(crate) fn reparent(&mut self, v: VertexId, new_parent: VertexId, edge_weight: Weight) {
        debug_assert_ne!(v, self.source);
        let old = self.parent[v as usize];
        if old == Some(new_parent) {
            self.parent_weight[v as usize] = edge_weight;
            self.recompute_depths(v);
            return;
        }
        if let Some(p) = old {
            let siblings = &mut self.children[p as usize];
            let pos = siblings.iter().position(|&c| c == v).expect("child link");
            siblings.remove(pos);
        }
        self.parent[v as usize] = Some(new_parent);
        self.parent_weight[v as usize] = edge_weight;
        self.children[new_parent as usize].push(v);
        self.recompute_depths(v);
    }

    /// Recomputes every depth from the source; used after batch rollbacks.
    pub(crate) fn refresh_depths(&mut self) {
        self.recompute_depths(self.source);
    }

    fn recompute_depths(&mut self, root: VertexId) {
        let base = match self.parent[root as usize] {
            Some(p) => self.depth[p as usize] + 1,
            None => 0,
        };
        self.depth[root as usize] = base;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let d = self.depth[u as usize];
            for i in 0..self.children[u as usize].len() {
                let c = self.children[u as usize][i];
                self.depth[c as usize] = d + 1;
                stack.push(c);
            }
        }
    }

    /// Checks every structural invariant against `graph`: spanning, acyclic,
    /// tree edges present with matching weights, distance consistency,
    /// children/depth bookkeeping.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let n = graph.vertex_count();
        assert_eq!(self.parent.len(), n, "tree/graph size mismatch");
        assert_eq!(self.source, graph.source());
        assert!(self.parent[self.source as usize].is_none());
        assert_eq!(self.dist[self.source as usize], 0);
        for v in 0..n as VertexId {
            if v == self.source {
                continue;
            }
            let p = self.parent[v as usize].expect("non-source vertex must have a parent");
            let w = graph
                .weight(p, v)
                .ok_or(Error::NoSuchEdge(p, v))?;
            assert_eq!(w, self.parent_weight[v as usize], "stale parent weight at {v}");
            assert_eq!(
                self.dist[v as usize],
                self.dist[p as usize] + w,
                "distance inconsistency at {v}"
            );
            assert_eq!(self.depth[v as usize], self.depth[p as usize] + 1);
            assert!(self.children[p as usize].contains(&v));
            // Parent chains must reach the source within n steps.
            let chain = self.ancestors(v);
            assert!(chain.len() <= n, "parent cycle through {v}");
            assert_eq!(*chain.last().unwrap(), self.source);
        }
        for v in 0..n {
            for &c in &self.children[v] {
                assert_eq!(self.parent[c as usize], Some(v as VertexId));
            }
        }
        Ok(())
    }
}

/// Number of vertices whose parent differs between the trees, plus one if the
/// updated edge is a tree edge in both (its weight changed, so it counts as a
/// changed edge).
pub fn count_edge_changes(
    old: &ShortestPathTree,
    new: &ShortestPathTree,
    updated_edge: &WeightUpdate,
) -> usize {
    let mut changes = 0;
    for v in 0..old.vertex_count() as VertexId {
        if old.parent(v) != new.parent(v) {
            changes += 1;
        }
    }
    let in_old = old.parent(updated_edge.head) == Some(updated_edge.tail);
    let in_new = new.parent(updated_edge.head) == Some(updated_edge.tail);
    if in_old && in_new {
        changes += 1;
    }
    changes
}

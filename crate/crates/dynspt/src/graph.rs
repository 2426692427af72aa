//! Weighted directed graph with dual adjacency and a fixed source.
//!
//! Edges are keyed by their (tail, head) pair: parallel edges and self-loops
//! are rejected at build time, and every vertex must be reachable from the
//! source.  Weights are 64-bit signed integers; all distance arithmetic in
//! this crate is overflow-checked.

use std::collections::HashMap;

use crate::error::{checked_add, Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;
pub type Weight = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: Weight,
}

/// A single edge-weight change: set the weight of (tail, head) to `new_weight`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightUpdate {
    pub tail: VertexId,
    pub head: VertexId,
    pub new_weight: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    source: VertexId,
    edges: Vec<Edge>,
    out_adjacency: Vec<Vec<EdgeId>>,
    in_adjacency: Vec<Vec<EdgeId>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id as usize]
    }

    pub fn edge_id(&self, tail: VertexId, head: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(tail, head)).copied()
    }

    pub fn weight(&self, tail: VertexId, head: VertexId) -> Option<Weight> {
        self.edge_id(tail, head).map(|id| self.edges[id as usize].weight)
    }

    /// Outgoing edge ids of `v`.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_adjacency[v as usize]
    }

    /// Incoming edge ids of `v`.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_adjacency[v as usize]
    }

    /// Replaces the weight of an existing edge; returns the previous weight.
    pub fn set_weight(&mut self, update: &WeightUpdate) -> Result<Weight> {
        let id = self
            .edge_id(update.tail, update.head)
            .ok_or(Error::NoSuchEdge(update.tail, update.head))?;
        let old = self.edges[id as usize].weight;
        self.edges[id as usize].weight = update.new_weight;
        Ok(old)
    }

    /// Sum of edge weights along a vertex sequence.  A sequence with fewer
    /// than two vertices has length 0.
    pub fn path_length(&self, path: &[VertexId]) -> Result<Weight> {
        let mut total: Weight = 0;
        for pair in path.windows(2) {
            let w = self
                .weight(pair[0], pair[1])
                .ok_or(Error::BrokenPath(pair[0], pair[1]))?;
            total = checked_add(total, w)?;
        }
        Ok(total)
    }
}

/// Builds a graph, verifying id ranges, pair uniqueness, no self-loops, and
/// reachability of every vertex from `source`.
pub fn build_graph(
    vertex_count: usize,
    source: VertexId,
    arcs: &[(VertexId, VertexId, Weight)],
) -> Result<Graph> {
    if (source as usize) >= vertex_count {
        return Err(Error::IdOutOfRange(source));
    }
    let mut edges = Vec::with_capacity(arcs.len());
    let mut out_adjacency = vec![Vec::new(); vertex_count];
    let mut in_adjacency = vec![Vec::new(); vertex_count];
    let mut edge_index = HashMap::with_capacity(arcs.len());
    for &(tail, head, weight) in arcs {
        if (tail as usize) >= vertex_count {
            return Err(Error::IdOutOfRange(tail));
        }
        if (head as usize) >= vertex_count {
            return Err(Error::IdOutOfRange(head));
        }
        if tail == head {
            return Err(Error::SelfLoop(tail));
        }
        let id = edges.len() as EdgeId;
        if edge_index.insert((tail, head), id).is_some() {
            return Err(Error::DuplicateEdge(tail, head));
        }
        edges.push(Edge { tail, head, weight });
        out_adjacency[tail as usize].push(id);
        in_adjacency[head as usize].push(id);
    }

    let graph = Graph {
        vertex_count,
        source,
        edges,
        out_adjacency,
        in_adjacency,
        edge_index,
    };

    // Reachability from the source by plain BFS.
    let mut seen = vec![false; vertex_count];
    let mut stack = vec![source];
    seen[source as usize] = true;
    while let Some(v) = stack.pop() {
        for &eid in graph.out_edges(v) {
            let head = graph.edge(eid).head;
            if !seen[head as usize] {
                seen[head as usize] = true;
                stack.push(head);
            }
        }
    }
    let unreachable: Vec<VertexId> = (0..vertex_count as VertexId)
        .filter(|&v| !seen[v as usize])
        .collect();
    if !unreachable.is_empty() {
        return Err(Error::UnreachableVertex(unreachable));
    }
    Ok(graph)
}

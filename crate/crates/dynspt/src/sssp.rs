//! Static single-source shortest paths: queue-based Bellman-Ford with
//! negative-cycle witness extraction, plus 0-cycle detection over the
//! reduced-cost subgraph.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, Weight};
use crate::tree::ShortestPathTree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SsspResult {
    Tree(ShortestPathTree),
    /// Explicit witness: a cycle of strictly negative total weight.
    NegativeCycle(Vec<VertexId>),
}

impl SsspResult {
    pub fn expect_tree(self) -> ShortestPathTree {
        match self {
            SsspResult::Tree(t) => t,
            SsspResult::NegativeCycle(c) => panic!("unexpected negative cycle {c:?}"),
        }
    }

    pub fn is_negative_cycle(&self) -> bool {
        matches!(self, SsspResult::NegativeCycle(_))
    }
}

/// Queue-based (FIFO, pass-synchronous) Bellman-Ford from the graph source.
///
/// If the pass counter reaches n with work remaining, a negative cycle is
/// certain; relaxation then continues with a walk-to-root check on every
/// improvement, which extracts a concrete witness cycle from the predecessor
/// chain the moment the chain closes.
pub fn bellman_ford(graph: &Graph) -> Result<SsspResult> {
    let n = graph.vertex_count();
    let source = graph.source();
    let mut dist: Vec<Option<Weight>> = vec![None; n];
    let mut pred: Vec<Option<VertexId>> = vec![None; n];
    dist[source as usize] = Some(0);

    let mut frontier = vec![source];
    let mut in_frontier = vec![false; n];
    in_frontier[source as usize] = true;
    let mut pass = 0usize;
    // Once a pass-count trap trips, every further improvement checks whether
    // it closes a cycle in the predecessor graph.
    let mut careful = false;

    while !frontier.is_empty() {
        pass += 1;
        if pass > n {
            careful = true;
        }
        let mut next = Vec::new();
        let mut in_next = vec![false; n];
        for &u in &frontier {
            in_frontier[u as usize] = false;
            let du = dist[u as usize].expect("frontier vertex has a distance");
            for &eid in graph.out_edges(u) {
                let e = graph.edge(eid);
                let cand = du.checked_add(e.weight).ok_or(Error::Overflow)?;
                let better = match dist[e.head as usize] {
                    None => true,
                    Some(dv) => cand < dv,
                };
                if !better {
                    continue;
                }
                if careful {
                    if let Some(cycle) = closes_pred_cycle(&pred, u, e.head) {
                        return Ok(SsspResult::NegativeCycle(cycle));
                    }
                }
                dist[e.head as usize] = Some(cand);
                pred[e.head as usize] = Some(u);
                if !in_next[e.head as usize] && !in_frontier[e.head as usize] {
                    in_next[e.head as usize] = true;
                    next.push(e.head);
                }
            }
        }
        frontier = next;
        for &v in &frontier {
            in_frontier[v as usize] = true;
        }
    }

    let mut parent = vec![None; n];
    let mut parent_weight = vec![0; n];
    let mut dists = vec![0; n];
    for v in 0..n {
        dists[v] = dist[v].expect("every vertex is reachable from the source");
        if let Some(p) = pred[v] {
            parent[v] = Some(p);
            parent_weight[v] = graph
                .weight(p, v as VertexId)
                .expect("predecessor edge exists");
        }
    }
    Ok(SsspResult::Tree(ShortestPathTree::from_parents(
        source,
        parent,
        parent_weight,
        dists,
    )))
}

/// If `head` lies on the predecessor chain of `tail`, relaxing (tail, head)
/// would close a predecessor cycle; that cycle, plus the relaxed edge, has
/// strictly negative total weight.  Returns the forward cycle head..head.
/// A cycle already present on the chain (formed before checking started) is
/// negative by the relaxation invariant and is returned as the witness
/// instead.
fn closes_pred_cycle(
    pred: &[Option<VertexId>],
    tail: VertexId,
    head: VertexId,
) -> Option<Vec<VertexId>> {
    let mut chain = vec![tail];
    let mut position = std::collections::HashMap::from([(tail, 0usize)]);
    let mut u = tail;
    loop {
        if u == head {
            chain.reverse();
            chain.push(head);
            return Some(chain);
        }
        let p = pred[u as usize]?;
        if let Some(&i) = position.get(&p) {
            // chain[i..] followed in predecessor direction is a cycle; flip
            // it to edge direction.
            let mut cycle: Vec<VertexId> = chain[i..].to_vec();
            cycle.reverse();
            cycle.insert(0, p);
            return Some(cycle);
        }
        u = p;
        position.insert(u, chain.len());
        chain.push(u);
    }
}

/// Looks for a cycle of total weight exactly zero.
///
/// With `f` = exact distances, reduced costs f(u) + w(u,v) - f(v) are
/// non-negative and a 0-cycle exists iff the subgraph of zero-reduced-cost
/// edges contains a cycle; any strongly connected component of that subgraph
/// with more than one vertex yields one.
pub fn detect_zero_cycle(graph: &Graph) -> Result<Option<Vec<VertexId>>> {
    let dist = match bellman_ford(graph)? {
        SsspResult::Tree(t) => t,
        SsspResult::NegativeCycle(_) => return Err(Error::PreconditionViolated),
    };
    let n = graph.vertex_count();
    // Zero-reduced-cost adjacency.
    let mut tight: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for e in graph.edges() {
        if dist.dist(e.tail) + e.weight == dist.dist(e.head) {
            tight[e.tail as usize].push(e.head);
        }
    }
    let comp = scc(&tight);
    // Component sizes; self-loops are rejected at build, so any component of
    // size >= 2 contains a proper cycle.
    let mut size = vec![0usize; n];
    for &c in &comp {
        size[c] += 1;
    }
    let Some(seed) = (0..n).find(|&v| size[comp[v]] >= 2) else {
        return Ok(None);
    };
    // BFS within the component from `seed` back to itself.
    let target_comp = comp[seed];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut visited = vec![false; n];
    visited[seed] = true;
    let mut queue = std::collections::VecDeque::from([seed as VertexId]);
    while let Some(u) = queue.pop_front() {
        for &v in &tight[u as usize] {
            if comp[v as usize] != target_comp {
                continue;
            }
            if v as usize == seed {
                let mut cycle = Vec::new();
                let mut x = u;
                loop {
                    cycle.push(x);
                    match parent[x as usize] {
                        Some(p) => x = p,
                        None => break,
                    }
                }
                cycle.reverse();
                cycle.push(seed as VertexId);
                debug_assert_eq!(graph.path_length(&cycle)?, 0);
                return Ok(Some(cycle));
            }
            if !visited[v as usize] {
                visited[v as usize] = true;
                parent[v as usize] = Some(u);
                queue.push_back(v);
            }
        }
    }
    unreachable!("strongly connected component must close a cycle");
}

/// Iterative Tarjan SCC over an adjacency-list graph; returns component ids.
fn scc(adj: &[Vec<VertexId>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut next_comp = 0usize;
    // (vertex, next-child position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        call.push((start, 0));
        while let Some(&mut (v, ref mut ci)) = call.last_mut() {
            if *ci == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *ci < adj[v].len() {
                let w = adj[v][*ci] as usize;
                *ci += 1;
                if index[w] == usize::MAX {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                call.pop();
                if let Some(&mut (p, _)) = call.last_mut() {
                    low[p] = low[p].min(low[v]);
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, WeightUpdate};
    use crate::samples;

    #[test]
    fn increase_demo_distances() {
        let g = samples::increase_demo();
        let t = bellman_ford(&g).unwrap().expect_tree();
        assert_eq!(t.dist(samples::U), 1);
        assert_eq!(t.dist(samples::V), 2);
        assert_eq!(t.dist(samples::X), 3);
        assert_eq!(t.dist(samples::Z), 4);
        t.validate(&g).unwrap();
    }

    #[test]
    fn single_vertex_graph() {
        let g = build_graph(1, 0, &[]).unwrap();
        let t = bellman_ford(&g).unwrap().expect_tree();
        assert_eq!(t.dist(0), 0);
    }

    #[test]
    fn negative_cycle_after_decrease() {
        use samples::{U, V};
        let mut g = samples::negative_cycle_demo();
        g.set_weight(&WeightUpdate { tail: V, head: U, new_weight: -2 }).unwrap();
        match bellman_ford(&g).unwrap() {
            SsspResult::NegativeCycle(cycle) => {
                assert_eq!(cycle.first(), cycle.last());
                assert!(g.path_length(&cycle).unwrap() < 0);
            }
            SsspResult::Tree(_) => panic!("expected a negative cycle"),
        }
    }

    #[test]
    fn zero_cycle_demo_detected() {
        let g = samples::zero_cycle_demo();
        let cycle = detect_zero_cycle(&g).unwrap().expect("0-cycle present");
        assert_eq!(cycle.first(), cycle.last());
        assert!(cycle.len() >= 3);
        assert_eq!(g.path_length(&cycle).unwrap(), 0);
    }

    #[test]
    fn strictly_positive_weights_have_no_zero_cycle() {
        let g = build_graph(3, 0, &[(0, 1, 2), (1, 2, 3), (2, 0, 1)]).unwrap();
        assert_eq!(detect_zero_cycle(&g).unwrap(), None);
    }

    #[test]
    fn zero_cycle_precondition() {
        let g = build_graph(2, 0, &[(0, 1, -3), (1, 0, 1)]).unwrap();
        assert_eq!(detect_zero_cycle(&g), Err(Error::PreconditionViolated));
    }

    #[test]
    fn triangle_optimality_on_demo() {
        let g = samples::increase_demo();
        let t = bellman_ford(&g).unwrap().expect_tree();
        for e in g.edges() {
            assert!(t.dist(e.tail) + e.weight >= t.dist(e.head));
        }
    }
}

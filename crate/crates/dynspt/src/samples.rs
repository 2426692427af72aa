//! Small hand-checked fixture graphs shared across the test suites and the
//! bundled example files.

use crate::graph::{build_graph, Graph, VertexId};

pub const S: VertexId = 0;
pub const U: VertexId = 1;
pub const V: VertexId = 2;
pub const W: VertexId = 3;
pub const X: VertexId = 4;
pub const Y: VertexId = 5;
pub const Z: VertexId = 6;

/// Seven-vertex graph exercising a weight increase on tree edge (s, u).
///
/// Distances: s=0, u=1, v=2, w=2, x=3, y=3, z=4.  Raising (s, u) from 1 to 9
/// moves x, z and v (all by +2) while u, w, y shift by the full +8; the
/// fewest-edge-changes tree keeps x under v.
pub fn increase_demo() -> Graph {
    build_graph(
        7,
        S,
        &[
            (S, U, 1),
            (U, V, 1),
            (U, W, 1),
            (W, Y, 1),
            (Y, Z, 1),
            (V, X, 1),
            (S, X, 5),
            (S, Z, 6),
            (Z, V, -2),
        ],
    )
    .expect("fixture is well formed")
}

/// Graph whose cycle u -> w -> y -> z -> v -> u has total weight 2 and whose
/// short cycle u -> v -> u has total weight 2; decreasing (v, u) from 1 to -2
/// turns the short cycle negative (-1).  Vertex x only hangs off the source so
/// the fixtures share one vertex numbering.
///
/// Distances before the decrease: s=0, u=1, v=2, w=3, x=1, y=2, z=3; v is
/// reachable at distance 2 both through u and through z.
pub fn negative_cycle_demo() -> Graph {
    build_graph(
        7,
        S,
        &[
            (S, U, 1),
            (U, V, 1),
            (V, U, 1),
            (U, W, 2),
            (W, Y, -1),
            (Y, Z, 1),
            (Z, V, -1),
            (S, X, 1),
        ],
    )
    .expect("fixture is well formed")
}

/// Five-vertex graph containing the 0-cycle x -> w -> z -> v -> x
/// (1 - 1 + 1 - 1 = 0).  Vertex ids: s=0, v=1, w=2, x=3, z=4.
pub fn zero_cycle_demo() -> Graph {
    let (s, v, w, x, z) = (0, 1, 2, 3, 4);
    build_graph(
        5,
        s,
        &[(s, x, 1), (x, w, 1), (w, z, -1), (z, v, 1), (v, x, -1)],
    )
    .expect("fixture is well formed")
}

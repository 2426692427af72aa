//! Deterministic random instance generation.
//!
//! Weights come from a potential shift: ω(u,v) = c(u,v) − φ(u) + φ(v) with
//! base costs c ≥ 0, so every cycle weight telescopes to a sum of base costs
//! and can never be negative; with strictly positive base costs it can never
//! be zero either.  A random arborescence guarantees source reachability.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph, VertexId, Weight, WeightUpdate};

/// A generated graph together with its potential certificate.  The
/// potentials are side metadata for update clamping; the algorithms under
/// test never see them.
#[derive(Debug, Clone)]
pub struct GeneratedGraph {
    pub graph: Graph,
    pub potentials: Vec<Weight>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateDirection {
    Increase,
    Decrease,
    Either,
}

/// Generates a consistent graph with `n` vertices and `m` edges,
/// deterministic in `seed`.  Base costs are drawn from
/// [`strict_positive_base` ? 1 : 0, `base_max`], potentials from
/// [−`potential_max`, `potential_max`].  `strict_positive_base` additionally
/// rules out 0-cycles.
pub fn generate(
    n: usize,
    m: usize,
    seed: u64,
    base_max: Weight,
    potential_max: Weight,
    strict_positive_base: bool,
) -> Result<GeneratedGraph> {
    let max_edges = n.saturating_mul(n.saturating_sub(1));
    if n == 0 || m + 1 < n || m > max_edges {
        return Err(Error::InfeasibleParams(format!(
            "need n-1 <= m <= n(n-1), got n={n}, m={m}"
        )));
    }
    let base_lo: Weight = if strict_positive_base { 1 } else { 0 };
    if base_max < base_lo || potential_max < 0 {
        return Err(Error::InfeasibleParams(format!(
            "need base_max >= {base_lo} and potential_max >= 0"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let potentials: Vec<Weight> = (0..n)
        .map(|_| rng.random_range(-potential_max..=potential_max))
        .collect();

    let mut pairs: Vec<(VertexId, VertexId)> = Vec::with_capacity(m);
    let mut used = std::collections::HashSet::with_capacity(m);
    // Random arborescence over 0..n guarantees reachability from source 0.
    for v in 1..n as VertexId {
        let p = rng.random_range(0..v);
        pairs.push((p, v));
        used.insert((p, v));
    }
    let extra = m - (n - 1);
    if extra > 0 {
        if m * 2 >= max_edges {
            // Dense request: shuffle the full complement of remaining pairs.
            let mut rest: Vec<(VertexId, VertexId)> = (0..n as VertexId)
                .flat_map(|u| {
                    (0..n as VertexId)
                        .filter(move |&v| v != u)
                        .map(move |v| (u, v))
                })
                .filter(|p| !used.contains(p))
                .collect();
            rest.shuffle(&mut rng);
            pairs.extend(rest.into_iter().take(extra));
        } else {
            while pairs.len() < m {
                let u = rng.random_range(0..n as VertexId);
                let v = rng.random_range(0..n as VertexId);
                if u != v && used.insert((u, v)) {
                    pairs.push((u, v));
                }
            }
        }
    }

    let arcs: Vec<(VertexId, VertexId, Weight)> = pairs
        .into_iter()
        .map(|(u, v)| {
            let c = rng.random_range(base_lo..=base_max);
            (u, v, c - potentials[u as usize] + potentials[v as usize])
        })
        .collect();
    Ok(GeneratedGraph { graph: build_graph(n, 0, &arcs)?, potentials })
}

/// Picks a random edge and a new weight in the requested direction,
/// deterministic in `seed`.  For decreases with `allow_inconsistency` off,
/// the new weight is clamped so the potential certificate keeps every cycle
/// weight non-negative.
pub fn generate_update(
    gen: &GeneratedGraph,
    seed: u64,
    direction: UpdateDirection,
    allow_inconsistency: bool,
) -> Result<WeightUpdate> {
    let graph = &gen.graph;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span: Weight = 16.max(
        graph
            .edges()
            .iter()
            .map(|e| e.weight.abs())
            .max()
            .unwrap_or(1),
    );
    for _ in 0..10_000 {
        let e = &graph.edges()[rng.random_range(0..graph.edge_count())];
        let increase = match direction {
            UpdateDirection::Increase => true,
            UpdateDirection::Decrease => false,
            UpdateDirection::Either => rng.random_bool(0.5),
        };
        let step = rng.random_range(1..=span);
        if increase {
            return Ok(WeightUpdate {
                tail: e.tail,
                head: e.head,
                new_weight: e.weight.saturating_add(step),
            });
        }
        let mut new_weight = e.weight - step;
        if !allow_inconsistency {
            // Keep the certificate's reduced cost non-negative:
            // ω' + φ(tail) − φ(head) ≥ 0.
            let floor = gen.potentials[e.head as usize] - gen.potentials[e.tail as usize];
            new_weight = new_weight.max(floor);
            if new_weight >= e.weight {
                continue; // base cost already 0; this edge cannot drop
            }
        }
        return Ok(WeightUpdate { tail: e.tail, head: e.head, new_weight });
    }
    Err(Error::InfeasibleParams(
        "no edge admits a consistent decrease".into(),
    ))
}

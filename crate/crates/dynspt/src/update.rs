//! Outcome and statistics vocabulary shared by the incremental and
//! decremental update algorithms.

use serde::Serialize;

use crate::graph::{VertexId, Weight};

/// Result of applying one weight update.  The tree passed to the algorithm is
/// mutated in place on `Updated`; it is left untouched on `Unchanged` and
/// `NegativeCycle` (the new weight is applied to the graph in every case).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpdateOutcome {
    Unchanged,
    Updated(UpdateStats),
    /// Witness cycle: first vertex = last vertex, every consecutive pair an
    /// edge of the updated graph, total updated weight < 0.
    NegativeCycle(Vec<VertexId>),
}

impl UpdateOutcome {
    pub fn stats(&self) -> Option<&UpdateStats> {
        match self {
            UpdateOutcome::Updated(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct UpdateStats {
    /// n0: vertices whose distance or parent changed (whole affected region).
    pub affected: usize,
    /// n_s: queue extractions (plus the head-enqueue rule in the decremental
    /// direction).
    pub strongly_affected: usize,
    /// Edge examinations; each graph edge is examined at most once per update.
    pub edges_examined: usize,
    /// Queue insertions plus key improvements.
    pub enqueues: usize,
    /// Explicit queue removals of consolidated vertices.
    pub removals: usize,
    /// Branch-merge parent restorations.
    pub merges: usize,
    /// Edge changes of the output tree relative to the input tree.
    pub edge_changes: usize,
}

/// Per-run trace used by the test suites: the extraction log carries
/// (vertex, new parent, delta) triples in extraction order.
#[derive(Debug, Clone, Default)]
pub struct RunTrace {
    pub extraction_log: Vec<(VertexId, VertexId, Weight)>,
    /// Edge ids examined, in order; must be duplicate-free.
    pub examined_edges: Vec<u32>,
    /// Affected vertex set (the n0 region).
    pub affected: Vec<VertexId>,
}

/// Whether and how the minimal-edge-change merge runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergeMode {
    #[default]
    Off,
    /// Check the pre-update graph for 0-cycles first; fail with
    /// `MergeUnavailable` if one exists (the minimality guarantee is void).
    Verify,
    /// The caller has already certified the pre-update graph 0-cycle-free.
    Certified,
}

#[derive(Debug, Clone, Copy)]
pub struct UpdateOptions {
    pub merge: MergeMode,
    /// Run the completion merge pass over every still-moved vertex after the
    /// main loop.  Disabling it (tests only) leaves just the in-loop hook's
    /// best-effort restorations.
    pub run_post_pass: bool,
}

impl Default for UpdateOptions {
    fn default() -> Self {
        UpdateOptions { merge: MergeMode::Off, run_post_pass: true }
    }
}

impl UpdateOptions {
    pub fn merged(mode: MergeMode) -> Self {
        UpdateOptions { merge: mode, ..Default::default() }
    }
}

/// One recorded tree mutation, sufficient to undo it.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MoveRecord {
    pub vertex: VertexId,
    pub old_parent: VertexId,
    pub old_parent_weight: Weight,
    /// Depth in the input tree (extraction roots move before anything above
    /// them does, so the depth at record time is the original depth).
    pub old_depth: u32,
}

/// Journal of reparent operations performed by an update run.  Supports undo
/// (decremental negative-cycle exits) and final edge-change accounting.
#[derive(Debug, Default)]
pub(crate) struct MoveJournal {
    pub moves: Vec<MoveRecord>,
}

impl MoveJournal {
    /// First recorded move per vertex, i.e. its position in the input tree.
    pub fn original_positions(&self) -> Vec<MoveRecord> {
        let mut seen = std::collections::HashSet::new();
        self.moves
            .iter()
            .filter(|m| seen.insert(m.vertex))
            .copied()
            .collect()
    }
}

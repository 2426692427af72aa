//! Addressable min-priority queue over vertices: at most one entry per
//! vertex, replace-only-if-smaller enqueue, arbitrary remove, and a fully
//! deterministic lexicographic extraction order.
//!
//! Backed by a pairing heap in a slot arena, giving amortized O(1)
//! insert/decrease and O(log n) extract/remove.

use crate::graph::{VertexId, Weight};

/// Full comparison key: (delta, candidate distance from the source, depth of
/// the vertex in the input tree, vertex id).  The trailing id makes every
/// extraction order deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct QueueKey {
    pub delta: Weight,
    pub candidate_distance: Weight,
    pub depth: u32,
    pub vertex: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueueEntry {
    pub vertex: VertexId,
    pub candidate_parent: VertexId,
    pub key: QueueKey,
}

impl QueueEntry {
    pub fn new(
        vertex: VertexId,
        candidate_parent: VertexId,
        delta: Weight,
        candidate_distance: Weight,
        depth: u32,
    ) -> Self {
        QueueEntry {
            vertex,
            candidate_parent,
            key: QueueKey { delta, candidate_distance, depth, vertex },
        }
    }

    pub fn delta(&self) -> Weight {
        self.key.delta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnqueueResult {
    Inserted,
    Replaced,
    Ignored,
}

#[derive(Debug, Clone)]
struct Node {
    entry: QueueEntry,
    child: Option<usize>,
    sibling: Option<usize>,
    /// Parent if first child, left sibling otherwise; None at the root.
    prev: Option<usize>,
}

/// Addressable pairing heap keyed by vertex id.
#[derive(Debug, Default)]
pub struct PQueue {
    nodes: Vec<Node>,
    free: Vec<usize>,
    root: Option<usize>,
    /// vertex id -> live slot
    slot_of: std::collections::HashMap<VertexId, usize>,
}

impl PQueue {
    pub fn new() -> Self {
        PQueue::default()
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    pub fn len(&self) -> usize {
        self.slot_of.len()
    }

    pub fn contains(&self, vertex: VertexId) -> bool {
        self.slot_of.contains_key(&vertex)
    }

    /// Inserts the entry, or replaces the vertex's existing entry when the
    /// new key is strictly smaller; otherwise the call is ignored.
    pub fn enqueue(&mut self, entry: QueueEntry) -> EnqueueResult {
        match self.slot_of.get(&entry.vertex).copied() {
            None => {
                let slot = self.alloc(entry);
                self.slot_of.insert(entry.vertex, slot);
                self.root = Some(match self.root {
                    None => slot,
                    Some(r) => self.meld(r, slot),
                });
                EnqueueResult::Inserted
            }
            Some(slot) => {
                if entry.key < self.nodes[slot].entry.key {
                    self.decrease(slot, entry);
                    EnqueueResult::Replaced
                } else {
                    EnqueueResult::Ignored
                }
            }
        }
    }

    /// Removes and returns the lexicographically minimal entry.
    pub fn extract_min(&mut self) -> Option<QueueEntry> {
        let root = self.root?;
        let entry = self.nodes[root].entry;
        self.root = self.merge_pairs(self.nodes[root].child);
        if let Some(r) = self.root {
            self.nodes[r].prev = None;
            self.nodes[r].sibling = None;
        }
        self.release(root);
        self.slot_of.remove(&entry.vertex);
        Some(entry)
    }

    pub fn peek(&self) -> Option<&QueueEntry> {
        self.root.map(|r| &self.nodes[r].entry)
    }

    /// Deletes the vertex's entry if present; returns whether it was there.
    pub fn remove(&mut self, vertex: VertexId) -> bool {
        let Some(slot) = self.slot_of.remove(&vertex) else {
            return false;
        };
        if Some(slot) == self.root {
            self.root = self.merge_pairs(self.nodes[slot].child);
            if let Some(r) = self.root {
                self.nodes[r].prev = None;
                self.nodes[r].sibling = None;
            }
        } else {
            self.cut(slot);
            let orphans = self.merge_pairs(self.nodes[slot].child);
            if let Some(o) = orphans {
                self.nodes[o].prev = None;
                self.nodes[o].sibling = None;
                let r = self.root.expect("non-root delete implies a root");
                self.root = Some(self.meld(r, o));
            }
        }
        self.release(slot);
        true
    }

    fn alloc(&mut self, entry: QueueEntry) -> usize {
        let node = Node { entry, child: None, sibling: None, prev: None };
        match self.free.pop() {
            Some(slot) => {
                self.nodes[slot] = node;
                slot
            }
            None => {
                self.nodes.push(node);
                self.nodes.len() - 1
            }
        }
    }

    fn release(&mut self, slot: usize) {
        self.free.push(slot);
    }

    /// Links two roots, smaller key on top; returns the surviving root.
    fn meld(&mut self, a: usize, b: usize) -> usize {
        let (top, bottom) = if self.nodes[a].entry.key <= self.nodes[b].entry.key {
            (a, b)
        } else {
            (b, a)
        };
        let old_child = self.nodes[top].child;
        self.nodes[bottom].sibling = old_child;
        self.nodes[bottom].prev = Some(top);
        if let Some(c) = old_child {
            self.nodes[c].prev = Some(bottom);
        }
        self.nodes[top].child = Some(bottom);
        self.nodes[top].sibling = None;
        self.nodes[top].prev = None;
        top
    }

    /// Detaches `slot` from its parent/sibling links, leaving its own
    /// subtree intact.
    fn cut(&mut self, slot: usize) {
        let prev = self.nodes[slot].prev.expect("cut of a root");
        let sibling = self.nodes[slot].sibling;
        if self.nodes[prev].child == Some(slot) {
            self.nodes[prev].child = sibling;
        } else {
            self.nodes[prev].sibling = sibling;
        }
        if let Some(s) = sibling {
            self.nodes[s].prev = Some(prev);
        }
        self.nodes[slot].prev = None;
        self.nodes[slot].sibling = None;
    }

    fn decrease(&mut self, slot: usize, entry: QueueEntry) {
        self.nodes[slot].entry = entry;
        if Some(slot) == self.root {
            return;
        }
        self.cut(slot);
        let r = self.root.expect("non-root slot implies a root");
        self.root = Some(self.meld(r, slot));
    }

    /// Classic two-pass pairing of a sibling list; returns the new root.
    fn merge_pairs(&mut self, first: Option<usize>) -> Option<usize> {
        let mut roots = Vec::new();
        let mut cur = first;
        while let Some(slot) = cur {
            cur = self.nodes[slot].sibling;
            self.nodes[slot].sibling = None;
            self.nodes[slot].prev = None;
            roots.push(slot);
        }
        let mut paired = Vec::with_capacity(roots.len().div_ceil(2));
        for pair in roots.chunks(2) {
            paired.push(match pair {
                [a, b] => self.meld(*a, *b),
                [a] => *a,
                _ => unreachable!(),
            });
        }
        paired.into_iter().reduce(|acc, r| self.meld(acc, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn entry(v: VertexId, delta: Weight, cand: Weight) -> QueueEntry {
        QueueEntry::new(v, 0, delta, cand, 0, )
    }

    #[test]
    fn insert_into_empty() {
        let mut q = PQueue::new();
        assert_eq!(q.enqueue(entry(1, 2, 5)), EnqueueResult::Inserted);
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn larger_delta_is_ignored() {
        let mut q = PQueue::new();
        q.enqueue(entry(1, 2, 5));
        assert_eq!(q.enqueue(entry(1, 3, 5)), EnqueueResult::Ignored);
        assert_eq!(q.peek().unwrap().delta(), 2);
    }

    #[test]
    fn smaller_delta_replaces() {
        let mut q = PQueue::new();
        q.enqueue(entry(1, 2, 5));
        assert_eq!(q.enqueue(entry(1, 1, 4)), EnqueueResult::Replaced);
        assert_eq!(q.peek().unwrap().delta(), 1);
    }

    #[test]
    fn equal_delta_smaller_distance_first() {
        // Two entries with delta 2 and candidate distances 5 and 6: the
        // closer one comes out first.
        let mut q = PQueue::new();
        q.enqueue(entry(4, 2, 5));
        q.enqueue(entry(6, 2, 6));
        assert_eq!(q.extract_min().unwrap().vertex, 4);
        assert_eq!(q.extract_min().unwrap().vertex, 6);
    }

    #[test]
    fn single_entry_round_trip() {
        let mut q = PQueue::new();
        q.enqueue(entry(7, -3, 1));
        assert_eq!(q.extract_min().unwrap().vertex, 7);
        assert!(q.extract_min().is_none());
    }

    #[test]
    fn remove_absent_is_false() {
        let mut q = PQueue::new();
        assert!(!q.remove(3));
        q.enqueue(entry(3, 1, 1));
        assert!(q.remove(3));
        assert!(!q.contains(3));
        assert!(!q.remove(3));
    }

    /// Sorted-list reference queue used as the brute-force oracle.
    #[derive(Default)]
    struct OracleQueue {
        entries: Vec<QueueEntry>,
    }

    impl OracleQueue {
        fn enqueue(&mut self, e: QueueEntry) -> EnqueueResult {
            match self.entries.iter().position(|x| x.vertex == e.vertex) {
                None => {
                    self.entries.push(e);
                    EnqueueResult::Inserted
                }
                Some(i) if e.key < self.entries[i].key => {
                    self.entries[i] = e;
                    EnqueueResult::Replaced
                }
                Some(_) => EnqueueResult::Ignored,
            }
        }

        fn extract_min(&mut self) -> Option<QueueEntry> {
            let i = self
                .entries
                .iter()
                .enumerate()
                .min_by_key(|(_, e)| e.key)
                .map(|(i, _)| i)?;
            Some(self.entries.remove(i))
        }

        fn remove(&mut self, v: VertexId) -> bool {
            match self.entries.iter().position(|x| x.vertex == v) {
                Some(i) => {
                    self.entries.remove(i);
                    true
                }
                None => false,
            }
        }
    }

    #[test]
    fn hundred_random_entries_match_sort_then_pop() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut q = PQueue::new();
        let mut oracle = OracleQueue::default();
        for v in 0..100u32 {
            let e = QueueEntry::new(
                v,
                rng.random_range(0..10),
                rng.random_range(-5..20),
                rng.random_range(-50..50),
                rng.random_range(0..4),
            );
            assert_eq!(q.enqueue(e), oracle.enqueue(e));
        }
        while let Some(got) = q.extract_min() {
            assert_eq!(Some(got), oracle.extract_min());
        }
        assert!(oracle.extract_min().is_none());
    }

    #[derive(Debug, Clone)]
    enum Op {
        Enqueue(VertexId, Weight, Weight, u32),
        ExtractMin,
        Remove(VertexId),
    }

    fn op_strategy() -> impl Strategy<Value = Op> {
        prop_oneof![
            (0..24u32, -20..20i64, -50..50i64, 0..6u32)
                .prop_map(|(v, d, c, dep)| Op::Enqueue(v, d, c, dep)),
            Just(Op::ExtractMin),
            (0..24u32).prop_map(Op::Remove),
        ]
    }

    proptest! {
        #[test]
        fn interleaved_ops_match_reference(ops in proptest::collection::vec(op_strategy(), 1..200)) {
            let mut q = PQueue::new();
            let mut oracle = OracleQueue::default();
            for op in ops {
                match op {
                    Op::Enqueue(v, d, c, dep) => {
                        let e = QueueEntry::new(v, 0, d, c, dep);
                        prop_assert_eq!(q.enqueue(e), oracle.enqueue(e));
                    }
                    Op::ExtractMin => {
                        prop_assert_eq!(q.extract_min(), oracle.extract_min());
                    }
                    Op::Remove(v) => {
                        prop_assert_eq!(q.remove(v), oracle.remove(v));
                    }
                }
                prop_assert_eq!(q.len(), oracle.entries.len());
            }
            // Drain: extraction order stays the global lexicographic minimum.
            while let Some(got) = q.extract_min() {
                prop_assert_eq!(Some(got), oracle.extract_min());
            }
            prop_assert!(oracle.entries.is_empty());
        }
    }
}

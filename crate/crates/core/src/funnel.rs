//! Hierarchical queue: FIFO buckets indexed by priority.
//!
//! Extraction always returns an entry of minimal priority, and among entries
//! of equal priority the one inserted first. A node may sit in the queue
//! several times under different priorities (multi-occupancy); callers discard
//! stale copies on extraction.
//!
//! Small finite priorities live in a dense array of buckets with a moving
//! cursor; everything else (sentinels, large values) falls back to an ordered
//! map.

use std::collections::{BTreeMap, VecDeque};

use crate::weight::Weight;

/// Largest number of dense buckets a funnel will allocate.
const DENSE_LIMIT: u64 = 1 << 16;

/// Priority types usable in a [`Funnel`].
///
/// `slot` maps a key to a dense bucket index; it must be strictly monotone on
/// the keys it accepts, and every key it accepts must compare above the keys
/// it rejects that are smaller, and below those that are larger (in practice:
/// it accepts a contiguous low range of finite keys).
pub trait BucketKey: Ord + Copy {
    fn slot(&self) -> Option<u64>;
}

impl BucketKey for Weight {
    fn slot(&self) -> Option<u64> {
        self.finite()
    }
}

/// Weight with a secondary flag; `(w, false)` precedes `(w, true)`.
impl BucketKey for (Weight, bool) {
    fn slot(&self) -> Option<u64> {
        self.0.finite().and_then(|v| v.checked_mul(2)).map(|s| s + self.1 as u64)
    }
}

#[derive(Debug, Clone)]
pub struct Funnel<P: BucketKey, T> {
    dense: Vec<VecDeque<(P, T)>>,
    cursor: usize,
    sparse: BTreeMap<P, VecDeque<T>>,
    len: usize,
}

impl<P: BucketKey, T> Default for Funnel<P, T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<P: BucketKey, T> Funnel<P, T> {
    pub fn new() -> Self {
        Funnel {
            dense: Vec::new(),
            cursor: 0,
            sparse: BTreeMap::new(),
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, priority: P, item: T) {
        self.len += 1;
        if let Some(slot) = priority.slot().filter(|&s| s < DENSE_LIMIT) {
            let slot = slot as usize;
            if slot >= self.dense.len() {
                self.dense.resize_with(slot + 1, VecDeque::new);
            }
            self.dense[slot].push_back((priority, item));
            self.cursor = self.cursor.min(slot);
        } else {
            self.sparse.entry(priority).or_default().push_back(item);
        }
    }

    fn dense_front(&mut self) -> Option<P> {
        while self.cursor < self.dense.len() {
            if let Some((p, _)) = self.dense[self.cursor].front() {
                return Some(*p);
            }
            self.cursor += 1;
        }
        None
    }

    /// Minimal priority currently stored.
    pub fn peek_priority(&mut self) -> Option<P> {
        let dense = self.dense_front();
        let sparse = self.sparse.keys().next().copied();
        match (dense, sparse) {
            (Some(d), Some(s)) => Some(d.min(s)),
            (d, s) => d.or(s),
        }
    }

    /// Oldest entry among those of minimal priority, left in place.
    pub fn peek(&mut self) -> Option<(P, &T)> {
        let dense = self.dense_front();
        let sparse = self.sparse.keys().next().copied();
        let take_dense = match (dense, sparse) {
            (Some(d), Some(s)) => d <= s,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => return None,
        };
        if take_dense {
            self.dense[self.cursor].front().map(|(p, t)| (*p, t))
        } else {
            self.sparse.iter().next().map(|(p, q)| (*p, q.front().unwrap()))
        }
    }

    /// Removes the oldest entry among those of minimal priority.
    pub fn pop(&mut self) -> Option<(P, T)> {
        let dense = self.dense_front();
        let sparse = self.sparse.keys().next().copied();
        let take_dense = match (dense, sparse) {
            (Some(d), Some(s)) => d <= s,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => return None,
        };
        self.len -= 1;
        if take_dense {
            self.dense[self.cursor].pop_front()
        } else {
            let mut entry = self.sparse.first_entry().unwrap();
            let priority = *entry.key();
            let item = entry.get_mut().pop_front().unwrap();
            if entry.get().is_empty() {
                entry.remove();
            }
            Some((priority, item))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::w;
    use proptest::prelude::*;

    #[test]
    fn min_priority_then_fifo() {
        let mut f = Funnel::new();
        f.push(w(3), 'a');
        f.push(w(1), 'b');
        f.push(Weight::Top, 'c');
        f.push(w(1), 'd');
        f.push(Weight::Bottom, 'e');
        f.push(w(1 << 40), 'f');
        let order: Vec<char> = std::iter::from_fn(|| f.pop().map(|(_, x)| x)).collect();
        assert_eq!(order, vec!['e', 'b', 'd', 'a', 'f', 'c']);
        assert!(f.is_empty());
    }

    #[test]
    fn cursor_moves_back_for_lower_priorities() {
        let mut f = Funnel::new();
        f.push(w(5), 1);
        assert_eq!(f.pop(), Some((w(5), 1)));
        f.push(w(7), 2);
        f.push(w(2), 3);
        assert_eq!(f.peek_priority(), Some(w(2)));
        assert_eq!(f.peek(), Some((w(2), &3)));
        assert_eq!(f.pop(), Some((w(2), 3)));
        assert_eq!(f.pop(), Some((w(7), 2)));
        assert_eq!(f.pop(), None);
    }

    #[test]
    fn flagged_keys_order_flag_second() {
        let mut f = Funnel::new();
        f.push((w(2), true), 'x');
        f.push((w(2), false), 'y');
        f.push((w(1), true), 'z');
        let order: Vec<char> = std::iter::from_fn(|| f.pop().map(|(_, x)| x)).collect();
        assert_eq!(order, vec!['z', 'y', 'x']);
    }

    fn arb_weight() -> impl Strategy<Value = Weight> {
        prop_oneof![
            1 => Just(Weight::Bottom),
            1 => Just(Weight::Top),
            6 => (0u64..20).prop_map(Weight::Finite),
            1 => (DENSE_LIMIT - 2..DENSE_LIMIT + 2).prop_map(Weight::Finite),
        ]
    }

    proptest! {
        // Matches a stable sort of (priority, insertion index), with pops
        // interleaved with pushes.
        #[test]
        fn behaves_like_stable_priority_queue(ops in proptest::collection::vec(proptest::option::of(arb_weight()), 0..80)) {
            let mut f = Funnel::new();
            let mut model: Vec<(Weight, usize)> = Vec::new();
            for (i, op) in ops.into_iter().enumerate() {
                match op {
                    Some(p) => { f.push(p, i); model.push((p, i)); }
                    None => {
                        model.sort();
                        let expected = if model.is_empty() { None } else { Some(model.remove(0)) };
                        prop_assert_eq!(f.pop(), expected);
                    }
                }
                prop_assert_eq!(f.len(), model.len());
            }
        }
    }
}

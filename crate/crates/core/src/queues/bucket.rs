//! Circular bucket queues with list buckets: Dial (one bucket per integer
//! cost) and Untidy (each bucket covers a cost interval).

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{
    bucket_index, check_key, check_new_key, BucketOrder, MonotoneQueue, QueueEntry, SpreadSample,
    Tracker,
};
use crate::error::{Error, Result};

/// Maps keys to logical buckets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Mapping {
    /// Bucket = integer key.
    Integer,
    /// Bucket = `floor(key * (B - 1) / max_arc_weight)`.
    Interval { max_arc_weight: f64 },
}

impl Mapping {
    #[inline]
    pub(crate) fn logical(&self, key: f64, buckets: usize) -> Result<usize> {
        match *self {
            Mapping::Integer => {
                if key != crate::math::floor(key) {
                    return Err(Error::invalid_cost(format!(
                        "Dial's queue needs integer keys, got {key}"
                    )));
                }
                Ok(key as usize)
            }
            Mapping::Interval { max_arc_weight } => Ok(bucket_index(key, max_arc_weight, buckets)),
        }
    }

    pub(crate) fn is_exact(&self) -> bool {
        matches!(self, Mapping::Integer)
    }
}

/// Cursor bookkeeping shared by the list-based and static bucket queues.
#[derive(Debug, Clone)]
pub(crate) struct Circle {
    pub(crate) mapping: Mapping,
    pub(crate) buckets: usize,
    /// Lowest logical bucket that may hold entries.
    pub(crate) cursor: usize,
}

impl Circle {
    /// Logical bucket for a new key. Keys below the cursor pull it down;
    /// keys past the circular window (only possible through rounding at
    /// the window edge) are clamped into its last bucket.
    #[inline]
    pub(crate) fn place(&mut self, key: f64, queue_empty: bool) -> Result<usize> {
        let k = self.mapping.logical(key, self.buckets)?;
        if queue_empty || k < self.cursor {
            self.cursor = k;
            return Ok(k);
        }
        let last = self.cursor + self.buckets - 1;
        if k > last {
            if self.mapping.is_exact() {
                return Err(Error::usage(format!(
                    "key {key} is more than {} buckets past the current minimum",
                    self.buckets
                )));
            }
            return Ok(last);
        }
        Ok(k)
    }

    #[inline]
    pub(crate) fn slot(&self, logical: usize) -> usize {
        logical % self.buckets
    }
}

#[derive(Debug, Clone, Copy)]
struct Item {
    key: f64,
    node: usize,
    bucket: usize,
}

/// Dial or Untidy queue; buckets are dynamic lists.
///
/// With a position array, the tracker records the node's slot and
/// decrease-key scans that slot's list.
#[derive(Debug, Clone)]
pub struct BucketQueue<T> {
    circle: Circle,
    order: BucketOrder,
    lists: Vec<VecDeque<Item>>,
    len: usize,
    tracker: T,
}

impl<T: Tracker> BucketQueue<T> {
    /// Dial's queue; `buckets` must exceed the largest arc weight.
    pub fn dial(buckets: usize, order: BucketOrder, tracker: T) -> Self {
        Self::with_mapping(Mapping::Integer, buckets, order, tracker)
    }

    /// Untidy queue with `buckets` buckets over arc weights up to
    /// `max_arc_weight`.
    pub fn untidy(buckets: usize, max_arc_weight: f64, order: BucketOrder, tracker: T) -> Self {
        Self::with_mapping(Mapping::Interval { max_arc_weight }, buckets, order, tracker)
    }

    fn with_mapping(mapping: Mapping, buckets: usize, order: BucketOrder, tracker: T) -> Self {
        assert!(buckets >= 1, "bucket count must be at least 1");
        BucketQueue {
            circle: Circle {
                mapping,
                buckets,
                cursor: 0,
            },
            order,
            lists: (0..buckets).map(|_| VecDeque::new()).collect(),
            len: 0,
            tracker,
        }
    }

    pub fn bucket_count(&self) -> usize {
        self.circle.buckets
    }

    /// Physical slot currently holding `node`, when tracked.
    pub fn slot_of(&self, node: usize) -> Option<usize> {
        self.tracker.get(node)
    }

    fn place(&mut self, node: usize, key: f64) -> Result<()> {
        let bucket = self.circle.place(key, self.len == 0)?;
        let slot = self.circle.slot(bucket);
        let item = Item { key, node, bucket };
        match self.order {
            BucketOrder::Lifo => self.lists[slot].push_front(item),
            BucketOrder::Fifo => self.lists[slot].push_back(item),
        }
        self.len += 1;
        self.tracker.set(node, slot);
        Ok(())
    }
}

impl<T: Tracker> MonotoneQueue for BucketQueue<T> {
    fn insert(&mut self, node: usize, key: f64) -> Result<()> {
        check_key(key)?;
        if T::ACTIVE && self.tracker.get(node).is_some() {
            return Err(Error::usage("node is already queued"));
        }
        self.place(node, key)
    }

    fn extract_min(&mut self) -> Result<QueueEntry> {
        if self.len == 0 {
            return Err(Error::EmptyQueue);
        }
        loop {
            let slot = self.circle.slot(self.circle.cursor);
            if let Some(item) = self.lists[slot].pop_front() {
                self.len -= 1;
                self.tracker.remove(item.node);
                return Ok(QueueEntry {
                    node: item.node,
                    key: item.key,
                });
            }
            self.circle.cursor += 1;
        }
    }

    fn decrease_key(&mut self, node: usize, new_key: f64) -> Result<()> {
        if !T::ACTIVE {
            return Err(Error::usage("decrease-key needs node tracking"));
        }
        let slot = self
            .tracker
            .get(node)
            .ok_or_else(|| Error::usage("node is not on the queue"))?;
        let list = &mut self.lists[slot];
        let i = list
            .iter()
            .position(|it| it.node == node)
            .ok_or_else(|| Error::usage("tracked node missing from its bucket"))?;
        check_new_key(list[i].key, new_key)?;
        list.remove(i);
        self.len -= 1;
        self.tracker.remove(node);
        self.place(node, new_key)
    }

    #[inline]
    fn contains(&self, node: usize) -> bool {
        T::ACTIVE && self.tracker.get(node).is_some()
    }

    fn tracks_nodes(&self) -> bool {
        T::ACTIVE
    }

    fn len(&self) -> usize {
        self.len
    }

    fn spread(&self) -> Result<SpreadSample> {
        let b = self.circle.buckets;
        let first = self.circle.cursor;
        Ok(SpreadSample {
            iteration: 0,
            first_bucket: first,
            occupancy: (0..b)
                .map(|i| self.lists[(first + i) % b].len() as u32)
                .collect(),
        })
    }

    fn check_invariants(&self) -> core::result::Result<(), String> {
        let b = self.circle.buckets;
        let cursor = self.circle.cursor;
        let mut total = 0;
        for (slot, list) in self.lists.iter().enumerate() {
            total += list.len();
            for it in list {
                if it.bucket % b != slot {
                    return Err(format!("bucket {} stored in slot {slot}", it.bucket));
                }
                if self.len > 0 && !(cursor..cursor + b).contains(&it.bucket) {
                    return Err(format!(
                        "bucket {} outside window starting at {cursor}",
                        it.bucket
                    ));
                }
                if self.circle.mapping.is_exact() && it.bucket as f64 != it.key {
                    return Err(format!("Dial bucket {} holds key {}", it.bucket, it.key));
                }
                if T::ACTIVE && self.tracker.get(it.node) != Some(slot) {
                    return Err(format!("node {} not tracked at slot {slot}", it.node));
                }
            }
        }
        if total != self.len {
            return Err(format!("lists hold {total} entries, len {}", self.len));
        }
        if T::ACTIVE && self.tracker.tracked() != self.len {
            return Err("tracker size differs from queue size".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::queues::{NoTracking, PositionArray};

    #[test]
    fn dial_orders_integer_keys() {
        let mut q = BucketQueue::dial(261, BucketOrder::Lifo, NoTracking);
        for k in [5.0, 3.0, 8.0] {
            q.insert(k as usize, k).unwrap();
        }
        let keys: Vec<f64> = (0..3).map(|_| q.extract_min().unwrap().key).collect();
        assert_eq!(keys, [3.0, 5.0, 8.0]);
    }

    #[test]
    fn dial_rejects_fractional_keys() {
        let mut q = BucketQueue::dial(261, BucketOrder::Lifo, NoTracking);
        assert!(matches!(q.insert(0, 2.5), Err(Error::InvalidCost(_))));
    }

    #[test]
    fn dial_decrease_moves_between_slots() {
        let mut q = BucketQueue::dial(261, BucketOrder::Fifo, PositionArray::new(4));
        q.insert(0, 1.0).unwrap();
        q.insert(1, 7.0).unwrap();
        assert_eq!(q.slot_of(1), Some(7));
        q.decrease_key(1, 4.0).unwrap();
        assert_eq!(q.slot_of(1), Some(4));
        q.check_invariants().unwrap();
    }

    #[test]
    fn dial_wraps_circularly() {
        let mut q = BucketQueue::dial(11, BucketOrder::Lifo, PositionArray::new(4));
        q.insert(0, 9.0).unwrap();
        assert_eq!(q.extract_min().unwrap().key, 9.0);
        q.insert(1, 19.0).unwrap();
        q.insert(2, 12.0).unwrap();
        assert_eq!(q.slot_of(1), Some(8));
        q.check_invariants().unwrap();
        assert_eq!(q.extract_min().unwrap().key, 12.0);
        assert_eq!(q.extract_min().unwrap().key, 19.0);
    }

    #[test]
    fn untidy_bucket_mapping() {
        let mut q = BucketQueue::untidy(261, 260.0, BucketOrder::Lifo, PositionArray::new(4));
        q.insert(0, 130.0).unwrap();
        assert_eq!(q.slot_of(0), Some(130));
    }

    #[test]
    fn untidy_lifo_may_return_larger_key_first() {
        let mut q = BucketQueue::untidy(2, 260.0, BucketOrder::Lifo, NoTracking);
        q.insert(0, 10.0).unwrap();
        q.insert(1, 5.0).unwrap();
        assert_eq!(q.extract_min().unwrap().key, 5.0);
        let mut q = BucketQueue::untidy(2, 260.0, BucketOrder::Lifo, NoTracking);
        q.insert(1, 5.0).unwrap();
        q.insert(0, 10.0).unwrap();
        // Same bucket, last in first out.
        assert_eq!(q.extract_min().unwrap().key, 10.0);
        let mut q = BucketQueue::untidy(2, 260.0, BucketOrder::Fifo, NoTracking);
        q.insert(0, 10.0).unwrap();
        q.insert(1, 5.0).unwrap();
        assert_eq!(q.extract_min().unwrap().key, 10.0);
    }

    #[test]
    fn spread_counts_entries() {
        let mut q = BucketQueue::untidy(8, 260.0, BucketOrder::Lifo, NoTracking);
        let s = q.spread().unwrap();
        assert!(s.occupancy.iter().all(|&c| c == 0));
        assert_eq!(s.occupancy.len(), 8);
        for (i, k) in [1.0, 100.0, 200.0].into_iter().enumerate() {
            q.insert(i, k).unwrap();
        }
        assert_eq!(q.spread().unwrap().total(), 3);
    }
}

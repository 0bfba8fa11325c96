//! Hierarchical heap: a circular bucket array where every bucket is a
//! small d-ary heap. Buckets cover cost intervals as in the Untidy queue,
//! but the heap inside the lowest bucket makes every extraction globally
//! minimal.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::bucket::{Circle, Mapping};
use super::dheap::{HeapVec, Keyed};
use super::{check_key, check_new_key, MonotoneQueue, QueueEntry, SpreadSample, Tracker};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub(crate) struct BucketItem {
    key: f64,
    node: usize,
    bucket: usize,
}

impl Keyed for BucketItem {
    #[inline(always)]
    fn key(&self) -> f64 {
        self.key
    }
    #[inline(always)]
    fn node(&self) -> usize {
        self.node
    }
    #[inline(always)]
    fn set_key(&mut self, key: f64) {
        self.key = key;
    }
}

/// Tracker positions encode `heap_index * buckets + slot`.
#[derive(Debug, Clone)]
pub struct HierarchicalHeap<T> {
    circle: Circle,
    heaps: Vec<HeapVec<BucketItem>>,
    len: usize,
    tracker: T,
}

impl<T: Tracker> HierarchicalHeap<T> {
    pub fn new(buckets: usize, max_arc_weight: f64, arity: usize, tracker: T) -> Self {
        assert!(buckets >= 1, "bucket count must be at least 1");
        assert!(arity >= 2, "heap arity must be at least 2");
        HierarchicalHeap {
            circle: Circle {
                mapping: Mapping::Interval { max_arc_weight },
                buckets,
                cursor: 0,
            },
            heaps: (0..buckets).map(|_| HeapVec::new(arity)).collect(),
            len: 0,
            tracker,
        }
    }

    pub fn bucket_count(&self) -> usize {
        self.circle.buckets
    }

    fn place(&mut self, node: usize, key: f64) -> Result<()> {
        let bucket = self.circle.place(key, self.len == 0)?;
        let b = self.circle.buckets;
        let slot = self.circle.slot(bucket);
        let tracker = &mut self.tracker;
        self.heaps[slot].push(BucketItem { key, node, bucket }, &mut |n, i| {
            tracker.set(n, i * b + slot)
        });
        self.len += 1;
        Ok(())
    }
}

impl<T: Tracker> MonotoneQueue for HierarchicalHeap<T> {
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
        let b = self.circle.buckets;
        loop {
            let slot = self.circle.slot(self.circle.cursor);
            if !self.heaps[slot].is_empty() {
                let tracker = &mut self.tracker;
                let item = self.heaps[slot]
                    .pop_min(&mut |n, i| tracker.set(n, i * b + slot))
                    .expect("non-empty bucket");
                self.tracker.remove(item.node);
                self.len -= 1;
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
        let pos = self
            .tracker
            .get(node)
            .ok_or_else(|| Error::usage("node is not on the queue"))?;
        let b = self.circle.buckets;
        let (slot, index) = (pos % b, pos / b);
        let old = self.heaps[slot]
            .get(index)
            .ok_or_else(|| Error::usage("stale heap position"))?
            .key;
        check_new_key(old, new_key)?;
        let tracker = &mut self.tracker;
        self.heaps[slot].remove_at(index, &mut |n, i| tracker.set(n, i * b + slot));
        self.tracker.remove(node);
        self.len -= 1;
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
                .map(|i| self.heaps[(first + i) % b].len() as u32)
                .collect(),
        })
    }

    fn check_invariants(&self) -> core::result::Result<(), String> {
        let b = self.circle.buckets;
        let cursor = self.circle.cursor;
        let mut total = 0;
        for (slot, heap) in self.heaps.iter().enumerate() {
            if let Some(i) = heap.order_violation() {
                return Err(format!("heap order violated in slot {slot} at {i}"));
            }
            for (i, it) in heap.items().iter().enumerate() {
                if it.bucket % b != slot || !(cursor..cursor + b).contains(&it.bucket) {
                    return Err(format!("bucket {} misplaced in slot {slot}", it.bucket));
                }
                if T::ACTIVE && self.tracker.get(it.node) != Some(i * b + slot) {
                    return Err(format!("node {} not tracked at ({slot}, {i})", it.node));
                }
            }
            total += heap.len();
        }
        if total != self.len {
            return Err(format!("heaps hold {total} entries, len {}", self.len));
        }
        if T::ACTIVE && self.tracker.tracked() != self.len {
            return Err("tracker size differs from queue size".into());
        }
        Ok(())
    }
}

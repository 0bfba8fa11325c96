//! Dial and Untidy queues over preallocated per-node link arrays.
//!
//! Each node owns `next`/`prev` links, its key and its slot, so bucket
//! lists are intrusive and a queued node can be unlinked in O(1). Node
//! membership is therefore always known.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::bucket::{Circle, Mapping};
use super::{check_key, check_new_key, BucketOrder, MonotoneQueue, QueueEntry, SpreadSample};
use crate::error::{Error, Result};

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct StaticBucketQueue {
    circle: Circle,
    order: BucketOrder,
    heads: Vec<u32>,
    tails: Vec<u32>,
    counts: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    keys: Vec<f64>,
    buckets_of: Vec<usize>,
    slot_of: Vec<u32>,
    len: usize,
}

impl StaticBucketQueue {
    pub fn dial(node_count: usize, buckets: usize, order: BucketOrder) -> Self {
        Self::new(Mapping::Integer, node_count, buckets, order)
    }

    pub fn untidy(node_count: usize, buckets: usize, max_arc_weight: f64, order: BucketOrder) -> Self {
        Self::new(Mapping::Interval { max_arc_weight }, node_count, buckets, order)
    }

    fn new(mapping: Mapping, node_count: usize, buckets: usize, order: BucketOrder) -> Self {
        assert!(buckets >= 1, "bucket count must be at least 1");
        assert!(node_count < NIL as usize, "too many nodes for 32-bit links");
        StaticBucketQueue {
            circle: Circle {
                mapping,
                buckets,
                cursor: 0,
            },
            order,
            heads: vec![NIL; buckets],
            tails: vec![NIL; buckets],
            counts: vec![0; buckets],
            next: vec![NIL; node_count],
            prev: vec![NIL; node_count],
            keys: vec![0.0; node_count],
            buckets_of: vec![0; node_count],
            slot_of: vec![NIL; node_count],
            len: 0,
        }
    }

    /// Bytes held by the per-node arrays.
    pub fn node_memory_bytes(&self) -> usize {
        self.next.len() * (4 + 4 + 8 + core::mem::size_of::<usize>() + 4)
    }

    fn link(&mut self, node: usize, key: f64) -> Result<()> {
        let bucket = self.circle.place(key, self.len == 0)?;
        let slot = self.circle.slot(bucket);
        let n = node as u32;
        match self.order {
            BucketOrder::Lifo => {
                let head = self.heads[slot];
                self.next[node] = head;
                self.prev[node] = NIL;
                if head != NIL {
                    self.prev[head as usize] = n;
                } else {
                    self.tails[slot] = n;
                }
                self.heads[slot] = n;
            }
            BucketOrder::Fifo => {
                let tail = self.tails[slot];
                self.prev[node] = tail;
                self.next[node] = NIL;
                if tail != NIL {
                    self.next[tail as usize] = n;
                } else {
                    self.heads[slot] = n;
                }
                self.tails[slot] = n;
            }
        }
        self.keys[node] = key;
        self.buckets_of[node] = bucket;
        self.slot_of[node] = slot as u32;
        self.counts[slot] += 1;
        self.len += 1;
        Ok(())
    }

    fn unlink(&mut self, node: usize) {
        let slot = self.slot_of[node] as usize;
        let (p, n) = (self.prev[node], self.next[node]);
        if p != NIL {
            self.next[p as usize] = n;
        } else {
            self.heads[slot] = n;
        }
        if n != NIL {
            self.prev[n as usize] = p;
        } else {
            self.tails[slot] = p;
        }
        self.next[node] = NIL;
        self.prev[node] = NIL;
        self.slot_of[node] = NIL;
        self.counts[slot] -= 1;
        self.len -= 1;
    }
}

impl MonotoneQueue for StaticBucketQueue {
    fn insert(&mut self, node: usize, key: f64) -> Result<()> {
        check_key(key)?;
        if node >= self.next.len() {
            return Err(Error::usage("node index out of range"));
        }
        if self.slot_of[node] != NIL {
            return Err(Error::usage("node is already queued"));
        }
        self.link(node, key)
    }

    fn extract_min(&mut self) -> Result<QueueEntry> {
        if self.len == 0 {
            return Err(Error::EmptyQueue);
        }
        loop {
            let slot = self.circle.slot(self.circle.cursor);
            let head = self.heads[slot];
            if head != NIL {
                let node = head as usize;
                self.unlink(node);
                return Ok(QueueEntry {
                    node,
                    key: self.keys[node],
                });
            }
            self.circle.cursor += 1;
        }
    }

    fn decrease_key(&mut self, node: usize, new_key: f64) -> Result<()> {
        if !self.contains(node) {
            return Err(Error::usage("node is not on the queue"));
        }
        check_new_key(self.keys[node], new_key)?;
        self.unlink(node);
        self.link(node, new_key)
    }

    #[inline]
    fn contains(&self, node: usize) -> bool {
        self.slot_of.get(node).is_some_and(|&s| s != NIL)
    }

    fn tracks_nodes(&self) -> bool {
        true
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
            occupancy: (0..b).map(|i| self.counts[(first + i) % b]).collect(),
        })
    }

    fn check_invariants(&self) -> core::result::Result<(), String> {
        let b = self.circle.buckets;
        let mut total = 0;
        for slot in 0..b {
            let mut count = 0;
            let mut prev = NIL;
            let mut cur = self.heads[slot];
            while cur != NIL {
                let node = cur as usize;
                if self.prev[node] != prev {
                    return Err(format!("broken back link at node {node}"));
                }
                if self.slot_of[node] as usize != slot || self.buckets_of[node] % b != slot {
                    return Err(format!("node {node} linked into wrong slot {slot}"));
                }
                let bucket = self.buckets_of[node];
                let cursor = self.circle.cursor;
                if !(cursor..cursor + b).contains(&bucket) {
                    return Err(format!("bucket {bucket} outside window at {cursor}"));
                }
                count += 1;
                prev = cur;
                cur = self.next[node];
            }
            if self.tails[slot] != prev {
                return Err(format!("tail of slot {slot} is stale"));
            }
            if count != self.counts[slot] {
                return Err(format!("slot {slot} count mismatch"));
            }
            total += count as usize;
        }
        if total != self.len {
            return Err(format!("lists hold {total} nodes, len {}", self.len));
        }
        let members = self.slot_of.iter().filter(|&&s| s != NIL).count();
        if members != self.len {
            return Err("membership array disagrees with lists".into());
        }
        Ok(())
    }
}

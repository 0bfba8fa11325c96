//! Implicit d-ary min-heap.
//!
//! Stored 0-based: the children of position `i` are `d*i + 1 ..= d*i + d`
//! and its parent is `(i - 1) / d`, which is the 1-based layout of
//! [`super::heap_child_parent`] shifted by one.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{check_key, check_new_key, MonotoneQueue, QueueEntry, Tracker};
use crate::error::{Error, Result};

pub(crate) trait Keyed: Copy {
    fn key(&self) -> f64;
    fn node(&self) -> usize;
    fn set_key(&mut self, key: f64);
}

impl Keyed for QueueEntry {
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

/// Array heap that reports every position change through `moved`.
#[derive(Debug, Clone)]
pub(crate) struct HeapVec<E> {
    arity: usize,
    items: Vec<E>,
}

impl<E: Keyed> HeapVec<E> {
    pub(crate) fn new(arity: usize) -> Self {
        HeapVec {
            arity,
            items: Vec::new(),
        }
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.items.len()
    }

    #[inline]
    pub(crate) fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> Option<&E> {
        self.items.get(i)
    }

    pub(crate) fn items(&self) -> &[E] {
        &self.items
    }

    pub(crate) fn push(&mut self, item: E, moved: &mut impl FnMut(usize, usize)) {
        self.items.push(item);
        let last = self.items.len() - 1;
        self.sift_up(last, moved);
    }

    pub(crate) fn pop_min(&mut self, moved: &mut impl FnMut(usize, usize)) -> Option<E> {
        if self.items.is_empty() {
            return None;
        }
        Some(self.remove_at(0, moved))
    }

    /// Removes the item at `i`, restoring heap order.
    pub(crate) fn remove_at(&mut self, i: usize, moved: &mut impl FnMut(usize, usize)) -> E {
        let removed = self.items.swap_remove(i);
        if i < self.items.len() {
            moved(self.items[i].node(), i);
            let at = self.sift_up(i, moved);
            if at == i {
                self.sift_down(i, moved);
            }
        }
        removed
    }

    pub(crate) fn decrease_at(&mut self, i: usize, key: f64, moved: &mut impl FnMut(usize, usize)) {
        self.items[i].set_key(key);
        self.sift_up(i, moved);
    }

    /// Moves the item at `i` towards the root; returns its final position.
    fn sift_up(&mut self, mut i: usize, moved: &mut impl FnMut(usize, usize)) -> usize {
        let item = self.items[i];
        let key = item.key();
        while i > 0 {
            let parent = (i - 1) / self.arity;
            if self.items[parent].key() <= key {
                break;
            }
            self.items[i] = self.items[parent];
            moved(self.items[i].node(), i);
            i = parent;
        }
        self.items[i] = item;
        moved(item.node(), i);
        i
    }

    fn sift_down(&mut self, mut i: usize, moved: &mut impl FnMut(usize, usize)) {
        let len = self.items.len();
        let item = self.items[i];
        let key = item.key();
        loop {
            let first = self.arity * i + 1;
            if first >= len {
                break;
            }
            let last = (first + self.arity).min(len);
            let mut best = first;
            let mut best_key = self.items[first].key();
            for c in first + 1..last {
                let k = self.items[c].key();
                if k < best_key {
                    best = c;
                    best_key = k;
                }
            }
            if best_key >= key {
                break;
            }
            self.items[i] = self.items[best];
            moved(self.items[i].node(), i);
            i = best;
        }
        self.items[i] = item;
        moved(item.node(), i);
    }

    /// First position violating heap order, if any.
    pub(crate) fn order_violation(&self) -> Option<usize> {
        (1..self.items.len()).find(|&i| self.items[(i - 1) / self.arity].key() > self.items[i].key())
    }
}

/// d-ary heap with pluggable node tracking.
#[derive(Debug, Clone)]
pub struct DHeap<T> {
    heap: HeapVec<QueueEntry>,
    tracker: T,
}

impl<T: Tracker> DHeap<T> {
    pub fn new(arity: usize, tracker: T) -> Self {
        assert!(arity >= 2, "heap arity must be at least 2");
        DHeap {
            heap: HeapVec::new(arity),
            tracker,
        }
    }

    pub fn arity(&self) -> usize {
        self.heap.arity
    }

    pub fn tracker(&self) -> &T {
        &self.tracker
    }
}

impl<T: Tracker> MonotoneQueue for DHeap<T> {
    fn insert(&mut self, node: usize, key: f64) -> Result<()> {
        check_key(key)?;
        if T::ACTIVE && self.tracker.get(node).is_some() {
            return Err(Error::usage("node is already queued"));
        }
        let tracker = &mut self.tracker;
        self.heap
            .push(QueueEntry { node, key }, &mut |n, p| tracker.set(n, p));
        Ok(())
    }

    fn extract_min(&mut self) -> Result<QueueEntry> {
        let tracker = &mut self.tracker;
        let e = self
            .heap
            .pop_min(&mut |n, p| tracker.set(n, p))
            .ok_or(Error::EmptyQueue)?;
        self.tracker.remove(e.node);
        Ok(e)
    }

    fn decrease_key(&mut self, node: usize, new_key: f64) -> Result<()> {
        if !T::ACTIVE {
            return Err(Error::usage("decrease-key needs node tracking"));
        }
        let pos = self
            .tracker
            .get(node)
            .ok_or_else(|| Error::usage("node is not on the queue"))?;
        check_new_key(self.heap.items[pos].key, new_key)?;
        let tracker = &mut self.tracker;
        self.heap.decrease_at(pos, new_key, &mut |n, p| tracker.set(n, p));
        Ok(())
    }

    #[inline]
    fn contains(&self, node: usize) -> bool {
        T::ACTIVE && self.tracker.get(node).is_some()
    }

    fn tracks_nodes(&self) -> bool {
        T::ACTIVE
    }

    #[inline]
    fn len(&self) -> usize {
        self.heap.len()
    }

    fn check_invariants(&self) -> core::result::Result<(), String> {
        if let Some(i) = self.heap.order_violation() {
            return Err(format!("heap order violated at position {i}"));
        }
        if T::ACTIVE {
            if self.tracker.tracked() != self.heap.len() {
                return Err(format!(
                    "tracker holds {} nodes, heap {}",
                    self.tracker.tracked(),
                    self.heap.len()
                ));
            }
            for (i, e) in self.heap.items().iter().enumerate() {
                if self.tracker.get(e.node) != Some(i) {
                    return Err(format!("node {} at {i} tracked elsewhere", e.node));
                }
            }
        }
        Ok(())
    }
}

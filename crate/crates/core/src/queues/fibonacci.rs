//! Fibonacci heap over an index arena.
//!
//! Sibling lists are circular and doubly linked. Freed arena slots are
//! reused, so the tracker stores arena handles.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{check_key, check_new_key, MonotoneQueue, QueueEntry, Tracker};
use crate::error::{Error, Result};

const NIL: usize = usize::MAX;

#[derive(Debug, Clone)]
struct FibNode {
    key: f64,
    item: usize,
    parent: usize,
    child: usize,
    left: usize,
    right: usize,
    degree: usize,
    marked: bool,
}

#[derive(Debug, Clone)]
pub struct FibonacciHeap<T> {
    nodes: Vec<FibNode>,
    free: Vec<usize>,
    min: usize,
    len: usize,
    tracker: T,
    scratch: Vec<usize>,
}

impl<T: Tracker> FibonacciHeap<T> {
    pub fn new(tracker: T) -> Self {
        FibonacciHeap {
            nodes: Vec::new(),
            free: Vec::new(),
            min: NIL,
            len: 0,
            tracker,
            scratch: Vec::new(),
        }
    }

    fn alloc(&mut self, key: f64, item: usize) -> usize {
        let node = FibNode {
            key,
            item,
            parent: NIL,
            child: NIL,
            left: NIL,
            right: NIL,
            degree: 0,
            marked: false,
        };
        let h = match self.free.pop() {
            Some(h) => {
                self.nodes[h] = node;
                h
            }
            None => {
                self.nodes.push(node);
                self.nodes.len() - 1
            }
        };
        self.nodes[h].left = h;
        self.nodes[h].right = h;
        h
    }

    /// Splices the single node `h` into the circular list containing `at`.
    fn splice(&mut self, at: usize, h: usize) {
        let right = self.nodes[at].right;
        self.nodes[h].left = at;
        self.nodes[h].right = right;
        self.nodes[right].left = h;
        self.nodes[at].right = h;
    }

    fn unlink(&mut self, h: usize) {
        let (l, r) = (self.nodes[h].left, self.nodes[h].right);
        self.nodes[l].right = r;
        self.nodes[r].left = l;
        self.nodes[h].left = h;
        self.nodes[h].right = h;
    }

    fn add_root(&mut self, h: usize) {
        self.nodes[h].parent = NIL;
        if self.min == NIL {
            self.min = h;
        } else {
            self.splice(self.min, h);
            if self.nodes[h].key < self.nodes[self.min].key {
                self.min = h;
            }
        }
    }

    fn siblings(&self, start: usize, out: &mut Vec<usize>) {
        out.clear();
        if start == NIL {
            return;
        }
        let mut h = start;
        loop {
            out.push(h);
            h = self.nodes[h].right;
            if h == start {
                break;
            }
        }
    }

    /// Makes root `child` a child of root `parent`.
    fn link(&mut self, child: usize, parent: usize) {
        self.unlink(child);
        let first = self.nodes[parent].child;
        if first == NIL {
            self.nodes[parent].child = child;
        } else {
            self.splice(first, child);
        }
        self.nodes[child].parent = parent;
        self.nodes[child].marked = false;
        self.nodes[parent].degree += 1;
    }

    fn consolidate(&mut self) {
        let mut roots = core::mem::take(&mut self.scratch);
        self.siblings(self.min, &mut roots);
        let mut by_degree: Vec<usize> = vec![NIL; degree_bound(self.len) + 2];
        for &r in &roots {
            let mut x = r;
            let mut d = self.nodes[x].degree;
            loop {
                if d >= by_degree.len() {
                    by_degree.resize(d + 1, NIL);
                }
                let y = by_degree[d];
                if y == NIL {
                    break;
                }
                let (parent, child) = if self.nodes[y].key < self.nodes[x].key {
                    (y, x)
                } else {
                    (x, y)
                };
                self.link(child, parent);
                x = parent;
                by_degree[d] = NIL;
                d += 1;
            }
            by_degree[d] = x;
        }
        self.min = NIL;
        for &h in by_degree.iter().filter(|&&h| h != NIL) {
            if self.min == NIL || self.nodes[h].key < self.nodes[self.min].key {
                self.min = h;
            }
        }
        self.scratch = roots;
    }

    fn cut(&mut self, h: usize, parent: usize) {
        if self.nodes[parent].child == h {
            let next = self.nodes[h].right;
            self.nodes[parent].child = if next == h { NIL } else { next };
        }
        self.unlink(h);
        self.nodes[parent].degree -= 1;
        self.nodes[h].marked = false;
        self.add_root(h);
    }

    fn cascading_cut(&mut self, mut h: usize) {
        loop {
            let parent = self.nodes[h].parent;
            if parent == NIL {
                return;
            }
            if !self.nodes[h].marked {
                self.nodes[h].marked = true;
                return;
            }
            self.cut(h, parent);
            h = parent;
        }
    }

    /// Whether every root has a distinct degree; holds right after
    /// [`MonotoneQueue::extract_min`].
    pub fn roots_have_distinct_degrees(&self) -> bool {
        let mut roots = Vec::new();
        self.siblings(self.min, &mut roots);
        let mut degrees: Vec<usize> = roots.iter().map(|&r| self.nodes[r].degree).collect();
        degrees.sort_unstable();
        degrees.windows(2).all(|w| w[0] != w[1])
    }

    pub fn max_degree(&self) -> usize {
        let mut all = Vec::new();
        let mut stack = Vec::new();
        self.siblings(self.min, &mut stack);
        let mut max = 0;
        while let Some(h) = stack.pop() {
            max = max.max(self.nodes[h].degree);
            self.siblings(self.nodes[h].child, &mut all);
            stack.extend_from_slice(&all);
        }
        max
    }
}

/// `floor(log_phi(n))`, the largest possible degree in an `n`-node heap.
pub(crate) fn degree_bound(n: usize) -> usize {
    // Smallest subtree of degree k has F(k+2) >= phi^k nodes.
    let (mut a, mut b) = (1usize, 2usize);
    let mut k = 0;
    while b <= n {
        let next = a.saturating_add(b);
        a = b;
        b = next;
        k += 1;
    }
    k
}

impl<T: Tracker> MonotoneQueue for FibonacciHeap<T> {
    fn insert(&mut self, node: usize, key: f64) -> Result<()> {
        check_key(key)?;
        if T::ACTIVE && self.tracker.get(node).is_some() {
            return Err(Error::usage("node is already queued"));
        }
        let h = self.alloc(key, node);
        self.add_root(h);
        self.len += 1;
        self.tracker.set(node, h);
        Ok(())
    }

    fn extract_min(&mut self) -> Result<QueueEntry> {
        let z = self.min;
        if z == NIL {
            return Err(Error::EmptyQueue);
        }
        let mut children = core::mem::take(&mut self.scratch);
        self.siblings(self.nodes[z].child, &mut children);
        for &c in &children {
            self.unlink(c);
            self.nodes[c].parent = NIL;
            self.splice(z, c);
        }
        self.scratch = children;
        self.nodes[z].child = NIL;
        let next = self.nodes[z].right;
        self.unlink(z);
        self.len -= 1;
        if next == z {
            self.min = NIL;
        } else {
            self.min = next;
            self.consolidate();
        }
        let entry = QueueEntry {
            node: self.nodes[z].item,
            key: self.nodes[z].key,
        };
        self.free.push(z);
        self.tracker.remove(entry.node);
        Ok(entry)
    }

    fn decrease_key(&mut self, node: usize, new_key: f64) -> Result<()> {
        if !T::ACTIVE {
            return Err(Error::usage("decrease-key needs node tracking"));
        }
        let h = self
            .tracker
            .get(node)
            .ok_or_else(|| Error::usage("node is not on the queue"))?;
        check_new_key(self.nodes[h].key, new_key)?;
        self.nodes[h].key = new_key;
        let parent = self.nodes[h].parent;
        if parent != NIL && new_key < self.nodes[parent].key {
            self.cut(h, parent);
            self.cascading_cut(parent);
        }
        if new_key < self.nodes[self.min].key {
            self.min = h;
        }
        Ok(())
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

    fn check_invariants(&self) -> core::result::Result<(), String> {
        let mut roots = Vec::new();
        self.siblings(self.min, &mut roots);
        let mut count = 0;
        let mut stack: Vec<usize> = roots.clone();
        let mut kids = Vec::new();
        for &r in &roots {
            if self.nodes[r].parent != NIL {
                return Err(format!("root {r} has a parent"));
            }
            if self.nodes[r].key < self.nodes[self.min].key {
                return Err("min pointer is not the smallest root".into());
            }
        }
        while let Some(h) = stack.pop() {
            count += 1;
            let n = &self.nodes[h];
            if self.nodes[n.right].left != h || self.nodes[n.left].right != h {
                return Err(format!("broken sibling links at {h}"));
            }
            self.siblings(n.child, &mut kids);
            if kids.len() != n.degree {
                return Err(format!("node {h} degree {} but {} children", n.degree, kids.len()));
            }
            for &c in &kids {
                if self.nodes[c].parent != h {
                    return Err(format!("child {c} has wrong parent"));
                }
                if self.nodes[c].key < n.key {
                    return Err(format!("heap order violated below {h}"));
                }
            }
            if T::ACTIVE && self.tracker.get(n.item) != Some(h) {
                return Err(format!("item {} not tracked at handle {h}", n.item));
            }
            stack.extend_from_slice(&kids);
        }
        if count != self.len {
            return Err(format!("reachable {count} nodes, len {}", self.len));
        }
        if T::ACTIVE && self.tracker.tracked() != self.len {
            return Err("tracker size differs from heap size".into());
        }
        if self.len > 0 && self.max_degree() > degree_bound(self.len) {
            return Err(format!(
                "degree {} exceeds log_phi bound {}",
                self.max_degree(),
                degree_bound(self.len)
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::queues::{NoTracking, PositionArray};

    #[test]
    fn degree_bound_values() {
        assert_eq!(degree_bound(1), 0);
        assert_eq!(degree_bound(2), 1);
        assert_eq!(degree_bound(3), 2);
        assert_eq!(degree_bound(5), 3);
        assert_eq!(degree_bound(7), 3);
        assert_eq!(degree_bound(8), 4);
    }

    #[test]
    fn orders_and_consolidates() {
        let mut h = FibonacciHeap::new(NoTracking);
        for (i, k) in [5.0, 3.0, 8.0, 1.0, 9.0, 2.0, 7.0].into_iter().enumerate() {
            h.insert(i, k).unwrap();
        }
        let mut out = Vec::new();
        while let Ok(e) = h.extract_min() {
            h.check_invariants().unwrap();
            assert!(h.roots_have_distinct_degrees());
            out.push(e.key);
        }
        assert_eq!(out, [1.0, 2.0, 3.0, 5.0, 7.0, 8.0, 9.0]);
    }

    #[test]
    fn decrease_below_parent_cuts() {
        let mut h = FibonacciHeap::new(PositionArray::new(16));
        for i in 0..9 {
            h.insert(i, 10.0 + i as f64).unwrap();
        }
        // Build trees.
        assert_eq!(h.extract_min().unwrap().node, 0);
        let deep = (1..9).find(|&i| {
            let handle = h.tracker.get(i).unwrap();
            h.nodes[handle].parent != NIL
        });
        let node = deep.expect("consolidation created children");
        h.decrease_key(node, 0.5).unwrap();
        h.check_invariants().unwrap();
        let handle = h.tracker.get(node).unwrap();
        assert_eq!(h.nodes[handle].parent, NIL);
        assert_eq!(h.extract_min().unwrap(), QueueEntry { node, key: 0.5 });
    }
}

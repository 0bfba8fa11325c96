//! Node tracking: where (if anywhere) a node currently sits in a queue.

use alloc::vec;
use alloc::vec::Vec;

use super::{hash_key, HashKind};
use crate::grid::Dims;

const ABSENT: usize = usize::MAX;

/// Maps a node to an opaque, queue-defined position.
pub trait Tracker {
    /// `false` for [`NoTracking`]; lets queues skip bookkeeping statically.
    const ACTIVE: bool;

    fn get(&self, node: usize) -> Option<usize>;
    fn set(&mut self, node: usize, pos: usize);
    fn remove(&mut self, node: usize);
    /// Number of nodes currently tracked.
    fn tracked(&self) -> usize;
}

/// No helper structure; queues may hold duplicates.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoTracking;

impl Tracker for NoTracking {
    const ACTIVE: bool = false;

    #[inline(always)]
    fn get(&self, _: usize) -> Option<usize> {
        None
    }
    #[inline(always)]
    fn set(&mut self, _: usize, _: usize) {}
    #[inline(always)]
    fn remove(&mut self, _: usize) {}
    fn tracked(&self) -> usize {
        0
    }
}

/// One slot per node holding its position.
#[derive(Debug, Clone)]
pub struct PositionArray {
    pos: Vec<usize>,
    tracked: usize,
}

impl PositionArray {
    pub fn new(node_count: usize) -> Self {
        PositionArray {
            pos: vec![ABSENT; node_count],
            tracked: 0,
        }
    }
}

impl Tracker for PositionArray {
    const ACTIVE: bool = true;

    #[inline]
    fn get(&self, node: usize) -> Option<usize> {
        match self.pos[node] {
            ABSENT => None,
            p => Some(p),
        }
    }

    #[inline]
    fn set(&mut self, node: usize, pos: usize) {
        if self.pos[node] == ABSENT {
            self.tracked += 1;
        }
        self.pos[node] = pos;
    }

    #[inline]
    fn remove(&mut self, node: usize) {
        if self.pos[node] != ABSENT {
            self.tracked -= 1;
            self.pos[node] = ABSENT;
        }
    }

    fn tracked(&self) -> usize {
        self.tracked
    }
}

/// Chained hash table keyed by a coordinate hash; lookups scan one bin.
#[derive(Debug, Clone)]
pub struct HashTracker {
    kind: HashKind,
    dims: Dims,
    bins: Vec<Vec<(usize, usize)>>,
    tracked: usize,
}

impl HashTracker {
    pub fn new(kind: HashKind, table_size: usize, dims: Dims) -> Self {
        HashTracker {
            kind,
            dims,
            bins: vec![Vec::new(); table_size.max(1)],
            tracked: 0,
        }
    }

    #[inline]
    fn bin(&self, node: usize) -> usize {
        hash_key(
            self.kind,
            self.dims.coord_unchecked(node),
            &self.dims,
            self.bins.len(),
        )
    }

    pub fn table_size(&self) -> usize {
        self.bins.len()
    }

    /// Longest chain; a collision diagnostic.
    pub fn longest_bin(&self) -> usize {
        self.bins.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl Tracker for HashTracker {
    const ACTIVE: bool = true;

    fn get(&self, node: usize) -> Option<usize> {
        self.bins[self.bin(node)]
            .iter()
            .find(|(n, _)| *n == node)
            .map(|&(_, p)| p)
    }

    fn set(&mut self, node: usize, pos: usize) {
        let b = self.bin(node);
        let bin = &mut self.bins[b];
        match bin.iter_mut().find(|(n, _)| *n == node) {
            Some(entry) => entry.1 = pos,
            None => {
                bin.push((node, pos));
                self.tracked += 1;
            }
        }
    }

    fn remove(&mut self, node: usize) {
        let b = self.bin(node);
        let bin = &mut self.bins[b];
        if let Some(i) = bin.iter().position(|(n, _)| *n == node) {
            bin.swap_remove(i);
            self.tracked -= 1;
        }
    }

    fn tracked(&self) -> usize {
        self.tracked
    }
}

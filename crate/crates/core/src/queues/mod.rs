//! Monotone min-priority queues.
//!
//! Every family implements [`MonotoneQueue`]. Keys are path costs at
//! insertion time and nodes are linear cell indices. The bucket families
//! assume monotone use, as in label-setting search: every inserted key is
//! at least the last extracted key and at most that key plus the maximum
//! arc weight.
//!
//! | family              | exact | tracking                      |
//! |---------------------|-------|-------------------------------|
//! | d-ary heap          | yes   | none, position array, hash    |
//! | Fibonacci heap      | yes   | none, position array, hash    |
//! | Dial                | yes   | none, position array          |
//! | Untidy              | no    | none, position array          |
//! | hierarchical heap   | yes   | none, position array          |
//! | Dial / Untidy static| as above | intrinsic per-node links   |

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;
use core::str::FromStr;

use crate::cost::{CostConstants, CostFunctionSpec};
use crate::error::{Error, Result};
use crate::grid::{Coord, Dims};

mod bucket;
mod dheap;
mod fibonacci;
mod hheap;
mod static_bucket;
pub mod tracking;

pub use bucket::BucketQueue;
pub use dheap::DHeap;
pub use fibonacci::FibonacciHeap;
pub use hheap::HierarchicalHeap;
pub use static_bucket::StaticBucketQueue;
pub use tracking::{HashTracker, NoTracking, PositionArray, Tracker};

/// A node with the key it had when it was inserted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueueEntry {
    pub node: usize,
    pub key: f64,
}

/// Coordinate hash functions for hash-table tracking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HashKind {
    Lin,
    Sum,
    Prod,
    Xor,
}

impl HashKind {
    /// Table sizes used for the published comparisons.
    pub fn default_table_size(&self, is_3d: bool) -> usize {
        match (self, is_3d) {
            (HashKind::Lin | HashKind::Prod, false) => 512,
            (HashKind::Lin | HashKind::Prod, true) => 8191,
            (HashKind::Sum, false) => 512,
            (HashKind::Sum, true) => 768,
            (HashKind::Xor, _) => 256,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            HashKind::Lin => "LIN",
            HashKind::Sum => "SUM",
            HashKind::Prod => "PROD",
            HashKind::Xor => "XOR",
        }
    }
}

/// Hash bin of a coordinate. `c1, c2, c3` are x, y, z; 2D grids drop every
/// `c3` term.
pub fn hash_key(kind: HashKind, c: Coord, dims: &Dims, table_size: usize) -> usize {
    let (c1, c2, c3) = (c.x, c.y, c.z);
    let raw = match (kind, dims.is_3d()) {
        (HashKind::Lin, true) => (c3 * dims.height() + c2) * dims.width() + c1,
        (HashKind::Lin, false) => c2 * dims.width() + c1,
        (HashKind::Sum, true) => c3 + c2 + c1,
        (HashKind::Sum, false) => c2 + c1,
        (HashKind::Prod, true) => c3 * c2 * c1,
        (HashKind::Prod, false) => c2 * c1,
        (HashKind::Xor, true) => c3 ^ c2 ^ c1,
        (HashKind::Xor, false) => c2 ^ c1,
    };
    raw % table_size
}

/// Children and parent of the node at 1-based array position `i` in a
/// `d`-ary heap. The root has no parent.
pub fn heap_child_parent(d: usize, i: usize) -> (RangeInclusive<usize>, Option<usize>) {
    assert!(d >= 2 && i >= 1, "heap_child_parent needs d >= 2 and i >= 1");
    if d == 2 {
        (2 * i..=2 * i + 1, (i > 1).then_some(i / 2))
    } else {
        (d * (i - 1) + 2..=d * i + 1, (i > 1).then(|| (i - 2) / d + 1))
    }
}

/// Logical bucket of `key` in a circular queue with `buckets` buckets
/// spanning `max_arc_weight`: `floor(key * (B - 1) / C_m)`. The physical
/// slot is the logical bucket modulo `buckets`.
///
/// The product is formed before dividing so that keys on bucket
/// boundaries (integers, halves) land exactly on their bucket.
#[inline]
pub fn bucket_index(key: f64, max_arc_weight: f64, buckets: usize) -> usize {
    let highest = (buckets - 1) as f64;
    // Truncation equals floor for non-negative keys.
    (key * highest / max_arc_weight) as usize
}

/// Bucket-occupancy snapshot of a bucket queue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadSample {
    /// Solver iteration at which the sample was taken.
    pub iteration: u64,
    /// Logical bucket of `occupancy[0]`; later entries follow in order.
    pub first_bucket: usize,
    /// Node count per bucket.
    pub occupancy: Vec<u32>,
}

impl SpreadSample {
    pub fn total(&self) -> usize {
        self.occupancy.iter().map(|&c| c as usize).sum()
    }

    /// Share of non-empty buckets, in percent.
    pub fn percent_non_empty(&self) -> f64 {
        if self.occupancy.is_empty() {
            return 0.0;
        }
        let used = self.occupancy.iter().filter(|&&c| c > 0).count();
        100.0 * used as f64 / self.occupancy.len() as f64
    }
}

/// Min-priority queue contract consumed by the best-first solver.
pub trait MonotoneQueue {
    /// Adds `node` with `key`. Tracking queues reject a node already queued.
    fn insert(&mut self, node: usize, key: f64) -> Result<()>;

    /// Removes an entry from the lowest non-empty position. Exact families
    /// return a globally minimal key.
    fn extract_min(&mut self) -> Result<QueueEntry>;

    /// Lowers the key of a queued node. Requires node tracking.
    fn decrease_key(&mut self, node: usize, new_key: f64) -> Result<()>;

    /// Whether the queue knows `node` is queued. Always `false` without
    /// tracking.
    fn contains(&self, node: usize) -> bool;

    /// Whether [`MonotoneQueue::contains`] and
    /// [`MonotoneQueue::decrease_key`] are available.
    fn tracks_nodes(&self) -> bool;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Bucket occupancy; bucket families only.
    fn spread(&self) -> Result<SpreadSample> {
        Err(Error::usage("spread is only defined for bucket queues"))
    }

    /// Structural self-check (heap order, bucket placement, tracker
    /// coherence). Linear in queue size; meant for tests.
    fn check_invariants(&self) -> core::result::Result<(), String>;
}

impl<Q: MonotoneQueue + ?Sized> MonotoneQueue for Box<Q> {
    fn insert(&mut self, node: usize, key: f64) -> Result<()> {
        (**self).insert(node, key)
    }
    fn extract_min(&mut self) -> Result<QueueEntry> {
        (**self).extract_min()
    }
    fn decrease_key(&mut self, node: usize, new_key: f64) -> Result<()> {
        (**self).decrease_key(node, new_key)
    }
    fn contains(&self, node: usize) -> bool {
        (**self).contains(node)
    }
    fn tracks_nodes(&self) -> bool {
        (**self).tracks_nodes()
    }
    fn len(&self) -> usize {
        (**self).len()
    }
    fn spread(&self) -> Result<SpreadSample> {
        (**self).spread()
    }
    fn check_invariants(&self) -> core::result::Result<(), String> {
        (**self).check_invariants()
    }
}

pub(crate) fn check_new_key(old: f64, new: f64) -> Result<()> {
    if new.is_nan() || new < 0.0 {
        return Err(Error::usage("keys must be non-negative"));
    }
    if new >= old {
        return Err(Error::usage(format!(
            "decrease-key needs a smaller key ({new} >= {old})"
        )));
    }
    Ok(())
}

pub(crate) fn check_key(key: f64) -> Result<()> {
    if key.is_nan() || key < 0.0 || key.is_infinite() {
        return Err(Error::usage("keys must be finite and non-negative"));
    }
    Ok(())
}

/// How queued nodes are located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrackingStrategy {
    None,
    PositionArray,
    Hash { kind: HashKind, table_size: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueueFamily {
    DHeap,
    Fibonacci,
    Dial,
    Untidy,
    HierarchicalHeap,
    DialStatic,
    UntidyStatic,
}

impl QueueFamily {
    pub fn is_bucket(&self) -> bool {
        !matches!(self, QueueFamily::DHeap | QueueFamily::Fibonacci)
    }

    /// Whether extractions are always globally minimal.
    pub fn is_exact(&self) -> bool {
        !matches!(self, QueueFamily::Untidy | QueueFamily::UntidyStatic)
    }

    pub fn needs_integer_keys(&self) -> bool {
        matches!(self, QueueFamily::Dial | QueueFamily::DialStatic)
    }
}

/// Order of nodes inside one bucket list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BucketOrder {
    /// Push and pop at the head.
    #[default]
    Lifo,
    /// Push at the tail, pop at the head.
    Fifo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QueueConfig {
    pub family: QueueFamily,
    pub tracking: TrackingStrategy,
    /// Heap arity for d-heaps and the per-bucket heaps of the
    /// hierarchical heap.
    pub arity: usize,
    /// Bucket count. `None` picks the cost definition's unique-cost count
    /// (`C_m + 1` for Dial).
    pub buckets: Option<usize>,
    pub order: BucketOrder,
}

impl QueueConfig {
    fn base(family: QueueFamily, tracking: TrackingStrategy) -> Self {
        QueueConfig {
            family,
            tracking,
            arity: 2,
            buckets: None,
            order: BucketOrder::Lifo,
        }
    }

    pub fn d_heap(arity: usize, tracking: TrackingStrategy) -> Self {
        QueueConfig {
            arity,
            ..Self::base(QueueFamily::DHeap, tracking)
        }
    }

    pub fn fibonacci(tracking: TrackingStrategy) -> Self {
        Self::base(QueueFamily::Fibonacci, tracking)
    }

    pub fn dial(order: BucketOrder, tracking: TrackingStrategy) -> Self {
        QueueConfig {
            order,
            ..Self::base(QueueFamily::Dial, tracking)
        }
    }

    pub fn untidy(buckets: Option<usize>, order: BucketOrder, tracking: TrackingStrategy) -> Self {
        QueueConfig {
            buckets,
            order,
            ..Self::base(QueueFamily::Untidy, tracking)
        }
    }

    pub fn hierarchical(buckets: Option<usize>, tracking: TrackingStrategy) -> Self {
        QueueConfig {
            buckets,
            ..Self::base(QueueFamily::HierarchicalHeap, tracking)
        }
    }

    pub fn dial_static(order: BucketOrder) -> Self {
        QueueConfig {
            order,
            ..Self::base(QueueFamily::DialStatic, TrackingStrategy::None)
        }
    }

    pub fn untidy_static(buckets: Option<usize>, order: BucketOrder) -> Self {
        QueueConfig {
            buckets,
            order,
            ..Self::base(QueueFamily::UntidyStatic, TrackingStrategy::None)
        }
    }

    pub fn with_buckets(mut self, buckets: Option<usize>) -> Self {
        self.buckets = buckets;
        self
    }

    pub fn with_arity(mut self, arity: usize) -> Self {
        self.arity = arity;
        self
    }

    /// Checks structural validity and compatibility with `spec`.
    pub fn validate(&self, spec: &CostFunctionSpec) -> Result<()> {
        use QueueFamily::*;
        if matches!(self.family, DHeap | HierarchicalHeap) && !(2..=64).contains(&self.arity) {
            return Err(Error::usage("heap arity must be in 2..=64"));
        }
        if self.buckets == Some(0) {
            return Err(Error::usage("bucket count must be at least 1"));
        }
        match (self.family, self.tracking) {
            (DialStatic | UntidyStatic, TrackingStrategy::None) => {}
            (DialStatic | UntidyStatic, _) => {
                return Err(Error::usage(
                    "static bucket queues track nodes intrinsically; tracking must be none",
                ))
            }
            (Dial | Untidy | HierarchicalHeap, TrackingStrategy::Hash { .. }) => {
                return Err(Error::usage("hash tracking is only supported for heaps"))
            }
            (_, TrackingStrategy::Hash { table_size: 0, .. }) => {
                return Err(Error::usage("hash table size must be positive"))
            }
            _ => {}
        }
        if self.family.needs_integer_keys() && !spec.has_integer_costs() {
            return Err(Error::invalid_cost(format!(
                "Dial's queue needs integer costs; {} does not produce them",
                spec.kind
            )));
        }
        Ok(())
    }

    /// Bucket count the queue will use for `constants`.
    pub fn resolved_buckets(&self, constants: &CostConstants) -> Result<usize> {
        match self.family {
            QueueFamily::Dial | QueueFamily::DialStatic => {
                let needed = constants.max_arc_weight as usize + 1;
                match self.buckets {
                    Some(b) if b < needed => Err(Error::usage(format!(
                        "Dial's queue needs at least {needed} buckets"
                    ))),
                    Some(b) => Ok(b),
                    None => Ok(needed),
                }
            }
            _ => Ok(self.buckets.unwrap_or(constants.unique_cost_buckets)),
        }
    }
}

/// Receives a concretely typed queue from [`with_queue`].
pub trait QueueVisitor {
    type Output;
    fn visit<Q: MonotoneQueue + 'static>(self, queue: Q) -> Self::Output;
}

/// Builds the queue described by `cfg` and hands it to `visitor`, so the
/// caller is monomorphised per queue type.
pub fn with_queue<V: QueueVisitor>(
    cfg: &QueueConfig,
    spec: &CostFunctionSpec,
    constants: &CostConstants,
    dims: &Dims,
    visitor: V,
) -> Result<V::Output> {
    cfg.validate(spec)?;
    let n = dims.len();
    let cm = constants.max_arc_weight;
    let b = cfg.resolved_buckets(constants)?;
    macro_rules! tracked {
        ($make:expr) => {
            match cfg.tracking {
                TrackingStrategy::None => visitor.visit($make(NoTracking)),
                TrackingStrategy::PositionArray => visitor.visit($make(PositionArray::new(n))),
                TrackingStrategy::Hash { kind, table_size } => {
                    visitor.visit($make(HashTracker::new(kind, table_size, *dims)))
                }
            }
        };
    }
    Ok(match cfg.family {
        QueueFamily::DHeap => tracked!(|t| DHeap::new(cfg.arity, t)),
        QueueFamily::Fibonacci => tracked!(FibonacciHeap::new),
        QueueFamily::Dial => tracked!(|t| BucketQueue::dial(b, cfg.order, t)),
        QueueFamily::Untidy => tracked!(|t| BucketQueue::untidy(b, cm, cfg.order, t)),
        QueueFamily::HierarchicalHeap => tracked!(|t| HierarchicalHeap::new(b, cm, cfg.arity, t)),
        QueueFamily::DialStatic => visitor.visit(StaticBucketQueue::dial(n, b, cfg.order)),
        QueueFamily::UntidyStatic => {
            visitor.visit(StaticBucketQueue::untidy(n, b, cm, cfg.order))
        }
    })
}

struct Boxer;

impl QueueVisitor for Boxer {
    type Output = Box<dyn MonotoneQueue>;
    fn visit<Q: MonotoneQueue + 'static>(self, queue: Q) -> Self::Output {
        Box::new(BoxedQueue(queue))
    }
}

struct BoxedQueue<Q>(Q);

impl<Q: MonotoneQueue> MonotoneQueue for BoxedQueue<Q> {
    fn insert(&mut self, node: usize, key: f64) -> Result<()> {
        self.0.insert(node, key)
    }
    fn extract_min(&mut self) -> Result<QueueEntry> {
        self.0.extract_min()
    }
    fn decrease_key(&mut self, node: usize, new_key: f64) -> Result<()> {
        self.0.decrease_key(node, new_key)
    }
    fn contains(&self, node: usize) -> bool {
        self.0.contains(node)
    }
    fn tracks_nodes(&self) -> bool {
        self.0.tracks_nodes()
    }
    fn len(&self) -> usize {
        self.0.len()
    }
    fn spread(&self) -> Result<SpreadSample> {
        self.0.spread()
    }
    fn check_invariants(&self) -> core::result::Result<(), String> {
        self.0.check_invariants()
    }
}

/// Type-erased queue for callers that do not need static dispatch.
pub fn build_queue(
    cfg: &QueueConfig,
    spec: &CostFunctionSpec,
    constants: &CostConstants,
    dims: &Dims,
) -> Result<Box<dyn MonotoneQueue>> {
    with_queue(cfg, spec, constants, dims, Boxer)
}

impl fmt::Display for BucketOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BucketOrder::Lifo => "lifo",
            BucketOrder::Fifo => "fifo",
        })
    }
}

impl FromStr for HashKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "LIN" => Ok(HashKind::Lin),
            "SUM" => Ok(HashKind::Sum),
            "PROD" => Ok(HashKind::Prod),
            "XOR" => Ok(HashKind::Xor),
            other => Err(Error::usage(format!("unknown hash kind `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{cost_constants, CostKind};

    #[test]
    fn heap_index_formulas() {
        assert_eq!(heap_child_parent(2, 3), (6..=7, Some(1)));
        assert_eq!(heap_child_parent(4, 3), (10..=13, Some(1)));
        assert_eq!(heap_child_parent(2, 1), (2..=3, None));
        // General-d formula agrees with the binary one at d = 2.
        for i in 2..100 {
            let (kids, parent) = heap_child_parent(2, i);
            assert_eq!(*kids.start(), 2 * (i - 1) + 2);
            assert_eq!(parent, Some((i - 2) / 2 + 1));
        }
    }

    #[test]
    fn parent_child_consistent() {
        for d in 2..9 {
            for i in 1..200 {
                for c in heap_child_parent(d, i).0 {
                    assert_eq!(heap_child_parent(d, c).1, Some(i));
                }
            }
        }
    }

    #[test]
    fn bucket_index_examples() {
        assert_eq!(bucket_index(0.0, 260.0, 261), 0);
        assert_eq!(bucket_index(260.0, 260.0, 261), 260);
        assert_eq!(bucket_index(1275.0, 1275.0, 2551), 2550);
        assert_eq!(bucket_index(129.5, 1275.0, 2551), 259);
        assert_eq!(bucket_index(130.0, 260.0, 261), 130);
        assert_eq!(bucket_index(10.0, 260.0, 2), 0);
        assert_eq!(bucket_index(5.0, 260.0, 2), 0);
        assert_eq!(bucket_index(1e6, 260.0, 1), 0);
    }

    #[test]
    fn integer_and_half_keys_hit_their_own_bucket() {
        for k in 0..5000u32 {
            assert_eq!(bucket_index(k as f64, 260.0, 261), k as usize);
            assert_eq!(bucket_index(k as f64 * 0.5, 1275.0, 2551), k as usize);
        }
    }

    #[test]
    fn hash_examples() {
        let dims = Dims::new3(256, 256, 256).unwrap();
        let c = Coord::new3(3, 5, 7);
        let origin = Coord::new3(0, 0, 0);
        for kind in [HashKind::Lin, HashKind::Sum, HashKind::Prod, HashKind::Xor] {
            assert_eq!(hash_key(kind, origin, &dims, 97), 0);
        }
        assert_eq!(hash_key(HashKind::Sum, c, &dims, 768), 15);
        assert_eq!(hash_key(HashKind::Prod, c, &dims, 8191), 105);
        assert_eq!(hash_key(HashKind::Xor, c, &dims, 256), 1);
        assert_eq!(hash_key(HashKind::Lin, c, &dims, 8191), 1339);
    }

    #[test]
    fn hash_2d_drops_third_coordinate() {
        let dims = Dims::new2(256, 256).unwrap();
        let c = Coord::new2(3, 5);
        assert_eq!(hash_key(HashKind::Lin, c, &dims, 512), (5 * 256 + 3) % 512);
        assert_eq!(hash_key(HashKind::Sum, c, &dims, 512), 8);
        assert_eq!(hash_key(HashKind::Prod, c, &dims, 512), 15);
        assert_eq!(hash_key(HashKind::Xor, c, &dims, 256), 6);
    }

    #[test]
    fn config_validation() {
        let docs = CostFunctionSpec::new(CostKind::Docs);
        let gm = CostFunctionSpec::new(CostKind::Graymat);
        let none = TrackingStrategy::None;
        assert!(matches!(
            QueueConfig::dial(BucketOrder::Lifo, none).validate(&gm),
            Err(Error::InvalidCost(_))
        ));
        assert!(matches!(
            QueueConfig::dial_static(BucketOrder::Lifo).validate(&gm),
            Err(Error::InvalidCost(_))
        ));
        assert!(QueueConfig::dial(BucketOrder::Lifo, none).validate(&docs).is_ok());
        assert!(QueueConfig::d_heap(1, none).validate(&docs).is_err());
        assert!(QueueConfig::untidy(Some(0), BucketOrder::Lifo, none).validate(&docs).is_err());
        let hash = TrackingStrategy::Hash {
            kind: HashKind::Sum,
            table_size: 8,
        };
        assert!(QueueConfig::untidy(None, BucketOrder::Lifo, hash).validate(&docs).is_err());
        assert!(QueueConfig::d_heap(2, hash).validate(&docs).is_ok());
        let mut s = QueueConfig::dial_static(BucketOrder::Lifo);
        s.tracking = TrackingStrategy::PositionArray;
        assert!(s.validate(&docs).is_err());
    }

    #[test]
    fn resolved_bucket_counts() {
        let docs = CostFunctionSpec::new(CostKind::Docs);
        let c = cost_constants(&docs, 255).unwrap();
        let none = TrackingStrategy::None;
        assert_eq!(QueueConfig::dial(BucketOrder::Lifo, none).resolved_buckets(&c).unwrap(), 261);
        assert!(QueueConfig::dial(BucketOrder::Lifo, none)
            .with_buckets(Some(100))
            .resolved_buckets(&c)
            .is_err());
        assert_eq!(QueueConfig::untidy(Some(7), BucketOrder::Lifo, none).resolved_buckets(&c).unwrap(), 7);
        assert_eq!(QueueConfig::hierarchical(None, none).resolved_buckets(&c).unwrap(), 261);
    }

    #[test]
    fn spread_rejected_for_heaps() {
        let docs = CostFunctionSpec::new(CostKind::Docs);
        let c = cost_constants(&docs, 255).unwrap();
        let dims = Dims::new2(4, 4).unwrap();
        let q = build_queue(&QueueConfig::d_heap(2, TrackingStrategy::None), &docs, &c, &dims).unwrap();
        assert!(matches!(q.spread(), Err(Error::Usage(_))));
    }
}

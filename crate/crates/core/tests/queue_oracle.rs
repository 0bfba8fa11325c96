//! Random operation sequences checked against a sorted multiset.

use gwdt_core::cost::cost_constants;
use gwdt_core::queues::{build_queue, BucketOrder, HashKind, MonotoneQueue};
use gwdt_core::{CostFunctionSpec, CostKind, Dims, QueueConfig, TrackingStrategy};
use proptest::prelude::*;

const NODES: usize = 64;

#[derive(Debug, Clone)]
enum Op {
    Insert { node: usize, offset: u32 },
    Decrease { pick: usize, by: u32 },
    Extract,
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        3 => (0..NODES, 0u32..=260).prop_map(|(node, offset)| Op::Insert { node, offset }),
        1 => (any::<usize>(), 1u32..200).prop_map(|(pick, by)| Op::Decrease { pick, by }),
        2 => Just(Op::Extract),
    ]
}

fn configs() -> Vec<QueueConfig> {
    let hash = TrackingStrategy::Hash {
        kind: HashKind::Sum,
        table_size: 7,
    };
    vec![
        QueueConfig::d_heap(2, TrackingStrategy::PositionArray),
        QueueConfig::d_heap(3, hash),
        QueueConfig::d_heap(7, TrackingStrategy::None),
        QueueConfig::fibonacci(TrackingStrategy::PositionArray),
        QueueConfig::fibonacci(hash),
        QueueConfig::dial(BucketOrder::Lifo, TrackingStrategy::PositionArray),
        QueueConfig::dial(BucketOrder::Fifo, TrackingStrategy::None),
        QueueConfig::dial_static(BucketOrder::Fifo),
        QueueConfig::hierarchical(Some(1), TrackingStrategy::PositionArray),
        QueueConfig::hierarchical(Some(17), TrackingStrategy::PositionArray),
        QueueConfig::hierarchical(None, TrackingStrategy::None),
        QueueConfig::untidy(Some(5), BucketOrder::Lifo, TrackingStrategy::PositionArray),
        QueueConfig::untidy_static(Some(40), BucketOrder::Fifo),
    ]
}

/// Applies `ops` to the queue and to a plain vector of live entries,
/// checking every extraction and the queue's invariants after each step.
fn replay(cfg: &QueueConfig, ops: &[Op]) -> Result<(), TestCaseError> {
    let spec = CostFunctionSpec::new(CostKind::Docs);
    let constants = cost_constants(&spec, 255).unwrap();
    let dims = Dims::new2(NODES, 1).unwrap();
    let buckets = cfg.resolved_buckets(&constants).unwrap();
    let slack = if cfg.family.is_exact() {
        0.0
    } else {
        constants.max_arc_weight / (buckets - 1).max(1) as f64
    };
    let mut q = build_queue(cfg, &spec, &constants, &dims).unwrap();
    let tracked = q.tracks_nodes();
    let mut live: Vec<(usize, f64)> = Vec::new();
    let mut floor = 0.0f64;
    for op in ops {
        match *op {
            Op::Insert { node, offset } => {
                if tracked && live.iter().any(|e| e.0 == node) {
                    prop_assert!(q.insert(node, floor + offset as f64).is_err());
                    continue;
                }
                let key = floor + offset as f64;
                q.insert(node, key).unwrap();
                live.push((node, key));
            }
            Op::Decrease { pick, by } => {
                if !tracked || live.is_empty() {
                    continue;
                }
                let i = pick % live.len();
                let (node, old) = live[i];
                let new = (old - by as f64).max(floor);
                if new >= old {
                    continue;
                }
                q.decrease_key(node, new).unwrap();
                live[i].1 = new;
            }
            Op::Extract => {
                if live.is_empty() {
                    prop_assert!(q.extract_min().is_err());
                    continue;
                }
                let min = live.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
                let got = q.extract_min().unwrap();
                let i = live
                    .iter()
                    .position(|&(n, k)| n == got.node && k == got.key);
                prop_assert!(i.is_some(), "{:?} returned an entry it never held", cfg.family);
                live.swap_remove(i.unwrap());
                prop_assert!(got.key - min <= slack, "{:?}: key {} vs min {}", cfg.family, got.key, min);
                if slack > 0.0 {
                    prop_assert!(got.key - min < slack);
                }
                floor = floor.max(got.key);
            }
        }
        prop_assert_eq!(q.len(), live.len());
        if let Err(e) = q.check_invariants() {
            return Err(TestCaseError::fail(format!("{:?}: {e}", cfg.family)));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_family_against_sorted_multiset(ops in prop::collection::vec(op(), 1..400)) {
        for cfg in configs() {
            replay(&cfg, &ops)?;
        }
    }
}

#[test]
fn drains_in_sorted_order() {
    let spec = CostFunctionSpec::new(CostKind::Docs);
    let constants = cost_constants(&spec, 255).unwrap();
    let dims = Dims::new2(NODES, 1).unwrap();
    let keys: Vec<f64> = (0..NODES).map(|i| ((i * 37) % 61) as f64).collect();
    for cfg in configs().into_iter().filter(|c| c.family.is_exact()) {
        let mut q = build_queue(&cfg, &spec, &constants, &dims).unwrap();
        for (n, &k) in keys.iter().enumerate() {
            q.insert(n, k).unwrap();
        }
        let mut out = Vec::new();
        while let Ok(e) = q.extract_min() {
            out.push(e.key);
        }
        let mut sorted = keys.clone();
        sorted.sort_by(f64::total_cmp);
        assert_eq!(out, sorted, "{:?}", cfg.family);
    }
}

use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::error::{Error, Result};
use crate::queues::{BucketOrder, HashKind, QueueConfig, QueueFamily, TrackingStrategy};

/// Order in which the propagation solver takes cells off its list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ListOrder {
    /// Depth-first.
    #[default]
    Lifo,
    /// Breadth-first.
    Fifo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Chamfer,
    Propagation { order: ListOrder, membership: bool },
    BestFirst(QueueConfig),
}

impl Algorithm {
    /// Short label, e.g. `HH_A` or `H_SUM`.
    pub fn label(&self) -> String {
        let tracked = |t: &TrackingStrategy| match t {
            TrackingStrategy::None => String::new(),
            TrackingStrategy::PositionArray => "A".into(),
            TrackingStrategy::Hash { kind, .. } => kind.name().into(),
        };
        let join = |base: &str, suffix: String| {
            if suffix.is_empty() {
                String::from(base)
            } else {
                format!("{base}_{suffix}")
            }
        };
        let ord = |o: BucketOrder| match o {
            BucketOrder::Lifo => "L",
            BucketOrder::Fifo => "F",
        };
        match self {
            Algorithm::Chamfer => "C".into(),
            Algorithm::Propagation { order, membership } => {
                let o = match order {
                    ListOrder::Lifo => "L",
                    ListOrder::Fifo => "F",
                };
                format!("P_{o}{}", if *membership { "A" } else { "" })
            }
            Algorithm::BestFirst(cfg) => match cfg.family {
                QueueFamily::DHeap => join("H", tracked(&cfg.tracking)),
                QueueFamily::Fibonacci => join("F", tracked(&cfg.tracking)),
                QueueFamily::HierarchicalHeap => join("HH", tracked(&cfg.tracking)),
                QueueFamily::Dial | QueueFamily::Untidy => {
                    let base = if cfg.family == QueueFamily::Dial { "D" } else { "U" };
                    let a = if cfg.tracking == TrackingStrategy::PositionArray { "A" } else { "" };
                    format!("{base}_{}{a}", ord(cfg.order))
                }
                QueueFamily::DialStatic => format!("D_S{}", ord(cfg.order)),
                QueueFamily::UntidyStatic => format!("U_S{}", ord(cfg.order)),
            },
        }
    }

    pub fn queue_config(&self) -> Option<&QueueConfig> {
        match self {
            Algorithm::BestFirst(cfg) => Some(cfg),
            _ => None,
        }
    }

    /// Whether the result always equals the exact transform.
    pub fn is_exact(&self) -> bool {
        match self {
            Algorithm::BestFirst(cfg) => cfg.family.is_exact(),
            _ => true,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Parses a method label: `C`, `P_L`, `P_F`, `P_LA`, `P_FA`, `H`, `H_A`,
/// `H_LIN`, `H_SUM`, `H_PROD`, `H_XOR`, `F`, `F_A`, `F_<hash>`, `D_L`,
/// `D_F`, `D_LA`, `D_FA`, `D_SL`, `D_SF`, `U_L`, `U_F`, `U_LA`, `U_FA`,
/// `U_SL`, `U_SF`, `HH`, `HH_A`. Hash tables get their default size for
/// the image rank. Heaps default to arity 2 and bucket queues to the cost
/// definition's bucket count; use [`QueueConfig::with_arity`] and
/// [`QueueConfig::with_buckets`] to override.
pub fn parse_label(label: &str, is_3d: bool) -> Result<Algorithm> {
    let up = label.trim().to_ascii_uppercase();
    let (base, suffix) = match up.split_once('_') {
        Some((b, s)) => (b, s),
        None => (up.as_str(), ""),
    };
    let unknown = || Error::usage(format!("unknown algorithm label `{label}`"));
    let heap_tracking = |s: &str| -> Result<TrackingStrategy> {
        Ok(match s {
            "" => TrackingStrategy::None,
            "A" => TrackingStrategy::PositionArray,
            h => {
                let kind: HashKind = h.parse().map_err(|_| unknown())?;
                TrackingStrategy::Hash {
                    kind,
                    table_size: kind.default_table_size(is_3d),
                }
            }
        })
    };
    let list = |s: &str| -> Result<(BucketOrder, bool, bool)> {
        let (stat, rest) = match s.strip_prefix('S') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let (order, rest) = match rest.as_bytes().first() {
            Some(b'L') => (BucketOrder::Lifo, &rest[1..]),
            Some(b'F') => (BucketOrder::Fifo, &rest[1..]),
            _ => return Err(unknown()),
        };
        match (rest, stat) {
            ("", _) => Ok((order, false, stat)),
            ("A", false) => Ok((order, true, false)),
            _ => Err(unknown()),
        }
    };
    let array = |a: bool| {
        if a {
            TrackingStrategy::PositionArray
        } else {
            TrackingStrategy::None
        }
    };
    Ok(match base {
        "C" if suffix.is_empty() => Algorithm::Chamfer,
        "P" => {
            let (order, membership, stat) = list(suffix)?;
            if stat {
                return Err(unknown());
            }
            let order = match order {
                BucketOrder::Lifo => ListOrder::Lifo,
                BucketOrder::Fifo => ListOrder::Fifo,
            };
            Algorithm::Propagation { order, membership }
        }
        "H" => Algorithm::BestFirst(QueueConfig::d_heap(2, heap_tracking(suffix)?)),
        "F" => Algorithm::BestFirst(QueueConfig::fibonacci(heap_tracking(suffix)?)),
        "HH" => match suffix {
            "" | "A" => Algorithm::BestFirst(QueueConfig::hierarchical(None, heap_tracking(suffix)?)),
            _ => return Err(unknown()),
        },
        "D" => {
            let (order, a, stat) = list(suffix)?;
            Algorithm::BestFirst(if stat {
                QueueConfig::dial_static(order)
            } else {
                QueueConfig::dial(order, array(a))
            })
        }
        "U" => {
            let (order, a, stat) = list(suffix)?;
            Algorithm::BestFirst(if stat {
                QueueConfig::untidy_static(None, order)
            } else {
                QueueConfig::untidy(None, order, array(a))
            })
        }
        _ => return Err(unknown()),
    })
}

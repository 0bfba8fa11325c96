//! Grey-weighted distance transforms on 2D and 3D 8-bit images.
//!
//! The crate is `no_std` (it only needs `alloc`) and contains the pure
//! algorithmic parts of the toolkit:
//!
//! * [`grid`]: images, coordinates, 8/26-connectivity and distance maps.
//! * [`cost`]: the GRAYMAT, DOCS and WDOCS arc weights, chamfer step
//!   weights, bucket-sizing constants and precomputed weight tables.
//! * [`queues`]: d-ary heaps, Fibonacci heap, Dial and Untidy bucket
//!   queues (dynamic and static-array flavours) and the hierarchical heap,
//!   each combinable with position-array or hash-table node tracking.
//! * [`solvers`]: iterative chamfer raster scans, label-correcting
//!   propagation and label-setting best-first search.
//! * [`oracle`]: an independent brute-force reference transform and map
//!   comparison metrics.
//! * [`synth`]: deterministic synthetic test images and seed grids.
//!
//! File formats, the benchmark harness and the command line front end live
//! in the companion `gwdt` crate.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cost;
mod error;
pub mod grid;
mod math;
pub mod oracle;
pub mod queues;
pub mod solvers;
pub mod synth;

pub use cost::{ArcWeights, CostConstants, CostFunctionSpec, CostKind, WeightTable};
pub use error::{Error, Result};
pub use grid::{Coord, Dims, DistanceMap, GreyImage, SeedSet, StepClass};
pub use queues::{QueueConfig, QueueEntry, QueueFamily, TrackingStrategy};
pub use solvers::{Algorithm, RunOptions, RunReport, SolverMode};

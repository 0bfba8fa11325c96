//! Distance-transform solvers.
//!
//! * [`chamfer`]: iterated forward/backward raster scans (label-correcting).
//! * [`propagate`]: LIFO or FIFO list propagation (label-correcting).
//! * [`best_first`]: label-setting search over any [`QueueConfig`].
//!
//! All solvers compute the seeded transform; the unseeded transform is the
//! seeded one with [`SeedSet::background`]. [`SolverMode`] adds dilation
//! (stop at a maximum distance) and route (stop once a target is final).

use alloc::vec::Vec;

use crate::cost::{ArcWeights, CostFunctionSpec, OnTheFly};
use crate::error::{Error, Result};
use crate::grid::{Coord, DistanceMap, GreyImage, Grid, SeedSet, UNREACHED};
use crate::queues::SpreadSample;

mod algorithm;
mod best_first;
mod chamfer;
mod propagate;

pub use algorithm::{parse_label, Algorithm, ListOrder};
pub use best_first::{best_first, best_first_with};
pub use chamfer::{chamfer_transform, chamfer_transform_with};
pub use propagate::{propagate, propagate_with};

/// What to compute from the seeds.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum SolverMode {
    /// Distances for every cell.
    #[default]
    Full,
    /// Cells farther than `max_distance` stay unreached.
    Dilation { max_distance: f64 },
    /// Stop once the distance of `target` is final.
    Route { target: Coord },
}

impl SolverMode {
    pub(crate) fn validate(&self, grid: &Grid) -> Result<()> {
        match *self {
            SolverMode::Full => Ok(()),
            SolverMode::Dilation { max_distance } => {
                if max_distance.is_nan() || max_distance < 0.0 {
                    Err(Error::usage("dilation distance must be non-negative"))
                } else {
                    Ok(())
                }
            }
            SolverMode::Route { target } => grid.dims().linear_index(target).map(|_| ()),
        }
    }
}

/// Per-run switches.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub mode: SolverMode,
    /// Fill [`RunReport::visits`].
    pub record_visits: bool,
    /// Fill [`RunReport::visit_log`].
    pub log_visits: bool,
    /// Take a queue spread sample every this many extractions (bucket
    /// queues only).
    pub spread_interval: Option<u64>,
    /// Abort label-correcting propagation after this many pops; defaults
    /// to `10_000 * cell count`.
    pub visit_budget: Option<u64>,
    /// Run the queue's self-check after every operation (slow).
    pub check_queue: bool,
}

impl RunOptions {
    pub fn with_mode(mode: SolverMode) -> Self {
        RunOptions {
            mode,
            ..Default::default()
        }
    }
}

/// Instrumentation of one solver run. Wall time is measured by callers.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    pub pops: u64,
    pub pushes: u64,
    /// Extractions of already-finalised cells (untracked queues only).
    pub stale_pops: u64,
    pub decrease_keys: u64,
    /// Distance-label improvements.
    pub updates: u64,
    /// Forward+backward pass pairs of the chamfer solver.
    pub chamfer_iterations: u64,
    pub peak_queue_len: usize,
    /// Non-stale extractions whose key was below the previous one.
    pub order_violations: u64,
    /// Times each cell was examined.
    pub visits: Option<Vec<u32>>,
    /// Extracted cells in order.
    pub visit_log: Option<Vec<usize>>,
    pub spread: Vec<SpreadSample>,
}

impl RunReport {
    /// Mean of [`RunReport::visits`], when recorded.
    pub fn mean_visits(&self) -> Option<f64> {
        self.visits.as_ref().map(|v| {
            let total: u64 = v.iter().map(|&c| c as u64).sum();
            total as f64 / v.len().max(1) as f64
        })
    }
}

/// Replays the extraction order of a run recorded with
/// [`RunOptions::log_visits`].
pub fn reconstruct_visit_order(report: &RunReport) -> Result<&[usize]> {
    report
        .visit_log
        .as_deref()
        .ok_or_else(|| Error::usage("run was not recorded with visit logging"))
}

pub(crate) fn check_inputs(grid: &Grid, seeds: &SeedSet, opts: &RunOptions) -> Result<()> {
    if seeds.dims() != grid.dims() {
        return Err(Error::usage("seed set and image dims differ"));
    }
    if seeds.is_empty() {
        return Err(Error::usage("seed set is empty"));
    }
    opts.mode.validate(grid)
}

pub(crate) fn seeded_map(grid: &Grid, seeds: &SeedSet) -> DistanceMap {
    let mut map = DistanceMap::unreached(*grid.dims());
    let g = map.values_mut();
    for &s in seeds.indices() {
        g[s] = 0.0;
    }
    map
}

/// Post-filter for label-correcting solvers, which always compute the
/// full transform.
pub(crate) fn apply_mode_filter(map: &mut DistanceMap, mode: &SolverMode) {
    if let SolverMode::Dilation { max_distance } = *mode {
        for v in map.values_mut() {
            if *v > max_distance {
                *v = UNREACHED;
            }
        }
    }
}

/// Runs `algo` with arc weights computed on the fly.
pub fn run(
    img: &GreyImage,
    seeds: &SeedSet,
    spec: &CostFunctionSpec,
    algo: &Algorithm,
    opts: &RunOptions,
) -> Result<(DistanceMap, RunReport)> {
    let grid = Grid::new(*img.dims());
    let weights = OnTheFly::new(img, spec, &grid);
    run_with(&grid, &weights, seeds, spec, algo, opts)
}

/// Runs `algo` with caller-provided arc weights (e.g. a
/// [`crate::WeightTable`]).
pub fn run_with<W: ArcWeights>(
    grid: &Grid,
    weights: &W,
    seeds: &SeedSet,
    spec: &CostFunctionSpec,
    algo: &Algorithm,
    opts: &RunOptions,
) -> Result<(DistanceMap, RunReport)> {
    match algo {
        Algorithm::Chamfer => chamfer_transform_with(grid, weights, seeds, opts),
        Algorithm::Propagation { order, membership } => {
            propagate_with(grid, weights, seeds, *order, *membership, opts)
        }
        Algorithm::BestFirst(cfg) => best_first_with(grid, weights, seeds, spec, cfg, opts),
    }
}

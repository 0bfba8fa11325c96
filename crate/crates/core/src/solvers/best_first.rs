use alloc::vec;
use alloc::vec::Vec;

use super::{check_inputs, seeded_map, RunOptions, RunReport, SolverMode};
use crate::cost::{cost_constants, ArcWeights, CostFunctionSpec, OnTheFly};
use crate::error::{Error, Result};
use crate::grid::{DistanceMap, GreyImage, Grid, SeedSet, UNREACHED};
use crate::queues::{with_queue, MonotoneQueue, QueueConfig, QueueVisitor};

/// Best-first search with on-the-fly arc weights.
pub fn best_first(
    img: &GreyImage,
    seeds: &SeedSet,
    spec: &CostFunctionSpec,
    cfg: &QueueConfig,
    mode: SolverMode,
) -> Result<(DistanceMap, RunReport)> {
    let grid = Grid::new(*img.dims());
    let weights = OnTheFly::new(img, spec, &grid);
    best_first_with(&grid, &weights, seeds, spec, cfg, &RunOptions::with_mode(mode))
}

/// Label-setting search: repeatedly extracts a cell from the queue,
/// finalises it and relaxes the arcs to its unfinalised neighbours.
///
/// Without node tracking an improved neighbour is inserted again and the
/// older entry is discarded when it surfaces. Dilation stops at the first
/// extraction beyond the radius and route stops once the target is
/// finalised; cells not finalised by then are reported unreached.
pub fn best_first_with<W: ArcWeights>(
    grid: &Grid,
    weights: &W,
    seeds: &SeedSet,
    spec: &CostFunctionSpec,
    cfg: &QueueConfig,
    opts: &RunOptions,
) -> Result<(DistanceMap, RunReport)> {
    check_inputs(grid, seeds, opts)?;
    if opts.spread_interval.is_some() && !cfg.family.is_bucket() {
        return Err(Error::usage("spread sampling needs a bucket queue"));
    }
    if opts.spread_interval == Some(0) {
        return Err(Error::usage("spread interval must be positive"));
    }
    let constants = cost_constants(spec, u8::MAX)?;
    let search = Search {
        grid,
        weights,
        seeds,
        opts,
        exact: cfg.family.is_exact(),
    };
    with_queue(cfg, spec, &constants, grid.dims(), search)?
}

struct Search<'a, W> {
    grid: &'a Grid,
    weights: &'a W,
    seeds: &'a SeedSet,
    opts: &'a RunOptions,
    exact: bool,
}

impl<W: ArcWeights> QueueVisitor for Search<'_, W> {
    type Output = Result<(DistanceMap, RunReport)>;

    fn visit<Q: MonotoneQueue + 'static>(self, mut q: Q) -> Self::Output {
        let Search {
            grid,
            weights,
            seeds,
            opts,
            exact,
        } = self;
        let n = grid.dims().len();
        let mut map = seeded_map(grid, seeds);
        let g = map.values_mut();
        let mut done = vec![false; n];
        let mut report = RunReport::default();
        let mut visits = opts.record_visits.then(|| vec![0u32; n]);
        let mut log = opts.log_visits.then(Vec::new);
        let tracked = q.tracks_nodes();
        let check = |q: &Q| {
            q.check_invariants()
                .map_err(|e| Error::Resource(alloc::format!("queue invariant broken: {e}")))
        };

        let (max_distance, target) = match opts.mode {
            SolverMode::Full => (f64::INFINITY, None),
            SolverMode::Dilation { max_distance } => (max_distance, None),
            SolverMode::Route { target } => (f64::INFINITY, Some(grid.dims().linear_index(target)?)),
        };

        for &s in seeds.indices() {
            q.insert(s, 0.0)?;
            report.pushes += 1;
        }
        report.peak_queue_len = q.len();
        let mut last = 0.0f64;
        let mut reached_target = false;

        while !q.is_empty() {
            if let Some(every) = opts.spread_interval {
                if report.pops % every == 0 {
                    let mut s = q.spread()?;
                    s.iteration = report.pops;
                    report.spread.push(s);
                }
            }
            let entry = q.extract_min()?;
            if opts.check_queue {
                check(&q)?;
            }
            report.pops += 1;
            let x = entry.node;
            if let Some(v) = visits.as_mut() {
                v[x] = v[x].saturating_add(1);
            }
            if let Some(l) = log.as_mut() {
                l.push(x);
            }
            if done[x] {
                report.stale_pops += 1;
                continue;
            }
            let gx = g[x];
            if gx < last {
                report.order_violations += 1;
            }
            last = last.max(gx);
            if gx > max_distance {
                if exact {
                    break;
                }
                continue;
            }
            done[x] = true;
            if target == Some(x) {
                reached_target = true;
                break;
            }
            let mut err = None;
            grid.for_each_neighbor(x, |slot, nb| {
                if done[nb] || err.is_some() {
                    return;
                }
                let d = gx + weights.weight(x, nb, slot);
                if d < g[nb] {
                    g[nb] = d;
                    report.updates += 1;
                    let r = if tracked && q.contains(nb) {
                        report.decrease_keys += 1;
                        q.decrease_key(nb, d)
                    } else {
                        report.pushes += 1;
                        q.insert(nb, d)
                    };
                    if let Err(e) = r {
                        err = Some(e);
                    } else if opts.check_queue {
                        if let Err(e) = check(&q) {
                            err = Some(e);
                        }
                    }
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            report.peak_queue_len = report.peak_queue_len.max(q.len());
        }

        if target.is_some() && !reached_target {
            return Err(Error::Unreachable);
        }
        if !matches!(opts.mode, SolverMode::Full) {
            for (v, &d) in g.iter_mut().zip(&done) {
                if !d {
                    *v = UNREACHED;
                }
            }
        }
        report.visits = visits;
        report.visit_log = log;
        Ok((map, report))
    }
}

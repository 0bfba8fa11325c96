use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    apply_mode_filter, check_inputs, seeded_map, ListOrder, RunOptions, RunReport, SolverMode,
};
use crate::cost::{ArcWeights, CostFunctionSpec, OnTheFly};
use crate::error::{Error, Result};
use crate::grid::{DistanceMap, GreyImage, Grid, SeedSet};

/// Label-correcting list propagation with on-the-fly arc weights.
pub fn propagate(
    img: &GreyImage,
    seeds: &SeedSet,
    spec: &CostFunctionSpec,
    order: ListOrder,
    use_membership_array: bool,
    mode: SolverMode,
) -> Result<(DistanceMap, RunReport)> {
    let grid = Grid::new(*img.dims());
    let weights = OnTheFly::new(img, spec, &grid);
    let opts = RunOptions {
        mode,
        record_visits: true,
        ..Default::default()
    };
    propagate_with(&grid, &weights, seeds, order, use_membership_array, &opts)
}

/// Pops a cell, recomputes its label as the minimum over itself and all
/// neighbours plus arc weight, and on improvement puts every neighbour on
/// the list. With `use_membership_array`, a cell already on the list is not
/// added again.
pub fn propagate_with<W: ArcWeights>(
    grid: &Grid,
    weights: &W,
    seeds: &SeedSet,
    order: ListOrder,
    use_membership_array: bool,
    opts: &RunOptions,
) -> Result<(DistanceMap, RunReport)> {
    check_inputs(grid, seeds, opts)?;
    let n = grid.dims().len();
    let budget = opts.visit_budget.unwrap_or(10_000 * n as u64);
    let mut map = seeded_map(grid, seeds);
    let mut report = RunReport::default();
    let mut visits = vec![0u32; n];
    let mut log = opts.log_visits.then(Vec::new);
    let mut on_list = vec![false; if use_membership_array { n } else { 0 }];
    let mut list: VecDeque<usize> = VecDeque::new();
    let g = map.values_mut();

    let put = |list: &mut VecDeque<usize>, on_list: &mut Vec<bool>, report: &mut RunReport, c: usize| {
        if use_membership_array {
            if on_list[c] {
                return;
            }
            on_list[c] = true;
        }
        list.push_back(c);
        report.pushes += 1;
    };

    for &s in seeds.indices() {
        grid.for_each_neighbor(s, |_, nb| {
            if seeds.indices().binary_search(&nb).is_err() {
                put(&mut list, &mut on_list, &mut report, nb);
            }
        });
    }
    report.peak_queue_len = list.len();

    loop {
        let x = match order {
            ListOrder::Lifo => list.pop_back(),
            ListOrder::Fifo => list.pop_front(),
        };
        let Some(x) = x else { break };
        report.pops += 1;
        visits[x] = visits[x].saturating_add(1);
        if let Some(log) = log.as_mut() {
            log.push(x);
        }
        if use_membership_array {
            on_list[x] = false;
        }
        if report.pops > budget {
            report.visits = opts.record_visits.then_some(visits);
            report.visit_log = log;
            return Err(Error::BudgetExceeded(Box::new(report)));
        }
        let mut best = g[x];
        grid.for_each_neighbor(x, |slot, nb| {
            let cand = g[nb] + weights.weight(x, nb, slot);
            if cand < best {
                best = cand;
            }
        });
        if best < g[x] {
            g[x] = best;
            report.updates += 1;
            grid.for_each_neighbor(x, |_, nb| put(&mut list, &mut on_list, &mut report, nb));
            report.peak_queue_len = report.peak_queue_len.max(list.len());
        }
    }
    report.visits = opts.record_visits.then_some(visits);
    report.visit_log = log;
    apply_mode_filter(&mut map, &opts.mode);
    Ok((map, report))
}

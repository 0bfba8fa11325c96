use alloc::vec;

use super::{apply_mode_filter, check_inputs, seeded_map, RunOptions, RunReport, SolverMode};
use crate::cost::{ArcWeights, CostFunctionSpec, OnTheFly};
use crate::error::Result;
use crate::grid::{DistanceMap, GreyImage, Grid, SeedSet};

/// Iterated chamfer transform with on-the-fly arc weights.
pub fn chamfer_transform(
    img: &GreyImage,
    seeds: &SeedSet,
    spec: &CostFunctionSpec,
    mode: SolverMode,
) -> Result<(DistanceMap, RunReport)> {
    let grid = Grid::new(*img.dims());
    let weights = OnTheFly::new(img, spec, &grid);
    chamfer_transform_with(&grid, &weights, seeds, &RunOptions::with_mode(mode))
}

/// Alternates a forward raster pass, using the neighbours that precede a
/// cell, with a backward pass using those that follow it, until a pass
/// pair changes nothing.
pub fn chamfer_transform_with<W: ArcWeights>(
    grid: &Grid,
    weights: &W,
    seeds: &SeedSet,
    opts: &RunOptions,
) -> Result<(DistanceMap, RunReport)> {
    check_inputs(grid, seeds, opts)?;
    let mut map = seeded_map(grid, seeds);
    let mut report = RunReport::default();
    let n = grid.dims().len();
    let g = map.values_mut();
    loop {
        report.chamfer_iterations += 1;
        let mut changed = 0u64;
        for x in 0..n {
            changed += relax_from(grid, weights, g, x, grid.backward_slots());
        }
        for x in (0..n).rev() {
            changed += relax_from(grid, weights, g, x, grid.forward_slots());
        }
        report.updates += changed;
        if changed == 0 {
            break;
        }
    }
    if opts.record_visits {
        let passes = (2 * report.chamfer_iterations).min(u32::MAX as u64) as u32;
        report.visits = Some(vec![passes; n]);
    }
    apply_mode_filter(&mut map, &opts.mode);
    Ok((map, report))
}

#[inline]
fn relax_from<W: ArcWeights>(
    grid: &Grid,
    weights: &W,
    g: &mut [f64],
    x: usize,
    slots: core::ops::Range<usize>,
) -> u64 {
    let mut best = g[x];
    grid.for_each_neighbor_in(x, slots, |slot, nb| {
        let cand = g[nb] + weights.weight(x, nb, slot);
        if cand < best {
            best = cand;
        }
    });
    if best < g[x] {
        g[x] = best;
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::CostKind;
    use crate::grid::{Coord, Dims};
    use alloc::vec::Vec;

    fn line() -> (GreyImage, SeedSet) {
        let dims = Dims::new2(3, 1).unwrap();
        let img = GreyImage::new(dims, vec![0, 10, 10]).unwrap();
        (img, SeedSet::single(dims, Coord::new2(0, 0)).unwrap())
    }

    #[test]
    fn line_examples() {
        let (img, seeds) = line();
        let run = |k| chamfer_transform(&img, &seeds, &CostFunctionSpec::new(k), SolverMode::Full).unwrap().0;
        assert_eq!(run(CostKind::Docs).values(), [0.0, 13.0, 16.0]);
        assert_eq!(run(CostKind::Graymat).values(), [0.0, 15.0, 45.0]);
        let s = 109f64.sqrt();
        assert_eq!(run(CostKind::Wdocs).values(), [0.0, s, s + 3.0]);
    }

    #[test]
    fn zero_image_graymat_is_zero() {
        let dims = Dims::new2(6, 5).unwrap();
        let img = GreyImage::filled(dims, 0);
        let seeds = SeedSet::single(dims, Coord::new2(4, 1)).unwrap();
        let (map, report) = chamfer_transform(&img, &seeds, &CostFunctionSpec::new(CostKind::Graymat), SolverMode::Full).unwrap();
        assert!(map.values().iter().all(|&v| v == 0.0));
        assert_eq!(report.chamfer_iterations, 2);
    }

    #[test]
    fn converges_on_winding_domain() {
        // A snake of cheap cells through expensive walls needs several
        // pass pairs.
        let dims = Dims::new2(7, 7).unwrap();
        let mut v = vec![255u8; 49];
        for y in [0, 2, 4, 6] {
            for x in 0..7 {
                v[y * 7 + x] = 0;
            }
        }
        for (x, y) in [(6, 1), (0, 3), (6, 5)] {
            v[y * 7 + x] = 0;
        }
        let img = GreyImage::new(dims, v).unwrap();
        let seeds = SeedSet::single(dims, Coord::new2(0, 0)).unwrap();
        let (map, report) = chamfer_transform(&img, &seeds, &CostFunctionSpec::new(CostKind::Graymat), SolverMode::Full).unwrap();
        assert!(report.chamfer_iterations > 1);
        let zeros: Vec<_> = map.values().iter().filter(|&&d| d == 0.0).collect();
        assert_eq!(zeros.len(), 4 * 7 + 3);
    }

    #[test]
    fn empty_seed_dims_mismatch_rejected() {
        let (img, _) = line();
        let other = SeedSet::single(Dims::new2(2, 2).unwrap(), Coord::new2(0, 0)).unwrap();
        assert!(chamfer_transform(&img, &other, &CostFunctionSpec::new(CostKind::Docs), SolverMode::Full).is_err());
    }
}

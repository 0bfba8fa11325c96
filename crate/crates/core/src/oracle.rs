//! Reference transform and map comparison.
//!
//! [`reference_transform`] is a plain Bellman-Ford relaxation written
//! against coordinates, with its own arc-weight formula, so it shares no
//! code path with the solvers it is used to check.

use crate::cost::{CostFunctionSpec, CostKind};
use crate::error::{Error, Result};
use crate::grid::{DistanceMap, GreyImage, SeedSet};
use crate::math;
use crate::queues::{QueueConfig, QueueFamily};
use crate::solvers::{best_first, SolverMode};

/// Largest image the reference transform accepts.
pub const MAX_REFERENCE_CELLS: usize = 1 << 20;

/// Result of comparing two distance maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    /// Share of cells whose values differ beyond tolerance, in percent.
    pub erroneous_pixel_percent: f64,
    /// Largest finite difference; infinite when reachability differs.
    pub max_abs_diff: f64,
    pub count_compared: usize,
    pub erroneous: usize,
}

impl ErrorReport {
    pub fn is_exact(&self) -> bool {
        self.erroneous == 0
    }
}

fn arc(spec: &CostFunctionSpec, a: u8, b: u8, manhattan: u32) -> f64 {
    let w = spec.weights();
    let len = match manhattan {
        1 => w.axis,
        2 => w.planar,
        _ => w.space,
    };
    let (a, b) = (a as f64, b as f64);
    match spec.kind {
        CostKind::Graymat => (a + b) * len / 2.0,
        CostKind::Docs => (a - b).abs() + len,
        CostKind::Wdocs => math::sqrt((a - b) * (a - b) + len * len),
    }
}

/// Exact minimum path cost from the seeds to every cell.
///
/// Each round visits cells in raster order and then in reverse, relaxing
/// every arc at the visited cell in both directions, until a round changes
/// nothing.
pub fn reference_transform(img: &GreyImage, seeds: &SeedSet, spec: &CostFunctionSpec) -> Result<DistanceMap> {
    let dims = *img.dims();
    if dims.len() > MAX_REFERENCE_CELLS {
        return Err(Error::usage(alloc::format!(
            "reference transform is limited to {MAX_REFERENCE_CELLS} cells"
        )));
    }
    if seeds.dims() != &dims {
        return Err(Error::usage("seed set and image dims differ"));
    }
    let (w, h, d) = (dims.width() as isize, dims.height() as isize, dims.depth() as isize);
    let dz_range: &[isize] = if dims.is_3d() { &[-1, 0, 1] } else { &[0] };
    let f = img.values();
    let mut map = DistanceMap::unreached(dims);
    let g = map.values_mut();
    for &s in seeds.indices() {
        g[s] = 0.0;
    }
    let at = |x: isize, y: isize, z: isize| ((z * h + y) * w + x) as usize;

    let relax = |g: &mut [f64], x: isize, y: isize, z: isize| -> bool {
        let p = at(x, y, z);
        let mut changed = false;
        for &dz in dz_range {
            for dy in -1..=1isize {
                for dx in -1..=1isize {
                    if dx == 0 && dy == 0 && dz == 0 {
                        continue;
                    }
                    let (nx, ny, nz) = (x + dx, y + dy, z + dz);
                    if nx < 0 || ny < 0 || nz < 0 || nx >= w || ny >= h || nz >= d {
                        continue;
                    }
                    let q = at(nx, ny, nz);
                    let m = (dx.abs() + dy.abs() + dz.abs()) as u32;
                    let c = arc(spec, f[p], f[q], m);
                    if g[p] + c < g[q] {
                        g[q] = g[p] + c;
                        changed = true;
                    }
                    if g[q] + c < g[p] {
                        g[p] = g[q] + c;
                        changed = true;
                    }
                }
            }
        }
        changed
    };

    loop {
        let mut changed = false;
        for z in 0..d {
            for y in 0..h {
                for x in 0..w {
                    changed |= relax(g, x, y, z);
                }
            }
        }
        for z in (0..d).rev() {
            for y in (0..h).rev() {
                for x in (0..w).rev() {
                    changed |= relax(g, x, y, z);
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(map)
}

/// Counts cells where `|a - b| > tol_abs + tol_rel * max(|a|, |b|)`.
/// Unreached cells match only unreached cells.
pub fn compare_maps(a: &DistanceMap, b: &DistanceMap, tol_abs: f64, tol_rel: f64) -> Result<ErrorReport> {
    if a.dims() != b.dims() {
        return Err(Error::usage("compared maps have different dims"));
    }
    let mut erroneous = 0usize;
    let mut max_abs_diff = 0.0f64;
    for (&x, &y) in a.values().iter().zip(b.values()) {
        let bad = if x.is_infinite() || y.is_infinite() {
            if x != y {
                max_abs_diff = f64::INFINITY;
                true
            } else {
                false
            }
        } else {
            let diff = (x - y).abs();
            max_abs_diff = max_abs_diff.max(diff);
            diff > tol_abs + tol_rel * x.abs().max(y.abs())
        };
        erroneous += bad as usize;
    }
    let n = a.values().len();
    Ok(ErrorReport {
        erroneous_pixel_percent: if n == 0 { 0.0 } else { 100.0 * erroneous as f64 / n as f64 },
        max_abs_diff,
        count_compared: n,
        erroneous,
    })
}

/// Largest bucket count in `buckets` whose transform with `template`
/// (normally an Untidy queue) differs from the reference; 0 if none.
///
/// Maps are compared with `tol_rel` relative tolerance.
pub fn largest_erroneous_bucket_size(
    img: &GreyImage,
    seeds: &SeedSet,
    spec: &CostFunctionSpec,
    template: &QueueConfig,
    buckets: impl IntoIterator<Item = usize>,
    tol_rel: f64,
) -> Result<usize> {
    if !matches!(
        template.family,
        QueueFamily::Untidy | QueueFamily::UntidyStatic | QueueFamily::HierarchicalHeap
    ) {
        return Err(Error::usage("bucket sweeps need an Untidy or hierarchical queue"));
    }
    let reference = reference_transform(img, seeds, spec)?;
    let mut largest = 0;
    for b in buckets {
        let cfg = template.with_buckets(Some(b));
        let (map, _) = best_first(img, seeds, spec, &cfg, SolverMode::Full)?;
        if !compare_maps(&map, &reference, 0.0, tol_rel)?.is_exact() {
            largest = largest.max(b);
        }
    }
    Ok(largest)
}

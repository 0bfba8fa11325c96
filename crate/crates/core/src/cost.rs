//! Local arc weights for the three grey-weighted distance definitions.
//!
//! | kind    | arc weight between grey levels `a`, `b` over a step of length `w` |
//! |---------|--------------------------------------------------------------------|
//! | GRAYMAT | `(a + b) / 2 * w`                                                  |
//! | DOCS    | `|a - b| + w`                                                      |
//! | WDOCS   | `sqrt((a - b)^2 + w^2)`                                            |
//!
//! Step lengths are the chamfer weights `w1 <= w2 <= w3` for axis,
//! planar-diagonal and space-diagonal steps, 3-4-5 by default.

use alloc::collections::TryReserveError;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Coord, GreyImage, Grid, StepClass};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostKind {
    Graymat,
    Docs,
    Wdocs,
}

impl CostKind {
    pub const ALL: [CostKind; 3] = [CostKind::Graymat, CostKind::Docs, CostKind::Wdocs];

    pub fn name(&self) -> &'static str {
        match self {
            CostKind::Graymat => "graymat",
            CostKind::Docs => "docs",
            CostKind::Wdocs => "wdocs",
        }
    }
}

impl fmt::Display for CostKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CostKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "graymat" => Ok(CostKind::Graymat),
            "docs" => Ok(CostKind::Docs),
            "wdocs" => Ok(CostKind::Wdocs),
            other => Err(Error::usage(format!("unknown cost kind `{other}`"))),
        }
    }
}

/// Chamfer step lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChamferWeights {
    pub axis: f64,
    pub planar: f64,
    pub space: f64,
}

impl ChamferWeights {
    pub const W345: ChamferWeights = ChamferWeights {
        axis: 3.0,
        planar: 4.0,
        space: 5.0,
    };

    pub fn new(axis: f64, planar: f64, space: f64) -> Result<Self> {
        let w = ChamferWeights {
            axis,
            planar,
            space,
        };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<()> {
        if !(self.axis > 0.0 && self.axis.is_finite() && self.space.is_finite()) {
            return Err(Error::usage("chamfer weights must be positive and finite"));
        }
        if !(self.axis <= self.planar && self.planar <= self.space) {
            return Err(Error::usage("chamfer weights must satisfy w1 <= w2 <= w3"));
        }
        Ok(())
    }

    #[inline]
    pub fn step(&self, class: StepClass) -> f64 {
        match class {
            StepClass::Axis => self.axis,
            StepClass::PlanarDiagonal => self.planar,
            StepClass::SpaceDiagonal => self.space,
        }
    }

    fn all(&self) -> [f64; 3] {
        [self.axis, self.planar, self.space]
    }

    fn integral(&self) -> bool {
        self.all().iter().all(|&w| w == crate::math::floor(w))
    }
}

impl Default for ChamferWeights {
    fn default() -> Self {
        Self::W345
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostFunctionSpec {
    pub kind: CostKind,
    weights: ChamferWeights,
}

impl CostFunctionSpec {
    /// Spec with the default 3-4-5 weights.
    pub const fn new(kind: CostKind) -> Self {
        CostFunctionSpec {
            kind,
            weights: ChamferWeights::W345,
        }
    }

    pub fn with_weights(kind: CostKind, weights: ChamferWeights) -> Result<Self> {
        weights.validate()?;
        Ok(CostFunctionSpec { kind, weights })
    }

    pub fn weights(&self) -> &ChamferWeights {
        &self.weights
    }

    /// Whether every arc weight (and so every path cost) is an integer.
    pub fn has_integer_costs(&self) -> bool {
        self.kind == CostKind::Docs && self.weights.integral()
    }

    #[inline]
    pub fn arc_weight(&self, a: u8, b: u8, step: StepClass) -> f64 {
        weight_for_step(self.kind, a, b, self.weights.step(step))
    }
}

#[inline(always)]
fn weight_for_step(kind: CostKind, a: u8, b: u8, w: f64) -> f64 {
    match kind {
        CostKind::Graymat => 0.5 * (a as f64 + b as f64) * w,
        CostKind::Docs => a.abs_diff(b) as f64 + w,
        CostKind::Wdocs => {
            let d = a.abs_diff(b) as f64;
            math::sqrt(d * d + w * w)
        }
    }
}

/// Cost of the arc between two adjacent cells with grey levels `a` and `b`.
pub fn arc_weight(spec: &CostFunctionSpec, a: u8, b: u8, step: StepClass) -> f64 {
    spec.arc_weight(a, b, step)
}

/// Queue-sizing constants of a cost definition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostConstants {
    /// Largest achievable arc weight (`C_m`).
    pub max_arc_weight: f64,
    /// Smallest nonzero difference between two achievable arc weights.
    pub min_cost_delta: f64,
    /// Bucket count giving every distinct cost its own bucket:
    /// `floor(max_arc_weight / min_cost_delta) + 1`.
    pub unique_cost_buckets: usize,
}

/// Enumerates every achievable arc weight for grey levels in
/// `0..=grey_max` and all three step classes.
pub fn cost_constants(spec: &CostFunctionSpec, grey_max: u8) -> Result<CostConstants> {
    if grey_max == 0 {
        return Err(Error::usage("grey_max must be at least 1"));
    }
    let g = grey_max as u32;
    let mut values = Vec::new();
    for w in spec.weights.all() {
        match spec.kind {
            // Depends on a + b only.
            CostKind::Graymat => {
                for sum in 0..=2 * g {
                    values.push(0.5 * sum as f64 * w);
                }
            }
            // Depend on |a - b| only.
            CostKind::Docs | CostKind::Wdocs => {
                for diff in 0..=g {
                    values.push(weight_for_step(spec.kind, diff as u8, 0, w));
                }
            }
        }
    }
    values.sort_by(f64::total_cmp);
    values.dedup();
    let max_arc_weight = *values.last().expect("non-empty enumeration");
    let min_cost_delta = values
        .windows(2)
        .map(|p| p[1] - p[0])
        .filter(|d| *d > 0.0)
        .fold(f64::INFINITY, f64::min);
    if !(max_arc_weight > 0.0 && min_cost_delta.is_finite()) {
        return Err(Error::invalid_cost("degenerate cost definition"));
    }
    let unique_cost_buckets = math::floor(max_arc_weight / min_cost_delta) as usize + 1;
    Ok(CostConstants {
        max_arc_weight,
        min_cost_delta,
        unique_cost_buckets,
    })
}

/// Source of arc weights for the solvers. `slot` indexes the grid's
/// neighbourhood table and `to` is the neighbour of `from` in that slot.
pub trait ArcWeights {
    fn weight(&self, from: usize, to: usize, slot: usize) -> f64;
}

/// Computes weights from grey levels on every call.
#[derive(Debug, Clone)]
pub struct OnTheFly<'a> {
    values: &'a [u8],
    kind: CostKind,
    slot_weights: [f64; 26],
}

impl<'a> OnTheFly<'a> {
    pub fn new(img: &'a GreyImage, spec: &CostFunctionSpec, grid: &Grid) -> Self {
        let mut slot_weights = [0.0; 26];
        for (slot, w) in slot_weights.iter_mut().enumerate().take(grid.slot_count()) {
            *w = spec.weights.step(grid.class(slot));
        }
        OnTheFly {
            values: img.values(),
            kind: spec.kind,
            slot_weights,
        }
    }
}

impl ArcWeights for OnTheFly<'_> {
    #[inline]
    fn weight(&self, from: usize, to: usize, slot: usize) -> f64 {
        weight_for_step(
            self.kind,
            self.values[from],
            self.values[to],
            self.slot_weights[slot],
        )
    }
}

/// Precomputed arc weights. Each undirected arc is stored once, under the
/// cell that comes first in raster order.
#[derive(Debug, Clone)]
pub struct WeightTable {
    grid: Grid,
    per_cell: usize,
    weights: Vec<f64>,
    stored: usize,
}

impl WeightTable {
    /// Number of stored arcs.
    pub fn arc_count(&self) -> usize {
        self.stored
    }

    pub fn is_empty(&self) -> bool {
        self.stored == 0
    }

    /// Bytes used by the weight array.
    pub fn memory_bytes(&self) -> usize {
        self.weights.len() * core::mem::size_of::<f64>()
    }

    /// Weight of the arc between two adjacent cells, in either direction.
    pub fn lookup(&self, p: Coord, q: Coord) -> Option<f64> {
        let dims = self.grid.dims();
        let pi = dims.linear_index(p).ok()?;
        let qi = dims.linear_index(q).ok()?;
        let mut found = None;
        self.grid.for_each_neighbor(pi, |slot, n| {
            if n == qi {
                found = Some(slot);
            }
        });
        found.map(|slot| self.weight(pi, qi, slot))
    }
}

impl ArcWeights for WeightTable {
    #[inline]
    fn weight(&self, from: usize, to: usize, slot: usize) -> f64 {
        let half = self.per_cell;
        if slot >= half {
            self.weights[from * half + slot - half]
        } else {
            // Stored under `to` in the opposite (forward) slot.
            self.weights[to * half + (half - 1 - slot)]
        }
    }
}

/// Builds a [`WeightTable`] for `img`. Entries for neighbours outside the
/// image are left as NaN.
pub fn precompute_weights(img: &GreyImage, spec: &CostFunctionSpec) -> Result<WeightTable> {
    let grid = Grid::new(*img.dims());
    let per_cell = grid.slot_count() / 2;
    let n = img.dims().len();
    let mut weights = Vec::new();
    let len = n
        .checked_mul(per_cell)
        .ok_or_else(|| Error::Resource("weight table size overflows".into()))?;
    weights
        .try_reserve_exact(len)
        .map_err(|e: TryReserveError| Error::Resource(format!("weight table: {e}")))?;
    weights.resize(len, f64::NAN);
    let on_the_fly = OnTheFly::new(img, spec, &grid);
    let mut stored = 0;
    for p in 0..n {
        grid.for_each_neighbor_in(p, grid.forward_slots(), |slot, q| {
            weights[p * per_cell + slot - per_cell] = on_the_fly.weight(p, q, slot);
            stored += 1;
        });
    }
    Ok(WeightTable {
        grid,
        per_cell,
        weights,
        stored,
    })
}

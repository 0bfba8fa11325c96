//! Image grids, coordinates, 8/26-connectivity and the distance-map
//! container shared by all solvers.
//!
//! Storage is row-major with x varying fastest, then y, then z. A 2D grid
//! is a 3D grid with depth 1 and rank 2; it never produces space-diagonal
//! steps.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};

/// Value stored for cells that no path from a seed has reached.
pub const UNREACHED: f64 = f64::INFINITY;

/// Extent of a 2D or 3D grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    extents: [usize; 3],
    rank: u8,
}

impl Dims {
    pub fn new2(width: usize, height: usize) -> Result<Self> {
        Self::from_slice(&[width, height])
    }

    pub fn new3(width: usize, height: usize, depth: usize) -> Result<Self> {
        Self::from_slice(&[width, height, depth])
    }

    /// Builds dims from 2 or 3 extents, each at least 1.
    pub fn from_slice(extents: &[usize]) -> Result<Self> {
        if !(2..=3).contains(&extents.len()) {
            return Err(Error::usage("grids must have 2 or 3 axes"));
        }
        if extents.contains(&0) {
            return Err(Error::usage("every extent must be at least 1"));
        }
        let mut out = [1usize; 3];
        out[..extents.len()].copy_from_slice(extents);
        out[0]
            .checked_mul(out[1])
            .and_then(|n| n.checked_mul(out[2]))
            .ok_or_else(|| Error::Resource("grid size overflows usize".into()))?;
        Ok(Dims {
            extents: out,
            rank: extents.len() as u8,
        })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.extents[0]
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.extents[1]
    }

    /// Depth of the grid; 1 for 2D grids.
    #[inline]
    pub fn depth(&self) -> usize {
        self.extents[2]
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    #[inline]
    pub fn is_3d(&self) -> bool {
        self.rank == 3
    }

    /// Extents of the used axes only.
    pub fn extents(&self) -> &[usize] {
        &self.extents[..self.rank()]
    }

    /// Number of cells.
    #[inline]
    pub fn len(&self) -> usize {
        self.extents[0] * self.extents[1] * self.extents[2]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, c: Coord) -> bool {
        c.x < self.extents[0]
            && c.y < self.extents[1]
            && c.z < self.extents[2]
            && (self.is_3d() || c.z == 0)
    }

    pub fn linear_index(&self, c: Coord) -> Result<usize> {
        if !self.contains(c) {
            return Err(Error::usage("coordinate out of bounds"));
        }
        Ok(self.index_unchecked(c))
    }

    #[inline]
    pub(crate) fn index_unchecked(&self, c: Coord) -> usize {
        (c.z * self.extents[1] + c.y) * self.extents[0] + c.x
    }

    /// Inverse of [`Dims::linear_index`].
    pub fn coord(&self, index: usize) -> Result<Coord> {
        if index >= self.len() {
            return Err(Error::usage("linear index out of bounds"));
        }
        Ok(self.coord_unchecked(index))
    }

    #[inline]
    pub(crate) fn coord_unchecked(&self, index: usize) -> Coord {
        let w = self.extents[0];
        let h = self.extents[1];
        let x = index % w;
        let rest = index / w;
        Coord {
            x,
            y: rest % h,
            z: rest / h,
        }
    }
}

/// Grid position. 2D coordinates keep `z == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Coord {
    pub const fn new2(x: usize, y: usize) -> Self {
        Coord { x, y, z: 0 }
    }

    pub const fn new3(x: usize, y: usize, z: usize) -> Self {
        Coord { x, y, z }
    }
}

/// Kind of step between two adjacent cells; selects the chamfer weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepClass {
    /// Face neighbour, weight `w1`.
    Axis,
    /// Edge neighbour, weight `w2`.
    PlanarDiagonal,
    /// Vertex neighbour (3D only), weight `w3`.
    SpaceDiagonal,
}

/// One entry of a neighbourhood table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Offset {
    pub dx: i8,
    pub dy: i8,
    pub dz: i8,
    pub class: StepClass,
}

const fn step_class(nonzero: u8) -> StepClass {
    match nonzero {
        1 => StepClass::Axis,
        2 => StepClass::PlanarDiagonal,
        _ => StepClass::SpaceDiagonal,
    }
}

const fn build_offsets<const N: usize>(dz_min: i8, dz_max: i8) -> [Offset; N] {
    let mut out = [Offset {
        dx: 0,
        dy: 0,
        dz: 0,
        class: StepClass::Axis,
    }; N];
    let mut i = 0;
    let mut dz = dz_min;
    while dz <= dz_max {
        let mut dy = -1;
        while dy <= 1 {
            let mut dx = -1;
            while dx <= 1 {
                if !(dx == 0 && dy == 0 && dz == 0) {
                    let nonzero = (dx != 0) as u8 + (dy != 0) as u8 + (dz != 0) as u8;
                    out[i] = Offset {
                        dx,
                        dy,
                        dz,
                        class: step_class(nonzero),
                    };
                    i += 1;
                }
                dx += 1;
            }
            dy += 1;
        }
        dz += 1;
    }
    out
}

/// 8-neighbourhood in raster order of offsets.
pub static OFFSETS_2D: [Offset; 8] = build_offsets::<8>(0, 0);
/// 26-neighbourhood in raster order of offsets.
pub static OFFSETS_3D: [Offset; 26] = build_offsets::<26>(-1, 1);

/// Offsets for the given rank. In both tables slot `i` and slot
/// `len - 1 - i` are opposite steps, and the first half precedes the
/// centre cell in raster order.
pub fn offsets_for(dims: &Dims) -> &'static [Offset] {
    if dims.is_3d() {
        &OFFSETS_3D
    } else {
        &OFFSETS_2D
    }
}

/// All in-bounds neighbours of `c` with their step class, in raster order
/// of offsets.
pub fn neighbors(c: Coord, dims: &Dims) -> Result<Vec<(Coord, StepClass)>> {
    if !dims.contains(c) {
        return Err(Error::usage("coordinate out of bounds"));
    }
    let mut out = Vec::with_capacity(26);
    for off in offsets_for(dims) {
        let x = c.x as isize + off.dx as isize;
        let y = c.y as isize + off.dy as isize;
        let z = c.z as isize + off.dz as isize;
        if x < 0 || y < 0 || z < 0 {
            continue;
        }
        let n = Coord::new3(x as usize, y as usize, z as usize);
        if dims.contains(n) {
            out.push((n, off.class));
        }
    }
    Ok(out)
}

/// Row-major index of `c`.
pub fn linear_index(c: Coord, dims: &Dims) -> Result<usize> {
    dims.linear_index(c)
}

/// Linear-index view of the neighbourhood graph used by the solvers.
#[derive(Debug, Clone)]
pub struct Grid {
    dims: Dims,
    offsets: &'static [Offset],
    deltas: Vec<isize>,
}

impl Grid {
    pub fn new(dims: Dims) -> Self {
        let offsets = offsets_for(&dims);
        let w = dims.width() as isize;
        let plane = w * dims.height() as isize;
        let deltas = offsets
            .iter()
            .map(|o| o.dx as isize + o.dy as isize * w + o.dz as isize * plane)
            .collect();
        Grid {
            dims,
            offsets,
            deltas,
        }
    }

    #[inline]
    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    #[inline]
    pub fn offsets(&self) -> &'static [Offset] {
        self.offsets
    }

    /// Number of neighbour slots (8 or 26).
    #[inline]
    pub fn slot_count(&self) -> usize {
        self.offsets.len()
    }

    /// Slots whose neighbour precedes the cell in raster order.
    #[inline]
    pub fn backward_slots(&self) -> Range<usize> {
        0..self.offsets.len() / 2
    }

    /// Slots whose neighbour follows the cell in raster order.
    #[inline]
    pub fn forward_slots(&self) -> Range<usize> {
        self.offsets.len() / 2..self.offsets.len()
    }

    #[inline]
    pub fn opposite(&self, slot: usize) -> usize {
        self.offsets.len() - 1 - slot
    }

    #[inline]
    pub fn class(&self, slot: usize) -> StepClass {
        self.offsets[slot].class
    }

    /// Calls `f(slot, neighbour_index)` for every in-bounds neighbour of
    /// `index` whose slot lies in `slots`.
    #[inline]
    pub fn for_each_neighbor_in(
        &self,
        index: usize,
        slots: Range<usize>,
        mut f: impl FnMut(usize, usize),
    ) {
        let w = self.dims.width();
        let h = self.dims.height();
        let d = self.dims.depth();
        let x = index % w;
        let rest = index / w;
        let y = rest % h;
        let z = rest / h;
        let interior = x > 0
            && x + 1 < w
            && y > 0
            && y + 1 < h
            && (!self.dims.is_3d() || (z > 0 && z + 1 < d));
        if interior {
            for slot in slots {
                f(slot, (index as isize + self.deltas[slot]) as usize);
            }
            return;
        }
        for slot in slots {
            let off = &self.offsets[slot];
            let nx = x as isize + off.dx as isize;
            let ny = y as isize + off.dy as isize;
            let nz = z as isize + off.dz as isize;
            if nx < 0
                || ny < 0
                || nz < 0
                || nx as usize >= w
                || ny as usize >= h
                || nz as usize >= d
            {
                continue;
            }
            f(slot, (index as isize + self.deltas[slot]) as usize);
        }
    }

    #[inline]
    pub fn for_each_neighbor(&self, index: usize, f: impl FnMut(usize, usize)) {
        self.for_each_neighbor_in(index, 0..self.offsets.len(), f)
    }
}

/// An 8-bit grey-level image; also serves as the geodesic mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreyImage {
    dims: Dims,
    values: Vec<u8>,
}

impl GreyImage {
    pub fn new(dims: Dims, values: Vec<u8>) -> Result<Self> {
        if values.len() != dims.len() {
            return Err(Error::usage("value count does not match dims"));
        }
        Ok(GreyImage { dims, values })
    }

    pub fn filled(dims: Dims, grey: u8) -> Self {
        GreyImage {
            dims,
            values: vec![grey; dims.len()],
        }
    }

    #[inline]
    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    #[inline]
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn get(&self, c: Coord) -> Result<u8> {
        Ok(self.values[self.dims.linear_index(c)?])
    }

    pub fn into_values(self) -> Vec<u8> {
        self.values
    }
}

/// Non-empty, deduplicated set of in-bounds seed cells, kept sorted by
/// linear index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    dims: Dims,
    indices: Vec<usize>,
}

impl SeedSet {
    pub fn new(dims: Dims, coords: impl IntoIterator<Item = Coord>) -> Result<Self> {
        let mut indices = Vec::new();
        for c in coords {
            indices.push(dims.linear_index(c)?);
        }
        Self::from_indices(dims, indices)
    }

    pub fn from_indices(dims: Dims, mut indices: Vec<usize>) -> Result<Self> {
        if indices.iter().any(|&i| i >= dims.len()) {
            return Err(Error::usage("seed index out of bounds"));
        }
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() {
            return Err(Error::usage("seed set is empty"));
        }
        Ok(SeedSet { dims, indices })
    }

    pub fn single(dims: Dims, c: Coord) -> Result<Self> {
        Self::new(dims, [c])
    }

    /// Seeds of the unseeded transform: every cell with grey level 0.
    pub fn background(img: &GreyImage) -> Result<Self> {
        let indices = img
            .values()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 0)
            .map(|(i, _)| i)
            .collect();
        Self::from_indices(*img.dims(), indices)
    }

    #[inline]
    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    #[inline]
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        self.indices.iter().map(|&i| self.dims.coord_unchecked(i))
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Per-cell path costs; unreached cells hold [`UNREACHED`].
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMap {
    dims: Dims,
    values: Vec<f64>,
}

impl DistanceMap {
    pub fn unreached(dims: Dims) -> Self {
        DistanceMap {
            dims,
            values: vec![UNREACHED; dims.len()],
        }
    }

    pub fn from_values(dims: Dims, values: Vec<f64>) -> Result<Self> {
        if values.len() != dims.len() {
            return Err(Error::usage("value count does not match dims"));
        }
        if values.iter().any(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::usage("distance values must be non-negative"));
        }
        Ok(DistanceMap { dims, values })
    }

    #[inline]
    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn get(&self, c: Coord) -> Result<f64> {
        Ok(self.values[self.dims.linear_index(c)?])
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

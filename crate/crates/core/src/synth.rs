//! Deterministic test images and the 49-point seed grid.
//!
//! Noise comes from PCG32 (`rand_pcg::Pcg32`, XSH-RR 64/32) seeded with
//! `Pcg32::new(rng_seed, NOISE_STREAM)`; each grey level is the top byte
//! of one 32-bit output, in raster order.

use alloc::format;
use alloc::vec::Vec;

use rand_core::Rng;
use rand_pcg::Pcg32;

use crate::error::{Error, Result};
use crate::grid::{Coord, Dims, GreyImage, SeedSet};
use crate::math;

/// PCG stream selector used for noise images.
pub const NOISE_STREAM: u64 = 0x0a02_bdbf_7bb3_c0a7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SynthKind {
    /// Independent uniform grey levels.
    Noise { rng_seed: u64 },
    /// 0 at the origin corner rising linearly to 255 at the far corner.
    Gradient,
    /// Concentric rings around the centre. `period` is the ring spacing
    /// in cells; the sine is divided by `clamp` and saturated, so a
    /// smaller `clamp` gives wider flat 0 and 255 bands.
    Sinusoid { period: f64, clamp: f64 },
    /// A disk of `inside` grey on an `outside` background; the radius is
    /// `radius` times half the smallest extent.
    UniformDisk { radius: f64, inside: u8, outside: u8 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub kind: SynthKind,
    pub dims: Dims,
}

impl SynthSpec {
    pub fn new(kind: SynthKind, dims: Dims) -> Self {
        SynthSpec { kind, dims }
    }

    pub fn noise(dims: Dims, rng_seed: u64) -> Self {
        Self::new(SynthKind::Noise { rng_seed }, dims)
    }

    pub fn gradient(dims: Dims) -> Self {
        Self::new(SynthKind::Gradient, dims)
    }

    pub fn sinusoid(dims: Dims, period: f64, clamp: f64) -> Self {
        Self::new(SynthKind::Sinusoid { period, clamp }, dims)
    }

    pub fn uniform_disk(dims: Dims, radius: f64, inside: u8, outside: u8) -> Self {
        Self::new(SynthKind::UniformDisk { radius, inside, outside }, dims)
    }

    pub fn validate(&self) -> Result<()> {
        let fraction = |name: &str, v: f64| {
            if v > 0.0 && v <= 1.0 {
                Ok(())
            } else {
                Err(Error::usage(format!("{name} must be in (0, 1], got {v}")))
            }
        };
        match self.kind {
            SynthKind::Sinusoid { period, clamp } => {
                if !(period.is_finite() && period > 0.0) {
                    return Err(Error::usage("sinusoid period must be positive"));
                }
                fraction("clamp", clamp)
            }
            SynthKind::UniformDisk { radius, .. } => fraction("radius", radius),
            _ => Ok(()),
        }
    }
}

/// Renders `spec`. Output depends only on `spec`.
pub fn generate(spec: &SynthSpec) -> Result<GreyImage> {
    spec.validate()?;
    let dims = spec.dims;
    let (w, h, d) = (dims.width(), dims.height(), dims.depth());
    let mut values = Vec::with_capacity(dims.len());
    match spec.kind {
        SynthKind::Noise { rng_seed } => {
            let mut rng = Pcg32::new(rng_seed, NOISE_STREAM);
            values.extend((0..dims.len()).map(|_| (rng.next_u32() >> 24) as u8));
        }
        SynthKind::Gradient => {
            let span = (w - 1) + (h - 1) + (d - 1);
            for z in 0..d {
                for y in 0..h {
                    for x in 0..w {
                        // round(255 * s / span) with halves rounded up
                        let v = if span == 0 { 0 } else { (510 * (x + y + z) + span) / (2 * span) };
                        values.push(v as u8);
                    }
                }
            }
        }
        SynthKind::Sinusoid { period, clamp } => {
            let centre = |n: usize| (n as f64 - 1.0) / 2.0;
            let (cx, cy, cz) = (centre(w), centre(h), centre(d));
            for z in 0..d {
                for y in 0..h {
                    for x in 0..w {
                        let (dx, dy, dz) = (x as f64 - cx, y as f64 - cy, z as f64 - cz);
                        let r = math::sqrt(dx * dx + dy * dy + dz * dz);
                        let s = (math::sin(2.0 * core::f64::consts::PI * r / period) / clamp).clamp(-1.0, 1.0);
                        values.push(math::round(127.5 * (1.0 + s)) as u8);
                    }
                }
            }
        }
        SynthKind::UniformDisk { radius, inside, outside } => {
            let smallest = dims.extents().iter().copied().min().unwrap_or(1) as f64;
            let rad = radius * smallest / 2.0;
            let centre = |n: usize| (n as f64 - 1.0) / 2.0;
            let (cx, cy, cz) = (centre(w), centre(h), if dims.is_3d() { centre(d) } else { 0.0 });
            for z in 0..d {
                for y in 0..h {
                    for x in 0..w {
                        let (dx, dy, dz) = (x as f64 - cx, y as f64 - cy, z as f64 - cz);
                        let inner = dx * dx + dy * dy + dz * dz <= rad * rad;
                        values.push(if inner { inside } else { outside });
                    }
                }
            }
        }
    }
    GreyImage::new(dims, values)
}

/// 49 seeds in 7 staggered columns over a 2D image.
///
/// Column `k` sits at `round((33.25 + 30k) / 240 * (W - 1))`; its rows are
/// `round((16.25 + 40j) / 291 * (H - 1))` for even `k` and
/// `round((38.25 + 40j) / 291 * (H - 1))` for odd `k`.
pub fn test_point_grid(dims: Dims) -> Result<SeedSet> {
    if dims.is_3d() || dims.width() < 7 || dims.height() < 7 {
        return Err(Error::usage("the test point grid needs a 2D image of at least 7x7"));
    }
    let (w1, h1) = ((dims.width() - 1) as f64, (dims.height() - 1) as f64);
    let mut points = Vec::with_capacity(49);
    for k in 0..7 {
        let x = math::round((33.25 + 30.0 * k as f64) / 240.0 * w1) as usize;
        let base = if k % 2 == 0 { 16.25 } else { 38.25 };
        for j in 0..7 {
            let y = math::round((base + 40.0 * j as f64) / 291.0 * h1) as usize;
            points.push(Coord::new2(x, y));
        }
    }
    let seeds = SeedSet::new(dims, points)?;
    if seeds.len() != 49 {
        return Err(Error::usage(format!(
            "a {}x{} image is too small for 49 distinct test points",
            dims.width(),
            dims.height()
        )));
    }
    Ok(seeds)
}

//! Benchmark harness.
//!
//! Every timed transform is checked before its record is emitted: against
//! the reference transform when the image has at most
//! [`RunSettings::oracle_limit`] cells, otherwise against a binary heap
//! with a position array (`H_A`). Exact algorithms that disagree abort
//! with [`Error::Consistency`]; Untidy queues only record their error.
//!
//! Runs are timed serially with [`Instant`]. The clock covers queue
//! construction and the transform, not loading or writing files.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use gwdt_core::cost::{cost_constants, precompute_weights};
use gwdt_core::grid::Grid;
use gwdt_core::oracle::{compare_maps, reference_transform};
use gwdt_core::queues::{BucketOrder, SpreadSample};
use gwdt_core::solvers::{best_first_with, parse_label, run, run_with};
use gwdt_core::synth::{generate, test_point_grid, SynthSpec};
use gwdt_core::{
    Algorithm, Coord, CostFunctionSpec, CostKind, Dims, DistanceMap, GreyImage, QueueConfig,
    QueueFamily, RunOptions, RunReport, SeedSet, TrackingStrategy,
};
use serde::Deserialize;

use crate::{io, Error, Result};

/// A named input image.
#[derive(Debug, Clone)]
pub struct BenchImage {
    pub name: String,
    pub image: GreyImage,
}

impl BenchImage {
    pub fn new(name: impl Into<String>, image: GreyImage) -> Self {
        BenchImage {
            name: name.into(),
            image,
        }
    }

    pub fn synth(name: impl Into<String>, spec: &SynthSpec) -> Result<Self> {
        Ok(Self::new(name, generate(spec)?))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Ok(Self::new(name, io::read_image(path)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeedSource {
    /// The 49-point test grid (2D only).
    Grid,
    /// Every cell with grey level 0.
    Background,
    /// The centre cell.
    Centre,
    File(PathBuf),
    Coords(Vec<Coord>),
}

/// How a seed source becomes seed sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedPolicy {
    /// One transform per seed point, averaged.
    #[default]
    EachSeed,
    /// One transform from all seed points together.
    AllAtOnce,
}

#[derive(Debug, Clone)]
pub struct RunSettings {
    pub repetitions: usize,
    pub warmup: usize,
    pub seeds: SeedSource,
    pub policy: SeedPolicy,
    /// Use only the first this many seed points.
    pub max_seeds: Option<usize>,
    /// Largest image checked against the reference transform.
    pub oracle_limit: usize,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            repetitions: 3,
            warmup: 1,
            seeds: SeedSource::Grid,
            policy: SeedPolicy::EachSeed,
            max_seeds: None,
            oracle_limit: 1 << 16,
        }
    }
}

impl RunSettings {
    fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::usage("repetitions must be at least 1"));
        }
        if self.max_seeds == Some(0) {
            return Err(Error::usage("max_seeds must be at least 1"));
        }
        Ok(())
    }
}

/// Which arc weights a record used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightMode {
    #[default]
    OnTheFly,
    Table,
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightMode::OnTheFly => "on-the-fly",
            WeightMode::Table => "table",
        })
    }
}

/// Timings and counters of one configuration. Counters are means over
/// seed sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Measured {
    pub mean_s: f64,
    pub std_s: f64,
    pub pops: f64,
    pub pushes: f64,
    pub stale_pops: f64,
    pub decrease_keys: f64,
    pub iterations: f64,
    pub peak_queue: f64,
    /// Mean erroneous-cell percentage against the reference.
    pub error_pct: Option<f64>,
    /// Mean weight-table build time, reported apart from `mean_s`.
    pub precompute_s: Option<f64>,
    /// Timed transforms behind the means.
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub algorithm: String,
    pub image: String,
    pub cost: CostKind,
    pub dims: Dims,
    pub d: Option<usize>,
    pub buckets: Option<usize>,
    pub weights: WeightMode,
    /// `None` for skipped combinations.
    pub measured: Option<Measured>,
    pub reason: Option<String>,
}

impl BenchRecord {
    pub fn is_skipped(&self) -> bool {
        self.measured.is_none()
    }
}

/// Seed sets for `img` under `settings`.
pub fn resolve_seed_sets(img: &GreyImage, settings: &RunSettings) -> Result<Vec<SeedSet>> {
    let dims = *img.dims();
    let all = match &settings.seeds {
        SeedSource::Grid => test_point_grid(dims)?,
        SeedSource::Background => SeedSet::background(img)
            .map_err(|_| Error::Data("background seeding needs at least one cell with grey level 0".into()))?,
        SeedSource::Centre => {
            let c = Coord::new3(dims.width() / 2, dims.height() / 2, dims.depth() / 2);
            SeedSet::single(dims, c)?
        }
        SeedSource::File(path) => io::read_seeds(path, dims)?,
        SeedSource::Coords(cs) => SeedSet::new(dims, cs.iter().copied())?,
    };
    let mut indices: Vec<usize> = all.indices().to_vec();
    if let SeedSource::Grid = settings.seeds {
        // keep the column-by-column layout order rather than raster order
        indices = test_point_order(dims);
    }
    if let Some(k) = settings.max_seeds {
        indices.truncate(k);
    }
    Ok(match settings.policy {
        SeedPolicy::EachSeed => indices
            .into_iter()
            .map(|i| SeedSet::from_indices(dims, vec![i]))
            .collect::<gwdt_core::Result<_>>()?,
        SeedPolicy::AllAtOnce => vec![SeedSet::from_indices(dims, indices)?],
    })
}

fn test_point_order(dims: Dims) -> Vec<usize> {
    let grid = test_point_grid(dims).expect("validated by caller");
    let mut coords: Vec<Coord> = grid.coords().collect();
    coords.sort_by_key(|c| (c.x, c.y));
    coords.iter().map(|&c| dims.linear_index(c).expect("in bounds")).collect()
}

fn tolerance(kind: CostKind) -> f64 {
    if kind == CostKind::Wdocs {
        1e-9
    } else {
        0.0
    }
}

/// Reference maps for each seed set.
pub fn reference_maps(img: &GreyImage, seed_sets: &[SeedSet], spec: &CostFunctionSpec, settings: &RunSettings) -> Result<Vec<DistanceMap>> {
    let heap = Algorithm::BestFirst(QueueConfig::d_heap(2, TrackingStrategy::PositionArray));
    seed_sets
        .iter()
        .map(|s| {
            if img.dims().len() <= settings.oracle_limit {
                Ok(reference_transform(img, s, spec)?)
            } else {
                Ok(run(img, s, spec, &heap, &RunOptions::default())?.0)
            }
        })
        .collect()
}

struct Outcome {
    measured: Measured,
    per_seed_error: Vec<f64>,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len().max(1) as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn measure(
    bench: &BenchImage,
    seed_sets: &[SeedSet],
    refs: &[DistanceMap],
    spec: &CostFunctionSpec,
    algo: &Algorithm,
    weights: WeightMode,
    settings: &RunSettings,
) -> Result<Outcome> {
    let img = &bench.image;
    let opts = RunOptions::default();
    let mut times = Vec::new();
    let mut pre_times = Vec::new();
    let mut reports: Vec<RunReport> = Vec::new();
    let mut errors = Vec::new();
    let once = |pre: &mut Vec<f64>, seeds: &SeedSet| -> Result<(f64, DistanceMap, RunReport)> {
        match weights {
            WeightMode::OnTheFly => {
                let t = Instant::now();
                let (map, report) = run(img, seeds, spec, algo, &opts)?;
                Ok((t.elapsed().as_secs_f64(), map, report))
            }
            WeightMode::Table => {
                let t = Instant::now();
                let table = precompute_weights(img, spec)?;
                pre.push(t.elapsed().as_secs_f64());
                let t = Instant::now();
                let grid = Grid::new(*img.dims());
                let (map, report) = run_with(&grid, &table, seeds, spec, algo, &opts)?;
                Ok((t.elapsed().as_secs_f64(), map, report))
            }
        }
    };
    for (seeds, reference) in seed_sets.iter().zip(refs) {
        let mut scratch = Vec::new();
        for _ in 0..settings.warmup {
            once(&mut scratch, seeds)?;
        }
        let mut last = None;
        for _ in 0..settings.repetitions {
            let (t, map, report) = once(&mut pre_times, seeds)?;
            times.push(t);
            last = Some((map, report));
        }
        let (map, report) = last.expect("at least one repetition");
        let cmp = compare_maps(&map, reference, 0.0, tolerance(spec.kind))?;
        if algo.is_exact() && !cmp.is_exact() {
            return Err(Error::Consistency(format!(
                "{} on {} ({}) differs from the reference in {} cells (max diff {})",
                algo.label(),
                bench.name,
                spec.kind,
                cmp.erroneous,
                cmp.max_abs_diff
            )));
        }
        errors.push(cmp.erroneous_pixel_percent);
        reports.push(report);
    }
    let (mean_s, std_s) = mean_std(&times);
    let avg = |f: &dyn Fn(&RunReport) -> f64| reports.iter().map(f).sum::<f64>() / reports.len().max(1) as f64;
    let measured = Measured {
        mean_s,
        std_s,
        pops: avg(&|r| r.pops as f64),
        pushes: avg(&|r| r.pushes as f64),
        stale_pops: avg(&|r| r.stale_pops as f64),
        decrease_keys: avg(&|r| r.decrease_keys as f64),
        iterations: avg(&|r| r.chamfer_iterations as f64),
        peak_queue: avg(&|r| r.peak_queue_len as f64),
        error_pct: Some(mean_std(&errors).0),
        precompute_s: (!pre_times.is_empty()).then(|| mean_std(&pre_times).0),
        runs: times.len(),
    };
    Ok(Outcome {
        measured,
        per_seed_error: errors,
    })
}

fn record_shape(algo: &Algorithm, spec: &CostFunctionSpec) -> (Option<usize>, Option<usize>) {
    let Some(cfg) = algo.queue_config() else {
        return (None, None);
    };
    let d = matches!(cfg.family, QueueFamily::DHeap | QueueFamily::HierarchicalHeap).then_some(cfg.arity);
    let b = if cfg.family.is_bucket() {
        cost_constants(spec, u8::MAX).ok().and_then(|c| cfg.resolved_buckets(&c).ok())
    } else {
        None
    };
    (d, b)
}

fn skipped(algo_label: String, bench: &BenchImage, spec: &CostFunctionSpec, weights: WeightMode, reason: String) -> BenchRecord {
    BenchRecord {
        algorithm: algo_label,
        image: bench.name.clone(),
        cost: spec.kind,
        dims: *bench.image.dims(),
        d: None,
        buckets: None,
        weights,
        measured: None,
        reason: Some(reason),
    }
}

/// Times one algorithm on one image, or returns a skipped record when the
/// configuration does not fit the cost definition.
fn bench_one(
    bench: &BenchImage,
    seed_sets: &[SeedSet],
    refs: &[DistanceMap],
    spec: &CostFunctionSpec,
    algo: &Algorithm,
    weights: WeightMode,
    settings: &RunSettings,
) -> Result<(BenchRecord, Vec<f64>)> {
    if let Some(cfg) = algo.queue_config() {
        let check = cfg.validate(spec).and_then(|_| {
            let c = cost_constants(spec, u8::MAX)?;
            cfg.resolved_buckets(&c).map(|_| ())
        });
        if let Err(e) = check {
            return Ok((skipped(algo.label(), bench, spec, weights, e.to_string()), Vec::new()));
        }
    }
    let out = measure(bench, seed_sets, refs, spec, algo, weights, settings)?;
    let (d, buckets) = record_shape(algo, spec);
    Ok((
        BenchRecord {
            algorithm: algo.label(),
            image: bench.name.clone(),
            cost: spec.kind,
            dims: *bench.image.dims(),
            d,
            buckets,
            weights,
            measured: Some(out.measured),
            reason: None,
        },
        out.per_seed_error,
    ))
}

/// A full comparison run: every (image, cost, algorithm) combination.
#[derive(Debug, Clone)]
pub struct BenchmarkSuite {
    pub images: Vec<BenchImage>,
    pub costs: Vec<CostKind>,
    /// Method labels such as `HH_A` or `H_SUM`.
    pub algorithms: Vec<String>,
    /// Heap arity override.
    pub d: Option<usize>,
    /// Bucket count override.
    pub buckets: Option<usize>,
    /// Also time every combination with a precomputed weight table.
    pub precompute: bool,
    pub settings: RunSettings,
}

/// Applies arity and bucket overrides to a parsed label.
pub fn configure(label: &str, is_3d: bool, d: Option<usize>, buckets: Option<usize>) -> Result<Algorithm> {
    let algo = parse_label(label, is_3d)?;
    Ok(match algo {
        Algorithm::BestFirst(mut cfg) => {
            if let Some(d) = d {
                cfg = cfg.with_arity(d);
            }
            if buckets.is_some() && cfg.family.is_bucket() {
                cfg = cfg.with_buckets(buckets);
            }
            Algorithm::BestFirst(cfg)
        }
        other => other,
    })
}

/// Runs every combination of `suite` in a fixed order: images, then
/// costs, then algorithms, on-the-fly before table weights.
pub fn run_suite(suite: &BenchmarkSuite) -> Result<Vec<BenchRecord>> {
    suite.settings.validate()?;
    for label in &suite.algorithms {
        parse_label(label, false)?;
    }
    let mut records = Vec::new();
    for bench in &suite.images {
        let is_3d = bench.image.dims().is_3d();
        let seed_sets = resolve_seed_sets(&bench.image, &suite.settings)?;
        for &kind in &suite.costs {
            let spec = CostFunctionSpec::new(kind);
            let refs = reference_maps(&bench.image, &seed_sets, &spec, &suite.settings)?;
            for label in &suite.algorithms {
                let algo = configure(label, is_3d, suite.d, suite.buckets)?;
                let modes: &[WeightMode] = if suite.precompute {
                    &[WeightMode::OnTheFly, WeightMode::Table]
                } else {
                    &[WeightMode::OnTheFly]
                };
                for &w in modes {
                    let (r, _) = bench_one(bench, &seed_sets, &refs, &spec, &algo, w, &suite.settings)?;
                    records.push(r);
                }
            }
        }
    }
    Ok(records)
}

/// Heap-arity sweep over `H`, `H_A` and `H_SUM`.
pub fn dheap_sweep(images: &[BenchImage], costs: &[CostKind], d_values: &[usize], settings: &RunSettings) -> Result<Vec<BenchRecord>> {
    settings.validate()?;
    if let Some(&d) = d_values.iter().find(|&&d| !(2..=16).contains(&d)) {
        return Err(Error::usage(format!("heap arity {d} outside 2..=16")));
    }
    let mut records = Vec::new();
    for bench in images {
        let seed_sets = resolve_seed_sets(&bench.image, settings)?;
        for &kind in costs {
            let spec = CostFunctionSpec::new(kind);
            let refs = reference_maps(&bench.image, &seed_sets, &spec, settings)?;
            for label in ["H", "H_A", "H_SUM"] {
                for &d in d_values {
                    let algo = configure(label, bench.image.dims().is_3d(), Some(d), None)?;
                    let (r, _) = bench_one(bench, &seed_sets, &refs, &spec, &algo, WeightMode::OnTheFly, settings)?;
                    records.push(r);
                }
            }
        }
    }
    Ok(records)
}

/// Queue families swept over bucket counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFamily {
    Untidy(BucketOrder),
    Hierarchical,
}

impl SweepFamily {
    pub fn label(&self) -> &'static str {
        match self {
            SweepFamily::Untidy(BucketOrder::Lifo) => "U_L",
            SweepFamily::Untidy(BucketOrder::Fifo) => "U_F",
            SweepFamily::Hierarchical => "HH",
        }
    }

    fn config(&self, buckets: usize) -> QueueConfig {
        match *self {
            SweepFamily::Untidy(order) => QueueConfig::untidy(Some(buckets), order, TrackingStrategy::None),
            SweepFamily::Hierarchical => QueueConfig::hierarchical(Some(buckets), TrackingStrategy::None),
        }
    }
}

impl std::str::FromStr for SweepFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u_l" | "untidy" | "untidy-lifo" => Ok(SweepFamily::Untidy(BucketOrder::Lifo)),
            "u_f" | "untidy-fifo" => Ok(SweepFamily::Untidy(BucketOrder::Fifo)),
            "hh" | "hierarchical" => Ok(SweepFamily::Hierarchical),
            other => Err(Error::usage(format!("unknown sweep family `{other}`"))),
        }
    }
}

/// Largest erroneous bucket count per seed set for one (image, cost,
/// family); 0 means every tested count was exact.
#[derive(Debug, Clone, PartialEq)]
pub struct BucketSummary {
    pub image: String,
    pub cost: CostKind,
    pub family: SweepFamily,
    pub largest_erroneous: Vec<usize>,
}

impl BucketSummary {
    pub fn mean_std(&self) -> (f64, f64) {
        let xs: Vec<f64> = self.largest_erroneous.iter().map(|&b| b as f64).collect();
        mean_std(&xs)
    }
}

/// Runtime and error per bucket count, plus the largest erroneous bucket
/// count per seed set.
pub fn bucket_sweep(
    images: &[BenchImage],
    costs: &[CostKind],
    families: &[SweepFamily],
    b_values: &[usize],
    settings: &RunSettings,
) -> Result<(Vec<BenchRecord>, Vec<BucketSummary>)> {
    settings.validate()?;
    if b_values.is_empty() {
        return Err(Error::usage("no bucket counts to sweep"));
    }
    if b_values.contains(&0) {
        return Err(Error::usage("bucket count must be at least 1"));
    }
    let mut records = Vec::new();
    let mut summaries = Vec::new();
    for bench in images {
        let seed_sets = resolve_seed_sets(&bench.image, settings)?;
        for &kind in costs {
            let spec = CostFunctionSpec::new(kind);
            let refs = reference_maps(&bench.image, &seed_sets, &spec, settings)?;
            for &family in families {
                let mut largest = vec![0usize; seed_sets.len()];
                for &b in b_values {
                    let algo = Algorithm::BestFirst(family.config(b));
                    let (r, errs) = bench_one(bench, &seed_sets, &refs, &spec, &algo, WeightMode::OnTheFly, settings)?;
                    for (l, e) in largest.iter_mut().zip(&errs) {
                        if *e > 0.0 {
                            *l = (*l).max(b);
                        }
                    }
                    records.push(BenchRecord {
                        algorithm: family.label().into(),
                        ..r
                    });
                }
                summaries.push(BucketSummary {
                    image: bench.name.clone(),
                    cost: kind,
                    family,
                    largest_erroneous: largest,
                });
            }
        }
    }
    Ok((records, summaries))
}

/// Percent-non-empty statistics over spread samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadStats {
    pub max: f64,
    pub min: f64,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpreadMatrix {
    pub rows: Vec<SpreadSample>,
    pub stats: SpreadStats,
}

/// Samples bucket occupancy every `interval` extractions of a best-first
/// transform with a bucket queue.
pub fn spread_matrix(img: &GreyImage, seeds: &SeedSet, spec: &CostFunctionSpec, cfg: &QueueConfig, interval: u64) -> Result<SpreadMatrix> {
    if interval == 0 {
        return Err(Error::usage("spread interval must be at least 1"));
    }
    if !cfg.family.is_bucket() {
        return Err(Error::usage("spread sampling needs a bucket queue"));
    }
    let grid = Grid::new(*img.dims());
    let weights = gwdt_core::cost::OnTheFly::new(img, spec, &grid);
    let opts = RunOptions {
        spread_interval: Some(interval),
        ..Default::default()
    };
    let (_, report) = best_first_with(&grid, &weights, seeds, spec, cfg, &opts)?;
    let pct: Vec<f64> = report.spread.iter().map(SpreadSample::percent_non_empty).collect();
    let (mean, std) = mean_std(&pct);
    let stats = SpreadStats {
        max: pct.iter().cloned().fold(f64::NEG_INFINITY, f64::max).max(0.0),
        min: if pct.is_empty() { 0.0 } else { pct.iter().cloned().fold(f64::INFINITY, f64::min) },
        mean,
        std,
    };
    Ok(SpreadMatrix { rows: report.spread, stats })
}

// ---------------------------------------------------------------- config

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteFile {
    images: Vec<ImageEntry>,
    costs: Vec<String>,
    algorithms: Vec<String>,
    #[serde(default = "default_reps")]
    repetitions: usize,
    #[serde(default = "default_warmup")]
    warmup: usize,
    #[serde(default = "default_seeds")]
    seeds: String,
    #[serde(default)]
    seed_policy: Option<String>,
    max_seeds: Option<usize>,
    #[serde(default)]
    precompute: bool,
    d: Option<usize>,
    buckets: Option<usize>,
    oracle_limit: Option<usize>,
}

fn default_reps() -> usize {
    3
}

fn default_warmup() -> usize {
    1
}

fn default_seeds() -> String {
    "grid".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ImageEntry {
    name: Option<String>,
    path: Option<PathBuf>,
    kind: Option<String>,
    dims: Option<Vec<usize>>,
    rng_seed: Option<u64>,
    period: Option<f64>,
    clamp: Option<f64>,
    radius: Option<f64>,
    grey_in: Option<u8>,
    grey_out: Option<u8>,
}

/// Builds a synthetic image description from CLI- or config-style fields.
#[allow(clippy::too_many_arguments)]
pub fn synth_spec(
    kind: &str,
    dims: Dims,
    rng_seed: Option<u64>,
    period: Option<f64>,
    clamp: Option<f64>,
    radius: Option<f64>,
    grey_in: Option<u8>,
    grey_out: Option<u8>,
) -> Result<SynthSpec> {
    Ok(match kind {
        "noise" => SynthSpec::noise(dims, rng_seed.unwrap_or(1)),
        "gradient" => SynthSpec::gradient(dims),
        "sinusoid" => SynthSpec::sinusoid(dims, period.unwrap_or(16.0), clamp.unwrap_or(0.5)),
        "uniform-disk" | "disk" => SynthSpec::uniform_disk(dims, radius.unwrap_or(0.6), grey_in.unwrap_or(10), grey_out.unwrap_or(200)),
        other => return Err(Error::usage(format!("unknown image kind `{other}`"))),
    })
}

/// Parses a seed-source word: `grid`, `background`, `centre`, or a path
/// (relative paths are resolved against `base`).
pub fn parse_seed_source(s: &str, base: &Path) -> SeedSource {
    match s {
        "grid" => SeedSource::Grid,
        "background" => SeedSource::Background,
        "centre" | "center" => SeedSource::Centre,
        path => SeedSource::File(base.join(path)),
    }
}

impl BenchmarkSuite {
    /// Parses a TOML suite description. Relative image and seed paths are
    /// resolved against `base`.
    ///
    /// ```toml
    /// costs = ["docs", "graymat"]
    /// algorithms = ["C", "H_A", "HH_A", "D_L"]
    /// repetitions = 3        # default 3
    /// warmup = 1             # default 1
    /// seeds = "grid"         # grid | background | centre | <seed file>
    /// seed_policy = "each"   # each | all
    /// max_seeds = 5
    /// precompute = false     # also time precomputed weight tables
    /// d = 4                  # heap arity override
    /// buckets = 600          # bucket count override
    /// oracle_limit = 65536   # largest image checked against the oracle
    ///
    /// [[images]]
    /// name = "noise"
    /// kind = "noise"         # noise | gradient | sinusoid | uniform-disk
    /// dims = [64, 64]
    /// rng_seed = 1
    ///
    /// [[images]]
    /// path = "scan.raw"      # PGM, or raw data with a .hdr sidecar
    /// ```
    pub fn from_toml(text: &str, base: &Path) -> Result<Self> {
        let file: SuiteFile = toml::from_str(text).map_err(|e| Error::Data(format!("suite config: {e}")))?;
        let mut images = Vec::new();
        for (i, e) in file.images.iter().enumerate() {
            let image = match (&e.path, &e.kind) {
                (Some(p), None) => {
                    let mut b = BenchImage::load(&base.join(p))?;
                    if let Some(n) = &e.name {
                        b.name = n.clone();
                    }
                    b
                }
                (None, Some(kind)) => {
                    let dims = e
                        .dims
                        .as_deref()
                        .ok_or_else(|| Error::Data(format!("images[{i}]: synthetic images need `dims`")))?;
                    let dims = Dims::from_slice(dims)?;
                    let spec = synth_spec(kind, dims, e.rng_seed, e.period, e.clamp, e.radius, e.grey_in, e.grey_out)?;
                    let name = e.name.clone().unwrap_or_else(|| format!("{kind}-{}", io::dims_string(&dims)));
                    BenchImage::synth(name, &spec)?
                }
                _ => return Err(Error::Data(format!("images[{i}]: give exactly one of `path` or `kind`"))),
            };
            images.push(image);
        }
        let costs = file
            .costs
            .iter()
            .map(|c| c.parse::<CostKind>().map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        let policy = match file.seed_policy.as_deref() {
            None | Some("each") => SeedPolicy::EachSeed,
            Some("all") => SeedPolicy::AllAtOnce,
            Some(other) => return Err(Error::Data(format!("unknown seed_policy `{other}`"))),
        };
        let defaults = RunSettings::default();
        let suite = BenchmarkSuite {
            images,
            costs,
            algorithms: file.algorithms,
            d: file.d,
            buckets: file.buckets,
            precompute: file.precompute,
            settings: RunSettings {
                repetitions: file.repetitions,
                warmup: file.warmup,
                seeds: parse_seed_source(&file.seeds, base),
                policy,
                max_seeds: file.max_seeds,
                oracle_limit: file.oracle_limit.unwrap_or(defaults.oracle_limit),
            },
        };
        suite.settings.validate()?;
        for l in &suite.algorithms {
            parse_label(l, false)?;
        }
        Ok(suite)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noise(n: usize) -> BenchImage {
        BenchImage::synth("noise", &SynthSpec::noise(Dims::new2(n, n).unwrap(), 5)).unwrap()
    }

    fn quick() -> RunSettings {
        RunSettings {
            repetitions: 3,
            warmup: 0,
            max_seeds: Some(2),
            ..Default::default()
        }
    }

    #[test]
    fn suite_bookkeeping() {
        let suite = BenchmarkSuite {
            images: vec![noise(16)],
            costs: vec![CostKind::Docs],
            algorithms: vec!["H_A".into(), "HH".into()],
            d: None,
            buckets: None,
            precompute: false,
            settings: quick(),
        };
        let recs = run_suite(&suite).unwrap();
        assert_eq!(recs.len(), 2);
        for r in &recs {
            let m = r.measured.as_ref().unwrap();
            assert_eq!(m.runs, 6);
            assert_eq!(m.error_pct, Some(0.0));
            assert!(m.mean_s > 0.0 && m.std_s >= 0.0);
        }
        assert_eq!(recs[1].buckets, Some(261));
    }

    #[test]
    fn incompatible_combo_is_skipped() {
        let suite = BenchmarkSuite {
            images: vec![noise(16)],
            costs: vec![CostKind::Graymat],
            algorithms: vec!["D_L".into(), "C".into()],
            d: None,
            buckets: None,
            precompute: true,
            settings: quick(),
        };
        let recs = run_suite(&suite).unwrap();
        assert_eq!(recs.len(), 4);
        assert!(recs[0].is_skipped() && recs[0].reason.as_deref().unwrap().contains("integer"));
        assert!(recs[3].measured.as_ref().unwrap().precompute_s.is_some());
        assert!(recs[2].measured.as_ref().unwrap().precompute_s.is_none());
    }

    #[test]
    fn dheap_sweep_cardinality() {
        let recs = dheap_sweep(&[noise(16)], &[CostKind::Docs], &[2, 3, 4, 5, 6, 7], &quick()).unwrap();
        assert_eq!(recs.len(), 18);
        assert!(recs.iter().all(|r| r.measured.as_ref().unwrap().error_pct == Some(0.0)));
        assert_eq!(recs[5].d, Some(7));
        assert!(dheap_sweep(&[noise(16)], &[CostKind::Docs], &[1], &quick()).is_err());
    }

    #[test]
    fn bucket_sweep_hierarchical_is_exact() {
        let fams = [SweepFamily::Hierarchical, SweepFamily::Untidy(BucketOrder::Lifo)];
        let (recs, sums) = bucket_sweep(&[noise(16)], &[CostKind::Docs], &fams, &[1, 2, 261], &quick()).unwrap();
        assert_eq!(recs.len(), 6);
        assert_eq!(sums[0].largest_erroneous, [0, 0]);
        let exact_at_unique = recs.iter().find(|r| r.algorithm == "U_L" && r.buckets == Some(261)).unwrap();
        assert_eq!(exact_at_unique.measured.as_ref().unwrap().error_pct, Some(0.0));
        assert!(sums[1].largest_erroneous.iter().all(|&b| b < 261));
    }

    #[test]
    fn spread_rows_and_stats() {
        let img = noise(24).image;
        let seeds = SeedSet::single(*img.dims(), Coord::new2(0, 0)).unwrap();
        let spec = CostFunctionSpec::new(CostKind::Docs);
        let cfg = QueueConfig::untidy(Some(50), BucketOrder::Lifo, TrackingStrategy::None);
        let m = spread_matrix(&img, &seeds, &spec, &cfg, 10).unwrap();
        assert!(!m.rows.is_empty());
        assert!(m.stats.min <= m.stats.mean && m.stats.mean <= m.stats.max);
        let heap = QueueConfig::d_heap(2, TrackingStrategy::None);
        assert!(spread_matrix(&img, &seeds, &spec, &heap, 10).is_err());
    }

    #[test]
    fn suite_from_toml() {
        let text = r#"
costs = ["docs"]
algorithms = ["H_A", "U_LA"]
repetitions = 2
seeds = "centre"
seed_policy = "all"

[[images]]
kind = "gradient"
dims = [9, 7]
"#;
        let s = BenchmarkSuite::from_toml(text, Path::new(".")).unwrap();
        assert_eq!(s.images[0].name, "gradient-9x7");
        assert_eq!(s.settings.seeds, SeedSource::Centre);
        assert_eq!(s.settings.policy, SeedPolicy::AllAtOnce);
        assert_eq!(run_suite(&s).unwrap().len(), 2);
        assert!(BenchmarkSuite::from_toml("costs = [\"docs\"]\nalgorithms = [\"Q\"]\nimages = []", Path::new(".")).is_err());
        assert!(BenchmarkSuite::from_toml("bogus = 1", Path::new(".")).is_err());
    }
}

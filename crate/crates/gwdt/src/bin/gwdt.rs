//! `gwdt` command line tool.
//!
//! Exit codes: 0 success, 1 usage, 2 data or parse error, 3 configuration
//! incompatible with the cost definition, 4 result failed its reference
//! check.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gwdt::bench::{
    self, parse_seed_source, BenchImage, BenchmarkSuite, RunSettings, SeedPolicy,
    SweepFamily,
};
use gwdt::{io, Error, Result};
use gwdt_core::cost::precompute_weights;
use gwdt_core::grid::Grid;
use gwdt_core::oracle::compare_maps;
use gwdt_core::solvers::{run, run_with};
use gwdt_core::synth::{generate, test_point_grid};
use gwdt_core::{Coord, CostFunctionSpec, CostKind, Dims, GreyImage, RunOptions, SeedSet, SolverMode};

#[derive(Parser)]
#[command(name = "gwdt", version, about = "Grey-weighted distance transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic test image (PGM for 2D, raw + .hdr for 3D).
    Generate(GenerateArgs),
    /// Compute one distance map.
    Transform(TransformArgs),
    /// Run a benchmark suite described by a TOML file.
    Benchmark {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Heap-arity sweep over H, H_A and H_SUM.
    SweepD(SweepDArgs),
    /// Bucket-count sweep for Untidy queues and the hierarchical heap.
    SweepBuckets(SweepBucketsArgs),
    /// Compare two distance maps.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        tol_abs: f64,
        #[arg(long, default_value_t = 0.0)]
        tol_rel: f64,
    },
    /// Sample bucket occupancy during a transform.
    Spread(SpreadArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// noise | gradient | sinusoid | uniform-disk
    #[arg(long)]
    kind: String,
    /// e.g. 64x64 or 24x24x24
    #[arg(long)]
    dims: String,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    rng_seed: Option<u64>,
    #[arg(long)]
    period: Option<f64>,
    #[arg(long)]
    clamp: Option<f64>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    grey_in: Option<u8>,
    #[arg(long)]
    grey_out: Option<u8>,
    /// Also write the 49-point seed grid to this file (2D only).
    #[arg(long)]
    seeds_out: Option<PathBuf>,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct SeedArgs {
    /// Seed file, one `x,y[,z]` per line.
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// All 49 points of the test grid at once.
    #[arg(long)]
    seed_grid: bool,
    /// Every cell with grey level 0 (unseeded transform).
    #[arg(long)]
    background_seeds: bool,
}

impl SeedArgs {
    fn resolve(&self, img: &GreyImage) -> Result<SeedSet> {
        if let Some(p) = &self.seeds {
            Ok(io::read_seeds(p, *img.dims())?)
        } else if self.seed_grid {
            Ok(test_point_grid(*img.dims())?)
        } else {
            SeedSet::background(img).map_err(|_| Error::Data("image has no cell with grey level 0".into()))
        }
    }
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    image: PathBuf,
    #[command(flatten)]
    seeds: SeedArgs,
    #[arg(long)]
    cost: CostKind,
    /// Method label, e.g. C, P_F, H_A, H_SUM, F, D_L, U_SL, HH_A
    #[arg(long)]
    algo: String,
    /// Heap arity.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    buckets: Option<usize>,
    /// full | dilate:<r> | route:<x,y[,z]>
    #[arg(long, default_value = "full")]
    mode: String,
    /// Use a precomputed arc-weight table.
    #[arg(long)]
    precompute: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepCommon {
    /// Input image; repeat for several.
    #[arg(long, required = true)]
    image: Vec<PathBuf>,
    /// Comma-separated cost kinds.
    #[arg(long, default_value = "docs")]
    cost: String,
    /// grid | background | centre | <seed file>
    #[arg(long, default_value = "grid")]
    seeds: String,
    /// Run all seed points together instead of one transform per point.
    #[arg(long)]
    together: bool,
    #[arg(long)]
    max_seeds: Option<usize>,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    warmup: usize,
    #[arg(long)]
    out: PathBuf,
}

impl SweepCommon {
    fn load(&self) -> Result<(Vec<BenchImage>, Vec<CostKind>, RunSettings)> {
        let images = self.image.iter().map(|p| BenchImage::load(p)).collect::<Result<Vec<_>>>()?;
        let costs = parse_costs(&self.cost)?;
        let settings = RunSettings {
            repetitions: self.reps,
            warmup: self.warmup,
            seeds: parse_seed_source(&self.seeds, Path::new("")),
            policy: if self.together { SeedPolicy::AllAtOnce } else { SeedPolicy::EachSeed },
            max_seeds: self.max_seeds,
            ..Default::default()
        };
        Ok((images, costs, settings))
    }
}

#[derive(Args)]
struct SweepDArgs {
    #[command(flatten)]
    common: SweepCommon,
    /// Arity values: `2..7`, `2..16:2` or `2,4,8`.
    #[arg(long, default_value = "2..7")]
    d: String,
}

#[derive(Args)]
struct SweepBucketsArgs {
    #[command(flatten)]
    common: SweepCommon,
    /// Comma-separated: untidy-lifo, untidy-fifo, hierarchical.
    #[arg(long, default_value = "untidy-lifo,untidy-fifo,hierarchical")]
    family: String,
    /// Bucket counts: `1..261`, `1..2551:10` or `1,2,10,100`.
    #[arg(long)]
    buckets: String,
}

#[derive(Args)]
struct SpreadArgs {
    #[arg(long)]
    image: PathBuf,
    #[command(flatten)]
    seeds: SeedArgs,
    #[arg(long)]
    cost: CostKind,
    /// A bucket-queue label: D_L, D_F, U_L, U_F, U_SL, HH, ...
    #[arg(long)]
    algo: String,
    #[arg(long)]
    buckets: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    interval: u64,
    #[arg(long)]
    out: PathBuf,
}

fn parse_costs(s: &str) -> Result<Vec<CostKind>> {
    s.split(',').map(|c| c.trim().parse::<CostKind>().map_err(Error::from)).collect()
}

fn parse_dims(s: &str) -> Result<Dims> {
    let ext: std::result::Result<Vec<usize>, _> = s.split(['x', 'X', ',']).map(|p| p.trim().parse()).collect();
    let ext = ext.map_err(|_| Error::usage(format!("bad dims `{s}`; expected e.g. 64x64")))?;
    Ok(Dims::from_slice(&ext)?)
}

/// `a..b` (inclusive), `a..b:step` or a comma list.
fn parse_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::usage(format!("bad range `{s}`"));
    if let Some((lo, rest)) = s.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((h, st)) => (h, st.trim().parse::<usize>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if step == 0 || lo > hi {
            return Err(bad());
        }
        let mut v: Vec<usize> = (lo..=hi).step_by(step).collect();
        if v.last() != Some(&hi) {
            v.push(hi);
        }
        Ok(v)
    } else {
        s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
    }
}

fn parse_mode(s: &str, dims: &Dims) -> Result<SolverMode> {
    if s == "full" {
        return Ok(SolverMode::Full);
    }
    if let Some(r) = s.strip_prefix("dilate:") {
        let max_distance = r.parse().map_err(|_| Error::usage(format!("bad dilation radius `{r}`")))?;
        return Ok(SolverMode::Dilation { max_distance });
    }
    if let Some(t) = s.strip_prefix("route:") {
        let parts: std::result::Result<Vec<usize>, _> = t.split(',').map(|p| p.trim().parse()).collect();
        let target = match (parts.as_deref(), dims.rank()) {
            (Ok(&[x, y]), 2) => Coord::new2(x, y),
            (Ok(&[x, y, z]), 3) => Coord::new3(x, y, z),
            _ => return Err(Error::usage(format!("bad route target `{t}`"))),
        };
        return Ok(SolverMode::Route { target });
    }
    Err(Error::usage(format!("unknown mode `{s}`")))
}

fn generate_cmd(a: &GenerateArgs) -> Result<()> {
    let dims = parse_dims(&a.dims)?;
    let spec = bench::synth_spec(&a.kind, dims, a.rng_seed, a.period, a.clamp, a.radius, a.grey_in, a.grey_out)?;
    let img = generate(&spec)?;
    io::write_image(&img, &a.out)?;
    if let Some(p) = &a.seeds_out {
        io::write_seeds(&test_point_grid(dims)?, p)?;
    }
    println!("wrote {} image {}", io::dims_string(&dims), a.out.display());
    Ok(())
}

fn transform_cmd(a: &TransformArgs) -> Result<()> {
    let img = io::read_image(&a.image)?;
    let seeds = a.seeds.resolve(&img)?;
    let dims = *img.dims();
    let algo = bench::configure(&a.algo, dims.is_3d(), a.d, a.buckets)?;
    let spec = CostFunctionSpec::new(a.cost);
    if let Some(cfg) = algo.queue_config() {
        cfg.validate(&spec)?;
    }
    let opts = RunOptions::with_mode(parse_mode(&a.mode, &dims)?);
    let start = Instant::now();
    let (map, report) = if a.precompute {
        let table = precompute_weights(&img, &spec)?;
        run_with(&Grid::new(dims), &table, &seeds, &spec, &algo, &opts)?
    } else {
        run(&img, &seeds, &spec, &algo, &opts)?
    };
    let secs = start.elapsed().as_secs_f64();
    io::write_map(&map, &a.out)?;
    println!(
        "{} {} {}: {:.6} s, pops {}, pushes {}, stale {}, decrease-keys {}, iterations {}, peak queue {}",
        algo.label(),
        a.cost,
        io::dims_string(&dims),
        secs,
        report.pops,
        report.pushes,
        report.stale_pops,
        report.decrease_keys,
        report.chamfer_iterations,
        report.peak_queue_len
    );
    Ok(())
}

fn benchmark_cmd(suite: &Path, out: &Path) -> Result<()> {
    let text = std::fs::read_to_string(suite).map_err(|e| Error::Data(format!("{}: {e}", suite.display())))?;
    let base = suite.parent().unwrap_or(Path::new(""));
    let suite = BenchmarkSuite::from_toml(&text, base)?;
    let records = bench::run_suite(&suite)?;
    io::write_csv_file(&records, out)?;
    let skipped = records.iter().filter(|r| r.is_skipped()).count();
    println!("{} records ({} skipped) written to {}", records.len(), skipped, out.display());
    Ok(())
}

fn sweep_d_cmd(a: &SweepDArgs) -> Result<()> {
    let (images, costs, settings) = a.common.load()?;
    let records = bench::dheap_sweep(&images, &costs, &parse_range(&a.d)?, &settings)?;
    io::write_csv_file(&records, &a.common.out)?;
    println!("{} records written to {}", records.len(), a.common.out.display());
    Ok(())
}

fn sweep_buckets_cmd(a: &SweepBucketsArgs) -> Result<()> {
    let (images, costs, settings) = a.common.load()?;
    let families = a.family.split(',').map(|f| f.trim().parse::<SweepFamily>()).collect::<Result<Vec<_>>>()?;
    let (records, summaries) = bench::bucket_sweep(&images, &costs, &families, &parse_range(&a.buckets)?, &settings)?;
    io::write_csv_file(&records, &a.common.out)?;
    println!("largest erroneous bucket count (mean, std over seed sets):");
    for s in &summaries {
        let (m, sd) = s.mean_std();
        println!("  {} {} {}: {:.1} ({:.1})", s.image, s.cost, s.family.label(), m, sd);
    }
    println!("{} records written to {}", records.len(), a.common.out.display());
    Ok(())
}

fn compare_cmd(a: &Path, b: &Path, tol_abs: f64, tol_rel: f64) -> Result<()> {
    let (ma, mb) = (io::read_map(a)?, io::read_map(b)?);
    let r = compare_maps(&ma, &mb, tol_abs, tol_rel)?;
    println!(
        "erroneous {}% ({} of {} cells), max abs diff {}",
        r.erroneous_pixel_percent, r.erroneous, r.count_compared, r.max_abs_diff
    );
    Ok(())
}

fn spread_cmd(a: &SpreadArgs) -> Result<()> {
    let img = io::read_image(&a.image)?;
    let seeds = a.seeds.resolve(&img)?;
    let algo = bench::configure(&a.algo, img.dims().is_3d(), None, a.buckets)?;
    let cfg = algo
        .queue_config()
        .ok_or_else(|| Error::usage("spread needs a bucket-queue algorithm"))?;
    let m = bench::spread_matrix(&img, &seeds, &CostFunctionSpec::new(a.cost), cfg, a.interval)?;
    let file = std::fs::File::create(&a.out).map_err(|e| Error::Data(format!("{}: {e}", a.out.display())))?;
    io::write_spread_csv(&m.rows, std::io::BufWriter::new(file))?;
    println!(
        "{} samples; non-empty buckets %: max {:.2}, min {:.2}, mean {:.2}, std {:.2}",
        m.rows.len(),
        m.stats.max,
        m.stats.min,
        m.stats.mean,
        m.stats.std
    );
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(a) => generate_cmd(&a),
        Command::Transform(a) => transform_cmd(&a),
        Command::Benchmark { suite, out } => benchmark_cmd(&suite, &out),
        Command::SweepD(a) => sweep_d_cmd(&a),
        Command::SweepBuckets(a) => sweep_buckets_cmd(&a),
        Command::Compare { a, b, tol_abs, tol_rel } => compare_cmd(&a, &b, tol_abs, tol_rel),
        Command::Spread(a) => spread_cmd(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gwdt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

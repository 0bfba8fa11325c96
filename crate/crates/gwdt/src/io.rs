//! Image, volume, map, seed and CSV files.
//!
//! 2D images are binary PGM (`P5`, maxval 255). Volumes and distance maps
//! are raw little-endian payloads described by a sidecar text file at
//! `<payload path>.hdr`:
//!
//! ```text
//! # comment
//! dims = 24 24 24
//! type = u8          # or f32
//! byte_order = little
//! offset = 0         # bytes to skip before the payload
//! ```
//!
//! Seed files hold one 0-based `x,y` or `x,y,z` tuple per line; blank
//! lines and `#` comments are ignored.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use gwdt_core::{Coord, Dims, DistanceMap, GreyImage, SeedSet};

use crate::bench::BenchRecord;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// Malformed binary or header data.
    #[error("{}: byte {offset}: {message}", path.display())]
    Format {
        path: PathBuf,
        offset: u64,
        message: String,
    },
    /// Malformed line-oriented text.
    #[error("{}: line {line}: {message}", path.display())]
    Line {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{}: expected {expected} payload bytes, found {found}", path.display())]
    SizeMismatch {
        path: PathBuf,
        expected: u64,
        found: u64,
    },
    #[error("{}: {message}", path.display())]
    Invalid { path: PathBuf, message: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = IoError> = std::result::Result<T, E>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(io_err(path))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(io_err(path))
}

fn invalid(path: &Path, e: impl std::fmt::Display) -> IoError {
    IoError::Invalid {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

// ---------------------------------------------------------------- PGM

/// Decodes a binary PGM. Errors carry the byte offset of the problem.
pub fn decode_pgm(bytes: &[u8]) -> std::result::Result<GreyImage, (u64, String)> {
    let mut pos = 0usize;
    if bytes.get(..2) != Some(b"P5") {
        return Err((0, "not a binary PGM (missing P5 magic)".into()));
    }
    pos += 2;
    let mut fields = [0usize; 3];
    for (i, name) in ["width", "height", "maxval"].iter().enumerate() {
        let start = pos;
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        if pos == start {
            return Err((pos as u64, format!("expected whitespace before {name}")));
        }
        let digits = bytes[pos..].iter().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 {
            return Err((pos as u64, format!("expected {name}")));
        }
        let text = std::str::from_utf8(&bytes[pos..pos + digits]).expect("ascii digits");
        fields[i] = text
            .parse()
            .map_err(|_| (pos as u64, format!("{name} out of range")))?;
        pos += digits;
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err((pos as u64, format!("maxval must be 255, found {maxval}")));
    }
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err((pos as u64, "expected a single whitespace after maxval".into())),
    }
    let dims = Dims::new2(width, height).map_err(|e| (0, e.to_string()))?;
    let payload = &bytes[pos..];
    if payload.len() != dims.len() {
        let what = if payload.len() > dims.len() { "trailing data" } else { "truncated pixel data" };
        return Err((
            (pos + payload.len().min(dims.len())) as u64,
            format!("{what}: expected {} pixel bytes, found {}", dims.len(), payload.len()),
        ));
    }
    GreyImage::new(dims, payload.to_vec()).map_err(|e| (pos as u64, e.to_string()))
}

pub fn encode_pgm(img: &GreyImage) -> Vec<u8> {
    let d = img.dims();
    let mut out = format!("P5\n{} {}\n255\n", d.width(), d.height()).into_bytes();
    out.extend_from_slice(img.values());
    out
}

pub fn read_pgm(path: &Path) -> Result<GreyImage> {
    decode_pgm(&read_bytes(path)?).map_err(|(offset, message)| IoError::Format {
        path: path.to_path_buf(),
        offset,
        message,
    })
}

pub fn write_pgm(img: &GreyImage, path: &Path) -> Result<()> {
    if img.dims().is_3d() {
        return Err(invalid(path, "PGM holds 2D images only"));
    }
    write_bytes(path, &encode_pgm(img))
}

// ---------------------------------------------------------------- sidecar

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementType {
    U8,
    F32,
}

impl ElementType {
    pub fn size(self) -> usize {
        match self {
            ElementType::U8 => 1,
            ElementType::F32 => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ElementType::U8 => "u8",
            ElementType::F32 => "f32",
        }
    }
}

/// Description of a raw payload. Only little-endian data is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VolumeHeader {
    pub dims: Dims,
    pub element: ElementType,
    pub offset: u64,
}

impl VolumeHeader {
    pub fn payload_len(&self) -> u64 {
        (self.dims.len() * self.element.size()) as u64
    }

    pub fn encode(&self) -> String {
        let dims: Vec<String> = self.dims.extents().iter().map(|e| e.to_string()).collect();
        format!(
            "dims = {}\ntype = {}\nbyte_order = little\noffset = {}\n",
            dims.join(" "),
            self.element.name(),
            self.offset
        )
    }

    /// Parses sidecar text; `path` only labels errors.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let err = |line: usize, message: String| IoError::Line {
            path: path.to_path_buf(),
            line,
            message,
        };
        let (mut dims, mut element, mut order, mut offset) = (None, None, None, None);
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(n, format!("expected `key = value`, found `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let slot_taken = match key {
                "dims" => {
                    let ext: std::result::Result<Vec<usize>, _> =
                        value.split(|c: char| c.is_whitespace() || c == 'x' || c == ',').filter(|s| !s.is_empty()).map(str::parse).collect();
                    let ext = ext.map_err(|_| err(n, format!("bad dims `{value}`")))?;
                    let d = Dims::from_slice(&ext).map_err(|e| err(n, e.to_string()))?;
                    dims.replace(d).is_some()
                }
                "type" => {
                    let t = match value {
                        "u8" | "uint8" => ElementType::U8,
                        "f32" | "float32" => ElementType::F32,
                        _ => return Err(err(n, format!("unsupported element type `{value}`"))),
                    };
                    element.replace(t).is_some()
                }
                "byte_order" => {
                    if !matches!(value, "little" | "le" | "little-endian") {
                        return Err(err(n, format!("unsupported byte order `{value}`")));
                    }
                    order.replace(()).is_some()
                }
                "offset" => {
                    let o = value.parse().map_err(|_| err(n, format!("bad offset `{value}`")))?;
                    offset.replace(o).is_some()
                }
                _ => return Err(err(n, format!("unknown key `{key}`"))),
            };
            if slot_taken {
                return Err(err(n, format!("duplicate key `{key}`")));
            }
        }
        let missing = |k: &str| IoError::Invalid {
            path: path.to_path_buf(),
            message: format!("sidecar is missing `{k}`"),
        };
        Ok(VolumeHeader {
            dims: dims.ok_or_else(|| missing("dims"))?,
            element: element.ok_or_else(|| missing("type"))?,
            offset: offset.unwrap_or(0),
        })
    }
}

/// Sidecar path for a raw payload: `<path>.hdr`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".hdr");
    PathBuf::from(s)
}

pub fn read_header(path: &Path) -> Result<VolumeHeader> {
    let hdr = sidecar_path(path);
    let text = fs::read_to_string(&hdr).map_err(io_err(&hdr))?;
    VolumeHeader::parse(&text, &hdr)
}

fn read_payload(path: &Path, expect: ElementType) -> Result<(VolumeHeader, Vec<u8>)> {
    let header = read_header(path)?;
    if header.element != expect {
        return Err(invalid(
            path,
            format!("expected {} payload, sidecar says {}", expect.name(), header.element.name()),
        ));
    }
    let bytes = read_bytes(path)?;
    let start = header.offset.min(bytes.len() as u64);
    let found = bytes.len() as u64 - start;
    if found != header.payload_len() {
        return Err(IoError::SizeMismatch {
            path: path.to_path_buf(),
            expected: header.payload_len(),
            found,
        });
    }
    Ok((header, bytes[start as usize..].to_vec()))
}

fn write_with_header(path: &Path, header: &VolumeHeader, payload: &[u8]) -> Result<()> {
    write_bytes(path, payload)?;
    write_bytes(&sidecar_path(path), header.encode().as_bytes())
}

pub fn read_raw_image(path: &Path) -> Result<GreyImage> {
    let (header, bytes) = read_payload(path, ElementType::U8)?;
    GreyImage::new(header.dims, bytes).map_err(|e| invalid(path, e))
}

pub fn write_raw_image(img: &GreyImage, path: &Path) -> Result<()> {
    let header = VolumeHeader {
        dims: *img.dims(),
        element: ElementType::U8,
        offset: 0,
    };
    write_with_header(path, &header, img.values())
}

/// Reads a raw volume when a sidecar exists, otherwise a PGM.
pub fn read_image(path: &Path) -> Result<GreyImage> {
    if sidecar_path(path).exists() {
        read_raw_image(path)
    } else {
        read_pgm(path)
    }
}

/// Writes 2D images as PGM and 3D images as raw data with a sidecar.
pub fn write_image(img: &GreyImage, path: &Path) -> Result<()> {
    if img.dims().is_3d() {
        write_raw_image(img, path)
    } else {
        write_pgm(img, path)
    }
}

// ---------------------------------------------------------------- maps

/// Writes `f32` little-endian values (unreached cells as `+inf`) plus a
/// sidecar. Path costs above 2^24 lose integer exactness in `f32`.
pub fn write_map(map: &DistanceMap, path: &Path) -> Result<()> {
    let payload: Vec<u8> = map.values().iter().flat_map(|&v| (v as f32).to_le_bytes()).collect();
    let header = VolumeHeader {
        dims: *map.dims(),
        element: ElementType::F32,
        offset: 0,
    };
    write_with_header(path, &header, &payload)
}

pub fn read_map(path: &Path) -> Result<DistanceMap> {
    let (header, bytes) = read_payload(path, ElementType::F32)?;
    let values = bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
        .collect();
    DistanceMap::from_values(header.dims, values).map_err(|e| invalid(path, e))
}

// ---------------------------------------------------------------- seeds

/// Parses seed text against `dims`; `path` only labels errors.
pub fn parse_seeds(text: &str, dims: Dims, path: &Path) -> Result<SeedSet> {
    let err = |line: usize, message: String| IoError::Line {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut coords = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: std::result::Result<Vec<usize>, _> = line.split(',').map(|s| s.trim().parse()).collect();
        let parts = parts.map_err(|_| err(n, format!("expected comma-separated integers, found `{line}`")))?;
        let c = match (parts.as_slice(), dims.rank()) {
            (&[x, y], 2) => Coord::new2(x, y),
            (&[x, y, z], 3) => Coord::new3(x, y, z),
            _ => return Err(err(n, format!("expected {} coordinates, found {}", dims.rank(), parts.len()))),
        };
        if !dims.contains(c) {
            return Err(err(n, format!("coordinate `{line}` is outside the {}-d image", dims.rank())));
        }
        coords.push(c);
    }
    if coords.is_empty() {
        return Err(invalid(path, "seed file lists no coordinates"));
    }
    SeedSet::new(dims, coords).map_err(|e| invalid(path, e))
}

pub fn read_seeds(path: &Path, dims: Dims) -> Result<SeedSet> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_seeds(&text, dims, path)
}

pub fn write_seeds(seeds: &SeedSet, path: &Path) -> Result<()> {
    let mut out = String::new();
    for c in seeds.coords() {
        if seeds.dims().is_3d() {
            out.push_str(&format!("{},{},{}\n", c.x, c.y, c.z));
        } else {
            out.push_str(&format!("{},{}\n", c.x, c.y));
        }
    }
    write_bytes(path, out.as_bytes())
}

// ---------------------------------------------------------------- CSV

pub const CSV_HEADER: [&str; 19] = [
    "algorithm",
    "image",
    "cost",
    "dims",
    "mean_s",
    "std_s",
    "pops",
    "pushes",
    "stale_pops",
    "decrease_keys",
    "iterations",
    "peak_queue",
    "error_pct",
    "d",
    "buckets",
    "weights",
    "precompute_s",
    "runs",
    "reason",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Writes benchmark records with the fixed column order of
/// [`CSV_HEADER`]. Skipped combinations have empty measurement cells and
/// a `reason`.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let m = r.measured.as_ref();
        let f = |g: &dyn Fn(&crate::bench::Measured) -> String| m.map(g).unwrap_or_default();
        w.write_record([
            r.algorithm.clone(),
            r.image.clone(),
            r.cost.to_string(),
            dims_string(&r.dims),
            f(&|m| m.mean_s.to_string()),
            f(&|m| m.std_s.to_string()),
            f(&|m| m.pops.to_string()),
            f(&|m| m.pushes.to_string()),
            f(&|m| m.stale_pops.to_string()),
            f(&|m| m.decrease_keys.to_string()),
            f(&|m| m.iterations.to_string()),
            f(&|m| m.peak_queue.to_string()),
            f(&|m| opt(&m.error_pct)),
            opt(&r.d),
            opt(&r.buckets),
            r.weights.to_string(),
            f(&|m| opt(&m.precompute_s)),
            f(&|m| m.runs.to_string()),
            opt(&r.reason),
        ])?;
    }
    w.flush().map_err(|e| IoError::Csv(e.into()))?;
    Ok(())
}

pub fn write_csv_file(records: &[BenchRecord], path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    write_csv(records, std::io::BufWriter::new(file))
}

/// One row per spread sample: `iteration,first_bucket,percent_non_empty,
/// total,b0,b1,...` with bucket columns starting at the lowest-cost bucket.
pub fn write_spread_csv<W: Write>(rows: &[gwdt_core::queues::SpreadSample], out: W) -> Result<()> {
    let buckets = rows.iter().map(|r| r.occupancy.len()).max().unwrap_or(0);
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    let mut header = vec!["iteration".to_string(), "first_bucket".into(), "percent_non_empty".into(), "total".into()];
    header.extend((0..buckets).map(|i| format!("b{i}")));
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.iteration.to_string(),
            r.first_bucket.to_string(),
            r.percent_non_empty().to_string(),
            r.total().to_string(),
        ];
        rec.extend(r.occupancy.iter().map(u32::to_string));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| IoError::Csv(e.into()))?;
    Ok(())
}

/// `WxH` or `WxHxD`.
pub fn dims_string(d: &Dims) -> String {
    let e: Vec<String> = d.extents().iter().map(|e| e.to_string()).collect();
    e.join("x")
}

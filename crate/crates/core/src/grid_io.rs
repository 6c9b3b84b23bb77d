//! Depth-map and label-mask I/O, global standardization, patch extraction.
//!
//! Depth maps are dense row-major grids of finite reals. Three on-disk
//! formats are supported:
//!
//! * `csv` — comma-separated decimal reals, one row per line
//! * `pgm16` — binary PGM `P5`, maxval 65535, big-endian samples; integer
//!   levels are taken as depths directly
//! * `f64raw` — 16-byte header (width, height as little-endian u64) followed
//!   by width*height little-endian IEEE-754 f64 values, row-major
//!
//! Label masks are PGM files whose samples are class ids 1 (engraved) or 2
//! (natural); 0 is rejected.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Default fraction of class-1 pixels at which a patch is labeled class 1.
pub const DEFAULT_LABEL_THRESHOLD: f64 = 0.5;

/// A rectangular grid of real-valued depths.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthMap {
    width: usize,
    height: usize,
    values: Vec<f64>,
    pixel_pitch: Option<f64>,
}

impl DepthMap {
    /// Build a map from row-major values; every entry must be finite.
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Invalid("depth map dimensions must be positive".into()));
        }
        if values.len() != width * height {
            return Err(Error::Invalid(format!(
                "expected {} values for a {}x{} map, got {}",
                width * height,
                width,
                height,
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Invalid(format!(
                "non-finite depth at (row {}, col {})",
                pos / width,
                pos % width
            )));
        }
        Ok(DepthMap {
            width,
            height,
            values,
            pixel_pitch: None,
        })
    }

    pub fn with_pixel_pitch(mut self, mm_per_pixel: f64) -> Self {
        self.pixel_pitch = Some(mm_per_pixel);
        self
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_pitch(&self) -> Option<f64> {
        self.pixel_pitch
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.height && col < self.width);
        self.values[row * self.width + col]
    }
}

/// Per-pixel class ids paired with a depth map. Class 1 is the minority
/// class of interest (engraved), class 2 the natural surface.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMask {
    width: usize,
    height: usize,
    labels: Vec<u8>,
}

impl LabelMask {
    pub fn new(width: usize, height: usize, labels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Invalid("mask dimensions must be positive".into()));
        }
        if labels.len() != width * height {
            return Err(Error::Invalid(format!(
                "expected {} labels for a {}x{} mask, got {}",
                width * height,
                width,
                height,
                labels.len()
            )));
        }
        if let Some(pos) = labels.iter().position(|&l| l != 1 && l != 2) {
            return Err(Error::Invalid(format!(
                "label {} at (row {}, col {}) is outside {{1, 2}}",
                labels[pos],
                pos / width,
                pos % width
            )));
        }
        Ok(LabelMask {
            width,
            height,
            labels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        debug_assert!(row < self.height && col < self.width);
        self.labels[row * self.width + col]
    }

    /// Number of class-1 pixels.
    pub fn class1_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l == 1).count()
    }
}

/// A square window of depths cut from a source map.
#[derive(Debug, Clone, PartialEq)]
pub struct Patch {
    origin: (usize, usize),
    size: usize,
    values: Vec<f64>,
}

impl Patch {
    pub fn new(origin: (usize, usize), size: usize, values: Vec<f64>) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invalid("patch size must be positive".into()));
        }
        if values.len() != size * size {
            return Err(Error::Invalid(format!(
                "expected {} values for a size-{} patch, got {}",
                size * size,
                size,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("non-finite value in patch".into()));
        }
        Ok(Patch {
            origin,
            size,
            values,
        })
    }

    /// Patch directly from row-major values at origin (0, 0); test helper
    /// and entry point for callers that have no source map.
    pub fn from_values(size: usize, values: Vec<f64>) -> Result<Self> {
        Patch::new((0, 0), size, values)
    }

    pub fn origin(&self) -> (usize, usize) {
        self.origin
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.size && col < self.size);
        self.values[row * self.size + col]
    }

    /// Elementwise map; the result keeps origin and size.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Patch {
        Patch {
            origin: self.origin,
            size: self.size,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Ordered overlapping patches extracted from one source map.
#[derive(Debug, Clone)]
pub struct PatchSet {
    patches: Vec<Patch>,
    stride: usize,
    source_id: String,
}

impl PatchSet {
    pub fn patches(&self) -> &[Patch] {
        &self.patches
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn with_source_id(mut self, id: impl Into<String>) -> Self {
        self.source_id = id.into();
        self
    }

    pub fn len(&self) -> usize {
        self.patches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patches.is_empty()
    }
}

/// On-disk depth-map encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapFormat {
    Csv,
    Pgm16,
    F64Raw,
}

impl MapFormat {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "csv" => Ok(MapFormat::Csv),
            "pgm16" => Ok(MapFormat::Pgm16),
            "f64raw" => Ok(MapFormat::F64Raw),
            other => Err(Error::Invalid(format!("unknown map format '{other}'"))),
        }
    }
}

/// Load a depth map in the declared format.
pub fn load_depth_map(path: &Path, format: MapFormat) -> Result<DepthMap> {
    match format {
        MapFormat::Csv => load_csv(path),
        MapFormat::Pgm16 => load_pgm16(path),
        MapFormat::F64Raw => load_f64raw(path),
    }
}

/// Write a depth map in the given format. `pgm16` quantizes the value range
/// linearly onto [0, 65535] and is therefore lossy.
pub fn save_depth_map(map: &DepthMap, path: &Path, format: MapFormat) -> Result<()> {
    match format {
        MapFormat::Csv => save_csv(map, path),
        MapFormat::Pgm16 => save_pgm16(map, path),
        MapFormat::F64Raw => save_f64raw(map, path),
    }
}

fn load_csv(path: &Path) -> Result<DepthMap> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (row_idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (col_idx, field) in line.split(',').enumerate() {
            let v: f64 = field.trim().parse().map_err(|_| {
                Error::parse(
                    path,
                    format!("unparseable real '{}' at (row {row_idx}, col {col_idx})", field.trim()),
                )
            })?;
            if !v.is_finite() {
                return Err(Error::parse(
                    path,
                    format!("non-finite value at (row {row_idx}, col {col_idx})"),
                ));
            }
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::parse(
                    path,
                    format!(
                        "row {row_idx} has {} fields, expected {}",
                        row.len(),
                        first.len()
                    ),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(path, "empty csv"));
    }
    let width = rows[0].len();
    let height = rows.len();
    DepthMap::new(width, height, rows.into_iter().flatten().collect())
}

fn save_csv(map: &DepthMap, path: &Path) -> Result<()> {
    let mut out = String::new();
    for row in 0..map.height {
        for col in 0..map.width {
            if col > 0 {
                out.push(',');
            }
            out.push_str(&format!("{}", map.get(row, col)));
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// PGM header parsing: tokens separated by whitespace, `#` comments run to
/// end of line, exactly one whitespace byte after maxval.
fn parse_pgm_header(bytes: &[u8], path: &Path) -> Result<(usize, usize, u32, usize)> {
    if bytes.len() < 2 || &bytes[0..2] != b"P5" {
        return Err(Error::parse(path, "missing P5 magic"));
    }
    let mut pos = 2;
    let mut fields = [0u64; 3];
    for field in fields.iter_mut() {
        // skip whitespace and comments
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                break;
            }
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::parse(path, "truncated pgm header"));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse(path, "bad integer in pgm header"))?;
    }
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(Error::parse(path, "missing whitespace after maxval"));
    }
    pos += 1;
    Ok((fields[0] as usize, fields[1] as usize, fields[2] as u32, pos))
}

fn load_pgm16(path: &Path) -> Result<DepthMap> {
    let bytes = fs::read(path)?;
    let (width, height, maxval, data_start) = parse_pgm_header(&bytes, path)?;
    if maxval != 65535 {
        return Err(Error::parse(
            path,
            format!("pgm16 requires maxval 65535, found {maxval}"),
        ));
    }
    let expected = width * height * 2;
    let data = &bytes[data_start..];
    if data.len() < expected {
        return Err(Error::parse(
            path,
            format!("expected {expected} sample bytes, found {}", data.len()),
        ));
    }
    let values = data[..expected]
        .chunks_exact(2)
        .map(|c| u16::from_be_bytes([c[0], c[1]]) as f64)
        .collect();
    DepthMap::new(width, height, values)
}

fn save_pgm16(map: &DepthMap, path: &Path) -> Result<()> {
    let lo = map.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = map.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scale = if hi > lo { 65535.0 / (hi - lo) } else { 0.0 };
    let mut out = Vec::with_capacity(32 + map.values.len() * 2);
    out.extend_from_slice(format!("P5\n{} {}\n65535\n", map.width, map.height).as_bytes());
    for &v in &map.values {
        let level = ((v - lo) * scale).round() as u16;
        out.extend_from_slice(&level.to_be_bytes());
    }
    let mut f = fs::File::create(path)?;
    f.write_all(&out)?;
    Ok(())
}

fn load_f64raw(path: &Path) -> Result<DepthMap> {
    let mut f = fs::File::open(path)?;
    let mut header = [0u8; 16];
    f.read_exact(&mut header)
        .map_err(|_| Error::parse(path, "truncated f64raw header"))?;
    let width = u64::from_le_bytes(header[0..8].try_into().unwrap()) as usize;
    let height = u64::from_le_bytes(header[8..16].try_into().unwrap()) as usize;
    if width == 0 || height == 0 || width.saturating_mul(height) > (1 << 32) {
        return Err(Error::parse(path, format!("implausible dimensions {width}x{height}")));
    }
    let mut data = Vec::new();
    f.read_to_end(&mut data)?;
    let expected = width * height * 8;
    if data.len() != expected {
        return Err(Error::parse(
            path,
            format!("expected {expected} payload bytes, found {}", data.len()),
        ));
    }
    let mut values = Vec::with_capacity(width * height);
    for (idx, chunk) in data.chunks_exact(8).enumerate() {
        let v = f64::from_le_bytes(chunk.try_into().unwrap());
        if !v.is_finite() {
            return Err(Error::parse(
                path,
                format!("non-finite value at (row {}, col {})", idx / width, idx % width),
            ));
        }
        values.push(v);
    }
    DepthMap::new(width, height, values)
}

fn save_f64raw(map: &DepthMap, path: &Path) -> Result<()> {
    let mut out = Vec::with_capacity(16 + map.values.len() * 8);
    out.extend_from_slice(&(map.width as u64).to_le_bytes());
    out.extend_from_slice(&(map.height as u64).to_le_bytes());
    for &v in &map.values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    let mut f = fs::File::create(path)?;
    f.write_all(&out)?;
    Ok(())
}

/// Load a label mask from a PGM file; any maxval is accepted, samples are
/// one byte when maxval < 256 and two big-endian bytes otherwise.
pub fn load_label_mask(path: &Path) -> Result<LabelMask> {
    let bytes = fs::read(path)?;
    let (width, height, maxval, data_start) = parse_pgm_header(&bytes, path)?;
    let data = &bytes[data_start..];
    let labels: Vec<u8> = if maxval < 256 {
        if data.len() < width * height {
            return Err(Error::parse(path, "truncated mask payload"));
        }
        data[..width * height].to_vec()
    } else {
        if data.len() < width * height * 2 {
            return Err(Error::parse(path, "truncated mask payload"));
        }
        data[..width * height * 2]
            .chunks_exact(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]).min(255) as u8)
            .collect()
    };
    LabelMask::new(width, height, labels).map_err(|e| match e {
        Error::Invalid(detail) => Error::parse(path, detail),
        other => other,
    })
}

pub fn save_label_mask(mask: &LabelMask, path: &Path) -> Result<()> {
    let mut out = Vec::with_capacity(32 + mask.labels.len());
    out.extend_from_slice(format!("P5\n{} {}\n2\n", mask.width, mask.height).as_bytes());
    out.extend_from_slice(&mask.labels);
    let mut f = fs::File::create(path)?;
    f.write_all(&out)?;
    Ok(())
}

/// Z-standardize all depths of the map (population convention): output has
/// mean 0 and standard deviation 1. A constant map is rejected.
pub fn z_standardize_global(map: &DepthMap) -> Result<DepthMap> {
    let n = map.values.len() as f64;
    let mean = map.values.iter().sum::<f64>() / n;
    let var = map.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    if var == 0.0 {
        return Err(Error::Degenerate(
            "constant depth map has zero standard deviation".into(),
        ));
    }
    let std = var.sqrt();
    let values = map.values.iter().map(|v| (v - mean) / std).collect();
    Ok(DepthMap {
        width: map.width,
        height: map.height,
        values,
        pixel_pitch: map.pixel_pitch,
    })
}

/// Extract all size×size patches at origins `(i*stride, j*stride)` that lie
/// fully inside the map, in row-major origin order.
pub fn extract_patches(map: &DepthMap, size: usize, stride: usize) -> Result<PatchSet> {
    if size > map.width || size > map.height {
        return Err(Error::Invalid(format!(
            "patch size {} exceeds map dimensions {}x{}",
            size, map.width, map.height
        )));
    }
    if stride == 0 {
        return Err(Error::Invalid("stride must be >= 1".into()));
    }
    let rows = (map.height - size) / stride + 1;
    let cols = (map.width - size) / stride + 1;
    let mut patches = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let (r0, c0) = (i * stride, j * stride);
            let mut values = Vec::with_capacity(size * size);
            for r in 0..size {
                let start = (r0 + r) * map.width + c0;
                values.extend_from_slice(&map.values[start..start + size]);
            }
            patches.push(Patch {
                origin: (r0, c0),
                size,
                values,
            });
        }
    }
    Ok(PatchSet {
        patches,
        stride,
        source_id: String::new(),
    })
}

/// Label a patch from the mask under its footprint: class 1 iff the class-1
/// fraction is >= `threshold` (ties go to the minority class 1).
pub fn patch_label(mask: &LabelMask, patch: &Patch, threshold: f64) -> Result<u8> {
    let (r0, c0) = patch.origin;
    let s = patch.size;
    if r0 + s > mask.height || c0 + s > mask.width {
        return Err(Error::Invalid(format!(
            "patch at ({r0}, {c0}) size {s} exceeds mask bounds {}x{}",
            mask.width, mask.height
        )));
    }
    let mut class1 = 0usize;
    for r in r0..r0 + s {
        for c in c0..c0 + s {
            if mask.get(r, c) == 1 {
                class1 += 1;
            }
        }
    }
    let frac = class1 as f64 / (s * s) as f64;
    Ok(if frac >= threshold { 1 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tmp() -> tempfile::TempDir {
        tempfile::tempdir().unwrap()
    }

    #[test]
    fn csv_round_trip_small() {
        let dir = tmp();
        let p = dir.path().join("m.csv");
        fs::write(&p, "0,1\n2,3\n").unwrap();
        let m = load_depth_map(&p, MapFormat::Csv).unwrap();
        assert_eq!((m.width(), m.height()), (2, 2));
        assert_eq!(m.values(), &[0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn csv_rejects_nan_with_position() {
        let dir = tmp();
        let p = dir.path().join("m.csv");
        fs::write(&p, "0,1\n2,nan\n").unwrap();
        let err = load_depth_map(&p, MapFormat::Csv).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 1") && msg.contains("col 1"), "{msg}");
    }

    #[test]
    fn pgm16_all_zero() {
        let dir = tmp();
        let p = dir.path().join("m.pgm");
        let mut bytes = b"P5\n3 2\n65535\n".to_vec();
        bytes.extend_from_slice(&[0u8; 12]);
        fs::write(&p, bytes).unwrap();
        let m = load_depth_map(&p, MapFormat::Pgm16).unwrap();
        assert_eq!((m.width(), m.height()), (3, 2));
        assert!(m.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn pgm16_rejects_wrong_maxval() {
        let dir = tmp();
        let p = dir.path().join("m.pgm");
        fs::write(&p, b"P5\n1 1\n255\n\x00".to_vec()).unwrap();
        assert!(load_depth_map(&p, MapFormat::Pgm16).is_err());
    }

    #[test]
    fn f64raw_round_trip() {
        let dir = tmp();
        let p = dir.path().join("m.f64");
        let m = DepthMap::new(3, 2, vec![0.5, -1.25, 3.0, 4.5, 5.0, -6.75]).unwrap();
        save_depth_map(&m, &p, MapFormat::F64Raw).unwrap();
        let back = load_depth_map(&p, MapFormat::F64Raw).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn f64raw_rejects_nan_with_position() {
        let dir = tmp();
        let p = dir.path().join("m.f64");
        let mut out = Vec::new();
        out.extend_from_slice(&2u64.to_le_bytes());
        out.extend_from_slice(&1u64.to_le_bytes());
        out.extend_from_slice(&1.0f64.to_le_bytes());
        out.extend_from_slice(&f64::NAN.to_le_bytes());
        fs::write(&p, out).unwrap();
        let msg = load_depth_map(&p, MapFormat::F64Raw).unwrap_err().to_string();
        assert!(msg.contains("row 0") && msg.contains("col 1"), "{msg}");
    }

    #[test]
    fn mask_round_trip_and_zero_rejected() {
        let dir = tmp();
        let p = dir.path().join("m.pgm");
        let mask = LabelMask::new(2, 2, vec![1, 2, 2, 1]).unwrap();
        save_label_mask(&mask, &p).unwrap();
        assert_eq!(load_label_mask(&p).unwrap(), mask);

        let bad = dir.path().join("bad.pgm");
        fs::write(&bad, b"P5\n2 1\n2\n\x00\x01".to_vec()).unwrap();
        assert!(load_label_mask(&bad).is_err());
    }

    #[test]
    fn standardize_two_point() {
        let m = DepthMap::new(2, 1, vec![0.0, 2.0]).unwrap();
        let s = z_standardize_global(&m).unwrap();
        assert_eq!(s.values(), &[-1.0, 1.0]);
    }

    #[test]
    fn standardize_idempotent() {
        let m = DepthMap::new(2, 2, vec![0.3, -1.7, 2.2, 0.9]).unwrap();
        let s1 = z_standardize_global(&m).unwrap();
        let s2 = z_standardize_global(&s1).unwrap();
        for (a, b) in s1.values().iter().zip(s2.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn standardize_moments_recomputed() {
        // independent recomputation of the output moments
        let m = DepthMap::new(4, 1, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let s = z_standardize_global(&m).unwrap();
        let n = 4.0;
        let mean = s.values().iter().sum::<f64>() / n;
        let var = s.values().iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        assert!(mean.abs() < 1e-12);
        assert!((var.sqrt() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn standardize_rejects_constant() {
        let m = DepthMap::new(2, 2, vec![5.0; 4]).unwrap();
        assert!(matches!(z_standardize_global(&m), Err(Error::Degenerate(_))));
    }

    #[test]
    fn patch_counts() {
        let m = DepthMap::new(128, 128, vec![0.0; 128 * 128]).unwrap();
        assert_eq!(extract_patches(&m, 128, 16).unwrap().len(), 1);

        let vals: Vec<f64> = (0..160 * 160).map(|i| i as f64).collect();
        let m = DepthMap::new(160, 160, vals).unwrap();
        assert_eq!(extract_patches(&m, 128, 16).unwrap().len(), 9);

        let m = DepthMap::new(4, 4, (0..16).map(|i| i as f64).collect()).unwrap();
        let set = extract_patches(&m, 2, 2).unwrap();
        assert_eq!(set.len(), 4);
        // non-overlapping tiling
        assert_eq!(set.patches()[3].values(), &[10.0, 11.0, 14.0, 15.0]);
    }

    #[test]
    fn patch_size_too_large() {
        let m = DepthMap::new(4, 4, vec![0.0; 16]).unwrap();
        assert!(extract_patches(&m, 5, 1).is_err());
    }

    #[test]
    fn patch_values_match_source() {
        let vals: Vec<f64> = (0..36).map(|i| i as f64).collect();
        let m = DepthMap::new(6, 6, vals).unwrap();
        let set = extract_patches(&m, 3, 2).unwrap();
        for p in set.patches() {
            let (r0, c0) = p.origin();
            for r in 0..3 {
                for c in 0..3 {
                    assert_eq!(p.get(r, c), m.get(r0 + r, c0 + c));
                }
            }
        }
    }

    #[test]
    fn patch_label_rules() {
        let mask = LabelMask::new(2, 2, vec![1, 1, 1, 1]).unwrap();
        let p = Patch::from_values(2, vec![0.0; 4]).unwrap();
        assert_eq!(patch_label(&mask, &p, 0.5).unwrap(), 1);

        let mask = LabelMask::new(2, 2, vec![2, 2, 2, 2]).unwrap();
        assert_eq!(patch_label(&mask, &p, 0.5).unwrap(), 2);

        // exactly 50% -> minority class 1
        let mask = LabelMask::new(2, 2, vec![1, 1, 2, 2]).unwrap();
        assert_eq!(patch_label(&mask, &p, 0.5).unwrap(), 1);
    }

    proptest! {
        #[test]
        fn standardize_affine_invariant(
            base in proptest::collection::vec(-100.0f64..100.0, 9),
            a in 0.1f64..10.0,
            b in -50.0f64..50.0,
        ) {
            prop_assume!(base.iter().any(|&v| (v - base[0]).abs() > 1e-6));
            let m = DepthMap::new(3, 3, base.clone()).unwrap();
            let scaled = DepthMap::new(3, 3, base.iter().map(|v| a * v + b).collect()).unwrap();
            let s1 = z_standardize_global(&m).unwrap();
            let s2 = z_standardize_global(&scaled).unwrap();
            for (x, y) in s1.values().iter().zip(s2.values()) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }

        #[test]
        fn patch_count_formula(h in 3usize..20, w in 3usize..20, s in 1usize..6, stride in 1usize..4) {
            prop_assume!(s <= w && s <= h);
            let m = DepthMap::new(w, h, vec![0.0; w * h]).unwrap();
            let set = extract_patches(&m, s, stride).unwrap();
            let expect = ((h - s) / stride + 1) * ((w - s) / stride + 1);
            prop_assert_eq!(set.len(), expect);
        }
    }
}

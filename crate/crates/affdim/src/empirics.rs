//! Desk-scale empirical verification: depth-m rectangle covers of the
//! attractor, chaos-game sampling, mesh box counting with log-log
//! regression, and rasterization of the attractors to PGM/PPM images.

use crate::digits::DigitSetSpec;
use crate::error::Error;
use crate::luroth::phi_map;
use crate::svf::Diagonal2;
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::io::Write;

const ENUM_BUDGET: u64 = 10_000_000;

/// One planar affine contraction: x ↦ L·x + v with diagonal L.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineMap2 {
    pub linear: Diagonal2,
    pub translation: (f64, f64),
}

impl AffineMap2 {
    pub fn new(linear: Diagonal2, translation: (f64, f64)) -> Self {
        AffineMap2 { linear, translation }
    }

    pub fn apply(&self, point: (f64, f64)) -> (f64, f64) {
        (
            self.linear.a * point.0 + self.translation.0,
            self.linear.b * point.1 + self.translation.1,
        )
    }

    /// Composition self ∘ other.
    pub fn compose(&self, other: &AffineMap2) -> AffineMap2 {
        AffineMap2 {
            linear: Diagonal2::new(self.linear.a * other.linear.a, self.linear.b * other.linear.b),
            translation: (
                self.linear.a * other.translation.0 + self.translation.0,
                self.linear.b * other.translation.1 + self.translation.1,
            ),
        }
    }

    const IDENTITY: AffineMap2 = AffineMap2 {
        linear: Diagonal2 { a: 1.0, b: 1.0 },
        translation: (0.0, 0.0),
    };
}

/// The planar Lüroth maps A^p_{s,d} for a finite digit set.
pub fn luroth_maps(j: &DigitSetSpec, p: f64) -> Result<Vec<AffineMap2>> {
    j.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidInput(format!("p must lie in (0,1), got {p}")));
    }
    let pairs = j
        .finite_pairs()
        .ok_or_else(|| Error::InvalidInput("cover generation needs a finite digit set".into()))?;
    Ok(pairs
        .iter()
        .map(|pair| {
            let a = if pair.s == 0 { p } else { 1.0 - p };
            let b = if pair.s == 0 { pair.ratio() } else { -pair.ratio() };
            let v = (
                pair.s as f64 * p,
                1.0 / (pair.d - pair.s as u64) as f64,
            );
            AffineMap2::new(Diagonal2::new(a, b), v)
        })
        .collect())
}

/// Four maps diag(1/4, 1/16): the product of the middle-1/2 Cantor set
/// with the middle-7/8 Cantor set.
pub fn cantor_product_maps() -> Vec<AffineMap2> {
    let mut maps = Vec::new();
    for &tx in &[0.0, 0.75] {
        for &ty in &[0.0, 0.9375] {
            maps.push(AffineMap2::new(Diagonal2::new(0.25, 0.0625), (tx, ty)));
        }
    }
    maps
}

/// Axis-aligned image of the unit square under a composed map.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverRectangle {
    pub x0: f64,
    pub y0: f64,
    pub width: f64,
    pub height: f64,
    pub depth: u32,
}

impl CoverRectangle {
    fn from_map(m: &AffineMap2, depth: u32) -> CoverRectangle {
        CoverRectangle {
            x0: m.translation.0 + m.linear.a.min(0.0),
            y0: m.translation.1 + m.linear.b.min(0.0),
            width: m.linear.a.abs(),
            height: m.linear.b.abs(),
            depth,
        }
    }

    pub fn contains(&self, point: (f64, f64), slack: f64) -> bool {
        point.0 >= self.x0 - slack
            && point.0 <= self.x0 + self.width + slack
            && point.1 >= self.y0 - slack
            && point.1 <= self.y0 + self.height + slack
    }

    /// Euclidean distance from a point to the (closed) rectangle.
    pub fn distance(&self, point: (f64, f64)) -> f64 {
        let dx = (self.x0 - point.0).max(point.0 - (self.x0 + self.width)).max(0.0);
        let dy = (self.y0 - point.1).max(point.1 - (self.y0 + self.height)).max(0.0);
        (dx * dx + dy * dy).sqrt()
    }
}

fn check_budget(n_maps: usize, depth: u32) -> Result<u64> {
    (n_maps as u64)
        .checked_pow(depth)
        .filter(|&w| w <= ENUM_BUDGET)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!(
                "{n_maps}^{depth} rectangles exceed the {ENUM_BUDGET} enumeration budget"
            ))
        })
}

fn subtree(maps: &[AffineMap2], prefix: AffineMap2, depth: u32, out: &mut Vec<CoverRectangle>) {
    if depth == 0 {
        out.push(CoverRectangle::from_map(&prefix, 0));
        return;
    }
    for m in maps {
        subtree(maps, prefix.compose(m), depth - 1, out);
    }
}

fn thread_count() -> usize {
    std::env::var("AFFDIM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// All |I|^m depth-m images of the unit square; their union contains
/// the attractor. Output order is the depth-first word order regardless
/// of thread count.
pub fn generate_cover(maps: &[AffineMap2], depth: u32) -> Result<Vec<CoverRectangle>> {
    generate_cover_threaded(maps, depth, thread_count())
}

pub fn generate_cover_threaded(
    maps: &[AffineMap2],
    depth: u32,
    threads: usize,
) -> Result<Vec<CoverRectangle>> {
    if maps.is_empty() {
        return Err(Error::InvalidInput("cover needs a non-empty map family".into()));
    }
    let total = check_budget(maps.len(), depth)?;
    let mut out = Vec::with_capacity(total as usize);
    if depth == 0 {
        out.push(CoverRectangle::from_map(&AffineMap2::IDENTITY, 0));
        return Ok(out);
    }
    if threads <= 1 || maps.len() < 2 {
        subtree(maps, AffineMap2::IDENTITY, depth, &mut out);
    } else {
        // one task per top-level branch; merging in branch order keeps
        // the output identical to the sequential enumeration
        let chunks: Vec<Vec<CoverRectangle>> = std::thread::scope(|scope| {
            let handles: Vec<_> = maps
                .iter()
                .map(|m| {
                    scope.spawn(move || {
                        let mut part = Vec::new();
                        subtree(maps, *m, depth - 1, &mut part);
                        part
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("cover worker")).collect()
        });
        for chunk in chunks {
            out.extend(chunk);
        }
    }
    for r in &mut out {
        r.depth = depth;
    }
    Ok(out)
}

/// Depth-m interval cover of the 1-D restricted digit set F_J.
pub fn generate_cover_1d(j: &DigitSetSpec, depth: u32) -> Result<Vec<(f64, f64)>> {
    let pairs = j
        .finite_pairs()
        .ok_or_else(|| Error::InvalidInput("1-D cover needs a finite digit set".into()))?;
    check_budget(pairs.len(), depth)?;
    // φ_{s,d} is affine: slope (−1)^s/(d(d−1)), intercept φ_{s,d}(0)
    let affine: Vec<(f64, f64)> = pairs
        .iter()
        .map(|pair| {
            let slope = if pair.s == 0 { pair.ratio() } else { -pair.ratio() };
            (slope, phi_map(*pair, 0.0).expect("x = 0 is in range"))
        })
        .collect();
    fn walk(maps: &[(f64, f64)], a: f64, t: f64, depth: u32, out: &mut Vec<(f64, f64)>) {
        if depth == 0 {
            out.push((t + a.min(0.0), a.abs()));
            return;
        }
        for &(ma, mt) in maps {
            walk(maps, a * ma, a * mt + t, depth - 1, out);
        }
    }
    let mut out = Vec::new();
    walk(&affine, 1.0, 0.0, depth, &mut out);
    Ok(out)
}

/// Attractor samples: burn in 64 iterations from the square's center,
/// then record `n_points` iterates under uniformly chosen maps.
/// Deterministic for a fixed seed.
pub fn chaos_game(maps: &[AffineMap2], n_points: usize, seed: u64) -> Result<Vec<(f64, f64)>> {
    if maps.is_empty() || n_points == 0 {
        return Err(Error::InvalidInput("chaos game needs maps and n_points ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut point = (0.5, 0.5);
    for _ in 0..64 {
        point = maps[rng.gen_range(0..maps.len())].apply(point);
    }
    let mut out = Vec::with_capacity(n_points);
    for _ in 0..n_points {
        point = maps[rng.gen_range(0..maps.len())].apply(point);
        out.push(point);
    }
    Ok(out)
}

/// Smallest distance from a point to the union of depth-m cover
/// rectangles, found by branch-and-bound descent through the cover tree
/// (a subtree is pruned when its bounding rectangle is already farther
/// than the best distance found).
pub fn distance_to_cover(maps: &[AffineMap2], point: (f64, f64), depth: u32) -> f64 {
    fn descend(
        maps: &[AffineMap2],
        prefix: &AffineMap2,
        point: (f64, f64),
        depth: u32,
        best: &mut f64,
    ) {
        let here = CoverRectangle::from_map(prefix, 0).distance(point);
        if here >= *best {
            return;
        }
        if depth == 0 {
            *best = here;
            return;
        }
        for m in maps {
            descend(maps, &prefix.compose(m), point, depth - 1, best);
        }
    }
    let mut best = f64::INFINITY;
    descend(maps, &AffineMap2::IDENTITY, point, depth, &mut best);
    best
}

/// A (δ, N_δ) ladder with its log-log regression.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoxCountSeries {
    pub entries: Vec<(f64, u64)>,
    pub slope: f64,
    pub fit_residual: f64,
}

impl BoxCountSeries {
    /// Least-squares slope of log2 N against −log2 δ over the window
    /// that drops `skip_large` of the largest and `skip_small` of the
    /// smallest δ (transient and saturation regimes). Falls back to the
    /// full ladder when the window would keep fewer than two points.
    pub fn fit(entries: Vec<(f64, u64)>, skip_large: usize, skip_small: usize) -> BoxCountSeries {
        let n = entries.len();
        let window: Vec<(f64, f64)> = if n >= skip_large + skip_small + 2 {
            &entries[skip_large..n - skip_small]
        } else {
            &entries[..]
        }
        .iter()
        .map(|&(d, c)| (-d.log2(), (c as f64).log2()))
        .collect();
        let m = window.len() as f64;
        let sx: f64 = window.iter().map(|p| p.0).sum();
        let sy: f64 = window.iter().map(|p| p.1).sum();
        let sxx: f64 = window.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = window.iter().map(|p| p.0 * p.1).sum();
        let denom = m * sxx - sx * sx;
        let slope = if denom.abs() < 1e-300 { 0.0 } else { (m * sxy - sx * sy) / denom };
        let intercept = (sy - slope * sx) / m;
        let fit_residual = (window
            .iter()
            .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
            .sum::<f64>()
            / m)
            .sqrt();
        BoxCountSeries { entries, slope, fit_residual }
    }
}

fn validate_deltas(deltas: &[f64]) -> Result<()> {
    if deltas.is_empty() || deltas.windows(2).any(|w| w[1] >= w[0]) || deltas[0] > 1.0 {
        return Err(Error::InvalidInput(
            "deltas must be a strictly decreasing ladder within (0,1]".into(),
        ));
    }
    Ok(())
}

/// Mesh cell index: half-open cells [jδ, (j+1)δ), with the top cell
/// closed so the attractor's boundary at 1 is not pushed outside the
/// unit-square grid.
fn cell(x: f64, delta: f64) -> i64 {
    let n = (1.0 / delta).round() as i64;
    ((x / delta).floor() as i64).min(n - 1).max(0)
}

/// The default δ ladder 2^−4 … 2^−12.
pub fn default_deltas() -> Vec<f64> {
    (4..=12).map(|j| 2f64.powi(-j)).collect()
}

pub fn box_count_points(points: &[(f64, f64)], deltas: &[f64]) -> Result<BoxCountSeries> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point set".into()));
    }
    validate_deltas(deltas)?;
    let entries = deltas
        .iter()
        .map(|&d| {
            let cells: HashSet<(i64, i64)> =
                points.iter().map(|&(x, y)| (cell(x, d), cell(y, d))).collect();
            (d, cells.len() as u64)
        })
        .collect();
    Ok(BoxCountSeries::fit(entries, 2, 2))
}

pub fn box_count_rects(rects: &[CoverRectangle], deltas: &[f64]) -> Result<BoxCountSeries> {
    if rects.is_empty() {
        return Err(Error::InvalidInput("empty rectangle cover".into()));
    }
    validate_deltas(deltas)?;
    let entries = deltas
        .iter()
        .map(|&d| {
            let mut cells: HashSet<(i64, i64)> = HashSet::new();
            for r in rects {
                let (i0, i1) = (cell(r.x0, d), cell(r.x0 + r.width, d));
                let (j0, j1) = (cell(r.y0, d), cell(r.y0 + r.height, d));
                for i in i0..=i1 {
                    for j in j0..=j1 {
                        cells.insert((i, j));
                    }
                }
            }
            (d, cells.len() as u64)
        })
        .collect();
    Ok(BoxCountSeries::fit(entries, 2, 2))
}

pub fn box_count_intervals(intervals: &[(f64, f64)], deltas: &[f64]) -> Result<BoxCountSeries> {
    if intervals.is_empty() {
        return Err(Error::InvalidInput("empty interval cover".into()));
    }
    validate_deltas(deltas)?;
    let entries = deltas
        .iter()
        .map(|&d| {
            let mut cells: HashSet<i64> = HashSet::new();
            for &(x0, len) in intervals {
                for i in cell(x0, d)..=cell(x0 + len, d) {
                    cells.insert(i);
                }
            }
            (d, cells.len() as u64)
        })
        .collect();
    Ok(BoxCountSeries::fit(entries, 2, 2))
}

/// Binary occupancy raster of the unit square, row 0 at the top
/// (y near 1).
#[derive(Clone, Debug)]
pub struct ImageGrid {
    pub resolution: u32,
    /// Row-major; `true` means occupied.
    pub pixels: Vec<bool>,
}

impl ImageGrid {
    pub fn occupied(&self, col: u32, row: u32) -> bool {
        self.pixels[(row * self.resolution + col) as usize]
    }
}

/// Rasterize the depth-m cover onto a resolution × resolution grid.
pub fn render(maps: &[AffineMap2], resolution: u32, depth: u32) -> Result<ImageGrid> {
    if resolution == 0 || resolution > 4096 {
        return Err(Error::InvalidInput("resolution must lie in 1..=4096".into()));
    }
    let rects = generate_cover(maps, depth)?;
    let mut pixels = vec![false; (resolution as usize).pow(2)];
    let res = resolution as f64;
    for r in &rects {
        let i0 = ((r.x0 * res).floor() as i64).clamp(0, resolution as i64 - 1);
        let i1 = (((r.x0 + r.width) * res).floor() as i64).clamp(0, resolution as i64 - 1);
        let j0 = ((r.y0 * res).floor() as i64).clamp(0, resolution as i64 - 1);
        let j1 = (((r.y0 + r.height) * res).floor() as i64).clamp(0, resolution as i64 - 1);
        for j in j0..=j1 {
            let row = resolution as i64 - 1 - j; // flip y for image rows
            for i in i0..=i1 {
                pixels[(row * resolution as i64 + i) as usize] = true;
            }
        }
    }
    Ok(ImageGrid { resolution, pixels })
}

/// Binary PGM (P5), one byte per pixel: occupied = black.
pub fn write_pgm<W: Write>(grid: &ImageGrid, mut w: W) -> std::io::Result<()> {
    write!(w, "P5\n{} {}\n255\n", grid.resolution, grid.resolution)?;
    let bytes: Vec<u8> = grid.pixels.iter().map(|&p| if p { 0 } else { 255 }).collect();
    w.write_all(&bytes)
}

/// PPM (P6) with chaos-game samples overlaid in red on the cover.
pub fn write_ppm_overlay<W: Write>(
    grid: &ImageGrid,
    points: &[(f64, f64)],
    mut w: W,
) -> std::io::Result<()> {
    let res = grid.resolution as usize;
    let mut rgb: Vec<u8> = Vec::with_capacity(res * res * 3);
    for &p in &grid.pixels {
        let v = if p { 0 } else { 255 };
        rgb.extend_from_slice(&[v, v, v]);
    }
    for &(x, y) in points {
        let i = ((x * res as f64).floor() as i64).clamp(0, res as i64 - 1) as usize;
        let j = ((y * res as f64).floor() as i64).clamp(0, res as i64 - 1) as usize;
        let row = res - 1 - j;
        let off = (row * res + i) * 3;
        rgb[off] = 220;
        rgb[off + 1] = 30;
        rgb[off + 2] = 30;
    }
    write!(w, "P6\n{} {}\n255\n", grid.resolution, grid.resolution)?;
    w.write_all(&rgb)
}

/// CSV with header `delta,count,log2_delta,log2_count`.
pub fn write_csv<W: Write>(series: &BoxCountSeries, mut w: W) -> std::io::Result<()> {
    writeln!(w, "delta,count,log2_delta,log2_count")?;
    for &(d, c) in &series.entries {
        writeln!(w, "{},{},{},{}", d, c, d.log2(), (c as f64).log2())?;
    }
    Ok(())
}

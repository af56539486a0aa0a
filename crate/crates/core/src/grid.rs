//! Domain box, uniform grids, cell-centered grid functions and cube families.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// The truncation box `[−L, L]ⁿ` with an interior margin reserved for test inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainBox {
    dim: usize,
    half_width: f64,
    margin: f64,
}

impl DomainBox {
    pub fn new(dim: usize, half_width: f64, margin: f64) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::param(format!("dimension must be 1 or 2, got {dim}")));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::param(format!("half-width must be positive, got {half_width}")));
        }
        if !(margin > 0.0 && margin < half_width) {
            return Err(Error::param(format!("margin must lie in (0, {half_width}), got {margin}")));
        }
        Ok(DomainBox { dim, half_width, margin })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    /// Half-width of the region `[−L+m, L−m]ⁿ` that test inputs must live in.
    pub fn support_half_width(&self) -> f64 {
        self.half_width - self.margin
    }
}

/// Uniform grid with `2^J` cells per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    domain: DomainBox,
    level: u32,
}

impl Grid {
    pub const MIN_LEVEL: u32 = 3;

    pub fn new(domain: DomainBox, level: u32) -> Result<Self> {
        if level < Self::MIN_LEVEL {
            return Err(Error::param(format!("resolution exponent J must be >= 3, got {level}")));
        }
        let max = if domain.dim == 1 { 24 } else { 12 };
        if level > max {
            return Err(Error::param(format!("resolution exponent J={level} exceeds {max} for n={}", domain.dim)));
        }
        Ok(Grid { domain, level })
    }

    /// Shorthand for `Grid::new(DomainBox::new(dim, l, m)?, level)`.
    pub fn with(dim: usize, half_width: f64, margin: f64, level: u32) -> Result<Self> {
        Grid::new(DomainBox::new(dim, half_width, margin)?, level)
    }

    pub fn domain(&self) -> &DomainBox {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn half_width(&self) -> f64 {
        self.domain.half_width
    }

    pub fn cells_per_axis(&self) -> usize {
        1usize << self.level
    }

    pub fn len(&self) -> usize {
        self.cells_per_axis().pow(self.dim() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cell_width(&self) -> f64 {
        2.0 * self.domain.half_width / self.cells_per_axis() as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.cell_width().powi(self.dim() as i32)
    }

    /// Coordinate of the left edge of cell `i` along one axis.
    pub fn edge(&self, i: usize) -> f64 {
        -self.domain.half_width + i as f64 * self.cell_width()
    }

    pub fn axis_center(&self, i: usize) -> f64 {
        -self.domain.half_width + (i as f64 + 0.5) * self.cell_width()
    }

    /// Per-axis indices of a cell (row-major, axis 0 slowest).
    pub fn multi_index(&self, idx: usize) -> [usize; 2] {
        if self.dim() == 1 {
            [idx, 0]
        } else {
            let n = self.cells_per_axis();
            [idx / n, idx % n]
        }
    }

    pub fn linear_index(&self, ix: [usize; 2]) -> usize {
        if self.dim() == 1 {
            ix[0]
        } else {
            ix[0] * self.cells_per_axis() + ix[1]
        }
    }

    pub fn center(&self, idx: usize) -> [f64; 2] {
        let ix = self.multi_index(idx);
        let c0 = self.axis_center(ix[0]);
        if self.dim() == 1 {
            [c0, 0.0]
        } else {
            [c0, self.axis_center(ix[1])]
        }
    }

    /// Cell bounds `(lo, hi)`; the second coordinate is unused in 1D.
    pub fn cell_bounds(&self, idx: usize) -> ([f64; 2], [f64; 2]) {
        let ix = self.multi_index(idx);
        let h = self.cell_width();
        let lo = [self.edge(ix[0]), if self.dim() == 2 { self.edge(ix[1]) } else { 0.0 }];
        (lo, [lo[0] + h, lo[1] + h])
    }

    /// Index of the cell containing `x` (clamped to the box).
    pub fn locate(&self, x: [f64; 2]) -> usize {
        let n = self.cells_per_axis();
        let axis = |t: f64| {
            let k = ((t + self.domain.half_width) / self.cell_width()).floor();
            (k.max(0.0) as usize).min(n - 1)
        };
        self.linear_index([axis(x[0]), if self.dim() == 2 { axis(x[1]) } else { 0 }])
    }

    pub fn sample(&self, f: impl Fn([f64; 2]) -> f64) -> Result<GridFunction> {
        let values = (0..self.len()).map(|i| f(self.center(i))).collect();
        GridFunction::new(*self, values)
    }

    /// The cube covering the whole box.
    pub fn full_cube(&self) -> Cube {
        Cube { dim: self.dim(), lo: [0, 0], len: self.cells_per_axis() }
    }
}

/// Real-valued samples at cell centers.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::param(format!("expected {} values, got {}", grid.len(), values.len())));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::param(format!("non-finite value at cell {i}")));
        }
        Ok(GridFunction { grid, values })
    }

    pub fn constant(grid: Grid, c: f64) -> Result<Self> {
        GridFunction::new(grid, vec![c; grid.len()])
    }

    pub fn zeros(grid: Grid) -> Self {
        GridFunction { grid, values: vec![0.0; grid.len()] }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        GridFunction { grid: self.grid, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_with(&self, other: &GridFunction, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(GridFunction { grid: self.grid, values })
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    pub fn add(&self, other: &GridFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn check_grid(&self, other: &GridFunction) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!("{:?} vs {:?}", self.grid, other.grid)));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `(min, argmin, max, argmax)`.
    pub fn extrema(&self) -> (f64, usize, f64, usize) {
        let mut out = (f64::INFINITY, 0, f64::NEG_INFINITY, 0);
        for (i, &v) in self.values.iter().enumerate() {
            if v < out.0 {
                out.0 = v;
                out.1 = i;
            }
            if v > out.2 {
                out.2 = v;
                out.3 = i;
            }
        }
        out
    }

    /// CSV form: a line `n,J,L` followed by one value per line, row-major.
    pub fn to_csv_string(&self) -> String {
        let mut s = format!("{},{},{}\n", self.grid.dim(), self.grid.level(), self.grid.half_width());
        for v in &self.values {
            writeln!(s, "{v}").unwrap();
        }
        s
    }

    /// Parse the CSV form. The margin is not serialized and defaults to `L/4`.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let mut header = lines.next().ok_or_else(|| Error::parse("empty grid function file"))?;
        if header.eq_ignore_ascii_case("n,J,L") {
            header = lines.next().ok_or_else(|| Error::parse("missing n,J,L line"))?;
        }
        let fields: Vec<&str> = header.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::parse(format!("header must be `n,J,L`, got `{header}`")));
        }
        let n: usize = fields[0].parse().map_err(|_| Error::parse(format!("bad n `{}`", fields[0])))?;
        let j: u32 = fields[1].parse().map_err(|_| Error::parse(format!("bad J `{}`", fields[1])))?;
        let l: f64 = fields[2].parse().map_err(|_| Error::parse(format!("bad L `{}`", fields[2])))?;
        let grid = Grid::with(n, l, l / 4.0, j).map_err(|e| Error::parse(e.to_string()))?;
        let values = lines
            .enumerate()
            .map(|(i, l)| l.parse::<f64>().map_err(|_| Error::parse(format!("bad value on data line {}: `{l}`", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        GridFunction::new(grid, values).map_err(|e| Error::parse(e.to_string()))
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        GridFunction::from_csv_str(&text)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path.as_ref(), self.to_csv_string())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
    }

    /// SHA-256 of the canonical CSV form, hex encoded.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_csv_string().as_bytes()))
    }
}

/// A grid-aligned axis-parallel cube: lower cell index per axis and side length in cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    dim: usize,
    lo: [usize; 2],
    len: usize,
}

impl Cube {
    pub fn new(grid: &Grid, lo: [usize; 2], len: usize) -> Result<Self> {
        let n = grid.cells_per_axis();
        let dim = grid.dim();
        if len == 0 {
            return Err(Error::EmptyCube);
        }
        if lo[0] + len > n || (dim == 2 && lo[1] + len > n) {
            return Err(Error::param(format!("cube {lo:?}+{len} leaves the domain")));
        }
        let lo = if dim == 1 { [lo[0], 0] } else { lo };
        Ok(Cube { dim, lo, len })
    }

    pub fn lo(&self) -> [usize; 2] {
        self.lo
    }

    /// Side length in cells.
    pub fn cells_per_side(&self) -> usize {
        self.len
    }

    pub fn cell_count(&self) -> usize {
        self.len.pow(self.dim as u32)
    }

    pub fn side(&self, grid: &Grid) -> f64 {
        self.len as f64 * grid.cell_width()
    }

    pub fn volume(&self, grid: &Grid) -> f64 {
        self.side(grid).powi(self.dim as i32)
    }

    pub fn center(&self, grid: &Grid) -> [f64; 2] {
        let h = grid.cell_width();
        let c = |lo: usize| grid.edge(lo) + 0.5 * self.len as f64 * h;
        if self.dim == 1 {
            [c(self.lo[0]), 0.0]
        } else {
            [c(self.lo[0]), c(self.lo[1])]
        }
    }

    /// Geometric bounds `(lo, hi)`.
    pub fn bounds(&self, grid: &Grid) -> ([f64; 2], [f64; 2]) {
        let s = self.side(grid);
        let lo = [grid.edge(self.lo[0]), if self.dim == 2 { grid.edge(self.lo[1]) } else { 0.0 }];
        (lo, [lo[0] + s, lo[1] + s])
    }

    pub fn contains_cell(&self, grid: &Grid, idx: usize) -> bool {
        let ix = grid.multi_index(idx);
        (0..self.dim).all(|a| ix[a] >= self.lo[a] && ix[a] < self.lo[a] + self.len)
    }

    pub fn contains_cube(&self, other: &Cube) -> bool {
        (0..self.dim).all(|a| other.lo[a] >= self.lo[a] && other.lo[a] + other.len <= self.lo[a] + self.len)
    }

    /// Linear indices of the cells inside the cube, row-major.
    pub fn cells<'g>(&self, grid: &'g Grid) -> impl Iterator<Item = usize> + 'g {
        let n = grid.cells_per_axis();
        let (lo, len, dim) = (self.lo, self.len, self.dim);
        let rows = if dim == 1 { 1 } else { len };
        (0..rows).flat_map(move |r| {
            let base = if dim == 1 { lo[0] } else { (lo[0] + r) * n + lo[1] };
            base..base + len
        })
    }

    pub fn record(&self, grid: &Grid) -> CubeRecord {
        let c = self.center(grid);
        CubeRecord { center: c[..self.dim].to_vec(), side: self.side(grid) }
    }

    /// The 2ⁿ dyadic children (empty for single cells).
    pub fn children(&self) -> Vec<Cube> {
        if self.len < 2 || !self.len.is_multiple_of(2) {
            return Vec::new();
        }
        let half = self.len / 2;
        let mut out = Vec::with_capacity(1 << self.dim);
        for a in 0..2 {
            if self.dim == 1 {
                out.push(Cube { dim: 1, lo: [self.lo[0] + a * half, 0], len: half });
            } else {
                for b in 0..2 {
                    out.push(Cube { dim: 2, lo: [self.lo[0] + a * half, self.lo[1] + b * half], len: half });
                }
            }
        }
        out
    }
}

/// Serializable geometric description of a cube.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubeRecord {
    pub center: Vec<f64>,
    pub side: f64,
}

/// Finite stand-in for "all cubes": dyadic cubes of every level plus shifted
/// copies of each dyadic lattice.
///
/// A lattice of side `c` cells is shifted by `⌊k·c/S'⌋` cells for every
/// `1 ≤ S' ≤ S` and `0 ≤ k < S'`, so families are nested in `S`.
#[derive(Debug, Clone)]
pub struct CubeFamily {
    grid: Grid,
    shifts: usize,
    cubes: Vec<Cube>,
}

impl CubeFamily {
    pub fn new(grid: Grid, shifts: usize) -> Result<Self> {
        if shifts < 1 {
            return Err(Error::param("shift count must be >= 1"));
        }
        let n = grid.cells_per_axis();
        let mut cubes = Vec::new();
        for level in 0..=grid.level() {
            let c = 1usize << level;
            let offsets = lattice_offsets(c, shifts);
            let starts = |o: usize| (0..).map(move |m| o + m * c).take_while(move |s| s + c <= n);
            for &o0 in &offsets {
                if grid.dim() == 1 {
                    cubes.extend(starts(o0).map(|s| Cube { dim: 1, lo: [s, 0], len: c }));
                } else {
                    for &o1 in &offsets {
                        for s0 in starts(o0) {
                            cubes.extend(starts(o1).map(|s1| Cube { dim: 2, lo: [s0, s1], len: c }));
                        }
                    }
                }
            }
        }
        Ok(CubeFamily { grid, shifts, cubes })
    }

    /// Every grid-aligned cube of every side length.
    pub fn all_aligned(grid: Grid) -> Self {
        let n = grid.cells_per_axis();
        let mut cubes = Vec::new();
        for len in 1..=n {
            for s0 in 0..=n - len {
                if grid.dim() == 1 {
                    cubes.push(Cube { dim: 1, lo: [s0, 0], len });
                } else {
                    cubes.extend((0..=n - len).map(|s1| Cube { dim: 2, lo: [s0, s1], len }));
                }
            }
        }
        CubeFamily { grid, shifts: 0, cubes }
    }

    /// Family built from an explicit cube list.
    pub fn from_cubes(grid: Grid, cubes: Vec<Cube>) -> Self {
        CubeFamily { grid, shifts: 0, cubes }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Shift count `S`, or 0 for the exhaustive and explicit families.
    pub fn shifts(&self) -> usize {
        self.shifts
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cube> {
        self.cubes.iter()
    }
}

fn lattice_offsets(side: usize, shifts: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=shifts).flat_map(|s| (0..s).map(move |k| k * side / s)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Dyadic cubes of levels `0..=J` plus shifted lattices.
pub fn make_cube_family(grid: Grid, shifts: usize) -> Result<CubeFamily> {
    CubeFamily::new(grid, shifts)
}

/// Mean of a sequence, accumulated as deviations from the first element so a
/// constant sequence averages to itself exactly.
pub(crate) fn shifted_mean(mut it: impl Iterator<Item = f64>) -> Option<f64> {
    let first = it.next()?;
    let (mut sum, mut k) = (0.0, 1usize);
    for v in it {
        sum += v - first;
        k += 1;
    }
    Some(first + sum / k as f64)
}

/// Mean of the cell values inside `cube`.
pub fn cube_average(f: &GridFunction, cube: &Cube) -> Result<f64> {
    if cube.dim != f.grid().dim() {
        return Err(Error::GridMismatch("cube dimension differs from grid".into()));
    }
    let v = f.values();
    shifted_mean(cube.cells(f.grid()).map(|i| v[i])).ok_or(Error::EmptyCube)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid1(j: u32) -> Grid {
        Grid::with(1, 1.0, 0.25, j).unwrap()
    }

    #[test]
    fn family_counts() {
        assert_eq!(CubeFamily::new(grid1(3), 1).unwrap().len(), 15);
        // 15 dyadic + 3 (side 2, shift 1) + 1 (side 4, shift 2) + 0 (side 8)
        assert_eq!(CubeFamily::new(grid1(3), 2).unwrap().len(), 19);
        let g2 = Grid::with(2, 1.0, 0.25, 3).unwrap();
        assert_eq!(CubeFamily::new(g2, 1).unwrap().len(), 85);
    }

    #[test]
    fn family_contains_single_cells_and_is_nested() {
        let g = grid1(5);
        let f1 = CubeFamily::new(g, 1).unwrap();
        let f3 = CubeFamily::new(g, 3).unwrap();
        for i in 0..g.len() {
            assert!(f1.iter().any(|c| c.cells_per_side() == 1 && c.lo()[0] == i));
        }
        for c in f1.iter() {
            assert!(f3.iter().any(|d| d == c));
        }
        for s in 1..5 {
            let small = CubeFamily::new(g, s).unwrap();
            let big = CubeFamily::new(g, s + 1).unwrap();
            assert!(small.iter().all(|c| big.iter().any(|d| d == c)));
        }
    }

    #[test]
    fn rejects_coarse_grids_and_bad_boxes() {
        assert!(Grid::with(1, 1.0, 0.25, 2).is_err());
        assert!(DomainBox::new(3, 1.0, 0.25).is_err());
        assert!(DomainBox::new(1, 1.0, 1.0).is_err());
        assert!(CubeFamily::new(grid1(3), 0).is_err());
    }

    #[test]
    fn cube_averages() {
        let g = Grid::with(1, 1.0, 0.25, 3).unwrap();
        let f = g.sample(|_| 3.7).unwrap();
        for c in CubeFamily::new(g, 2).unwrap().iter() {
            assert_eq!(cube_average(&f, c).unwrap(), 3.7);
        }
        // values 1..8, left half = cells 0..4 -> mean 2.5
        let f = GridFunction::new(g, (1..=8).map(f64::from).collect()).unwrap();
        let left = Cube::new(&g, [0, 0], 4).unwrap();
        assert_eq!(cube_average(&f, &left).unwrap(), 2.5);
        let g = Grid::with(1, 1.0, 0.25, 12).unwrap();
        let f = g.sample(|x| x[0]).unwrap();
        let right = Cube::new(&g, [g.cells_per_axis() / 2, 0], g.cells_per_axis() / 2).unwrap();
        assert!((cube_average(&f, &right).unwrap() - 0.5).abs() <= g.cell_width());
    }

    #[test]
    fn cube_geometry() {
        let g = Grid::with(2, 2.0, 0.5, 4).unwrap();
        let c = Cube::new(&g, [4, 8], 4).unwrap();
        assert_eq!(c.side(&g), 1.0);
        assert_eq!(c.center(&g), [-0.5, 0.5]);
        assert_eq!(c.cells(&g).count(), 16);
        assert!(c.cells(&g).all(|i| c.contains_cell(&g, i)));
        assert_eq!(c.children().len(), 4);
        assert!(c.children().iter().all(|k| c.contains_cube(k)));
        assert!(Cube::new(&g, [14, 0], 4).is_err());
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let g = Grid::with(2, 1.5, 0.375, 3).unwrap();
        let f = g.sample(|x| x[0] * 0.1 - x[1]).unwrap();
        let back = GridFunction::from_csv_str(&f.to_csv_string()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.content_hash(), f.content_hash());
        let labelled = format!("n,J,L\n{}", f.to_csv_string());
        assert_eq!(GridFunction::from_csv_str(&labelled).unwrap(), f);
        assert!(GridFunction::from_csv_str("1,3,1\n1\n2\n").is_err());
        assert!(GridFunction::from_csv_str("1,3,1\n1\n2\n3\n4\n5\n6\n7\nx\n").is_err());
        assert!(GridFunction::from_csv_str("").is_err());
    }
}

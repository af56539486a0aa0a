use std::f64::consts::PI;

use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};
use crate::quad::{power_integral_1d, power_integral_2d};

/// Order `α` and normalization `c_{n,α} = Γ((n−α)/2) / (2^α π^{n/2} Γ(α/2))` of `I_α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracIntConfig {
    dim: usize,
    alpha: f64,
    constant: f64,
}

impl FracIntConfig {
    pub fn new(dim: usize, alpha: f64) -> Result<Self> {
        let n = dim as f64;
        if !(alpha > 0.0 && alpha < n) {
            return Err(Error::param(format!("alpha must be in (0, n) = (0, {dim}), got {alpha}")));
        }
        let constant = gamma((n - alpha) / 2.0) / (2f64.powf(alpha) * PI.powf(n / 2.0) * gamma(alpha / 2.0));
        Ok(FracIntConfig { dim, alpha, constant })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    fn check(&self, grid: &Grid) -> Result<()> {
        if grid.dim() != self.dim {
            return Err(Error::GridMismatch(format!("operator built for n={}, grid has n={}", self.dim, grid.dim())));
        }
        Ok(())
    }

    /// `c_{n,α} ∫_B |t|^{α−n} dt` over the box `[lo, hi]`.
    fn kernel_box(&self, lo: [f64; 2], hi: [f64; 2]) -> f64 {
        let g = self.alpha - self.dim as f64;
        let v = if self.dim == 1 { power_integral_1d(lo[0], hi[0], g) } else { power_integral_2d(lo, hi, g) };
        self.constant * v
    }
}

/// Kernel integrated over each cell offset: `K[d] = c ∫_{cell at offset d} |t|^{α−n} dt`.
struct KernelTable {
    n: usize,
    dim: usize,
    values: Vec<f64>,
}

impl KernelTable {
    fn new(cfg: &FracIntConfig, grid: &Grid) -> Self {
        let n = grid.cells_per_axis();
        let h = grid.cell_width();
        let span = |d: usize| ((d as f64 - 0.5) * h, (d as f64 + 0.5) * h);
        let values = if cfg.dim == 1 {
            (0..n).map(|d| {
                let (a, b) = span(d);
                cfg.kernel_box([a, 0.0], [b, 0.0])
            })
            .collect()
        } else {
            let mut v = vec![0.0; n * n];
            v.par_chunks_mut(n).enumerate().for_each(|(d0, row)| {
                let (a0, b0) = span(d0);
                for (d1, slot) in row.iter_mut().enumerate() {
                    let (a1, b1) = span(d1);
                    *slot = cfg.kernel_box([a0, a1], [b0, b1]);
                }
            });
            v
        };
        KernelTable { n, dim: cfg.dim, values }
    }

    #[inline]
    fn get(&self, grid: &Grid, i: usize, j: usize) -> f64 {
        let a = grid.multi_index(i);
        let b = grid.multi_index(j);
        let d0 = a[0].abs_diff(b[0]);
        if self.dim == 1 {
            self.values[d0]
        } else {
            self.values[d0 * self.n + a[1].abs_diff(b[1])]
        }
    }
}

fn apply(grid: &Grid, table: &KernelTable, term: impl Fn(usize, usize) -> f64 + Sync) -> Vec<f64> {
    let len = grid.len();
    (0..len)
        .into_par_iter()
        .map(|i| (0..len).map(|j| table.get(grid, i, j) * term(i, j)).sum())
        .collect()
}

/// `I_α f` at every cell center, with `f` piecewise constant on cells and the kernel
/// integrated exactly over each cell (including the singular one).
pub fn fractional_integral(f: &GridFunction, cfg: &FracIntConfig) -> Result<GridFunction> {
    let grid = f.grid();
    cfg.check(grid)?;
    let table = KernelTable::new(cfg, grid);
    let v = f.values();
    GridFunction::new(*grid, apply(grid, &table, |_, j| v[j]))
}

/// `I_α f(x)` at an arbitrary point.
pub fn fractional_integral_at(f: &GridFunction, cfg: &FracIntConfig, x: [f64; 2]) -> Result<f64> {
    let grid = f.grid();
    cfg.check(grid)?;
    Ok(f.values()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(j, v)| {
            let (lo, hi) = grid.cell_bounds(j);
            let rel = |t: [f64; 2]| [t[0] - x[0], t[1] - x[1]];
            v * cfg.kernel_box(rel(lo), rel(hi))
        })
        .sum())
}

/// `[b, I_α]f(x) = b(x) I_α f(x) − I_α(bf)(x)`, evaluated as `∫ K(x−y)(b(x) − b(y)) f(y) dy`
/// so that constant symbols give exactly zero.
pub fn commutator(b: &GridFunction, f: &GridFunction, cfg: &FracIntConfig) -> Result<GridFunction> {
    b.check_grid(f)?;
    let grid = f.grid();
    cfg.check(grid)?;
    let table = KernelTable::new(cfg, grid);
    let (bv, fv) = (b.values(), f.values());
    GridFunction::new(*grid, apply(grid, &table, |i, j| (bv[i] - bv[j]) * fv[j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_constant() {
        let c = FracIntConfig::new(1, 0.5).unwrap().constant();
        assert!((c - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-14);
        // n = 2, α = 1: Γ(1/2)/(2π Γ(1/2)) = 1/(2π)
        let c2 = FracIntConfig::new(2, 1.0).unwrap().constant();
        assert!((c2 - 1.0 / (2.0 * PI)).abs() < 1e-14);
        assert!(FracIntConfig::new(1, 1.5).is_err());
        assert!(FracIntConfig::new(1, 0.0).is_err());
        assert!(FracIntConfig::new(2, 1.5).is_ok());
    }

    #[test]
    fn zero_in_zero_out() {
        let g = Grid::with(1, 2.0, 0.5, 6).unwrap();
        let cfg = FracIntConfig::new(1, 0.5).unwrap();
        assert!(fractional_integral(&GridFunction::zeros(g), &cfg).unwrap().is_zero());
    }

    #[test]
    fn indicator_closed_forms() {
        let g = Grid::with(1, 4.0, 1.0, 10).unwrap();
        let cfg = FracIntConfig::new(1, 0.5).unwrap();
        let f = g.sample(|x| if x[0].abs() <= 1.0 { 1.0 } else { 0.0 }).unwrap();
        let c = 1.0 / (2.0 * PI).sqrt();
        let at0 = fractional_integral_at(&f, &cfg, [0.0, 0.0]).unwrap();
        assert!((at0 - 4.0 * c).abs() < 1e-12);
        let at2 = fractional_integral_at(&f, &cfg, [2.0, 0.0]).unwrap();
        assert!((at2 - c * 2.0 * (3f64.sqrt() - 1.0)).abs() < 1e-12);
        // the cell-center evaluation agrees with the point evaluation
        let full = fractional_integral(&f, &cfg).unwrap();
        for i in [0, 100, 511, 512, 700, 1023] {
            let x = g.center(i);
            let direct = fractional_integral_at(&f, &cfg, x).unwrap();
            assert!((full.values()[i] - direct).abs() < 1e-12, "cell {i}");
        }
    }

    #[test]
    fn two_dimensional_disk_like_value() {
        // I_1 of the indicator of a square, at its center, against a polar oracle:
        // c ∫_{[-a,a]^2} |y|^{-1} dy = c · 8 a · asinh(1)
        let g = Grid::with(2, 2.0, 0.5, 5).unwrap();
        let cfg = FracIntConfig::new(2, 1.0).unwrap();
        let f = g.sample(|x| if x[0].abs() <= 1.0 && x[1].abs() <= 1.0 { 1.0 } else { 0.0 }).unwrap();
        let v = fractional_integral_at(&f, &cfg, [0.0, 0.0]).unwrap();
        let expected = cfg.constant() * 8.0 * 1f64.asinh();
        assert!((v - expected).abs() < 1e-10, "{v} vs {expected}");
        let full = fractional_integral(&f, &cfg).unwrap();
        let i = g.locate([0.01, 0.01]);
        let direct = fractional_integral_at(&f, &cfg, g.center(i)).unwrap();
        assert!((full.values()[i] - direct).abs() < 1e-10);
    }

    #[test]
    fn commutator_matches_two_term_form() {
        let g = Grid::with(1, 2.0, 0.5, 7).unwrap();
        let cfg = FracIntConfig::new(1, 0.3).unwrap();
        let b = g.sample(|x| (3.0 * x[0]).sin()).unwrap();
        let f = g.sample(|x| (-x[0] * x[0]).exp()).unwrap();
        let direct = commutator(&b, &f, &cfg).unwrap();
        let if_ = fractional_integral(&f, &cfg).unwrap();
        let ibf = fractional_integral(&b.zip_with(&f, |x, y| x * y).unwrap(), &cfg).unwrap();
        let scale = if_.max_abs() * b.max_abs();
        for i in 0..g.len() {
            let two = b.values()[i] * if_.values()[i] - ibf.values()[i];
            assert!((direct.values()[i] - two).abs() <= 1e-12 * scale);
        }
        let other = GridFunction::constant(Grid::with(1, 2.0, 0.5, 6).unwrap(), 1.0).unwrap();
        assert!(matches!(commutator(&other, &f, &cfg), Err(Error::GridMismatch(_))));
    }
}

//! Weights, their realization on grids, and the Muckenhoupt / reverse Hölder
//! diagnostics built on top of them.

mod analytic;
mod classes;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

pub use analytic::{
    critical_index, eq4_check, lemma_c_check, power_membership, EquivalenceRow, WeightClass,
};
pub use classes::{
    ap_constant, apq_constant, class_constant, doubling_check, numeric_finiteness, rh_constant,
    subset_comparison_check, DoublingReport, NumericVerdict, SubsetReport, WeightClassReport,
    DIVERGENCE_GROWTH,
};

use crate::error::{Error, Result};
use crate::grid::{Cube, Grid, GridFunction};
use crate::quad::{power_integral_1d, power_integral_2d};

/// `c·|x − x₀|^γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerWeight {
    pub center: [f64; 2],
    pub gamma: f64,
    pub coeff: f64,
}

impl PowerWeight {
    pub fn new(center: [f64; 2], gamma: f64) -> Self {
        PowerWeight { center, gamma, coeff: 1.0 }
    }

    /// `∫ c|x−x₀|^γ` over the box `[lo, hi]`, exact up to quadrature round-off.
    pub fn integrate_box(&self, dim: usize, lo: [f64; 2], hi: [f64; 2]) -> Result<f64> {
        let inside = (0..dim).all(|a| lo[a] <= self.center[a] && self.center[a] <= hi[a]);
        if inside && self.gamma <= -(dim as f64) {
            return Err(Error::NotIntegrable(format!(
                "|x-x0|^{} with x0 inside the region (requires gamma > -{dim})",
                self.gamma
            )));
        }
        let v = if dim == 1 {
            power_integral_1d(lo[0] - self.center[0], hi[0] - self.center[0], self.gamma)
        } else {
            power_integral_2d(
                [lo[0] - self.center[0], lo[1] - self.center[1]],
                [hi[0] - self.center[0], hi[1] - self.center[1]],
                self.gamma,
            )
        };
        Ok(self.coeff * v)
    }
}

/// A weight: an analytic power weight or strictly positive cell samples.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    Power(PowerWeight),
    Sampled(GridFunction),
}

impl Weight {
    pub fn unit() -> Self {
        Weight::Power(PowerWeight::new([0.0, 0.0], 0.0))
    }

    /// `|x|^γ`.
    pub fn power(gamma: f64) -> Self {
        Weight::Power(PowerWeight::new([0.0, 0.0], gamma))
    }

    pub fn power_at(center: [f64; 2], gamma: f64) -> Self {
        Weight::Power(PowerWeight::new(center, gamma))
    }

    pub fn sampled(values: GridFunction) -> Result<Self> {
        if let Some(i) = values.values().iter().position(|&v| v <= 0.0) {
            return Err(Error::param(format!("sampled weight must be positive, cell {i} is not")));
        }
        Ok(Weight::Sampled(values))
    }

    pub fn as_power(&self) -> Option<&PowerWeight> {
        match self {
            Weight::Power(p) => Some(p),
            Weight::Sampled(_) => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Weight::Power(p) if p.gamma == 0.0 && p.coeff == 1.0)
    }

    /// Pointwise power `w^t`.
    pub fn powf(&self, t: f64) -> Weight {
        match self {
            Weight::Power(p) => Weight::Power(PowerWeight { center: p.center, gamma: p.gamma * t, coeff: p.coeff.powf(t) }),
            Weight::Sampled(f) => Weight::Sampled(f.map(|v| v.powf(t))),
        }
    }

    /// `c·w`.
    pub fn scaled(&self, c: f64) -> Weight {
        match self {
            Weight::Power(p) => Weight::Power(PowerWeight { coeff: p.coeff * c, ..*p }),
            Weight::Sampled(f) => Weight::Sampled(f.scale(c)),
        }
    }

    /// Cell measures `w(cell)` on `grid`.
    pub fn on_grid(&self, grid: &Grid) -> Result<WeightField> {
        let measures = match self {
            Weight::Power(p) => {
                let l = grid.half_width();
                let dim = grid.dim();
                let inside = (0..dim).all(|a| p.center[a].abs() <= l);
                if inside && p.gamma <= -(dim as f64) {
                    return Err(Error::NotIntegrable(format!(
                        "|x-x0|^{} is not locally integrable in dimension {dim}",
                        p.gamma
                    )));
                }
                (0..grid.len())
                    .map(|i| {
                        let (lo, hi) = grid.cell_bounds(i);
                        p.integrate_box(dim, lo, hi)
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            Weight::Sampled(f) => {
                if f.grid() != grid {
                    return Err(Error::GridMismatch("sampled weight lives on a different grid".into()));
                }
                let vol = grid.cell_volume();
                f.values().iter().map(|v| v * vol).collect()
            }
        };
        Ok(WeightField { grid: *grid, measures })
    }

    /// `w(B)` for an arbitrary box inside the domain; sampled weights use exact cell overlaps.
    pub fn integrate_box(&self, grid: &Grid, lo: [f64; 2], hi: [f64; 2]) -> Result<f64> {
        match self {
            Weight::Power(p) => p.integrate_box(grid.dim(), lo, hi),
            Weight::Sampled(f) => {
                if f.grid() != grid {
                    return Err(Error::GridMismatch("sampled weight lives on a different grid".into()));
                }
                let dim = grid.dim();
                let total = (0..grid.len())
                    .map(|i| {
                        let (clo, chi) = grid.cell_bounds(i);
                        let overlap: f64 = (0..dim)
                            .map(|a| (chi[a].min(hi[a]) - clo[a].max(lo[a])).max(0.0))
                            .product();
                        overlap * f.values()[i]
                    })
                    .sum();
                Ok(total)
            }
        }
    }
}

/// A weight realized on a grid as per-cell measures.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightField {
    grid: Grid,
    measures: Vec<f64>,
}

impl WeightField {
    /// The field of the unit weight (Lebesgue measure).
    pub fn lebesgue(grid: &Grid) -> Self {
        WeightField { grid: *grid, measures: vec![grid.cell_volume(); grid.len()] }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn measures(&self) -> &[f64] {
        &self.measures
    }

    /// Cell average `w(cell)/|cell|`, used wherever a pointwise value `w(x)` is needed.
    pub fn density(&self, idx: usize) -> f64 {
        self.measures[idx] / self.grid.cell_volume()
    }

    pub fn densities(&self) -> Vec<f64> {
        (0..self.measures.len()).map(|i| self.density(i)).collect()
    }

    pub fn cube_measure(&self, cube: &Cube) -> f64 {
        cube.cells(&self.grid).map(|i| self.measures[i]).sum()
    }
}

/// `w(Q) = ∫_Q w`: closed form for power weights, midpoint sum for sampled weights.
pub fn integrate_cell_weight(w: &Weight, grid: &Grid, cube: &Cube) -> Result<f64> {
    match w {
        Weight::Power(p) => {
            let (lo, hi) = cube.bounds(grid);
            p.integrate_box(grid.dim(), lo, hi)
        }
        Weight::Sampled(_) => Ok(w.on_grid(grid)?.cube_measure(cube)),
    }
}

/// Textual weight description: `unit`, `power:x0=<a>[;<b>],gamma=<g>` or `sampled:<csv-path>`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    Power { center: [f64; 2], gamma: f64 },
    Sampled(PathBuf),
}

impl WeightSpec {
    pub fn unit() -> Self {
        WeightSpec::Power { center: [0.0, 0.0], gamma: 0.0 }
    }

    pub fn load(&self) -> Result<Weight> {
        match self {
            WeightSpec::Power { center, gamma } => Ok(Weight::power_at(*center, *gamma)),
            WeightSpec::Sampled(path) => Weight::sampled(GridFunction::read_csv(path)?),
        }
    }

    /// Spec of `w^t` for power weights; sampled weights have no textual power.
    pub fn powf(&self, t: f64) -> Option<WeightSpec> {
        match self {
            WeightSpec::Power { center, gamma } => Some(WeightSpec::Power { center: *center, gamma: gamma * t }),
            WeightSpec::Sampled(_) => None,
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Power { center, gamma } => {
                if center[1] == 0.0 {
                    write!(f, "power:x0={},gamma={}", center[0], gamma)
                } else {
                    write!(f, "power:x0={};{},gamma={}", center[0], center[1], gamma)
                }
            }
            WeightSpec::Sampled(p) => write!(f, "sampled:{}", p.display()),
        }
    }
}

impl FromStr for WeightSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "unit" {
            return Ok(WeightSpec::unit());
        }
        if let Some(path) = s.strip_prefix("sampled:") {
            if path.is_empty() {
                return Err(Error::parse("sampled weight needs a csv path"));
            }
            return Ok(WeightSpec::Sampled(PathBuf::from(path)));
        }
        let body = s
            .strip_prefix("power:")
            .ok_or_else(|| Error::parse(format!("unknown weight spec `{s}`")))?;
        let mut center = [0.0, 0.0];
        let mut gamma = None;
        for field in body.split(',').filter(|f| !f.trim().is_empty()) {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("weight field `{field}` is not key=value")))?;
            let num = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::parse(format!("bad number `{t}` in `{s}`")));
            match k.trim() {
                "x0" => {
                    let parts: Vec<&str> = v.split(';').collect();
                    match parts.as_slice() {
                        [a] => center = [num(a)?, 0.0],
                        [a, b] => center = [num(a)?, num(b)?],
                        _ => return Err(Error::parse(format!("bad x0 `{v}`"))),
                    }
                }
                "gamma" => gamma = Some(num(v)?),
                other => return Err(Error::parse(format!("unknown weight key `{other}`"))),
            }
        }
        let gamma = gamma.ok_or_else(|| Error::parse(format!("power weight `{s}` needs gamma")))?;
        Ok(WeightSpec::Power { center, gamma })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::CubeFamily;

    fn grid1(j: u32) -> Grid {
        Grid::with(1, 1.0, 0.25, j).unwrap()
    }

    #[test]
    fn closed_form_cube_weights() {
        let g = grid1(4);
        let unit = Weight::unit();
        let q = Cube::new(&g, [0, 0], 8).unwrap();
        assert!((integrate_cell_weight(&unit, &g, &q).unwrap() - 1.0).abs() < 1e-15);
        let w = Weight::power(-0.5);
        let right = Cube::new(&g, [8, 0], 8).unwrap();
        assert!((integrate_cell_weight(&w, &g, &right).unwrap() - 2.0).abs() < 1e-14);
        assert!((integrate_cell_weight(&w, &g, &g.full_cube()).unwrap() - 4.0).abs() < 1e-14);
        let bad = Weight::power(-1.0);
        assert!(matches!(integrate_cell_weight(&bad, &g, &right), Err(Error::NotIntegrable(_))));
        // x0 outside the cube: fine even for gamma <= -n
        let off = Cube::new(&g, [12, 0], 4).unwrap();
        assert!(integrate_cell_weight(&bad, &g, &off).unwrap() > 0.0);
    }

    #[test]
    fn additivity_and_monotonicity() {
        for (dim, j) in [(1, 8), (2, 4)] {
            let g = Grid::with(dim, 1.0, 0.25, j).unwrap();
            let w = Weight::power_at([0.1, -0.2], if dim == 1 { -0.7 } else { -1.4 });
            let fam = CubeFamily::new(g, 1).unwrap();
            for q in fam.iter().filter(|q| q.cells_per_side() > 1) {
                let whole = integrate_cell_weight(&w, &g, q).unwrap();
                let parts: f64 = q.children().iter().map(|c| integrate_cell_weight(&w, &g, c).unwrap()).sum();
                assert!((whole - parts).abs() <= 1e-12 * whole, "{q:?}: {whole} vs {parts}");
                for c in q.children() {
                    assert!(integrate_cell_weight(&w, &g, &c).unwrap() <= whole);
                }
            }
        }
    }

    #[test]
    fn sampled_weights() {
        let g = grid1(3);
        let f = g.sample(|x| 1.0 + x[0] * x[0]).unwrap();
        let w = Weight::sampled(f.clone()).unwrap();
        let field = w.on_grid(&g).unwrap();
        let expected: f64 = f.values().iter().sum::<f64>() * g.cell_width();
        assert!((field.cube_measure(&g.full_cube()) - expected).abs() < 1e-14);
        assert!(Weight::sampled(f.map(|v| v - 1.5)).is_err());
        // half-cell box
        let h = g.cell_width();
        let part = w.integrate_box(&g, [-1.0, 0.0], [-1.0 + 0.5 * h, 0.0]).unwrap();
        assert!((part - 0.5 * h * f.values()[0]).abs() < 1e-15);
    }

    #[test]
    fn spec_strings() {
        let w: WeightSpec = "power:x0=0.5,gamma=-0.2".parse().unwrap();
        assert_eq!(w, WeightSpec::Power { center: [0.5, 0.0], gamma: -0.2 });
        assert_eq!(w.to_string().parse::<WeightSpec>().unwrap(), w);
        let w2: WeightSpec = "power:gamma=0".parse().unwrap();
        assert_eq!(w2, WeightSpec::unit());
        let w3: WeightSpec = "power:x0=1;-2,gamma=0.5".parse().unwrap();
        assert_eq!(w3.to_string().parse::<WeightSpec>().unwrap(), w3);
        assert!("power:x0=1".parse::<WeightSpec>().is_err());
        assert!("cosine:gamma=1".parse::<WeightSpec>().is_err());
        assert_eq!("unit".parse::<WeightSpec>().unwrap(), WeightSpec::unit());
    }
}

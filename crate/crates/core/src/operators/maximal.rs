use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{shifted_mean, Cube, CubeFamily, GridFunction};
use crate::weights::{Weight, WeightField};

use super::fractional::{fractional_integral, FracIntConfig};

/// Which maximal operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaximalVariant {
    /// `M`
    Plain,
    /// `M_{β,r}`
    Fractional,
    /// `M_w`
    Weighted,
    /// `M_{β,r,w}`
    FractionalWeighted,
    /// `M_δ`
    Delta,
    /// `M^#_δ`
    SharpDelta,
}

impl MaximalVariant {
    pub const ALL: [MaximalVariant; 6] = [
        MaximalVariant::Plain,
        MaximalVariant::Fractional,
        MaximalVariant::Weighted,
        MaximalVariant::FractionalWeighted,
        MaximalVariant::Delta,
        MaximalVariant::SharpDelta,
    ];

    pub fn cli_name(&self) -> &'static str {
        match self {
            MaximalVariant::Plain => "m",
            MaximalVariant::Fractional => "mfrac",
            MaximalVariant::Weighted => "mw",
            MaximalVariant::FractionalWeighted => "mfracw",
            MaximalVariant::Delta => "mdelta",
            MaximalVariant::SharpDelta => "msharp",
        }
    }

    pub fn is_weighted(&self) -> bool {
        matches!(self, MaximalVariant::Weighted | MaximalVariant::FractionalWeighted)
    }
}

impl fmt::Display for MaximalVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for MaximalVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MaximalVariant::ALL
            .into_iter()
            .find(|v| v.cli_name() == s)
            .ok_or_else(|| Error::parse(format!("unknown maximal operator '{s}' (m, mfrac, mw, mfracw, mdelta, msharp)")))
    }
}

/// Parameters of one maximal operator. `beta` and `r` are read by the fractional
/// variants (`r` also by the weighted one through `M_{r,w} = M_{0,r,w}`), `delta` by the δ-variants.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalConfig {
    pub variant: MaximalVariant,
    pub beta: f64,
    pub r: f64,
    pub delta: f64,
    pub weight: Option<Weight>,
}

impl MaximalConfig {
    pub fn plain() -> Self {
        MaximalConfig { variant: MaximalVariant::Plain, beta: 0.0, r: 1.0, delta: 0.5, weight: None }
    }

    /// `M_{β,r}`.
    pub fn fractional(beta: f64, r: f64) -> Self {
        MaximalConfig { variant: MaximalVariant::Fractional, beta, r, ..Self::plain() }
    }

    /// `M_w`.
    pub fn weighted(w: Weight) -> Self {
        MaximalConfig { variant: MaximalVariant::Weighted, weight: Some(w), ..Self::plain() }
    }

    /// `M_{β,r,w}`; `β = 0` gives `M_{r,w}`.
    pub fn fractional_weighted(beta: f64, r: f64, w: Weight) -> Self {
        MaximalConfig { variant: MaximalVariant::FractionalWeighted, beta, r, weight: Some(w), ..Self::plain() }
    }

    pub fn delta(delta: f64) -> Self {
        MaximalConfig { variant: MaximalVariant::Delta, delta, ..Self::plain() }
    }

    pub fn sharp_delta(delta: f64) -> Self {
        MaximalConfig { variant: MaximalVariant::SharpDelta, delta, ..Self::plain() }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        let n = dim as f64;
        match self.variant {
            MaximalVariant::Fractional | MaximalVariant::FractionalWeighted => {
                if !(self.beta >= 0.0 && self.beta < n) {
                    return Err(Error::param(format!("beta must be in [0, {dim}), got {}", self.beta)));
                }
                if !(self.r >= 1.0 && self.r.is_finite()) {
                    return Err(Error::param(format!("r must be >= 1, got {}", self.r)));
                }
                if self.beta * self.r >= n {
                    return Err(Error::param(format!("need beta*r < n, got {}", self.beta * self.r)));
                }
            }
            MaximalVariant::Delta | MaximalVariant::SharpDelta
                if !(self.delta > 0.0 && self.delta < 1.0) => {
                    return Err(Error::param(format!("delta must be in (0, 1), got {}", self.delta)));
                }
            _ => {}
        }
        if self.variant.is_weighted() && self.weight.is_none() {
            return Err(Error::param(format!("{} needs a weight", self.variant)));
        }
        Ok(())
    }
}

fn mean_over(cube: &Cube, f: &GridFunction, g: impl Fn(f64) -> f64) -> f64 {
    let v = f.values();
    shifted_mean(cube.cells(f.grid()).map(|i| g(v[i]))).unwrap_or(0.0)
}

fn weighted_mean(cube: &Cube, f: &GridFunction, field: &WeightField, g: impl Fn(f64) -> f64) -> (f64, f64) {
    let (v, m) = (f.values(), field.measures());
    let (num, den) = cube
        .cells(f.grid())
        .fold((0.0, 0.0), |(a, b), i| (a + g(v[i]) * m[i], b + m[i]));
    if den > 0.0 { (num / den, den) } else { (0.0, 0.0) }
}

fn functional(cube: &Cube, f: &GridFunction, cfg: &MaximalConfig, field: Option<&WeightField>) -> f64 {
    let grid = f.grid();
    let n = grid.dim() as f64;
    match cfg.variant {
        MaximalVariant::Plain => mean_over(cube, f, f64::abs),
        MaximalVariant::Fractional => {
            let avg = if cfg.r == 1.0 { mean_over(cube, f, f64::abs) } else { mean_over(cube, f, |x| x.abs().powf(cfg.r)).powf(1.0 / cfg.r) };
            cube.volume(grid).powf(cfg.beta / n) * avg
        }
        MaximalVariant::Weighted => weighted_mean(cube, f, field.expect("validated"), f64::abs).0,
        MaximalVariant::FractionalWeighted => {
            let (avg, wq) = if cfg.r == 1.0 {
                weighted_mean(cube, f, field.expect("validated"), f64::abs)
            } else {
                let (a, wq) = weighted_mean(cube, f, field.expect("validated"), |x| x.abs().powf(cfg.r));
                (a.powf(1.0 / cfg.r), wq)
            };
            if cfg.beta == 0.0 { avg } else { wq.powf(cfg.beta / n) * avg }
        }
        MaximalVariant::Delta => mean_over(cube, f, |x| x.abs().powf(cfg.delta)).powf(1.0 / cfg.delta),
        MaximalVariant::SharpDelta => {
            let d = cfg.delta;
            let c = mean_over(cube, f, |x| x.abs().powf(d));
            mean_over(cube, f, |x| (x.abs().powf(d) - c).abs()).powf(1.0 / d)
        }
    }
}

/// `sup` over the family cubes containing each cell of the chosen cube functional.
pub fn maximal(f: &GridFunction, cfg: &MaximalConfig, family: &CubeFamily) -> Result<GridFunction> {
    let grid = f.grid();
    if family.grid() != grid {
        return Err(Error::GridMismatch("cube family lives on a different grid".into()));
    }
    cfg.validate(grid.dim())?;
    let field = match (&cfg.weight, cfg.variant.is_weighted()) {
        (Some(w), true) => Some(w.on_grid(grid)?),
        _ => None,
    };
    let values: Vec<f64> = family
        .cubes()
        .par_iter()
        .map(|q| functional(q, f, cfg, field.as_ref()))
        .collect();
    let mut out = vec![0.0f64; grid.len()];
    for (q, v) in family.iter().zip(values) {
        for i in q.cells(grid) {
            if v > out[i] {
                out[i] = v;
            }
        }
    }
    GridFunction::new(*grid, out)
}

/// Result of comparing `M_{α,1} f` with `I_α(|f|)` cell by cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominationReport {
    pub sup_ratio: f64,
    pub cell: usize,
    pub point: Vec<f64>,
    /// Cells where `I_α(|f|) = 0` but `M_{α,1} f > 0`.
    pub violations: usize,
}

/// `sup_x M_{α,1} f(x) / I_α(|f|)(x)`; `None` when `f ≡ 0`.
pub fn pointwise_domination_check(f: &GridFunction, alpha: f64, family: &CubeFamily) -> Result<Option<DominationReport>> {
    if f.is_zero() {
        return Ok(None);
    }
    let grid = f.grid();
    let frac = FracIntConfig::new(grid.dim(), alpha)?;
    let lhs = maximal(f, &MaximalConfig::fractional(alpha, 1.0), family)?;
    let rhs = fractional_integral(&f.map(f64::abs), &frac)?;
    let mut report = DominationReport { sup_ratio: 0.0, cell: 0, point: Vec::new(), violations: 0 };
    for (i, (&m, &p)) in lhs.values().iter().zip(rhs.values()).enumerate() {
        if m == 0.0 {
            continue;
        }
        if p <= 0.0 {
            report.violations += 1;
            continue;
        }
        if m / p > report.sup_ratio {
            report.sup_ratio = m / p;
            report.cell = i;
        }
    }
    report.point = grid.center(report.cell)[..grid.dim()].to_vec();
    Ok(Some(report))
}

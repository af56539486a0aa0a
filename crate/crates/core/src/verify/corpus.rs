use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};

/// Analytic test input, supported in a ball or box of radius `radius` around `center`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    Bump { center: [f64; 2], radius: f64, amp: f64 },
    Step { center: [f64; 2], radius: f64, amp: f64 },
    Tent { center: [f64; 2], radius: f64, amp: f64 },
    Oscillation { center: [f64; 2], radius: f64, freq: f64, phase: f64 },
    /// Random constants on a `pieces`-per-axis partition of `[−radius, radius]ⁿ`.
    Pieces { radius: f64, values: Vec<f64>, pieces: usize },
}

fn dist(dim: usize, x: [f64; 2], c: [f64; 2]) -> f64 {
    (0..dim).map(|a| (x[a] - c[a]).powi(2)).sum::<f64>().sqrt()
}

fn sup_dist(dim: usize, x: [f64; 2], c: [f64; 2]) -> f64 {
    (0..dim).map(|a| (x[a] - c[a]).abs()).fold(0.0, f64::max)
}

impl Profile {
    pub fn name(&self) -> &'static str {
        match self {
            Profile::Bump { .. } => "bump",
            Profile::Step { .. } => "step",
            Profile::Tent { .. } => "tent",
            Profile::Oscillation { .. } => "osc",
            Profile::Pieces { .. } => "pieces",
        }
    }

    pub fn eval(&self, dim: usize, x: [f64; 2]) -> f64 {
        match self {
            Profile::Bump { center, radius, amp } => {
                let t = dist(dim, x, *center) / radius;
                if t < 1.0 { amp * (1.0 - 1.0 / (1.0 - t * t)).exp() } else { 0.0 }
            }
            Profile::Step { center, radius, amp } => {
                if sup_dist(dim, x, *center) <= *radius { *amp } else { 0.0 }
            }
            Profile::Tent { center, radius, amp } => amp * (1.0 - sup_dist(dim, x, *center) / radius).max(0.0),
            Profile::Oscillation { center, radius, freq, phase } => {
                if dist(dim, x, *center) <= *radius {
                    (freq * (x[0] - center[0]) + phase).sin() + 0.25
                } else {
                    0.0
                }
            }
            Profile::Pieces { radius, values, pieces } => {
                let mut idx = 0;
                for a in 0..dim {
                    let u = (x[a] + radius) / (2.0 * radius);
                    if !(0.0..1.0).contains(&u) {
                        return 0.0;
                    }
                    idx = idx * pieces + ((u * *pieces as f64) as usize).min(pieces - 1);
                }
                values[idx]
            }
        }
    }
}

/// Symbol class a generated symbol is intended for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolClass {
    Bmo,
    Lip,
}

/// Analytic symbol `b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolProfile {
    /// `log max(|x − x₀|, h/2)`
    Log { center: [f64; 2] },
    /// `|x − x₀|^e`
    Power { center: [f64; 2], exponent: f64 },
    /// `tanh((x₁ − c)/ε)`
    SmoothStep { at: f64, width: f64 },
}

impl SymbolProfile {
    pub fn name(&self) -> &'static str {
        match self {
            SymbolProfile::Log { .. } => "log",
            SymbolProfile::Power { .. } => "power",
            SymbolProfile::SmoothStep { .. } => "tanh",
        }
    }

    pub fn classes(&self) -> &'static [SymbolClass] {
        match self {
            SymbolProfile::Log { .. } => &[SymbolClass::Bmo],
            SymbolProfile::Power { .. } => &[SymbolClass::Lip],
            SymbolProfile::SmoothStep { .. } => &[SymbolClass::Bmo, SymbolClass::Lip],
        }
    }

    pub fn sample(&self, grid: &Grid) -> Result<GridFunction> {
        let dim = grid.dim();
        let h = grid.cell_width();
        grid.sample(|x| match self {
            SymbolProfile::Log { center } => dist(dim, x, *center).max(h / 2.0).ln(),
            SymbolProfile::Power { center, exponent } => dist(dim, x, *center).powf(*exponent),
            SymbolProfile::SmoothStep { at, width } => ((x[0] - at) / width).tanh(),
        })
    }
}

/// A named sampled function.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub name: String,
    pub values: GridFunction,
    /// Whether the support lies inside the margin.
    pub in_margin: bool,
}

/// Test inputs and symbols on one grid, reproducible from their profiles.
#[derive(Debug, Clone)]
pub struct Corpus {
    grid: Grid,
    seed: u64,
    profiles: Vec<Profile>,
    symbol_profiles: Vec<SymbolProfile>,
    pub inputs: Vec<Entry>,
    pub symbols: Vec<Entry>,
}

fn in_margin(grid: &Grid, f: &GridFunction) -> bool {
    let r = grid.domain().support_half_width();
    f.values().iter().enumerate().all(|(i, v)| {
        let c = grid.center(i);
        *v == 0.0 || (0..grid.dim()).all(|a| c[a].abs() <= r)
    })
}

impl Corpus {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    pub fn symbol_profiles(&self) -> &[SymbolProfile] {
        &self.symbol_profiles
    }

    pub fn from_profiles(grid: Grid, seed: u64, profiles: Vec<Profile>, symbol_profiles: Vec<SymbolProfile>) -> Result<Self> {
        let dim = grid.dim();
        let mut inputs = Vec::with_capacity(profiles.len());
        for (k, p) in profiles.iter().enumerate() {
            let values = grid.sample(|x| p.eval(dim, x))?;
            if values.is_zero() {
                return Err(Error::param(format!("corpus entry {k} ({}) vanishes on the grid", p.name())));
            }
            let in_margin = in_margin(&grid, &values);
            inputs.push(Entry { name: format!("{}{k}", p.name()), values, in_margin });
        }
        let symbols = symbol_profiles
            .iter()
            .enumerate()
            .map(|(k, s)| Ok(Entry { name: format!("{}{k}", s.name()), values: s.sample(&grid)?, in_margin: true }))
            .collect::<Result<_>>()?;
        Ok(Corpus { grid, seed, profiles, symbol_profiles, inputs, symbols })
    }

    /// The same profiles sampled on another grid.
    pub fn resample(&self, grid: Grid) -> Result<Self> {
        Self::from_profiles(grid, self.seed, self.profiles.clone(), self.symbol_profiles.clone())
    }

    /// Symbols intended for `class`.
    pub fn symbols_for(&self, class: SymbolClass) -> Vec<&Entry> {
        self.symbols
            .iter()
            .zip(&self.symbol_profiles)
            .filter(|(_, p)| p.classes().contains(&class))
            .map(|(e, _)| e)
            .collect()
    }

    /// The first `count` inputs.
    pub fn truncated(&self, count: usize) -> Self {
        let mut c = self.clone();
        c.profiles.truncate(count);
        c.inputs.truncate(count);
        c
    }
}

/// `count` inputs (bumps, steps, tents, truncated oscillations, random pieces, in rotation)
/// and five symbols, deterministic in `seed`.
pub fn generate_corpus(grid: Grid, seed: u64, count: usize) -> Result<Corpus> {
    if count < 1 {
        return Err(Error::param("corpus count must be >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = grid.dim();
    let reach = grid.domain().support_half_width();
    let center = |rng: &mut ChaCha8Rng, radius: f64| {
        let mut c = [0.0, 0.0];
        for slot in c.iter_mut().take(dim) {
            *slot = rng.gen_range(-(reach - radius)..=(reach - radius));
        }
        c
    };
    let mut profiles = Vec::with_capacity(count);
    for k in 0..count {
        let radius = rng.gen_range(0.25 * reach..=0.5 * reach);
        let amp = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let p = match k % 5 {
            0 => Profile::Bump { center: center(&mut rng, radius), radius, amp },
            1 => Profile::Step { center: center(&mut rng, radius), radius, amp },
            2 => Profile::Tent { center: center(&mut rng, radius), radius, amp },
            3 => Profile::Oscillation {
                center: center(&mut rng, radius),
                radius,
                freq: rng.gen_range(2.0..12.0) / radius,
                phase: rng.gen_range(0.0..std::f64::consts::TAU),
            },
            _ => {
                let pieces = rng.gen_range(3..=6usize);
                let mut values: Vec<f64> = (0..pieces.pow(dim as u32)).map(|_| rng.gen_range(-1.0..1.0)).collect();
                values[0] = 1.0;
                Profile::Pieces { radius: reach, values, pieces }
            }
        };
        profiles.push(p);
    }
    let l = grid.half_width();
    let off = |rng: &mut ChaCha8Rng| {
        let mut c = [0.0, 0.0];
        for slot in c.iter_mut().take(dim) {
            *slot = rng.gen_range(-0.5 * l..0.5 * l);
        }
        c
    };
    let symbols = vec![
        SymbolProfile::Log { center: [0.0, 0.0] },
        SymbolProfile::Log { center: off(&mut rng) },
        SymbolProfile::Power { center: [0.0, 0.0], exponent: 0.5 },
        SymbolProfile::Power { center: off(&mut rng), exponent: 1.0 },
        SymbolProfile::SmoothStep { at: rng.gen_range(-0.5 * l..0.5 * l), width: rng.gen_range(0.1..0.3) * l },
    ];
    Corpus::from_profiles(grid, seed, profiles, symbols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_margin() {
        let g = Grid::with(1, 2.0, 0.5, 8).unwrap();
        let a = generate_corpus(g, 7, 20).unwrap();
        let b = generate_corpus(g, 7, 20).unwrap();
        assert_eq!(a.inputs, b.inputs);
        assert_eq!(a.symbols, b.symbols);
        assert_eq!(a.inputs.len(), 20);
        assert!(a.symbols.len() >= 3);
        assert!(a.inputs.iter().all(|e| e.in_margin && !e.values.is_zero()));
        assert_eq!(a.symbols_for(SymbolClass::Bmo).len(), 3);
        assert_eq!(a.symbols_for(SymbolClass::Lip).len(), 3);
        let c = generate_corpus(g, 8, 20).unwrap();
        assert_ne!(a.inputs, c.inputs);
    }

    #[test]
    fn coarse_and_planar_grids() {
        for (dim, j) in [(1, 3), (2, 3), (2, 5)] {
            let g = Grid::with(dim, 1.0, 0.25, j).unwrap();
            let c = generate_corpus(g, 3, 10).unwrap();
            assert!(c.inputs.iter().all(|e| e.in_margin));
            let finer = c.resample(Grid::with(dim, 1.0, 0.25, j + 1).unwrap()).unwrap();
            assert_eq!(finer.inputs.len(), 10);
        }
    }

    #[test]
    fn clipped_log() {
        let g = Grid::with(1, 1.0, 0.25, 4).unwrap();
        let b = SymbolProfile::Log { center: [0.0, 0.0] }.sample(&g).unwrap();
        let (lo, _, hi, _) = b.extrema();
        assert!((lo - (g.cell_width() / 2.0).ln()).abs() < 1e-12);
        assert!(hi <= 0.0);
    }
}

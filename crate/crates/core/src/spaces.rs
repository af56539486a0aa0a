//! Weighted Morrey norms and the oscillation norm behind `BMO_p(w)`, `Lip_β^p` and `Lip_β^p(w)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{shifted_mean, Cube, CubeFamily, CubeRecord, GridFunction};
use crate::weights::{power_membership, Weight, WeightClass, WeightField, WeightSpec};

/// A norm value with the family cube attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport {
    pub value: f64,
    pub cube: CubeRecord,
    #[serde(skip)]
    pub attaining: Cube,
}

/// `L^{p,κ}(u, v)`; `u = v` is the one-weight space `L^{p,κ}(w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MorreyParams {
    pub p: f64,
    pub kappa: f64,
    pub u: Weight,
    pub v: Weight,
}

impl MorreyParams {
    pub fn new(p: f64, kappa: f64, u: Weight, v: Weight) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::param(format!("Morrey exponent p must be >= 1, got {p}")));
        }
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(Error::param(format!("kappa must be in (0, 1), got {kappa}")));
        }
        Ok(MorreyParams { p, kappa, u, v })
    }

    pub fn one_weight(p: f64, kappa: f64, w: Weight) -> Result<Self> {
        Self::new(p, kappa, w.clone(), w)
    }
}

/// `β ∈ [0, 1]`, `p ≥ 1`, weight `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillationParams {
    pub beta: f64,
    pub p: f64,
    pub w: Weight,
}

impl OscillationParams {
    pub fn new(beta: f64, p: f64, w: Weight) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::param(format!("beta must be in [0, 1], got {beta}")));
        }
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::param(format!("oscillation exponent p must be >= 1, got {p}")));
        }
        Ok(OscillationParams { beta, p, w })
    }

    pub fn bmo(p: f64, w: Weight) -> Result<Self> {
        Self::new(0.0, p, w)
    }

    pub fn lip(beta: f64, p: f64) -> Result<Self> {
        Self::new(beta, p, Weight::unit())
    }
}

fn argmax(family: &CubeFamily, values: Vec<f64>) -> NormReport {
    let grid = family.grid();
    let (mut best, mut at) = (0.0, 0usize);
    for (k, v) in values.into_iter().enumerate() {
        if v > best {
            best = v;
            at = k;
        }
    }
    let cube = family.cubes()[at];
    NormReport { value: best, cube: cube.record(grid), attaining: cube }
}

fn family_for(f: &GridFunction, family: &CubeFamily) -> Result<()> {
    if family.grid() != f.grid() {
        return Err(Error::GridMismatch("cube family lives on a different grid".into()));
    }
    if family.is_empty() {
        return Err(Error::FamilyExhausted("empty cube family".into()));
    }
    Ok(())
}

/// A Morrey norm with its weights realized on a family, reusable across functions.
pub struct MorreyNorm<'a> {
    p: f64,
    family: &'a CubeFamily,
    u: WeightField,
    gauge: Vec<f64>,
}

impl<'a> MorreyNorm<'a> {
    pub fn new(mp: &MorreyParams, family: &'a CubeFamily) -> Result<Self> {
        let grid = family.grid();
        let u = mp.u.on_grid(grid)?;
        let v = if mp.v == mp.u { u.clone() } else { mp.v.on_grid(grid)? };
        let gauge = family.cubes().par_iter().map(|q| v.cube_measure(q).powf(mp.kappa)).collect();
        Ok(MorreyNorm { p: mp.p, family, u, gauge })
    }

    pub fn eval(&self, f: &GridFunction) -> Result<NormReport> {
        family_for(f, self.family)?;
        let (v, m, p) = (f.values(), self.u.measures(), self.p);
        let grid = f.grid();
        let values = self
            .family
            .cubes()
            .par_iter()
            .zip(&self.gauge)
            .map(|(q, g)| {
                let mass: f64 = q.cells(grid).map(|i| v[i].abs().powf(p) * m[i]).sum();
                (mass / g).powf(1.0 / p)
            })
            .collect();
        Ok(argmax(self.family, values))
    }
}

/// `sup_Q (v(Q)^{−κ} ∫_Q |f|^p u)^{1/p}`.
pub fn morrey_norm(f: &GridFunction, mp: &MorreyParams, family: &CubeFamily) -> Result<NormReport> {
    MorreyNorm::new(mp, family)?.eval(f)
}

/// The oscillation norm with its weights realized on a family.
pub struct OscillationNorm<'a> {
    p: f64,
    family: &'a CubeFamily,
    dual: WeightField,
    /// `w(Q)^{−β/n}` and `1/w(Q)` per cube.
    scale: Vec<(f64, f64)>,
}

impl<'a> OscillationNorm<'a> {
    pub fn new(op: &OscillationParams, family: &'a CubeFamily) -> Result<Self> {
        let grid = family.grid();
        let n = grid.dim() as f64;
        let w = op.w.on_grid(grid)?;
        let dual = if op.p == 1.0 {
            WeightField::lebesgue(grid)
        } else {
            op.w.powf(1.0 - op.p).on_grid(grid).map_err(|e| match (e, op.w.as_power()) {
                (Error::NotIntegrable(_), Some(pw)) => {
                    let cell = grid.locate(pw.center);
                    let q = Cube::new(grid, grid.multi_index(cell), 1).expect("single cell");
                    Error::NotIntegrable(format!(
                        "w^(1-p) = |x-x0|^{} on the cube {:?}",
                        pw.gamma * (1.0 - op.p),
                        q.record(grid)
                    ))
                }
                (e, _) => e,
            })?
        };
        let scale = family
            .cubes()
            .par_iter()
            .map(|q| {
                let wq = w.cube_measure(q);
                (wq.powf(-op.beta / n), 1.0 / wq)
            })
            .collect();
        Ok(OscillationNorm { p: op.p, family, dual, scale })
    }

    pub fn eval(&self, b: &GridFunction) -> Result<NormReport> {
        family_for(b, self.family)?;
        let (v, m, p) = (b.values(), self.dual.measures(), self.p);
        let grid = b.grid();
        let values = self
            .family
            .cubes()
            .par_iter()
            .zip(&self.scale)
            .map(|(q, &(gauge, inv))| {
                let bq = shifted_mean(q.cells(grid).map(|i| v[i])).unwrap_or(0.0);
                let osc: f64 = q.cells(grid).map(|i| (v[i] - bq).abs().powf(p) * m[i]).sum();
                gauge * (osc * inv).powf(1.0 / p)
            })
            .collect();
        Ok(argmax(self.family, values))
    }
}

/// `sup_Q w(Q)^{−β/n} ((1/w(Q)) ∫_Q |b − b_Q|^p w^{1−p})^{1/p}` with the unweighted `b_Q`.
pub fn oscillation_norm(b: &GridFunction, op: &OscillationParams, family: &CubeFamily) -> Result<NormReport> {
    OscillationNorm::new(op, family)?.eval(b)
}

/// The `p`-version and `1`-version of an oscillation norm and their ratio
/// (`None` when both vanish).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaDReport {
    pub p_norm: f64,
    pub one_norm: f64,
    pub ratio: Option<f64>,
}

pub fn lemma_d_check(b: &GridFunction, p: f64, op: &OscillationParams, family: &CubeFamily) -> Result<LemmaDReport> {
    if !(p > 1.0) {
        return Err(Error::param(format!("need p > 1, got {p}")));
    }
    if !op.w.is_unit() {
        let dim = family.grid().dim();
        let ok = match op.w.as_power() {
            Some(pw) => power_membership(dim, pw, WeightClass::a1())?,
            None => false,
        };
        if !ok {
            return Err(Error::Hypotheses("A_1 required".into()));
        }
    }
    let pv = oscillation_norm(b, &OscillationParams { p, ..op.clone() }, family)?.value;
    let one = oscillation_norm(b, &OscillationParams { p: 1.0, ..op.clone() }, family)?.value;
    let ratio = if one == 0.0 && pv == 0.0 { None } else { Some(pv / one) };
    Ok(LemmaDReport { p_norm: pv, one_norm: one, ratio })
}

/// Textual space description: `morrey:p=..,kappa=..,u=..,v=..` or `osc:beta=..,p=..,w=..`.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSpec {
    Morrey { p: f64, kappa: f64, u: WeightSpec, v: WeightSpec },
    Osc { beta: f64, p: f64, w: WeightSpec },
}

/// A space with its weights loaded.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Morrey(MorreyParams),
    Oscillation(OscillationParams),
}

impl Space {
    pub fn norm(&self, f: &GridFunction, family: &CubeFamily) -> Result<NormReport> {
        match self {
            Space::Morrey(mp) => morrey_norm(f, mp, family),
            Space::Oscillation(op) => oscillation_norm(f, op, family),
        }
    }
}

impl SpaceSpec {
    pub fn load(&self) -> Result<Space> {
        match self {
            SpaceSpec::Morrey { p, kappa, u, v } => Ok(Space::Morrey(MorreyParams::new(*p, *kappa, u.load()?, v.load()?)?)),
            SpaceSpec::Osc { beta, p, w } => Ok(Space::Oscillation(OscillationParams::new(*beta, *p, w.load()?)?)),
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Morrey { p, kappa, u, v } => write!(f, "morrey:p={p},kappa={kappa},u={u},v={v}"),
            SpaceSpec::Osc { beta, p, w } => write!(f, "osc:beta={beta},p={p},w={w}"),
        }
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    /// Weight values may themselves contain commas; fields whose key is not a
    /// space key are appended to the weight currently being read.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, body) = s.split_once(':').ok_or_else(|| Error::parse(format!("space spec `{s}` has no kind")))?;
        let (numeric, weights): (&[&str], &[&str]) = match kind {
            "morrey" => (&["p", "kappa"], &["u", "v"]),
            "osc" => (&["beta", "p"], &["w"]),
            _ => return Err(Error::parse(format!("unknown space kind `{kind}` (morrey, osc)"))),
        };
        let mut nums: Vec<(String, f64)> = Vec::new();
        let mut ws: Vec<(String, String)> = Vec::new();
        let mut open_weight = false;
        for tok in body.split(',').filter(|t| !t.trim().is_empty()) {
            let key = tok.split_once('=').map(|(k, _)| k.trim());
            match key {
                Some(k) if numeric.contains(&k) => {
                    let v = tok.split_once('=').unwrap().1.trim();
                    let x = v.parse::<f64>().map_err(|_| Error::parse(format!("bad number `{v}` for {k}")))?;
                    nums.push((k.to_string(), x));
                    open_weight = false;
                }
                Some(k) if weights.contains(&k) => {
                    ws.push((k.to_string(), tok.split_once('=').unwrap().1.trim().to_string()));
                    open_weight = true;
                }
                _ if open_weight => {
                    let last = ws.last_mut().expect("open weight");
                    last.1.push(',');
                    last.1.push_str(tok.trim());
                }
                _ => return Err(Error::parse(format!("unexpected field `{tok}` in `{s}`"))),
            }
        }
        let num = |k: &str, default: Option<f64>| {
            nums.iter()
                .rev()
                .find(|(n, _)| n == k)
                .map(|(_, v)| *v)
                .or(default)
                .ok_or_else(|| Error::parse(format!("space spec `{s}` needs {k}")))
        };
        let weight = |k: &str| -> Result<WeightSpec> {
            ws.iter().rev().find(|(n, _)| n == k).map_or(Ok(WeightSpec::unit()), |(_, v)| v.parse())
        };
        match kind {
            "morrey" => Ok(SpaceSpec::Morrey { p: num("p", None)?, kappa: num("kappa", None)?, u: weight("u")?, v: weight("v")? }),
            _ => Ok(SpaceSpec::Osc { beta: num("beta", Some(0.0))?, p: num("p", Some(1.0))?, w: weight("w")? }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    #[test]
    fn morrey_constant_on_unit_box() {
        let g = Grid::with(1, 1.0, 0.25, 8).unwrap();
        let fam = CubeFamily::new(g, 3).unwrap();
        let mp = MorreyParams::one_weight(2.0, 0.5, Weight::unit()).unwrap();
        let one = GridFunction::constant(g, 1.0).unwrap();
        let r = morrey_norm(&one, &mp, &fam).unwrap();
        assert!((r.value - 2f64.powf(0.25)).abs() < 1e-12);
        assert_eq!(r.cube.side, 2.0);
        assert_eq!(morrey_norm(&GridFunction::zeros(g), &mp, &fam).unwrap().value, 0.0);
        let two = MorreyParams::new(2.0, 0.5, Weight::unit(), Weight::unit()).unwrap();
        assert_eq!(morrey_norm(&one, &two, &fam).unwrap().value, r.value);
        assert!(MorreyParams::new(2.0, 1.0, Weight::unit(), Weight::unit()).is_err());
    }

    #[test]
    fn oscillation_of_linear_symbol() {
        // domain [-1/2, 1/2]: mean absolute deviation of x over an interval is |Q|/4
        let g = Grid::with(1, 0.5, 0.1, 8).unwrap();
        let fam = CubeFamily::new(g, 3).unwrap();
        let b = g.sample(|x| x[0]).unwrap();
        let bmo = oscillation_norm(&b, &OscillationParams::bmo(1.0, Weight::unit()).unwrap(), &fam).unwrap();
        assert!((bmo.value - 0.25).abs() < 1e-12);
        let lip = oscillation_norm(&b, &OscillationParams::lip(1.0, 1.0).unwrap(), &fam).unwrap();
        assert!((lip.value - 0.25).abs() < 1e-12);
        let c = GridFunction::constant(g, 3.0).unwrap();
        let w = OscillationParams::new(0.3, 2.0, Weight::power(-0.2)).unwrap();
        assert_eq!(oscillation_norm(&c, &w, &fam).unwrap().value, 0.0);
    }

    #[test]
    fn dual_factor_failure_names_cube() {
        let g = Grid::with(1, 1.0, 0.25, 5).unwrap();
        let fam = CubeFamily::new(g, 1).unwrap();
        let b = g.sample(|x| x[0]).unwrap();
        // w^{1-p} = |x|^{-1.5}
        let op = OscillationParams::bmo(2.5, Weight::power(1.0)).unwrap();
        match oscillation_norm(&b, &op, &fam) {
            Err(Error::NotIntegrable(m)) => assert!(m.contains("cube"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lemma_d() {
        let g = Grid::with(1, 1.0, 0.25, 8).unwrap();
        let fam = CubeFamily::new(g, 2).unwrap();
        let b = g.sample(|x| x[0]).unwrap();
        let r = lemma_d_check(&b, 2.0, &OscillationParams::bmo(1.0, Weight::unit()).unwrap(), &fam).unwrap();
        // linear b: (1/√12)/(1/4) on every interval, up to discretization
        assert!((r.ratio.unwrap() - 4.0 / 12f64.sqrt()).abs() < 1e-3);
        let c = GridFunction::constant(g, 1.0).unwrap();
        assert!(lemma_d_check(&c, 2.0, &OscillationParams::bmo(1.0, Weight::unit()).unwrap(), &fam).unwrap().ratio.is_none());
        let bad = OscillationParams::bmo(1.0, Weight::power(0.3)).unwrap();
        assert!(matches!(lemma_d_check(&b, 2.0, &bad, &fam), Err(Error::Hypotheses(_))));
    }

    #[test]
    fn spec_strings_round_trip() {
        let s: SpaceSpec = "morrey:p=2,kappa=0.5,u=power:gamma=0,v=power:x0=0.5,gamma=-0.2".parse().unwrap();
        match &s {
            SpaceSpec::Morrey { p, kappa, u, v } => {
                assert_eq!((*p, *kappa), (2.0, 0.5));
                assert_eq!(*u, WeightSpec::unit());
                assert_eq!(*v, WeightSpec::Power { center: [0.5, 0.0], gamma: -0.2 });
            }
            _ => panic!(),
        }
        assert_eq!(s.to_string().parse::<SpaceSpec>().unwrap(), s);
        let o: SpaceSpec = "osc:beta=0,p=1,w=power:gamma=0".parse().unwrap();
        assert_eq!(o.to_string().parse::<SpaceSpec>().unwrap(), o);
        assert!("morrey:p=2".parse::<SpaceSpec>().is_err());
        assert!("lebesgue:p=2".parse::<SpaceSpec>().is_err());
        assert!("osc:beta=x".parse::<SpaceSpec>().is_err());
    }
}

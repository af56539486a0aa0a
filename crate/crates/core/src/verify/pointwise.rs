use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{CubeFamily, Grid, GridFunction};
use crate::operators::{commutator, fractional_integral, maximal, FracIntConfig, MaximalConfig, MaximalVariant};
use crate::spaces::{morrey_norm, oscillation_norm, MorreyParams, OscillationParams};

use super::bounds::{check_prop_hypotheses, require, PropId};
use super::corpus::{Corpus, SymbolClass};
use super::params::ParamSet;
use super::sweep::{maximal_config, relative_drift, sup_of, GridInfo, LevelSummary, RatioEntry, VerificationReport, POINTWISE_DRIFT};

/// Cellwise comparison of `M^#_δ([b, I_α]f)` with the proposition's majorant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointwiseReport {
    pub sup_ratio: f64,
    pub cell: usize,
    pub point: Vec<f64>,
    /// Cells with a positive left side and a vanishing majorant.
    pub violations: usize,
    pub symbol_norm: f64,
}

fn symbol_space(prop: PropId, ps: &ParamSet) -> Result<OscillationParams> {
    match prop {
        PropId::P37 => OscillationParams::bmo(1.0, ps.weight()),
        PropId::P44 => OscillationParams::lip(ps.beta, 1.0),
        PropId::P52 => OscillationParams::new(ps.beta, 1.0, ps.weight()),
    }
}

fn weighted_sum(terms: &[(Vec<f64>, &GridFunction)]) -> Vec<f64> {
    let len = terms[0].1.values().len();
    (0..len).map(|i| terms.iter().map(|(c, f)| c[i] * f.values()[i]).sum()).collect()
}

/// The three-term majorant (without the symbol norm) at every cell.
fn majorant(prop: PropId, ps: &ParamSet, f: &GridFunction, family: &CubeFamily) -> Result<Vec<f64>> {
    let grid = f.grid();
    let n = ps.n as f64;
    let r = ps.r_inner();
    let frac = FracIntConfig::new(ps.n, ps.alpha)?;
    let i_f = fractional_integral(f, &frac)?;
    let m = |g: &GridFunction, variant, beta, r| maximal(g, &maximal_config(ps, variant, beta, r), family);
    let dens = ps.weight().on_grid(grid)?.densities();
    let pow = |t: f64| dens.iter().map(|d| d.powf(t)).collect::<Vec<f64>>();
    let ones = vec![1.0; grid.len()];
    let ab = ps.alpha + ps.beta;
    Ok(match prop {
        PropId::P37 => {
            let a = m(&i_f, MaximalVariant::FractionalWeighted, 0.0, r)?;
            let b = m(f, MaximalVariant::FractionalWeighted, ps.alpha, r)?;
            let c = m(f, MaximalVariant::Fractional, ps.alpha, 1.0)?;
            weighted_sum(&[(dens.clone(), &a), (pow(1.0 - ps.alpha / n), &b), (dens.clone(), &c)])
        }
        PropId::P44 => {
            let a = m(&i_f, MaximalVariant::Fractional, ps.beta, 1.0)?;
            let b = m(f, MaximalVariant::Fractional, ab, r)?;
            let c = m(f, MaximalVariant::Fractional, ab, 1.0)?;
            weighted_sum(&[(ones.clone(), &a), (ones.clone(), &b), (ones, &c)])
        }
        PropId::P52 => {
            let a = m(&i_f, MaximalVariant::Fractional, ps.beta, 1.0)?;
            let b = m(f, MaximalVariant::FractionalWeighted, ab, r)?;
            let c = m(f, MaximalVariant::Fractional, ab, 1.0)?;
            let up = pow(1.0 + ps.beta / n);
            weighted_sum(&[(up.clone(), &a), (pow(1.0 - ps.alpha / n), &b), (up, &c)])
        }
    })
}

/// `sup_x M^#_δ([b, I_α]f)(x) / (‖b‖ · majorant(x))` over the cells, with `w(x)` taken
/// as the cell average of `w`. Cells where the left side vanishes contribute 0.
pub fn pointwise_sharp_check(prop: PropId, ps: &ParamSet, b: &GridFunction, f: &GridFunction, family: &CubeFamily) -> Result<PointwiseReport> {
    require(&check_prop_hypotheses(ps, prop))?;
    b.check_grid(f)?;
    let grid = f.grid();
    let norm = oscillation_norm(b, &symbol_space(prop, ps)?, family)?.value;
    if !norm.is_finite() {
        return Err(Error::Hypotheses(format!("symbol norm is not finite for {}", prop.name())));
    }
    let frac = FracIntConfig::new(ps.n, ps.alpha)?;
    let lhs = maximal(&commutator(b, f, &frac)?, &MaximalConfig::sharp_delta(ps.delta), family)?;
    let rhs = majorant(prop, ps, f, family)?;
    let mut report = PointwiseReport { sup_ratio: 0.0, cell: 0, point: Vec::new(), violations: 0, symbol_norm: norm };
    for (i, (&l, &m)) in lhs.values().iter().zip(&rhs).enumerate() {
        if l == 0.0 {
            continue;
        }
        let r = norm * m;
        if r <= 0.0 {
            report.violations += 1;
            continue;
        }
        if l / r > report.sup_ratio {
            report.sup_ratio = l / r;
            report.cell = i;
        }
    }
    report.point = grid.center(report.cell)[..grid.dim()].to_vec();
    Ok(report)
}

fn symbol_class(prop: PropId) -> SymbolClass {
    if prop == PropId::P37 { SymbolClass::Bmo } else { SymbolClass::Lip }
}

/// Pointwise check over every (input, symbol) pair of the corpus.
pub fn pointwise_sweep(prop: PropId, ps: &ParamSet, corpus: &Corpus, shifts: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let hypotheses = check_prop_hypotheses(ps, prop);
    require(&hypotheses)?;
    let family = CubeFamily::new(*corpus.grid(), shifts)?;
    let symbols = corpus.symbols_for(symbol_class(prop));
    let ratios: Vec<RatioEntry> = corpus
        .inputs
        .par_iter()
        .map(|f| {
            symbols
                .iter()
                .map(|b| {
                    let name = format!("{}|{}", f.name, b.name);
                    let r = pointwise_sharp_check(prop, ps, &b.values, &f.values, &family)?;
                    Ok(if r.violations > 0 {
                        RatioEntry { input: name, value: Some(f64::INFINITY), note: Some(format!("{} violations", r.violations)) }
                    } else {
                        RatioEntry::ok(name, r.sup_ratio)
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let sup = sup_of(&ratios);
    let g = corpus.grid();
    Ok(VerificationReport {
        id: prop.name().to_string(),
        params: ps.resolved(),
        operator: format!("M#_{}([b,I_{}]f) / majorant", ps.delta, ps.alpha),
        source: None,
        target: None,
        symbol: Some(format!("osc:beta={},p=1,w={}", if prop == PropId::P37 { 0.0 } else { ps.beta }, if prop == PropId::P44 { ps.weight_spec(0.0) } else { ps.weight_spec(1.0) })),
        hypotheses,
        grid: GridInfo {
            n: g.dim(),
            half_width: g.half_width(),
            margin: g.domain().margin(),
            shifts,
            seed: corpus.seed(),
            inputs: corpus.inputs.len(),
            symbols: symbols.len(),
        },
        ratios,
        sup_ratio: sup,
        levels: vec![LevelSummary { level: g.level(), sup_ratio: sup }],
        drift: None,
        drift_threshold: POINTWISE_DRIFT,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Pointwise sweep at several levels with drift between the first and last.
pub fn verify_prop(prop: PropId, ps: &ParamSet, corpus: &Corpus, levels: &[u32], shifts: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut runs = Vec::new();
    for &j in levels {
        let c = if corpus.grid().level() == j { corpus.clone() } else { corpus.resample(Grid::new(*corpus.grid().domain(), j)?)? };
        runs.push(pointwise_sweep(prop, ps, &c, shifts)?);
    }
    let mut report = runs.pop().ok_or_else(|| Error::param("at least one level is required"))?;
    let mut summaries: Vec<LevelSummary> = runs.iter().flat_map(|r| r.levels.clone()).collect();
    summaries.extend(report.levels.clone());
    report.drift = (summaries.len() > 1).then(|| relative_drift(summaries[0].sup_ratio, report.sup_ratio)).flatten();
    report.levels = summaries;
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

/// `‖M_δ f‖ / ‖M^#_δ f‖` in `L^{p,κ}(u, v)`; `None` when the sharp norm vanishes.
pub fn prop31_check(f: &GridFunction, delta: f64, mp: &MorreyParams, family: &CubeFamily) -> Result<Option<f64>> {
    let num = morrey_norm(&maximal(f, &MaximalConfig::delta(delta), family)?, mp, family)?.value;
    let den = morrey_norm(&maximal(f, &MaximalConfig::sharp_delta(delta), family)?, mp, family)?.value;
    Ok((den > 0.0).then(|| num / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Weight;

    fn thm1() -> ParamSet {
        ParamSet::new(1, 0.25, 0.0, 2.0, 0.25, -0.2).unwrap()
    }

    #[test]
    fn constant_symbol_gives_zero() {
        let g = Grid::with(1, 2.0, 0.5, 7).unwrap();
        let fam = CubeFamily::new(g, 2).unwrap();
        let f = g.sample(|x| (-4.0 * x[0] * x[0]).exp() * if x[0].abs() < 1.5 { 1.0 } else { 0.0 }).unwrap();
        let b = GridFunction::constant(g, 3.0).unwrap();
        let r = pointwise_sharp_check(PropId::P37, &thm1(), &b, &f, &fam).unwrap();
        assert_eq!(r.sup_ratio, 0.0);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn invariant_under_symbol_scaling() {
        let g = Grid::with(1, 2.0, 0.5, 7).unwrap();
        let fam = CubeFamily::new(g, 2).unwrap();
        let f = g.sample(|x| if x[0].abs() < 1.0 { 1.0 } else { 0.0 }).unwrap();
        let ps = ParamSet::new(1, 0.2, 0.3, 1.5, 0.2, -0.1).unwrap();
        let b = g.sample(|x| x[0].abs().sqrt()).unwrap();
        for prop in PropId::ALL {
            let ps = if prop == PropId::P37 { thm1() } else { ps };
            let a = pointwise_sharp_check(prop, &ps, &b, &f, &fam).unwrap();
            let c = pointwise_sharp_check(prop, &ps, &b.scale(4.0), &f.scale(-2.0), &fam).unwrap();
            assert!(a.sup_ratio > 0.0 && a.sup_ratio.is_finite());
            assert!((a.sup_ratio - c.sup_ratio).abs() <= 1e-10 * a.sup_ratio, "{prop}");
        }
    }

    #[test]
    fn prop31() {
        let g = Grid::with(1, 2.0, 0.5, 7).unwrap();
        let fam = CubeFamily::new(g, 3).unwrap();
        let mp = MorreyParams::one_weight(2.0, 0.25, Weight::unit()).unwrap();
        let step = g.sample(|x| if x[0] > -0.5 && x[0] < 0.7 { 1.0 } else { 0.0 }).unwrap();
        let r = prop31_check(&step, 0.5, &mp, &fam).unwrap().unwrap();
        assert!(r.is_finite() && r > 0.0);
        assert!(prop31_check(&GridFunction::constant(g, 1.0).unwrap(), 0.5, &mp, &fam).unwrap().is_none());
    }
}

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{CubeFamily, Grid, GridFunction};
use crate::operators::{commutator, fractional_integral, maximal, FracIntConfig, MaximalConfig, MaximalVariant};
use crate::spaces::{MorreyNorm, MorreyParams, OscillationNorm, OscillationParams, Space, SpaceSpec};

use super::bounds::{check_hypotheses, require, BoundId, BoundOperator, BoundSpec, Hypothesis};
use super::corpus::{Corpus, SymbolClass};
use super::params::{ParamSet, ResolvedParams};

/// Drift tolerated between two resolutions for norm sweeps.
pub const NORM_DRIFT: f64 = 0.15;
/// Drift tolerated between two resolutions for pointwise checks.
pub const POINTWISE_DRIFT: f64 = 0.20;

/// One ratio of a sweep; `value: None` marks a skipped entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioEntry {
    pub input: String,
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RatioEntry {
    pub(crate) fn ok(input: String, value: f64) -> Self {
        RatioEntry { input, value: Some(value), note: None }
    }

    pub(crate) fn skipped(input: String, note: &str) -> Self {
        RatioEntry { input, value: None, note: Some(note.to_string()) }
    }
}

/// Largest non-skipped ratio.
pub fn sup_of(ratios: &[RatioEntry]) -> f64 {
    ratios.iter().filter_map(|r| r.value).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelSummary {
    pub level: u32,
    pub sup_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridInfo {
    pub n: usize,
    pub half_width: f64,
    pub margin: f64,
    pub shifts: usize,
    pub seed: u64,
    pub inputs: usize,
    pub symbols: usize,
}

/// Everything one verification run observed. `ratios` are those of the finest level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: ResolvedParams,
    pub operator: String,
    pub source: Option<String>,
    pub target: Option<String>,
    pub symbol: Option<String>,
    pub hypotheses: Vec<Hypothesis>,
    pub grid: GridInfo,
    pub ratios: Vec<RatioEntry>,
    pub sup_ratio: f64,
    pub levels: Vec<LevelSummary>,
    pub drift: Option<f64>,
    pub drift_threshold: f64,
    pub seconds: f64,
}

impl VerificationReport {
    /// Finite positive sup ratio and, when two levels ran, drift within threshold.
    pub fn passed(&self) -> bool {
        let finite = self.sup_ratio.is_finite() && self.sup_ratio > 0.0;
        finite && self.drift.is_none_or(|d| d <= self.drift_threshold)
    }

    pub fn drift_exceeded(&self) -> bool {
        self.drift.is_some_and(|d| d > self.drift_threshold)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn morrey(spec: &SpaceSpec) -> Result<MorreyParams> {
    match spec.load()? {
        Space::Morrey(mp) => Ok(mp),
        Space::Oscillation(_) => Err(Error::param("expected a Morrey space")),
    }
}

fn oscillation(spec: &SpaceSpec) -> Result<OscillationParams> {
    match spec.load()? {
        Space::Oscillation(op) => Ok(op),
        Space::Morrey(_) => Err(Error::param("expected an oscillation space")),
    }
}

pub(crate) fn maximal_config(ps: &ParamSet, variant: MaximalVariant, beta: f64, r: f64) -> MaximalConfig {
    MaximalConfig { variant, beta, r, delta: ps.delta, weight: variant.is_weighted().then(|| ps.weight()) }
}

fn symbol_class(id: BoundId) -> SymbolClass {
    if id == BoundId::Thm1 { SymbolClass::Bmo } else { SymbolClass::Lip }
}

/// The ratios of one bound over a corpus on its own grid, without checking hypotheses.
fn sweep_level(spec: &BoundSpec, ps: &ParamSet, corpus: &Corpus, shifts: usize) -> Result<Vec<RatioEntry>> {
    let family = CubeFamily::new(*corpus.grid(), shifts)?;
    let source = MorreyNorm::new(&morrey(&spec.source)?, &family)?;
    let target = MorreyNorm::new(&morrey(&spec.target)?, &family)?;
    let per_input = |f: &GridFunction, op: &dyn Fn(&GridFunction) -> Result<GridFunction>| -> Result<Option<f64>> {
        let sf = source.eval(f)?.value;
        if sf == 0.0 {
            return Ok(None);
        }
        Ok(Some(target.eval(&op(f)?)?.value / sf))
    };
    let entries: Vec<Vec<RatioEntry>> = match spec.operator {
        BoundOperator::Commutator { alpha } => {
            let cfg = FracIntConfig::new(ps.n, alpha)?;
            let sym = OscillationNorm::new(&oscillation(spec.symbol.as_ref().expect("commutator bound has a symbol"))?, &family)?;
            let symbols = corpus.symbols_for(symbol_class(spec.id));
            let norms: Vec<f64> = symbols.iter().map(|b| sym.eval(&b.values).map(|r| r.value)).collect::<Result<_>>()?;
            corpus
                .inputs
                .par_iter()
                .map(|f| {
                    let sf = source.eval(&f.values)?.value;
                    symbols
                        .iter()
                        .zip(&norms)
                        .map(|(b, &sb)| {
                            let name = format!("{}|{}", f.name, b.name);
                            if sf == 0.0 || sb == 0.0 {
                                return Ok(RatioEntry::skipped(name, "zero source or symbol norm"));
                            }
                            let out = commutator(&b.values, &f.values, &cfg)?;
                            Ok(RatioEntry::ok(name, target.eval(&out)?.value / (sb * sf)))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?
        }
        BoundOperator::FracInt { alpha } => {
            let cfg = FracIntConfig::new(ps.n, alpha)?;
            let op = |f: &GridFunction| fractional_integral(f, &cfg);
            corpus
                .inputs
                .par_iter()
                .map(|f| {
                    let r = per_input(&f.values, &op)?;
                    Ok(vec![r.map_or_else(|| RatioEntry::skipped(f.name.clone(), "zero source norm"), |v| RatioEntry::ok(f.name.clone(), v))])
                })
                .collect::<Result<_>>()?
        }
        BoundOperator::Maximal { variant, beta, r } => {
            let cfg = maximal_config(ps, variant, beta, r);
            let op = |f: &GridFunction| maximal(f, &cfg, &family);
            corpus
                .inputs
                .par_iter()
                .map(|f| {
                    let r = per_input(&f.values, &op)?;
                    Ok(vec![r.map_or_else(|| RatioEntry::skipped(f.name.clone(), "zero source norm"), |v| RatioEntry::ok(f.name.clone(), v))])
                })
                .collect::<Result<_>>()?
        }
        BoundOperator::SharpRatio { delta } => {
            let md = MaximalConfig::delta(delta);
            let ms = MaximalConfig::sharp_delta(delta);
            corpus
                .inputs
                .par_iter()
                .map(|f| {
                    let num = target.eval(&maximal(&f.values, &md, &family)?)?.value;
                    let den = target.eval(&maximal(&f.values, &ms, &family)?)?.value;
                    Ok(vec![if den == 0.0 {
                        RatioEntry::skipped(f.name.clone(), "sharp norm is zero")
                    } else {
                        RatioEntry::ok(f.name.clone(), num / den)
                    }])
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(entries.into_iter().flatten().collect())
}

fn grid_info(corpus: &Corpus, shifts: usize) -> GridInfo {
    let g = corpus.grid();
    GridInfo {
        n: g.dim(),
        half_width: g.half_width(),
        margin: g.domain().margin(),
        shifts,
        seed: corpus.seed(),
        inputs: corpus.inputs.len(),
        symbols: corpus.symbols.len(),
    }
}

fn report_for(spec: &BoundSpec, ps: &ParamSet, hypotheses: Vec<Hypothesis>, corpus: &Corpus, shifts: usize) -> VerificationReport {
    VerificationReport {
        id: spec.id.name().to_string(),
        params: ps.resolved(),
        operator: spec.operator.to_string(),
        source: Some(spec.source.to_string()),
        target: Some(spec.target.to_string()),
        symbol: spec.symbol.as_ref().map(ToString::to_string),
        hypotheses,
        grid: grid_info(corpus, shifts),
        ratios: Vec::new(),
        sup_ratio: 0.0,
        levels: Vec::new(),
        drift: None,
        drift_threshold: NORM_DRIFT,
        seconds: 0.0,
    }
}

/// `target(T f) / (symbol(b) · source(f))` over the corpus at its grid. Refuses to run
/// unless every hypothesis of `id` holds.
pub fn ratio_sweep(id: BoundId, ps: &ParamSet, corpus: &Corpus, shifts: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let hypotheses = check_hypotheses(ps, id);
    require(&hypotheses)?;
    let spec = BoundSpec::new(id, ps)?;
    let ratios = sweep_level(&spec, ps, corpus, shifts)?;
    let sup = sup_of(&ratios);
    let mut report = report_for(&spec, ps, hypotheses, corpus, shifts);
    report.levels = vec![LevelSummary { level: corpus.grid().level(), sup_ratio: sup }];
    report.ratios = ratios;
    report.sup_ratio = sup;
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

fn at_level(corpus: &Corpus, level: u32) -> Result<Corpus> {
    let g = corpus.grid();
    if g.level() == level {
        return Ok(corpus.clone());
    }
    corpus.resample(Grid::new(*g.domain(), level)?)
}

/// `|R(J₂) − R(J₁)| / R(J₁)`, `None` when `R(J₁) = 0`.
pub fn relative_drift(r1: f64, r2: f64) -> Option<f64> {
    (r1 > 0.0).then(|| (r2 - r1).abs() / r1)
}

/// Sup-ratio drift of `id` between two resolutions of the same corpus.
pub fn refinement_drift(id: BoundId, ps: &ParamSet, corpus: &Corpus, j1: u32, j2: u32, shifts: usize) -> Result<Option<f64>> {
    let r1 = ratio_sweep(id, ps, &at_level(corpus, j1)?, shifts)?.sup_ratio;
    if j1 == j2 {
        return Ok(relative_drift(r1, r1));
    }
    let r2 = ratio_sweep(id, ps, &at_level(corpus, j2)?, shifts)?.sup_ratio;
    Ok(relative_drift(r1, r2))
}

/// Sweep at `levels` (coarse to fine); the report carries the finest ratios and the
/// drift between the first and last level.
pub fn verify_bound(id: BoundId, ps: &ParamSet, corpus: &Corpus, levels: &[u32], shifts: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    if levels.is_empty() {
        return Err(Error::param("at least one level is required"));
    }
    let mut runs = Vec::with_capacity(levels.len());
    for &j in levels {
        runs.push(ratio_sweep(id, ps, &at_level(corpus, j)?, shifts)?);
    }
    let mut report = runs.pop().expect("nonempty");
    let mut summaries: Vec<LevelSummary> = runs.iter().flat_map(|r| r.levels.clone()).collect();
    summaries.extend(report.levels.clone());
    report.drift = (summaries.len() > 1).then(|| relative_drift(summaries[0].sup_ratio, report.sup_ratio)).flatten();
    report.levels = summaries;
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

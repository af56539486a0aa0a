//! Empirical characteristic constants: suprema of the class functionals over a cube family.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Cube, CubeFamily, CubeRecord, Grid};

use super::{power_membership, Weight, WeightClass, WeightField};

/// Characteristic constant of a weight class, with the cube attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightClassReport {
    pub class: String,
    pub params: BTreeMap<String, f64>,
    pub constant: f64,
    pub cube: CubeRecord,
    #[serde(skip)]
    pub kind: WeightClass,
    #[serde(skip)]
    pub attaining: Cube,
}

impl WeightClassReport {
    fn new(kind: WeightClass, grid: &Grid, (constant, cube): (f64, Cube)) -> Self {
        let (class, params) = match kind {
            WeightClass::Ap { p } => ("ap", vec![("p", p)]),
            WeightClass::Apq { p, q } => ("apq", vec![("p", p), ("q", q)]),
            WeightClass::Rh { r } => ("rh", vec![("r", r)]),
        };
        WeightClassReport {
            class: class.to_string(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            constant,
            cube: cube.record(grid),
            kind,
            attaining: cube,
        }
    }
}

/// Supremum of `functional` over the family, with the first attaining cube.
pub(crate) fn sup_over(family: &CubeFamily, mut functional: impl FnMut(&Cube) -> f64) -> Option<(f64, Cube)> {
    let mut best: Option<(f64, Cube)> = None;
    for q in family.iter() {
        let v = functional(q);
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, *q));
        }
    }
    best
}

fn realize_factor(w: &Weight, t: f64, grid: &Grid, class: &WeightClass, what: &str) -> Result<WeightField> {
    w.powf(t).on_grid(grid).map_err(|e| match e {
        Error::NotIntegrable(_) => Error::NotInClass { class: class.label(), detail: what.to_string() },
        other => other,
    })
}

/// `A_p` constant: `sup_Q ⟨w⟩_Q ⟨w^{−1/(p−1)}⟩_Q^{p−1}`, or `sup_Q ⟨w⟩_Q / min_{cell⊂Q} ⟨w⟩_cell` for `p = 1`.
pub fn ap_constant(w: &Weight, p: f64, family: &CubeFamily) -> Result<WeightClassReport> {
    let class = WeightClass::Ap { p };
    class.validate()?;
    let grid = family.grid();
    let wf = w.on_grid(grid)?;
    let best = if p == 1.0 {
        let dens = wf.densities();
        sup_over(family, |q| {
            let avg = wf.cube_measure(q) / q.volume(grid);
            let min = q.cells(grid).map(|i| dens[i]).fold(f64::INFINITY, f64::min);
            avg / min
        })
    } else {
        let sigma = realize_factor(w, -1.0 / (p - 1.0), grid, &class, "dual factor diverges")?;
        sup_over(family, |q| {
            let vol = q.volume(grid);
            (wf.cube_measure(q) / vol) * (sigma.cube_measure(q) / vol).powf(p - 1.0)
        })
    };
    let best = best.ok_or_else(|| Error::FamilyExhausted("empty cube family".into()))?;
    Ok(WeightClassReport::new(class, grid, best))
}

/// `A_{p,q}` constant: `sup_Q ⟨w^q⟩_Q^{1/q} ⟨w^{−p′}⟩_Q^{1/p′}`.
pub fn apq_constant(w: &Weight, p: f64, q: f64, family: &CubeFamily) -> Result<WeightClassReport> {
    let class = WeightClass::Apq { p, q };
    class.validate()?;
    let grid = family.grid();
    let p_dual = p / (p - 1.0);
    let upper = realize_factor(w, q, grid, &class, "w^q not integrable")?;
    let lower = realize_factor(w, -p_dual, grid, &class, "w^-p' not integrable")?;
    let best = sup_over(family, |c| {
        let vol = c.volume(grid);
        (upper.cube_measure(c) / vol).powf(1.0 / q) * (lower.cube_measure(c) / vol).powf(1.0 / p_dual)
    })
    .ok_or_else(|| Error::FamilyExhausted("empty cube family".into()))?;
    Ok(WeightClassReport::new(class, grid, best))
}

/// `RH_r` constant: `sup_Q ⟨w^r⟩_Q^{1/r} / ⟨w⟩_Q`.
pub fn rh_constant(w: &Weight, r: f64, family: &CubeFamily) -> Result<WeightClassReport> {
    let class = WeightClass::Rh { r };
    class.validate()?;
    let grid = family.grid();
    let wf = w.on_grid(grid)?;
    let wr = realize_factor(w, r, grid, &class, "w^r not integrable")?;
    let best = sup_over(family, |c| {
        let vol = c.volume(grid);
        (wr.cube_measure(c) / vol).powf(1.0 / r) / (wf.cube_measure(c) / vol)
    })
    .ok_or_else(|| Error::FamilyExhausted("empty cube family".into()))?;
    Ok(WeightClassReport::new(class, grid, best))
}

/// Constant of any class over `family`.
pub fn class_constant(w: &Weight, class: WeightClass, family: &CubeFamily) -> Result<WeightClassReport> {
    match class {
        WeightClass::Ap { p } => ap_constant(w, p, family),
        WeightClass::Apq { p, q } => apq_constant(w, p, q, family),
        WeightClass::Rh { r } => rh_constant(w, r, family),
    }
}

/// Relative growth per refinement above which a constant is read as divergent.
pub const DIVERGENCE_GROWTH: f64 = 0.01;

/// Whether a class constant behaves as finite on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericVerdict {
    pub constant: Option<f64>,
    /// Constant one level coarser (power weights only).
    pub coarse: Option<f64>,
    pub growth: Option<f64>,
    pub finite: bool,
    pub detail: String,
}

/// Finite when every factor is integrable and, for power weights, the constant grows by at
/// most [`DIVERGENCE_GROWTH`] from level `J−1` to `J`.
pub fn numeric_finiteness(w: &Weight, class: WeightClass, grid: &Grid, shifts: usize) -> Result<NumericVerdict> {
    let at = |g: Grid| -> Result<Option<f64>> {
        match class_constant(w, class, &CubeFamily::new(g, shifts)?) {
            Ok(r) => Ok(Some(r.constant)),
            Err(Error::NotInClass { .. } | Error::NotIntegrable(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let Some(fine) = at(*grid)? else {
        return Ok(NumericVerdict { constant: None, coarse: None, growth: None, finite: false, detail: "a factor is not integrable".into() });
    };
    if w.as_power().is_none() || grid.level() <= 3 {
        return Ok(NumericVerdict { constant: Some(fine), coarse: None, growth: None, finite: true, detail: "integrable".into() });
    }
    let coarse = at(Grid::new(*grid.domain(), grid.level() - 1)?)?;
    let growth = coarse.map(|c| fine / c - 1.0);
    let finite = growth.is_some_and(|g| g <= DIVERGENCE_GROWTH);
    let detail = match growth {
        Some(g) => format!("growth {g:.3e} per level"),
        None => "coarse level diverged".into(),
    };
    Ok(NumericVerdict { constant: Some(fine), coarse, growth, finite, detail })
}

/// Outcome of the doubling check `w(λQ) ≤ C λ^{np} w(Q)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoublingReport {
    pub lambda: f64,
    pub sup_ratio: f64,
    /// `sup_ratio / λ^{np}`.
    pub normalized: f64,
    pub eligible: usize,
    pub cube: CubeRecord,
}

/// Sup of `w(λQ)/w(Q)` over family cubes whose dilate stays in the box.
pub fn doubling_check(w: &Weight, lambda: f64, p: f64, family: &CubeFamily) -> Result<DoublingReport> {
    if !(lambda >= 1.0) {
        return Err(Error::param(format!("lambda must be >= 1, got {lambda}")));
    }
    let grid = family.grid();
    let dim = grid.dim();
    let l = grid.half_width();
    let slack = 1e-12 * l;
    let mut best: Option<(f64, Cube)> = None;
    let mut eligible = 0;
    for q in family.iter() {
        let c = q.center(grid);
        let half = 0.5 * lambda * q.side(grid);
        if (0..dim).any(|a| c[a] - half < -l - slack || c[a] + half > l + slack) {
            continue;
        }
        eligible += 1;
        let (lo, hi) = q.bounds(grid);
        let base = w.integrate_box(grid, lo, hi)?;
        let big = w.integrate_box(grid, [c[0] - half, c[1] - half], [c[0] + half, c[1] + half])?;
        let ratio = if lambda == 1.0 { 1.0 } else { big / base };
        if best.is_none_or(|(b, _)| ratio > b) {
            best = Some((ratio, *q));
        }
    }
    let (sup_ratio, cube) = best.ok_or_else(|| Error::FamilyExhausted(format!("no cube admits a {lambda}-dilate")))?;
    Ok(DoublingReport {
        lambda,
        sup_ratio,
        normalized: sup_ratio / lambda.powf(dim as f64 * p),
        eligible,
        cube: cube.record(grid),
    })
}

/// Two-sided power comparison of `w(E)/w(Q)` against `|E|/|Q|` over dyadic sub-cubes `E ⊆ Q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetReport {
    pub pairs: usize,
    /// Least-squares constants of `log(w(E)/w(Q)) − e·log(|E|/|Q|)` for `e = p` and `e = (r−1)/r`.
    pub fitted_lower: f64,
    pub fitted_upper: f64,
    /// Tightest constants for which both bounds hold on every pair.
    pub envelope_lower: f64,
    pub envelope_upper: f64,
    /// Worst violations of the fitted constants, as factors `≥ 1`.
    pub lower_margin: f64,
    pub upper_margin: f64,
    /// Least-squares slope of `log(w(E)/w(Q))` against `log(|E|/|Q|)`.
    pub slope: f64,
}

/// Fit and check `C₁(|E|/|Q|)^p ≤ w(E)/w(Q) ≤ C₂(|E|/|Q|)^{(r−1)/r}`.
pub fn subset_comparison_check(w: &Weight, p: f64, r: f64, family: &CubeFamily) -> Result<SubsetReport> {
    let grid = family.grid();
    if let Some(pw) = w.as_power() {
        let in_ap = power_membership(grid.dim(), pw, WeightClass::Ap { p })?;
        let in_rh = power_membership(grid.dim(), pw, WeightClass::Rh { r })?;
        if !(in_ap && in_rh) {
            return Err(Error::Hypotheses(format!("|x|^{} is not in A_{p} ∩ RH_{r}", pw.gamma)));
        }
    } else {
        WeightClass::Ap { p }.validate()?;
        WeightClass::Rh { r }.validate()?;
    }
    let wf = w.on_grid(grid)?;
    let upper_exp = (r - 1.0) / r;
    let mut samples = Vec::new();
    for q in family.iter() {
        let wq = wf.cube_measure(q);
        let vq = q.volume(grid);
        let mut stack = vec![*q];
        while let Some(e) = stack.pop() {
            let rho = e.volume(grid) / vq;
            samples.push((rho.ln(), (wf.cube_measure(&e) / wq).ln()));
            stack.extend(e.children());
        }
    }
    if samples.is_empty() {
        return Err(Error::FamilyExhausted("no sub-cube pairs".into()));
    }
    let k = samples.len() as f64;
    let fit = |e: f64| samples.iter().map(|(lr, lw)| lw - e * lr).sum::<f64>() / k;
    let (log_c1, log_c2) = (fit(p), fit(upper_exp));
    let env_lower = samples.iter().map(|(lr, lw)| lw - p * lr).fold(f64::INFINITY, f64::min);
    let env_upper = samples.iter().map(|(lr, lw)| lw - upper_exp * lr).fold(f64::NEG_INFINITY, f64::max);
    let mx = samples.iter().map(|s| s.0).sum::<f64>() / k;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / k;
    let sxx: f64 = samples.iter().map(|s| (s.0 - mx).powi(2)).sum();
    let sxy: f64 = samples.iter().map(|s| (s.0 - mx) * (s.1 - my)).sum();
    Ok(SubsetReport {
        pairs: samples.len(),
        fitted_lower: log_c1.exp(),
        fitted_upper: log_c2.exp(),
        envelope_lower: env_lower.exp(),
        envelope_upper: env_upper.exp(),
        lower_margin: (log_c1 - env_lower).max(0.0).exp(),
        upper_margin: (env_upper - log_c2).max(0.0).exp(),
        slope: if sxx > 0.0 { sxy / sxx } else { 1.0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridFunction;

    fn family(j: u32, s: usize) -> CubeFamily {
        CubeFamily::new(Grid::with(1, 1.0, 0.25, j).unwrap(), s).unwrap()
    }

    #[test]
    fn unit_weight_constants_are_one() {
        let f = family(6, 3);
        for p in [1.0, 1.5, 2.0, 4.0] {
            assert!((ap_constant(&Weight::unit(), p, &f).unwrap().constant - 1.0).abs() < 1e-12);
        }
        assert!((apq_constant(&Weight::unit(), 2.0, 4.0, &f).unwrap().constant - 1.0).abs() < 1e-12);
        assert!((rh_constant(&Weight::unit(), 3.0, &f).unwrap().constant - 1.0).abs() < 1e-12);
    }

    #[test]
    fn centered_cube_value() {
        // a one-cube family [−1, 1]: ⟨|x|^{-1/2}⟩⟨|x|^{1/2}⟩ = 4/3
        let g = Grid::with(1, 1.0, 0.25, 8).unwrap();
        let fam = CubeFamily::from_cubes(g, vec![g.full_cube()]);
        let c = ap_constant(&Weight::power(-0.5), 2.0, &fam).unwrap().constant;
        assert!((c - 4.0 / 3.0).abs() < 1e-12, "{c}");
    }

    #[test]
    fn divergent_factors() {
        let f = family(6, 1);
        let e = rh_constant(&Weight::power(-0.5), 3.0, &f).unwrap_err();
        assert!(e.to_string().contains("not in RH_3"), "{e}");
        let e = apq_constant(&Weight::power(-0.3), 2.0, 4.0, &f).unwrap_err();
        assert!(e.to_string().contains("not in A_{2,4}"), "{e}");
        let e = ap_constant(&Weight::power(1.0), 2.0, &f).unwrap_err();
        assert!(e.to_string().contains("dual factor diverges"), "{e}");
    }

    #[test]
    fn a1_constant_grows_outside_a1() {
        let w = Weight::power(0.4);
        let c6 = ap_constant(&w, 1.0, &family(6, 1)).unwrap().constant;
        let c9 = ap_constant(&w, 1.0, &family(9, 1)).unwrap().constant;
        let c12 = ap_constant(&w, 1.0, &family(12, 1)).unwrap().constant;
        assert!(c6 < c9 && c9 < c12, "{c6} {c9} {c12}");
        let inside = Weight::power(-0.4);
        let d9 = ap_constant(&inside, 1.0, &family(9, 1)).unwrap().constant;
        let d12 = ap_constant(&inside, 1.0, &family(12, 1)).unwrap().constant;
        assert!((d12 - d9).abs() / d9 < 1e-2, "{d9} {d12}");
    }

    #[test]
    fn finiteness_tracks_membership() {
        let grid = Grid::with(1, 1.0, 0.25, 10).unwrap();
        for (g, class) in [
            (-0.4, WeightClass::a1()),
            (0.1, WeightClass::a1()),
            (0.3, WeightClass::a1()),
            (-0.5, WeightClass::Rh { r: 3.0 }),
            (-0.5, WeightClass::Rh { r: 1.5 }),
            (1.2, WeightClass::Ap { p: 2.0 }),
            (-0.3, WeightClass::Apq { p: 2.0, q: 4.0 }),
            (-0.1, WeightClass::Apq { p: 2.0, q: 4.0 }),
        ] {
            let w = Weight::power(g);
            let v = numeric_finiteness(&w, class, &grid, 3).unwrap();
            let oracle = power_membership(1, w.as_power().unwrap(), class).unwrap();
            assert_eq!(v.finite, oracle, "gamma {g}, {}: {}", class.label(), v.detail);
        }
    }

    #[test]
    fn scale_invariance() {
        let f = family(7, 3);
        let w = Weight::power(-0.3);
        let a = ap_constant(&w, 2.0, &f).unwrap().constant;
        let b = ap_constant(&w.scaled(17.0), 2.0, &f).unwrap().constant;
        assert!((a - b).abs() <= 1e-13 * a);
    }

    #[test]
    fn doubling() {
        let f = family(6, 1);
        let r = doubling_check(&Weight::unit(), 2.0, 1.5, &f).unwrap();
        assert!((r.sup_ratio - 2.0).abs() < 1e-12);
        assert!((r.normalized - 2.0 / 2f64.powf(1.5)).abs() < 1e-12);
        assert_eq!(doubling_check(&Weight::power(-0.5), 1.0, 2.0, &f).unwrap().sup_ratio, 1.0);
        // closed-form oracle: sup over t of w([t−1/2, t+3/2]) / w([t, t+1]) for |x|^{-1/2}
        let w_int = |a: f64, b: f64| {
            let anti = |x: f64| 2.0 * x.signum() * x.abs().sqrt();
            anti(b) - anti(a)
        };
        let oracle = (0..=40_000)
            .map(|k| -3.0 + k as f64 * 1e-4)
            .map(|t| w_int(t - 0.5, t + 1.5) / w_int(t, t + 1.0))
            .fold(0.0, f64::max);
        let r = doubling_check(&Weight::power(-0.5), 2.0, 2.0, &f).unwrap();
        assert!(r.sup_ratio > 2.0 && r.sup_ratio <= oracle + 1e-9, "{} vs {oracle}", r.sup_ratio);
        assert!(r.normalized < 1.0);
        let tiny = CubeFamily::from_cubes(*f.grid(), vec![f.grid().full_cube()]);
        assert!(matches!(doubling_check(&Weight::unit(), 2.0, 1.0, &tiny), Err(Error::FamilyExhausted(_))));
    }

    #[test]
    fn subset_comparison() {
        let f = family(6, 1);
        let r = subset_comparison_check(&Weight::unit(), 2.0, 1.5, &f).unwrap();
        assert!((r.envelope_upper - 1.0).abs() < 1e-12);
        assert!(r.envelope_lower >= 1.0 - 1e-12);
        assert!((r.slope - 1.0).abs() < 1e-12);
        let r = subset_comparison_check(&Weight::power(-0.5), 2.0, 1.5, &family(10, 1)).unwrap();
        assert!(r.envelope_lower > 0.0 && r.envelope_upper.is_finite());
        assert!(r.lower_margin >= 1.0 && r.upper_margin >= 1.0);
        assert!(matches!(
            subset_comparison_check(&Weight::power(-0.5), 2.0, 3.0, &f),
            Err(Error::Hypotheses(_))
        ));
    }

    #[test]
    fn sampled_weight_matches_power_weight_roughly() {
        let f = family(10, 1);
        let g = *f.grid();
        let sampled = Weight::sampled(GridFunction::new(g, Weight::power(0.3).on_grid(&g).unwrap().densities()).unwrap()).unwrap();
        let a = ap_constant(&sampled, 2.0, &f).unwrap().constant;
        let b = ap_constant(&Weight::power(0.3), 2.0, &f).unwrap().constant;
        assert!((a - b).abs() / b < 5e-2, "{a} {b}");
    }
}

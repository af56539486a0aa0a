use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::MaximalVariant;
use crate::spaces::SpaceSpec;
use crate::weights::{power_membership, PowerWeight, WeightClass};

use super::params::ParamSet;

/// Identifier of a boundedness statement under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BoundId {
    #[serde(rename = "THM1")]
    Thm1,
    #[serde(rename = "THM2")]
    Thm2,
    #[serde(rename = "THM3")]
    Thm3,
    #[serde(rename = "THME")]
    ThmE,
    #[serde(rename = "L3.2")]
    L32,
    #[serde(rename = "L3.3")]
    L33,
    #[serde(rename = "L3.4")]
    L34,
    #[serde(rename = "L3.5")]
    L35,
    #[serde(rename = "L3.6")]
    L36,
    #[serde(rename = "L4.1")]
    L41,
    #[serde(rename = "L4.2")]
    L42,
    #[serde(rename = "L4.3")]
    L43,
    #[serde(rename = "L5.1")]
    L51,
    #[serde(rename = "P3.1")]
    P31,
}

impl BoundId {
    pub const ALL: [BoundId; 14] = [
        BoundId::Thm1,
        BoundId::Thm2,
        BoundId::Thm3,
        BoundId::ThmE,
        BoundId::L32,
        BoundId::L33,
        BoundId::L34,
        BoundId::L35,
        BoundId::L36,
        BoundId::L41,
        BoundId::L42,
        BoundId::L43,
        BoundId::L51,
        BoundId::P31,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BoundId::Thm1 => "THM1",
            BoundId::Thm2 => "THM2",
            BoundId::Thm3 => "THM3",
            BoundId::ThmE => "THME",
            BoundId::L32 => "L3.2",
            BoundId::L33 => "L3.3",
            BoundId::L34 => "L3.4",
            BoundId::L35 => "L3.5",
            BoundId::L36 => "L3.6",
            BoundId::L41 => "L4.1",
            BoundId::L42 => "L4.2",
            BoundId::L43 => "L4.3",
            BoundId::L51 => "L5.1",
            BoundId::P31 => "P3.1",
        }
    }

    pub fn is_commutator(&self) -> bool {
        matches!(self, BoundId::Thm1 | BoundId::Thm2 | BoundId::Thm3)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        BoundId::ALL
            .into_iter()
            .find(|b| b.name() == t)
            .ok_or_else(|| Error::parse(format!("unknown bound id '{s}'")))
    }
}

/// Pointwise sharp-maximal estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PropId {
    #[serde(rename = "P3.7")]
    P37,
    #[serde(rename = "P4.4")]
    P44,
    #[serde(rename = "P5.2")]
    P52,
}

impl PropId {
    pub const ALL: [PropId; 3] = [PropId::P37, PropId::P44, PropId::P52];

    pub fn name(&self) -> &'static str {
        match self {
            PropId::P37 => "P3.7",
            PropId::P44 => "P4.4",
            PropId::P52 => "P5.2",
        }
    }

    /// The theorem whose symbol class the proposition uses.
    pub fn theorem(&self) -> BoundId {
        match self {
            PropId::P37 => BoundId::Thm1,
            PropId::P44 => BoundId::Thm2,
            PropId::P52 => BoundId::Thm3,
        }
    }
}

impl fmt::Display for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        PropId::ALL
            .into_iter()
            .find(|b| b.name() == t)
            .ok_or_else(|| Error::parse(format!("unknown proposition id '{s}'")))
    }
}

/// A named side condition and its verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn h(name: &str, pass: bool, detail: String) -> Hypothesis {
    Hypothesis { name: name.to_string(), pass, detail }
}

fn member(ps: &ParamSet, t: f64, class: WeightClass) -> (bool, String) {
    let g = ps.gamma * t;
    match power_membership(ps.n, &PowerWeight::new([0.0, 0.0], g), class) {
        Ok(v) => (v, format!("|x|^{g} in {}: {v}", class.label())),
        Err(e) => (false, e.to_string()),
    }
}

fn a1(ps: &ParamSet, t: f64, name: &str) -> Hypothesis {
    let (pass, detail) = member(ps, t, WeightClass::a1());
    h(name, pass, detail)
}

fn alpha_range(ps: &ParamSet, out: &mut Vec<Hypothesis>) {
    let n = ps.n as f64;
    out.push(h("0<α<n", ps.alpha > 0.0 && ps.alpha < n, format!("α={}, n={}", ps.alpha, ps.n)));
    out.push(h("1<p<n/α", ps.p > 1.0 && ps.p * ps.alpha < n, format!("p={}, n/α={}", ps.p, n / ps.alpha)));
}

fn alpha_beta_range(ps: &ParamSet, out: &mut Vec<Hypothesis>) {
    let n = ps.n as f64;
    let ab = ps.alpha + ps.beta;
    out.push(h("0<β<1", ps.beta > 0.0 && ps.beta < 1.0, format!("β={}", ps.beta)));
    out.push(h("0<α", ps.alpha > 0.0, format!("α={}", ps.alpha)));
    out.push(h("0<α+β<n", ab > 0.0 && ab < n, format!("α+β={ab}")));
    out.push(h("1<p<n/(α+β)", ps.p > 1.0 && ps.p * ab < n, format!("p={}, n/(α+β)={}", ps.p, n / ab)));
}

fn kappa_below(name: &str, kappa: f64, bound: Option<f64>) -> Hypothesis {
    match bound {
        Some(b) => h(name, kappa > 0.0 && kappa < b, format!("κ={kappa}, bound={b}")),
        None => h(name, false, format!("κ={kappa}, bound undefined")),
    }
}

fn r_w_above(ps: &ParamSet, name: &str, threshold: Option<f64>) -> Hypothesis {
    match (ps.r_w(), threshold) {
        (Ok(rw), Some(t)) if t > 0.0 => h(name, rw > t, format!("r_w={rw}, threshold={t}")),
        (Ok(rw), _) => h(name, false, format!("r_w={rw}, threshold undefined")),
        (Err(e), _) => h(name, false, e.to_string()),
    }
}

fn r_between(ps: &ParamSet) -> Hypothesis {
    let r = ps.r_inner();
    h("1<r<p", r > 1.0 && r < ps.p, format!("r={r}, p={}", ps.p))
}

fn ratio(a: f64, b: Option<f64>) -> Option<f64> {
    b.map(|b| a / b)
}

/// Every side condition of `id` at `ps`, evaluated by exponent arithmetic and exact membership.
pub fn check_hypotheses(ps: &ParamSet, id: BoundId) -> Vec<Hypothesis> {
    let mut out = Vec::new();
    let (p, k) = (ps.p, ps.kappa);
    let p_over_q = ratio(p, ps.q());
    let p_over_s = ratio(p, ps.s());
    let q_over_p = ps.q().map(|q| q / p);
    let s_over_p = ps.s().map(|s| s / p);
    // threshold (1−κ)/(p/q−κ) shared by Theorem 1 and its lemmas
    let thm1_thresh = p_over_q.filter(|pq| *pq > k).map(|pq| (1.0 - k) / (pq - k));
    match id {
        BoundId::Thm1 | BoundId::L34 | BoundId::L35 | BoundId::L36 => {
            alpha_range(ps, &mut out);
            out.push(kappa_below("0<κ<p/q", k, p_over_q));
            out.push(a1(ps, q_over_p.unwrap_or(f64::NAN), "w^{q/p} ∈ A_1"));
            out.push(r_w_above(ps, "r_w > (1−κ)/(p/q−κ)", thm1_thresh));
            if id == BoundId::L36 {
                out.push(r_between(ps));
            }
        }
        BoundId::Thm2 => {
            alpha_beta_range(ps, &mut out);
            let n = ps.n as f64;
            let bound = p_over_s.map(|ps_| ps_.min(p * ps.beta / n));
            out.push(kappa_below("0<κ<min{p/s, pβ/n}", k, bound));
            out.push(a1(ps, ps.s().unwrap_or(f64::NAN), "w^s ∈ A_1"));
        }
        BoundId::Thm3 => {
            alpha_beta_range(ps, &mut out);
            out.push(kappa_below("0<κ<p/s", k, p_over_s));
            out.push(a1(ps, s_over_p.unwrap_or(f64::NAN), "w^{s/p} ∈ A_1"));
            let t = p_over_s.filter(|v| *v > k).map(|v| 1.0 / (v - k));
            out.push(r_w_above(ps, "r_w > 1/(p/s−κ)", t));
            out.push(chain(ps));
        }
        BoundId::ThmE => {
            alpha_range(ps, &mut out);
            out.push(kappa_below("0<κ<p/q", k, p_over_q));
            let (pass, detail) = match ps.q() {
                Some(q) if q > p => member(ps, 1.0, WeightClass::Apq { p, q }),
                _ => (false, "q undefined".to_string()),
            };
            out.push(h("w ∈ A_{p,q}", pass, detail));
        }
        BoundId::L32 | BoundId::L33 => {
            alpha_range(ps, &mut out);
            out.push(kappa_below("0<κ<p/q", k, p_over_q));
            let (pass, detail) = member(ps, 1.0, WeightClass::Ap { p });
            out.push(h("w ∈ A_p", pass, detail));
            if id == BoundId::L33 {
                out.push(r_between(ps));
            }
        }
        BoundId::L41 | BoundId::L42 => {
            alpha_beta_range(ps, &mut out);
            out.push(kappa_below("0<κ<p/s", k, p_over_s));
            out.push(a1(ps, ps.s().unwrap_or(f64::NAN), "w^s ∈ A_1"));
            if id == BoundId::L41 {
                out.push(r_between(ps));
            }
        }
        BoundId::L43 => {
            alpha_beta_range(ps, &mut out);
            let n = ps.n as f64;
            out.push(kappa_below("0<κ<pβ/n", k, Some(p * ps.beta / n)));
            out.push(a1(ps, ps.s().unwrap_or(f64::NAN), "w^s ∈ A_1"));
        }
        BoundId::L51 => {
            alpha_beta_range(ps, &mut out);
            out.push(kappa_below("0<κ<p/s", k, p_over_s));
            out.push(a1(ps, s_over_p.unwrap_or(f64::NAN), "w^{s/p} ∈ A_1"));
            let t = p_over_s.filter(|v| *v > k).map(|v| 1.0 / (v - k));
            out.push(r_w_above(ps, "r_w > 1/(p/s−κ)", t));
        }
        BoundId::P31 => {
            out.push(h("0<δ<1", ps.delta > 0.0 && ps.delta < 1.0, format!("δ={}", ps.delta)));
            out.push(h("1<p", p > 1.0, format!("p={p}")));
            out.push(h("0<κ<1", k > 0.0 && k < 1.0, format!("κ={k}")));
            let (pass, detail) = member(ps, 1.0, WeightClass::Ap { p });
            out.push(h("u,v ∈ A_p", pass, detail));
        }
    }
    out
}

/// `1/(p/s−κ) > (1−κ)/(p/s−κ) > (1−κ)/(p/q−κ)`, the step from the Theorem 3 hypothesis to the Lemma 3.4 one.
fn chain(ps: &ParamSet) -> Hypothesis {
    match (ps.q(), ps.s()) {
        (Some(q), Some(s)) => {
            let (a, b) = (ps.p / s - ps.kappa, ps.p / q - ps.kappa);
            let pass = a > 0.0 && b > 0.0 && 1.0 / a > (1.0 - ps.kappa) / a && (1.0 - ps.kappa) / a > (1.0 - ps.kappa) / b;
            let detail = format!("{} > {} > {}", 1.0 / a, (1.0 - ps.kappa) / a, (1.0 - ps.kappa) / b);
            h("r_w threshold chain", pass, detail)
        }
        _ => h("r_w threshold chain", false, "q or s undefined".to_string()),
    }
}

/// Hypotheses of a pointwise proposition.
pub fn check_prop_hypotheses(ps: &ParamSet, id: PropId) -> Vec<Hypothesis> {
    let n = ps.n as f64;
    let mut out = vec![
        h("0<δ<1", ps.delta > 0.0 && ps.delta < 1.0, format!("δ={}", ps.delta)),
        h("0<α<n", ps.alpha > 0.0 && ps.alpha < n, format!("α={}", ps.alpha)),
        a1(ps, 1.0, "w ∈ A_1"),
        h("r>1", ps.r_inner() > 1.0, format!("r={}", ps.r_inner())),
    ];
    if id != PropId::P37 {
        out.push(h("0<β<1", ps.beta > 0.0 && ps.beta < 1.0, format!("β={}", ps.beta)));
        let ab = ps.alpha + ps.beta;
        out.push(h("(α+β)r<n", ab * ps.r_inner() < n, format!("(α+β)r={}", ab * ps.r_inner())));
    } else {
        out.push(h("αr<n", ps.alpha * ps.r_inner() < n, format!("αr={}", ps.alpha * ps.r_inner())));
    }
    out
}

pub fn all_pass(hs: &[Hypothesis]) -> bool {
    hs.iter().all(|h| h.pass)
}

/// `Error::Hypotheses` listing the failed conditions, if any.
pub fn require(hs: &[Hypothesis]) -> Result<()> {
    let failed: Vec<String> = hs.iter().filter(|h| !h.pass).map(|h| format!("{} failed ({})", h.name, h.detail)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Hypotheses(failed.join("; ")))
    }
}

/// The operator of a bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundOperator {
    /// `[b, I_α]`
    Commutator { alpha: f64 },
    /// `I_α`
    FracInt { alpha: f64 },
    /// A maximal operator; weighted variants use `w`.
    Maximal { variant: MaximalVariant, beta: f64, r: f64 },
    /// `M_δ` against `M^#_δ` in the same norm.
    SharpRatio { delta: f64 },
}

impl fmt::Display for BoundOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BoundOperator::Commutator { alpha } => write!(f, "[b,I_{alpha}]"),
            BoundOperator::FracInt { alpha } => write!(f, "I_{alpha}"),
            BoundOperator::Maximal { variant, beta, r } => match variant {
                MaximalVariant::Weighted => write!(f, "M_w"),
                MaximalVariant::FractionalWeighted if beta == 0.0 => write!(f, "M_{{{r},w}}"),
                MaximalVariant::FractionalWeighted => write!(f, "M_{{{beta},{r},w}}"),
                MaximalVariant::Fractional => write!(f, "M_{{{beta},{r}}}"),
                other => write!(f, "{other}"),
            },
            BoundOperator::SharpRatio { delta } => write!(f, "M_{delta} / M#_{delta}"),
        }
    }
}

/// Source space, target space, operator, and symbol space of one bound at one `ParamSet`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSpec {
    pub id: BoundId,
    pub operator: BoundOperator,
    pub source: SpaceSpec,
    pub target: SpaceSpec,
    pub symbol: Option<SpaceSpec>,
}

impl BoundSpec {
    pub fn new(id: BoundId, ps: &ParamSet) -> Result<Self> {
        let (p, k, n) = (ps.p, ps.kappa, ps.n as f64);
        let need = |v: Option<f64>, what: &str| v.ok_or_else(|| Error::Hypotheses(format!("{what} undefined for {id}")));
        let w = |t: f64| ps.weight_spec(t);
        let morrey = |p: f64, kappa: f64, u, v| SpaceSpec::Morrey { p, kappa, u, v };
        let one = |p: f64, kappa: f64| morrey(p, kappa, w(1.0), w(1.0));
        let maximal = |variant, beta, r| BoundOperator::Maximal { variant, beta, r };
        let r = ps.r_inner();
        let spec = |operator, source, target, symbol| BoundSpec { id, operator, source, target, symbol };
        Ok(match id {
            BoundId::Thm1 => {
                let q = need(ps.q(), "q")?;
                spec(
                    BoundOperator::Commutator { alpha: ps.alpha },
                    one(p, k),
                    morrey(q, k * q / p, w(1.0 - (1.0 - ps.alpha / n) * q), w(1.0)),
                    Some(SpaceSpec::Osc { beta: 0.0, p: 1.0, w: w(1.0) }),
                )
            }
            BoundId::Thm2 => {
                let s = need(ps.s(), "s")?;
                spec(
                    BoundOperator::Commutator { alpha: ps.alpha },
                    morrey(p, k, w(p), w(s)),
                    morrey(s, k * s / p, w(s), w(s)),
                    Some(SpaceSpec::Osc { beta: ps.beta, p: 1.0, w: w(0.0) }),
                )
            }
            BoundId::Thm3 => {
                let s = need(ps.s(), "s")?;
                spec(
                    BoundOperator::Commutator { alpha: ps.alpha },
                    one(p, k),
                    morrey(s, k * s / p, w(1.0 - (1.0 - ps.alpha / n) * s), w(1.0)),
                    Some(SpaceSpec::Osc { beta: ps.beta, p: 1.0, w: w(1.0) }),
                )
            }
            BoundId::ThmE => {
                let q = need(ps.q(), "q")?;
                spec(maximal(MaximalVariant::Fractional, ps.alpha, 1.0), morrey(p, k, w(p), w(q)), morrey(q, k * q / p, w(q), w(q)), None)
            }
            BoundId::L32 | BoundId::L33 => {
                let q = need(ps.q(), "q")?;
                let rr = if id == BoundId::L32 { 1.0 } else { r };
                spec(maximal(MaximalVariant::FractionalWeighted, ps.alpha, rr), one(p, k), one(q, k * q / p), None)
            }
            BoundId::L34 => {
                let q = need(ps.q(), "q")?;
                spec(maximal(MaximalVariant::Fractional, ps.alpha, 1.0), one(p, k), morrey(q, k * q / p, w(q / p), w(1.0)), None)
            }
            BoundId::L35 | BoundId::L36 => {
                let q = need(ps.q(), "q")?;
                let space = morrey(q, k * q / p, w(q / p), w(1.0));
                let op = if id == BoundId::L35 {
                    maximal(MaximalVariant::Weighted, 0.0, 1.0)
                } else {
                    maximal(MaximalVariant::FractionalWeighted, 0.0, r)
                };
                spec(op, space.clone(), space, None)
            }
            BoundId::L41 => {
                let s = need(ps.s(), "s")?;
                spec(maximal(MaximalVariant::Fractional, ps.alpha + ps.beta, r), morrey(p, k, w(p), w(s)), morrey(s, k * s / p, w(s), w(s)), None)
            }
            BoundId::L42 => {
                let (q, s) = (need(ps.q(), "q")?, need(ps.s(), "s")?);
                spec(maximal(MaximalVariant::Fractional, ps.beta, 1.0), morrey(q, k * q / p, w(q), w(s)), morrey(s, k * s / p, w(s), w(s)), None)
            }
            BoundId::L43 => {
                let (q, s) = (need(ps.q(), "q")?, need(ps.s(), "s")?);
                spec(BoundOperator::FracInt { alpha: ps.alpha }, morrey(p, k, w(p), w(s)), morrey(q, k * q / p, w(q), w(s)), None)
            }
            BoundId::L51 => {
                let (q, s) = (need(ps.q(), "q")?, need(ps.s(), "s")?);
                spec(
                    maximal(MaximalVariant::Fractional, ps.beta, 1.0),
                    morrey(q, k * q / p, w(q / p), w(1.0)),
                    morrey(s, k * s / p, w(s / p), w(1.0)),
                    None,
                )
            }
            BoundId::P31 => spec(BoundOperator::SharpRatio { delta: ps.delta }, one(p, k), one(p, k), None),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thm1() -> ParamSet {
        ParamSet::new(1, 0.25, 0.0, 2.0, 0.25, -0.2).unwrap()
    }

    fn thm2() -> ParamSet {
        ParamSet::new(1, 0.2, 0.3, 1.5, 0.2, -0.1).unwrap()
    }

    #[test]
    fn theorem_one_verdicts() {
        let hs = check_hypotheses(&thm1(), BoundId::Thm1);
        assert!(all_pass(&hs), "{hs:#?}");
        let rw = hs.iter().find(|h| h.name.starts_with("r_w")).unwrap();
        assert!(rw.detail.contains("threshold=3"), "{}", rw.detail);
        let bad = check_hypotheses(&thm1().with_kappa(0.6), BoundId::Thm1);
        let failed: Vec<&str> = bad.iter().filter(|h| !h.pass).map(|h| h.name.as_str()).collect();
        assert!(failed.contains(&"0<κ<p/q"));
        let msg = require(&bad).unwrap_err().to_string();
        assert!(msg.contains("0<κ<p/q failed"), "{msg}");
    }

    #[test]
    fn theorem_two_and_three() {
        let hs = check_hypotheses(&thm2(), BoundId::Thm2);
        assert!(all_pass(&hs), "{hs:#?}");
        let k = hs.iter().find(|h| h.name.starts_with("0<κ<min")).unwrap();
        let bound: f64 = k.detail.rsplit('=').next().unwrap().parse().unwrap();
        assert!((bound - 0.25).abs() < 1e-12, "{}", k.detail);
        assert!(!all_pass(&check_hypotheses(&thm2().with_kappa(0.3), BoundId::Thm2)));
        // THM2 kappa fails the r_w threshold of Theorem 3, a smaller kappa passes it
        assert!(!all_pass(&check_hypotheses(&thm2(), BoundId::Thm3)));
        let t3 = check_hypotheses(&thm2().with_kappa(0.1), BoundId::Thm3);
        assert!(all_pass(&t3), "{t3:#?}");
    }

    #[test]
    fn lemma_suite_admissible() {
        for id in [BoundId::ThmE, BoundId::L32, BoundId::L33, BoundId::L34, BoundId::L35, BoundId::L36, BoundId::P31] {
            assert!(all_pass(&check_hypotheses(&thm1(), id)), "{id}");
        }
        for id in [BoundId::L41, BoundId::L42, BoundId::L43] {
            assert!(all_pass(&check_hypotheses(&thm2(), id)), "{id}");
        }
        assert!(all_pass(&check_hypotheses(&thm2().with_kappa(0.1), BoundId::L51)));
        for prop in PropId::ALL {
            let ps = if prop == PropId::P37 { thm1() } else { thm2() };
            assert!(all_pass(&check_prop_hypotheses(&ps, prop)), "{prop}");
        }
    }

    #[test]
    fn pure_and_parseable() {
        assert_eq!(check_hypotheses(&thm1(), BoundId::Thm1), check_hypotheses(&thm1(), BoundId::Thm1));
        for id in BoundId::ALL {
            assert_eq!(id.name().parse::<BoundId>().unwrap(), id);
        }
        assert_eq!("p3.7".parse::<PropId>().unwrap(), PropId::P37);
        assert!("L9.9".parse::<BoundId>().is_err());
    }

    #[test]
    fn target_weights_are_wired() {
        let b = BoundSpec::new(BoundId::Thm1, &thm1()).unwrap();
        // 1 − (1 − α/n) q = −2, so the integrand weight is |x|^{0.4}
        match &b.target {
            SpaceSpec::Morrey { p, kappa, u, v } => {
                assert_eq!((*p, *kappa), (4.0, 0.5));
                assert_eq!(u.to_string(), "power:x0=0,gamma=0.4");
                assert_eq!(v.to_string(), "power:x0=0,gamma=-0.2");
            }
            _ => panic!(),
        }
        let b3 = BoundSpec::new(BoundId::Thm3, &thm2().with_kappa(0.1)).unwrap();
        assert!(b3.target.to_string().contains("gamma=0.38"), "{}", b3.target);
    }
}

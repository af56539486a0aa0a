use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::{critical_index, PowerWeight, Weight, WeightSpec};

/// The exponent bundle of a verification run. Derived exponents are methods, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSet {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub kappa: f64,
    /// Exponent of the power weight `w = |x|^γ`.
    pub gamma: f64,
    pub delta: f64,
    /// Auxiliary `r` of the `M_{·,r}` majorants; `None` means `(1 + p)/2`.
    pub r: Option<f64>,
}

impl ParamSet {
    pub fn new(n: usize, alpha: f64, beta: f64, p: f64, kappa: f64, gamma: f64) -> Result<Self> {
        if n != 1 && n != 2 {
            return Err(Error::param(format!("dimension must be 1 or 2, got {n}")));
        }
        for (name, v) in [("alpha", alpha), ("beta", beta), ("p", p), ("kappa", kappa), ("gamma", gamma)] {
            if !v.is_finite() {
                return Err(Error::param(format!("{name} must be finite")));
            }
        }
        Ok(ParamSet { n, alpha, beta, p, kappa, gamma, delta: 0.5, r: None })
    }

    pub fn with_delta(self, delta: f64) -> Self {
        ParamSet { delta, ..self }
    }

    pub fn with_r(self, r: f64) -> Self {
        ParamSet { r: Some(r), ..self }
    }

    pub fn with_kappa(self, kappa: f64) -> Self {
        ParamSet { kappa, ..self }
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }

    pub fn p_dual(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    /// `1/q = 1/p − α/n`, when positive.
    pub fn q(&self) -> Option<f64> {
        let inv = 1.0 / self.p - self.alpha / self.nf();
        (inv > 0.0).then(|| 1.0 / inv)
    }

    /// `1/s = 1/p − (α+β)/n`, when positive.
    pub fn s(&self) -> Option<f64> {
        let inv = 1.0 / self.p - (self.alpha + self.beta) / self.nf();
        (inv > 0.0).then(|| 1.0 / inv)
    }

    pub fn r_inner(&self) -> f64 {
        self.r.unwrap_or((1.0 + self.p) / 2.0)
    }

    pub fn power_weight(&self) -> PowerWeight {
        PowerWeight::new([0.0, 0.0], self.gamma)
    }

    pub fn weight(&self) -> Weight {
        Weight::power(self.gamma)
    }

    /// Spec of `w^t`.
    pub fn weight_spec(&self, t: f64) -> WeightSpec {
        WeightSpec::Power { center: [0.0, 0.0], gamma: self.gamma * t }
    }

    /// Critical reverse Hölder index of `w`.
    pub fn r_w(&self) -> Result<f64> {
        critical_index(self.n, &self.power_weight())
    }

    pub fn resolved(&self) -> ResolvedParams {
        ResolvedParams {
            n: self.n,
            alpha: self.alpha,
            beta: self.beta,
            p: self.p,
            kappa: self.kappa,
            gamma: self.gamma,
            delta: self.delta,
            r: self.r_inner(),
            p_dual: self.p_dual(),
            q: self.q(),
            s: self.s(),
            r_w: self.r_w().ok().filter(|v| v.is_finite()),
        }
    }
}

/// A `ParamSet` with every derived exponent spelled out; `r_w: None` means `∞`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolvedParams {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub delta: f64,
    pub r: f64,
    pub p_dual: f64,
    pub q: Option<f64>,
    pub s: Option<f64>,
    pub r_w: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_exponents() {
        let t1 = ParamSet::new(1, 0.25, 0.0, 2.0, 0.25, -0.2).unwrap();
        assert!((t1.q().unwrap() - 4.0).abs() < 1e-12);
        assert!((t1.r_w().unwrap() - 5.0).abs() < 1e-12);
        assert_eq!(t1.p_dual(), 2.0);
        assert_eq!(t1.r_inner(), 1.5);
        let t2 = ParamSet::new(1, 0.2, 0.3, 1.5, 0.2, -0.1).unwrap();
        assert!((t2.s().unwrap() - 6.0).abs() < 1e-12);
        let bad = ParamSet::new(1, 0.6, 0.0, 2.0, 0.2, 0.0).unwrap();
        assert!(bad.q().is_none());
        assert!(t1.resolved().r_w.is_some());
        assert!(ParamSet::new(3, 0.2, 0.0, 2.0, 0.2, 0.0).is_err());
    }
}

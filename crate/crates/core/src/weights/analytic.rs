//! Exact class membership of power weights `|x|^γ`, in rational arithmetic.
//!
//! Exponents are converted from `f64` to their exact binary rational value, so
//! range endpoints are decided without rounding on either side of an
//! equivalence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::PowerWeight;

/// A weight class with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum WeightClass {
    /// `A_p`, `p ≥ 1`.
    Ap { p: f64 },
    /// `A_{p,q}`, `1 < p < q < ∞`.
    Apq { p: f64, q: f64 },
    /// `RH_r`, `r > 1`.
    Rh { r: f64 },
}

impl WeightClass {
    pub fn a1() -> Self {
        WeightClass::Ap { p: 1.0 }
    }

    pub fn label(&self) -> String {
        match *self {
            WeightClass::Ap { p } => format!("A_{p}"),
            WeightClass::Apq { p, q } => format!("A_{{{p},{q}}}"),
            WeightClass::Rh { r } => format!("RH_{r}"),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match *self {
            WeightClass::Ap { p } if !(p >= 1.0 && p.is_finite()) => Err(Error::param(format!("A_p needs p >= 1, got {p}"))),
            WeightClass::Apq { p, q } if !(1.0 < p && p < q && q.is_finite()) => {
                Err(Error::param(format!("A_(p,q) needs 1 < p < q < inf, got ({p}, {q})")))
            }
            WeightClass::Rh { r } if !(r > 1.0 && r.is_finite()) => Err(Error::param(format!("RH_r needs r > 1, got {r}"))),
            _ => Ok(()),
        }
    }
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite exponent")
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Membership of `|x|^γ` in `class`, decided exactly.
fn member_exact(dim: usize, gamma: &BigRational, class: &ExactClass) -> bool {
    let n = int(dim);
    let neg_n = -n.clone();
    match class {
        ExactClass::Ap(p) => {
            if p.is_one() {
                gamma > &neg_n && gamma <= &BigRational::zero()
            } else {
                gamma > &neg_n && gamma < &(n * (p - BigRational::one()))
            }
        }
        // both factors of the defining product must be integrable at the origin:
        // qγ > −n and −p′γ > −n
        ExactClass::Apq(p, q) => {
            let p_dual = p / (p - BigRational::one());
            (q * gamma) > neg_n && (-(p_dual * gamma)) > neg_n
        }
        ExactClass::Rh(r) => (r * gamma) > neg_n,
    }
}

enum ExactClass {
    Ap(BigRational),
    Apq(BigRational, BigRational),
    Rh(BigRational),
}

impl From<&WeightClass> for ExactClass {
    fn from(c: &WeightClass) -> Self {
        match *c {
            WeightClass::Ap { p } => ExactClass::Ap(exact(p)),
            WeightClass::Apq { p, q } => ExactClass::Apq(exact(p), exact(q)),
            WeightClass::Rh { r } => ExactClass::Rh(exact(r)),
        }
    }
}

/// Whether `|x − x₀|^γ` belongs to `class` in dimension `dim`:
/// `A_p ⟺ −n < γ < n(p−1)` (`A₁`: `−n < γ ≤ 0`), `RH_r ⟺ γr > −n`,
/// `A_{p,q} ⟺ −n/q < γ < n/p′`.
pub fn power_membership(dim: usize, w: &PowerWeight, class: WeightClass) -> Result<bool> {
    class.validate()?;
    Ok(member_exact(dim, &exact(w.gamma), &ExactClass::from(&class)))
}

/// The reverse Hölder critical index `r_w = sup{r > 1 : w ∈ RH_r}` of a power weight.
pub fn critical_index(dim: usize, w: &PowerWeight) -> Result<f64> {
    let n = dim as f64;
    if w.gamma <= -n {
        return Err(Error::NotIntegrable(format!("|x|^{} in dimension {dim}", w.gamma)));
    }
    if w.gamma >= 0.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(-n / w.gamma)
    }
}

/// One row of an equivalence table: the two independently computed verdicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceRow {
    pub gamma: f64,
    pub lhs: bool,
    pub rhs: bool,
}

impl EquivalenceRow {
    pub fn agree(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `w^s ∈ A_p` versus `w ∈ A_{1+(p−1)/s} ∩ RH_s`, for each `γ`.
pub fn lemma_c_check(dim: usize, gammas: &[f64], s: f64, p: f64) -> Result<Vec<EquivalenceRow>> {
    if !(s > 1.0) || !(p >= 1.0) {
        return Err(Error::param(format!("need s > 1 and p >= 1, got s={s}, p={p}")));
    }
    let (s_x, p_x) = (exact(s), exact(p));
    let one = BigRational::one();
    let p_inner = &one + (&p_x - &one) / &s_x;
    Ok(gammas
        .iter()
        .map(|&g| {
            let g_x = exact(g);
            let lhs = member_exact(dim, &(&s_x * &g_x), &ExactClass::Ap(p_x.clone()));
            let rhs = member_exact(dim, &g_x, &ExactClass::Ap(p_inner.clone()))
                && member_exact(dim, &g_x, &ExactClass::Rh(s_x.clone()));
            EquivalenceRow { gamma: g, lhs, rhs }
        })
        .collect())
}

/// `w ∈ A_{p,q}` versus `w^q ∈ A_{1+q/p′}`, for each `γ`.
pub fn eq4_check(dim: usize, gammas: &[f64], p: f64, q: f64) -> Result<Vec<EquivalenceRow>> {
    WeightClass::Apq { p, q }.validate()?;
    let (p_x, q_x) = (exact(p), exact(q));
    let one = BigRational::one();
    let p_dual = &p_x / (&p_x - &one);
    let target = &one + &q_x / p_dual;
    Ok(gammas
        .iter()
        .map(|&g| {
            let g_x = exact(g);
            let lhs = member_exact(dim, &g_x, &ExactClass::Apq(p_x.clone(), q_x.clone()));
            let rhs = member_exact(dim, &(&q_x * &g_x), &ExactClass::Ap(target.clone()));
            EquivalenceRow { gamma: g, lhs, rhs }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pw(g: f64) -> PowerWeight {
        PowerWeight::new([0.0, 0.0], g)
    }

    #[test]
    fn critical_indices() {
        assert_eq!(critical_index(1, &pw(-0.5)).unwrap(), 2.0);
        assert_eq!(critical_index(1, &pw(0.0)).unwrap(), f64::INFINITY);
        assert_eq!(critical_index(2, &pw(-1.0)).unwrap(), 2.0);
        assert_eq!(critical_index(1, &pw(0.7)).unwrap(), f64::INFINITY);
        assert!(critical_index(1, &pw(-1.0)).is_err());
    }

    #[test]
    fn membership_ranges() {
        assert!(power_membership(1, &pw(-0.5), WeightClass::Ap { p: 2.0 }).unwrap());
        assert!(power_membership(1, &pw(-0.5), WeightClass::a1()).unwrap());
        assert!(!power_membership(1, &pw(0.2), WeightClass::a1()).unwrap());
        // w^{q/p} with q/p = 2
        assert!(power_membership(1, &pw(-0.2 * 2.0), WeightClass::a1()).unwrap());
        assert!(!power_membership(1, &pw(1.0), WeightClass::Ap { p: 2.0 }).unwrap());
        assert!(power_membership(1, &pw(-0.5), WeightClass::Rh { r: 1.5 }).unwrap());
        assert!(!power_membership(1, &pw(-0.5), WeightClass::Rh { r: 2.0 }).unwrap());
        assert!(!power_membership(1, &pw(-0.3), WeightClass::Apq { p: 2.0, q: 4.0 }).unwrap());
        assert!(power_membership(1, &pw(-0.1), WeightClass::Apq { p: 2.0, q: 4.0 }).unwrap());
        assert!(power_membership(1, &pw(0.5), WeightClass::Ap { p: 0.5 }).is_err());
    }

    #[test]
    fn lemma_c_examples() {
        let rows = lemma_c_check(1, &[0.0, -0.75, -0.25, -0.5, 0.1], 2.0, 1.0).unwrap();
        assert!(rows.iter().all(EquivalenceRow::agree));
        assert!(rows[0].lhs && rows[0].rhs);
        assert!(!rows[1].lhs && !rows[1].rhs);
        assert!(rows[2].lhs);
        assert!(!rows[3].lhs, "gamma = -1/2 sits on the RH_2 endpoint");
        assert!(!rows[4].lhs);
    }

    #[test]
    fn eq4_endpoints_flip_together() {
        // p = 2, q = 4: range (−1/4, 1/2)
        let rows = eq4_check(1, &[-0.25, -0.25 + 1e-12, 0.5 - 1e-12, 0.5, 0.0], 2.0, 4.0).unwrap();
        assert!(rows.iter().all(EquivalenceRow::agree));
        let verdicts: Vec<bool> = rows.iter().map(|r| r.lhs).collect();
        assert_eq!(verdicts, vec![false, true, true, false, true]);
    }
}

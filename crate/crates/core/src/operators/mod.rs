//! The fractional integral `I_α`, its commutator `[b, I_α]`, and the maximal operators.

mod fractional;
mod maximal;

pub use fractional::{commutator, fractional_integral, fractional_integral_at, FracIntConfig};
pub use maximal::{
    maximal, pointwise_domination_check, DominationReport, MaximalConfig, MaximalVariant,
};

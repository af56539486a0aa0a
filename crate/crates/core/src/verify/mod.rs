//! Bounded-ratio verification of the boundedness statements: hypotheses, corpora,
//! norm sweeps, pointwise sharp-maximal checks and refinement drift.

mod bounds;
mod corpus;
mod params;
mod pointwise;
mod sweep;

pub use bounds::{all_pass, check_hypotheses, check_prop_hypotheses, require, BoundId, BoundOperator, BoundSpec, Hypothesis, PropId};
pub use corpus::{generate_corpus, Corpus, Entry, Profile, SymbolClass, SymbolProfile};
pub use params::{ParamSet, ResolvedParams};
pub use pointwise::{pointwise_sharp_check, pointwise_sweep, prop31_check, verify_prop, PointwiseReport};
pub use sweep::{
    ratio_sweep, refinement_drift, relative_drift, sup_of, verify_bound, GridInfo, LevelSummary, RatioEntry,
    VerificationReport, NORM_DRIFT, POINTWISE_DRIFT,
};

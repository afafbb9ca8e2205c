//! Symmetric rank covariances.
//!
//! A symmetric rank covariance is a dependence measure of the form
//! `c E[(Σ_σ sign(σ) I_X(X^σ)) (Σ_σ sign(σ) I_Y(Y^σ))]`, where `I_X`, `I_Y`
//! are 0/1 functions of the joint ranks of `m` sample points and `σ` runs
//! over a subgroup of `S_m` with as many odd as even elements. Kendall's τ,
//! τ², the Bergsma–Dassios τ*, Hoeffding's D and R and the multivariate
//! extensions τ*_P and τ*_J are all of this form.
//!
//! The crate provides
//!
//! * exact reference evaluation of kernels, U-statistics and finite
//!   population values ([`u_stat_naive`], [`population_src`]);
//! * orthogonal range counting backends ([`PrefixTensor`], [`RangeTree`]);
//! * fast exact estimators for D, R, τ*_P and τ*_J with a dispatcher
//!   ([`estimate`]);
//! * permutation and reference-distribution tests, the asymptotic null law
//!   and a power-simulation harness ([`inference`]).

pub mod data;
pub mod error;
pub mod exact;
pub mod fast;
pub mod indicator;
pub mod inference;
pub mod perm;
pub mod range;
pub mod ranks;
pub mod src_engine;

pub use data::{Dataset, RankPoints};
pub use error::{Error, Result};
pub use exact::{to_f64, Exact};
pub use fast::{
    estimate, u_d_fast, u_r_fast, u_taustar_j_fast, u_taustar_p_fast, Estimate, EstimateOptions, Statistic,
};
pub use indicator::{builtin_indicator, IndicatorKind, RankIndicator};
pub use perm::{apply_perm, make_group, Permutation, SignedGroup};
pub use range::{Backend, PrefixTensor, RangeBox, RangeCounter, RangeTree};
pub use ranks::{joint_ranks, RankMatrix};
pub use src_engine::*;

/// Library version recorded in every emitted artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

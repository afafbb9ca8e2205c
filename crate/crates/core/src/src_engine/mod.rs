//! Generic evaluation of symmetric rank covariances.
//!
//! Everything here works by explicit enumeration and exact rational
//! arithmetic. It is slow but serves as the reference the fast estimators
//! are checked against.

mod binarize;
mod dist;
mod ism;
mod kernel;
mod population;
mod spearman;
mod spec;
mod ustat;

pub use binarize::{binarization_minors, Binarization};
pub use dist::{DiscreteDist, PointMass};
pub use ism::{ism_to_src, ssrc_partition, IsmMeasure, IsmSpec};
pub use kernel::{signed_indicator_sum, sym_kernel, unsym_kernel, SymRoute, SYM_KERNEL_MAX_ORDER};
pub use population::{
    a_expectation, a_expectation_uniform, kernel_projection, population_src, population_src_form,
    PopulationForm,
};
pub use spearman::spearman_ssrc;
pub use spec::{Measure, SrcSpec, SsrcSpec};
pub use ustat::{u_stat_naive, u_stat_naive_with_budget, DEFAULT_BUDGET};

//! Fast exact estimators and the estimator dispatcher.
//!
//! Every fast path returns the same exact rational as
//! [`u_stat_naive`](crate::u_stat_naive) on the corresponding
//! [`SrcSpec`].

mod hoeffding;
mod pairs;
mod taustar;

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use serde::Serialize;

use crate::data::{Dataset, RankPoints};
use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::range::{resolve_backend, AnyCounter, Backend, RangeCounter, RangeTreeOptions};
use crate::src_engine::{spearman_ssrc, u_stat_naive_with_budget, SrcSpec, DEFAULT_BUDGET};

pub use hoeffding::{u_d_counts, u_r_counts, OrthantCounts};
pub use pairs::{PairFilter, PairSet};
pub use taustar::{u_taustar_definition, u_taustar_j_counts, u_taustar_p_counts, Variant};

/// Default memory budget for index structures (256 MiB).
pub const DEFAULT_MEMORY_BUDGET: usize = 256 << 20;

/// Below this `n` the τ*_P and τ*_J estimators are computed by definition.
pub const DEFAULT_CROSSOVER: usize = 512;

/// A named statistic.
#[derive(Debug, Clone)]
pub enum Statistic {
    Tau,
    Tau2,
    TauStar,
    Spearman,
    D,
    R,
    TauP,
    TauJ,
    Custom(Box<SrcSpec>),
}

impl Statistic {
    /// Parses `tau`, `tau2`, `taustar`, `spearman`, `D`, `R`, `tauP`, `tauJ`.
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "tau" => Statistic::Tau,
            "tau2" => Statistic::Tau2,
            "taustar" => Statistic::TauStar,
            "spearman" => Statistic::Spearman,
            "D" | "d" => Statistic::D,
            "R" | "r" => Statistic::R,
            "tauP" | "taup" => Statistic::TauP,
            "tauJ" | "tauj" => Statistic::TauJ,
            _ => {
                return Err(Error::input(format!(
                    "unknown statistic '{name}' (tau, tau2, taustar, spearman, D, R, tauP, tauJ)"
                )))
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Statistic::Tau => "tau".into(),
            Statistic::Tau2 => "tau2".into(),
            Statistic::TauStar => "taustar".into(),
            Statistic::Spearman => "spearman".into(),
            Statistic::D => "D".into(),
            Statistic::R => "R".into(),
            Statistic::TauP => "tauP".into(),
            Statistic::TauJ => "tauJ".into(),
            Statistic::Custom(s) => s.name().to_string(),
        }
    }

    /// The reference specification for data with `r` X- and `s` Y-columns.
    pub fn spec(&self, r: usize, s: usize) -> Result<SrcSpec> {
        let univariate = |spec: SrcSpec| {
            if r == 1 && s == 1 {
                Ok(spec)
            } else {
                Err(Error::input(format!("{} needs r = s = 1, got r = {r}, s = {s}", self.name())))
            }
        };
        match self {
            Statistic::Tau => univariate(SrcSpec::tau()),
            Statistic::Tau2 => univariate(SrcSpec::tau2()),
            Statistic::TauStar => univariate(SrcSpec::taustar()),
            Statistic::Spearman => Err(Error::input("spearman is a sum of covariances, not a single one")),
            Statistic::D => SrcSpec::hoeffding_d(r, s),
            Statistic::R => SrcSpec::hoeffding_r(r, s),
            Statistic::TauP => SrcSpec::partial_taustar(r, s),
            Statistic::TauJ => SrcSpec::joint_taustar(r, s),
            Statistic::Custom(spec) => Ok((**spec).clone()),
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Statistic::from_name(s)
    }
}

/// How τ*_P, τ*_J (and τ*) are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairAlgorithm {
    /// Definition below the crossover, pair range trees above it when they
    /// fit the memory budget.
    Auto,
    /// Bit-parallel sum over quadruples.
    Definition,
    /// Range trees over points and filtered pairs.
    Tree,
}

impl std::str::FromStr for PairAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(PairAlgorithm::Auto),
            "definition" => Ok(PairAlgorithm::Definition),
            "tree" => Ok(PairAlgorithm::Tree),
            _ => Err(Error::input(format!("unknown algorithm '{s}' (auto, definition, tree)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EstimateOptions {
    /// Counting backend for D and R.
    pub backend: Backend,
    pub pair_algorithm: PairAlgorithm,
    pub crossover: usize,
    /// Bytes allowed for tensors and trees.
    pub memory_budget: usize,
    /// Maximum number of ordered tuples the naive path may enumerate.
    pub enumeration_budget: u64,
    pub tree: RangeTreeOptions,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions {
            backend: Backend::Auto,
            pair_algorithm: PairAlgorithm::Auto,
            crossover: DEFAULT_CROSSOVER,
            memory_budget: DEFAULT_MEMORY_BUDGET,
            enumeration_budget: DEFAULT_BUDGET,
            tree: RangeTreeOptions::default(),
        }
    }
}

/// What the dispatcher did.
#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    pub statistic: String,
    /// `naive`, `orthant`, `definition` or `pair-tree`.
    pub algorithm: String,
    /// Counting backend when one was built.
    pub backend: Option<Backend>,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub build_seconds: f64,
    pub total_seconds: f64,
    pub queries: u64,
    pub index_bytes: usize,
}

#[derive(Debug, Clone)]
pub struct Estimate {
    pub value: Exact,
    pub diagnostics: Diagnostics,
}

impl Estimate {
    pub fn value_f64(&self) -> f64 {
        crate::exact::to_f64(&self.value)
    }
}

/// Builds the counter for D or R, honouring the budget.
fn point_counter(rp: &RankPoints, backend: Backend, opts: &EstimateOptions) -> Result<AnyCounter> {
    let d = rp.d();
    let b = resolve_backend(backend, rp.n, d, opts.memory_budget);
    if b == Backend::Tree {
        let need = crate::range::RangeTree::estimate_bytes(rp.n, d, rp.n as u32, opts.tree);
        if need > opts.memory_budget as u128 {
            return Err(Error::capacity(format!(
                "range tree needs about {need} bytes, budget is {}",
                opts.memory_budget
            )));
        }
        return Ok(AnyCounter::Tree(crate::range::build_range_tree(&rp.coords, d, opts.tree)));
    }
    AnyCounter::build(&rp.coords, d, b, opts.memory_budget)
}

/// Exact `U_D` with the given backend and the default budget.
pub fn u_d_fast(data: &Dataset, backend: Backend) -> Result<Exact> {
    let opts = EstimateOptions { backend, ..Default::default() };
    let rp = data.rank_points();
    if rp.n < 5 {
        return Err(Error::input(format!("U_D needs n >= 5, got n = {}", rp.n)));
    }
    let c = point_counter(&rp, backend, &opts)?;
    u_d_counts(&rp, &c, &AtomicU64::new(0))
}

/// Exact `U_R` with the given backend and the default budget.
pub fn u_r_fast(data: &Dataset, backend: Backend) -> Result<Exact> {
    let opts = EstimateOptions { backend, ..Default::default() };
    let rp = data.rank_points();
    if rp.n < 4 + rp.d() {
        return Err(Error::input(format!("U_R needs n >= {}, got n = {}", 4 + rp.d(), rp.n)));
    }
    let c = point_counter(&rp, backend, &opts)?;
    u_r_counts(&rp, &c, &AtomicU64::new(0))
}

fn pair_tree_estimate(rp: &RankPoints, variant: Variant, opts: &EstimateOptions) -> Result<(Exact, usize, u64, f64)> {
    let t0 = Instant::now();
    let filter = match variant {
        Variant::Partial => PairFilter::WeakY,
        Variant::Joint => PairFilter::StrictY,
    };
    let point_budget = opts.memory_budget;
    let points = crate::range::build_range_tree(&rp.coords, rp.d(), opts.tree);
    let remaining = point_budget.saturating_sub(points.memory_bytes());
    let pairs = PairSet::build_tree(rp, filter, opts.tree, remaining)?;
    let build = t0.elapsed().as_secs_f64();
    let q = AtomicU64::new(0);
    let v = match variant {
        Variant::Partial => u_taustar_p_counts(rp, &points, &pairs, &q)?,
        Variant::Joint => u_taustar_j_counts(rp, &points, &pairs, &q)?,
    };
    Ok((v, points.memory_bytes() + pairs.memory_bytes(), q.load(Ordering::Relaxed), build))
}

/// Exact `U_{τ*_P}` by the pair-tree algorithm (or by definition when the
/// trees do not fit the default budget).
pub fn u_taustar_p_fast(data: &Dataset) -> Result<Exact> {
    pair_fast(data, Variant::Partial)
}

/// Exact `U_{τ*_J}`, as [`u_taustar_p_fast`].
pub fn u_taustar_j_fast(data: &Dataset) -> Result<Exact> {
    pair_fast(data, Variant::Joint)
}

fn pair_fast(data: &Dataset, variant: Variant) -> Result<Exact> {
    let rp = data.rank_points();
    if rp.n < 4 {
        return Err(Error::input(format!("needs n >= 4, got n = {}", rp.n)));
    }
    let opts = EstimateOptions { pair_algorithm: PairAlgorithm::Tree, ..Default::default() };
    match pair_tree_estimate(&rp, variant, &opts) {
        Ok((v, ..)) => Ok(v),
        Err(Error::Capacity(_)) => u_taustar_definition(&rp, variant),
        Err(e) => Err(e),
    }
}

/// Computes a statistic, choosing the algorithm and counting backend.
///
/// D and R use orthant counts over a tensor or range tree. τ*, τ*_P and
/// τ*_J are summed by definition below `options.crossover` and with pair
/// range trees above it if they fit the memory budget. Everything else
/// enumerates tuples, subject to `options.enumeration_budget`.
pub fn estimate(statistic: &Statistic, data: &Dataset, options: &EstimateOptions) -> Result<Estimate> {
    let start = Instant::now();
    let (n, r, s) = (data.n(), data.r(), data.s());
    let mut diag = Diagnostics {
        statistic: statistic.name(),
        algorithm: String::new(),
        backend: None,
        n,
        r,
        s,
        build_seconds: 0.0,
        total_seconds: 0.0,
        queries: 0,
        index_bytes: 0,
    };
    let naive = |diag: &mut Diagnostics, spec: &dyn crate::src_engine::Measure| {
        diag.algorithm = "naive".into();
        u_stat_naive_with_budget(spec, data, options.enumeration_budget)
    };
    let value = match statistic {
        Statistic::D | Statistic::R => {
            let rp = data.rank_points();
            let is_d = matches!(statistic, Statistic::D);
            let need = if is_d { 5 } else { 4 + rp.d() };
            if n < need {
                return Err(Error::input(format!("{} needs n >= {need}, got n = {n}", statistic.name())));
            }
            let t0 = Instant::now();
            let counter = point_counter(&rp, options.backend, options)?;
            diag.build_seconds = t0.elapsed().as_secs_f64();
            diag.backend = Some(counter.backend());
            diag.index_bytes = counter.memory_bytes();
            diag.algorithm = "orthant".into();
            let q = AtomicU64::new(0);
            let v = if is_d { u_d_counts(&rp, &counter, &q)? } else { u_r_counts(&rp, &counter, &q)? };
            diag.queries = q.load(Ordering::Relaxed);
            v
        }
        Statistic::TauP | Statistic::TauJ | Statistic::TauStar => {
            if matches!(statistic, Statistic::TauStar) && (r != 1 || s != 1) {
                return Err(Error::input(format!("taustar needs r = s = 1, got r = {r}, s = {s}")));
            }
            if n < 4 {
                return Err(Error::input(format!("needs n >= 4, got n = {n}")));
            }
            let variant = if matches!(statistic, Statistic::TauJ) { Variant::Joint } else { Variant::Partial };
            let rp = data.rank_points();
            let filter = if variant == Variant::Joint { PairFilter::StrictY } else { PairFilter::WeakY };
            let use_tree = match options.pair_algorithm {
                PairAlgorithm::Definition => false,
                PairAlgorithm::Tree => true,
                PairAlgorithm::Auto => {
                    n >= options.crossover
                        && PairSet::tree_bytes(&rp, filter, options.tree)
                            + crate::range::RangeTree::estimate_bytes(n, rp.d(), n as u32, options.tree)
                            <= options.memory_budget as u128
                }
            };
            if use_tree {
                let (v, bytes, q, build) = pair_tree_estimate(&rp, variant, options)?;
                diag.algorithm = "pair-tree".into();
                diag.backend = Some(Backend::Tree);
                diag.index_bytes = bytes;
                diag.queries = q;
                diag.build_seconds = build;
                v
            } else {
                diag.algorithm = "definition".into();
                u_taustar_definition(&rp, variant)?
            }
        }
        Statistic::Spearman => naive(&mut diag, &spearman_ssrc()?)?,
        other => naive(&mut diag, &other.spec(r, s)?)?,
    };
    diag.total_seconds = start.elapsed().as_secs_f64();
    Ok(Estimate { value, diagnostics: diag })
}

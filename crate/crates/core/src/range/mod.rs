//! Orthogonal range counting over integer (rank) coordinates.
//!
//! Two backends answer the same question, "how many points lie in this
//! axis-aligned box": a prefix-count tensor with O(1) queries and
//! `(n+1)^d` memory, and a layered range tree with polylogarithmic queries
//! and near-linear memory. A brute-force scanner serves as a reference.

mod tensor;
mod tree;

use std::ops::Bound;

use crate::error::{Error, Result};

pub use tensor::{build_prefix_tensor, tensor_count, PrefixTensor};
pub use tree::{build_range_tree, tree_count, RangeTree, RangeTreeOptions};

/// Answers closed-box counting queries on integer points.
pub trait RangeCounter: Sync {
    /// Dimension of the indexed points.
    fn dims(&self) -> usize;

    /// Number of indexed points (with multiplicity).
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of points `p` with `lo[j] <= p[j] <= hi[j]` for every `j`.
    fn count_closed(&self, lo: &[u32], hi: &[u32]) -> u64;

    /// Counts points in a [`RangeBox`].
    fn count_box(&self, b: &RangeBox) -> Result<u64> {
        if b.dims() != self.dims() {
            return Err(Error::input(format!(
                "box of dimension {} queried against {}-dimensional points",
                b.dims(),
                self.dims()
            )));
        }
        Ok(match b.to_closed() {
            Some((lo, hi)) => self.count_closed(&lo, &hi),
            None => 0,
        })
    }

    /// Approximate heap usage in bytes.
    fn memory_bytes(&self) -> usize;
}

/// An axis-aligned box with per-side open, closed or unbounded limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeBox {
    lower: Vec<Bound<i64>>,
    upper: Vec<Bound<i64>>,
}

impl RangeBox {
    pub fn new(lower: Vec<Bound<i64>>, upper: Vec<Bound<i64>>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::input("lower and upper bounds differ in dimension"));
        }
        for (l, u) in lower.iter().zip(&upper) {
            let (Some(a), Some(b)) = (finite(l), finite(u)) else { continue };
            if a > b {
                return Err(Error::input(format!("lower bound {a} exceeds upper bound {b}")));
            }
        }
        Ok(RangeBox { lower, upper })
    }

    /// The whole space.
    pub fn all(d: usize) -> Self {
        RangeBox { lower: vec![Bound::Unbounded; d], upper: vec![Bound::Unbounded; d] }
    }

    /// `[lo_1, hi_1] x … x [lo_d, hi_d]`.
    pub fn closed(lo: &[i64], hi: &[i64]) -> Result<Self> {
        RangeBox::new(
            lo.iter().map(|&v| Bound::Included(v)).collect(),
            hi.iter().map(|&v| Bound::Included(v)).collect(),
        )
    }

    /// `(l_1, u_1] x … x (l_d, u_d]`.
    pub fn half_open(l: &[i64], u: &[i64]) -> Result<Self> {
        RangeBox::new(
            l.iter().map(|&v| Bound::Excluded(v)).collect(),
            u.iter().map(|&v| Bound::Included(v)).collect(),
        )
    }

    pub fn dims(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Bound<i64>] {
        &self.lower
    }

    pub fn upper(&self) -> &[Bound<i64>] {
        &self.upper
    }

    /// Equivalent closed integer box, or `None` if it contains no
    /// nonnegative integer point. Open sides shift by one grid step.
    pub fn to_closed(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        let mut lo = Vec::with_capacity(self.dims());
        let mut hi = Vec::with_capacity(self.dims());
        for (l, u) in self.lower.iter().zip(&self.upper) {
            let a = match *l {
                Bound::Included(v) => v,
                Bound::Excluded(v) => v.saturating_add(1),
                Bound::Unbounded => 0,
            }
            .max(0);
            let b = match *u {
                Bound::Included(v) => v,
                Bound::Excluded(v) => v.saturating_sub(1),
                Bound::Unbounded => u32::MAX as i64,
            }
            .min(u32::MAX as i64);
            if a > b {
                return None;
            }
            lo.push(a as u32);
            hi.push(b as u32);
        }
        Some((lo, hi))
    }
}

fn finite(b: &Bound<i64>) -> Option<i64> {
    match *b {
        Bound::Included(v) | Bound::Excluded(v) => Some(v),
        Bound::Unbounded => None,
    }
}

/// Reference counter that scans every point.
#[derive(Debug, Clone)]
pub struct BruteForce {
    d: usize,
    points: Vec<u32>,
}

impl BruteForce {
    /// Indexes row-major points of dimension `d`.
    pub fn new(points: &[u32], d: usize) -> Self {
        assert!(d > 0 && points.len().is_multiple_of(d), "points must be rows of width d");
        BruteForce { d, points: points.to_vec() }
    }
}

impl RangeCounter for BruteForce {
    fn dims(&self) -> usize {
        self.d
    }

    fn len(&self) -> usize {
        self.points.len() / self.d
    }

    fn count_closed(&self, lo: &[u32], hi: &[u32]) -> u64 {
        self.points
            .chunks_exact(self.d)
            .filter(|p| p.iter().enumerate().all(|(j, &v)| lo[j] <= v && v <= hi[j]))
            .count() as u64
    }

    fn memory_bytes(&self) -> usize {
        self.points.len() * 4
    }
}

/// Backend choice for the single-point estimators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Layered range tree.
    Tree,
    /// Prefix-count tensor.
    Tensor,
    /// Linear scans over the data (the counting loop without an index).
    Scan,
    /// Tensor when it fits the memory budget and `d <= 3`, else tree.
    Auto,
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(Backend::Tree),
            "tensor" => Ok(Backend::Tensor),
            "scan" => Ok(Backend::Scan),
            "auto" => Ok(Backend::Auto),
            _ => Err(Error::input(format!("unknown backend '{s}' (tree, tensor, scan, auto)"))),
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Tree => "tree",
            Backend::Tensor => "tensor",
            Backend::Scan => "scan",
            Backend::Auto => "auto",
        })
    }
}

/// A counter chosen at run time.
pub enum AnyCounter {
    Tree(RangeTree),
    Tensor(PrefixTensor),
    Scan(BruteForce),
}

impl AnyCounter {
    /// Builds the requested backend over row-major rank points whose
    /// coordinates lie in `1..=n`.
    pub fn build(points: &[u32], d: usize, backend: Backend, memory_budget: usize) -> Result<Self> {
        let n = points.len() / d;
        Ok(match resolve_backend(backend, n, d, memory_budget) {
            Backend::Tensor => AnyCounter::Tensor(build_prefix_tensor(points, d, memory_budget)?),
            Backend::Scan => AnyCounter::Scan(BruteForce::new(points, d)),
            _ => AnyCounter::Tree(build_range_tree(points, d, RangeTreeOptions::default())),
        })
    }

    pub fn backend(&self) -> Backend {
        match self {
            AnyCounter::Tree(_) => Backend::Tree,
            AnyCounter::Tensor(_) => Backend::Tensor,
            AnyCounter::Scan(_) => Backend::Scan,
        }
    }
}

/// Applies the auto policy: tensor iff `(n+1)^d` counts fit the budget and
/// `d <= 3`.
pub fn resolve_backend(backend: Backend, n: usize, d: usize, memory_budget: usize) -> Backend {
    match backend {
        Backend::Auto => {
            if d <= 3 && PrefixTensor::bytes_needed(n, d).is_some_and(|b| b <= memory_budget) {
                Backend::Tensor
            } else {
                Backend::Tree
            }
        }
        b => b,
    }
}

impl RangeCounter for AnyCounter {
    fn dims(&self) -> usize {
        match self {
            AnyCounter::Tree(t) => t.dims(),
            AnyCounter::Tensor(t) => t.dims(),
            AnyCounter::Scan(t) => t.dims(),
        }
    }

    fn len(&self) -> usize {
        match self {
            AnyCounter::Tree(t) => t.len(),
            AnyCounter::Tensor(t) => t.len(),
            AnyCounter::Scan(t) => t.len(),
        }
    }

    #[inline]
    fn count_closed(&self, lo: &[u32], hi: &[u32]) -> u64 {
        match self {
            AnyCounter::Tree(t) => t.count_closed(lo, hi),
            AnyCounter::Tensor(t) => t.count_closed(lo, hi),
            AnyCounter::Scan(t) => t.count_closed(lo, hi),
        }
    }

    fn memory_bytes(&self) -> usize {
        match self {
            AnyCounter::Tree(t) => t.memory_bytes(),
            AnyCounter::Tensor(t) => t.memory_bytes(),
            AnyCounter::Scan(t) => t.memory_bytes(),
        }
    }
}

//! Points of `R^{2d}` built from ordered pairs of observations.

use crate::data::RankPoints;
use crate::error::{Error, Result};
use crate::range::{build_range_tree, RangeTree, RangeTreeOptions};

/// Which ordered pairs `(i, j)`, `i != j`, are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairFilter {
    /// Every ordered pair.
    All,
    /// Pairs with `y^i ⪯ y^j`.
    WeakY,
    /// Pairs with `y^i ≺ y^j` (strict in every coordinate).
    StrictY,
}

impl PairFilter {
    #[inline]
    fn keep(self, yi: &[u32], yj: &[u32]) -> bool {
        match self {
            PairFilter::All => true,
            PairFilter::WeakY => yi.iter().zip(yj).all(|(a, b)| a <= b),
            PairFilter::StrictY => yi.iter().zip(yj).all(|(a, b)| a < b),
        }
    }
}

/// The points `(z^i, z^j)` for the kept ordered pairs, row-major.
#[derive(Debug, Clone)]
pub struct PairSet {
    dims: usize,
    filter: PairFilter,
    points: Vec<u32>,
}

impl PairSet {
    /// All `n(n-1)` ordered pairs.
    pub fn full(rp: &RankPoints) -> Self {
        Self::filtered(rp, PairFilter::All)
    }

    pub fn filtered(rp: &RankPoints, filter: PairFilter) -> Self {
        let d = rp.d();
        let mut points = Vec::with_capacity(Self::count(rp, filter) * 2 * d);
        for i in 0..rp.n {
            for j in 0..rp.n {
                if i != j && filter.keep(rp.y(i), rp.y(j)) {
                    points.extend_from_slice(rp.point(i));
                    points.extend_from_slice(rp.point(j));
                }
            }
        }
        PairSet { dims: 2 * d, filter, points }
    }

    /// Number of pairs the filter keeps, without materialising them.
    pub fn count(rp: &RankPoints, filter: PairFilter) -> usize {
        let mut c = 0;
        for i in 0..rp.n {
            for j in 0..rp.n {
                if i != j && filter.keep(rp.y(i), rp.y(j)) {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dims.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn filter(&self) -> PairFilter {
        self.filter
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn pair(&self, k: usize) -> &[u32] {
        &self.points[k * self.dims..(k + 1) * self.dims]
    }

    /// Bytes a range tree over the filtered pairs would take, plus the
    /// pair points themselves.
    pub fn tree_bytes(rp: &RankPoints, filter: PairFilter, opts: RangeTreeOptions) -> u128 {
        let n = Self::count(rp, filter);
        let d = 2 * rp.d();
        RangeTree::estimate_bytes(n, d, rp.n as u32, opts) + (n * d * 4) as u128
    }

    /// Builds the range tree, refusing when the estimate exceeds `budget`.
    pub fn build_tree(rp: &RankPoints, filter: PairFilter, opts: RangeTreeOptions, budget: usize) -> Result<RangeTree> {
        let need = Self::tree_bytes(rp, filter, opts);
        if need > budget as u128 {
            return Err(Error::capacity(format!(
                "pair range tree needs about {need} bytes, budget is {budget}"
            )));
        }
        let set = Self::filtered(rp, filter);
        Ok(build_range_tree(&set.points, set.dims, opts))
    }
}

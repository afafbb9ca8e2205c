//! Hoeffding's D and R from orthant counts.
//!
//! For a cut point `c`, every other observation falls into one of four
//! classes according to whether its X part is `⪯ c_X` and whether its Y
//! part is `⪯ c_Y`. Writing `pp, pn, np, nn` for the class sizes, the sum
//! of the unsymmetrised kernel over all ordered choices of the four
//! remaining points is `4 (A + B - 2C)` with
//! `A = pp(pp-1) nn(nn-1)`, `B = pn(pn-1) np(np-1)`, `C = pp pn np nn`.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::data::RankPoints;
use crate::error::{Error, Result};
use crate::exact::{falling, ratio, Exact};
use crate::range::RangeCounter;

/// Orthant class sizes relative to a cut point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OrthantCounts {
    /// X below, Y below.
    pub pp: i64,
    /// X below, Y not below.
    pub pn: i64,
    /// X not below, Y below.
    pub np: i64,
    /// Neither below.
    pub nn: i64,
}

impl OrthantCounts {
    /// `A + B - 2C`.
    #[inline]
    pub fn kernel_sum(&self) -> i128 {
        let (pp, pn, np, nn) = (self.pp as i128, self.pn as i128, self.np as i128, self.nn as i128);
        let a = pp * (pp - 1) * nn * (nn - 1);
        let b = pn * (pn - 1) * np * (np - 1);
        let c = pp * pn * np * nn;
        a + b - 2 * c
    }

    pub fn total(&self) -> i64 {
        self.pp + self.pn + self.np + self.nn
    }
}

/// Counts for the cut point `w` (composite rank vector) over all points,
/// from three lower-orthant queries.
#[inline]
fn orthant_counts<C: RangeCounter>(counter: &C, w: &[u32], r: usize, n: u32, buf: &mut [u32]) -> OrthantCounts {
    let d = w.len();
    let zero = [0u32; 16];
    let lo = &zero[..d];
    let z = counter.count_closed(lo, w) as i64;
    buf[..d].copy_from_slice(w);
    buf[r..d].fill(n);
    let x = counter.count_closed(lo, &buf[..d]) as i64;
    buf[..r].fill(n);
    buf[r..d].copy_from_slice(&w[r..]);
    let y = counter.count_closed(lo, &buf[..d]) as i64;
    OrthantCounts { pp: z, pn: x - z, np: y - z, nn: n as i64 - x - y + z }
}

/// Exact `U_D` over rank points using any range counter.
pub fn u_d_counts<C: RangeCounter>(rp: &RankPoints, counter: &C, queries: &AtomicU64) -> Result<Exact> {
    let n = rp.n;
    if n < 5 {
        return Err(Error::input(format!("U_D needs n >= 5, got n = {n}")));
    }
    if rp.d() > 16 {
        return Err(Error::input("dimension above 16 is not supported"));
    }
    let sum: i128 = (0..n)
        .into_par_iter()
        .map_init(
            || [0u32; 16],
            |buf, k| {
                let mut c = orthant_counts(counter, rp.point(k), rp.r, n as u32, buf);
                c.pp -= 1; // the anchor itself
                c.kernel_sum()
            },
        )
        .sum();
    queries.fetch_add(3 * n as u64, Ordering::Relaxed);
    // Σ k = 4 Σ (A + B - 2C); scale 1/4
    ratio(sum, falling(n, 5)?)
}

/// Exact `U_R` over rank points: the cut point takes coordinate `j` from
/// observation `i_j`, over all ordered tuples of distinct observations.
pub fn u_r_counts<C: RangeCounter>(rp: &RankPoints, counter: &C, queries: &AtomicU64) -> Result<Exact> {
    let n = rp.n;
    let d = rp.d();
    if n < 4 + d {
        return Err(Error::input(format!("U_R needs n >= {}, got n = {n}", 4 + d)));
    }
    if d > 16 {
        return Err(Error::input("dimension above 16 is not supported"));
    }
    let r = rp.r;
    let sum: i128 = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut idx = [0usize; 16];
            let mut w = [0u32; 16];
            let mut buf = [0u32; 16];
            idx[0] = first;
            w[0] = rp.point(first)[0];
            let mut acc = 0i128;
            tuples(rp, 1, &mut idx, &mut w, &mut |idx, w| {
                let mut c = orthant_counts(counter, w, r, n as u32, &mut buf);
                for &p in idx {
                    let pt = rp.point(p);
                    let px = (0..r).all(|j| pt[j] <= w[j]);
                    let py = (r..d).all(|j| pt[j] <= w[j]);
                    match (px, py) {
                        (true, true) => c.pp -= 1,
                        (true, false) => c.pn -= 1,
                        (false, true) => c.np -= 1,
                        (false, false) => c.nn -= 1,
                    }
                }
                acc += c.kernel_sum();
            });
            acc
        })
        .sum();
    queries.fetch_add(3 * falling(n, d)? as u64, Ordering::Relaxed);
    ratio(sum, falling(n, 4 + d)?)
}

fn tuples(
    rp: &RankPoints,
    depth: usize,
    idx: &mut [usize; 16],
    w: &mut [u32; 16],
    f: &mut impl FnMut(&[usize], &[u32]),
) {
    let d = rp.d();
    if depth == d {
        f(&idx[..d], &w[..d]);
        return;
    }
    for i in 0..rp.n {
        if idx[..depth].contains(&i) {
            continue;
        }
        idx[depth] = i;
        w[depth] = rp.point(i)[depth];
        tuples(rp, depth + 1, idx, w, f);
    }
}

//! Multivariate τ* estimators: `U_{τ*_P}` and `U_{τ*_J}`.
//!
//! Both use the identity `Σ a_X a_Y = |H| Σ I_X a_Y` over ordered quadruples,
//! and reduce the inner sums to counts with the first two points fixed.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::data::RankPoints;
use crate::error::{Error, Result};
use crate::exact::{falling, ratio, Exact};
use crate::range::RangeCounter;

const MAXD: usize = 32;

/// One side constraint on a block of coordinates.
#[derive(Clone, Copy)]
struct Cons<'a> {
    start: usize,
    vals: &'a [u32],
    upper: bool,
}

fn up(start: usize, vals: &[u32]) -> Cons<'_> {
    Cons { start, vals, upper: true }
}

fn down(start: usize, vals: &[u32]) -> Cons<'_> {
    Cons { start, vals, upper: false }
}

#[derive(Default)]
struct Scratch {
    boxes: Vec<u32>,
    coef: Vec<i64>,
    order: Vec<usize>,
}

/// Number of points in `[lo, hi]` satisfying none of `cons`, by
/// inclusion–exclusion. Identical boxes are merged before querying.
fn count_none<C: RangeCounter>(
    counter: &C,
    lo: &[u32],
    hi: &[u32],
    cons: &[Cons],
    s: &mut Scratch,
    queries: &mut u64,
) -> i64 {
    let dim = lo.len();
    let w = 2 * dim;
    s.boxes.clear();
    s.coef.clear();
    'mask: for mask in 0u32..1 << cons.len() {
        let at = s.boxes.len();
        s.boxes.extend_from_slice(lo);
        s.boxes.extend_from_slice(hi);
        for (j, c) in cons.iter().enumerate() {
            if mask >> j & 1 == 0 {
                continue;
            }
            for (t, &v) in c.vals.iter().enumerate() {
                let k = c.start + t;
                if c.upper {
                    let h = &mut s.boxes[at + dim + k];
                    *h = (*h).min(v);
                } else {
                    let l = &mut s.boxes[at + k];
                    *l = (*l).max(v);
                }
            }
        }
        for k in 0..dim {
            if s.boxes[at + k] > s.boxes[at + dim + k] {
                s.boxes.truncate(at);
                continue 'mask;
            }
        }
        s.coef.push(if mask.count_ones() % 2 == 0 { 1 } else { -1 });
    }
    let m = s.coef.len();
    s.order.clear();
    s.order.extend(0..m);
    let boxes = &s.boxes;
    s.order.sort_unstable_by(|&a, &b| boxes[a * w..(a + 1) * w].cmp(&boxes[b * w..(b + 1) * w]));
    let mut total = 0i64;
    let mut i = 0;
    while i < m {
        let a = s.order[i];
        let key = &boxes[a * w..(a + 1) * w];
        let mut c = s.coef[a];
        let mut j = i + 1;
        while j < m && &boxes[s.order[j] * w..(s.order[j] + 1) * w] == key {
            c += s.coef[s.order[j]];
            j += 1;
        }
        if c != 0 {
            *queries += 1;
            total += c * counter.count_closed(&key[..dim], &key[dim..]) as i64;
        }
        i = j;
    }
    total
}

fn check_n(rp: &RankPoints) -> Result<()> {
    if rp.n < 4 {
        return Err(Error::input(format!("needs n >= 4, got n = {}", rp.n)));
    }
    if 2 * rp.d() > MAXD {
        return Err(Error::input("dimension above 16 is not supported"));
    }
    Ok(())
}

fn weakly_below(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(u, v)| u <= v)
}

fn strictly_below(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(u, v)| u < v)
}

/// `U_{τ*_P}` from a counter over the points and a counter over the pairs
/// `(z^l, z^k)` with `y^l ⪯ y^k`.
pub fn u_taustar_p_counts<C: RangeCounter, P: RangeCounter>(
    rp: &RankPoints,
    points: &C,
    pairs: &P,
    queries: &AtomicU64,
) -> Result<Exact> {
    check_n(rp)?;
    let (n, r, d) = (rp.n, rp.r, rp.d());
    let top = [n as u32; MAXD];
    let zero = [0u32; MAXD];
    let (lo, hi) = (&zero[..d], &top[..d]);
    let (lo2, hi2) = (&zero[..2 * d], &top[..2 * d]);
    let sum: i128 = (0..n)
        .into_par_iter()
        .map_init(Scratch::default, |s, i1| {
            let mut acc = 0i128;
            let mut q = 0u64;
            let (x1, y1) = (rp.x(i1), rp.y(i1));
            for i2 in (0..n).filter(|&i| i != i1) {
                let (x2, y2) = (rp.x(i2), rp.y(i2));
                let g = count_none(points, lo, hi, &[up(0, x1), up(0, x2), up(r, y1), up(r, y2)], s, &mut q) as i128;
                let h = count_none(points, lo, hi, &[up(0, x1), up(0, x2), down(r, y1), down(r, y2)], s, &mut q) as i128;
                let mut t = g * (g - 1) + h * (h - 1);
                if !weakly_below(y2, y1) {
                    let p = count_none(points, lo, hi, &[up(0, x1), up(0, x2), down(r, y2)], s, &mut q) as i128;
                    let qq = count_none(points, lo, hi, &[up(0, x1), up(0, x2), up(r, y1)], s, &mut q) as i128;
                    let pq = count_none(points, lo, hi, &[up(0, x1), up(0, x2), down(r, y2), up(r, y1)], s, &mut q) as i128;
                    let j = count_none(
                        pairs,
                        lo2,
                        hi2,
                        &[up(0, x1), up(0, x2), up(r, y1), up(d, x1), up(d, x2), down(d + r, y2)],
                        s,
                        &mut q,
                    ) as i128;
                    t -= 2 * (p * qq - pq - j);
                }
                acc += t;
            }
            queries.fetch_add(q, Ordering::Relaxed);
            acc
        })
        .sum();
    ratio(4 * sum, falling(n, 4)?)
}

/// `U_{τ*_J}` from a counter over the points and a counter over the pairs
/// `(z^k, z^l)` with `y^k ≺ y^l`.
pub fn u_taustar_j_counts<C: RangeCounter, P: RangeCounter>(
    rp: &RankPoints,
    points: &C,
    pairs: &P,
    queries: &AtomicU64,
) -> Result<Exact> {
    check_n(rp)?;
    let (n, r, s, d) = (rp.n, rp.r, rp.s, rp.d());
    let nn = n as u32;
    let sum: i128 = (0..n)
        .into_par_iter()
        .map(|i1| {
            let mut acc = 0i128;
            let mut q = 0u64;
            let mut lo = [0u32; MAXD];
            let mut hi = [nn; MAXD];
            let (x1, y1) = (rp.x(i1), rp.y(i1));
            'anchor: for i2 in (0..n).filter(|&i| i != i1) {
                let (x2, y2) = (rp.x(i2), rp.y(i2));
                for j in 0..r {
                    let m = x1[j].max(x2[j]) + 1;
                    if m > nn {
                        continue 'anchor;
                    }
                    lo[j] = m;
                    hi[j] = nn;
                }
                let mut count = |lo: &[u32], hi: &[u32], c: &dyn RangeCounter| -> i128 {
                    if lo.iter().zip(hi).any(|(a, b)| a > b) {
                        return 0;
                    }
                    q += 1;
                    c.count_closed(lo, hi) as i128
                };
                for j in 0..s {
                    lo[r + j] = y1[j].max(y2[j]) + 1;
                    hi[r + j] = nn;
                }
                let g = count(&lo[..d], &hi[..d], points);
                for j in 0..s {
                    lo[r + j] = 0;
                    hi[r + j] = y1[j].min(y2[j]).saturating_sub(1);
                }
                let h = count(&lo[..d], &hi[..d], points);
                let mut t = g * (g - 1) + h * (h - 1);
                if strictly_below(y1, y2) {
                    for j in 0..r {
                        lo[d + j] = lo[j];
                        hi[d + j] = nn;
                    }
                    for j in 0..s {
                        lo[r + j] = 0;
                        hi[r + j] = y2[j] - 1;
                        lo[d + r + j] = y1[j] + 1;
                        hi[d + r + j] = nn;
                    }
                    t -= 2 * count(&lo[..2 * d], &hi[..2 * d], pairs);
                }
                acc += t;
            }
            queries.fetch_add(q, Ordering::Relaxed);
            acc
        })
        .sum();
    ratio(4 * sum, falling(n, 4)?)
}

/// The relation that defines `I_X` for the partial or joint variant:
/// `above(u, v)` holds when `u` may occupy slot 3 or 4 against `v` in
/// slot 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `u ⋠ v`.
    Partial,
    /// `v ≺ u`.
    Joint,
}

impl Variant {
    #[inline]
    fn above(self, u: &[u32], v: &[u32]) -> bool {
        match self {
            Variant::Partial => !weakly_below(u, v),
            Variant::Joint => strictly_below(v, u),
        }
    }
}

struct Bits {
    words: usize,
    data: Vec<u64>,
}

impl Bits {
    fn new(rows: usize, n: usize) -> Self {
        let words = n.div_ceil(64);
        Bits { words, data: vec![0; rows * words] }
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }
}

#[inline]
fn and_count(a: &[u64], b: &[u64], c: &[u64]) -> i64 {
    a.iter().zip(b).zip(c).map(|((x, y), z)| (x & y & z).count_ones() as i64).sum()
}

/// The estimator by definition: a literal sum of `I_X a_Y` over ordered
/// quadruples, with the innermost index handled 64 at a time.
pub fn u_taustar_definition(rp: &RankPoints, variant: Variant) -> Result<Exact> {
    check_n(rp)?;
    let n = rp.n;
    // ax[i]: points u with above(x_u, x_i); ay/by likewise for y and reversed.
    let mut ax = Bits::new(n, n);
    let mut ay = Bits::new(n, n);
    let mut by = Bits::new(n, n);
    for i in 0..n {
        for u in 0..n {
            if u == i {
                continue;
            }
            if variant.above(rp.x(u), rp.x(i)) {
                ax.set(i, u);
            }
            if variant.above(rp.y(u), rp.y(i)) {
                ay.set(i, u);
                by.set(u, i);
            }
        }
    }
    // qy(u, v) = above(y_u, y_v)
    let qy = |u: usize, v: usize| ay.get(v, u);
    let words = ax.words;
    let sum: i128 = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u64; words], vec![0u64; words], vec![0u64; words]),
            |(nx, aa, bb), a| {
                let mut acc = 0i128;
                for b in (0..n).filter(|&b| b != a) {
                    let mut any = false;
                    for k in 0..words {
                        nx[k] = ax.row(a)[k] & ax.row(b)[k];
                        aa[k] = ay.row(a)[k] & ay.row(b)[k];
                        bb[k] = by.row(a)[k] & by.row(b)[k];
                        any |= nx[k] != 0;
                    }
                    if !any {
                        continue;
                    }
                    for (k, &word) in nx.iter().enumerate() {
                        let mut wbits = word;
                        while wbits != 0 {
                            let c = k * 64 + wbits.trailing_zeros() as usize;
                            wbits &= wbits - 1;
                            let mut t = 0i64;
                            let ones = |m: &[u64]| -> i64 {
                                m.iter().zip(nx.iter()).map(|(x, y)| (x & y).count_ones() as i64).sum::<i64>()
                                    - (m[c / 64] >> (c % 64) & 1) as i64
                            };
                            if qy(c, a) && qy(c, b) {
                                t += ones(aa);
                            }
                            if qy(b, c) && qy(a, c) {
                                t += ones(bb);
                            }
                            if qy(c, b) && qy(a, b) {
                                t -= and_count(by.row(c), by.row(a), nx) - (by.get(c, c) && by.get(a, c)) as i64;
                            }
                            if qy(b, a) && qy(b, c) {
                                t -= and_count(ay.row(a), ay.row(c), nx) - (ay.get(a, c) && ay.get(c, c)) as i64;
                            }
                            acc += t as i128;
                        }
                    }
                }
                acc
            },
        )
        .sum();
    ratio(4 * sum, falling(n, 4)?)
}

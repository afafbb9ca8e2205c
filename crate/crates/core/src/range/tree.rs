//! Layered range tree.
//!
//! Layer `k` is a balanced segment tree over the points sorted by their
//! first remaining coordinate; every internal node carries a layer for the
//! remaining `k - 1` coordinates of its points. The last coordinate is a
//! sorted array, or a dense prefix-count array when a node holds more
//! points than there are distinct coordinate values. With `cascade` the
//! last two coordinates use fractional cascading instead.

use crate::error::{Error, Result};

use super::{RangeBox, RangeCounter};

/// Construction options.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeTreeOptions {
    /// Use fractional cascading for the last two coordinates.
    pub cascade: bool,
    /// Nodes with at most this many points are scanned directly.
    pub leaf_size: usize,
}

impl Default for RangeTreeOptions {
    fn default() -> Self {
        RangeTreeOptions { cascade: false, leaf_size: 8 }
    }
}

const LEAF: u32 = u32::MAX;

struct Ctx {
    cmax: u32,
    opts: RangeTreeOptions,
}

enum Layer {
    Empty,
    Sorted(Vec<u32>),
    Prefix(Vec<u32>),
    Nested(Nested),
    Cascade(Cascade),
}

struct Nested {
    k: usize,
    rows: Vec<u32>,
    nodes: Vec<NNode>,
}

struct NNode {
    lo: u32,
    hi: u32,
    left: u32,
    right: u32,
    assoc: Layer,
}

struct Cascade {
    keys: Vec<u32>,
    ys: Vec<u32>,
    nodes: Vec<CNode>,
}

struct CNode {
    lo: u32,
    hi: u32,
    left: u32,
    right: u32,
    sorted: Vec<u32>,
    lptr: Vec<u32>,
    rptr: Vec<u32>,
}

/// Layered range tree over `d`-dimensional integer points.
pub struct RangeTree {
    d: usize,
    n: usize,
    root: Layer,
}

/// Builds a range tree from row-major points of dimension `d`.
/// Duplicate points are kept with multiplicity.
///
/// ```
/// use symrc::range::{build_range_tree, RangeCounter, RangeTreeOptions};
/// let t = build_range_tree(&[1, 1, 2, 2, 3, 1], 2, RangeTreeOptions::default());
/// assert_eq!(t.count_closed(&[1, 1], &[2, 1]), 1);
/// ```
pub fn build_range_tree(points: &[u32], d: usize, opts: RangeTreeOptions) -> RangeTree {
    assert!(d > 0 && points.len().is_multiple_of(d), "points must be rows of width d");
    let n = points.len() / d;
    let ctx = Ctx {
        cmax: points.iter().copied().max().unwrap_or(0),
        opts: RangeTreeOptions { leaf_size: opts.leaf_size.max(1), ..opts },
    };
    RangeTree { d, n, root: Layer::build(points.to_vec(), d, &ctx) }
}

/// Counts the points of `tree` inside `b`.
pub fn tree_count(tree: &RangeTree, b: &RangeBox) -> Result<u64> {
    tree.count_box(b)
}

impl RangeTree {
    /// Estimated heap usage of a tree over `n` points of dimension `d` with
    /// coordinates at most `cmax`, computed from node sizes alone.
    pub fn estimate_bytes(n: usize, d: usize, cmax: u32, opts: RangeTreeOptions) -> u128 {
        let ctx = Ctx { cmax, opts: RangeTreeOptions { leaf_size: opts.leaf_size.max(1), ..opts } };
        let mut memo = std::collections::HashMap::new();
        estimate(n, d, &ctx, &mut memo)
    }
}

fn estimate(n: usize, k: usize, ctx: &Ctx, memo: &mut std::collections::HashMap<(usize, usize), u128>) -> u128 {
    if n == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&(n, k)) {
        return v;
    }
    let node = std::mem::size_of::<NNode>() as u128;
    let v = if k == 1 {
        4 * (n.min(ctx.cmax as usize + 2)) as u128
    } else if k == 2 && ctx.opts.cascade {
        // keys, ys and per node three arrays of its size
        let mut total = 8 * n as u128;
        let mut stack = vec![n];
        while let Some(sz) = stack.pop() {
            total += std::mem::size_of::<CNode>() as u128 + 4 * sz as u128;
            if sz > ctx.opts.leaf_size {
                total += 8 * (sz as u128 + 1);
                stack.push(sz / 2);
                stack.push(sz - sz / 2);
            }
        }
        total
    } else {
        let mut total = 4 * (n * k) as u128 + node;
        if n > ctx.opts.leaf_size {
            total += estimate(n, k - 1, ctx, memo);
            total += estimate(n / 2, k, ctx, memo) - 4 * ((n / 2) * k) as u128;
            total += estimate(n - n / 2, k, ctx, memo) - 4 * ((n - n / 2) * k) as u128;
        }
        total
    };
    memo.insert((n, k), v);
    v
}

impl Layer {
    fn build(mut rows: Vec<u32>, k: usize, ctx: &Ctx) -> Layer {
        let n = rows.len() / k;
        if n == 0 {
            return Layer::Empty;
        }
        if k == 1 {
            if n > ctx.cmax as usize + 1 {
                let mut prefix = vec![0u32; ctx.cmax as usize + 1];
                for &v in &rows {
                    prefix[v as usize] += 1;
                }
                for i in 1..prefix.len() {
                    prefix[i] += prefix[i - 1];
                }
                return Layer::Prefix(prefix);
            }
            rows.sort_unstable();
            return Layer::Sorted(rows);
        }
        rows = sort_rows(&rows, k);
        if k == 2 && ctx.opts.cascade {
            return Layer::Cascade(Cascade::build(&rows, ctx));
        }
        let mut nodes = Vec::with_capacity(2 * n / ctx.opts.leaf_size + 1);
        build_nested(&rows, k, 0, n, ctx, &mut nodes);
        Layer::Nested(Nested { k, rows, nodes })
    }

    #[inline]
    fn count(&self, lo: &[u32], hi: &[u32]) -> u64 {
        match self {
            Layer::Empty => 0,
            Layer::Sorted(v) => {
                let a = v.partition_point(|&x| x < lo[0]);
                let b = v.partition_point(|&x| x <= hi[0]);
                b.saturating_sub(a) as u64
            }
            Layer::Prefix(p) => {
                let top = p.len() - 1;
                let hi = (hi[0] as usize).min(top);
                if (lo[0] as usize) > hi {
                    return 0;
                }
                let below = if lo[0] == 0 { 0 } else { p[lo[0] as usize - 1] };
                (p[hi] - below) as u64
            }
            Layer::Nested(t) => t.count(lo, hi),
            Layer::Cascade(t) => t.count(lo, hi),
        }
    }

    fn bytes(&self) -> usize {
        match self {
            Layer::Empty => 0,
            Layer::Sorted(v) | Layer::Prefix(v) => v.capacity() * 4,
            Layer::Nested(t) => {
                t.rows.capacity() * 4
                    + t.nodes.capacity() * std::mem::size_of::<NNode>()
                    + t.nodes.iter().map(|nd| nd.assoc.bytes()).sum::<usize>()
            }
            Layer::Cascade(t) => {
                (t.keys.capacity() + t.ys.capacity()) * 4
                    + t.nodes
                        .iter()
                        .map(|nd| {
                            std::mem::size_of::<CNode>()
                                + 4 * (nd.sorted.capacity() + nd.lptr.capacity() + nd.rptr.capacity())
                        })
                        .sum::<usize>()
            }
        }
    }
}

/// Rows of width `k` sorted by their first coordinate (stable).
fn sort_rows(rows: &[u32], k: usize) -> Vec<u32> {
    let n = rows.len() / k;
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&i| rows[i as usize * k]);
    let mut out = Vec::with_capacity(rows.len());
    for i in order {
        out.extend_from_slice(&rows[i as usize * k..(i as usize + 1) * k]);
    }
    out
}

fn build_nested(rows: &[u32], k: usize, lo: usize, hi: usize, ctx: &Ctx, nodes: &mut Vec<NNode>) -> u32 {
    let idx = nodes.len();
    nodes.push(NNode { lo: lo as u32, hi: hi as u32, left: LEAF, right: LEAF, assoc: Layer::Empty });
    if hi - lo <= ctx.opts.leaf_size {
        return idx as u32;
    }
    let sub: Vec<u32> = rows[lo * k..hi * k]
        .chunks_exact(k)
        .flat_map(|r| r[1..].iter().copied())
        .collect();
    let assoc = Layer::build(sub, k - 1, ctx);
    let mid = (lo + hi) / 2;
    let left = build_nested(rows, k, lo, mid, ctx, nodes);
    let right = build_nested(rows, k, mid, hi, ctx, nodes);
    let nd = &mut nodes[idx];
    nd.assoc = assoc;
    nd.left = left;
    nd.right = right;
    idx as u32
}

impl Nested {
    #[inline]
    fn count(&self, lo: &[u32], hi: &[u32]) -> u64 {
        let k = self.k;
        let n = self.rows.len() / k;
        let a = partition(n, |i| self.rows[i * k] < lo[0]);
        let b = partition(n, |i| self.rows[i * k] <= hi[0]);
        if a >= b {
            return 0;
        }
        self.count_node(0, a as u32, b as u32, lo, hi)
    }

    fn count_node(&self, idx: u32, a: u32, b: u32, lo: &[u32], hi: &[u32]) -> u64 {
        let nd = &self.nodes[idx as usize];
        if b <= nd.lo || nd.hi <= a {
            return 0;
        }
        if nd.left == LEAF {
            let k = self.k;
            return (a.max(nd.lo)..b.min(nd.hi))
                .filter(|&i| {
                    let row = &self.rows[i as usize * k..(i as usize + 1) * k];
                    (1..k).all(|c| lo[c] <= row[c] && row[c] <= hi[c])
                })
                .count() as u64;
        }
        if a <= nd.lo && nd.hi <= b {
            return nd.assoc.count(&lo[1..], &hi[1..]);
        }
        self.count_node(nd.left, a, b, lo, hi) + self.count_node(nd.right, a, b, lo, hi)
    }
}

fn partition(n: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

impl Cascade {
    fn build(rows: &[u32], ctx: &Ctx) -> Cascade {
        let keys = rows.chunks_exact(2).map(|r| r[0]).collect();
        let ys: Vec<u32> = rows.chunks_exact(2).map(|r| r[1]).collect();
        let mut nodes = vec![];
        build_cascade(&ys, 0, ys.len(), ctx, &mut nodes);
        Cascade { keys, ys, nodes }
    }

    #[inline]
    fn count(&self, lo: &[u32], hi: &[u32]) -> u64 {
        let a = self.keys.partition_point(|&x| x < lo[0]);
        let b = self.keys.partition_point(|&x| x <= hi[0]);
        if a >= b || lo[1] > hi[1] {
            return 0;
        }
        let root = &self.nodes[0];
        let i = root.sorted.partition_point(|&y| y < lo[1]);
        let j = root.sorted.partition_point(|&y| y <= hi[1]);
        self.count_node(0, a as u32, b as u32, i as u32, j as u32, lo[1], hi[1])
    }

    #[allow(clippy::too_many_arguments)]
    fn count_node(&self, idx: u32, a: u32, b: u32, i: u32, j: u32, ylo: u32, yhi: u32) -> u64 {
        let nd = &self.nodes[idx as usize];
        if b <= nd.lo || nd.hi <= a || i >= j {
            return 0;
        }
        if a <= nd.lo && nd.hi <= b {
            return (j - i) as u64;
        }
        if nd.left == LEAF {
            return (a.max(nd.lo)..b.min(nd.hi))
                .filter(|&p| {
                    let y = self.ys[p as usize];
                    ylo <= y && y <= yhi
                })
                .count() as u64;
        }
        let (li, lj) = (nd.lptr[i as usize], nd.lptr[j as usize]);
        let (ri, rj) = (nd.rptr[i as usize], nd.rptr[j as usize]);
        self.count_node(nd.left, a, b, li, lj, ylo, yhi) + self.count_node(nd.right, a, b, ri, rj, ylo, yhi)
    }
}

fn build_cascade(ys: &[u32], lo: usize, hi: usize, ctx: &Ctx, nodes: &mut Vec<CNode>) -> u32 {
    let idx = nodes.len();
    nodes.push(CNode {
        lo: lo as u32,
        hi: hi as u32,
        left: LEAF,
        right: LEAF,
        sorted: vec![],
        lptr: vec![],
        rptr: vec![],
    });
    if hi - lo <= ctx.opts.leaf_size {
        let mut sorted = ys[lo..hi].to_vec();
        sorted.sort_unstable();
        nodes[idx].sorted = sorted;
        return idx as u32;
    }
    let mid = (lo + hi) / 2;
    let left = build_cascade(ys, lo, mid, ctx, nodes);
    let right = build_cascade(ys, mid, hi, ctx, nodes);
    let (ls, rs) = (&nodes[left as usize].sorted, &nodes[right as usize].sorted);
    let mut sorted = Vec::with_capacity(hi - lo);
    let (mut p, mut q) = (0, 0);
    while p < ls.len() || q < rs.len() {
        if q == rs.len() || (p < ls.len() && ls[p] <= rs[q]) {
            sorted.push(ls[p]);
            p += 1;
        } else {
            sorted.push(rs[q]);
            q += 1;
        }
    }
    let pointers = |child: &[u32]| -> Vec<u32> {
        let mut ptr = Vec::with_capacity(sorted.len() + 1);
        let mut c = 0;
        for &v in &sorted {
            while c < child.len() && child[c] < v {
                c += 1;
            }
            ptr.push(c as u32);
        }
        ptr.push(child.len() as u32);
        ptr
    };
    let lptr = pointers(ls);
    let rptr = pointers(rs);
    let nd = &mut nodes[idx];
    nd.sorted = sorted;
    nd.lptr = lptr;
    nd.rptr = rptr;
    nd.left = left;
    nd.right = right;
    idx as u32
}

impl RangeCounter for RangeTree {
    fn dims(&self) -> usize {
        self.d
    }

    fn len(&self) -> usize {
        self.n
    }

    #[inline]
    fn count_closed(&self, lo: &[u32], hi: &[u32]) -> u64 {
        debug_assert_eq!(lo.len(), self.d);
        if lo.iter().zip(hi).any(|(a, b)| a > b) {
            return 0;
        }
        self.root.count(lo, hi)
    }

    fn memory_bytes(&self) -> usize {
        self.root.bytes()
    }
}

impl RangeTree {
    /// Checked variant of [`RangeCounter::count_closed`].
    pub fn count(&self, lo: &[u32], hi: &[u32]) -> Result<u64> {
        if lo.len() != self.d || hi.len() != self.d {
            return Err(Error::input("query dimension differs from the tree"));
        }
        Ok(self.count_closed(lo, hi))
    }
}

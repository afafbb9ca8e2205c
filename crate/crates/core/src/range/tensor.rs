//! Prefix-count tensor.

use crate::error::{Error, Result};

use super::RangeCounter;

/// `B(i_1, …, i_d) = #{points p : p ⪯ (i_1, …, i_d)}` over the grid
/// `{0, …, n}^d`, for points with coordinates in `1..=n`.
#[derive(Debug, Clone)]
pub struct PrefixTensor {
    d: usize,
    side: usize,
    n_points: usize,
    counts: Vec<u32>,
}

impl PrefixTensor {
    /// Bytes needed for `n` points in `d` dimensions, if representable.
    pub fn bytes_needed(n: usize, d: usize) -> Option<usize> {
        (n + 1).checked_pow(d as u32)?.checked_mul(4)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    fn index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.side + i)
    }

    /// `B(idx)`.
    pub fn get(&self, idx: &[usize]) -> u64 {
        self.counts[self.index(idx)] as u64
    }
}

/// Builds the tensor from row-major points of dimension `d`.
///
/// ```
/// use symrc::range::build_prefix_tensor;
/// let t = build_prefix_tensor(&[1, 1, 2, 2, 3, 1], 2, 1 << 20).unwrap();
/// assert_eq!(t.get(&[2, 1]), 1);
/// assert_eq!(t.get(&[3, 2]), 3);
/// ```
pub fn build_prefix_tensor(points: &[u32], d: usize, memory_budget: usize) -> Result<PrefixTensor> {
    if d == 0 || d > 16 || !points.len().is_multiple_of(d) {
        return Err(Error::input("points must be rows of width 1..=16"));
    }
    let n = points.len() / d;
    let bytes = PrefixTensor::bytes_needed(n, d)
        .filter(|&b| b <= memory_budget)
        .ok_or_else(|| {
            Error::capacity(format!(
                "prefix tensor for n = {n}, d = {d} exceeds the memory budget of {memory_budget} bytes; use the tree backend"
            ))
        })?;
    let side = n + 1;
    let mut t = PrefixTensor { d, side, n_points: n, counts: vec![0; bytes / 4] };
    let mut idx = vec![0usize; d];
    for p in points.chunks_exact(d) {
        for (j, &v) in p.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(Error::input(format!("coordinate {v} outside 1..={n}")));
            }
            idx[j] = v as usize;
        }
        let k = t.index(&idx);
        t.counts[k] += 1;
    }
    // cumulative sums along each axis
    let total = t.counts.len();
    let mut stride = 1;
    for _ in 0..d {
        for k in 0..total {
            if (k / stride) % side != 0 {
                t.counts[k] += t.counts[k - stride];
            }
        }
        stride *= side;
    }
    Ok(t)
}

/// Number of points in the half-open box `(l, u]`, for `0 <= l <= u <= n`.
pub fn tensor_count(t: &PrefixTensor, l: &[usize], u: &[usize]) -> Result<u64> {
    if l.len() != t.d || u.len() != t.d {
        return Err(Error::input("box dimension differs from the tensor"));
    }
    for j in 0..t.d {
        if l[j] > u[j] || u[j] >= t.side {
            return Err(Error::input(format!(
                "corner ({}, {}] outside 0..={} in dimension {}",
                l[j],
                u[j],
                t.side - 1,
                j + 1
            )));
        }
    }
    Ok(t.half_open(l, u))
}

impl PrefixTensor {
    #[inline]
    fn half_open(&self, l: &[usize], u: &[usize]) -> u64 {
        let d = self.d;
        if l.iter().all(|&v| v == 0) {
            return self.counts[self.index(u)] as u64;
        }
        let mut total: i64 = 0;
        for mask in 0u32..1 << d {
            let mut k = 0;
            let mut skip = false;
            for j in 0..d {
                let v = if mask >> j & 1 == 1 { l[j] } else { u[j] };
                if v == 0 {
                    skip = true;
                    break;
                }
                k = k * self.side + v;
            }
            if skip {
                continue;
            }
            let c = self.counts[k] as i64;
            if mask.count_ones() % 2 == 0 {
                total += c;
            } else {
                total -= c;
            }
        }
        total as u64
    }
}

impl RangeCounter for PrefixTensor {
    fn dims(&self) -> usize {
        self.d
    }

    fn len(&self) -> usize {
        self.n_points
    }

    #[inline]
    fn count_closed(&self, lo: &[u32], hi: &[u32]) -> u64 {
        let mut l = [0usize; 16];
        let mut u = [0usize; 16];
        let max = self.side - 1;
        for j in 0..self.d {
            let a = (lo[j] as usize).saturating_sub(1).min(max);
            let b = (hi[j] as usize).min(max);
            if a >= b {
                return 0;
            }
            l[j] = a;
            u[j] = b;
        }
        self.half_open(&l[..self.d], &u[..self.d])
    }

    fn memory_bytes(&self) -> usize {
        self.counts.len() * 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example() {
        let t = build_prefix_tensor(&[1, 1, 2, 2, 3, 1], 2, 1 << 20).unwrap();
        assert_eq!(t.get(&[3, 3]), 3);
        assert_eq!(t.get(&[0, 3]), 0);
        assert_eq!(t.get(&[3, 0]), 0);
        assert_eq!(tensor_count(&t, &[0, 0], &[3, 3]).unwrap(), 3);
        assert_eq!(tensor_count(&t, &[2, 2], &[2, 2]).unwrap(), 0);
        assert_eq!(tensor_count(&t, &[0, 0], &[2, 1]).unwrap(), 1);
        assert!(tensor_count(&t, &[0, 0], &[4, 1]).is_err());
    }

    #[test]
    fn one_dimensional() {
        let pts: Vec<u32> = (1..=6).collect();
        let t = build_prefix_tensor(&pts, 1, 1 << 20).unwrap();
        for k in 0..=6 {
            assert_eq!(t.get(&[k]), k as u64);
        }
    }

    #[test]
    fn budget() {
        let err = build_prefix_tensor(&[1, 1, 2, 2], 2, 8).unwrap_err();
        assert!(matches!(err, Error::Capacity(_)));
    }
}

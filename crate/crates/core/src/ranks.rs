//! Joint rank matrices of small point configurations.

use crate::error::{Error, Result};

/// Ranks of `m` points in `R^d`, stored as a `d x m` matrix.
///
/// Entry `(i, j)` is one plus the number of points whose coordinate `i`
/// is strictly smaller than that of point `j`, so tied values share the
/// smallest rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMatrix {
    d: usize,
    m: usize,
    ranks: Vec<u32>,
}

impl RankMatrix {
    pub fn dims(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// Rank of coordinate `i` of point `j` (both 0-based).
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.ranks[i * self.m + j]
    }

    /// Ranks of coordinate `i` across all points.
    pub fn row(&self, i: usize) -> &[u32] {
        &self.ranks[i * self.m..(i + 1) * self.m]
    }

    /// The rank matrix as points (columns), converted to reals.
    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.m)
            .map(|j| (0..self.d).map(|i| self.get(i, j) as f64).collect())
            .collect()
    }
}

/// Joint rank matrix of the points `w[0], ..., w[m-1]`, each of length `d`.
///
/// ```
/// use symrc::joint_ranks;
/// let w = vec![vec![0.5, 10.0], vec![1.5, -2.0], vec![1.0, 4.0]];
/// let r = joint_ranks(&w).unwrap();
/// assert_eq!(r.row(0), &[1, 3, 2]);
/// assert_eq!(r.row(1), &[3, 1, 2]);
/// ```
pub fn joint_ranks(w: &[Vec<f64>]) -> Result<RankMatrix> {
    let m = w.len();
    if m == 0 {
        return Err(Error::input("joint ranks need at least one point"));
    }
    let d = w[0].len();
    if w.iter().any(|p| p.len() != d) {
        return Err(Error::input("points have different dimensions"));
    }
    if w.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::input("non-finite entry in rank input"));
    }
    let mut ranks = vec![0u32; d * m];
    for i in 0..d {
        for j in 0..m {
            let below = w.iter().filter(|p| p[i] < w[j][i]).count();
            ranks[i * m + j] = below as u32 + 1;
        }
    }
    Ok(RankMatrix { d, m, ranks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_and_identity() {
        let r = joint_ranks(&[vec![5.0], vec![5.0], vec![9.0]]).unwrap();
        assert_eq!(r.row(0), &[1, 1, 3]);
        let r = joint_ranks(&[vec![-1.0], vec![0.0], vec![2.5], vec![7.0]]).unwrap();
        assert_eq!(r.row(0), &[1, 2, 3, 4]);
    }

    #[test]
    fn rejects_nan() {
        assert!(joint_ranks(&[vec![f64::NAN]]).is_err());
        assert!(joint_ranks(&[]).is_err());
    }
}

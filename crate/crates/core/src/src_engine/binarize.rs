//! Binarisation at a cut point, orthant probabilities and block minors.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Exact;

use super::dist::DiscreteDist;

/// Orthant probabilities of `(X, Y)` binarised at a cut point `z = (x, y)`.
///
/// Orthant `ℓ` is stored at index `ℓ_X + 2^r ℓ_Y`, where bit `j` of `ℓ_X`
/// is `1[X_j > x_j]` and bit `j` of `ℓ_Y` is `1[Y_j > y_j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Binarization {
    r: usize,
    s: usize,
    p: Vec<Exact>,
}

impl Binarization {
    /// The `2^(r+s)` orthant probabilities.
    pub fn tensor(&self) -> &[Exact] {
        &self.p
    }

    /// Orthant probability `p(z)_ℓ` for X pattern `lx` and Y pattern `ly`.
    pub fn orthant(&self, lx: u32, ly: u32) -> Exact {
        self.p[lx as usize + (ly as usize) * (1 << self.r)]
    }

    /// The `2^r x 2^s` matricisation `M(x, y)`.
    pub fn matrix(&self) -> Vec<Vec<Exact>> {
        (0..1u32 << self.r)
            .map(|lx| (0..1u32 << self.s).map(|ly| self.orthant(lx, ly)).collect())
            .collect()
    }

    /// `P(B^X ∈ L, B^Y ∈ R)`.
    pub fn block(&self, l: &[u32], rr: &[u32]) -> Exact {
        let mut acc = Exact::zero();
        for &lx in l {
            for &ly in rr {
                acc += self.orthant(lx, ly);
            }
        }
        acc
    }

    /// The 2x2 block minor along `(L, L', R, R')`:
    /// `P(L,R) P(L',R') - P(L',R) P(L,R')`.
    pub fn block_minor(&self, l: &[u32], l2: &[u32], rr: &[u32], rr2: &[u32]) -> Result<Exact> {
        let check = |a: &[u32], b: &[u32], bits: usize| -> Result<()> {
            if a.is_empty() || b.is_empty() {
                return Err(Error::input("block minor sets must be nonempty"));
            }
            if a.iter().chain(b).any(|&v| v >= 1 << bits) {
                return Err(Error::input("orthant pattern out of range"));
            }
            if a.iter().any(|v| b.contains(v)) {
                return Err(Error::input("block minor sets must be disjoint"));
            }
            Ok(())
        };
        check(l, l2, self.r)?;
        check(rr, rr2, self.s)?;
        Ok(self.block(l, rr) * self.block(l2, rr2) - self.block(l2, rr) * self.block(l, rr2))
    }
}

/// Binarises `dist` at `cut` (a point of `R^(r+s)`).
///
/// ```
/// use symrc::{binarization_minors, DiscreteDist, Exact};
/// let d = DiscreteDist::from_weights(1, 1, vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![1, 1]).unwrap();
/// let b = binarization_minors(&d, &[0.0, 0.0]).unwrap();
/// assert_eq!(b.block_minor(&[0], &[1], &[0], &[1]).unwrap(), Exact::new(-1, 4));
/// ```
pub fn binarization_minors(dist: &DiscreteDist, cut: &[f64]) -> Result<Binarization> {
    let (r, s) = (dist.r(), dist.s());
    if cut.len() != r + s {
        return Err(Error::input(format!("cut point must have dimension {}", r + s)));
    }
    let mass = dist.mass();
    let mut p = vec![Exact::zero(); 1 << (r + s)];
    for (i, point) in mass.points().iter().enumerate() {
        let mut idx = 0usize;
        for j in 0..r + s {
            if point[j] > cut[j] {
                idx |= 1 << j;
            }
        }
        p[idx] += mass.prob(i);
    }
    Ok(Binarization { r, s, p })
}

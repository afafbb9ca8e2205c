//! Finitely supported distributions with rational probabilities.

use crate::error::{Error, Result};
use crate::exact::Exact;

/// Point masses `weights[i] / total` at `points[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMass {
    points: Vec<Vec<f64>>,
    weights: Vec<u64>,
    total: u64,
}

impl PointMass {
    /// Builds from positive integer weights; probabilities are the weights
    /// divided by their sum. Repeated points are merged.
    pub fn new(points: Vec<Vec<f64>>, weights: Vec<u64>) -> Result<Self> {
        if points.is_empty() || points.len() != weights.len() {
            return Err(Error::input("support and weights must be nonempty and of equal length"));
        }
        let dim = points[0].len();
        if dim == 0 || points.iter().any(|p| p.len() != dim || p.iter().any(|v| !v.is_finite())) {
            return Err(Error::input("support points must be finite and of equal dimension"));
        }
        if weights.contains(&0) {
            return Err(Error::input("weights must be positive"));
        }
        let mut merged: Vec<(Vec<f64>, u64)> = vec![];
        for (p, w) in points.into_iter().zip(weights) {
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some((_, acc)) => *acc += w,
                None => merged.push((p, w)),
            }
        }
        let total = merged.iter().map(|(_, w)| w).sum();
        let (points, weights) = merged.into_iter().unzip();
        Ok(PointMass { points, weights, total })
    }

    /// Uniform distribution on the given points.
    pub fn uniform(points: Vec<Vec<f64>>) -> Result<Self> {
        let w = vec![1; points.len()];
        PointMass::new(points, w)
    }

    /// Builds from probabilities, which must be rationals with a common
    /// denominator of at most 4096 (within 1e-12) and sum to one.
    pub fn from_probs(points: Vec<Vec<f64>>, probs: &[f64]) -> Result<Self> {
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 || probs.iter().any(|&p| !(p > 0.0)) {
            return Err(Error::input("probabilities must be positive and sum to 1"));
        }
        for q in 1u64..=4096 {
            let scaled: Vec<f64> = probs.iter().map(|p| p * q as f64).collect();
            if scaled.iter().all(|v| (v - v.round()).abs() < 1e-9 * q as f64) {
                let weights: Vec<u64> = scaled.iter().map(|v| v.round() as u64).collect();
                if weights.iter().sum::<u64>() == q {
                    return PointMass::new(points, weights);
                }
            }
        }
        Err(Error::input("probabilities are not rationals with a small common denominator"))
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn prob(&self, i: usize) -> Exact {
        Exact::new(self.weights[i] as i128, self.total as i128)
    }

    /// Image under a coordinate projection.
    pub fn project(&self, coords: &[usize]) -> PointMass {
        let points = self.points.iter().map(|p| coords.iter().map(|&c| p[c]).collect()).collect();
        PointMass::new(points, self.weights.clone()).expect("projection of a valid distribution")
    }
}

/// A joint distribution of `(X, Y)` on `R^(r+s)` with finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDist {
    r: usize,
    s: usize,
    mass: PointMass,
}

impl DiscreteDist {
    pub fn new(r: usize, s: usize, mass: PointMass) -> Result<Self> {
        if r == 0 || s == 0 || mass.dim() != r + s {
            return Err(Error::input(format!("support points must have dimension r + s = {}", r + s)));
        }
        Ok(DiscreteDist { r, s, mass })
    }

    /// Joint distribution from support points and integer weights.
    pub fn from_weights(r: usize, s: usize, points: Vec<Vec<f64>>, weights: Vec<u64>) -> Result<Self> {
        DiscreteDist::new(r, s, PointMass::new(points, weights)?)
    }

    /// The product of independent X and Y laws.
    pub fn product(x: &PointMass, y: &PointMass) -> Result<Self> {
        let mut points = vec![];
        let mut weights = vec![];
        for (px, wx) in x.points().iter().zip(x.weights()) {
            for (py, wy) in y.points().iter().zip(y.weights()) {
                points.push(px.iter().chain(py).copied().collect());
                weights.push(wx * wy);
            }
        }
        DiscreteDist::from_weights(x.dim(), y.dim(), points, weights)
    }

    /// X uniform on `{0,1}^r` and `Y = X_1 xor … xor X_r`.
    pub fn xor(r: usize) -> Result<Self> {
        let points = (0..1u32 << r)
            .map(|bits| {
                let mut p: Vec<f64> = (0..r).map(|j| ((bits >> j) & 1) as f64).collect();
                p.push((bits.count_ones() % 2) as f64);
                p
            })
            .collect();
        DiscreteDist::from_weights(r, 1, points, vec![1; 1 << r])
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn mass(&self) -> &PointMass {
        &self.mass
    }

    pub fn marginal_x(&self) -> PointMass {
        self.mass.project(&(0..self.r).collect::<Vec<_>>())
    }

    pub fn marginal_y(&self) -> PointMass {
        self.mass.project(&(self.r..self.r + self.s).collect::<Vec<_>>())
    }

    /// Product of the two marginals.
    pub fn independent_version(&self) -> DiscreteDist {
        DiscreteDist::product(&self.marginal_x(), &self.marginal_y()).expect("valid marginals")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_normalises() {
        let pm = PointMass::new(vec![vec![0.0], vec![1.0], vec![0.0]], vec![1, 2, 3]).unwrap();
        assert_eq!(pm.len(), 2);
        assert_eq!(pm.prob(0), Exact::new(2, 3));
    }

    #[test]
    fn probabilities() {
        let pm = PointMass::from_probs(vec![vec![0.0], vec![1.0]], &[0.25, 0.75]).unwrap();
        assert_eq!(pm.weights(), &[1, 3]);
        assert!(PointMass::from_probs(vec![vec![0.0], vec![1.0]], &[0.5, 0.6]).is_err());
    }

    #[test]
    fn xor_support() {
        let d = DiscreteDist::xor(2).unwrap();
        assert_eq!(d.mass().len(), 4);
        assert_eq!(d.marginal_y().weights(), &[2, 2]);
    }
}

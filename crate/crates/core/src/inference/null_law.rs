//! The limiting law of `n U` for τ*, D and R under independence.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::rng::{substream, Domain};
use crate::error::{Error, Result};

/// Which scale multiplies `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NullScale {
    /// `36 / π⁴`.
    TauStar,
    /// `1 / π⁴`, shared by D and R.
    Hoeffding,
}

impl NullScale {
    pub fn value(self) -> f64 {
        let p4 = std::f64::consts::PI.powi(4);
        match self {
            NullScale::TauStar => 36.0 / p4,
            NullScale::Hoeffding => 1.0 / p4,
        }
    }

    /// Accepts `taustar`, `D` or `R`.
    pub fn from_law(name: &str) -> Result<Self> {
        match name {
            "taustar" => Ok(NullScale::TauStar),
            "D" | "d" | "R" | "r" => Ok(NullScale::Hoeffding),
            _ => Err(Error::input(format!("unknown null law '{name}' (taustar, D, R)"))),
        }
    }
}

/// `scale · Σ_{i,j ≤ K} (χ²_{ij} − 1) / (i² j²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullLawSpec {
    pub k: usize,
    pub scale: NullScale,
}

impl NullLawSpec {
    pub fn new(k: usize, scale: NullScale) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("truncation K must be at least 1"));
        }
        Ok(NullLawSpec { k, scale })
    }

    /// Variance of the omitted terms:
    /// `scale² · 2 (ζ(4)² − (Σ_{i≤K} i⁻⁴)²)`.
    pub fn tail_variance(&self) -> f64 {
        let c = self.scale.value();
        let zeta4 = std::f64::consts::PI.powi(4) / 90.0;
        let partial: f64 = (1..=self.k).map(|i| (i as f64).powi(-4)).sum();
        c * c * 2.0 * (zeta4 * zeta4 - partial * partial)
    }

    /// Variance of the untruncated law, `scale² · 2 ζ(4)²`.
    pub fn variance(&self) -> f64 {
        let c = self.scale.value();
        let zeta4 = std::f64::consts::PI.powi(4) / 90.0;
        c * c * 2.0 * zeta4 * zeta4
    }
}

/// `count` independent draws; draw `i` uses its own substream, so the
/// result does not depend on the number of workers.
pub fn sample_null_z(spec: &NullLawSpec, count: usize, seed: u64) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::input("count must be at least 1"));
    }
    let k = spec.k;
    let w: Vec<f64> = (1..=k).map(|i| 1.0 / (i as f64 * i as f64)).collect();
    let scale = spec.scale.value();
    Ok((0..count)
        .into_par_iter()
        .map(|t| {
            let mut rng = substream(seed, Domain::Null, t as u64);
            let mut z = 0.0;
            for wi in &w {
                let mut row = 0.0;
                for wj in &w {
                    let g: f64 = StandardNormal.sample(&mut rng);
                    row += wj * (g * g - 1.0);
                }
                z += wi * row;
            }
            scale * z
        })
        .collect())
}

//! Joint laws used in the power simulations.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::data::Dataset;
use crate::error::{Error, Result};

/// A sampling design for `(X, Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Generator {
    /// `X₁, X₂ ~ N(0,1)`, `Y = X₁X₂ + ε`, `ε ~ N(0, σ²)`.
    ProductNoise { sigma: f64 },
    /// `Y = exp(−(X₁ − X₂)²) + ε`.
    ExpNoise { sigma: f64 },
    /// `X ~ Bernoulli(1/2)^r`, `Y` the parity of `X` (`r = 2` or `3`).
    Xor { r: usize },
    /// `X₁, X₂ ~ N(0,1)`, `Y ~ Bernoulli(expit(6 sin(X₁X₂)))`.
    MixedExpit,
    /// Independent standard normal blocks of sizes `r` and `s`.
    GaussianIndep { r: usize, s: usize },
    /// `X ~ N(0,1)` independent of `(Y₁, Y₂)`, standard normal with
    /// correlation `ρ`.
    GaussianCorrelatedY { rho: f64 },
}

impl Generator {
    /// Parses a generator name. `sigma` applies to the noise designs and
    /// `rho` to `gaussian-correlated-y`.
    pub fn from_name(name: &str, sigma: f64, rho: f64) -> Result<Self> {
        let g = match name {
            "product-noise" => Generator::ProductNoise { sigma },
            "exp-noise" => Generator::ExpNoise { sigma },
            "xor2" => Generator::Xor { r: 2 },
            "xor3" => Generator::Xor { r: 3 },
            "mixed-expit" => Generator::MixedExpit,
            "gaussian-indep" => Generator::GaussianIndep { r: 2, s: 1 },
            "gaussian-correlated-y" => Generator::GaussianCorrelatedY { rho },
            _ => {
                return Err(Error::input(format!(
                    "unknown generator '{name}' (product-noise, exp-noise, xor2, xor3, mixed-expit, \
                     gaussian-indep, gaussian-correlated-y)"
                )))
            }
        };
        g.validate()?;
        Ok(g)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::ProductNoise { .. } => "product-noise",
            Generator::ExpNoise { .. } => "exp-noise",
            Generator::Xor { r: 2 } => "xor2",
            Generator::Xor { .. } => "xor3",
            Generator::MixedExpit => "mixed-expit",
            Generator::GaussianIndep { .. } => "gaussian-indep",
            Generator::GaussianCorrelatedY { .. } => "gaussian-correlated-y",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Generator::ProductNoise { sigma } | Generator::ExpNoise { sigma } if !(sigma >= 0.0 && sigma.is_finite()) => {
                Err(Error::input(format!("sigma must be finite and >= 0, got {sigma}")))
            }
            Generator::Xor { r } if !(2..=3).contains(&r) => Err(Error::input("xor needs r = 2 or 3")),
            Generator::GaussianIndep { r, s } if r == 0 || s == 0 => Err(Error::input("r and s must be positive")),
            Generator::GaussianCorrelatedY { rho } if !(-1.0..=1.0).contains(&rho) => {
                Err(Error::input(format!("rho must lie in [-1, 1], got {rho}")))
            }
            _ => Ok(()),
        }
    }

    /// `(r, s)`.
    pub fn dims(&self) -> (usize, usize) {
        match *self {
            Generator::Xor { r } => (r, 1),
            Generator::GaussianIndep { r, s } => (r, s),
            Generator::GaussianCorrelatedY { .. } => (1, 2),
            _ => (2, 1),
        }
    }

    /// Whether `X` and `Y` are independent under this law.
    pub fn is_null(&self) -> bool {
        matches!(self, Generator::GaussianIndep { .. } | Generator::GaussianCorrelatedY { .. })
    }

    fn row(&self, rng: &mut impl Rng, out: &mut Vec<f64>) {
        let mut z = || -> f64 { StandardNormal.sample(rng) };
        match *self {
            Generator::ProductNoise { sigma } => {
                let (a, b) = (z(), z());
                let e = z();
                out.extend([a, b, a * b + sigma * e]);
            }
            Generator::ExpNoise { sigma } => {
                let (a, b) = (z(), z());
                let e = z();
                out.extend([a, b, (-(a - b) * (a - b)).exp() + sigma * e]);
            }
            Generator::Xor { r } => {
                let mut parity = 0;
                for _ in 0..r {
                    let bit = rng.random_range(0..2u32);
                    parity ^= bit;
                    out.push(bit as f64);
                }
                out.push(parity as f64);
            }
            Generator::MixedExpit => {
                let (a, b) = (z(), z());
                let p = 1.0 / (1.0 + (-6.0 * (a * b).sin()).exp());
                let y = rng.random_bool(p);
                out.extend([a, b, y as u8 as f64]);
            }
            Generator::GaussianIndep { r, s } => {
                for _ in 0..r + s {
                    out.push(z());
                }
            }
            Generator::GaussianCorrelatedY { rho } => {
                let (x, a, b) = (z(), z(), z());
                out.extend([x, a, rho * a + (1.0 - rho * rho).max(0.0).sqrt() * b]);
            }
        }
    }

    /// An iid sample of size `n` from the joint law.
    pub fn sample(&self, n: usize, rng: &mut impl Rng) -> Result<Dataset> {
        self.validate()?;
        let (r, s) = self.dims();
        let mut values = Vec::with_capacity(n * (r + s));
        for _ in 0..n {
            self.row(rng, &mut values);
        }
        Dataset::new(values, r, s)
    }

    /// A sample of size `n` from the product of the marginals: X rows of
    /// one joint sample paired with Y rows of an independent one.
    pub fn sample_independent(&self, n: usize, rng: &mut impl Rng) -> Result<Dataset> {
        let a = self.sample(n, rng)?;
        let b = self.sample(n, rng)?;
        a.with_y_from(&b)
    }
}

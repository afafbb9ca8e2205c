//! Independence tests, the asymptotic null law and power simulation.
//!
//! All randomness comes from [`substream`]: replicate `k` of a given kind
//! draws from its own ChaCha8 stream, so results depend only on the inputs
//! and the seed, never on scheduling.

mod generators;
mod ks;
mod null_law;
mod rng;

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::exact::{to_f64, Exact};
use crate::fast::{estimate, EstimateOptions, Statistic};

pub use generators::Generator;
pub use ks::{ks_critical, ks_distance};
pub use null_law::{sample_null_z, NullLawSpec, NullScale};
pub use rng::{substream, Domain, RNG_ALGORITHM};

/// Outcome of an independence test.
#[derive(Debug, Clone, Serialize)]
pub struct TestResult {
    pub statistic: String,
    /// `permutation` or `marginal-reference`.
    pub method: String,
    pub observed: f64,
    /// The observed value as an exact fraction `p/q`.
    pub observed_exact: String,
    pub reference: Vec<f64>,
    /// `(1 + #{reference ≥ observed}) / (B + 1)`.
    pub p_value: f64,
    /// `#{reference ≥ observed} / B`.
    pub raw_proportion: f64,
    pub b: usize,
    pub seed: u64,
    pub rng: String,
    pub seconds: f64,
}

/// Smoothed and raw upper-tail p-values, comparing exactly.
pub fn p_values(observed: &Exact, reference: &[Exact]) -> (f64, f64) {
    let ge = reference.iter().filter(|v| *v >= observed).count();
    let b = reference.len();
    ((1 + ge) as f64 / (b + 1) as f64, if b == 0 { f64::NAN } else { ge as f64 / b as f64 })
}

fn eval(statistic: &Statistic, data: &Dataset, opts: &EstimateOptions) -> Result<Exact> {
    estimate(statistic, data, opts).map(|e| e.value)
}

fn check_b(b: usize) -> Result<()> {
    if b == 0 {
        return Err(Error::input("replicate count B must be at least 1"));
    }
    Ok(())
}

/// Null statistics from `b` random permutations of the Y rows.
pub fn permutation_reference(
    data: &Dataset,
    statistic: &Statistic,
    b: usize,
    seed: u64,
    opts: &EstimateOptions,
) -> Result<Vec<Exact>> {
    (0..b)
        .into_par_iter()
        .map(|k| {
            let mut rng = substream(seed, Domain::Permutation, k as u64);
            let mut perm: Vec<usize> = (0..data.n()).collect();
            perm.shuffle(&mut rng);
            eval(statistic, &data.permute_y(&perm)?, opts).map_err(|e| e.context(format!("replicate {k}")))
        })
        .collect()
}

/// Permutation test of independence between the X and Y blocks.
pub fn permutation_test(
    data: &Dataset,
    statistic: &Statistic,
    b: usize,
    seed: u64,
    opts: &EstimateOptions,
) -> Result<TestResult> {
    check_b(b)?;
    let start = Instant::now();
    let observed = eval(statistic, data, opts)?;
    let reference = permutation_reference(data, statistic, b, seed, opts)?;
    Ok(result(statistic, "permutation", observed, &reference, seed, start))
}

fn result(statistic: &Statistic, method: &str, observed: Exact, reference: &[Exact], seed: u64, start: Instant) -> TestResult {
    let (p_value, raw_proportion) = p_values(&observed, reference);
    TestResult {
        statistic: statistic.name(),
        method: method.into(),
        observed: to_f64(&observed),
        observed_exact: format!("{}/{}", observed.numer(), observed.denom()),
        reference: reference.iter().map(to_f64).collect(),
        p_value,
        raw_proportion,
        b: reference.len(),
        seed,
        rng: RNG_ALGORITHM.into(),
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Statistics computed on samples from the product of the marginals.
#[derive(Debug, Clone, Serialize)]
pub struct ReferenceBank {
    pub statistic: String,
    pub generator: Generator,
    pub n: usize,
    pub seed: u64,
    #[serde(skip)]
    pub exact: Vec<Exact>,
    pub values: Vec<f64>,
}

impl ReferenceBank {
    pub fn build(
        generator: &Generator,
        statistic: &Statistic,
        n: usize,
        b: usize,
        seed: u64,
        opts: &EstimateOptions,
    ) -> Result<Self> {
        check_b(b)?;
        generator.validate()?;
        let exact = (0..b)
            .into_par_iter()
            .map(|k| {
                let mut rng = substream(seed, Domain::Reference, k as u64);
                let data = generator.sample_independent(n, &mut rng)?;
                eval(statistic, &data, opts).map_err(|e| e.context(format!("reference sample {k}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ReferenceBank {
            statistic: statistic.name(),
            generator: *generator,
            n,
            seed,
            values: exact.iter().map(to_f64).collect(),
            exact,
        })
    }

    /// Smoothed and raw p-values of `observed` against the bank.
    pub fn p_values(&self, observed: &Exact) -> (f64, f64) {
        p_values(observed, &self.exact)
    }
}

/// Tests one joint sample (substream 0 of [`Domain::Observed`]) against a
/// reference bank drawn from the marginals.
pub fn marginal_reference_test(
    generator: &Generator,
    statistic: &Statistic,
    b: usize,
    n: usize,
    seed: u64,
    opts: &EstimateOptions,
) -> Result<(TestResult, ReferenceBank)> {
    let start = Instant::now();
    let bank = ReferenceBank::build(generator, statistic, n, b, seed, opts)?;
    let data = generator.sample(n, &mut substream(seed, Domain::Observed, 0))?;
    let observed = eval(statistic, &data, opts)?;
    Ok((result(statistic, "marginal-reference", observed, &bank.exact, seed, start), bank))
}

/// How each power trial obtains its p-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceScheme {
    /// One bank of `B` marginal samples shared by every trial.
    Bank,
    /// A fresh permutation test with `B` permutations per trial.
    Permutation,
}

impl std::str::FromStr for ReferenceScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bank" => Ok(ReferenceScheme::Bank),
            "permutation" => Ok(ReferenceScheme::Permutation),
            _ => Err(Error::input(format!("unknown reference scheme '{s}' (bank, permutation)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PowerOptions {
    pub b: usize,
    pub scheme: ReferenceScheme,
    pub estimate: EstimateOptions,
}

impl Default for PowerOptions {
    fn default() -> Self {
        PowerOptions { b: 1000, scheme: ReferenceScheme::Bank, estimate: EstimateOptions::default() }
    }
}

/// One line of a power table.
#[derive(Debug, Clone, Serialize)]
pub struct PowerRow {
    pub generator: String,
    pub sigma: Option<f64>,
    pub rho: Option<f64>,
    pub statistic: String,
    pub n: usize,
    pub trials: usize,
    pub level: f64,
    pub b: usize,
    pub scheme: ReferenceScheme,
    pub rejections: usize,
    pub power: f64,
    /// Binomial standard error `sqrt(p (1 - p) / trials)`.
    pub std_error: f64,
    pub seconds: f64,
}

/// Rejection frequencies at `level` over `trials` samples of size `n`.
///
/// Every statistic sees the same trial samples. A trial rejects when its
/// smoothed p-value is at most `level`.
pub fn power_sim(
    generator: &Generator,
    statistics: &[Statistic],
    n: usize,
    trials: usize,
    level: f64,
    seed: u64,
    opts: &PowerOptions,
) -> Result<Vec<PowerRow>> {
    if trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    if !(0.0..=1.0).contains(&level) {
        return Err(Error::input(format!("level must lie in [0, 1], got {level}")));
    }
    check_b(opts.b)?;
    let samples = (0..trials)
        .map(|t| generator.sample(n, &mut substream(seed, Domain::Observed, t as u64)))
        .collect::<Result<Vec<_>>>()?;
    let (sigma, rho) = match *generator {
        Generator::ProductNoise { sigma } | Generator::ExpNoise { sigma } => (Some(sigma), None),
        Generator::GaussianCorrelatedY { rho } => (None, Some(rho)),
        _ => (None, None),
    };
    let mut rows = Vec::new();
    for st in statistics {
        let start = Instant::now();
        let bank = match opts.scheme {
            ReferenceScheme::Bank => Some(ReferenceBank::build(generator, st, n, opts.b, seed, &opts.estimate)?),
            ReferenceScheme::Permutation => None,
        };
        let rejections = samples
            .par_iter()
            .enumerate()
            .map(|(t, data)| -> Result<bool> {
                let obs = eval(st, data, &opts.estimate).map_err(|e| e.context(format!("trial {t}")))?;
                let p = match &bank {
                    Some(bank) => bank.p_values(&obs).0,
                    None => {
                        let trial_seed = substream(seed, Domain::Permutation, t as u64).next_u64();
                        let reference = permutation_reference(data, st, opts.b, trial_seed, &opts.estimate)?;
                        p_values(&obs, &reference).0
                    }
                };
                Ok(p <= level)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&r| r)
            .count();
        let power = rejections as f64 / trials as f64;
        rows.push(PowerRow {
            generator: generator.name().into(),
            sigma,
            rho,
            statistic: st.name(),
            n,
            trials,
            level,
            b: opts.b,
            scheme: opts.scheme,
            rejections,
            power,
            std_error: (power * (1.0 - power) / trials as f64).sqrt(),
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    Ok(rows)
}

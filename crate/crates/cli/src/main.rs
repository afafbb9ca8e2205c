//! `symrc`: symmetric rank covariances from the command line.

mod ingest;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use symrc::fast::{PairAlgorithm, DEFAULT_CROSSOVER, DEFAULT_MEMORY_BUDGET};
use symrc::inference::{
    marginal_reference_test, permutation_test, power_sim, sample_null_z, substream, Domain, Generator, NullLawSpec,
    NullScale, PowerOptions, ReferenceScheme,
};
use symrc::{estimate, to_f64, Backend, Dataset, Error, EstimateOptions, Exact, Result, Statistic};

use ingest::{ingest_csv, selected_names, Roles};
use output::{write_csv, write_json, Format, Meta};

/// Environment variable holding the default memory budget in bytes.
const BUDGET_ENV: &str = "SYMRC_MEMORY_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "symrc", version, about = "Symmetric rank covariances, independence tests and simulations")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Memory budget in bytes for index structures (default: $SYMRC_MEMORY_BUDGET or 256 MiB).
    #[arg(long, global = true)]
    memory_budget: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Output format (default depends on the command).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one statistic on a data file.
    Compute(ComputeArgs),
    /// Test independence of the X and Y columns.
    Test(TestArgs),
    /// Draw from the limiting null law of n U.
    NullSample(NullArgs),
    /// Estimate power on a simulation design.
    Power(PowerArgs),
    /// Time the naive and fast estimators.
    Bench(BenchArgs),
    /// Write the joint ranks of a data file.
    Rank(RankArgs),
}

#[derive(Args, Debug, Serialize)]
struct InputArgs {
    /// CSV file with a header row.
    #[arg(long, short)]
    input: PathBuf,
    /// Column roles: "x:a,b;y:c" by name or "x:2 y:1" by count.
    #[arg(long, default_value = "x:1 y:1")]
    roles: String,
}

#[derive(Args, Debug, Serialize)]
struct EstimatorArgs {
    /// tau, tau2, taustar, spearman, D, R, tauP or tauJ.
    #[arg(long)]
    stat: String,
    /// Counting backend for D and R: auto, tree, tensor or scan.
    #[arg(long, default_value = "auto")]
    backend: String,
    /// Algorithm for tauP, tauJ and taustar: auto, definition or tree.
    #[arg(long, default_value = "auto")]
    algorithm: String,
    /// Sample size from which tauP and tauJ may use pair trees.
    #[arg(long, default_value_t = DEFAULT_CROSSOVER)]
    crossover: usize,
    /// Maximum tuples the naive estimator may enumerate.
    #[arg(long, default_value_t = symrc::DEFAULT_BUDGET)]
    enum_budget: u64,
}

impl EstimatorArgs {
    fn options(&self, memory_budget: usize) -> Result<EstimateOptions> {
        Ok(EstimateOptions {
            backend: self.backend.parse()?,
            pair_algorithm: self.algorithm.parse::<PairAlgorithm>()?,
            crossover: self.crossover,
            memory_budget,
            enumeration_budget: self.enum_budget,
            ..Default::default()
        })
    }
}

#[derive(Args, Debug, Serialize)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    est: EstimatorArgs,
}

#[derive(Args, Debug, Serialize)]
struct TestArgs {
    /// Data file for a permutation test.
    #[arg(long, short, conflicts_with = "generator")]
    input: Option<PathBuf>,
    #[arg(long, default_value = "x:1 y:1")]
    roles: String,
    /// Simulation design for a marginal-reference test instead of a file.
    #[arg(long)]
    generator: Option<String>,
    /// Sample size for --generator.
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    #[command(flatten)]
    est: EstimatorArgs,
    /// Number of reference replicates.
    #[arg(long = "B", default_value_t = 999)]
    b: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug, Serialize)]
struct NullArgs {
    /// taustar, D or R.
    #[arg(long)]
    law: String,
    /// Truncation of the double series.
    #[arg(long = "K", default_value_t = 100)]
    k: usize,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug, Serialize)]
struct PowerArgs {
    /// product-noise, exp-noise, xor2, xor3, mixed-expit, gaussian-indep or gaussian-correlated-y.
    #[arg(long)]
    generator: String,
    /// Noise levels for the noise designs (comma separated).
    #[arg(long, default_value = "0", value_delimiter = ',')]
    sigma: Vec<f64>,
    /// Correlations for gaussian-correlated-y (comma separated).
    #[arg(long, default_value = "0", value_delimiter = ',')]
    rho: Vec<f64>,
    /// Statistics, comma separated.
    #[arg(long, default_value = "D,R,tauP,tauJ", value_delimiter = ',')]
    stats: Vec<String>,
    /// Sample sizes, comma separated.
    #[arg(long, default_value = "50", value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0.05)]
    level: f64,
    #[arg(long = "B", default_value_t = 1000)]
    b: usize,
    /// bank (one marginal reference bank per setting) or permutation (per trial).
    #[arg(long, default_value = "bank")]
    scheme: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "auto")]
    algorithm: String,
}

#[derive(Args, Debug, Serialize)]
struct BenchArgs {
    #[arg(long)]
    stat: String,
    /// Sample sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "64,128,256")]
    n_grid: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Repetitions per cell; the minimum time is reported.
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// Paths to time (default: every path that applies).
    #[arg(long, value_delimiter = ',')]
    paths: Vec<String>,
    /// Maximum tuples for the naive path.
    #[arg(long, default_value_t = symrc::DEFAULT_BUDGET)]
    enum_budget: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug, Serialize)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("symrc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn memory_budget(flag: Option<usize>) -> Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("{BUDGET_ENV}='{v}' is not a byte count"))),
        Err(_) => Ok(DEFAULT_MEMORY_BUDGET),
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(Error::Input("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Error::Internal(e.to_string()))?;
    }
    let budget = memory_budget(cli.memory_budget)?;
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Compute(a) => compute(a, budget, out, cli.format.unwrap_or(Format::Json)),
        Command::Test(a) => test(a, budget, out, cli.format.unwrap_or(Format::Json)),
        Command::NullSample(a) => null_sample(a, out, cli.format.unwrap_or(Format::Csv)),
        Command::Power(a) => power(a, budget, out, cli.format.unwrap_or(Format::Csv)),
        Command::Bench(a) => bench(a, budget, out, cli.format.unwrap_or(Format::Csv)),
        Command::Rank(a) => rank(a, out),
    }
}

fn exact_string(v: &Exact) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

#[derive(Serialize)]
struct ComputeRow {
    statistic: String,
    n: usize,
    r: usize,
    s: usize,
    value: f64,
    value_exact: String,
    algorithm: String,
    backend: String,
    queries: u64,
    index_bytes: usize,
    build_seconds: f64,
    total_seconds: f64,
}

fn compute(a: &ComputeArgs, budget: usize, out: Option<&Path>, format: Format) -> Result<()> {
    let roles = Roles::parse(&a.input.roles)?;
    let data = ingest_csv(&a.input.input, &roles)?;
    let stat = Statistic::from_name(&a.est.stat)?;
    let e = estimate(&stat, &data, &a.est.options(budget)?)?;
    let d = &e.diagnostics;
    let row = ComputeRow {
        statistic: d.statistic.clone(),
        n: d.n,
        r: d.r,
        s: d.s,
        value: e.value_f64(),
        value_exact: exact_string(&e.value),
        algorithm: d.algorithm.clone(),
        backend: d.backend.map(|b| b.to_string()).unwrap_or_else(|| "none".into()),
        queries: d.queries,
        index_bytes: d.index_bytes,
        build_seconds: d.build_seconds,
        total_seconds: d.total_seconds,
    };
    let meta = Meta::new("compute", 0, a)?;
    match format {
        Format::Json => write_json(out, &meta, &row),
        Format::Csv => write_csv(out, &meta, &[], &[row]),
    }
}

#[derive(Serialize)]
struct ReferenceRow {
    replicate: usize,
    value: f64,
}

fn test(a: &TestArgs, budget: usize, out: Option<&Path>, format: Format) -> Result<()> {
    let stat = Statistic::from_name(&a.est.stat)?;
    let opts = a.est.options(budget)?;
    let result = match (&a.input, &a.generator) {
        (Some(path), None) => {
            let data = ingest_csv(path, &Roles::parse(&a.roles)?)?;
            permutation_test(&data, &stat, a.b, a.seed, &opts)?
        }
        (None, Some(g)) => {
            let g = Generator::from_name(g, a.sigma, a.rho)?;
            marginal_reference_test(&g, &stat, a.b, a.n, a.seed, &opts)?.0
        }
        _ => return Err(Error::Input("give exactly one of --input or --generator".into())),
    };
    let meta = Meta::new("test", a.seed, a)?;
    match format {
        Format::Json => write_json(out, &meta, &result),
        Format::Csv => {
            let extra = vec![
                ("statistic".to_string(), result.statistic.clone()),
                ("method".into(), result.method.clone()),
                ("observed".into(), result.observed.to_string()),
                ("observed_exact".into(), result.observed_exact.clone()),
                ("p_value".into(), result.p_value.to_string()),
                ("raw_proportion".into(), result.raw_proportion.to_string()),
            ];
            let rows: Vec<ReferenceRow> =
                result.reference.iter().enumerate().map(|(replicate, &value)| ReferenceRow { replicate, value }).collect();
            write_csv(out, &meta, &extra, &rows)
        }
    }
}

#[derive(Serialize)]
struct NullRow {
    draw: usize,
    z: f64,
}

fn null_sample(a: &NullArgs, out: Option<&Path>, format: Format) -> Result<()> {
    let spec = NullLawSpec::new(a.k, NullScale::from_law(&a.law)?)?;
    let draws = sample_null_z(&spec, a.count, a.seed)?;
    let meta = Meta::new("null-sample", a.seed, a)?;
    let extra = vec![
        ("scale".to_string(), spec.scale.value().to_string()),
        ("tail_variance_bound".into(), spec.tail_variance().to_string()),
        ("limit_variance".into(), spec.variance().to_string()),
    ];
    match format {
        Format::Csv => {
            let rows: Vec<NullRow> = draws.iter().enumerate().map(|(draw, &z)| NullRow { draw, z }).collect();
            write_csv(out, &meta, &extra, &rows)
        }
        Format::Json => write_json(
            out,
            &meta,
            &serde_json::json!({
                "scale": spec.scale.value(),
                "tail_variance_bound": spec.tail_variance(),
                "limit_variance": spec.variance(),
                "draws": draws,
            }),
        ),
    }
}

fn power(a: &PowerArgs, budget: usize, out: Option<&Path>, format: Format) -> Result<()> {
    let stats = a.stats.iter().map(|s| Statistic::from_name(s.trim())).collect::<Result<Vec<_>>>()?;
    let opts = PowerOptions {
        b: a.b,
        scheme: a.scheme.parse::<ReferenceScheme>()?,
        estimate: EstimateOptions {
            memory_budget: budget,
            pair_algorithm: a.algorithm.parse()?,
            ..Default::default()
        },
    };
    let mut rows = Vec::new();
    for &sigma in &a.sigma {
        for &rho in &a.rho {
            let g = Generator::from_name(&a.generator, sigma, rho)?;
            for &n in &a.n {
                rows.extend(power_sim(&g, &stats, n, a.trials, a.level, a.seed, &opts)?);
            }
        }
    }
    let meta = Meta::new("power", a.seed, a)?;
    match format {
        Format::Csv => write_csv(out, &meta, &[], &rows),
        Format::Json => write_json(out, &meta, &rows),
    }
}

#[derive(Serialize)]
struct BenchRow {
    statistic: String,
    n: usize,
    r: usize,
    s: usize,
    path: String,
    algorithm: String,
    backend: String,
    status: String,
    seconds: Option<f64>,
    value: Option<f64>,
    agrees: Option<bool>,
}

fn bench_paths(stat: &Statistic) -> Vec<&'static str> {
    match stat {
        Statistic::D | Statistic::R => vec!["naive", "scan", "tensor", "tree"],
        Statistic::TauP | Statistic::TauJ | Statistic::TauStar => vec!["naive", "definition", "pair-tree"],
        _ => vec!["naive"],
    }
}

fn bench(a: &BenchArgs, budget: usize, out: Option<&Path>, format: Format) -> Result<()> {
    let stat = Statistic::from_name(&a.stat)?;
    let paths: Vec<String> = if a.paths.is_empty() {
        bench_paths(&stat).into_iter().map(String::from).collect()
    } else {
        a.paths.clone()
    };
    let g = Generator::GaussianIndep { r: a.r, s: a.s };
    let mut rows = Vec::new();
    for &n in &a.n_grid {
        let data: Dataset = g.sample(n, &mut substream(a.seed, Domain::Observed, n as u64))?;
        let mut reference: Option<Exact> = None;
        for path in &paths {
            let opts = match path.as_str() {
                "naive" => EstimateOptions {
                    enumeration_budget: a.enum_budget,
                    ..Default::default()
                },
                "scan" | "tensor" | "tree" => EstimateOptions {
                    backend: path.parse::<Backend>()?,
                    memory_budget: budget,
                    ..Default::default()
                },
                "definition" => EstimateOptions { pair_algorithm: PairAlgorithm::Definition, ..Default::default() },
                "pair-tree" => EstimateOptions {
                    pair_algorithm: PairAlgorithm::Tree,
                    memory_budget: budget,
                    ..Default::default()
                },
                other => return Err(Error::Input(format!("unknown bench path '{other}'"))),
            };
            let mut best: Option<(f64, symrc::fast::Estimate)> = None;
            let mut failure = None;
            for _ in 0..a.reps.max(1) {
                let t = Instant::now();
                let res = if path == "naive" {
                    naive_estimate(&stat, &data, &opts)
                } else {
                    estimate(&stat, &data, &opts)
                };
                match res {
                    Ok(e) => {
                        let secs = t.elapsed().as_secs_f64();
                        if best.as_ref().is_none_or(|(b, _)| secs < *b) {
                            best = Some((secs, e));
                        }
                    }
                    Err(e @ Error::Capacity(_)) => {
                        failure = Some(format!("skipped: {e}"));
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            rows.push(match best {
                Some((secs, e)) => {
                    let agrees = match &reference {
                        Some(v) => Some(*v == e.value),
                        None => {
                            reference = Some(e.value);
                            None
                        }
                    };
                    BenchRow {
                        statistic: stat.name(),
                        n,
                        r: a.r,
                        s: a.s,
                        path: path.clone(),
                        algorithm: e.diagnostics.algorithm.clone(),
                        backend: e.diagnostics.backend.map(|b| b.to_string()).unwrap_or_else(|| "none".into()),
                        status: "ok".into(),
                        seconds: Some(secs),
                        value: Some(to_f64(&e.value)),
                        agrees,
                    }
                }
                None => BenchRow {
                    statistic: stat.name(),
                    n,
                    r: a.r,
                    s: a.s,
                    path: path.clone(),
                    algorithm: String::new(),
                    backend: String::new(),
                    status: failure.unwrap_or_default(),
                    seconds: None,
                    value: None,
                    agrees: None,
                },
            });
        }
    }
    if rows.iter().any(|r| r.agrees == Some(false)) {
        return Err(Error::Internal("bench paths disagree on a value".into()));
    }
    let meta = Meta::new("bench", a.seed, a)?;
    match format {
        Format::Csv => write_csv(out, &meta, &[], &rows),
        Format::Json => write_json(out, &meta, &rows),
    }
}

/// The generic enumeration estimator, reported through the same type.
fn naive_estimate(stat: &Statistic, data: &Dataset, opts: &EstimateOptions) -> Result<symrc::fast::Estimate> {
    let t = Instant::now();
    let value = match stat {
        Statistic::Spearman => symrc::u_stat_naive_with_budget(&symrc::spearman_ssrc()?, data, opts.enumeration_budget)?,
        _ => symrc::u_stat_naive_with_budget(&stat.spec(data.r(), data.s())?, data, opts.enumeration_budget)?,
    };
    Ok(symrc::fast::Estimate {
        value,
        diagnostics: symrc::fast::Diagnostics {
            statistic: stat.name(),
            algorithm: "naive".into(),
            backend: None,
            n: data.n(),
            r: data.r(),
            s: data.s(),
            build_seconds: 0.0,
            total_seconds: t.elapsed().as_secs_f64(),
            queries: 0,
            index_bytes: 0,
        },
    })
}

fn rank(a: &RankArgs, out: Option<&Path>) -> Result<()> {
    let roles = Roles::parse(&a.input.roles)?;
    let data = ingest_csv(&a.input.input, &roles)?;
    let names = selected_names(&a.input.input, &roles)?;
    let rp = data.rank_points();
    let meta = Meta::new("rank", 0, a)?;
    let d = rp.d();
    let rows: Vec<Vec<u32>> = (0..rp.n).map(|i| rp.point(i).to_vec()).collect();
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(&names).map_err(|e| Error::Internal(e.to_string()))?;
        for row in &rows {
            w.write_record(row.iter().take(d).map(|v| v.to_string())).map_err(|e| Error::Internal(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Internal(e.to_string()))?;
    }
    let extra = vec![("roles".to_string(), format!("x:{} y:{}", rp.r, rp.s))];
    let text = String::from_utf8(buf).map_err(|e| Error::Internal(e.to_string()))?;
    output::write_raw(out, &meta, &extra, &text)
}

//! Command-line front end. Every invocation is turned into an
//! [`ExperimentConfig`] first, so a saved config replays the same run.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arcs::{classify, ArcParameters};
use crate::arith::{cached_sieve, dirichlet_convolve, ArithFn, ArithmeticTable, Values};
use crate::dynsys::{mobius_weighted, weighted_average, write_average_csv, AverageSeries, DynamicalSystem, Observable};
use crate::error::{param, Error, Result};
use crate::expsum::{
    divisor_expsum_batch, divisor_expsum_direct, divisor_expsum_hyperbola, rational_scan, write_expsum_csv,
    write_rational_csv, ExpSumResult,
};
use crate::kernels::{approx_error, approx_error_rows, write_approx_csv, ApproximantKernel, ModelForm};
use crate::numeric::{fmt_f64, Frequency};
use crate::shiftmodel::{
    cesaro_maximal_constant, divisor_oscillation_certified, dyadic_maximal, hardy_littlewood_bound,
    random_nonnegative_signal, random_sign_signal, write_shift_csv, ShiftRow, WeightFamily, CORPUS_SEED,
};
use crate::verify::{run_checks, CHECK_IDS, QUICK_IDS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "ergw",
    version,
    about = "Divisor-weighted exponential sums, arc approximants and ergodic averages"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Run the experiment stored in this JSON config instead of the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the resolved config to this path before running.
    #[arg(long, global = true)]
    pub save_config: Option<PathBuf>,
    /// Seed for random corpora and seeded systems.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output path (standard output when omitted).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Tabulate an arithmetic function on 1..=N.
    Sieve(SieveArgs),
    /// Dirichlet convolution a∗b on 1..=N.
    Convolve(ConvolveArgs),
    /// Divisor-weighted exponential sums D_n(x).
    Expsum(ExpsumArgs),
    /// Classify points against the major arcs.
    Arcs(ArcsArgs),
    /// Grid sup of |T_n - φ_n| split by arc type.
    KernelError(KernelErrorArgs),
    /// Dyadic maximal ratios and Hardy-Littlewood constants.
    Maximal(MaximalArgs),
    /// Oscillation sums of divisor kernels.
    Oscillation(OscillationArgs),
    /// Weighted ergodic averages along an orbit.
    ErgodicAvg(ErgodicArgs),
    /// Run the acceptance checks and print a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SieveArgs {
    /// Function name: d, mu, mu_tilde, mu2, lambda, omega, big_omega, theta, delta, one, phi, sigma, jordan, power.
    #[arg(long, default_value = "d")]
    pub weights: String,
    /// Exponent for sigma, jordan and power.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long = "N", default_value_t = 100)]
    pub upper: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ConvolveArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    /// Exponent used by a parametrised operand.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long = "N", default_value_t = 100)]
    pub upper: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SumMethod {
    Direct,
    Hyperbola,
    FftBatch,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ExpsumArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: u64,
    /// Points as decimals or fractions a/q (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub x: Vec<String>,
    /// Evaluate on all j/G instead (fft-batch).
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, value_enum, default_value_t = SumMethod::Hyperbola)]
    pub method: SumMethod,
    /// Scan D_n(a/q) against its main term for all reduced a/q with q <= qmax.
    #[arg(long)]
    pub qmax: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ArcParams {
    #[arg(long = "S", default_value_t = 2.0)]
    pub s: f64,
    #[arg(long, default_value_t = 0.9)]
    pub tau: f64,
    #[arg(long = "M", default_value_t = 4)]
    pub m: u32,
    /// Use the asymptotic P, Q schedule instead of the desk-scale one.
    #[arg(long)]
    pub asymptotic: bool,
}

impl ArcParams {
    fn build(&self, n: u64) -> Result<ArcParameters> {
        if self.asymptotic {
            ArcParameters::asymptotic(n, self.s, self.tau, self.m)
        } else {
            ArcParameters::desk(n, self.s, self.tau, self.m)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ArcsArgs {
    #[arg(long, default_value_t = 1 << 16)]
    pub n: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub arcs: ArcParams,
    /// Points to classify (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub x: Vec<f64>,
    /// Classify every j/G instead.
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct KernelErrorArgs {
    /// Kernel lengths (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = [1024u64, 262144])]
    pub n: Vec<u64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub arcs: ArcParams,
    #[arg(long, default_value_t = 1 << 16)]
    pub grid: usize,
    /// log-scaled or divisor-matched.
    #[arg(long, default_value = "divisor-matched")]
    pub form: String,
    /// Emit every grid point (single n only).
    #[arg(long)]
    pub rows: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct MaximalArgs {
    /// Weights of the dyadic kernels.
    #[arg(long, default_value = "d")]
    pub weights: String,
    #[arg(long, value_delimiter = ',', default_values_t = [1.5f64, 2.0, 3.0])]
    pub p: Vec<f64>,
    #[arg(long, default_value_t = 12)]
    pub kmax: u32,
    /// Signal length.
    #[arg(long = "N", default_value_t = 1024)]
    pub len: usize,
    /// Number of corpus signals.
    #[arg(long, default_value_t = 10)]
    pub signals: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct OscillationArgs {
    #[arg(long, default_value_t = 2.0)]
    pub rho: f64,
    /// Number of blocks N_j = 4^j.
    #[arg(long = "J", default_value_t = 16)]
    pub blocks: usize,
    /// Signal length.
    #[arg(long = "N", default_value_t = 4096)]
    pub len: usize,
    #[arg(long, default_value_t = 1)]
    pub signals: u64,
    /// Divisor table bound; larger blocks use the certified bound.
    #[arg(long, default_value_t = 1 << 19)]
    pub table: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ErgodicArgs {
    /// rotation, doubling or bernoulli.
    #[arg(long, default_value = "rotation")]
    pub system: String,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value = "d")]
    pub weights: String,
    /// Largest n; the grid is 2^k <= n together with n.
    #[arg(long, default_value_t = 1 << 16)]
    pub n: u64,
    #[arg(long, default_value_t = 0.0)]
    pub x0: f64,
    /// character:m, haar, interval:a:b or one.
    #[arg(long, default_value = "character:1")]
    pub observable: String,
    /// Also report Möbius-weighted averages with this power of log n.
    #[arg(long)]
    pub mobius_h: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    /// Run the reduced subset.
    #[arg(long)]
    pub quick: bool,
    /// Run only these check ids (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub check: Vec<String>,
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub command: Command,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Exit codes: 0 success, 1 failure, 2 usage, 3 resource limit.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match resolve(cli).and_then(|cfg| execute(&cfg)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parameter(_) | Error::Precondition(_) => 2,
        Error::Resource(_) => 3,
        _ => 1,
    }
}

fn resolve(cli: Cli) -> Result<ExperimentConfig> {
    let mut cfg = match (&cli.config, cli.command) {
        (Some(path), None) => ExperimentConfig::from_json(&std::fs::read_to_string(path)?)?,
        (Some(_), Some(_)) => return param("give either --config or a subcommand, not both"),
        (None, Some(command)) => ExperimentConfig {
            command,
            seed: CORPUS_SEED,
            out: None,
            format: Format::Csv,
            threads: None,
        },
        (None, None) => return param("a subcommand is required (see --help)"),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if cli.out.is_some() {
        cfg.out = cli.out;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if cli.threads.is_some() {
        cfg.threads = cli.threads;
    }
    if let Some(path) = &cli.save_config {
        std::fs::write(path, cfg.to_json()?)?;
    }
    Ok(cfg)
}

/// Runs a config; `Ok(false)` when `verify` has failing checks.
pub fn execute(cfg: &ExperimentConfig) -> Result<bool> {
    match cfg.threads {
        Some(0) => return param("--threads must be >= 1"),
        Some(t) => {
            // only the first pool of the process can be installed globally
            let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
        }
        None => {}
    }
    let mut out: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let ok = match &cfg.command {
        Command::Sieve(a) => sieve_cmd(a, cfg.format, &mut out).map(|_| true),
        Command::Convolve(a) => convolve_cmd(a, cfg.format, &mut out).map(|_| true),
        Command::Expsum(a) => expsum_cmd(a, cfg.format, &mut out).map(|_| true),
        Command::Arcs(a) => arcs_cmd(a, cfg.format, &mut out).map(|_| true),
        Command::KernelError(a) => kernel_error_cmd(a, cfg.format, &mut out).map(|_| true),
        Command::Maximal(a) => maximal_cmd(a, cfg.seed, cfg.format, &mut out).map(|_| true),
        Command::Oscillation(a) => oscillation_cmd(a, cfg.seed, cfg.format, &mut out).map(|_| true),
        Command::ErgodicAvg(a) => ergodic_cmd(a, cfg.seed, cfg.format, &mut out).map(|_| true),
        Command::Verify(a) => verify_cmd(a, cfg.format, &mut out),
    }?;
    out.flush()?;
    Ok(ok)
}

fn json<W: Write, T: Serialize>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn table_json(t: &ArithmeticTable) -> serde_json::Value {
    let values = match t.storage() {
        Values::Int(v) => serde_json::json!(v[1..]),
        Values::Real(v) => serde_json::json!(v[1..]),
    };
    serde_json::json!({ "function": t.label(), "N": t.len(), "values": values })
}

fn named_table(name: &str, s: Option<f64>, n: usize) -> Result<ArithmeticTable> {
    let needs = matches!(name, "sigma" | "jordan" | "power");
    cached_sieve(ArithFn::from_name(name, if needs { s } else { None })?, n)
}

fn sieve_cmd(a: &SieveArgs, format: Format, out: &mut dyn Write) -> Result<()> {
    let t = cached_sieve(ArithFn::from_name(&a.weights, a.s)?, a.upper)?;
    match format {
        Format::Csv => t.write_csv(out),
        Format::Json => json(&table_json(&t), out),
    }
}

fn convolve_cmd(a: &ConvolveArgs, format: Format, out: &mut dyn Write) -> Result<()> {
    let c = dirichlet_convolve(&named_table(&a.a, a.s, a.upper)?, &named_table(&a.b, a.s, a.upper)?)?;
    match format {
        Format::Csv => c.write_csv(out),
        Format::Json => json(&table_json(&c), out),
    }
}

/// `0.25`, `1/3` or `2/6` (reduced).
pub fn parse_frequency(text: &str) -> Result<Frequency> {
    if let Some((a, q)) = text.split_once('/') {
        let (a, q): (u64, u64) = match (a.trim().parse(), q.trim().parse()) {
            (Ok(a), Ok(q)) if q > 0 => (a, q),
            _ => return param(format!("cannot read the fraction '{text}'")),
        };
        let g = crate::numeric::gcd(a % q, q);
        return Ok(Frequency::ratio((a % q) / g, q / g));
    }
    match text.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(Frequency::Real(x)),
        _ => param(format!("cannot read the point '{text}'")),
    }
}

fn expsum_cmd(a: &ExpsumArgs, format: Format, out: &mut dyn Write) -> Result<()> {
    if let Some(qmax) = a.qmax {
        let rows = rational_scan(&[a.n], qmax)?;
        return match format {
            Format::Csv => write_rational_csv(&rows, out),
            Format::Json => json(&rows, out),
        };
    }
    let rows: Vec<ExpSumResult> = if let Some(g) = a.grid {
        divisor_expsum_batch(&cached_sieve(ArithFn::Divisors, a.n as usize)?, a.n, g)?
    } else {
        if a.x.is_empty() {
            return param("give --x points, --grid or --qmax");
        }
        let d = match a.method {
            SumMethod::Hyperbola => None,
            _ => Some(cached_sieve(ArithFn::Divisors, a.n as usize)?),
        };
        a.x.iter()
            .map(|t| {
                let x = parse_frequency(t)?;
                match (a.method, &d) {
                    (SumMethod::Hyperbola, _) => divisor_expsum_hyperbola(a.n, x),
                    (SumMethod::Direct, Some(d)) => divisor_expsum_direct(d, a.n, x),
                    (_, _) => param("fft-batch evaluates on a grid; use --grid"),
                }
            })
            .collect::<Result<_>>()?
    };
    match format {
        Format::Csv => write_expsum_csv(&rows, out),
        Format::Json => json(&rows, out),
    }
}

fn arcs_cmd(a: &ArcsArgs, format: Format, out: &mut dyn Write) -> Result<()> {
    let params = a.arcs.build(a.n)?;
    let xs: Vec<f64> = match a.grid {
        Some(g) => {
            crate::fourier::check_grid(g)?;
            (0..g).map(|j| j as f64 / g as f64).collect()
        }
        None if a.x.is_empty() => return param("give --x points or --grid"),
        None => a.x.clone(),
    };
    let rows: Vec<_> = xs.iter().map(|&x| classify(x, &params)).collect();
    match format {
        Format::Csv => crate::arcs::write_classification_csv(&rows, &params, out),
        Format::Json => json(&serde_json::json!({ "parameters": params, "points": rows }), out),
    }
}

fn kernel_error_cmd(a: &KernelErrorArgs, format: Format, out: &mut dyn Write) -> Result<()> {
    let form: ModelForm = a.form.parse()?;
    let n_max =
        a.n.iter()
            .copied()
            .max()
            .ok_or_else(|| Error::Parameter("--n is empty".into()))?;
    let d = cached_sieve(ArithFn::Divisors, n_max as usize)?;
    if a.rows {
        if a.n.len() != 1 {
            return param("--rows needs a single --n");
        }
        let kernel = ApproximantKernel::new(a.arcs.build(a.n[0])?, form);
        let (report, rows) = approx_error_rows(&d, &kernel, a.grid)?;
        return match format {
            Format::Csv => write_approx_csv(report.n, &rows, out),
            Format::Json => json(&report, out),
        };
    }
    let reports =
        a.n.iter()
            .map(|&n| approx_error(&d, &ApproximantKernel::new(a.arcs.build(n)?, form), a.grid))
            .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => json(&reports, out),
        Format::Csv => {
            writeln!(
                out,
                "n,S,tau,M,P,Q,grid,top_band,sup_major,sup_minor,sup_total,normalized"
            )?;
            for r in &reports {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    fmt_f64(r.s),
                    fmt_f64(r.tau),
                    r.m,
                    r.p,
                    r.q,
                    r.grid,
                    r.top_band,
                    fmt_f64(r.sup_major),
                    fmt_f64(r.sup_minor),
                    fmt_f64(r.sup_total),
                    fmt_f64(r.normalized)
                )?;
            }
            Ok(())
        }
    }
}

fn shift_rows(rows: &[ShiftRow], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => write_shift_csv(rows, out),
        Format::Json => json(&rows, out),
    }
}

fn maximal_cmd(a: &MaximalArgs, seed: u64, format: Format, out: &mut dyn Write) -> Result<()> {
    if a.signals == 0 || a.len == 0 {
        return param("need at least one signal of positive length");
    }
    if a.kmax > 30 {
        return Err(Error::Resource(format!(
            "kmax = {} needs a table of 2^{} entries",
            a.kmax, a.kmax
        )));
    }
    let table = named_table(&a.weights, None, 1usize << a.kmax)?;
    let family = WeightFamily::new(&table);
    let mut rows = Vec::new();
    for &p in &a.p {
        for k in 1..=a.kmax {
            let mut worst = 0.0f64;
            for i in 0..a.signals {
                worst = worst.max(dyadic_maximal(&family, &random_sign_signal(seed, i, a.len), k, p)?.ratio);
            }
            rows.push(ShiftRow {
                experiment: format!("dyadic-{}", a.weights),
                p,
                n_or_k: k as u64,
                ratio: worst,
            });
        }
        let mut worst = 0.0f64;
        for i in 0..a.signals {
            worst = worst.max(cesaro_maximal_constant(&random_nonnegative_signal(seed, i, a.len), p)?);
        }
        rows.push(ShiftRow {
            experiment: "hardy-littlewood".into(),
            p,
            n_or_k: a.len as u64,
            ratio: worst,
        });
        rows.push(ShiftRow {
            experiment: "hardy-littlewood-bound".into(),
            p,
            n_or_k: a.len as u64,
            ratio: hardy_littlewood_bound(p),
        });
    }
    shift_rows(&rows, format, out)
}

fn oscillation_cmd(a: &OscillationArgs, seed: u64, format: Format, out: &mut dyn Write) -> Result<()> {
    if a.blocks == 0 || a.blocks > 30 {
        return param("J must lie in 1..=30");
    }
    let d = cached_sieve(ArithFn::Divisors, a.table)?;
    let blocks: Vec<u64> = (1..=a.blocks as u32 + 1).map(|j| 1u64 << (2 * j)).collect();
    let mut rows = Vec::new();
    for i in 0..a.signals {
        let g = random_sign_signal(seed, i, a.len);
        let r = divisor_oscillation_certified(&d, &g, &blocks, a.rho, 1 << 18)?;
        for (j, t) in r.terms.iter().enumerate() {
            let tag = if t.exact { "exact" } else { "bound" };
            rows.push(ShiftRow {
                experiment: format!("oscillation-squared-{tag}/{i}"),
                p: 2.0,
                n_or_k: j as u64 + 1,
                ratio: r.normalized_squared[j],
            });
            rows.push(ShiftRow {
                experiment: format!("oscillation-{tag}/{i}"),
                p: 2.0,
                n_or_k: j as u64 + 1,
                ratio: r.normalized[j],
            });
        }
    }
    shift_rows(&rows, format, out)
}

/// `character:m`, `haar`, `interval:a:b`, `one`.
pub fn parse_observable(text: &str) -> Result<Observable> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::Parameter(format!("bad number '{s}' in '{text}'")))
    };
    match parts.as_slice() {
        ["character", m] => Ok(Observable::Character {
            m: m.parse()
                .map_err(|_| Error::Parameter(format!("bad frequency in '{text}'")))?,
        }),
        ["haar"] => Ok(Observable::HaarStep),
        ["one"] => Ok(Observable::constant(1.0)),
        ["interval", a, b] => Ok(Observable::Interval { a: num(a)?, b: num(b)? }),
        _ => param(format!("unknown observable '{text}'")),
    }
}

fn ergodic_cmd(a: &ErgodicArgs, seed: u64, format: Format, out: &mut dyn Write) -> Result<()> {
    let system = DynamicalSystem::from_name(&a.system, a.alpha, Some(seed))?;
    let f = parse_observable(&a.observable)?;
    if a.n == 0 {
        return param("n must be >= 1");
    }
    let mut grid: Vec<u64> = std::iter::successors(Some(1u64), |k| k.checked_mul(2))
        .take_while(|&k| k < a.n)
        .collect();
    grid.push(a.n);
    let weights = named_table(&a.weights, None, a.n as usize)?;
    let mut series = vec![weighted_average(&system, &weights, &f, a.x0, &grid)?];
    if let Some(h) = a.mobius_h {
        let mu = cached_sieve(ArithFn::Mobius, a.n as usize)?;
        let m = mobius_weighted(&system, &mu, h, &f, a.x0, &grid)?;
        series.push(AverageSeries {
            system: system.name().into(),
            weights: format!("mobius-h{h}"),
            n_grid: m.n_grid,
            values: m.values,
            normalizers: grid.iter().map(|&n| n as f64).collect(),
        });
    }
    match format {
        Format::Csv => write_average_csv(&series, out),
        Format::Json => json(&series, out),
    }
}

fn verify_cmd(a: &VerifyArgs, format: Format, out: &mut dyn Write) -> Result<bool> {
    let ids: Vec<&str> = if !a.check.is_empty() {
        a.check.iter().map(|s| s.as_str()).collect()
    } else if a.quick {
        QUICK_IDS.to_vec()
    } else {
        CHECK_IDS.to_vec()
    };
    let mut outcomes = Vec::new();
    for id in ids {
        let o = run_checks(&[id], a.quick)?.remove(0);
        if format == Format::Csv {
            writeln!(out, "{}", o.line())?;
            out.flush()?;
        }
        outcomes.push(o);
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    match format {
        Format::Csv => writeln!(out, "{passed}/{} checks passed", outcomes.len())?,
        Format::Json => json(&outcomes, &mut *out)?,
    }
    Ok(passed == outcomes.len())
}

//! Command-line front end.
//!
//! Exit codes: 0 on success (including scans with flagged rows), 2 for
//! invalid input, 3 when an internal cross-check fails or a scan row with a
//! proven `k` fails the census, 1 for I/O trouble.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::arith::PairMN;
use crate::kernel::{numerator_oracle, series_kernel, KernelError, KernelRational};
use crate::luqikeng::{scan, scan_rows_to_csv, DomainPoint, ScanOptions, WitnessError, ZeroWitness};
use crate::palindrome::{q_poly, PalindromeError};
use crate::rootloc::{interior_root_count, numeric_roots, RootCensus};

pub const WORKERS_ENV: &str = "HARTOGS_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "hartogs", version, about = "Bergman kernels of rational Hartogs triangles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; defaults to csv for `scan` and text otherwise.
    #[arg(long, global = true, value_enum)]
    pub output_format: Option<OutputFormat>,

    /// Write to this file instead of stdout. The file only appears once the
    /// output is complete.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel numerator P(s,t) and the denominator.
    Kernel {
        #[command(flatten)]
        pair: PairArgs,
        /// Check the numerator against the brute-force double sum first.
        #[arg(long)]
        verify: bool,
    },
    /// Diagonal restriction Q(s).
    Qpoly {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Root census of Q relative to the unit circle.
    Roots {
        #[command(flatten)]
        pair: PairArgs,
        /// Residual tolerance for the float roots attached to the census.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Census of Q over all coprime pairs with m <= m_max.
    Scan {
        #[arg(long)]
        m_max: u64,
        /// Only pairs with m - n = k.
        #[arg(long)]
        k: Option<u64>,
        /// Worker threads. HARTOGS_WORKERS takes precedence when set.
        #[arg(long)]
        workers: Option<usize>,
        /// Write 0 for elapsed_ms so output is byte-stable.
        #[arg(long)]
        no_timing: bool,
    },
    /// Points z, w in the domain with K(z, w) = 0.
    Witness {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Kernel at (z, w), in closed form and by the truncated series.
    Eval {
        #[command(flatten)]
        pair: PairArgs,
        /// re(z1) im(z1) re(z2) im(z2)
        #[arg(long, num_args = 4, allow_negative_numbers = true, required = true)]
        z: Vec<f64>,
        /// re(w1) im(w1) re(w2) im(w2)
        #[arg(long, num_args = 4, allow_negative_numbers = true, required = true)]
        w: Vec<f64>,
        #[arg(long, default_value_t = 400)]
        cutoff: u32,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Internal(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<PalindromeError> for CliError {
    fn from(e: PalindromeError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::Kernel(k) => k.into(),
            WitnessError::NoInteriorRoot(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory and an atomic rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn pair_of(p: PairArgs) -> Result<PairMN, CliError> {
    PairMN::new(p.m, p.n).map_err(|e| CliError::Invalid(e.to_string()))
}

fn point(v: &[f64]) -> DomainPoint {
    DomainPoint::new(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))
}

fn workers_override(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w > 0 => Ok(Some(w)),
            _ => Err(CliError::Invalid(format!("{WORKERS_ENV} must be a positive integer (got {v:?})"))),
        },
        Err(_) => {
            if flag == Some(0) {
                return Err(CliError::Invalid("--workers must be positive".into()));
            }
            Ok(flag)
        }
    }
}

/// Result of a command: the rendered output plus an optional error to
/// report after the output has been written.
pub struct Outcome {
    pub output: String,
    pub deferred: Option<CliError>,
}

impl From<String> for Outcome {
    fn from(output: String) -> Self {
        Outcome { output, deferred: None }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let fmt = cli.output_format;
    let text = fmt.unwrap_or(OutputFormat::Text);
    match &cli.command {
        Command::Kernel { pair, verify } => cmd_kernel(pair_of(*pair)?, *verify, text).map(Into::into),
        Command::Qpoly { pair } => cmd_qpoly(pair_of(*pair)?, text).map(Into::into),
        Command::Roots { pair, tol } => cmd_roots(pair_of(*pair)?, *tol, text).map(Into::into),
        Command::Scan {
            m_max,
            k,
            workers,
            no_timing,
        } => {
            let opts = ScanOptions {
                m_max: *m_max,
                k_filter: *k,
                workers: workers_override(*workers)?,
                timing: !no_timing,
            };
            cmd_scan(&opts, fmt.unwrap_or(OutputFormat::Csv))
        }
        Command::Witness { pair } => cmd_witness(pair_of(*pair)?, text).map(Into::into),
        Command::Eval { pair, z, w, cutoff } => {
            cmd_eval(pair_of(*pair)?, &point(z), &point(w), *cutoff, text).map(Into::into)
        }
    }
}

/// Parses, runs and writes; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.output {
        Some(path) => write_atomic(path, outcome.output.as_bytes()),
        None => std::io::stdout().lock().write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {}", CliError::Io(e));
        return 1;
    }
    match outcome.deferred {
        Some(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        None => 0,
    }
}

pub fn cmd_kernel(pair: PairMN, verify: bool, fmt: OutputFormat) -> Result<String, CliError> {
    let k = KernelRational::new(pair);
    if verify {
        if k.numerator != numerator_oracle(pair) {
            return Err(CliError::Internal(format!("numerator for {pair} disagrees with the double sum")));
        }
        let expected = 4 * pair.m() as usize - 3;
        if k.numerator.num_terms() != expected {
            return Err(CliError::Internal(format!(
                "numerator for {pair} has {} terms, expected {expected}",
                k.numerator.num_terms()
            )));
        }
    }
    Ok(match fmt {
        OutputFormat::Json => json(&k),
        OutputFormat::Csv => csv_string(
            &["deg_s", "deg_t", "coeff"],
            k.numerator
                .terms()
                .map(|((i, j), c)| vec![i.to_string(), j.to_string(), c.to_string()]),
        ),
        OutputFormat::Text => format!(
            "P(s,t) = {}\nK = P(s,t) / ({})\n",
            k.numerator,
            k.denominator_string()
        ),
    })
}

pub fn cmd_qpoly(pair: PairMN, fmt: OutputFormat) -> Result<String, CliError> {
    let q = q_poly(pair)?;
    Ok(match fmt {
        OutputFormat::Json => json(&q.to_json()),
        OutputFormat::Csv => csv_string(
            &["degree", "coeff"],
            q.poly
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), c.to_string()]),
        ),
        OutputFormat::Text => format!("Q(s) = {}\n", q.poly),
    })
}

#[derive(Serialize)]
struct RootsJson<'a> {
    m: u64,
    n: u64,
    degree: usize,
    #[serde(flatten)]
    census: &'a RootCensus,
}

pub fn cmd_roots(pair: PairMN, tol: f64, fmt: OutputFormat) -> Result<String, CliError> {
    let q = q_poly(pair)?;
    let mut census = interior_root_count(&q.poly).map_err(|e| CliError::Internal(e.to_string()))?;
    census = match numeric_roots(&q.poly, tol) {
        Ok(roots) => census.with_float_roots(roots),
        Err(e) => {
            census.warnings.push(format!("float roots unavailable: {e}"));
            census
        }
    };
    for w in &census.warnings {
        eprintln!("warning: {w}");
    }
    let method = serde_json::to_value(census.method).expect("serializable");
    let method = method.as_str().unwrap_or_default().to_string();
    Ok(match fmt {
        OutputFormat::Json => json(&RootsJson {
            m: pair.m(),
            n: pair.n(),
            degree: census.degree(),
            census: &census,
        }),
        OutputFormat::Csv => csv_string(
            &["m", "n", "degree", "inside", "on_circle", "outside", "method"],
            [vec![
                pair.m().to_string(),
                pair.n().to_string(),
                census.degree().to_string(),
                census.inside.to_string(),
                census.on_circle.to_string(),
                census.outside.to_string(),
                method,
            ]],
        ),
        OutputFormat::Text => {
            let mut s = format!(
                "inside={} on={} outside={} method={method}\n",
                census.inside, census.on_circle, census.outside
            );
            for r in census.float_roots.iter().flatten() {
                let _ = writeln!(s, "  {:+.15e} {:+.15e}i  |s|={:.12}", r.value.re, r.value.im, r.value.norm());
            }
            s
        }
    })
}

pub fn cmd_scan(opts: &ScanOptions, fmt: OutputFormat) -> Result<Outcome, CliError> {
    if opts.m_max < 2 {
        return Err(CliError::Invalid("--m-max must be at least 2".into()));
    }
    let rows = scan(opts).map_err(|e| CliError::Internal(e.to_string()))?;
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("warning: ({},{}): {}", r.m, r.n, r.error.as_deref().unwrap_or_default());
    }
    let output = match fmt {
        OutputFormat::Json => json(&rows),
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            scan_rows_to_csv(&rows, &mut buf).map_err(|e| CliError::Internal(e.to_string()))?;
            String::from_utf8(buf).expect("utf8")
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(
                    s,
                    "({},{}) k={} circle={} inside={} {}",
                    r.m,
                    r.n,
                    r.k,
                    r.circle_count,
                    r.interior_count,
                    if r.conjecture_holds { "ok" } else { "FLAGGED" }
                );
            }
            let flagged = rows.iter().filter(|r| !r.conjecture_holds).count();
            let _ = writeln!(s, "{} pairs, {flagged} flagged", rows.len());
            s
        }
    };
    let proven: Vec<String> = rows
        .iter()
        .filter(|r| r.is_proven_violation())
        .map(|r| format!("({},{})", r.m, r.n))
        .collect();
    let deferred = (!proven.is_empty())
        .then(|| CliError::Internal(format!("census fails for proven k at {}", proven.join(" "))));
    Ok(Outcome { output, deferred })
}

fn witness_csv_row(w: &ZeroWitness) -> Vec<String> {
    [
        w.s0.re, w.s0.im, w.z.z1.re, w.z.z1.im, w.z.z2.re, w.z.z2.im, w.w.z1.re, w.w.z1.im, w.w.z2.re,
        w.w.z2.im, w.residual, w.margin,
    ]
    .iter()
    .map(|x| format!("{x:e}"))
    .fold(vec![w.pair.m().to_string(), w.pair.n().to_string()], |mut acc, x| {
        acc.push(x);
        acc
    })
}

pub fn cmd_witness(pair: PairMN, fmt: OutputFormat) -> Result<String, CliError> {
    let ws = crate::luqikeng::zero_witnesses(pair)?;
    Ok(match fmt {
        OutputFormat::Json => json(&ws),
        OutputFormat::Csv => csv_string(
            &[
                "m", "n", "s0_re", "s0_im", "z1_re", "z1_im", "z2_re", "z2_im", "w1_re", "w1_im", "w2_re",
                "w2_im", "residual", "margin",
            ],
            ws.iter().map(witness_csv_row),
        ),
        OutputFormat::Text => {
            let mut s = String::new();
            for w in &ws {
                let _ = writeln!(
                    s,
                    "s0 = {:+.15e} {:+.15e}i\n  z = ({}, {})\n  w = ({}, {})\n  |K(z,w)| = {:e}  margin = {:e}",
                    w.s0.re, w.s0.im, w.z.z1, w.z.z2, w.w.z1, w.w.z2, w.residual, w.margin
                );
            }
            s
        }
    })
}

#[derive(Serialize)]
struct EvalJson {
    m: u64,
    n: u64,
    closed_form: Complex64,
    series: Complex64,
    tail_bound: f64,
    terms: usize,
    relative_difference: f64,
}

pub fn cmd_eval(
    pair: PairMN,
    z: &DomainPoint,
    w: &DomainPoint,
    cutoff: u32,
    fmt: OutputFormat,
) -> Result<String, CliError> {
    let closed = KernelRational::new(pair).eval(z, w)?;
    let series = series_kernel(pair, z, w, cutoff)?;
    let rel = (closed - series.value).norm() / closed.norm();
    let out = EvalJson {
        m: pair.m(),
        n: pair.n(),
        closed_form: closed,
        series: series.value,
        tail_bound: series.tail_bound,
        terms: series.terms,
        relative_difference: rel,
    };
    Ok(match fmt {
        OutputFormat::Json => json(&out),
        OutputFormat::Csv => csv_string(
            &[
                "m", "n", "closed_re", "closed_im", "series_re", "series_im", "tail_bound", "terms",
                "relative_difference",
            ],
            [vec![
                out.m.to_string(),
                out.n.to_string(),
                format!("{:e}", closed.re),
                format!("{:e}", closed.im),
                format!("{:e}", series.value.re),
                format!("{:e}", series.value.im),
                format!("{:e}", series.tail_bound),
                series.terms.to_string(),
                format!("{rel:e}"),
            ]],
        ),
        OutputFormat::Text => format!(
            "K(z,w) = {closed}\nseries  = {} ({} terms, tail <= {:e})\nrelative difference = {rel:e}\n",
            series.value, series.terms, series.tail_bound
        ),
    })
}

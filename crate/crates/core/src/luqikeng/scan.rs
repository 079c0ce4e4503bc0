//! Circle and disc census of `Q_{m,n}` over all coprime pairs up to a bound.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::PairMN;
use crate::palindrome::q_poly;
use crate::rootloc::interior_root_count;

/// Values of `k = m - n` for which the census result is known to hold.
pub const PROVEN_K: [u64; 5] = [1, 2, 3, 4, 6];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub degree: u64,
    pub circle_count: usize,
    pub interior_count: usize,
    pub conjecture_holds: bool,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ScanRow {
    /// A failed row for a `k` in [`PROVEN_K`].
    pub fn is_proven_violation(&self) -> bool {
        !self.conjecture_holds && PROVEN_K.contains(&self.k)
    }
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub m_max: u64,
    pub k_filter: Option<u64>,
    /// `None` uses rayon's default pool size.
    pub workers: Option<usize>,
    /// Record wall time per pair; off gives byte-stable output.
    pub timing: bool,
}

impl ScanOptions {
    pub fn new(m_max: u64) -> Self {
        ScanOptions {
            m_max,
            k_filter: None,
            workers: None,
            timing: true,
        }
    }
}

fn scan_pair(pair: PairMN, timing: bool) -> ScanRow {
    let start = Instant::now();
    let k = pair.k();
    let result = q_poly(pair)
        .map_err(|e| e.to_string())
        .and_then(|q| interior_root_count(&q.poly).map_err(|e| e.to_string()));
    let elapsed_ms = if timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    let mut row = ScanRow {
        m: pair.m(),
        n: pair.n(),
        k,
        degree: 2 * k,
        circle_count: 0,
        interior_count: 0,
        conjecture_holds: false,
        elapsed_ms,
        error: None,
    };
    match result {
        Ok(c) => {
            row.circle_count = c.on_circle;
            row.interior_count = c.inside;
            row.conjecture_holds = c.on_circle == 0 && c.inside as u64 == k;
        }
        Err(e) => row.error = Some(e),
    }
    row
}

/// Rows in `(m, n)` order, independent of the number of workers.
pub fn scan(opts: &ScanOptions) -> Result<Vec<ScanRow>, rayon::ThreadPoolBuildError> {
    let pairs: Vec<PairMN> = PairMN::all_up_to(opts.m_max)
        .filter(|p| opts.k_filter.is_none_or(|k| p.k() == k))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = opts.workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder.build()?;
    let mut rows: Vec<ScanRow> =
        pool.install(|| pairs.par_iter().map(|&p| scan_pair(p, opts.timing)).collect());
    rows.sort_by_key(|r| (r.m, r.n));
    Ok(rows)
}

/// Header `m,n,k,degree,circle_count,interior_count,conjecture_holds,elapsed_ms`.
/// Error messages are not part of the CSV.
pub fn scan_rows_to_csv<W: Write>(rows: &[ScanRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "m",
        "n",
        "k",
        "degree",
        "circle_count",
        "interior_count",
        "conjecture_holds",
        "elapsed_ms",
    ])?;
    for r in rows {
        w.write_record([
            r.m.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            r.degree.to_string(),
            r.circle_count.to_string(),
            r.interior_count.to_string(),
            r.conjecture_holds.to_string(),
            format!("{:.3}", r.elapsed_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

//! Exhaustive searches for `2n^2 = sigma(q^a)` and `n^2 = sigma(q^b)` over
//! prime `q` in a range.
//!
//! The q-range is cut into fixed-width shards. Shards are scanned in waves
//! (in parallel when the `parallel` feature is on and `worker_count > 1`) and
//! merged in ascending order, so the report never depends on the worker
//! count. After each wave the coordinator may write a checkpoint; a resumed
//! run yields byte-identical output.

mod checkpoint;
mod record;

use std::path::PathBuf;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime_u64, isqrt_exact, Natural};
use crate::jsonl;
use crate::par::ordered_map;
use crate::{Error, Result};

pub(crate) use checkpoint::write_atomic;
pub use checkpoint::{checkpoint_resume, checkpoint_save, load_checkpoint, Checkpoint, Progress};
pub use record::{SearchSummary, SolutionRecord, Split};

/// Integers per shard.
pub const SHARD_WIDTH: u64 = 2048;

/// Which divisor-sum equation a search targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Equation {
    /// `2n^2 = sigma(q^alpha)`.
    TwoNSquared,
    /// `n^2 = sigma(q^beta)`.
    NSquared,
}

impl Equation {
    pub fn name(self) -> &'static str {
        match self {
            Equation::TwoNSquared => "TWO_N_SQUARED",
            Equation::NSquared => "N_SQUARED",
        }
    }
}

fn one_worker() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub equation: Equation,
    pub q_min: u64,
    pub q_max: u64,
    pub alpha_min: u32,
    pub alpha_max: u32,
    /// Keep only `q = r (mod 4)`, `r` in `{1, 3}`.
    pub residue_filter: Option<u8>,
    #[serde(skip, default = "one_worker")]
    pub worker_count: usize,
    #[serde(skip)]
    pub checkpoint_path: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            equation: Equation::TwoNSquared,
            q_min: 3,
            q_max: 50_000,
            alpha_min: 1,
            alpha_max: 25,
            residue_filter: None,
            worker_count: 1,
            checkpoint_path: None,
        }
    }
}

impl SearchConfig {
    pub fn new(equation: Equation, q_min: u64, q_max: u64, alpha_min: u32, alpha_max: u32) -> Self {
        Self {
            equation,
            q_min,
            q_max,
            alpha_min,
            alpha_max,
            ..Self::default()
        }
    }

    pub fn residue(mut self, r: u8) -> Self {
        self.residue_filter = Some(r);
        self
    }

    pub fn workers(mut self, n: usize) -> Self {
        self.worker_count = n;
        self
    }

    pub fn checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint_path = Some(path.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.q_min > self.q_max {
            return Err(Error::pre(format!(
                "q_min {} exceeds q_max {}",
                self.q_min, self.q_max
            )));
        }
        if self.alpha_min == 0 {
            // sigma(q^0) = 1 = 1^2 would be a degenerate hit for every q
            return Err(Error::pre("alpha_min must be >= 1"));
        }
        if self.alpha_min > self.alpha_max {
            return Err(Error::pre(format!(
                "alpha_min {} exceeds alpha_max {}",
                self.alpha_min, self.alpha_max
            )));
        }
        if let Some(r) = self.residue_filter {
            if r != 1 && r != 3 {
                return Err(Error::pre(format!(
                    "residue filter must be 1 or 3, got {r}"
                )));
            }
        }
        if self.q_max == u64::MAX {
            return Err(Error::pre("q_max must be below u64::MAX"));
        }
        if self.worker_count == 0 {
            return Err(Error::pre("worker_count must be positive"));
        }
        Ok(())
    }

    /// Hash of everything that determines the output. Worker count and
    /// checkpoint location are excluded.
    pub fn config_hash(&self) -> String {
        jsonl::short_hash(&self.canonical())
    }

    fn canonical(&self) -> String {
        let residue = self
            .residue_filter
            .map_or_else(|| "any".to_string(), |r| r.to_string());
        format!(
            "equation={};q=[{},{}];alpha=[{},{}];q_mod4={}",
            self.equation.name(),
            self.q_min,
            self.q_max,
            self.alpha_min,
            self.alpha_max,
            residue
        )
    }

    fn admits(&self, q: u64) -> bool {
        self.residue_filter.is_none_or(|r| q % 4 == u64::from(r))
    }
}

/// Coverage counters. `scanned_pairs + skipped_even_alpha` equals
/// `scanned_primes * (alpha_max - alpha_min + 1)` for a complete run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub scanned_primes: u64,
    pub scanned_pairs: u64,
    pub skipped_even_alpha: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.scanned_primes += other.scanned_primes;
        self.scanned_pairs += other.scanned_pairs;
        self.skipped_even_alpha += other.skipped_even_alpha;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub records: Vec<SolutionRecord>,
    pub stats: SearchStats,
    /// Largest prime whose whole alpha range has been scanned.
    pub last_completed_prime: Option<u64>,
    /// Next q to scan.
    pub next_q: u64,
    pub complete: bool,
}

impl SearchReport {
    pub fn summary(&self) -> SearchSummary {
        SearchSummary {
            equation: self.config.equation,
            config_hash: self.config.config_hash(),
            scanned_primes: self.stats.scanned_primes,
            scanned_pairs: self.stats.scanned_pairs,
            skipped_even_alpha: self.stats.skipped_even_alpha,
            hits: self.records.len() as u64,
            complete: self.complete,
        }
    }

    /// One line per record, then the summary line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&jsonl::to_line(r));
            out.push('\n');
        }
        out.push_str(&jsonl::to_line(&self.summary()));
        out.push('\n');
        out
    }

    /// Records that a nonexistence theorem rules out.
    pub fn violations(&self) -> Vec<&SolutionRecord> {
        self.records
            .iter()
            .filter(|r| r.contradicts_theorem())
            .collect()
    }

    /// True when every `(q, alpha)` of every scanned prime was accounted for.
    pub fn fully_covered(&self) -> bool {
        let width = u64::from(self.config.alpha_max - self.config.alpha_min + 1);
        self.complete
            && self.stats.scanned_pairs + self.stats.skipped_even_alpha
                == self.stats.scanned_primes * width
    }
}

/// A search that stopped early. `partial` holds everything merged so far.
#[derive(Debug, thiserror::Error)]
#[error("{error}")]
pub struct SearchError {
    #[source]
    pub error: Error,
    pub partial: Option<Box<SearchReport>>,
}

impl From<Error> for SearchError {
    fn from(error: Error) -> Self {
        Self {
            error,
            partial: None,
        }
    }
}

/// Run-time knobs that do not change the result.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchControl {
    /// Stop (as if interrupted) after the wave that covers this q.
    pub halt_after_q: Option<u64>,
}

/// Finds every `(q, alpha, n)` with `2n^2 = sigma(q^alpha)`, with the
/// factor split attached to each hit.
pub fn search_two_n_squared(cfg: &SearchConfig) -> Result<Vec<SolutionRecord>, SearchError> {
    if cfg.equation != Equation::TwoNSquared {
        return Err(Error::pre("config equation is not TWO_N_SQUARED").into());
    }
    Ok(run_search(cfg)?.records)
}

/// Finds every `(q, beta, n)` with `n^2 = sigma(q^beta)`.
pub fn search_n_squared(cfg: &SearchConfig) -> Result<Vec<SolutionRecord>, SearchError> {
    if cfg.equation != Equation::NSquared {
        return Err(Error::pre("config equation is not N_SQUARED").into());
    }
    Ok(run_search(cfg)?.records)
}

pub fn run_search(cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    run_search_with(cfg, SearchControl::default())
}

pub fn run_search_with(
    cfg: &SearchConfig,
    control: SearchControl,
) -> Result<SearchReport, SearchError> {
    cfg.validate()?;
    let progress = match &cfg.checkpoint_path {
        Some(path) => checkpoint_resume(path, cfg)?,
        None => Progress::fresh(cfg),
    };
    let mut report = SearchReport {
        config: cfg.clone(),
        records: progress.hits,
        stats: progress.stats,
        last_completed_prime: progress.last_completed_prime,
        next_q: progress.cursor,
        complete: false,
    };
    let mut start = progress.cursor;
    let wave_len = SHARD_WIDTH * 4 * cfg.worker_count as u64;

    while start <= cfg.q_max {
        let wave_end = start.saturating_add(wave_len - 1).min(cfg.q_max);
        let shards: Vec<(u64, u64)> = (start..=wave_end)
            .step_by(SHARD_WIDTH as usize)
            .map(|lo| (lo, lo.saturating_add(SHARD_WIDTH - 1).min(wave_end)))
            .collect();
        let results = ordered_map(shards, cfg.worker_count, |(lo, hi)| scan_shard(cfg, lo, hi));
        for shard in results {
            match shard {
                Ok(shard) => {
                    report.records.extend(shard.hits);
                    report.stats.absorb(&shard.stats);
                    if shard.last_prime.is_some() {
                        report.last_completed_prime = shard.last_prime;
                    }
                }
                Err(error) => {
                    return Err(SearchError {
                        error,
                        partial: Some(Box::new(report)),
                    })
                }
            }
        }
        start = wave_end + 1;
        report.next_q = start;
        let done = start > cfg.q_max;
        report.complete = done;
        if let Some(path) = &cfg.checkpoint_path {
            if let Err(error) = checkpoint_save(path, &Checkpoint::from_report(&report)) {
                return Err(SearchError {
                    error,
                    partial: Some(Box::new(report)),
                });
            }
        }
        if !done && control.halt_after_q.is_some_and(|h| wave_end >= h) {
            return Ok(report);
        }
    }
    report.complete = true;
    Ok(report)
}

struct ShardResult {
    hits: Vec<SolutionRecord>,
    stats: SearchStats,
    last_prime: Option<u64>,
}

fn scan_shard(cfg: &SearchConfig, lo: u64, hi: u64) -> Result<ShardResult> {
    let mut out = ShardResult {
        hits: Vec::new(),
        stats: SearchStats::default(),
        last_prime: None,
    };
    for q in lo..=hi {
        if !cfg.admits(q) || !is_prime_u64(q) {
            continue;
        }
        scan_prime(cfg, q, &mut out)?;
        out.stats.scanned_primes += 1;
        out.last_prime = Some(q);
    }
    Ok(out)
}

fn scan_prime(cfg: &SearchConfig, q: u64, out: &mut ShardResult) -> Result<()> {
    // sigma(q^alpha) accumulated one power at a time
    let mut power = BigUint::one();
    let mut sum = BigUint::one();
    for alpha in 1..=cfg.alpha_max {
        power *= q;
        sum += &power;
        if alpha < cfg.alpha_min {
            continue;
        }
        match cfg.equation {
            Equation::TwoNSquared => {
                if alpha % 2 == 0 {
                    // sigma(q^alpha) is odd: q odd with an odd number of odd terms, or q = 2
                    out.stats.skipped_even_alpha += 1;
                    continue;
                }
                out.stats.scanned_pairs += 1;
                if sum.is_odd() {
                    continue;
                }
                if let Some(n) = isqrt_exact(&(&sum >> 1u32)) {
                    let split = split_solution(q, alpha, &n)?;
                    out.hits.push(SolutionRecord {
                        equation: cfg.equation,
                        q,
                        alpha,
                        n,
                        split: Some(split),
                    });
                }
            }
            Equation::NSquared => {
                out.stats.scanned_pairs += 1;
                if let Some(n) = isqrt_exact(&sum) {
                    out.hits.push(SolutionRecord {
                        equation: cfg.equation,
                        q,
                        alpha,
                        n,
                        split: None,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Splits a solution of `2n^2 = sigma(q^alpha)`, `alpha` odd, into coprime
/// `n1, n2` with `(q - 1) n1^2 = q^m - 1`, `2 n2^2 = q^m + 1`, `n1 n2 = n`,
/// where `m = (alpha + 1) / 2`.
///
/// Any failure of these identities is a [`Error::Consistency`].
pub fn split_solution(q: u64, alpha: u32, n: &Natural) -> Result<Split> {
    if alpha.is_multiple_of(2) {
        return Err(Error::pre(format!("alpha = {alpha} is even")));
    }
    if q < 3 {
        return Err(Error::pre(format!("q = {q} must be an odd prime")));
    }
    let qb = BigUint::from(q);
    let sigma = crate::arith::sigma_prime_power(&qb, alpha)?;
    if (n * n) << 1u32 != sigma {
        return Err(Error::pre(format!("2 * {n}^2 != sigma({q}^{alpha})")));
    }
    let m = alpha.div_ceil(2);
    let qm = qb.pow(m);
    let (n1_sq, r1) = (&qm - 1u32).div_rem(&(&qb - 1u32));
    let (n2_sq, r2) = (&qm + 1u32).div_rem(&BigUint::from(2u32));
    if !r1.is_zero() || !r2.is_zero() {
        return Err(Error::Consistency(format!(
            "q^{m} -+ 1 not divisible by q - 1 and 2 for q = {q}"
        )));
    }
    let n1 = isqrt_exact(&n1_sq).ok_or_else(|| {
        Error::Consistency(format!(
            "(q^{m} - 1)/(q - 1) = {n1_sq} is not a square for q = {q}, alpha = {alpha}"
        ))
    })?;
    let n2 = isqrt_exact(&n2_sq).ok_or_else(|| {
        Error::Consistency(format!(
            "(q^{m} + 1)/2 = {n2_sq} is not a square for q = {q}, alpha = {alpha}"
        ))
    })?;
    if !gcd(&n1, &n2).is_one() || &n1 * &n2 != *n {
        return Err(Error::Consistency(format!(
            "split ({n1}, {n2}) of n = {n} is not a coprime factorization"
        )));
    }
    Ok(Split { n1, n2 })
}

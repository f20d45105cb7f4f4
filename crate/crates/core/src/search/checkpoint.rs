//! Checkpoint files: one JSON object, rewritten atomically after each wave.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{SearchConfig, SearchReport, SearchStats, SolutionRecord};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub config_hash: String,
    pub last_completed_prime: Option<u64>,
    pub partial_hits: Vec<SolutionRecord>,
    /// Next q to scan; everything below it is done.
    pub cursor: u64,
    #[serde(flatten)]
    pub stats: SearchStats,
    pub config: SearchConfig,
}

impl Checkpoint {
    pub fn from_report(report: &SearchReport) -> Self {
        Self {
            config_hash: report.config.config_hash(),
            last_completed_prime: report.last_completed_prime,
            partial_hits: report.records.clone(),
            cursor: report.next_q,
            stats: report.stats,
            config: report.config.clone(),
        }
    }

    fn check(&self, path: &Path) -> Result<()> {
        let corrupt = |reason: &str| Error::CorruptCheckpoint {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        };
        if self.config.validate().is_err() {
            return Err(corrupt("stored config is invalid"));
        }
        if self.config.config_hash() != self.config_hash {
            return Err(corrupt("config_hash does not match stored config"));
        }
        let cfg = &self.config;
        if self.cursor < cfg.q_min || self.cursor > cfg.q_max + 1 {
            return Err(corrupt("cursor outside the configured q range"));
        }
        if self
            .last_completed_prime
            .is_some_and(|p| p >= self.cursor || p < cfg.q_min)
        {
            return Err(corrupt("last_completed_prime is not below the cursor"));
        }
        let ordered = self
            .partial_hits
            .windows(2)
            .all(|w| (w[0].q, w[0].alpha) < (w[1].q, w[1].alpha));
        let in_range = self
            .partial_hits
            .iter()
            .all(|h| h.equation == cfg.equation && h.q >= cfg.q_min && h.q < self.cursor);
        if !ordered || !in_range {
            return Err(corrupt("partial hits are out of order or out of range"));
        }
        Ok(())
    }
}

/// Where a search stands: everything below `cursor` is merged into `hits` and `stats`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Progress {
    pub cursor: u64,
    pub last_completed_prime: Option<u64>,
    pub hits: Vec<SolutionRecord>,
    pub stats: SearchStats,
}

impl Progress {
    pub fn fresh(cfg: &SearchConfig) -> Self {
        Self {
            cursor: cfg.q_min,
            last_completed_prime: None,
            hits: Vec::new(),
            stats: SearchStats::default(),
        }
    }
}

/// Writes the checkpoint through a temporary file and a rename.
pub fn checkpoint_save(path: &Path, cp: &Checkpoint) -> Result<()> {
    write_atomic(
        path,
        &serde_json::to_string(cp).expect("checkpoint serializes"),
    )
}

pub(crate) fn write_atomic(path: &Path, body: &str) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, body).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

/// Reads and validates a checkpoint. The file is never modified.
pub fn load_checkpoint(path: &Path) -> Result<Checkpoint> {
    let body = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let cp: Checkpoint = serde_json::from_str(&body).map_err(|e| Error::CorruptCheckpoint {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    cp.check(path)?;
    Ok(cp)
}

/// Progress for `cfg` stored at `path`, or a fresh start when no file exists.
pub fn checkpoint_resume(path: &Path, cfg: &SearchConfig) -> Result<Progress> {
    if !path.exists() {
        return Ok(Progress::fresh(cfg));
    }
    let cp = load_checkpoint(path)?;
    let expected = cfg.config_hash();
    if cp.config_hash != expected {
        return Err(Error::ConfigMismatch {
            path: path.to_path_buf(),
            expected,
            found: cp.config_hash,
        });
    }
    Ok(Progress {
        cursor: cp.cursor,
        last_completed_prime: cp.last_completed_prime,
        hits: cp.partial_hits,
        stats: cp.stats,
    })
}

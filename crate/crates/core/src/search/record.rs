use serde::{Deserialize, Serialize};

use super::Equation;
use crate::arith::Natural;

/// `n = n1 * n2` from the factor-splitting step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub n1: Natural,
    pub n2: Natural,
}

/// One hit of a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RecordLine", try_from = "RecordLine")]
pub struct SolutionRecord {
    pub equation: Equation,
    pub q: u64,
    pub alpha: u32,
    pub n: Natural,
    pub split: Option<Split>,
}

impl SolutionRecord {
    /// A hit ruled out by a nonexistence theorem: any `q = 1 (mod 4)` hit
    /// of `n^2 = sigma(q^b)`, or one with `alpha > 1` for `2n^2 = sigma(q^a)`.
    pub fn contradicts_theorem(&self) -> bool {
        self.q % 4 == 1
            && match self.equation {
                Equation::NSquared => true,
                Equation::TwoNSquared => self.alpha > 1,
            }
    }
}

// wire form: {equation, q, alpha, n, n1, n2}
#[derive(Serialize, Deserialize)]
struct RecordLine {
    equation: Equation,
    q: u64,
    alpha: u32,
    #[serde(with = "crate::jsonl::natural")]
    n: Natural,
    #[serde(with = "crate::jsonl::natural_opt")]
    n1: Option<Natural>,
    #[serde(with = "crate::jsonl::natural_opt")]
    n2: Option<Natural>,
}

impl From<SolutionRecord> for RecordLine {
    fn from(r: SolutionRecord) -> Self {
        let (n1, n2) = match r.split {
            Some(Split { n1, n2 }) => (Some(n1), Some(n2)),
            None => (None, None),
        };
        Self {
            equation: r.equation,
            q: r.q,
            alpha: r.alpha,
            n: r.n,
            n1,
            n2,
        }
    }
}

impl TryFrom<RecordLine> for SolutionRecord {
    type Error = String;

    fn try_from(l: RecordLine) -> Result<Self, String> {
        let split = match (l.n1, l.n2) {
            (Some(n1), Some(n2)) => Some(Split { n1, n2 }),
            (None, None) => None,
            _ => return Err("n1 and n2 must both be present or both null".into()),
        };
        Ok(Self {
            equation: l.equation,
            q: l.q,
            alpha: l.alpha,
            n: l.n,
            split,
        })
    }
}

/// Final line of a search report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub equation: Equation,
    pub config_hash: String,
    pub scanned_primes: u64,
    pub scanned_pairs: u64,
    pub skipped_even_alpha: u64,
    pub hits: u64,
    pub complete: bool,
}

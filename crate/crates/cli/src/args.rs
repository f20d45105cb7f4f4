use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

/// Exhaustive searches, certificates and classification around odd perfect numbers.
#[derive(Debug, Parser)]
#[command(name = "oddperfect", version)]
pub struct Cli {
    /// Output format: human-readable text or JSON Lines.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for searches and sieves.
    #[arg(long, value_parser = parse_positive, global = true)]
    pub jobs: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search prime ranges for 2n^2 = sigma(q^a) or n^2 = sigma(q^b).
    Search(SearchArgs),
    /// 2-adic certificates for the final step of the 2n^2 = sigma(q^a) argument.
    Certify(CertifyArgs),
    /// Abundancy, Euler form, DHP decomposition and 2-adic bookkeeping.
    Classify(ClassifyArgs),
    /// Check the trace, binomial-ratio and gcd identities over ranges.
    Identity(IdentityArgs),
    /// Product of sigma(p^2) over the first COUNT odd primes.
    Bound(BoundArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquationArg {
    /// 2n^2 = sigma(q^alpha)
    #[value(name = "2nsq", alias = "two-n-squared")]
    TwoNSquared,
    /// n^2 = sigma(q^beta)
    #[value(name = "nsq", alias = "n-squared")]
    NSquared,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value = "2nsq")]
    pub equation: EquationArg,
    #[arg(long, value_parser = parse_u64, default_value = "3")]
    pub q_min: u64,
    #[arg(long, value_parser = parse_u64, default_value = "50_000")]
    pub q_max: u64,
    /// Keep only primes q congruent to this residue mod 4.
    #[arg(long = "q-mod4", value_parser = parse_residue)]
    pub q_mod4: Option<u8>,
    #[arg(long, value_parser = parse_u32, default_value = "1")]
    pub alpha_min: u32,
    #[arg(long, value_parser = parse_u32, default_value = "25")]
    pub alpha_max: u32,
    /// Checkpoint file; defaults to a file under $ODDPERFECT_CHECKPOINT_DIR when set.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[arg(long, env = "ODDPERFECT_CHECKPOINT_DIR", hide_env_values = true)]
    pub checkpoint_dir: Option<PathBuf>,
    /// Stop after the wave covering this q, leaving a checkpoint behind.
    #[arg(long, value_parser = parse_u64, hide = true)]
    pub halt_after_q: Option<u64>,
    /// Append a fabricated hit Q:ALPHA:N before the theorem check.
    #[arg(long, value_parser = parse_fake_hit, hide = true)]
    pub inject_hit: Vec<(u64, u32, BigUint)>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").args(["q", "q_max"]).required(true)))]
pub struct CertifyArgs {
    /// Single prime q = 1 (mod 4).
    #[arg(long, value_parser = parse_big, requires = "alpha")]
    pub q: Option<BigUint>,
    /// Single odd exponent alpha >= 3.
    #[arg(long, value_parser = parse_u32)]
    pub alpha: Option<u32>,
    /// Sweep every prime q = 1 (mod 4) up to this bound.
    #[arg(long, value_parser = parse_u64, conflicts_with = "q")]
    pub q_max: Option<u64>,
    /// Sweep every odd alpha in [3, ALPHA_MAX].
    #[arg(long, value_parser = parse_u32, default_value = "101")]
    pub alpha_max: u32,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").args(["n", "dhp_scan", "multiperfect", "odd_scan"]).required(true)))]
pub struct ClassifyArgs {
    /// Classify a single integer.
    #[arg(long, value_parser = parse_big)]
    pub n: Option<BigUint>,
    /// List multiperfect n <= LIMIT with a DHP decomposition.
    #[arg(long)]
    pub dhp_scan: bool,
    /// List all n <= LIMIT with integer abundancy.
    #[arg(long)]
    pub multiperfect: bool,
    /// List odd n <= LIMIT with integer abundancy.
    #[arg(long)]
    pub odd_scan: bool,
    #[arg(long, value_parser = parse_u64, default_value = "1_000_000")]
    pub limit: u64,
    /// Checkpoint file for --dhp-scan.
    #[arg(long, requires = "dhp_scan")]
    pub checkpoint: Option<PathBuf>,
    #[arg(long, env = "ODDPERFECT_CHECKPOINT_DIR", hide_env_values = true)]
    pub checkpoint_dir: Option<PathBuf>,
    /// Stop after the wave covering this n, leaving a checkpoint behind.
    #[arg(long, value_parser = parse_u64, hide = true, requires = "dhp_scan")]
    pub halt_after_n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    /// Trace expansion: exponents 1..=M_MAX.
    #[arg(long, value_parser = parse_u32, default_value = "60")]
    pub m_max: u32,
    /// Trace expansion: d = 1 - q for primes q <= Q_MAX.
    #[arg(long, value_parser = parse_u64, default_value = "200")]
    pub q_max: u64,
    /// Binomial ratio identity: 4 <= m <= RATIO_M_MAX.
    #[arg(long, value_parser = parse_u64, default_value = "200")]
    pub ratio_m_max: u64,
    /// gcd(q^m - 1, q^m + 1) = 2 for odd q <= GCD_Q_MAX.
    #[arg(long, value_parser = parse_u64, default_value = "1000")]
    pub gcd_q_max: u64,
    #[arg(long, value_parser = parse_u32, default_value = "50")]
    pub gcd_m_max: u32,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_parser = parse_u32, default_value = "8")]
    pub count: u32,
}

/// Decimal digits with optional `_` separators. No signs, exponents or points.
fn digits(s: &str) -> Result<String, String> {
    let cleaned: String = s.chars().filter(|&c| c != '_').collect();
    if cleaned.is_empty() || !cleaned.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!(
            "`{s}` is not a decimal integer (digits and `_` only)"
        ));
    }
    Ok(cleaned)
}

pub fn parse_u64(s: &str) -> Result<u64, String> {
    digits(s)?.parse().map_err(|e| format!("`{s}`: {e}"))
}

pub fn parse_u32(s: &str) -> Result<u32, String> {
    digits(s)?.parse().map_err(|e| format!("`{s}`: {e}"))
}

pub fn parse_big(s: &str) -> Result<BigUint, String> {
    digits(s)?.parse().map_err(|e| format!("`{s}`: {e}"))
}

fn parse_positive(s: &str) -> Result<u64, String> {
    match parse_u64(s)? {
        0 => Err("must be positive".into()),
        n => Ok(n),
    }
}

fn parse_residue(s: &str) -> Result<u8, String> {
    match parse_u64(s)? {
        1 => Ok(1),
        3 => Ok(3),
        r => Err(format!("residue must be 1 or 3, got {r}")),
    }
}

fn parse_fake_hit(s: &str) -> Result<(u64, u32, BigUint), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [q, a, n] = parts.as_slice() else {
        return Err("expected Q:ALPHA:N".into());
    };
    Ok((parse_u64(q)?, parse_u32(a)?, parse_big(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_flags_accept_underscores_only() {
        assert_eq!(parse_u64("50_000"), Ok(50_000));
        assert_eq!(parse_u64("1_000_000"), Ok(1_000_000));
        assert!(parse_u64("5e4").is_err());
        assert!(parse_u64("-3").is_err());
        assert!(parse_u64("1.5").is_err());
        assert!(parse_u64("_").is_err());
        assert!(parse_u64("+7").is_err());
        assert_eq!(
            parse_big("36_163_554_870_725_919"),
            Ok(BigUint::from(36_163_554_870_725_919u64))
        );
    }
}

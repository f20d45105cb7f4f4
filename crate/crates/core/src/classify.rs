//! Classification of integers by divisor sum: abundancy, multiperfect
//! enumeration, the Euler form of odd perfect candidates, the
//! Dandapat–Hunsucker–Pomerance (DHP) decomposition `N = m q^a` with
//! `sigma(m) = q^a`, and 2-adic bookkeeping of `sigma(n)` for odd `n`.

use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    factorize, isqrt_exact, primes_up_to, sigma, sigma_prime_power, v2, Factorization, Natural,
};
use crate::par::ordered_map;
use crate::search::write_atomic;
use crate::{Error, Result};

/// `sigma(n)` and the integer abundancy `k = sigma(n) / n`, when it exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abundancy {
    #[serde(with = "crate::jsonl::natural")]
    pub sigma: Natural,
    #[serde(with = "crate::jsonl::natural_opt")]
    pub k: Option<Natural>,
}

pub fn abundancy(n: &Natural) -> Result<Abundancy> {
    if n.is_zero() {
        return Err(Error::pre("abundancy needs n >= 1"));
    }
    let s = sigma(&factorize(n)?);
    Ok(abundancy_from_sigma(n, s))
}

fn abundancy_from_sigma(n: &Natural, s: Natural) -> Abundancy {
    let (k, r) = s.div_rem(n);
    Abundancy {
        sigma: s,
        k: r.is_zero().then_some(k),
    }
}

/// Block length for the segmented divisor-sum sieve.
const SIEVE_BLOCK: u64 = 1 << 16;

/// Upper limit accepted by the sieve; keeps every `sigma(n)` inside `u64`.
pub const SIEVE_LIMIT: u64 = 1 << 50;

/// Segmented multiplicative sieve: `sigma(n)` for every `n` in `[lo, hi)`.
fn sigma_block(lo: u64, hi: u64, base_primes: &[u64]) -> Vec<u64> {
    let len = (hi - lo) as usize;
    let mut rem: Vec<u64> = (lo..hi).collect();
    let mut sig = vec![1u64; len];
    for &p in base_primes {
        if p * p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut j = first;
        while j < hi {
            let idx = (j - lo) as usize;
            let mut r = rem[idx];
            let mut term = 1u64;
            let mut sum = 1u64;
            loop {
                r /= p;
                term *= p;
                sum += term;
                if !r.is_multiple_of(p) {
                    break;
                }
            }
            rem[idx] = r;
            sig[idx] *= sum;
            j += p;
        }
    }
    for (s, &r) in sig.iter_mut().zip(&rem) {
        if r > 1 {
            *s *= r + 1;
        }
    }
    sig
}

fn check_sieve_limit(limit: u64) -> Result<()> {
    if limit > SIEVE_LIMIT {
        return Err(Error::pre(format!(
            "sieve limit {limit} exceeds {SIEVE_LIMIT}"
        )));
    }
    Ok(())
}

/// Runs `visit` on every block of `sigma` values over `[1, limit]` and
/// concatenates the per-block results in ascending order.
fn sieve_scan<R, F>(limit: u64, workers: usize, visit: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(u64, &[u64]) -> Vec<R> + Sync + Send,
{
    check_sieve_limit(limit)?;
    if limit == 0 {
        return Ok(Vec::new());
    }
    let base = primes_up_to(Roots::sqrt(&limit) + 1);
    Ok(sieve_range(1, limit, &base, workers, visit))
}

/// `sieve_scan` restricted to `[lo, hi]`; `base` must cover `sqrt(hi)`.
fn sieve_range<R, F>(lo: u64, hi: u64, base: &[u64], workers: usize, visit: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64, &[u64]) -> Vec<R> + Sync + Send,
{
    let blocks: Vec<(u64, u64)> = (0..)
        .map(|i| lo + i * SIEVE_BLOCK)
        .take_while(|&b| b <= hi)
        .map(|b| (b, (b + SIEVE_BLOCK).min(hi + 1)))
        .collect();
    let parts = ordered_map(blocks, workers, |(b, e)| {
        let sig = sigma_block(b, e, base);
        visit(b, &sig)
    });
    parts.into_iter().flatten().collect()
}

/// `sigma(n)` for every `n` in `[1, limit]`.
pub fn sigma_table(limit: u64, workers: usize) -> Result<Vec<u64>> {
    sieve_scan(limit, workers, |_, sig| sig.to_vec())
}

/// A multiply perfect number with `sigma(n) = k n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiperfect {
    pub n: u64,
    pub k: u64,
}

/// All `n <= limit` with integer abundancy, ascending.
pub fn enumerate_multiperfect(limit: u64, workers: usize) -> Result<Vec<Multiperfect>> {
    if limit == 0 {
        return Err(Error::pre("enumerate_multiperfect needs limit >= 1"));
    }
    sieve_scan(limit, workers, |lo, sig| {
        sig.iter()
            .enumerate()
            .filter_map(|(i, &s)| {
                let n = lo + i as u64;
                (s % n == 0).then_some(Multiperfect { n, k: s / n })
            })
            .collect()
    })
}

/// Odd `n <= limit` whose abundancy is an integer. Only `1` is expected.
pub fn odd_multiperfect_scan(limit: u64, workers: usize) -> Result<Vec<u64>> {
    sieve_scan(limit, workers, |lo, sig| {
        sig.iter()
            .enumerate()
            .filter_map(|(i, &s)| {
                let n = lo + i as u64;
                (n % 2 == 1 && s % n == 0).then_some(n)
            })
            .collect()
    })
}

/// `n = m q^alpha` with `q^alpha || n` and `sigma(m) = q^alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DhpDecomposition {
    #[serde(with = "crate::jsonl::natural")]
    pub m: Natural,
    #[serde(with = "crate::jsonl::natural")]
    pub q: Natural,
    pub alpha: u32,
}

/// Scans the unitary prime-power divisors of `n` by ascending prime and
/// returns the first with `sigma(n / q^alpha) = q^alpha`.
pub fn dhp_decompose(n: &Natural) -> Result<Option<DhpDecomposition>> {
    if *n < BigUint::from(2u32) {
        return Err(Error::pre("dhp_decompose needs n >= 2"));
    }
    let f = factorize(n)?;
    Ok(dhp_from_factorization(n, &f))
}

fn dhp_from_factorization(n: &Natural, f: &Factorization) -> Option<DhpDecomposition> {
    f.iter().find_map(|(q, alpha)| {
        let qa = q.pow(alpha);
        let m = n / &qa;
        let rest = Factorization::from_pairs(
            f.iter()
                .filter(|(p, _)| *p != q)
                .map(|(p, e)| (p.clone(), e))
                .collect(),
        )
        .ok()?;
        (sigma(&rest) == qa).then(|| DhpDecomposition {
            m,
            q: q.clone(),
            alpha,
        })
    })
}

/// Multiperfect `n` in `[2, limit]` admitting a DHP decomposition.
pub fn dhp_scan(limit: u64, workers: usize) -> Result<Vec<(u64, DhpDecomposition)>> {
    Ok(dhp_scan_with(limit, workers, None, None)?.hits)
}

/// Outcome of a possibly interrupted DHP scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhpScan {
    pub limit: u64,
    pub hits: Vec<(u64, DhpDecomposition)>,
    /// Next n to scan.
    pub cursor: u64,
    pub complete: bool,
}

/// Checkpoint file for [`dhp_scan_with`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DhpCheckpoint {
    pub config_hash: String,
    pub limit: u64,
    pub cursor: u64,
    pub hits: Vec<(u64, DhpDecomposition)>,
}

/// Identifies a DHP scan configuration; worker count does not enter.
pub fn dhp_config_hash(limit: u64) -> String {
    crate::jsonl::short_hash(&format!("classify;dhp_scan;limit={limit}"))
}

/// DHP scan in waves of sieve blocks. With a checkpoint path, progress is
/// resumed from and saved to that file after every wave. `halt_after` stops
/// early once a wave has passed that n.
pub fn dhp_scan_with(
    limit: u64,
    workers: usize,
    checkpoint: Option<&Path>,
    halt_after: Option<u64>,
) -> Result<DhpScan> {
    if limit < 2 {
        return Err(Error::pre("dhp_scan needs limit >= 2"));
    }
    if workers == 0 {
        return Err(Error::pre("worker count must be positive"));
    }
    check_sieve_limit(limit)?;
    let mut scan = match checkpoint {
        Some(path) if path.exists() => load_dhp_checkpoint(path, limit)?,
        _ => DhpScan {
            limit,
            hits: Vec::new(),
            cursor: 1,
            complete: false,
        },
    };
    let base = primes_up_to(Roots::sqrt(&limit) + 1);
    let wave_len = SIEVE_BLOCK * 4 * workers as u64;
    while scan.cursor <= limit {
        let lo = scan.cursor;
        let hi = lo.saturating_add(wave_len - 1).min(limit);
        let found = sieve_range(lo, hi, &base, workers, |b, sig| {
            sig.iter()
                .enumerate()
                .filter_map(|(i, &s)| {
                    let n = b + i as u64;
                    (n >= 2 && s % n == 0).then_some(n)
                })
                .collect()
        });
        for n in found {
            if let Some(dec) = dhp_decompose(&BigUint::from(n))? {
                scan.hits.push((n, dec));
            }
        }
        scan.cursor = hi + 1;
        scan.complete = scan.cursor > limit;
        if let Some(path) = checkpoint {
            let cp = DhpCheckpoint {
                config_hash: dhp_config_hash(limit),
                limit,
                cursor: scan.cursor,
                hits: scan.hits.clone(),
            };
            write_atomic(
                path,
                &serde_json::to_string(&cp).expect("checkpoint serializes"),
            )?;
        }
        if !scan.complete && halt_after.is_some_and(|h| hi >= h) {
            return Ok(scan);
        }
    }
    scan.complete = true;
    Ok(scan)
}

fn load_dhp_checkpoint(path: &Path, limit: u64) -> Result<DhpScan> {
    let corrupt = |reason: String| Error::CorruptCheckpoint {
        path: path.to_path_buf(),
        reason,
    };
    let body = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let cp: DhpCheckpoint = serde_json::from_str(&body).map_err(|e| corrupt(e.to_string()))?;
    if cp.config_hash != dhp_config_hash(cp.limit) {
        return Err(corrupt("config_hash does not match stored limit".into()));
    }
    let expected = dhp_config_hash(limit);
    if cp.config_hash != expected {
        return Err(Error::ConfigMismatch {
            path: path.to_path_buf(),
            expected,
            found: cp.config_hash,
        });
    }
    let ordered = cp.hits.windows(2).all(|w| w[0].0 < w[1].0);
    if cp.cursor < 1
        || cp.cursor > limit + 1
        || !ordered
        || cp.hits.iter().any(|h| h.0 >= cp.cursor)
    {
        return Err(corrupt("cursor or hits out of range".into()));
    }
    Ok(DhpScan {
        limit,
        complete: cp.cursor > limit,
        hits: cp.hits,
        cursor: cp.cursor,
    })
}

/// `n = n0^2 q^alpha` with `q` prime, `q` not dividing `n0`, `q = alpha = 1 (mod 4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerForm {
    #[serde(with = "crate::jsonl::natural")]
    pub n0: Natural,
    #[serde(with = "crate::jsonl::natural")]
    pub q: Natural,
    pub alpha: u32,
}

pub fn euler_form(n: &Natural) -> Result<Option<EulerForm>> {
    if n.is_zero() || n.is_even() {
        return Err(Error::pre(format!("euler_form needs odd n >= 1, got {n}")));
    }
    Ok(euler_from_factorization(n, &factorize(n)?))
}

fn euler_from_factorization(n: &Natural, f: &Factorization) -> Option<EulerForm> {
    let mut odd = f.iter().filter(|(_, e)| e % 2 == 1);
    let (q, alpha) = odd.next()?;
    if odd.next().is_some() {
        return None;
    }
    if (q % 4u32) != BigUint::one() || alpha % 4 != 1 {
        return None;
    }
    let n0 = isqrt_exact(&(n / q.pow(alpha)))?;
    Some(EulerForm {
        n0,
        q: q.clone(),
        alpha,
    })
}

/// One odd-exponent prime `p^alpha || n` with `a = v2(p + 1) - 1`, `b = v2(alpha + 1) - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChenLuoPrime {
    #[serde(with = "crate::jsonl::natural")]
    pub p: Natural,
    pub alpha: u32,
    pub a: u64,
    pub b: u64,
}

/// 2-adic budget of `sigma(n)` for odd `n`: `v2(sigma(n)) = s + sum a_i + sum b_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChenLuoRecord {
    pub s: usize,
    pub primes: Vec<ChenLuoPrime>,
    pub v2_sigma: u64,
}

pub fn chenluo_check(n: &Natural) -> Result<ChenLuoRecord> {
    if n.is_even() || *n < BigUint::from(3u32) {
        return Err(Error::pre(format!(
            "chenluo_check needs odd n >= 3, got {n}"
        )));
    }
    chenluo_from_factorization(n, &factorize(n)?)
}

fn chenluo_from_factorization(n: &Natural, f: &Factorization) -> Result<ChenLuoRecord> {
    let mut primes = Vec::new();
    let mut lte_total = 0u64;
    for (p, e) in f.iter() {
        if e % 2 == 0 {
            continue;
        }
        let vp1 = v2(&(p + 1u32)).unwrap_or(0);
        let ve1 = u64::from((e + 1).trailing_zeros());
        // lifting the exponent: v2(sigma(p^e)) = v2(p + 1) + v2(e + 1) - 1 for odd e
        lte_total += vp1 + ve1 - 1;
        primes.push(ChenLuoPrime {
            p: p.clone(),
            alpha: e,
            a: vp1 - 1,
            b: ve1 - 1,
        });
    }
    let direct = v2(&sigma(f)).unwrap_or(0);
    let s = primes.len();
    let budget = s as u64 + primes.iter().map(|t| t.a + t.b).sum::<u64>();
    if direct != lte_total || direct != budget {
        return Err(Error::Consistency(format!(
            "v2(sigma({n})) = {direct} but the valuation budget gives {budget}"
        )));
    }
    Ok(ChenLuoRecord {
        s,
        primes,
        v2_sigma: direct,
    })
}

/// `prod sigma(p^2)` over the first `count` odd primes.
///
/// If an odd perfect `N = n^2 q` has `omega(n) >= count`, then
/// `sigma(n^2) / q` is at least this product.
pub fn omega_bound_product(count: u32) -> Result<Natural> {
    if !(1..=1000).contains(&count) {
        return Err(Error::pre(format!(
            "count must be in 1..=1000, got {count}"
        )));
    }
    // the 1001st prime is 7927
    Ok(primes_up_to(7927)
        .into_iter()
        .skip(1)
        .take(count as usize)
        .map(|p| sigma_prime_power(&BigUint::from(p), 2).expect("p >= 3"))
        .fold(BigUint::one(), |acc, s| acc * s))
}

/// Everything this module knows about one integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    #[serde(with = "crate::jsonl::natural")]
    pub n: Natural,
    #[serde(with = "crate::jsonl::natural")]
    pub sigma: Natural,
    #[serde(with = "crate::jsonl::natural_opt")]
    pub k: Option<Natural>,
    pub euler_form: Option<EulerForm>,
    pub dhp: Option<DhpDecomposition>,
    pub chenluo: Option<ChenLuoRecord>,
    /// `"deterministic"` unless a factor is only a probable prime.
    pub primality: String,
}

pub fn classify(n: &Natural) -> Result<ClassifyReport> {
    if n.is_zero() {
        return Err(Error::pre("classify needs n >= 1"));
    }
    let f = factorize(n)?;
    let ab = abundancy_from_sigma(n, sigma(&f));
    let odd = n.is_odd();
    let dhp = (*n >= BigUint::from(2u32))
        .then(|| dhp_from_factorization(n, &f))
        .flatten();
    let euler_form = odd.then(|| euler_from_factorization(n, &f)).flatten();
    let chenluo = if odd && *n >= BigUint::from(3u32) {
        Some(chenluo_from_factorization(n, &f)?)
    } else {
        None
    };
    Ok(ClassifyReport {
        n: n.clone(),
        sigma: ab.sigma,
        k: ab.k,
        euler_form,
        dhp,
        chenluo,
        primality: f.primality_policy().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nat(n: u64) -> Natural {
        BigUint::from(n)
    }

    /// Divisor-accumulation sieve, independent of the segmented one.
    fn sigma_oracle(limit: usize) -> Vec<u64> {
        let mut s = vec![0u64; limit + 1];
        for d in 1..=limit {
            for m in (d..=limit).step_by(d) {
                s[m] += d as u64;
            }
        }
        s
    }

    #[test]
    fn abundancy_examples() {
        let a = abundancy(&nat(6)).unwrap();
        assert_eq!((a.sigma, a.k), (nat(12), Some(nat(2))));
        let a = abundancy(&nat(672)).unwrap();
        assert_eq!((a.sigma, a.k), (nat(2016), Some(nat(3))));
        let a = abundancy(&nat(10)).unwrap();
        assert_eq!((a.sigma, a.k), (nat(18), None));
        assert!(abundancy(&nat(0)).is_err());
    }

    #[test]
    fn sieve_matches_oracle() {
        let oracle = sigma_oracle(200_000);
        for workers in [1, 3] {
            let table = sigma_table(200_000, workers).unwrap();
            assert_eq!(table.as_slice(), &oracle[1..]);
        }
        // block edges
        for limit in [1u64, 2, SIEVE_BLOCK - 1, SIEVE_BLOCK, SIEVE_BLOCK + 1] {
            let t = sigma_table(limit, 2).unwrap();
            assert_eq!(t.as_slice(), &oracle[1..=limit as usize]);
        }
    }

    fn pairs(v: &[Multiperfect]) -> Vec<(u64, u64)> {
        v.iter().map(|m| (m.n, m.k)).collect()
    }

    #[test]
    fn multiperfect_examples() {
        assert_eq!(
            pairs(&enumerate_multiperfect(1000, 1).unwrap()),
            vec![(1, 1), (6, 2), (28, 2), (120, 3), (496, 2), (672, 3)]
        );
        assert_eq!(pairs(&enumerate_multiperfect(5, 1).unwrap()), vec![(1, 1)]);
        assert!(enumerate_multiperfect(0, 1).is_err());
    }

    #[test]
    fn multiperfect_to_a_million_matches_oracle() {
        let oracle = sigma_oracle(1_000_000);
        let expect: Vec<(u64, u64)> = (1..=1_000_000u64)
            .filter(|&n| oracle[n as usize].is_multiple_of(n))
            .map(|n| (n, oracle[n as usize] / n))
            .collect();
        assert_eq!(
            expect,
            vec![
                (1, 1),
                (6, 2),
                (28, 2),
                (120, 3),
                (496, 2),
                (672, 3),
                (8128, 2),
                (30240, 4),
                (32760, 4),
                (523776, 3)
            ]
        );
        for workers in [1, 4] {
            assert_eq!(
                pairs(&enumerate_multiperfect(1_000_000, workers).unwrap()),
                expect
            );
        }
    }

    fn dhp(n: u64) -> Option<(u64, u64, u32)> {
        dhp_decompose(&nat(n))
            .unwrap()
            .map(|d| (d.m.try_into().unwrap(), d.q.try_into().unwrap(), d.alpha))
    }

    #[test]
    fn dhp_examples() {
        assert_eq!(dhp(672), Some((21, 2, 5)));
        assert_eq!(dhp(28), Some((4, 7, 1)));
        assert_eq!(dhp(120), None);
        assert_eq!(dhp(6), Some((2, 3, 1)));
        assert!(dhp_decompose(&nat(1)).is_err());
    }

    #[test]
    fn dhp_scan_examples() {
        let ns = |limit| -> Vec<u64> {
            dhp_scan(limit, 2)
                .unwrap()
                .into_iter()
                .map(|(n, _)| n)
                .collect()
        };
        assert_eq!(ns(100), vec![6, 28]);
        assert_eq!(ns(5), Vec::<u64>::new());
        assert_eq!(ns(1_000_000), vec![6, 28, 496, 672, 8128]);
        assert!(dhp_scan(1, 1).is_err());
    }

    #[test]
    fn even_perfect_numbers_decompose() {
        for p in [2u32, 3, 5, 7, 13] {
            let q = (BigUint::one() << p) - 1u32;
            let n = (BigUint::one() << (p - 1)) * &q;
            assert!(n <= nat(100_000_000));
            let d = dhp_decompose(&n).unwrap().expect("even perfect decomposes");
            assert_eq!(&d.m * d.q.pow(d.alpha), n);
            let unitary = d.q.pow(d.alpha);
            assert!(!(&d.m % &d.q).is_zero());
            assert_eq!(sigma(&factorize(&d.m).unwrap()), unitary);
        }
    }

    #[test]
    fn euler_form_examples() {
        let e = euler_form(&nat(45)).unwrap().unwrap();
        assert_eq!((e.n0, e.q, e.alpha), (nat(3), nat(5), 1));
        assert_eq!(euler_form(&nat(225)).unwrap(), None);
        assert_eq!(euler_form(&nat(63)).unwrap(), None);
        assert_eq!(euler_form(&nat(1)).unwrap(), None);
        // q = 5 but alpha = 3
        assert_eq!(euler_form(&nat(9 * 125)).unwrap(), None);
        // two odd-exponent primes
        assert_eq!(euler_form(&nat(5 * 13)).unwrap(), None);
        assert!(euler_form(&nat(10)).is_err());
    }

    #[test]
    fn chenluo_examples() {
        let r = chenluo_check(&nat(3)).unwrap();
        assert_eq!((r.s, r.v2_sigma), (1, 2));
        assert_eq!((r.primes[0].a, r.primes[0].b), (1, 0));

        let r = chenluo_check(&nat(9)).unwrap();
        assert_eq!((r.s, r.v2_sigma), (0, 0));

        let r = chenluo_check(&nat(15)).unwrap();
        assert_eq!((r.s, r.v2_sigma), (2, 3));
        assert_eq!(
            r.primes.iter().map(|t| (t.a, t.b)).collect::<Vec<_>>(),
            vec![(1, 0), (0, 0)]
        );

        assert!(chenluo_check(&nat(1)).is_err());
        assert!(chenluo_check(&nat(12)).is_err());
    }

    #[test]
    fn chenluo_budget_on_small_odd_numbers() {
        let oracle = sigma_oracle(50_001);
        for n in (3..=50_001u64).step_by(2) {
            let r = chenluo_check(&nat(n)).unwrap();
            assert_eq!(r.v2_sigma, u64::from(oracle[n as usize].trailing_zeros()));
        }
    }

    #[test]
    fn omega_bound_examples() {
        assert_eq!(omega_bound_product(8).unwrap(), nat(36_163_554_870_725_919));
        assert_eq!(omega_bound_product(1).unwrap(), nat(13));
        assert_eq!(omega_bound_product(2).unwrap(), nat(403));
        assert!(omega_bound_product(0).is_err());
        assert!(omega_bound_product(1001).is_err());
    }

    #[test]
    fn omega_bound_is_increasing() {
        let mut prev = BigUint::zero();
        for c in 1..=1000 {
            let v = omega_bound_product(c).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn classify_reports() {
        let r = classify(&nat(672)).unwrap();
        assert_eq!(r.k, Some(nat(3)));
        assert_eq!(r.dhp.as_ref().map(|d| d.alpha), Some(5));
        assert!(r.euler_form.is_none() && r.chenluo.is_none());

        let r = classify(&nat(45)).unwrap();
        assert_eq!(r.sigma, nat(78));
        assert!(r.euler_form.is_some());
        assert_eq!(r.chenluo.as_ref().unwrap().v2_sigma, 1);
        assert_eq!(r.primality, "deterministic");

        let line = crate::jsonl::to_line(&classify(&nat(6)).unwrap());
        assert_eq!(
            line,
            r#"{"n":6,"sigma":12,"k":2,"euler_form":null,"dhp":{"m":2,"q":3,"alpha":1},"chenluo":null,"primality":"deterministic"}"#
        );
    }

    proptest! {
        #[test]
        fn euler_form_roundtrips(n0 in 1u64..10_000, qi in 0usize..8, j in 0u32..3) {
            let q = [5u64, 13, 17, 29, 37, 41, 53, 61][qi];
            prop_assume!(n0 % 2 == 1 && n0 % q != 0);
            let alpha = 1 + 4 * j;
            let n = nat(n0).pow(2) * nat(q).pow(alpha);
            let e = euler_form(&n).unwrap().expect("constructed Euler form");
            prop_assert_eq!(e.n0, nat(n0));
            prop_assert_eq!(e.q, nat(q));
            prop_assert_eq!(e.alpha, alpha);
        }
    }
}

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::{is_prime_u64, primality, primes_up_to, Primality, PROBABLE_PRIME_POLICY};
use crate::{Error, Natural, Result};

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Canonical prime factorization: primes strictly ascending, exponents positive.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(Natural, u32)>,
    probable: bool,
}

impl Factorization {
    /// Factorization of 1.
    pub fn one() -> Self {
        Self::default()
    }

    /// Validates and wraps an explicit list of `(prime, exponent)` pairs.
    pub fn from_pairs(pairs: Vec<(Natural, u32)>) -> Result<Self> {
        let mut probable = false;
        for (i, (p, e)) in pairs.iter().enumerate() {
            if *e == 0 {
                return Err(Error::pre(format!("exponent of {p} is zero")));
            }
            if i > 0 && pairs[i - 1].0 >= *p {
                return Err(Error::pre("primes must be strictly increasing"));
            }
            match primality(p) {
                Primality::Composite => return Err(Error::pre(format!("{p} is not prime"))),
                Primality::ProbablePrime => probable = true,
                Primality::Prime => {}
            }
        }
        Ok(Self {
            factors: pairs,
            probable,
        })
    }

    fn from_u64_pairs(pairs: Vec<(u64, u32)>) -> Self {
        Self {
            factors: pairs
                .into_iter()
                .map(|(p, e)| (BigUint::from(p), e))
                .collect(),
            probable: false,
        }
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Natural, u32)> + '_ {
        self.factors.iter().map(|(p, e)| (p, *e))
    }

    /// The integer this factorization represents.
    pub fn value(&self) -> Natural {
        self.iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e))
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent_of(&self, p: &Natural) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// True when some factor is only a strong probable prime.
    pub fn relies_on_probable_prime(&self) -> bool {
        self.probable
    }

    pub fn primality_policy(&self) -> &'static str {
        if self.probable {
            PROBABLE_PRIME_POLICY
        } else {
            "deterministic"
        }
    }
}

/// Trial division up to a bound, then a primality test on the cofactor.
#[derive(Debug, Clone)]
pub struct Factorizer {
    bound: u64,
    primes: Vec<u64>,
}

impl Factorizer {
    pub fn new(bound: u64) -> Self {
        Self {
            bound,
            primes: primes_up_to(bound),
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn factorize(&self, n: &Natural) -> Result<Factorization> {
        if n.is_zero() {
            return Err(Error::pre("cannot factor zero"));
        }
        if let Some(small) = n.to_u64() {
            return self.factorize_u64(small);
        }
        let mut out = Vec::new();
        let mut rem = n.clone();
        let mut idx = 0;
        loop {
            if let Some(small) = rem.to_u64() {
                let mut tail = Vec::new();
                self.factor_word(small, idx, &mut tail)?;
                out.extend(tail.into_iter().map(|(p, e)| (BigUint::from(p), e)));
                return Ok(Factorization {
                    factors: out,
                    probable: false,
                });
            }
            match primality(&rem) {
                Primality::Composite => {}
                verdict => {
                    out.push((rem, 1));
                    return Ok(Factorization {
                        factors: out,
                        probable: verdict == Primality::ProbablePrime,
                    });
                }
            }
            let mut found = false;
            while let Some(&p) = self.primes.get(idx) {
                idx += 1;
                if (&rem % p).is_zero() {
                    let mut e = 0;
                    while (&rem % p).is_zero() {
                        rem /= p;
                        e += 1;
                    }
                    out.push((BigUint::from(p), e));
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::ResourceLimit {
                    cofactor: rem,
                    bound: self.bound,
                });
            }
        }
    }

    pub fn factorize_u64(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::pre("cannot factor zero"));
        }
        let mut out = Vec::new();
        self.factor_word(n, 0, &mut out)?;
        Ok(Factorization::from_u64_pairs(out))
    }

    /// Same as [`Factorizer::factorize_u64`] but without allocating big integers.
    pub fn factor_pairs_u64(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        if n == 0 {
            return Err(Error::pre("cannot factor zero"));
        }
        let mut out = Vec::new();
        self.factor_word(n, 0, &mut out)?;
        Ok(out)
    }

    fn factor_word(&self, n: u64, start: usize, out: &mut Vec<(u64, u32)>) -> Result<()> {
        let mut rem = n;
        if rem > 1 && is_prime_u64(rem) {
            out.push((rem, 1));
            return Ok(());
        }
        for &p in &self.primes[start..] {
            if p.saturating_mul(p) > rem {
                break;
            }
            if rem.is_multiple_of(p) {
                let mut e = 0;
                while rem.is_multiple_of(p) {
                    rem /= p;
                    e += 1;
                }
                out.push((p, e));
                if rem > 1 && is_prime_u64(rem) {
                    break;
                }
            }
        }
        if rem > 1 {
            if !is_prime_u64(rem) {
                return Err(Error::ResourceLimit {
                    cofactor: BigUint::from(rem),
                    bound: self.bound,
                });
            }
            out.push((rem, 1));
        }
        Ok(())
    }
}

impl Default for Factorizer {
    fn default() -> Self {
        Self::new(DEFAULT_TRIAL_BOUND)
    }
}

pub(crate) fn default_factorizer() -> &'static Factorizer {
    static DEFAULT: OnceLock<Factorizer> = OnceLock::new();
    DEFAULT.get_or_init(Factorizer::default)
}

/// Factors `n >= 1` with the default trial bound.
pub fn factorize(n: &Natural) -> Result<Factorization> {
    default_factorizer().factorize(n)
}

pub fn factorize_u64(n: u64) -> Result<Factorization> {
    default_factorizer().factorize_u64(n)
}

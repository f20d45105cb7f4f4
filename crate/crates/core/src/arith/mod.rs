//! Exact integer and rational primitives shared by every other module.
//!
//! Naturals are [`num_bigint::BigUint`] throughout; hot loops that provably
//! stay below `u64::MAX` use the `_u64` variants.

mod factor;
mod primes;
mod rational;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};

use crate::{Error, Result};

pub use factor::{factorize, factorize_u64, Factorization, Factorizer, DEFAULT_TRIAL_BOUND};
pub use primes::{
    is_prime, is_prime_u64, primality, primes_up_to, Primality, DETERMINISTIC_BOUND,
    PROBABLE_PRIME_POLICY,
};
pub use rational::{vp, ExactRational};

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// `sigma(n)` from its factorization: product of `(p^(e+1) - 1) / (p - 1)`.
pub fn sigma(f: &Factorization) -> Natural {
    f.iter()
        .map(|(p, e)| geometric_sum(p, e))
        .fold(BigUint::one(), |acc, s| acc * s)
}

/// `1 + q + ... + q^a`.
pub fn sigma_prime_power(q: &Natural, a: u32) -> Result<Natural> {
    if *q < BigUint::from(2u32) {
        return Err(Error::pre(format!(
            "sigma_prime_power needs q >= 2, got {q}"
        )));
    }
    Ok(geometric_sum(q, a))
}

fn geometric_sum(q: &BigUint, a: u32) -> BigUint {
    let num = q.pow(a + 1) - 1u32;
    let (quot, rem) = num.div_rem(&(q - 1u32));
    debug_assert!(rem.is_zero());
    quot
}

/// `sigma(p^e)` for word-sized inputs. Panics on overflow.
pub fn sigma_prime_power_u64(p: u64, e: u32) -> u64 {
    let mut term = 1u64;
    let mut sum = 1u64;
    for _ in 0..e {
        term = term.checked_mul(p).expect("sigma(p^e) overflows u64");
        sum = sum.checked_add(term).expect("sigma(p^e) overflows u64");
    }
    sum
}

/// Exact square root, or `None` when `n` is not a perfect square.
pub fn isqrt_exact(n: &Natural) -> Option<Natural> {
    if !passes_square_residues(n) {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

// Quadratic residue filters mod 64, 63, 65 and 11 reject ~99% of
// non-squares before the full square root.
fn passes_square_residues(n: &BigUint) -> bool {
    const MODULI: [u32; 4] = [64, 63, 65, 11];
    MODULI.iter().all(|&m| {
        let r = (n % m).to_u32_digits().first().copied().unwrap_or(0);
        (0..m).any(|x| x * x % m == r)
    })
}

/// Exact `u64` square root, or `None`.
pub fn isqrt_exact_u64(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Greatest common divisor, with `gcd(0, 0) = 0`.
pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    a.gcd(b)
}

/// Exponent of 2 in a nonzero natural.
pub fn v2(n: &Natural) -> Option<u64> {
    n.trailing_zeros()
}

/// Exponent of prime `p` in nonzero `n`.
pub fn valuation(p: &Natural, n: &Natural) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    if *p == BigUint::from(2u32) {
        return n.trailing_zeros();
    }
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

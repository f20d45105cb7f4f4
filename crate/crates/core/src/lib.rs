//! Exact arithmetic and exhaustive verification tools for the structure of odd
//! (multiply) perfect numbers.
//!
//! The crate is split into four layers:
//!
//! * [`arith`]: arbitrary-precision primitives (primality, factorization,
//!   divisor sums, exact square roots, binomials, p-adic valuations).
//! * [`quad`]: arithmetic in the order `Z[sqrt(d)]` with `d = 1 - q`, and the
//!   identity checks and 2-adic certificates for the equation `2n^2 = sigma(q^a)`.
//! * [`search`]: resumable, sharded searches for `2n^2 = sigma(q^a)` and
//!   `n^2 = sigma(q^b)` over prime ranges.
//! * [`classify`]: abundancy, multiperfect enumeration, Euler form, the
//!   Dandapat–Hunsucker–Pomerance decomposition and 2-adic bookkeeping.
//!
//! With the default `parallel` feature, work fans out over a rayon pool sized
//! by the caller's worker count. Without it every entry point runs
//! sequentially and produces identical output.

pub mod arith;
pub mod classify;
mod error;
pub mod jsonl;
mod par;
pub use par::PARALLEL_ENABLED;
pub mod quad;
pub mod search;

pub use error::{Error, Result};

pub use arith::{
    binomial, factorize, gcd, is_prime, isqrt_exact, primality, sigma, sigma_prime_power, vp,
    ExactRational, Factorization, Natural, Primality,
};

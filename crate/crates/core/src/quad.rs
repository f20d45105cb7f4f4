//! The order `Z[sqrt(d)]` and the identities behind the nonexistence of
//! solutions to `2n^2 = sigma(q^a)` with `q = 1 (mod 4)`, `a > 1`.
//!
//! With `d = 1 - q` the relevant facts are:
//!
//! * `(1 + n1 sqrt(d))(1 - n1 sqrt(d)) = 1 + (q - 1) n1^2`, which equals
//!   `q^m` (`m = (a + 1) / 2`) for a split solution;
//! * `1 +- sqrt(d)` have norm `q`, and `q` does not divide any of their powers;
//! * `Tr((1 +- sqrt(d))^m) = 2 + 2 sum_i C(m, 2i) d^i`;
//! * dividing that expansion by `2 d C(m, 2)` leaves a sum whose 2-adic
//!   valuation is zero whenever `q = 1 (mod 4)`, so it cannot vanish.
//!
//! There is no floating point anywhere in this module.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, is_prime, vp, ExactRational, Natural};
use crate::{Error, Result};

/// Element `a + b sqrt(d)` of `Z[sqrt(d)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    d: BigInt,
    a: BigInt,
    b: BigInt,
}

fn is_square_parameter(d: &BigInt) -> bool {
    if d.is_negative() {
        return false;
    }
    let r = d.sqrt();
    &r * &r == *d
}

impl QuadInt {
    /// Rejects square `d` (including 0 and 1), for which `Z[sqrt(d)]` has zero divisors.
    pub fn new(d: impl Into<BigInt>, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if is_square_parameter(&d) {
            return Err(Error::pre(format!(
                "ring parameter {d} is a perfect square"
            )));
        }
        Ok(Self {
            d,
            a: a.into(),
            b: b.into(),
        })
    }

    /// The ring parameter `d = 1 - q` attached to a rational prime `q`.
    pub fn parameter_for(q: &Natural) -> BigInt {
        BigInt::one() - BigInt::from_biguint(Sign::Plus, q.clone())
    }

    pub fn one(d: impl Into<BigInt>) -> Result<Self> {
        Self::new(d, 1, 0)
    }

    pub fn integer(d: impl Into<BigInt>, a: impl Into<BigInt>) -> Result<Self> {
        Self::new(d, a, 0)
    }

    /// `1 + sign * b sqrt(d)`.
    pub fn one_plus(d: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        Self::new(d, 1, b)
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            d: self.d.clone(),
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::ParameterMismatch {
                left: self.d.to_string(),
                right: other.d.to_string(),
            });
        }
        Ok(())
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        Self {
            d: self.d.clone(),
            a: &self.a * &other.a + &self.d * &self.b * &other.b,
            b: &self.a * &other.b + &other.a * &self.b,
        }
    }

    /// `(a1 a2 + d b1 b2) + (a1 b2 + a2 b1) sqrt(d)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(Self {
            d: self.d.clone(),
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        })
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.d * &self.b * &self.b
    }

    /// `2a`.
    pub fn trace(&self) -> BigInt {
        &self.a * 2
    }

    /// Binary exponentiation; `x^0 = 1`.
    pub fn pow(&self, m: u32) -> Self {
        let mut acc = Self {
            d: self.d.clone(),
            a: BigInt::one(),
            b: BigInt::zero(),
        };
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Whether `y = self * z` for some `z` in the order.
    ///
    /// Solves `[a, d b; b, a] (z1, z2)^T = (y.a, y.b)^T` by Cramer's rule; the
    /// determinant is `norm(self)`, nonzero for nonzero `self` since `d` is not
    /// a square.
    pub fn divides(&self, y: &Self) -> Result<bool> {
        self.check_same_ring(y)?;
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let det = self.norm();
        let z1 = &y.a * &self.a - &self.d * &self.b * &y.b;
        let z2 = &self.a * &y.b - &self.b * &y.a;
        Ok(z1.is_multiple_of(&det) && z2.is_multiple_of(&det))
    }

    /// Exact quotient `y / self`, when it exists.
    pub fn quotient(&self, y: &Self) -> Result<Option<Self>> {
        if !self.divides(y)? {
            return Ok(None);
        }
        let det = self.norm();
        let z1 = &y.a * &self.a - &self.d * &self.b * &y.b;
        let z2 = &self.a * &y.b - &self.b * &y.a;
        Ok(Some(Self {
            d: self.d.clone(),
            a: z1 / &det,
            b: z2 / &det,
        }))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

/// A unit of `Z[sqrt(d)]` for `d <= -2`, `d != -3`: only `+1` and `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitSign {
    Plus,
    Minus,
}

impl UnitSign {
    pub fn value(self) -> i32 {
        match self {
            UnitSign::Plus => 1,
            UnitSign::Minus => -1,
        }
    }
}

/// The unit group `{+1, -1}`.
///
/// Errors for `d = -1` (units `+-1, +-i`), `d = -3` (kept out with it to avoid
/// confusion with the Eisenstein integers) and `d > 0` (infinite unit group).
pub fn unit_group(d: &BigInt) -> Result<[UnitSign; 2]> {
    if *d > BigInt::from(-2) || *d == BigInt::from(-3) {
        return Err(Error::pre(format!(
            "unit group of Z[sqrt({d})] is not {{+1, -1}}"
        )));
    }
    Ok([UnitSign::Plus, UnitSign::Minus])
}

/// `2 + 2 * sum_{i=1}^{m/2} C(m, 2i) d^i`, the trace of `(1 +- sqrt(d))^m`.
pub fn trace_expansion(m: u32, d: &BigInt) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::pre("trace expansion needs m >= 1"));
    }
    let mut sum = BigInt::zero();
    let mut dpow = BigInt::one();
    for i in 1..=(m / 2) {
        dpow *= d;
        sum += BigInt::from_biguint(Sign::Plus, binomial(m.into(), (2 * i).into())) * &dpow;
    }
    Ok(2 + 2 * sum)
}

/// The sign `e` in `2 = e * Tr((1 +- sqrt(d))^m)` forced by reduction mod `d`.
///
/// `Tr/2 = 1 (mod d)`, so `e * Tr/2 = 1 (mod d)` leaves only `e = 1` once `|d| > 2`.
pub fn unit_sign_from_trace(m: u32, d: &BigInt) -> Result<UnitSign> {
    let units = unit_group(d)?;
    let half: BigInt = trace_expansion(m, d)? / 2;
    let fits: Vec<UnitSign> = units
        .into_iter()
        .filter(|u| (&half * BigInt::from(u.value()) - 1i32).is_multiple_of(d))
        .collect();
    match fits.as_slice() {
        [only] => Ok(*only),
        _ => Err(Error::pre(format!(
            "sign is not determined modulo {d} ({} candidates)",
            fits.len()
        ))),
    }
}

fn int(n: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n)
}

/// `C(m, 2i) / C(m, 2) == C(m-2, 2i-2) / (i (2i - 1))` as exact rationals.
pub fn ratio_identity_check(m: u64, i: u64) -> Result<bool> {
    if m < 4 || i < 2 || 2 * i > m {
        return Err(Error::pre(format!(
            "ratio identity needs m >= 4 and 2 <= i <= m/2, got m = {m}, i = {i}"
        )));
    }
    let lhs = ExactRational::new(int(binomial(m, 2 * i)), int(binomial(m, 2)))?;
    let rhs = ExactRational::new(
        int(binomial(m - 2, 2 * i - 2)),
        BigInt::from(i * (2 * i - 1)),
    )?;
    Ok(lhs == rhs)
}

/// 2-adic valuation of one summand of the certificate sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandValuation {
    pub i: u32,
    pub v2: i64,
}

/// Result of [`two_adic_certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    #[serde(with = "crate::jsonl::natural")]
    pub q: Natural,
    pub alpha: u32,
    pub summands: Vec<SummandValuation>,
    pub v2_total: i64,
    pub passed: bool,
    /// The sum `S` itself.
    #[serde(skip)]
    pub value: Option<ExactRational>,
}

/// Certifies that
/// `S = 1 + sum_{i=2}^{(a+1)/4} C((a-3)/2, 2i-2)/(2i-1) * (1-q)^(i-1)/i`
/// is a 2-adic unit for prime `q = 1 (mod 4)` and odd `a >= 3`.
///
/// The sum is also recomputed through the trace: with `m = (a+1)/2` and
/// `d = 1 - q`, `trace_expansion(m, d) = 2 + 2 d C(m, 2) S` must hold exactly,
/// otherwise a [`Error::Consistency`] is raised.
pub fn two_adic_certificate(q: &Natural, alpha: u32) -> Result<CertificateReport> {
    if alpha < 3 || alpha.is_multiple_of(2) {
        return Err(Error::pre(format!(
            "alpha must be odd and >= 3, got {alpha}"
        )));
    }
    if (q % 4u32) != BigUint::one() {
        return Err(Error::pre(format!("q = {q} is not 1 mod 4")));
    }
    if !is_prime(q) {
        return Err(Error::pre(format!("q = {q} is not prime")));
    }
    let two = BigUint::from(2u32);
    let d = QuadInt::parameter_for(q);
    let m = alpha.div_ceil(2);
    let top = (alpha + 1) / 4;
    let half = u64::from((alpha - 3) / 2);

    let mut s = ExactRational::one();
    let mut summands = Vec::new();
    let mut dpow = BigInt::one();
    for i in 2..=top {
        dpow *= &d;
        let i64_ = u64::from(i);
        let numer = int(binomial(half, 2 * i64_ - 2)) * &dpow;
        let denom = BigInt::from((2 * i64_ - 1) * i64_);
        let term = ExactRational::new(numer, denom)?;
        summands.push(SummandValuation {
            i,
            v2: vp(&two, &term)?,
        });
        s = s + term;
    }

    let via_trace = trace_expansion(m, &d)?;
    let c2 = int(binomial(m.into(), 2));
    let rebuilt =
        ExactRational::from_integer(2) + ExactRational::from_integer(2 * &d * c2) * s.clone();
    if rebuilt != ExactRational::from_integer(via_trace) {
        return Err(Error::Consistency(format!(
            "certificate sum disagrees with trace expansion for q = {q}, alpha = {alpha}"
        )));
    }
    if s.is_zero() {
        return Err(Error::Consistency(format!(
            "certificate sum vanishes for q = {q}, alpha = {alpha}"
        )));
    }
    let v2_total = vp(&two, &s)?;
    let passed = v2_total == 0 && summands.iter().all(|t| t.v2 >= 1);
    Ok(CertificateReport {
        q: q.clone(),
        alpha,
        summands,
        v2_total,
        passed,
        value: Some(s),
    })
}

/// Certificates for every prime `q = 1 (mod 4)` up to `q_max` and every odd
/// `alpha` in `[3, alpha_max]`, ordered by `(q, alpha)`.
pub fn certificate_sweep(
    q_max: u64,
    alpha_max: u32,
    workers: usize,
) -> Result<Vec<CertificateReport>> {
    let primes: Vec<u64> = crate::arith::primes_up_to(q_max)
        .into_iter()
        .filter(|q| q % 4 == 1)
        .collect();
    let per_prime = crate::par::ordered_map(primes, workers, |q| {
        let q = BigUint::from(q);
        (3..=alpha_max)
            .step_by(2)
            .map(|alpha| two_adic_certificate(&q, alpha))
            .collect::<Result<Vec<_>>>()
    });
    let mut out = Vec::new();
    for batch in per_prime {
        out.extend(batch?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use proptest::prelude::*;

    fn qi(d: i64, a: i64, b: i64) -> QuadInt {
        QuadInt::new(d, a, b).unwrap()
    }

    #[test]
    fn mul_examples() {
        assert_eq!(qi(-12, 1, 1).mul(&qi(-12, 1, -1)).unwrap(), qi(-12, 13, 0));
        let x = qi(-7, 3, -5);
        assert_eq!(x.mul(&QuadInt::one(-7).unwrap()).unwrap(), x);
        assert_eq!(qi(-4, 1, 2).mul(&qi(-4, 3, 1)).unwrap(), qi(-4, -5, 7));
        assert!(matches!(
            qi(-4, 1, 1).mul(&qi(-8, 1, 1)),
            Err(Error::ParameterMismatch { .. })
        ));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(qi(-12, 1, 1).norm(), BigInt::from(13));
        assert_eq!(qi(-4, 1, 1).norm(), BigInt::from(5));
        assert_eq!(qi(-4, 0, 0).norm(), BigInt::zero());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(qi(-12, 1, 1).trace(), BigInt::from(2));
        assert_eq!(qi(-4, 1, 1).pow(2).trace(), BigInt::from(-6));
        let x = qi(-31, 7, 11);
        assert_eq!(x.conj().trace(), x.trace());
    }

    #[test]
    fn pow_examples() {
        assert_eq!(qi(-12, 1, 1).pow(0), qi(-12, 1, 0));
        assert_eq!(qi(-12, 1, 1).pow(5).norm(), BigInt::from(371_293));
        assert_eq!(qi(-12, 1, 1).pow(2), qi(-12, -11, 2));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let x = qi(-100, 3, -2);
        let mut acc = QuadInt::one(-100).unwrap();
        for m in 0..30 {
            assert_eq!(x.pow(m), acc);
            acc = acc.mul(&x).unwrap();
        }
    }

    #[test]
    fn divides_examples() {
        let q = qi(-12, 13, 0);
        assert!(q.divides(&qi(-12, 13, 13)).unwrap());
        assert!(!q.divides(&qi(-12, 1, 1)).unwrap());
        let x = qi(-12, 1, 1);
        let y = x.mul(&qi(-12, 2, 3)).unwrap();
        assert!(x.divides(&y).unwrap());
        assert_eq!(x.quotient(&y).unwrap(), Some(qi(-12, 2, 3)));
        assert!(matches!(
            qi(-12, 0, 0).divides(&x),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn square_parameters_are_rejected() {
        for d in [0, 1, 4, 9, 144] {
            assert!(QuadInt::new(d, 1, 1).is_err());
        }
        assert!(QuadInt::new(2, 1, 1).is_ok());
        assert!(QuadInt::new(-1, 1, 1).is_ok());
    }

    #[test]
    fn unit_group_policy() {
        assert!(unit_group(&BigInt::from(-1)).is_err());
        assert!(unit_group(&BigInt::from(-3)).is_err());
        assert!(unit_group(&BigInt::from(5)).is_err());
        assert_eq!(
            unit_group(&BigInt::from(-12)).unwrap(),
            [UnitSign::Plus, UnitSign::Minus]
        );
        for q in [5i64, 13, 17, 29, 101] {
            for m in 1..20 {
                assert_eq!(
                    unit_sign_from_trace(m, &BigInt::from(1 - q)).unwrap(),
                    UnitSign::Plus
                );
            }
        }
    }

    #[test]
    fn trace_expansion_examples() {
        for d in [-4i64, -12, -100] {
            assert_eq!(
                trace_expansion(1, &BigInt::from(d)).unwrap(),
                BigInt::from(2)
            );
        }
        assert_eq!(
            trace_expansion(2, &BigInt::from(-4)).unwrap(),
            BigInt::from(-6)
        );
        let d = BigInt::from(-12);
        assert_eq!(
            trace_expansion(7, &d).unwrap(),
            QuadInt::one_plus(-12, 1).unwrap().pow(7).trace()
        );
        assert!(trace_expansion(0, &d).is_err());
    }

    #[test]
    fn trace_expansion_matches_both_conjugates() {
        for q in primes_up_to(200) {
            let d = 1 - q as i64;
            let plus = QuadInt::one_plus(d, 1).unwrap();
            let minus = QuadInt::one_plus(d, -1).unwrap();
            for m in 1..=60 {
                let t = trace_expansion(m, &BigInt::from(d)).unwrap();
                assert_eq!(plus.pow(m).trace(), t);
                assert_eq!(minus.pow(m).trace(), t);
            }
        }
    }

    #[test]
    fn ratio_identity_examples() {
        assert!(ratio_identity_check(4, 2).unwrap());
        assert!(ratio_identity_check(10, 3).unwrap());
        assert!(ratio_identity_check(6, 2).unwrap());
        assert!(ratio_identity_check(3, 2).is_err());
        assert!(ratio_identity_check(8, 5).is_err());
        assert!(ratio_identity_check(8, 1).is_err());
    }

    #[test]
    fn ratio_identity_exhaustive() {
        for m in 4..=200u64 {
            for i in 2..=m / 2 {
                assert!(ratio_identity_check(m, i).unwrap(), "m = {m}, i = {i}");
            }
        }
    }

    #[test]
    fn certificate_examples() {
        let c = two_adic_certificate(&BigUint::from(13u32), 3).unwrap();
        assert!(c.summands.is_empty());
        assert_eq!(c.value, Some(ExactRational::one()));
        assert_eq!(c.v2_total, 0);
        assert!(c.passed);

        let c = two_adic_certificate(&BigUint::from(13u32), 7).unwrap();
        assert_eq!(c.value, Some(ExactRational::from_integer(-1)));
        assert_eq!(c.summands, vec![SummandValuation { i: 2, v2: 1 }]);
        assert!(c.passed);

        let c = two_adic_certificate(&BigUint::from(5u32), 11).unwrap();
        assert_eq!(c.summands.len(), 2);
        assert!(c.summands.iter().all(|t| t.v2 >= 1));
        assert_eq!(c.v2_total, 0);
        assert!(c.passed);
    }

    #[test]
    fn certificate_value_for_q5_alpha11_by_hand() {
        // m = 6, d = -4: S = 1 + C(4,2)/3 * (-4)/2 + C(4,4)/5 * 16/3 = 1 - 4 + 16/15
        let c = two_adic_certificate(&BigUint::from(5u32), 11).unwrap();
        let expect = ExactRational::new(BigInt::from(-29), BigInt::from(15)).unwrap();
        assert_eq!(c.value, Some(expect));
    }

    #[test]
    fn certificate_preconditions() {
        let q = BigUint::from(13u32);
        assert!(two_adic_certificate(&q, 4).is_err());
        assert!(two_adic_certificate(&q, 1).is_err());
        assert!(two_adic_certificate(&BigUint::from(7u32), 5).is_err());
        assert!(two_adic_certificate(&BigUint::from(21u32), 5).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let c = two_adic_certificate(&BigUint::from(13u32), 7).unwrap();
        assert_eq!(
            crate::jsonl::to_line(&c),
            r#"{"q":13,"alpha":7,"summands":[{"i":2,"v2":1}],"v2_total":0,"passed":true}"#
        );
    }

    #[test]
    fn sweep_is_ordered_and_passes() {
        let certs = certificate_sweep(200, 31, 3).unwrap();
        let expect_primes = primes_up_to(200).into_iter().filter(|q| q % 4 == 1).count();
        assert_eq!(certs.len(), expect_primes * 15);
        assert!(certs.iter().all(|c| c.passed));
        assert!(certs
            .windows(2)
            .all(|w| (&w[0].q, w[0].alpha) < (&w[1].q, w[1].alpha)));
    }

    #[test]
    fn q_never_divides_powers_of_prime_elements() {
        for q in primes_up_to(300).into_iter().filter(|&q| q > 2) {
            let d = 1 - q as i64;
            let qq = QuadInt::integer(d, q as i64).unwrap();
            let base = QuadInt::one_plus(d, 1).unwrap();
            for m in 1..=20 {
                assert!(!qq.divides(&base.pow(m)).unwrap(), "q = {q}, m = {m}");
                assert!(!qq.divides(&base.conj().pow(m)).unwrap());
            }
        }
    }

    fn ring_element(d: i64) -> impl Strategy<Value = QuadInt> {
        (-10_000i64..10_000, -10_000i64..10_000).prop_map(move |(a, b)| qi(d, a, b))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative((x, y) in (0usize..5).prop_flat_map(|i| {
            let d = [-4i64, -8, -12, -16, -100][i];
            (ring_element(d), ring_element(d))
        })) {
            prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
        }

        #[test]
        fn conjugate_product_is_rational(q in 2i64..100_000, b in -1_000_000i64..1_000_000) {
            let d = 1 - q;
            prop_assume!(d != 0);
            let p = QuadInt::one_plus(d, b).unwrap().mul(&QuadInt::one_plus(d, -b).unwrap()).unwrap();
            prop_assert_eq!(p, qi(d, 1 + (q - 1) * b * b, 0));
        }

        #[test]
        fn divides_agrees_with_constructed_multiples(x in ring_element(-8), z in ring_element(-8)) {
            prop_assume!(!x.is_zero());
            let y = x.mul(&z).unwrap();
            prop_assert!(x.divides(&y).unwrap());
            prop_assert_eq!(x.quotient(&y).unwrap(), Some(z));
        }
    }
}

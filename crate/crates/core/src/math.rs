//! Exact move counts.
//!
//! Three independent routes are provided for every algorithm:
//!
//! - closed forms ([`per_disk`], [`total`]);
//! - one-step recurrences whose leading term is always `3 ×` the previous
//!   value ([`per_disk_by_recurrence`], [`total_by_recurrence`]);
//! - the step-table decompositions of each algorithm ([`total_by_structure`]).
//!
//! All arithmetic is arbitrary precision; decimal renderings happen only in
//! [`Ratio`] and the [`DoomsdayReport`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::solvers::Algorithm;

/// Arbitrary-precision nonnegative move count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> BigCount {
        BigCount(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_odd(&self) -> bool {
        self.0.is_odd()
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<usize> for BigCount {
    fn from(v: usize) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl PartialOrd<u64> for BigCount {
    fn partial_cmp(&self, other: &u64) -> Option<std::cmp::Ordering> {
        self.0.partial_cmp(&BigUint::from(*other))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Exact nonnegative ratio. The numerator and denominator are kept as given
/// (not reduced) so that reports show the underlying counts; equality and
/// ordering compare values.
#[derive(Clone, Debug)]
pub struct Ratio {
    numerator: BigCount,
    denominator: BigCount,
}

impl Ratio {
    pub fn new(numerator: impl Into<BigCount>, denominator: impl Into<BigCount>) -> Ratio {
        let denominator = denominator.into();
        assert!(
            !denominator.0.is_zero(),
            "ratio denominator must be positive"
        );
        Ratio {
            numerator: numerator.into(),
            denominator,
        }
    }

    fn from_rational(r: &BigRational) -> Ratio {
        assert!(!r.is_negative(), "ratios are nonnegative");
        Ratio::new(
            BigCount(r.numer().magnitude().clone()),
            BigCount(r.denom().magnitude().clone()),
        )
    }

    pub fn numerator(&self) -> &BigCount {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigCount {
        &self.denominator
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from_biguint(Sign::Plus, self.numerator.0.clone()),
            BigInt::from_biguint(Sign::Plus, self.denominator.0.clone()),
        )
    }

    pub fn reduced(&self) -> Ratio {
        Ratio::from_rational(&self.to_rational())
    }

    /// |self - other| as an exact rational.
    pub fn abs_diff(&self, other: &Ratio) -> BigRational {
        (self.to_rational() - other.to_rational()).abs()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point rendering with `places` digits after the point, rounded
    /// half up.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = BigUint::from(10u32).pow(places);
        let scaled = &self.numerator.0 * &scale;
        let (q, r) = scaled.div_rem(&self.denominator.0);
        let q = if &r * 2u32 >= self.denominator.0 {
            q + 1u32
        } else {
            q
        };
        let digits = q.to_string();
        if places == 0 {
            return digits;
        }
        let places = places as usize;
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{int}.{frac}")
    }

    /// The first `sig` significant digits (rounded half up) and the decimal
    /// exponent, so that the value is `0.d1 d2 ... × 10^(exp+1)`, i.e.
    /// `d1.d2... × 10^exp`. Returns `None` for zero.
    pub fn significant_digits(&self, sig: u32) -> Option<(String, i64)> {
        assert!(sig > 0);
        if self.numerator.0.is_zero() {
            return None;
        }
        let num = &self.numerator.0;
        let den = &self.denominator.0;
        // Decimal exponent of the leading digit.
        let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
        let ten = BigUint::from(10u32);
        let pow10 = |e: i64| ten.pow(e.unsigned_abs() as u32);
        let at_least = |e: i64| {
            // value >= 10^e
            if e >= 0 {
                num >= &(den * pow10(e))
            } else {
                num * pow10(e) >= *den
            }
        };
        while !at_least(exp) {
            exp -= 1;
        }
        while at_least(exp + 1) {
            exp += 1;
        }
        // digits = round(value * 10^(sig-1-exp))
        let shift = sig as i64 - 1 - exp;
        let (n, d) = if shift >= 0 {
            (num * pow10(shift), den.clone())
        } else {
            (num.clone(), den * pow10(shift))
        };
        let (q, r) = n.div_rem(&d);
        let mut q = if &r * 2u32 >= d { q + 1u32 } else { q };
        if q.to_string().len() > sig as usize {
            // Rounded up to the next power of ten.
            q /= 10u32;
            exp += 1;
        }
        Some((q.to_string(), exp))
    }

    /// Scientific rendering `d.ddd…e±x` with `sig` significant digits.
    pub fn to_scientific(&self, sig: u32) -> String {
        match self.significant_digits(sig) {
            None => "0".to_string(),
            Some((digits, exp)) => {
                let (head, tail) = digits.split_at(1);
                if tail.is_empty() {
                    format!("{head}e{exp}")
                } else {
                    format!("{head}.{tail}e{exp}")
                }
            }
        }
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.numerator.0 * &other.denominator.0).cmp(&(&other.numerator.0 * &self.denominator.0))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MathError {
    #[error("disk index must be at least 1")]
    ZeroIndex,
    #[error(
        "{alg}: index {k} is a base value of the recurrence, which derives indices from {first} on"
    )]
    BelowRecurrence { alg: Algorithm, k: u32, first: u32 },
    #[error("{alg}: {what} is not defined for this algorithm")]
    NotApplicable { alg: Algorithm, what: &'static str },
}

fn pow3(e: u32) -> BigUint {
    BigUint::from(3u32).pow(e)
}

fn pow2(e: u32) -> BigUint {
    BigUint::from(2u32).pow(e)
}

fn s100(n: u32) -> BigUint {
    (pow3(n) - 1u32) / 2u32
}

fn s67(n: u32) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    pow3(n - 1) + (n - 1)
}

fn ssf(n: u32) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let head = pow3(n - 1) + (n - 1);
    if n % 2 == 1 {
        head + (pow3(n - 1) - 1u32) / 8u32 - (n - 1) / 2
    } else {
        head + (pow3(n - 1) - 3u32) / 8u32 - (n - 2) / 2
    }
}

fn s62(n: u32) -> BigUint {
    if n <= 3 {
        return s67(n);
    }
    s100(n - 2) * 2u32 + s100(n - 3) * 2u32 + s67(n - 1) + s67(n - 2) + ssf(n - 3) + 4u32
}

fn p67(k: u32) -> BigUint {
    if k == 1 {
        BigUint::one()
    } else {
        pow3(k - 2) * 2u32 + 1u32
    }
}

fn big(v: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v)
}

/// `a / 8` where the division is exact for every index it is used with.
fn eighth(a: BigInt) -> BigInt {
    let (q, r) = a.div_rem(&BigInt::from(8));
    debug_assert!(r.is_zero());
    q
}

fn psf(k: u32) -> BigUint {
    match k {
        1 => BigUint::one(),
        2 => BigUint::from(3u32),
        _ => {
            let lead = big(pow3(k - 2) * 2u32);
            let v = if k % 2 == 1 {
                lead + eighth(big(pow3(k - 1)) - 9) - eighth(big(pow3(k - 2)) - 3) + 1
            } else {
                lead + eighth(big(pow3(k - 1)) - 3) - eighth(big(pow3(k - 2)) - 9)
            };
            v.to_biguint().expect("per-disk counts are positive")
        }
    }
}

fn p62(k: u32) -> BigUint {
    if k <= 3 {
        return p67(k);
    }
    pow3(k - 3) * 2u32 + pow3(k - 4) * 2u32 + p67(k - 1) + p67(k - 2) + psf(k - 3)
}

/// Moves made by disk `k` (1 = largest) under `alg`.
pub fn per_disk(alg: Algorithm, k: u32) -> Result<BigCount, MathError> {
    if k == 0 {
        return Err(MathError::ZeroIndex);
    }
    Ok(BigCount(match alg {
        Algorithm::Classical => pow2(k - 1),
        Algorithm::C100 => pow3(k - 1),
        Algorithm::F67Down | Algorithm::F67Up => p67(k),
        Algorithm::SemiFree => psf(k),
        Algorithm::F62 => p62(k),
    }))
}

/// Closed-form total for an `n`-disk tower. An empty tower needs no moves.
pub fn total(alg: Algorithm, n: u32) -> BigCount {
    BigCount(match alg {
        Algorithm::Classical => pow2(n) - 1u32,
        Algorithm::C100 => s100(n),
        Algorithm::F67Down | Algorithm::F67Up => s67(n),
        Algorithm::SemiFree => ssf(n),
        Algorithm::F62 => s62(n),
    })
}

fn sub_small(v: BigUint, s: u32) -> BigUint {
    v - s
}

/// Total evaluated through the one-step relations `S(N+1) = 3·S(N) + …`
/// (`2·S(N) + 1` for the classical tower).
pub fn total_by_recurrence(alg: Algorithm, n: u32) -> BigCount {
    if n == 0 {
        return BigCount::zero();
    }
    let mut s = BigUint::one();
    match alg {
        Algorithm::Classical => {
            for _ in 1..n {
                s = s * 2u32 + 1u32;
            }
        }
        Algorithm::C100 => {
            for _ in 1..n {
                s = s * 3u32 + 1u32;
            }
        }
        Algorithm::F67Down | Algorithm::F67Up => {
            for m in 1..n {
                s = sub_small(s * 3u32 + 3u32, 2 * m);
            }
        }
        Algorithm::SemiFree => {
            for m in 1..n {
                let add: u32 = if m % 2 == 1 { 2 } else { 1 };
                s = sub_small(s * 3u32 + add, m);
            }
        }
        Algorithm::F62 => {
            if n <= 3 {
                return total_by_recurrence(Algorithm::F67Down, n);
            }
            s = total_by_recurrence(Algorithm::F67Down, 3).0;
            for m in 3..n {
                let tail = if m % 2 == 1 { 3 } else { 2 };
                s = sub_small(s * 3u32, 5 * (m - 3) + tail);
            }
        }
    }
    BigCount(s)
}

/// Total evaluated by summing the steps of each algorithm's recursive
/// decomposition: `S_67(N) = S_67(N-1) + 4·S_100(N-2) + 3`,
/// `S_SF(N) = S_SF(N-2) + 6·S_100(N-2) + 4`, and the nine-step sum of the
/// "62" solution. Every sub-count is itself taken from this route.
pub fn total_by_structure(alg: Algorithm, n: u32) -> BigCount {
    let len = n as usize + 1;
    let mut c100 = vec![BigUint::zero(); len];
    for m in 1..len {
        c100[m] = &c100[m - 1] * 3u32 + 1u32;
    }
    let result = match alg {
        Algorithm::Classical => {
            let mut s = BigUint::zero();
            for _ in 0..n {
                s = s * 2u32 + 1u32;
            }
            s
        }
        Algorithm::C100 => c100[n as usize].clone(),
        Algorithm::F67Down | Algorithm::F67Up => structure_67(&c100)[n as usize].clone(),
        Algorithm::SemiFree => structure_sf(&c100)[n as usize].clone(),
        Algorithm::F62 => {
            if n <= 3 {
                structure_67(&c100)[n as usize].clone()
            } else {
                let c67 = structure_67(&c100);
                let csf = structure_sf(&c100);
                let n = n as usize;
                &c100[n - 2] * 2u32
                    + &c100[n - 3] * 2u32
                    + &c67[n - 1]
                    + &c67[n - 2]
                    + &csf[n - 3]
                    + 4u32
            }
        }
    };
    BigCount(result)
}

fn structure_67(c100: &[BigUint]) -> Vec<BigUint> {
    let mut c = vec![BigUint::zero(); c100.len()];
    for m in 1..c.len() {
        c[m] = if m == 1 {
            BigUint::one()
        } else {
            &c[m - 1] + &c100[m - 2] * 4u32 + 3u32
        };
    }
    c
}

fn structure_sf(c100: &[BigUint]) -> Vec<BigUint> {
    let mut c = vec![BigUint::zero(); c100.len()];
    for m in 1..c.len() {
        c[m] = match m {
            1 => BigUint::one(),
            2 => BigUint::from(4u32),
            _ => &c[m - 2] + &c100[m - 2] * 6u32 + 4u32,
        };
    }
    c
}

/// First index each per-disk recurrence derives (smaller indices are its
/// base values).
pub fn first_recurrent_index(alg: Algorithm) -> u32 {
    match alg {
        Algorithm::Classical | Algorithm::C100 | Algorithm::SemiFree => 2,
        Algorithm::F67Down | Algorithm::F67Up => 3,
        Algorithm::F62 => 5,
    }
}

/// Per-disk count evaluated through `P(k+1) = 3·P(k) − c`, starting from the
/// base value just below [`first_recurrent_index`].
pub fn per_disk_by_recurrence(alg: Algorithm, k: u32) -> Result<BigCount, MathError> {
    if k == 0 {
        return Err(MathError::ZeroIndex);
    }
    let first = first_recurrent_index(alg);
    if k < first {
        return Err(MathError::BelowRecurrence { alg, k, first });
    }
    let base = first - 1;
    let mut p = per_disk(alg, base)?.0;
    for j in base..k {
        p = match alg {
            Algorithm::Classical => p * 2u32,
            Algorithm::C100 => p * 3u32,
            Algorithm::F67Down | Algorithm::F67Up => p * 3u32 - 2u32,
            Algorithm::SemiFree if j % 2 == 1 => p * 3u32,
            Algorithm::SemiFree => p * 3u32 - 2u32,
            Algorithm::F62 if j % 2 == 1 => p * 3u32 - 6u32,
            Algorithm::F62 => p * 3u32 - 4u32,
        };
    }
    Ok(BigCount(p))
}

/// `total(alg, n) / total(C100, n)`.
pub fn duration_ratio(alg: Algorithm, n: u32) -> Result<Ratio, MathError> {
    if n == 0 {
        return Err(MathError::ZeroIndex);
    }
    if alg == Algorithm::Classical {
        return Err(MathError::NotApplicable {
            alg,
            what: "duration ratio",
        });
    }
    Ok(Ratio::new(total(alg, n), total(Algorithm::C100, n)))
}

/// Leading coefficient `c` in `S(N) ~ c·3^N`, assembled from the same
/// decomposition as [`total_by_structure`].
fn leading_coefficient(alg: Algorithm) -> BigRational {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let c100 = r(1, 2);
    let c67 = r(1, 3);
    // S_SF(N) ~ 3^(N-1) + 3^(N-1)/8
    let csf = r(1, 3) * r(9, 8);
    match alg {
        Algorithm::Classical => BigRational::zero(),
        Algorithm::C100 => c100,
        Algorithm::F67Down | Algorithm::F67Up => c67,
        Algorithm::SemiFree => csf,
        Algorithm::F62 => {
            // 2·S100(N-2) + 2·S100(N-3) + S67(N-1) + S67(N-2) + SSF(N-3)
            &c100 * r(2, 9) + &c100 * r(2, 27) + &c67 * r(1, 3) + &c67 * r(1, 9) + csf * r(1, 27)
        }
    }
}

/// Limit of [`duration_ratio`] as the tower grows.
pub fn limit_ratio(alg: Algorithm) -> Result<Ratio, MathError> {
    match alg {
        Algorithm::Classical | Algorithm::C100 => Err(MathError::NotApplicable {
            alg,
            what: "limit ratio",
        }),
        _ => {
            let limit = leading_coefficient(alg) / leading_coefficient(Algorithm::C100);
            Ok(Ratio::from_rational(&limit))
        }
    }
}

/// The 64-disk comparison between the classical legend and the magnetic
/// tower, one move per second.
#[derive(Clone, Debug, Serialize)]
pub struct DoomsdayReport {
    /// Classical moves done once the big disk has moved: `2^63`.
    pub elapsed: BigCount,
    /// `(3^64 - 1) / 2`.
    pub colored_total: BigCount,
    /// `colored_total · 67/108`, the asymptotic estimate of the "62" length.
    pub estimated_total: Ratio,
    /// `estimated_total - 2^63`.
    pub estimated_remaining: Ratio,
    /// Exact "62" length at 64 disks.
    pub exact_total: BigCount,
    /// `exact_total - 2^63`.
    pub exact_remaining: BigCount,
}

pub fn doomsday_report() -> DoomsdayReport {
    let elapsed = pow2(63);
    let colored_total = s100(64);
    let estimated = BigRational::from_integer(big(colored_total.clone()))
        * BigRational::new(67.into(), 108.into());
    let remaining = &estimated - BigRational::from_integer(big(elapsed.clone()));
    let exact_total = s62(64);
    DoomsdayReport {
        exact_remaining: BigCount(&exact_total - &elapsed),
        exact_total: BigCount(exact_total),
        estimated_total: Ratio::from_rational(&estimated),
        estimated_remaining: Ratio::from_rational(&remaining),
        colored_total: BigCount(colored_total),
        elapsed: BigCount(elapsed),
    }
}

/// `num/den` from machine integers.
pub fn rational(num: u64, den: u64) -> Ratio {
    Ratio::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Algorithm::*;

    fn n(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn per_disk_examples() {
        assert_eq!(per_disk(C100, 5).unwrap(), n(81));
        assert_eq!(per_disk(F67Down, 2).unwrap(), n(3));
        assert_eq!(per_disk(SemiFree, 6).unwrap(), n(183));
        assert_eq!(per_disk(F62, 7).unwrap(), n(455));
        assert_eq!(per_disk(Classical, 8).unwrap(), n(128));
        assert_eq!(per_disk(C100, 0), Err(MathError::ZeroIndex));
    }

    #[test]
    fn total_examples() {
        assert_eq!(total(C100, 7), n(1093));
        assert_eq!(total(F67Down, 6), n(248));
        assert_eq!(total(SemiFree, 7), n(823));
        assert_eq!(total(F62, 6), n(236));
        assert_eq!(total(Classical, 8), n(255));
        assert_eq!(total(F62, 0), n(0));
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(total_by_structure(F67Down, 4), n(30));
        assert_eq!(total_by_structure(SemiFree, 4), n(32));
        assert_eq!(total_by_recurrence(F62, 5), n(83));
        assert_eq!(per_disk_by_recurrence(F67Down, 4).unwrap(), n(19));
        assert_eq!(per_disk_by_recurrence(SemiFree, 5).unwrap(), n(61));
        assert_eq!(per_disk_by_recurrence(F62, 6).unwrap(), n(153));
        assert_eq!(
            per_disk_by_recurrence(F62, 4),
            Err(MathError::BelowRecurrence {
                alg: F62,
                k: 4,
                first: 5
            })
        );
        assert_eq!(per_disk_by_recurrence(F67Up, 0), Err(MathError::ZeroIndex));
    }

    #[test]
    fn all_routes_agree() {
        for alg in Algorithm::ALL {
            for m in 0..=30 {
                let t = total(alg, m);
                assert_eq!(total_by_recurrence(alg, m), t, "{alg} n={m}");
                assert_eq!(total_by_structure(alg, m), t, "{alg} n={m}");
                let sum: BigUint = (1..=m).map(|k| per_disk(alg, k).unwrap().0).sum();
                assert_eq!(BigCount(sum), t, "{alg} n={m}");
            }
            for k in first_recurrent_index(alg)..=30 {
                assert_eq!(
                    per_disk_by_recurrence(alg, k),
                    per_disk(alg, k),
                    "{alg} k={k}"
                );
            }
        }
    }

    #[test]
    fn ratios() {
        assert_eq!(duration_ratio(F67Down, 1).unwrap(), rational(1, 1));
        let r = duration_ratio(F67Down, 8).unwrap();
        assert_eq!(r.to_string(), "2194/3280");
        assert_eq!(r, rational(1097, 1640));
        assert_eq!(duration_ratio(F62, 8).unwrap().to_string(), "2050/3280");
        assert!(duration_ratio(Classical, 3).is_err());
        assert_eq!(limit_ratio(SemiFree).unwrap(), rational(3, 4));
        assert_eq!(limit_ratio(F67Down).unwrap(), rational(2, 3));
        assert_eq!(limit_ratio(F67Up).unwrap(), rational(2, 3));
        assert_eq!(limit_ratio(F62).unwrap(), rational(67, 108));
        assert!(limit_ratio(C100).is_err());
        assert!(limit_ratio(Classical).is_err());
    }

    #[test]
    fn decimal_rendering() {
        let r = rational(2, 3);
        assert_eq!(r.to_decimal(4), "0.6667");
        assert_eq!(r.to_decimal(0), "1");
        assert_eq!(rational(1, 8).to_decimal(2), "0.13");
        assert_eq!(rational(735, 1093).to_decimal(6), "0.672461");
        assert_eq!(
            rational(2, 3).significant_digits(3),
            Some(("667".to_string(), -1))
        );
        assert_eq!(
            rational(999, 1).significant_digits(2),
            Some(("10".to_string(), 3))
        );
        assert_eq!(rational(1234, 1).to_scientific(3), "1.23e3");
        assert_eq!(rational(0, 5).significant_digits(3), None);
    }

    #[test]
    fn doomsday_values() {
        let d = doomsday_report();
        assert_eq!(d.elapsed.to_string(), "9223372036854775808");
        assert_eq!(d.exact_total, total(F62, 64));
        assert_eq!(d.exact_total, total_by_recurrence(F62, 64));
        assert_eq!(d.estimated_total.to_scientific(16), "1.065077851664807e30");
        assert!(d.exact_total > d.elapsed);
    }
}

//! Primes, p-adic valuations, integer floor-logarithms, base-p digits and
//! the prime-power factorization of lcm(1, ..., N).
//!
//! Everything here is integer-only. Floor-logarithms in particular are
//! computed by repeated multiplication so that the boundary N = p^v is exact.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::scalar::{from_u64, Natural};

/// All primes up to `bound`, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeList {
    bound: u64,
    primes: Vec<u64>,
}

impl PrimeList {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }
}

/// Sieve of Eratosthenes.
pub fn primes_upto(bound: u64) -> PrimeList {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    PrimeList { bound, primes }
}

/// Largest `e` with `p^e | n`. Rejects `n = 0`.
pub fn nu_p<T: Natural>(n: &T, p: &T) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    assert!(*p > T::one(), "valuation base must be at least 2");
    let mut e = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// Largest `v` with `p^v <= n`.
///
/// # Panics
///
/// If `n = 0` or `p < 2`.
pub fn floor_log<T: Natural>(n: &T, p: &T) -> u32 {
    assert!(!n.is_zero(), "floor_log of zero");
    assert!(*p > T::one(), "floor_log base must be at least 2");
    let mut v = 0;
    let mut power = p.clone();
    while power <= *n {
        v += 1;
        power = power * p.clone();
    }
    v
}

/// lcm(1, ..., N) kept as a map from each prime `p <= N` to `floor_log(N, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmFactorization {
    bound: u64,
    factors: BTreeMap<u64, u32>,
}

impl LcmFactorization {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    /// Exponent of `p`, zero for primes above the bound (and for non-primes).
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    /// The expanded integer, built with a balanced product tree.
    pub fn value(&self) -> BigUint {
        let powers: Vec<BigUint> = self
            .factors
            .iter()
            .map(|(&p, &e)| BigUint::from(p).pow(e))
            .collect();
        product_tree(powers)
    }
}

fn product_tree(mut items: Vec<BigUint>) -> BigUint {
    if items.is_empty() {
        return BigUint::one();
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len() / 2 + 1);
        let mut it = items.into_iter();
        while let Some(x) = it.next() {
            match it.next() {
                Some(y) => next.push(x * y),
                None => next.push(x),
            }
        }
        items = next;
    }
    items.pop().unwrap()
}

pub fn lcm_range(bound: u64) -> LcmFactorization {
    assert!(bound >= 1, "lcm_range needs N >= 1");
    let factors = primes_upto(bound)
        .iter()
        .map(|p| (p, floor_log(&bound, &p)))
        .collect();
    LcmFactorization { bound, factors }
}

/// Little-endian base-`p` digits padded to a fixed width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion<T> {
    base: T,
    digits: Vec<T>,
}

impl<T: Natural> DigitExpansion<T> {
    pub fn base(&self) -> &T {
        &self.base
    }

    pub fn digits(&self) -> &[T] {
        &self.digits
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }

    /// Digit `i`, zero past the stored width.
    pub fn digit(&self, i: usize) -> T {
        self.digits.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Reconstructs `sum d_i p^i`.
    pub fn value(&self) -> T {
        self.digits
            .iter()
            .rev()
            .fold(T::zero(), |acc, d| acc * self.base.clone() + d.clone())
    }
}

/// Number of base-`p` digits needed to write `n` (one for `n = 0`).
pub fn digit_len<T: Natural>(n: &T, p: &T) -> usize {
    if n.is_zero() {
        1
    } else {
        floor_log(n, p) as usize + 1
    }
}

pub fn digits<T: Natural>(n: &T, p: &T, width: usize) -> Result<DigitExpansion<T>> {
    assert!(*p > T::one(), "digit base must be at least 2");
    let mut digits = Vec::with_capacity(width);
    let mut rest = n.clone();
    for _ in 0..width {
        let (q, r) = rest.div_rem(p);
        digits.push(r);
        rest = q;
    }
    if !rest.is_zero() {
        return Err(Error::DigitOverflow {
            value: n.to_string(),
            base: p.to_u64().unwrap_or(u64::MAX),
            width,
        });
    }
    Ok(DigitExpansion {
        base: p.clone(),
        digits,
    })
}

/// `p^e` in `T`.
pub fn pow<T: Natural>(p: u64, e: u32) -> T {
    let base: T = from_u64(p);
    (0..e).fold(T::one(), |acc, _| acc * base.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(n: u64) -> Vec<u64> {
        (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
    }

    #[test]
    fn sieve_small_bounds() {
        assert!(primes_upto(1).is_empty());
        assert_eq!(primes_upto(10).as_slice(), &[2, 3, 5, 7]);
        let p30 = primes_upto(30);
        assert_eq!(p30.len(), 10);
        assert_eq!(p30.as_slice().last(), Some(&29));
        assert_eq!(p30.as_slice(), trial_division_primes(30).as_slice());
    }

    #[test]
    fn sieve_matches_trial_division() {
        for n in [2, 3, 4, 97, 100, 1000] {
            assert_eq!(primes_upto(n).as_slice(), trial_division_primes(n).as_slice(), "n={n}");
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(nu_p(&12u64, &2).unwrap(), 2);
        assert_eq!(nu_p(&1u64, &3).unwrap(), 0);
        assert_eq!(nu_p(&250u64, &5).unwrap(), 3);
        assert!(matches!(nu_p(&0u64, &5), Err(Error::ZeroValuation)));
        let big = BigUint::from(3u32).pow(200u32) * BigUint::from(10u32);
        assert_eq!(nu_p(&big, &BigUint::from(3u32)).unwrap(), 200);
    }

    #[test]
    fn floor_logs() {
        assert_eq!(floor_log(&10u64, &2), 3);
        assert_eq!(floor_log(&6u64, &5), 1);
        assert_eq!(floor_log(&1000u64, &3), 6);
        assert_eq!(floor_log(&1u64, &2), 0);
        // exact prime powers sit on the boundary
        assert_eq!(floor_log(&729u64, &3), 6);
        assert_eq!(floor_log(&728u64, &3), 5);
        assert_eq!(floor_log(&1024u32, &2), 10);
    }

    #[test]
    fn lcm_values() {
        let one = lcm_range(1);
        assert!(one.factors().is_empty());
        assert_eq!(one.value(), BigUint::one());

        let six = lcm_range(6);
        let expected: BTreeMap<u64, u32> = [(2, 2), (3, 1), (5, 1)].into_iter().collect();
        assert_eq!(six.factors(), &expected);
        assert_eq!(six.value(), BigUint::from(60u32));

        assert_eq!(lcm_range(10).value(), BigUint::from(2520u32));
        assert_eq!(lcm_range(10).exponent(11), 0);
    }

    #[test]
    fn digit_expansions() {
        assert_eq!(digits(&0u64, &2, 3).unwrap().digits(), &[0, 0, 0]);
        assert_eq!(digits(&3u64, &2, 3).unwrap().digits(), &[1, 1, 0]);
        assert_eq!(digits(&2u64, &5, 2).unwrap().digits(), &[2, 0]);
        assert!(matches!(digits(&8u64, &2, 3), Err(Error::DigitOverflow { .. })));
        assert_eq!(digits(&7u64, &2, 3).unwrap().value(), 7);
        assert_eq!(digit_len(&0u64, &7), 1);
        assert_eq!(digit_len(&49u64, &7), 3);
    }

    #[test]
    fn generic_over_biguint() {
        let p = BigUint::from(7u32);
        let n = BigUint::from(7u32).pow(30u32);
        assert_eq!(floor_log(&n, &p), 30);
        let d = digits(&n, &p, 31).unwrap();
        assert_eq!(d.digit(30), BigUint::one());
        assert_eq!(d.value(), n);
        assert_eq!(pow::<BigUint>(7, 30), n);
    }
}

//! p-adic valuations of binomial coefficients.
//!
//! The primary route counts carries in base-p addition (Kummer). The oracle
//! route subtracts factorial valuations computed with Legendre's formula and
//! shares no code with the carry counter.

use crate::error::{Error, Result};
use crate::numth::{digit_len, digits};
use crate::scalar::Natural;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarryCount<T> {
    pub a: T,
    pub b: T,
    pub p: T,
    pub carries: u32,
}

/// Carries produced by schoolbook addition of `a` and `b` in base `p`.
pub fn count_carries<T: Natural>(a: &T, b: &T, p: &T) -> CarryCount<T> {
    let width = digit_len(a, p).max(digit_len(b, p)) + 1;
    let da = digits(a, p, width).expect("width covers a");
    let db = digits(b, p, width).expect("width covers b");
    let mut carry = T::zero();
    let mut carries = 0;
    for (x, y) in da.digits().iter().zip(db.digits()) {
        let sum = x.clone() + y.clone() + carry;
        if sum >= *p {
            carry = T::one();
            carries += 1;
        } else {
            carry = T::zero();
        }
    }
    CarryCount {
        a: a.clone(),
        b: b.clone(),
        p: p.clone(),
        carries,
    }
}

/// `nu_p(C(n, k))` as the carry count of `k + (n - k)`.
pub fn nu_p_binomial<T: Natural>(n: &T, k: &T, p: &T) -> Result<u32> {
    if k > n {
        return Err(range_error(n, k));
    }
    let rest = n.clone() - k.clone();
    Ok(count_carries(k, &rest, p).carries)
}

/// `nu_p(n!) = sum_i floor(n / p^i)`.
pub fn nu_p_factorial<T: Natural>(n: &T, p: &T) -> T {
    let mut total = T::zero();
    let mut q = n.clone() / p.clone();
    while !q.is_zero() {
        total = total + q.clone();
        q = q / p.clone();
    }
    total
}

/// `nu_p(n!) - nu_p(k!) - nu_p((n-k)!)`.
pub fn nu_p_binomial_oracle<T: Natural>(n: &T, k: &T, p: &T) -> Result<u32> {
    if k > n {
        return Err(range_error(n, k));
    }
    let rest = n.clone() - k.clone();
    let v = nu_p_factorial(n, p) - nu_p_factorial(k, p) - nu_p_factorial(&rest, p);
    Ok(v.to_u32().expect("valuation fits u32"))
}

fn range_error<T: Natural>(n: &T, k: &T) -> Error {
    Error::BinomialRange {
        n: n.to_u64().unwrap_or(u64::MAX),
        k: k.to_u64().unwrap_or(u64::MAX),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::{BigInt, BigUint};
    use proptest::prelude::*;

    use crate::numth::{nu_p, primes_upto};
    use crate::polyx::binomial;

    #[test]
    fn carry_examples() {
        assert_eq!(count_carries(&1u64, &2, &2).carries, 0);
        assert_eq!(count_carries(&2u64, &2, &2).carries, 1);
        assert_eq!(count_carries(&3u64, &3, &3).carries, 0);
        assert_eq!(count_carries(&0u64, &0, &2).carries, 0);
        // 1 + 111...1 in base 2 ripples through every digit
        assert_eq!(count_carries(&1u64, &255, &2).carries, 8);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(nu_p_binomial(&3u64, &1, &2).unwrap(), 0);
        assert_eq!(nu_p_binomial(&4u64, &2, &2).unwrap(), 1);
        assert_eq!(nu_p_binomial(&6u64, &3, &3).unwrap(), 0);
        assert!(matches!(nu_p_binomial(&3u64, &4, &2), Err(Error::BinomialRange { n: 3, k: 4 })));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(nu_p_binomial_oracle(&4u64, &2, &2).unwrap(), 1);
        for n in 0..50u64 {
            assert_eq!(nu_p_binomial_oracle(&n, &0, &7).unwrap(), 0);
        }
        // C(10,5) = 252 = 2^2 * 3^2 * 7, so no factor of 5
        assert_eq!(nu_p_binomial_oracle(&10u64, &5, &5).unwrap(), 0);
        assert_eq!(nu_p_binomial(&10u64, &5, &5).unwrap(), 0);
        assert!(nu_p_binomial_oracle(&3u64, &4, &2).is_err());
    }

    #[test]
    fn carries_bounded_by_digit_count() {
        for p in [2u64, 3, 5, 7] {
            for a in 0..60u64 {
                for b in 0..60u64 {
                    let c = count_carries(&a, &b, &p).carries as usize;
                    assert!(c <= digit_len(&(a + b), &p));
                }
            }
        }
    }

    #[test]
    fn prime_powers_rebuild_binomials() {
        for n in 0..=60u64 {
            let primes = primes_upto(n.max(1));
            for k in 0..=n {
                let rebuilt = primes.iter().fold(BigUint::from(1u32), |acc, p| {
                    acc * BigUint::from(p).pow(nu_p_binomial(&n, &k, &p).unwrap())
                });
                let direct = binomial::<BigInt>(n, k).to_biguint().unwrap();
                assert_eq!(rebuilt, direct, "C({n},{k})");
            }
        }
    }

    #[test]
    fn agrees_with_direct_valuation() {
        for n in 1..=40u64 {
            for k in 0..=n {
                let c = binomial::<BigInt>(n, k).to_biguint().unwrap();
                for p in primes_upto(n).iter() {
                    let direct = nu_p(&c, &BigUint::from(p)).unwrap();
                    assert_eq!(nu_p_binomial(&n, &k, &p).unwrap(), direct);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn symmetric_in_k(n in 0u64..1_000_000, frac in 0.0f64..=1.0, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 97])) {
            let k = ((n as f64) * frac) as u64;
            prop_assert_eq!(nu_p_binomial(&n, &k, &p).unwrap(), nu_p_binomial(&n, &(n - k), &p).unwrap());
        }

        #[test]
        fn kummer_matches_legendre(n in 0u64..1_000_000, frac in 0.0f64..=1.0, pi in 0usize..25) {
            let p = primes_upto(100).as_slice()[pi];
            let k = ((n as f64) * frac) as u64;
            prop_assert_eq!(nu_p_binomial(&n, &k, &p).unwrap(), nu_p_binomial_oracle(&n, &k, &p).unwrap());
        }
    }
}

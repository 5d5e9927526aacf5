use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use proptest::prelude::*;

use minpoly::numth::{digits, floor_log, lcm_range, primes_upto};
use minpoly::polyx::{beta_integral, integrate_01, Polynomial};
use minpoly::witness::solve_bezout;
use minpoly::{Error, IntPolynomial};

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_upto(200).as_slice().to_vec())
}

fn poly(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-10_000i64..10_000, 0..=max_deg + 1)
        .prop_map(|v| IntPolynomial::new(v.into_iter().map(BigInt::from).collect()))
}

fn big_entry() -> impl Strategy<Value = BigInt> {
    // up to ~10^30
    (0u64..1_000_000_000_000_000, 0u64..1_000_000_000_000_000, any::<bool>()).prop_map(|(hi, lo, neg)| {
        let v = BigInt::from(hi) * BigInt::from(1_000_000_000_000_000u64) + BigInt::from(lo);
        if neg {
            -v
        } else {
            v
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn digits_round_trip(n in 0u64..1_000_000_000, p in small_prime(), extra in 0usize..4) {
        let width = floor_log(&n.max(1), &p) as usize + 1 + extra;
        let d = digits(&n, &p, width).unwrap();
        prop_assert_eq!(d.width(), width);
        prop_assert!(d.digits().iter().all(|&x| x < p));
        prop_assert_eq!(d.value(), n);
    }

    #[test]
    fn floor_log_matches_brute_force(n in 1u64..10_000_000, p in small_prime()) {
        let mut v = 0;
        let mut power = 1u64;
        while power * p <= n {
            power *= p;
            v += 1;
        }
        prop_assert_eq!(floor_log(&n, &p), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn integration_is_linear(p in poly(30), q in poly(30), k in -50i64..50) {
        let k = BigInt::from(k);
        prop_assert_eq!(integrate_01(&(&p + &q)), integrate_01(&p) + integrate_01(&q));
        prop_assert_eq!(integrate_01(&p.scale(&k)), integrate_01(&p) * Ratio::from_integer(k));
    }

    #[test]
    fn integral_invariant_under_reflection(p in poly(40)) {
        prop_assert_eq!(integrate_01(&p), integrate_01(&p.reflect()));
    }

    #[test]
    fn integral_denominator_divides_lcm(p in poly(40)) {
        let n = p.degree().unwrap_or(0) as u64 + 1;
        let l = BigInt::from(lcm_range(n).value());
        prop_assert!(l.is_multiple_of(integrate_01(&p).denom()));
    }

    #[test]
    fn beta_is_symmetric(a in 0u64..80, b in 0u64..80) {
        prop_assert_eq!(beta_integral::<BigInt>(a, b), beta_integral::<BigInt>(b, a));
    }

    #[test]
    fn beta_denominator_divides_lcm(a in 0u64..100, b in 0u64..100, slack in 1u64..20) {
        let n = a + b + slack;
        let l = BigInt::from(lcm_range(n).value());
        prop_assert!(l.is_multiple_of(beta_integral::<BigInt>(a, b).denom()));
    }

    #[test]
    fn small_scalar_instantiation_agrees(v in prop::collection::vec(-100i64..100, 0..12)) {
        let small = Polynomial::<i64>::new(v.clone());
        let big = IntPolynomial::new(v.into_iter().map(BigInt::from).collect());
        let s = integrate_01(&small);
        let b = integrate_01(&big);
        prop_assert_eq!(BigInt::from(*s.numer()), b.numer().clone());
        prop_assert_eq!(BigInt::from(*s.denom()), b.denom().clone());
    }

    #[test]
    fn polynomial_text_round_trips(p in poly(20)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<IntPolynomial>().unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bezout_solutions(mut c in prop::collection::vec(big_entry(), 1..50)) {
        let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_one() {
            // make the list coprime; the prime 10^9 + 7 against a multiple of g
            c.push(BigInt::from(1_000_000_007u64));
            if !c.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one() {
                prop_assert!(matches!(solve_bezout(&c), Err(Error::NotCoprime(_))));
                return Ok(());
            }
        }
        let y = solve_bezout(&c).unwrap();
        let dot: BigInt = c.iter().zip(&y).map(|(a, b)| a * b).sum();
        prop_assert!(dot.is_one());
    }
}

#[test]
fn lcm_exponents_and_divisibility() {
    for n in 1..=2000u64 {
        let f = lcm_range(n);
        for p in primes_upto(n).iter() {
            assert_eq!(f.exponent(p), floor_log(&n, &p));
        }
        if n <= 300 {
            let v = f.value();
            for k in 1..=n {
                assert!((&v % BigUint::from(k)).is_zero());
            }
            // no prime factor above N
            assert!(f.factors().keys().all(|&p| p <= n));
        }
    }
}

#[test]
fn bezout_rejects_shared_factor() {
    let c: Vec<BigInt> = [6i64, 10, 14].iter().map(|&x| BigInt::from(x)).collect();
    assert!(matches!(solve_bezout(&c), Err(Error::NotCoprime(g)) if g == BigInt::from(2)));
}

//! Deciding whether some member of S_N is divisible by `x^a (1 - x)^b`.
//!
//! Two independent routes:
//!
//! * the coefficient route builds `c_n = l_N / ((a+b+n+1) C(a+b+n, a))` for
//!   `n = 0..=R` (with `R = N - a - b - 1`) and asks whether their gcd is 1;
//! * the prime route asks, for every prime `p <= N`, for an index `n_p` in
//!   the same window with `nu_p((a+b+n_p+1) C(a+b+n_p, a)) >= floor_log(N, p)`,
//!   using carry counts instead of materializing the binomial.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kummer::nu_p_binomial;
use crate::numth::{floor_log, lcm_range, nu_p, primes_upto};

/// `(N, a, b)` with `a + b < N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorQuery {
    #[serde(rename = "N")]
    n: u64,
    a: u64,
    b: u64,
}

impl DivisorQuery {
    pub fn new(n: u64, a: u64, b: u64) -> Result<Self> {
        if n == 0 || a.checked_add(b).is_none_or(|s| s >= n) {
            return Err(Error::InvalidQuery { n, a, b });
        }
        Ok(DivisorQuery { n, a, b })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `R = N - a - b - 1`, the top index of the tail.
    pub fn tail_len_minus_one(&self) -> u64 {
        self.n - self.a - self.b - 1
    }

    /// The query for `x^b (1 - x)^a`.
    pub fn mirrored(&self) -> Self {
        DivisorQuery { n: self.n, a: self.b, b: self.a }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCoefficients {
    pub query: DivisorQuery,
    pub lcm: BigInt,
    pub c: Vec<BigInt>,
}

pub fn bezout_coefficients(q: &DivisorQuery) -> Result<BezoutCoefficients> {
    let lcm = BigInt::from(lcm_range(q.n).value());
    let (a, b) = (q.a, q.b);
    // C(a+b+n, a), advanced by C(s, a) = C(s-1, a) * s / (s - a)
    let mut binom = crate::polyx::binomial::<BigInt>(a + b, a);
    let mut c = Vec::with_capacity(q.tail_len_minus_one() as usize + 1);
    for n in 0..=q.tail_len_minus_one() {
        let s = a + b + n;
        if n > 0 {
            binom = binom * BigInt::from(s) / BigInt::from(s - a);
        }
        let denom = BigInt::from(s + 1) * &binom;
        let (quot, rem) = lcm.div_rem(&denom);
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!(
                "c_{n} for N={}, a={a}, b={b}",
                q.n
            )));
        }
        c.push(quot);
    }
    Ok(BezoutCoefficients { query: *q, lcm, c })
}

/// Running gcd of the coefficients, stopping as soon as it reaches 1.
pub fn decide_by_gcd(q: &DivisorQuery) -> Result<(bool, BigInt)> {
    let coeffs = bezout_coefficients(q)?;
    let mut g = BigInt::zero();
    for c in &coeffs.c {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    Ok((g.is_one(), g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub p: u64,
    /// `floor_log(N, p)`, the exponent of `p` in `l_N`.
    pub required: u32,
    /// First index in the window reaching `required`.
    pub n_p: Option<u64>,
    /// Valuation at `n_p`, or the best valuation over the window when absent.
    pub achieved: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub holds: bool,
    /// gcd of the `c_n`, rebuilt from the per-prime shortfalls.
    #[serde(with = "crate::dec")]
    pub gcd: BigInt,
    pub primes: Vec<PrimeEntry>,
}

impl CriterionReport {
    pub fn query(&self) -> DivisorQuery {
        DivisorQuery { n: self.n, a: self.a, b: self.b }
    }

    pub fn first_failure(&self) -> Option<&PrimeEntry> {
        self.primes.iter().find(|e| e.n_p.is_none())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// `nu_p((a + b + n + 1) C(a + b + n, a))`.
pub fn window_valuation(a: u64, b: u64, n: u64, p: u64) -> u32 {
    let s = a + b + n;
    nu_p(&(s + 1), &p).expect("s + 1 > 0") + nu_p_binomial(&s, &a, &p).expect("a <= s")
}

/// Primes up to N with their required exponents, shared by every query at
/// the same N.
#[derive(Clone, Debug)]
pub struct CriterionContext {
    n: u64,
    primes: Vec<(u64, u32)>,
}

impl CriterionContext {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "criterion needs N >= 1");
        let primes = primes_upto(n).iter().map(|p| (p, floor_log(&n, &p))).collect();
        CriterionContext { n, primes }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    fn entry(&self, q: &DivisorQuery, p: u64, required: u32) -> PrimeEntry {
        let mut best = 0;
        for n in 0..=q.tail_len_minus_one() {
            let v = window_valuation(q.a, q.b, n, p);
            if v >= required {
                return PrimeEntry { p, required, n_p: Some(n), achieved: v };
            }
            best = best.max(v);
        }
        PrimeEntry { p, required, n_p: None, achieved: best }
    }

    /// Early-exit decision: stops at the first prime with no valid index.
    pub fn holds(&self, a: u64, b: u64) -> Result<bool> {
        let q = DivisorQuery::new(self.n, a, b)?;
        let r = q.tail_len_minus_one();
        Ok(self
            .primes
            .iter()
            .all(|&(p, required)| (0..=r).any(|n| window_valuation(a, b, n, p) >= required)))
    }

    pub fn report(&self, a: u64, b: u64) -> Result<CriterionReport> {
        let q = DivisorQuery::new(self.n, a, b)?;
        let primes: Vec<PrimeEntry> = self
            .primes
            .par_iter()
            .map(|&(p, required)| self.entry(&q, p, required))
            .collect();
        // nu_p(c_n) = required - valuation at n, so nu_p(gcd) is the
        // shortfall of the best index
        let gcd = primes
            .iter()
            .filter(|e| e.n_p.is_none())
            .fold(BigUint::one(), |acc, e| acc * BigUint::from(e.p).pow(e.required - e.achieved));
        Ok(CriterionReport {
            n: q.n,
            a: q.a,
            b: q.b,
            holds: primes.iter().all(|e| e.n_p.is_some()),
            gcd: BigInt::from(gcd),
            primes,
        })
    }
}

pub fn decide_by_primes(q: &DivisorQuery) -> CriterionReport {
    CriterionContext::new(q.n)
        .report(q.a, q.b)
        .expect("query already validated")
}

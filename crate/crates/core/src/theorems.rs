//! The `(x^3 (1 - x)^2)^floor(N/6)` construction, checked prime by prime;
//! the census of the largest admissible `a + b`; and the exponentiated
//! Gelfond-Shnirelman-Nair bound `l_N >= 4^floor((N-1)/2)`.
//!
//! For a prime `p <= N` put `M = floor(N/6)`, `v = floor_log(N, p)` and write
//! `2M`, `3M` with `v + 1` base-p digits `a_i`, `b_i`. With `i1` the least
//! index such that `a_i + b_i >= p - 1` for all `i1 <= i < v`, the index
//! `n_p = sum_{i < i1} (p - 1 - a_i - b_i) p^i` must satisfy
//!
//! * (C1) `n_p >= 0`,
//! * (C2) `p^v | (5M + n_p + 1) C(5M + n_p, 2M)`,
//! * (C3) `5M + n_p + 1 <= N`.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criterion::{window_valuation, CriterionContext, DivisorQuery};
use crate::error::{Error, Result};
use crate::kummer::count_carries;
use crate::numth::{digits, floor_log, lcm_range, nu_p, primes_upto, DigitExpansion};
use crate::witness::{construct, Witness};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructiveNp {
    pub n: u64,
    pub p: u64,
    /// `floor(N / 6)`
    pub m: u64,
    /// `floor_log(N, p)`
    pub v: u32,
    pub a_digits: DigitExpansion<u64>,
    pub b_digits: DigitExpansion<u64>,
    pub i1: u32,
    /// Signed on purpose: (C1) is a claim about this value, not a type fact.
    pub n_p: i128,
}

pub fn constructive_np(n: u64, p: u64) -> Result<ConstructiveNp> {
    if p < 2 || p > n {
        return Err(Error::InvalidArgument(format!("need a prime p <= N, got p={p}, N={n}")));
    }
    let m = n / 6;
    let v = floor_log(&n, &p);
    let width = v as usize + 1;
    let a_digits = digits(&(2 * m), &p, width)?;
    let b_digits = digits(&(3 * m), &p, width)?;

    let mut i1 = v;
    while i1 > 0 {
        let i = i1 as usize - 1;
        if a_digits.digit(i) + b_digits.digit(i) >= p - 1 {
            i1 -= 1;
        } else {
            break;
        }
    }

    let mut n_p: i128 = 0;
    let mut power: i128 = 1;
    for i in 0..i1 as usize {
        let term = (p - 1) as i128 - a_digits.digit(i) as i128 - b_digits.digit(i) as i128;
        n_p += term * power;
        power *= p as i128;
    }
    Ok(ConstructiveNp { n, p, m, v, a_digits, b_digits, i1, n_p })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C123Entry {
    pub p: u64,
    pub required: u32,
    pub n_p: i128,
    /// `nu_p((5M + n_p + 1) C(5M + n_p, 2M))`, absent when (C1) fails.
    pub achieved: Option<u32>,
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
}

impl C123Entry {
    pub fn ok(&self) -> bool {
        self.c1 && self.c2 && self.c3
    }
}

/// Evaluates (C1)-(C3) for every prime `p <= N` without judging them.
pub fn c123_report(n: u64) -> Vec<C123Entry> {
    assert!(n >= 1, "N must be positive");
    primes_upto(n)
        .iter()
        .map(|p| {
            let c = constructive_np(n, p).expect("p <= N");
            let c1 = c.n_p >= 0;
            let (achieved, c2, c3) = if c1 {
                let np = c.n_p as u64;
                let top = 5 * c.m + np;
                let v = nu_p(&(top + 1), &p).expect("positive") + count_carries(&(2 * c.m), &(3 * c.m + np), &p).carries;
                (Some(v), v >= c.v, top < n)
            } else {
                (None, false, false)
            };
            C123Entry { p, required: c.v, n_p: c.n_p, achieved, c1, c2, c3 }
        })
        .collect()
}

pub fn verify_c123(n: u64) -> Result<Vec<C123Entry>> {
    let entries = c123_report(n);
    if let Some(bad) = entries.iter().find(|e| !e.ok()) {
        return Err(Error::TheoremViolation {
            n,
            p: bad.p,
            detail: format!("n_p={} C1={} C2={} C3={}", bad.n_p, bad.c1, bad.c2, bad.c3),
        });
    }
    Ok(entries)
}

/// Checks the construction for `N` and returns a certified member of S_N
/// divisible by `(x^3 (1 - x)^2)^floor(N/6)`.
///
/// The digit construction pairs `2M` with the first factor of the binomial,
/// i.e. it answers the query `(N, 2M, 3M)`; each `n_p` is re-checked against
/// the criterion for that query. The returned witness is for `(N, 3M, 2M)`,
/// which the reflection `x -> 1 - x` makes equivalent.
pub fn verify_main_theorem(n: u64) -> Result<Witness> {
    let entries = verify_c123(n)?;
    let m = n / 6;
    let proof_query = DivisorQuery::new(n, 2 * m, 3 * m)?;
    let window = proof_query.tail_len_minus_one() as i128;
    for e in &entries {
        let violation = |detail: String| Error::TheoremViolation { n, p: e.p, detail };
        if e.n_p < 0 || e.n_p > window {
            return Err(violation(format!("n_p={} outside [0, {window}]", e.n_p)));
        }
        let v = window_valuation(2 * m, 3 * m, e.n_p as u64, e.p);
        if v < e.required {
            return Err(violation(format!("criterion valuation {v} < {}", e.required)));
        }
    }
    match construct(&DivisorQuery::new(n, 3 * m, 2 * m)?) {
        Err(Error::CriterionFails(rep)) => Err(Error::TheoremViolation {
            n,
            p: rep.first_failure().map_or(0, |e| e.p),
            detail: "criterion rejects (N, 3M, 2M)".into(),
        }),
        other => other,
    }
}

/// For one `N`: the largest `a + b < N` admitting a member of S_N divisible
/// by `x^a (1 - x)^b`, and every pair attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    #[serde(rename = "N")]
    pub n: u64,
    pub max_sum: u64,
    /// Sorted by `a`.
    pub pairs: Vec<(u64, u64)>,
}

impl CensusRecord {
    /// `max_sum / N`, reduced.
    pub fn ratio(&self) -> Rational {
        Rational::new(BigInt::from(self.max_sum), BigInt::from(self.n))
    }

    pub fn csv_row(&self) -> String {
        let r = self.ratio();
        let pairs: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{a}:{b}")).collect();
        format!("{},{},{},{},{}", self.n, self.max_sum, r.numer(), r.denom(), pairs.join(";"))
    }
}

pub const CENSUS_CSV_HEADER: &str = "N,max_sum,ratio_num,ratio_den,pairs";

pub fn census_csv(records: &[CensusRecord]) -> String {
    let mut out = String::from(CENSUS_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Scans sums downward from `N - 1`. The criterion is symmetric in `a, b`,
/// so only `a <= b` is tested and passing pairs are mirrored.
pub fn census_record(n: u64) -> CensusRecord {
    assert!(n >= 1, "N must be positive");
    let ctx = CriterionContext::new(n);
    for s in (0..n).rev() {
        let mut pairs = Vec::new();
        for a in 0..=s / 2 {
            let b = s - a;
            if ctx.holds(a, b).expect("a + b < N") {
                pairs.push((a, b));
                if a != b {
                    pairs.push((b, a));
                }
            }
        }
        if !pairs.is_empty() {
            pairs.sort_unstable();
            return CensusRecord { n, max_sum: s, pairs };
        }
    }
    unreachable!("(0, 0) always passes")
}

pub fn divisor_census(lo: u64, hi: u64) -> Result<Vec<CensusRecord>> {
    if lo == 0 || lo > hi {
        return Err(Error::InvalidArgument(format!("census range {lo}..={hi}")));
    }
    Ok(census_records(&(lo..=hi).collect::<Vec<_>>()))
}

/// Census records for arbitrary sizes, in the order given.
pub fn census_records(sizes: &[u64]) -> Vec<CensusRecord> {
    sizes.par_iter().map(|&n| census_record(n)).collect()
}

/// Sizes `N = 2(q - 1)` for primes `3 <= q <= q_max`, the family on which
/// the `5/6` upper bound for the liminf is argued.
pub fn optimality_probe_sizes(q_max: u64) -> Vec<u64> {
    primes_upto(q_max.max(1)).iter().filter(|&q| q >= 3).map(|q| 2 * (q - 1)).collect()
}

/// `l_N >= 4^floor((N - 1) / 2)`, in exact integers.
pub fn gsn_inequality_check(n: u64) -> bool {
    assert!(n >= 1, "N must be positive");
    let k = (n - 1) / 2;
    lcm_range(n).value() >= BigUint::one() << (2 * k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructive_examples() {
        let c = constructive_np(6, 5).unwrap();
        assert_eq!((c.m, c.v, c.i1, c.n_p), (1, 1, 0, 0));
        assert_eq!(c.a_digits.digits(), &[2, 0]);
        assert_eq!(c.b_digits.digits(), &[3, 0]);

        let c = constructive_np(6, 2).unwrap();
        assert_eq!(c.v, 2);
        assert_eq!(c.a_digits.digits(), &[0, 1, 0]);
        assert_eq!(c.b_digits.digits(), &[1, 1, 0]);
        assert_eq!((c.i1, c.n_p), (0, 0));

        let c = constructive_np(6, 3).unwrap();
        assert_eq!((c.v, c.i1, c.n_p), (1, 0, 0));

        assert!(constructive_np(6, 7).is_err());
    }

    #[test]
    fn i1_is_minimal() {
        for n in 1..=300 {
            for p in primes_upto(n).iter() {
                let c = constructive_np(n, p).unwrap();
                let ok = |i: usize| c.a_digits.digit(i) + c.b_digits.digit(i) >= p - 1;
                assert!((c.i1 as usize..c.v as usize).all(ok));
                if c.i1 > 0 {
                    assert!(!ok(c.i1 as usize - 1), "N={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn small_n_is_trivial() {
        for n in 1..=5 {
            assert!(verify_c123(n).unwrap().iter().all(C123Entry::ok));
            let w = verify_main_theorem(n).unwrap();
            assert_eq!((w.query.a(), w.query.b()), (0, 0));
        }
        assert_eq!(verify_main_theorem(1).unwrap().expanded.to_string(), "1");
    }

    #[test]
    fn c123_at_six_and_hundred() {
        let six = verify_c123(6).unwrap();
        assert!(six.iter().all(|e| e.n_p == 0));
        assert_eq!(six[0].achieved, Some(2));
        assert_eq!(verify_c123(100).unwrap().len(), 25);
    }

    #[test]
    fn main_theorem_examples() {
        assert_eq!(verify_main_theorem(6).unwrap().expanded.to_string(), "0,0,0,1,-2,1");
        let w = verify_main_theorem(7).unwrap();
        assert_eq!((w.query.a(), w.query.b()), (3, 2));
        assert!(w.expanded.degree().unwrap() < 7);
    }

    #[test]
    fn census_small() {
        let r = census_record(6);
        assert_eq!(r.max_sum, 5);
        assert_eq!(r.pairs, vec![(2, 3), (3, 2)]);
        assert_eq!(r.csv_row(), "6,5,5,6,2:3;3:2");
        assert!(census_record(12).max_sum >= 10);
        assert_eq!(census_record(1).pairs, vec![(0, 0)]);
        assert!(divisor_census(0, 3).is_err());
        assert!(divisor_census(5, 3).is_err());
    }

    #[test]
    fn gsn_examples() {
        assert!(gsn_inequality_check(10));
        assert!(gsn_inequality_check(1));
        assert!(gsn_inequality_check(1000));
    }

    #[test]
    fn probe_sizes() {
        assert_eq!(optimality_probe_sizes(13), vec![4, 8, 12, 20, 24]);
    }
}

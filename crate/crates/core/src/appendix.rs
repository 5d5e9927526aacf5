//! Members of S_N divisible by
//! `Q_N = x^floor(N/2) (1 - x)^floor(N/3) (1 - x - x^2)^floor(N/19)`.
//!
//! `P = Q_N q` with `q = sum y_i x^i` of degree at most
//! `m = N - floor(N/2) - floor(N/3) - 2 floor(N/19) - 1` lies in S_N exactly
//! when `sum c_i y_i = 1` for `c_i = l_N I(Q_N x^i)`, so each N is decided
//! by `gcd(c_0, ..., c_m)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::lcm_range;
use crate::polyx::{expand_trinomial_power, integrate_01, TailBasis};
use crate::witness::solve_bezout;
use crate::{IntPolynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrinomialQuery {
    #[serde(rename = "N")]
    n: u64,
    /// exponent of `x`
    a: u64,
    /// exponent of `1 - x`
    b: u64,
    /// exponent of `1 - x - x^2`
    c: u64,
}

impl TrinomialQuery {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("trinomial family starts at N = 3, got {n}")));
        }
        Self::with_exponents(n, n / 2, n / 3, n / 19)
    }

    /// Arbitrary exponents with `a + b + 2c < N`.
    pub fn with_exponents(n: u64, a: u64, b: u64, c: u64) -> Result<Self> {
        if n == 0 || a + b + 2 * c >= n {
            return Err(Error::InvalidArgument(format!(
                "deg Q = {} must be below N = {n}",
                a + b + 2 * c
            )));
        }
        Ok(TrinomialQuery { n, a, b, c })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn exponents(&self) -> (u64, u64, u64) {
        (self.a, self.b, self.c)
    }

    /// Largest tail degree `m = N - deg Q - 1`.
    pub fn tail_degree(&self) -> u64 {
        self.n - self.a - self.b - 2 * self.c - 1
    }

    /// `Q_N / x^a = (1 - x)^b (1 - x - x^2)^c`.
    fn cofactor(&self) -> IntPolynomial {
        &IntPolynomial::one_minus_x_pow(self.b) * &expand_trinomial_power(self.c)
    }

    pub fn divisor(&self) -> IntPolynomial {
        self.cofactor().shift(self.a as usize)
    }
}

/// `l_N / k` for `k = 1..=N`, each division checked.
fn scaled_reciprocals(lcm: &BigInt, n: u64) -> Result<Vec<BigInt>> {
    let mut w = vec![BigInt::zero()];
    for k in 1..=n {
        let (q, r) = lcm.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!("l_{n} / {k}")));
        }
        w.push(q);
    }
    Ok(w)
}

/// `l_N I(x^shift F)` as the integer `sum f_j l_N / (shift + j + 1)`.
fn scaled_integral(f: &IntPolynomial, shift: u64, weights: &[BigInt]) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for (j, fj) in f.coeffs().iter().enumerate() {
        if fj.is_zero() {
            continue;
        }
        let k = shift as usize + j + 1;
        let w = weights
            .get(k)
            .ok_or_else(|| Error::InexactDivision(format!("1/{k} exceeds l_N")))?;
        acc += fj * w;
    }
    Ok(acc)
}

/// `c_i = l_N I(Q_N t_i)` for `i = 0..=m`, where `t_i` is `x^i` or `(1-x)^i`.
pub fn tail_coefficients(q: &TrinomialQuery, basis: TailBasis) -> Result<Vec<BigInt>> {
    let lcm = BigInt::from(lcm_range(q.n).value());
    let weights = scaled_reciprocals(&lcm, q.n)?;
    let cofactor = q.cofactor();
    let m = q.tail_degree();
    match basis {
        TailBasis::Monomial => (0..=m).map(|i| scaled_integral(&cofactor, q.a + i, &weights)).collect(),
        TailBasis::OneMinusX => {
            let step = IntPolynomial::new(vec![BigInt::one(), -BigInt::one()]);
            let mut f = cofactor;
            let mut out = Vec::with_capacity(m as usize + 1);
            for _ in 0..=m {
                out.push(scaled_integral(&f, q.a, &weights)?);
                f = &f * &step;
            }
            Ok(out)
        }
    }
}

/// Monomial-basis coefficients, mirroring the reference computation.
pub fn trinomial_coefficients(q: &TrinomialQuery) -> Result<Vec<BigInt>> {
    tail_coefficients(q, TailBasis::Monomial)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrinomialWitness {
    pub query: TrinomialQuery,
    /// Tail `q = sum y_i x^i`.
    pub y: Vec<BigInt>,
    pub expanded: IntPolynomial,
    pub integral: Rational,
}

impl TrinomialWitness {
    /// Exact division by `Q_N` recovering the tail, the degree bound and the
    /// integral, recomputed from the expansion alone.
    pub fn certify(&self) -> Result<()> {
        let n = self.query.n;
        let fail = |what: &str| Err(Error::Certification(format!("trinomial N={n}: {what}")));
        let (quot, rem) = self
            .expanded
            .div_rem(&self.query.divisor())
            .expect("Q_N has unit leading coefficient");
        if !rem.is_zero() {
            return fail("Q_N does not divide P");
        }
        if quot != IntPolynomial::new(self.y.clone()) {
            return fail("quotient is not the stated tail");
        }
        if self.expanded.degree().is_some_and(|d| d as u64 >= n) {
            return fail("degree >= N");
        }
        let expected = Rational::new(BigInt::one(), BigInt::from(lcm_range(n).value()));
        if integrate_01(&self.expanded) != expected || self.integral != expected {
            return fail("integral != 1/l_N");
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let (a, b, c) = self.query.exponents();
        serde_json::json!({
            "N": self.query.n,
            "A": a,
            "B": b,
            "C": c,
            "y": self.y.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "poly": self.expanded.to_string(),
            "integral": self.integral.to_string(),
        })
        .to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AppendixOutcome {
    Solved(Box<TrinomialWitness>),
    /// The coefficients share the factor `gcd`.
    Exception { n: u64, gcd: BigInt },
}

/// Decides one `N` and, when solvable, builds and certifies the witness.
pub fn appendix_case(q: &TrinomialQuery) -> Result<AppendixOutcome> {
    let coeffs = trinomial_coefficients(q)?;
    let y = match solve_bezout(&coeffs) {
        Ok(y) => y,
        Err(Error::NotCoprime(gcd)) => return Ok(AppendixOutcome::Exception { n: q.n, gcd }),
        Err(e) => return Err(e),
    };
    let tail = IntPolynomial::new(y.clone());
    let expanded = &q.divisor() * &tail;
    let integral = integrate_01(&expanded);
    let w = TrinomialWitness { query: *q, y, expanded, integral };
    w.certify()?;
    Ok(AppendixOutcome::Solved(Box::new(w)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixReport {
    pub n_max: u64,
    pub exceptions: Vec<u64>,
    pub checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses_path: Option<String>,
}

/// Runs every `N` in `3..=n_max`, calling `on_case` as each finishes.
pub fn replicate_appendix_with<F>(n_max: u64, on_case: F) -> Result<AppendixReport>
where
    F: Fn(&AppendixOutcome) + Sync,
{
    if n_max < 3 {
        return Err(Error::InvalidArgument(format!("n_max must be at least 3, got {n_max}")));
    }
    let outcomes: Vec<Result<Option<u64>>> = (3..=n_max)
        .into_par_iter()
        .map(|n| {
            let outcome = appendix_case(&TrinomialQuery::new(n)?)?;
            on_case(&outcome);
            Ok(match outcome {
                AppendixOutcome::Exception { n, .. } => Some(n),
                AppendixOutcome::Solved(_) => None,
            })
        })
        .collect();
    let mut exceptions = Vec::new();
    for o in outcomes {
        if let Some(n) = o? {
            exceptions.push(n);
        }
    }
    Ok(AppendixReport {
        n_max,
        exceptions,
        checked: n_max - 2,
        witnesses_path: None,
    })
}

pub fn replicate_appendix(n_max: u64) -> Result<Vec<u64>> {
    replicate_appendix_with(n_max, |_| {}).map(|r| r.exceptions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_shapes() {
        let q = TrinomialQuery::new(38).unwrap();
        assert_eq!(q.exponents(), (19, 12, 2));
        assert_eq!(q.tail_degree(), 2);
        assert_eq!(TrinomialQuery::new(3).unwrap().tail_degree(), 0);
        assert!(TrinomialQuery::new(2).is_err());
        assert!(TrinomialQuery::with_exponents(10, 5, 3, 1).is_err());
        for n in 3..=2000 {
            let q = TrinomialQuery::new(n).unwrap();
            assert!(q.divisor().degree().unwrap() < n as usize);
        }
    }

    #[test]
    fn coefficients_at_three() {
        assert_eq!(trinomial_coefficients(&TrinomialQuery::new(3).unwrap()).unwrap(), vec![BigInt::one()]);
    }

    #[test]
    fn coefficients_match_rational_integration() {
        for n in [19u64, 38, 57] {
            let q = TrinomialQuery::new(n).unwrap();
            let lcm = BigInt::from(lcm_range(n).value());
            let fast = trinomial_coefficients(&q).unwrap();
            assert_eq!(fast.len() as u64, q.tail_degree() + 1);
            for (i, c) in fast.iter().enumerate() {
                let slow = integrate_01(&q.divisor().shift(i)) * Rational::from_integer(lcm.clone());
                assert!(slow.is_integer());
                assert_eq!(&slow.to_integer(), c, "N={n} i={i}");
            }
        }
    }

    #[test]
    fn witness_at_three() {
        match appendix_case(&TrinomialQuery::new(3).unwrap()).unwrap() {
            AppendixOutcome::Solved(w) => {
                assert_eq!(w.expanded.to_string(), "0,1,-1");
                assert_eq!(w.integral, Rational::new(1.into(), 6.into()));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(replicate_appendix(3).unwrap().is_empty());
    }

    #[test]
    fn exception_is_reported_as_data() {
        // x^3 alone at N = 4 fails: c = l_4 / 4 = 3
        let q = TrinomialQuery::with_exponents(4, 3, 0, 0).unwrap();
        assert_eq!(
            appendix_case(&q).unwrap(),
            AppendixOutcome::Exception { n: 4, gcd: BigInt::from(3) }
        );
    }

    #[test]
    fn small_range_has_no_exceptions() {
        let rep = replicate_appendix_with(60, |_| {}).unwrap();
        assert!(rep.exceptions.is_empty());
        assert_eq!(rep.checked, 58);
        assert!(replicate_appendix(2).is_err());
    }
}

//! Explicit members of S_N divisible by `x^a (1 - x)^b`.
//!
//! A witness is `x^a (1 - x)^b sum y_n (1 - x)^n` where the tail coefficients
//! solve `sum c_n y_n = 1` for the criterion coefficients `c_n`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::criterion::{bezout_coefficients, decide_by_primes, DivisorQuery};
use crate::error::{Error, Result};
use crate::numth::lcm_range;
use crate::polyx::{expand_product, integrate_01, TailBasis};
use crate::{IntPolynomial, Rational};

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Integers `y` with `sum c_n y_n = 1`.
///
/// The extended gcd is folded left to right until the running gcd reaches 1
/// at some index `m`; later entries get `y_n = 0`. Each earlier `y_n` is then
/// replaced by its balanced residue modulo `|c_m|`, with `y_m` absorbing the
/// difference, which makes the output canonical and keeps it small.
pub fn solve_bezout(c: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut y: Vec<BigInt> = vec![BigInt::zero(); c.len()];
    let mut g = BigInt::zero();
    let mut pivot = None;
    for (k, ck) in c.iter().enumerate() {
        let (next, s, t) = ext_gcd(&g, ck);
        if next == g {
            continue;
        }
        for yi in &mut y[..k] {
            *yi *= &s;
        }
        y[k] = t;
        g = next;
        if g.is_one() {
            pivot = Some(k);
            break;
        }
    }
    let Some(m) = pivot else {
        return Err(Error::NotCoprime(g));
    };

    let modulus = c[m].abs();
    let sign = if c[m].sign() == Sign::Minus { -BigInt::one() } else { BigInt::one() };
    for n in 0..m {
        let mut r = y[n].mod_floor(&modulus);
        if BigInt::from(2) * &r > modulus {
            r -= &modulus;
        }
        let t = (&y[n] - &r) / &modulus;
        y[m] += &t * &c[n] * &sign;
        y[n] = r;
    }
    Ok(y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub query: DivisorQuery,
    /// Tail coefficients in the `(1 - x)^n` basis.
    pub y: Vec<BigInt>,
    pub expanded: IntPolynomial,
    pub integral: Rational,
}

impl Witness {
    fn build(query: DivisorQuery, y: Vec<BigInt>) -> Result<Self> {
        let tail = IntPolynomial::new(y.clone());
        let expanded = expand_product(query.a(), query.b(), &tail, TailBasis::OneMinusX);
        let integral = integrate_01(&expanded);
        let w = Witness { query, y, expanded, integral };
        w.certify()?;
        Ok(w)
    }

    /// Re-checks every defining property without trusting how `expanded`
    /// was built: the Bezout identity, divisibility by exact division, the
    /// tail recovered by reflection, the degree bound and the integral.
    pub fn certify(&self) -> Result<()> {
        let q = &self.query;
        let fail = |what: &str| Err(Error::Certification(format!("N={}, a={}, b={}: {what}", q.n(), q.a(), q.b())));

        let coeffs = bezout_coefficients(q)?;
        if coeffs.c.len() != self.y.len() {
            return fail("tail length differs from N - a - b");
        }
        let dot: BigInt = coeffs.c.iter().zip(&self.y).map(|(c, y)| c * y).sum();
        if !dot.is_one() {
            return fail("sum c_n y_n != 1");
        }

        let a = q.a() as usize;
        if self.expanded.coeffs().iter().take(a).any(|c| !c.is_zero()) {
            return fail("x^a does not divide P");
        }
        let unshifted = IntPolynomial::new(self.expanded.coeffs().iter().skip(a).cloned().collect());
        let (quot, rem) = unshifted
            .div_rem(&IntPolynomial::one_minus_x_pow(q.b()))
            .expect("unit leading coefficient");
        if !rem.is_zero() {
            return fail("(1-x)^b does not divide P");
        }
        if quot.reflect() != IntPolynomial::new(self.y.clone()) {
            return fail("quotient is not the stated tail");
        }

        if self.expanded.degree().is_some_and(|d| d as u64 >= q.n()) {
            return fail("degree >= N");
        }

        let expected = Rational::new(BigInt::one(), BigInt::from(lcm_range(q.n()).value()));
        if integrate_01(&self.expanded) != expected || self.integral != expected {
            return fail("integral != 1/l_N");
        }
        Ok(())
    }

    pub fn to_record(&self) -> WitnessRecord {
        WitnessRecord {
            n: self.query.n(),
            a: self.query.a(),
            b: self.query.b(),
            y: self.y.clone(),
            poly: self.expanded.to_string(),
            integral: self.integral.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("witness serializes")
    }
}

/// The JSON form `{N, a, b, y, poly, integral}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    #[serde(rename = "N")]
    pub n: u64,
    pub a: u64,
    pub b: u64,
    #[serde(with = "crate::dec::vec")]
    pub y: Vec<BigInt>,
    pub poly: String,
    pub integral: String,
}

impl WitnessRecord {
    /// Rebuilds and re-certifies the witness.
    pub fn into_witness(self) -> Result<Witness> {
        let query = DivisorQuery::new(self.n, self.a, self.b)?;
        let expanded: IntPolynomial = self.poly.parse()?;
        let integral: Rational = self
            .integral
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad integral {:?}", self.integral)))?;
        let w = Witness { query, y: self.y, expanded, integral };
        w.certify()?;
        Ok(w)
    }
}

pub fn construct(q: &DivisorQuery) -> Result<Witness> {
    let coeffs = bezout_coefficients(q)?;
    let y = match solve_bezout(&coeffs.c) {
        Ok(y) => y,
        Err(Error::NotCoprime(_)) => return Err(Error::CriterionFails(Box::new(decide_by_primes(q)))),
        Err(e) => return Err(e),
    };
    Witness::build(*q, y)
}

/// `k` distinct witnesses: the base solution shifted by `t (c_1, -c_0, 0, ...)`
/// for `t = 0..k`.
pub fn enumerate_family(q: &DivisorQuery, k: usize) -> Result<Vec<Witness>> {
    if k == 0 {
        return Err(Error::InvalidArgument("family size must be positive".into()));
    }
    let base = construct(q)?;
    if q.tail_len_minus_one() == 0 {
        if k > 1 {
            return Err(Error::FamilyExhausted { unique: Box::new(base) });
        }
        return Ok(vec![base]);
    }
    let c = bezout_coefficients(q)?.c;
    let mut out = Vec::with_capacity(k);
    out.push(base.clone());
    for t in 1..k {
        let t = BigInt::from(t);
        let mut y = base.y.clone();
        y[0] += &t * &c[1];
        y[1] -= &t * &c[0];
        out.push(Witness::build(*q, y)?);
    }
    Ok(out)
}

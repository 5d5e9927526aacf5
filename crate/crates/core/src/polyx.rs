//! Dense integer polynomials and exact integration over [0, 1].
//!
//! Coefficients are stored lowest degree first with trailing zeros stripped,
//! so the zero polynomial has no coefficients at all. The text form used by
//! the command line is the comma-separated coefficient list, e.g.
//! `0,0,0,1,-2,1` for x^3 - 2x^4 + x^5.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::{from_u64, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

/// How the tail factor of [`expand_product`] is written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailBasis {
    /// `sum t_n x^n`
    Monomial,
    /// `sum t_n (1 - x)^n`
    OneMinusX,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `(1 - x)^b`, written out with binomial coefficients.
    pub fn one_minus_x_pow(b: u64) -> Self {
        let mut coeffs = Vec::with_capacity(b as usize + 1);
        let mut c = T::one();
        for k in 0..=b {
            if k % 2 == 0 {
                coeffs.push(c.clone());
            } else {
                coeffs.push(-c.clone());
            }
            c = c * from_u64::<T>(b - k) / from_u64::<T>(k + 1);
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Multiplies by `(1 - x)` in place.
    fn mul_one_minus_x(&mut self) {
        if self.is_zero() {
            return;
        }
        self.coeffs.push(T::zero());
        for k in (1..self.coeffs.len()).rev() {
            let prev = self.coeffs[k - 1].clone();
            self.coeffs[k] = self.coeffs[k].clone() - prev;
        }
    }

    /// `P(1 - x)`, by Horner's scheme in the variable `1 - x`.
    pub fn reflect(&self) -> Self {
        let mut out = Self::zero();
        for c in self.coeffs.iter().rev() {
            out.mul_one_minus_x();
            if out.coeffs.is_empty() {
                out.coeffs.push(T::zero());
            }
            out.coeffs[0] = out.coeffs[0].clone() + c.clone();
            out = Self::new(out.coeffs);
        }
        out
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Long division. `None` when some leading-coefficient division is not
    /// exact in the integers (never the case for a unit leading coefficient).
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - q.clone() * d.clone();
            }
            quot[k] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact divisibility in `Z[x]` for a divisor with unit leading coefficient.
    pub fn is_divisible_by(&self, divisor: &Self) -> bool {
        matches!(self.div_rem(divisor), Some((_, r)) if r.is_zero())
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl<T: Scalar + FromStr> FromStr for Polynomial<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::ParsePolynomial("empty string".into()));
        }
        s.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<T>()
                    .map_err(|_| Error::ParsePolynomial(format!("bad coefficient {tok:?}")))
            })
            .collect::<Result<Vec<T>>>()
            .map(Polynomial::new)
    }
}

/// `sum c_n / (n + 1)`, reduced.
///
/// The common denominator is the running lcm of the `n + 1` that carry a
/// nonzero coefficient, so only one reduction happens at the end.
pub fn integrate_01<T: Scalar>(p: &Polynomial<T>) -> Ratio<T> {
    let mut denom = T::one();
    for (n, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            // lcm(D, k) = D * k / gcd(D mod k, k); keeps the gcd on small values
            let k: T = from_u64(n as u64 + 1);
            let g = (denom.clone() % k.clone()).gcd(&k);
            denom = denom * (k / g);
        }
    }
    let mut numer = T::zero();
    for (n, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            numer = numer + c.clone() * (denom.clone() / from_u64::<T>(n as u64 + 1));
        }
    }
    Ratio::new(numer, denom)
}

/// `C(n, k)` by the multiplicative formula; every intermediate quotient is exact.
pub fn binomial<T: Scalar>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut c = T::one();
    for i in 0..k {
        c = c * from_u64::<T>(n - i) / from_u64::<T>(i + 1);
    }
    c
}

/// `int_0^1 x^a (1 - x)^b dx = 1 / ((a + b + 1) C(a + b, a))`, from the closed form.
pub fn beta_integral<T: Scalar>(a: u64, b: u64) -> Ratio<T> {
    let denom = from_u64::<T>(a + b + 1) * binomial::<T>(a + b, a);
    Ratio::new(T::one(), denom)
}

/// Expands `x^a (1 - x)^b T(x)` where `tail` holds the coefficients of `T`
/// in the given basis.
pub fn expand_product<T: Scalar>(a: u64, b: u64, tail: &Polynomial<T>, basis: TailBasis) -> Polynomial<T> {
    let body = match basis {
        TailBasis::Monomial => &Polynomial::one_minus_x_pow(b) * tail,
        TailBasis::OneMinusX => {
            // sum t_n (1-x)^(b+n), walking the power up one factor at a time
            let mut power = Polynomial::<T>::one_minus_x_pow(b);
            let mut acc = vec![T::zero(); b as usize + tail.coeffs().len()];
            for t in tail.coeffs() {
                if !t.is_zero() {
                    for (k, c) in power.coeffs().iter().enumerate() {
                        acc[k] = acc[k].clone() + t.clone() * c.clone();
                    }
                }
                power.mul_one_minus_x();
            }
            Polynomial::new(acc)
        }
    };
    body.shift(a as usize)
}

/// `(1 - x - x^2)^c`.
pub fn expand_trinomial_power<T: Scalar>(c: u64) -> Polynomial<T> {
    let factor = Polynomial::new(vec![T::one(), -T::one(), -T::one()]);
    (0..c).fold(Polynomial::one(), |acc, _| &acc * &factor)
}

//! Exact arithmetic for S_N, the integer polynomials of degree below N whose
//! integral over [0, 1] is `1 / lcm(1, ..., N)`, the least positive value
//! such an integral can take.
//!
//! * [`numth`]: primes, valuations, floor-logs, base-p digits, `lcm(1..N)`.
//! * [`polyx`]: integer polynomials and exact integration over [0, 1].
//! * [`kummer`]: valuations of binomials by carry counting.
//! * [`criterion`]: does some member of S_N admit the divisor `x^a (1-x)^b`?
//! * [`witness`]: build and certify such members.
//! * [`theorems`]: the `(x^3 (1-x)^2)^floor(N/6)` construction, the census
//!   of admissible `a + b`, and the `l_N >= 4^floor((N-1)/2)` bound.
//! * [`appendix`]: the trinomial family `x^(N/2) (1-x)^(N/3) (1-x-x^2)^(N/19)`.
//!
//! The generic routines take any integer type; the aliases below fix the
//! arbitrary-precision ones used throughout.

pub mod appendix;
pub mod criterion;
pub mod dec;
pub mod error;
pub mod kummer;
pub mod numth;
pub mod polyx;
pub mod scalar;
pub mod theorems;
pub mod witness;

pub use error::{Error, Result};

/// Exact fraction of big integers, always reduced.
pub type Rational = num_rational::Ratio<num_bigint::BigInt>;

/// Integer polynomial with big-integer coefficients.
pub type IntPolynomial = polyx::Polynomial<num_bigint::BigInt>;

pub use appendix::{replicate_appendix, trinomial_coefficients, TrinomialQuery};
pub use criterion::{bezout_coefficients, decide_by_gcd, decide_by_primes, CriterionReport, DivisorQuery};
pub use theorems::{divisor_census, gsn_inequality_check, verify_main_theorem, CensusRecord};
pub use witness::{construct, enumerate_family, solve_bezout, Witness};

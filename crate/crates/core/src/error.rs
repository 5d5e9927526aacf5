use num_bigint::BigInt;
use thiserror::Error;

use crate::criterion::CriterionReport;
use crate::witness::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p-adic valuation of zero is infinite")]
    ZeroValuation,

    #[error("{value} does not fit in {width} base-{base} digits")]
    DigitOverflow { value: String, base: u64, width: usize },

    #[error("invalid query N={n}, a={a}, b={b}: need N >= 1 and a + b < N")]
    InvalidQuery { n: u64, a: u64, b: u64 },

    #[error("binomial index out of range: k={k} > n={n}")]
    BinomialRange { n: u64, k: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inexact division while computing {0}")]
    InexactDivision(String),

    #[error("coefficients have gcd {0}, no integer solution of sum c_n y_n = 1")]
    NotCoprime(BigInt),

    #[error("criterion fails for N={}, a={}, b={}", .0.n, .0.a, .0.b)]
    CriterionFails(Box<CriterionReport>),

    #[error("witness family is a single polynomial in the (1-x)^n tail basis")]
    FamilyExhausted { unique: Box<Witness> },

    #[error("construction violated for N={n}, p={p}: {detail}")]
    TheoremViolation { n: u64, p: u64, detail: String },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("malformed polynomial text: {0}")]
    ParsePolynomial(String),
}

impl Error {
    /// True for failures that can only come from an arithmetic bug or a
    /// falsified theorem, as opposed to bad input or a negative answer.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InexactDivision(_) | Error::TheoremViolation { .. } | Error::Certification(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

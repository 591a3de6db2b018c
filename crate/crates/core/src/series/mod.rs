//! Exact truncated series in one variable `q` and two variables `p`, `q`.
//!
//! Exponents of `q` may be fractional: a series carries a positive
//! denominator `N` and stores integer numerators, so `q^{n/N}` is the key
//! `n`. Coefficients are arbitrary-precision rationals. Every series knows
//! how far it is valid; results of arithmetic are clipped to the region
//! where both operands are known.

mod grid;
mod pqseries;
mod qseries;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

pub use pqseries::PQSeries;
pub use qseries::QSeries;

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Coef = BigRational;

pub fn coef(n: i64) -> Coef {
    Coef::from_integer(BigInt::from(n))
}

pub fn coef_big(n: BigInt) -> Coef {
    Coef::from_integer(n)
}

pub fn ratio(num: i64, den: i64) -> Coef {
    Coef::new(BigInt::from(num), BigInt::from(den))
}

/// Returns the integer value of `c`, or a [`Error::NonIntegral`] naming `location`.
pub fn to_integer(c: &Coef, location: impl FnOnce() -> String) -> Result<BigInt> {
    if c.is_integer() {
        Ok(c.to_integer())
    } else {
        Err(Error::NonIntegral {
            location: location(),
            value: c.to_string(),
        })
    }
}

/// Like [`to_integer`] but also rejects negative values.
pub fn to_natural(c: &Coef, location: impl Fn() -> String) -> Result<BigInt> {
    let n = to_integer(c, &location)?;
    if n.is_negative() {
        return Err(Error::Negative {
            location: location(),
            value: c.to_string(),
        });
    }
    Ok(n)
}

/// Classical Möbius function. `moebius(0)` is not defined and panics.
pub fn moebius(n: u64) -> i8 {
    assert!(n >= 1, "moebius is defined on positive integers");
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
}

/// A series of either arity, for callers that pick the arity at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum Series {
    Q(QSeries),
    PQ(PQSeries),
}

impl From<QSeries> for Series {
    fn from(s: QSeries) -> Self {
        Series::Q(s)
    }
}

impl From<PQSeries> for Series {
    fn from(s: PQSeries) -> Self {
        Series::PQ(s)
    }
}

/// Exact `a op b`. One- and two-variable operands are never mixed
/// implicitly; embed first with [`PQSeries::from_q`] or [`PQSeries::from_p`].
pub fn arith(a: &Series, b: &Series, op: Op) -> Result<Series> {
    match (a, b) {
        (Series::Q(a), Series::Q(b)) => Ok(Series::Q(match op {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
        })),
        (Series::PQ(a), Series::PQ(b)) => Ok(Series::PQ(match op {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
        })),
        _ => Err(Error::ArityMismatch),
    }
}

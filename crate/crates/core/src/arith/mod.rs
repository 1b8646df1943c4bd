//! Exact arithmetic: rationals, univariate polynomials and normalized
//! rational functions over the rationals.

mod poly;
mod ratfunc;
pub(crate) mod render;

pub use num_bigint::BigInt;
pub use poly::{poly_gcd, poly_xgcd, rational_roots, squarefree_factorization, Polynomial, SquarefreeFactorization};
pub use ratfunc::{ratfunc_derivative, ratfunc_normalize, RationalFunction};
pub use render::{render_coefficient, render_poly, render_ratfunc, MINUS};

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
}

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // numerator or denominator past f64 range: scale both down first
        _ => {
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Parses `p`, `-p`, `p/q` (ASCII or U+2212 minus) into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim().replace('\u{2212}', "-");
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (t.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

//! Exact arithmetic: rationals, Bernoulli numbers, Faulhaber sums and
//! residues modulo prime powers.

pub mod bernoulli;
pub mod modular;
pub mod poly;

pub use modular::mod_embed;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `base^exp` with `0^0 = 1`.
///
/// Every polynomial and power-sum evaluation in the crate goes through this
/// routine so that the convention is applied in exactly one place.
pub fn pow_u(base: &Rational, exp: u32) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    num_traits::pow(base.clone(), exp as usize)
}

/// Integer version of [`pow_u`], also with `0^0 = 1`.
pub fn ipow(base: &BigInt, exp: u32) -> BigInt {
    if exp == 0 {
        return BigInt::one();
    }
    num_traits::pow(base.clone(), exp as usize)
}

/// `base^exp` for a signed exponent; negative exponents invert.
///
/// Panics when `base` is zero and `exp` is negative.
pub fn pow_i(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        pow_u(base, exp as u32)
    } else {
        assert!(!base.is_zero(), "zero raised to a negative power");
        pow_u(&base.recip(), exp.unsigned_abs() as u32)
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

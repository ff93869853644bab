//! Bernoulli numbers, Bernoulli polynomials and Faulhaber power sums.
//!
//! Bernoulli numbers here follow the `B_1 = +1/2` convention, i.e. the
//! coefficients of `z e^z / (e^z - 1)`, so that `B_n = B_n(1)` where
//! `B_n(x)` is the usual Bernoulli polynomial with generating function
//! `z e^{xz} / (e^z - 1)`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, pow_u, poly::PolyQ, Rational};
use crate::error::{Error, Result};

fn cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// Returns `[B_0, …, B_n]`.
///
/// Uses the recurrence `Σ_{j=0}^{m} C(m+1, j) B_j = m + 1`, memoized
/// process-wide.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    {
        let table = cache().read().expect("bernoulli cache poisoned");
        if table.len() > n {
            return table[..=n].to_vec();
        }
    }
    let mut table = cache().write().expect("bernoulli cache poisoned");
    while table.len() <= n {
        let m = table.len() as u32;
        let mut acc = Rational::from_integer(BigInt::from(m + 1));
        for (j, bj) in table.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            acc -= Rational::from_integer(binomial(m + 1, j as u32)) * bj;
        }
        table.push(acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    table[..=n].to_vec()
}

pub fn bernoulli_number(n: usize) -> Rational {
    bernoulli_numbers(n).pop().expect("non-empty table")
}

/// The Bernoulli polynomial `B_n(x) = Σ_j C(n, j) (-1)^j B_j x^{n-j}`.
pub fn bernoulli_polynomial(n: u32) -> PolyQ {
    let b = bernoulli_numbers(n as usize);
    PolyQ::from_coeffs((0..=n).map(|j| {
        let mut c = Rational::from_integer(binomial(n, j)) * &b[j as usize];
        if j % 2 == 1 {
            c = -c;
        }
        (n - j, c)
    }))
}

/// The Faulhaber weights `C(k+1, j) B_j / (k+1)` for `j = 0..=k+1`.
///
/// Every depth-lowering step and every closed-form power sum uses these.
pub fn faulhaber_weights(k: u32) -> Vec<Rational> {
    let b = bernoulli_numbers(k as usize + 1);
    let denom = Rational::from_integer(BigInt::from(k + 1));
    (0..=k + 1)
        .map(|j| Rational::from_integer(binomial(k + 1, j)) * &b[j as usize] / &denom)
        .collect()
}

/// `Σ_{a<n<b} n^k` through the closed form
/// `(1/(k+1)) Σ_j C(k+1,j) B_j ((-1)^j b^{k+1-j} - a^{k+1-j})`.
pub fn faulhaber_closed(k: u32, a: u64, b: u64) -> Result<Rational> {
    if a >= b {
        return Err(Error::InvalidRange { lower: a.into(), upper: b.into() });
    }
    let a = Rational::from_integer(BigInt::from(a));
    let b = Rational::from_integer(BigInt::from(b));
    let mut acc = Rational::zero();
    for (j, w) in faulhaber_weights(k).iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let e = k + 1 - j as u32;
        let upper = pow_u(&b, e);
        let signed = if j % 2 == 0 { upper } else { -upper };
        acc += w * (signed - pow_u(&a, e));
    }
    Ok(acc)
}

//! Residues modulo prime powers `p^n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Largest modulus accepted; keeps products inside `u128` with room to spare.
const MAX_MODULUS: u64 = 1 << 62;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `lo..=hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&n| is_prime(n)).collect()
}

/// Extended Euclid: returns `(g, x)` with `a x ≡ g (mod m)`.
fn ext_gcd(a: i128, m: i128) -> (i128, i128) {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r, old_s)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x) = ext_gcd((a % m) as i128, m as i128);
    (g == 1).then(|| x.rem_euclid(m as i128) as u64)
}

/// An element of `Z/p^nZ`, tagged with `p` and `n`.
///
/// Arithmetic operators require both operands to carry the same `(p, n)`;
/// mixing moduli is a programming error and panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModResidue {
    prime: u64,
    exponent: u32,
    modulus: u64,
    value: u64,
}

impl ModResidue {
    pub fn new(prime: u64, exponent: u32, value: u64) -> Result<Self> {
        let modulus = checked_modulus(prime, exponent)?;
        Ok(Self { prime, exponent, modulus, value: value % modulus })
    }

    pub fn zero(prime: u64, exponent: u32) -> Result<Self> {
        Self::new(prime, exponent, 0)
    }

    pub fn one(prime: u64, exponent: u32) -> Result<Self> {
        Self::new(prime, exponent, 1)
    }

    /// A residue in the same ring as `self`.
    pub fn lift(&self, value: u64) -> Self {
        Self { value: value % self.modulus, ..*self }
    }

    pub fn from_i64(&self, value: i64) -> Self {
        let v = (value as i128).rem_euclid(self.modulus as i128) as u64;
        Self { value: v, ..*self }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.lift(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self> {
        inv_mod(self.value, self.modulus)
            .map(|v| self.lift(v))
            .ok_or(Error::NotAUnit { value: self.value, modulus: self.modulus })
    }

    fn check(&self, other: &Self) {
        assert!(
            self.prime == other.prime && self.exponent == other.exponent,
            "mixed moduli {}^{} and {}^{}",
            self.prime,
            self.exponent,
            other.prime,
            other.exponent
        );
    }
}

pub(crate) fn checked_modulus(prime: u64, exponent: u32) -> Result<u64> {
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    if exponent == 0 {
        return Err(Error::ModulusOverflow { prime, exponent });
    }
    let mut m: u64 = 1;
    for _ in 0..exponent {
        m = m
            .checked_mul(prime)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or(Error::ModulusOverflow { prime, exponent })?;
    }
    Ok(m)
}

impl Add for ModResidue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let v = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Self { value: v as u64, ..self }
    }
}

impl Sub for ModResidue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ModResidue {
    type Output = Self;
    fn neg(self) -> Self {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        Self { value: v, ..self }
    }
}

impl Mul for ModResidue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let v = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Self { value: v as u64, ..self }
    }
}

impl fmt::Display for ModResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.value, self.prime, self.exponent)
    }
}

fn bigint_mod(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue below modulus")
}

/// Image of a `p`-integral rational in `Z/p^nZ`.
///
/// Fails with [`Error::DenominatorCollision`] when `p` divides the
/// denominator.
pub fn mod_embed(q: &Rational, p: u64, n: u32) -> Result<ModResidue> {
    let modulus = checked_modulus(p, n)?;
    if q.is_zero() {
        return ModResidue::new(p, n, 0);
    }
    let den = bigint_mod(q.denom(), modulus);
    if den.is_multiple_of(p) {
        return Err(Error::DenominatorCollision { prime: p });
    }
    let num = ModResidue::new(p, n, bigint_mod(q.numer(), modulus))?;
    Ok(num * num.lift(den).inverse()?)
}

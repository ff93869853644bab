//! Polynomials over the rationals in the two formal variables `x₊`, `x₋`.
//!
//! `x₊` stands for the lower endpoint of a summation range (or `t₊`) and
//! `x₋` for the upper endpoint (or `t₋`, or `p` for the default range).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{
    fmt_rational,
    modular::{mod_embed, ModResidue},
    pow_u,
    poly::PolyQ,
    Rational,
};
use crate::error::Result;

/// Sparse polynomial keyed by exponent pairs `(d₊, d₋)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    coeffs: BTreeMap<(u32, u32), Rational>,
}

/// Variable names used when printing a [`Poly2`].
#[derive(Clone, Copy, Debug)]
pub struct VarNames {
    pub plus: &'static str,
    pub minus: &'static str,
}

impl VarNames {
    pub const X: VarNames = VarNames { plus: "xp", minus: "xm" };
    pub const Y: VarNames = VarNames { plus: "yp", minus: "ym" };
    /// Single-variable reading after `x₊ -> 0`; only valid when no `x₊` remains.
    pub const SINGLE: VarNames = VarNames { plus: "xp", minus: "x" };
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(dplus: u32, dminus: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(dplus, dminus, c);
        p
    }

    /// `x₊^d`
    pub fn xplus(d: u32) -> Self {
        Self::monomial(d, 0, Rational::one())
    }

    /// `x₋^d`
    pub fn xminus(d: u32) -> Self {
        Self::monomial(0, d, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn add_term(&mut self, dplus: u32, dminus: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((dplus, dminus)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(dplus, dminus));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, dplus: u32, dminus: u32) -> Rational {
        self.coeffs.get(&(dplus, dminus)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(a, b)| a + b).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Evaluates at `(x₊, x₋)` with `0^0 = 1`.
    pub fn eval(&self, xplus: &Rational, xminus: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for ((a, b), c) in self.terms() {
            acc += c * pow_u(xplus, a) * pow_u(xminus, b);
        }
        acc
    }

    /// Evaluates modulo `p^n` at integer points, embedding each rational
    /// coefficient separately; fails if `p` divides any coefficient
    /// denominator.
    pub fn eval_mod(&self, xplus: u64, xminus: u64, p: u64, n: u32) -> Result<ModResidue> {
        let zero = ModResidue::zero(p, n)?;
        let xp = zero.lift(xplus);
        let xm = zero.lift(xminus);
        let mut acc = zero;
        for ((a, b), c) in self.terms() {
            acc = acc + mod_embed(c, p, n)? * xp.pow(a as u64) * xm.pow(b as u64);
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, xplus: Complex64, xminus: Complex64) -> Complex64 {
        let powc = |z: Complex64, d: u32| if d == 0 { Complex64::one() } else { z.powu(d) };
        self.terms()
            .map(|((a, b), c)| powc(xplus, a) * powc(xminus, b) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Substitutes `x₊ = 0` (with `0^0 = 1`).
    pub fn specialize_single(&self) -> Self {
        Self::from_terms(self.terms().filter(|((a, _), _)| *a == 0).map(|(e, c)| (e, c.clone())))
    }

    /// The `x₋`-polynomial, when no `x₊` occurs.
    pub fn as_single(&self) -> Option<PolyQ> {
        self.terms()
            .all(|((a, _), _)| a == 0)
            .then(|| PolyQ::from_coeffs(self.terms().map(|((_, b), c)| (b, c.clone()))))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.coeffs
            .values()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Terms in canonical order: descending total degree, then descending `d₋`.
    pub fn canonical_terms(&self) -> Vec<((u32, u32), &Rational)> {
        let mut t: Vec<_> = self.terms().collect();
        t.sort_by(|((a1, b1), _), ((a2, b2), _)| (a2 + b2, b2).cmp(&(a1 + b1, b1)));
        t
    }

    pub fn display_with(&self, names: VarNames) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, ((a, b), c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut factors = Vec::new();
            if !abs.is_one() || (a == 0 && b == 0) {
                factors.push(fmt_rational(&abs));
            }
            for (name, d) in [(names.plus, a), (names.minus, b)] {
                match d {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{d}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(VarNames::X))
    }
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        for ((a, b), c) in rhs.terms() {
            self.add_term(a, b, c.clone());
        }
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in rhs.terms() {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

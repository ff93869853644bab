use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::{fmt_rational, pow_u, Rational};

/// Univariate polynomial over the rationals, stored sparsely.
///
/// No zero coefficient is ever stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyQ {
    coeffs: BTreeMap<u32, Rational>,
}

impl PolyQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(degree: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c);
        p
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, Rational::from_integer(1.into()))
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(degree).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> Rational {
        self.coeffs.get(&degree).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.terms().map(|(d, v)| (d, v * c)))
    }

    /// Evaluates at a rational point, with `0^0 = 1`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.terms()
            .map(|(d, c)| c * pow_u(x, d))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.terms()
            .map(|(d, c)| x.powu(d) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Substitutes `x -> x + shift`.
    pub fn shift(&self, shift: &Rational) -> Self {
        let mut out = Self::zero();
        for (d, c) in self.terms() {
            for j in 0..=d {
                let b = Rational::from_integer(super::binomial(d, j));
                out.add_term(j, c * b * pow_u(shift, d - j));
            }
        }
        out
    }

    /// Substitutes `x -> -x`.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.terms()
                .map(|(d, c)| (d, if d % 2 == 0 { c.clone() } else { -c.clone() })),
        )
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        self + &(-rhs)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::from_coeffs(self.terms().map(|(d, c)| (d, -c.clone())))
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        let mut out = PolyQ::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in rhs.terms() {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().rev() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let one = abs == Rational::from_integer(1.into());
            match (*d, one) {
                (0, _) => write!(f, "{}", fmt_rational(&abs))?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", fmt_rational(&abs))?,
                (_, true) => write!(f, "x^{d}")?,
                (_, false) => write!(f, "{}*x^{d}", fmt_rational(&abs))?,
            }
        }
        Ok(())
    }
}

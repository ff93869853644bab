//! Multivariate power series with [`Poly2`] coefficients, truncated at a
//! total degree.
//!
//! A series carries a monomial prefactor `z^prefactor` (entries may be
//! negative) so that simple poles `1/z_i` can be represented while a
//! computation is in flight. Stored exponents are always non-negative; the
//! effective exponent of a stored term is `stored + prefactor`. Everything
//! with effective total degree `< trunc` is exact, everything else is
//! dropped.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{bernoulli::bernoulli_numbers, Rational};
use crate::error::{Error, Result};
use crate::poly2::Poly2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    nvars: usize,
    trunc: i64,
    prefactor: Vec<i64>,
    coeffs: BTreeMap<Vec<u32>, Poly2>,
}

fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// All exponent vectors over `vars` (others zero) with total degree `< trunc`.
fn exponents_on(nvars: usize, vars: &[usize], trunc: i64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn go(vars: &[usize], left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&v, rest)) = vars.split_first() else {
            out.push(cur.clone());
            return;
        };
        for e in 0..left.max(0) {
            cur[v] = e as u32;
            go(rest, left - e, cur, out);
        }
        cur[v] = 0;
    }
    if trunc > 0 {
        go(vars, trunc, &mut cur, &mut out);
    }
    out
}

impl TruncSeries {
    pub fn zero(nvars: usize, trunc: i64) -> Self {
        Self { nvars, trunc, prefactor: vec![0; nvars], coeffs: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, trunc: i64, c: Poly2) -> Self {
        let mut s = Self::zero(nvars, trunc);
        s.add_term(vec![0; nvars], &c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn prefactor(&self) -> &[i64] {
        &self.prefactor
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_regular(&self) -> bool {
        self.prefactor.iter().all(|&p| p == 0)
    }

    fn add_term(&mut self, stored: Vec<u32>, c: &Poly2) {
        if c.is_zero() {
            return;
        }
        let deg: i64 = stored.iter().map(|&e| e as i64).sum::<i64>() + self.prefactor.iter().sum::<i64>();
        if deg >= self.trunc {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(stored) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Coefficient of the effective monomial `z^exps`.
    pub fn coeff(&self, exps: &[i64]) -> Poly2 {
        let stored: Option<Vec<u32>> = exps
            .iter()
            .zip(&self.prefactor)
            .map(|(e, p)| u32::try_from(e - p).ok())
            .collect();
        stored.and_then(|s| self.coeffs.get(&s).cloned()).unwrap_or_default()
    }

    /// Terms as (effective exponent, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<i64>, &Poly2)> {
        self.coeffs.iter().map(|(e, c)| {
            (e.iter().zip(&self.prefactor).map(|(&e, p)| e as i64 + p).collect(), c)
        })
    }

    /// `exp(y · z_var)` for a polynomial `y` in `(y₊, y₋)`.
    pub fn exp_linear(nvars: usize, var: usize, y: &Poly2, trunc: i64) -> Self {
        let mut s = Self::zero(nvars, trunc);
        let mut power = Poly2::one();
        for n in 0..trunc.max(0) as u32 {
            let mut e = vec![0; nvars];
            e[var] = n;
            s.add_term(e, &power.scale(&factorial(n).recip()));
            power = &power * y;
        }
        s
    }

    /// `W(±(z_l + ⋯ + z_m)) = Σ_n B_n (±L)^n / n!`, the series of
    /// `x e^x / (e^x - 1)` composed with a signed interval sum of variables.
    pub fn bernoulli_of_sum(nvars: usize, vars: &[usize], negate: bool, trunc: i64) -> Self {
        let b = bernoulli_numbers(trunc.max(1) as usize);
        let mut s = Self::zero(nvars, trunc);
        for e in exponents_on(nvars, vars, trunc) {
            let n: u32 = e.iter().sum();
            if b[n as usize].is_zero() {
                continue;
            }
            let denom = e.iter().fold(Rational::one(), |acc, &k| acc * factorial(k));
            let mut c = &b[n as usize] / denom;
            if negate && n % 2 == 1 {
                c = -c;
            }
            s.add_term(e, &Poly2::constant(c));
        }
        s
    }

    /// `z/(e^z - 1)` in the variable `var`; the inverse of the unit
    /// `u(z) = (e^z - 1)/z`.
    pub fn unit_inverse(nvars: usize, var: usize, trunc: i64) -> Self {
        Self::bernoulli_of_sum(nvars, &[var], true, trunc)
    }

    pub fn truncate(&self, trunc: i64) -> Self {
        let mut s = Self { trunc: trunc.min(self.trunc), coeffs: BTreeMap::new(), ..self.clone() };
        for (e, c) in &self.coeffs {
            s.add_term(e.clone(), c);
        }
        s
    }

    pub fn scale(&self, c: &Poly2) -> Self {
        let mut s = Self { coeffs: BTreeMap::new(), ..self.clone() };
        for (e, v) in &self.coeffs {
            s.add_term(e.clone(), &(c * v));
        }
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(&Poly2::constant(-Rational::one()))
    }

    /// Multiplies by the Laurent monomial `z^exps`.
    pub fn mul_monomial(&self, exps: &[i64]) -> Self {
        assert_eq!(exps.len(), self.nvars);
        let mut s = self.clone();
        for (p, e) in s.prefactor.iter_mut().zip(exps) {
            *p += e;
        }
        s.trunc += exps.iter().sum::<i64>();
        s
    }

    fn with_prefactor(&self, prefactor: &[i64]) -> BTreeMap<Vec<u32>, Poly2> {
        self.coeffs
            .iter()
            .map(|(e, c)| {
                let shifted = e
                    .iter()
                    .zip(&self.prefactor)
                    .zip(prefactor)
                    .map(|((&e, &old), &new)| (e as i64 + old - new) as u32)
                    .collect();
                (shifted, c.clone())
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let prefactor: Vec<i64> =
            self.prefactor.iter().zip(&other.prefactor).map(|(a, b)| *a.min(b)).collect();
        let mut s = Self::zero(self.nvars, self.trunc.min(other.trunc));
        s.prefactor = prefactor.clone();
        for (e, c) in self.with_prefactor(&prefactor).into_iter().chain(other.with_prefactor(&prefactor)) {
            s.add_term(e, &c);
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let low_self: i64 = self.prefactor.iter().sum();
        let low_other: i64 = other.prefactor.iter().sum();
        let trunc = (self.trunc + low_other).min(other.trunc + low_self);
        let mut s = Self::zero(self.nvars, trunc);
        s.prefactor = self.prefactor.iter().zip(&other.prefactor).map(|(a, b)| a + b).collect();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                s.add_term(e, &(c1 * c2));
            }
        }
        s
    }

    /// Multiplies by the linear form `Σ_{v ∈ vars} z_v`.
    pub fn mul_linear(&self, vars: &[usize]) -> Self {
        let mut s = Self { trunc: self.trunc + 1, coeffs: BTreeMap::new(), ..self.clone() };
        for (e, c) in &self.coeffs {
            for &v in vars {
                let mut e = e.clone();
                e[v] += 1;
                s.add_term(e, c);
            }
        }
        s
    }

    /// Exact division by the linear form `Σ_{v ∈ vars} z_v` of a regular
    /// series that is divisible by it.
    pub fn div_linear(&self, vars: &[usize]) -> Result<Self> {
        assert!(self.is_regular(), "division needs a regular series");
        let (&main, rest) = vars.split_last().expect("non-empty linear form");
        let mut remaining = self.coeffs.clone();
        let mut quotient = Self::zero(self.nvars, self.trunc - 1);
        let top = remaining.keys().map(|e| e[main]).max().unwrap_or(0);
        for d in (1..=top).rev() {
            let slice: Vec<(Vec<u32>, Poly2)> =
                remaining.iter().filter(|(e, _)| e[main] == d).map(|(e, c)| (e.clone(), c.clone())).collect();
            for (e, c) in slice {
                remaining.remove(&e);
                let mut q = e.clone();
                q[main] -= 1;
                // H = z_main Q + (Σ rest) Q: subtract the second part
                for &v in rest {
                    let mut t = q.clone();
                    t[v] += 1;
                    let entry = remaining.entry(t.clone()).or_default();
                    *entry = &*entry - &c;
                    if entry.is_zero() {
                        remaining.remove(&t);
                    }
                }
                quotient.add_term(q, &c);
            }
        }
        if let Some((e, _)) = remaining.iter().next() {
            return Err(Error::PoleResidue { exponent: e.iter().map(|&x| x as i64).collect() });
        }
        Ok(quotient)
    }

    /// Adds trailing variables that do not occur.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        let mut prefactor = self.prefactor.clone();
        prefactor.resize(nvars, 0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(nvars, 0);
                (e, c.clone())
            })
            .collect();
        Self { nvars, trunc: self.trunc, prefactor, coeffs }
    }

    /// Substitutes `z_var -> z_var + z_extra` by binomial re-expansion; the
    /// total degree of every term is preserved.
    pub fn substitute_add(&self, var: usize, extra: usize) -> Self {
        assert!(self.is_regular(), "substitution needs a regular series");
        let mut s = Self::zero(self.nvars, self.trunc);
        for (e, c) in &self.coeffs {
            let m = e[var];
            for q in 0..=m {
                let mut t = e.clone();
                t[var] = m - q;
                t[extra] += q;
                s.add_term(t, &c.scale(&Rational::from_integer(crate::arith::binomial(m, q))));
            }
        }
        s
    }

    /// Absorbs the prefactor, checking that every effective negative
    /// exponent has a zero coefficient.
    pub fn regularize(&self) -> Result<Self> {
        let mut s = Self::zero(self.nvars, self.trunc);
        for (eff, c) in self.terms() {
            if eff.iter().any(|&x| x < 0) {
                return Err(Error::PoleResidue { exponent: eff });
            }
            s.add_term(eff.into_iter().map(|x| x as u32).collect(), c);
        }
        Ok(s)
    }
}

//! Generating series of the truncated sums at non-positive integer points.
//!
//! For depth `r` the series
//!
//! ```text
//! G_r(z; y₊, y₋) = Σ_{k ∈ ℕ^r} P_r(k; y₊, y₋) z^k / k!
//! ```
//!
//! has polynomial coefficients `P_r(k)` with
//! `P_r(k; a, b) = Σ_{a<n_1<…<n_r<b} n_1^{k_1}⋯n_r^{k_r}` for integers
//! `a < b` (with `0^0 = 1`). Two independent constructions are provided:
//! the depth recursion [`gr_recurrence`] and the closed product form
//! [`gr_closed_form`].

mod series;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{ipow, Rational};
use crate::error::{Error, Result};
use crate::poly2::Poly2;

pub use series::TruncSeries;

/// `G_1` exact below total degree `trunc`.
pub fn g1_series(trunc: u32) -> Result<TruncSeries> {
    let t = trunc as i64;
    let up = TruncSeries::exp_linear(1, 0, &(&Poly2::xplus(1) + &Poly2::one()), t + 1);
    let down = TruncSeries::exp_linear(1, 0, &Poly2::xminus(1), t + 1);
    let bracket = up.sub(&down).mul_monomial(&[-1]);
    bracket.mul(&TruncSeries::unit_inverse(1, 0, t + 1)).neg().regularize()
}

/// One step of the depth recursion: builds `G_r` (exact below `trunc`)
/// from `G_{r-1}`, which must be exact below `trunc + 1`.
pub fn gr_recurrence(prev: &TruncSeries, trunc: u32) -> Result<TruncSeries> {
    let t = trunc as i64;
    if prev.trunc() < t + 1 {
        return Err(Error::TruncationTooSmall {
            required: trunc + 1,
            available: prev.trunc().max(0) as u32,
        });
    }
    let r = prev.nvars() + 1;
    let last = r - 1;
    let base = prev.truncate(t + 1).embed(r);
    let shifted = base
        .substitute_add(last - 1, last)
        .mul(&TruncSeries::exp_linear(r, last, &Poly2::one(), t + 1));
    let plain = base.mul(&TruncSeries::exp_linear(r, last, &Poly2::xminus(1), t + 1));
    let mut pole = vec![0; r];
    pole[last] = -1;
    let bracket = shifted.sub(&plain).mul_monomial(&pole);
    bracket.mul(&TruncSeries::unit_inverse(r, last, t + 1)).neg().regularize()
}

/// `G_r` exact below total degree `trunc`, via the depth recursion.
pub fn gr_series(depth: usize, trunc: u32) -> Result<TruncSeries> {
    if depth == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    let mut g = g1_series(trunc + depth as u32 - 1)?;
    for r in 2..=depth {
        g = gr_recurrence(&g, trunc + (depth - r) as u32)?;
    }
    Ok(g)
}

/// `G_r` exact below total degree `trunc`, from the closed product form
///
/// ```text
/// G_r = Σ_{i=0}^{r} e^{y₊(z_1+…+z_i) + y₋(z_{i+1}+…+z_r)}
///         Π_{l≤i} e^{Z_{l,i}}/(1-e^{Z_{l,i}}) · Π_{l>i} 1/(1-e^{Z_{i+1,l}})
/// ```
///
/// where `Z_{l,m} = z_l + ⋯ + z_m`. Each summand is written as
/// `(-1)^i E_i · ΠW(Z) · ΠW(-Z) / Q_i` with `W(x) = x e^x/(e^x-1)` and `Q_i`
/// the product of its linear forms; the summands are brought over the
/// common denominator of all interval sums, added, and the denominator is
/// divided out exactly one linear form at a time.
pub fn gr_closed_form(depth: usize, trunc: u32) -> Result<TruncSeries> {
    if depth == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    let r = depth;
    let intervals: Vec<(usize, usize)> =
        (0..r).flat_map(|l| (l..r).map(move |m| (l, m))).collect();
    let vars = |(l, m): (usize, usize)| (l..=m).collect::<Vec<_>>();
    let work = trunc as i64 + intervals.len() as i64;

    let mut numerator = TruncSeries::zero(r, work);
    for i in 0..=r {
        let mut term = TruncSeries::constant(r, work, Poly2::one());
        for v in 0..r {
            let y = if v < i { Poly2::xplus(1) } else { Poly2::xminus(1) };
            term = term.mul(&TruncSeries::exp_linear(r, v, &y, work));
        }
        let mut own = Vec::new();
        for l in 0..i {
            own.push((l, i - 1));
            term = term.mul(&TruncSeries::bernoulli_of_sum(r, &vars((l, i - 1)), false, work));
        }
        for m in i..r {
            own.push((i, m));
            term = term.mul(&TruncSeries::bernoulli_of_sum(r, &vars((i, m)), true, work));
        }
        for iv in intervals.iter().filter(|iv| !own.contains(iv)) {
            term = term.mul_linear(&vars(*iv)).truncate(work);
        }
        if i % 2 == 1 {
            term = term.neg();
        }
        numerator = numerator.add(&term);
    }
    let mut g = numerator;
    for iv in &intervals {
        g = g.div_linear(&vars(*iv))?;
    }
    Ok(g.truncate(trunc as i64))
}

/// Table of `P_r(k)` for all `k ∈ {0..=kmax}^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PTable {
    pub depth: usize,
    pub max_k: u32,
    pub entries: BTreeMap<Vec<u32>, Poly2>,
}

impl PTable {
    pub fn get(&self, k: &[u32]) -> Option<&Poly2> {
        self.entries.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &Poly2)> {
        self.entries.iter()
    }
}

/// Reads `P_r(k) = k_1!⋯k_r! · [z^k] G_r` off a regular series.
pub fn extract_p_from(series: &TruncSeries, max_k: u32) -> Result<PTable> {
    let r = series.nvars();
    let required = r as u32 * max_k + 1;
    if (series.trunc() as i128) < required as i128 {
        return Err(Error::TruncationTooSmall {
            required,
            available: series.trunc().max(0) as u32,
        });
    }
    let mut entries = BTreeMap::new();
    let mut k = vec![0u32; r];
    loop {
        let fact = k.iter().fold(BigInt::one(), |acc, &ki| {
            acc * (1..=ki).fold(BigInt::one(), |a, j| a * BigInt::from(j))
        });
        let exps: Vec<i64> = k.iter().map(|&x| x as i64).collect();
        entries.insert(k.clone(), series.coeff(&exps).scale(&Rational::from_integer(fact)));
        let Some(pos) = k.iter().rposition(|&x| x < max_k) else { break };
        k[pos] += 1;
        for x in &mut k[pos + 1..] {
            *x = 0;
        }
    }
    Ok(PTable { depth: r, max_k, entries })
}

/// `P_r(k)` for all `k ∈ {0..=kmax}^r`, building `G_r` at the smallest
/// sufficient truncation.
pub fn extract_p(depth: usize, max_k: u32) -> Result<PTable> {
    let series = gr_series(depth, depth as u32 * max_k + 1)?;
    extract_p_from(&series, max_k)
}

/// `Σ_{a<n_1<…<n_r<b} n_1^{k_1}⋯n_r^{k_r}` by direct enumeration, refusing
/// ranges with `(b-a)^r` above [`crate::trunc::BRUTE_FORCE_LIMIT`].
pub fn integer_powersum_oracle(k: &[u32], a: i64, b: i64) -> Result<BigInt> {
    if a >= b {
        return Err(Error::InvalidRange { lower: a.into(), upper: b.into() });
    }
    let width = (b - a) as u128;
    let limit = crate::trunc::BRUTE_FORCE_LIMIT;
    let required = width.checked_pow(k.len() as u32).unwrap_or(u128::MAX);
    if required > limit {
        return Err(Error::SizeGuard { required, limit });
    }
    fn go(k: &[u32], from: i64, b: i64) -> BigInt {
        let Some((&first, rest)) = k.split_first() else {
            return BigInt::one();
        };
        let mut acc = BigInt::zero();
        for n in from..b {
            acc += ipow(&BigInt::from(n), first) * go(rest, n + 1, b);
        }
        acc
    }
    Ok(go(k, a + 1, b))
}

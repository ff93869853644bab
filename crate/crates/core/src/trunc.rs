//! Truncated multiple harmonic sums
//! `ζ(k; a, b) = Σ_{a<n_1<⋯<n_r<b} n_1^{-k_1} ⋯ n_r^{-k_r}`.
//!
//! Negative entries contribute positive powers of `n`. The empty index has
//! value 1 on every range and any non-empty index has value 0 on a range
//! with no interior integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{modular::ModResidue, pow_i, Rational};
use crate::error::{Error, Result};
use crate::index::Index;

/// Upper limit on `(b - a)^depth` for the enumeration oracles.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// Summation bounds `a < n_1 < ⋯ < n_r < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationRange {
    lower: u64,
    upper: u64,
}

impl TruncationRange {
    pub fn new(lower: u64, upper: u64) -> Result<Self> {
        if lower > upper {
            return Err(Error::InvalidRange { lower: lower.into(), upper: upper.into() });
        }
        Ok(Self { lower, upper })
    }

    /// The range `(0, p)` defining `ζ_p`.
    pub fn up_to(p: u64) -> Self {
        Self { lower: 0, upper: p }
    }

    pub fn lower(&self) -> u64 {
        self.lower
    }

    pub fn upper(&self) -> u64 {
        self.upper
    }

    /// The integers strictly inside the range.
    pub fn interior(&self) -> std::ops::Range<u64> {
        (self.lower + 1)..self.upper.max(self.lower + 1)
    }
}

/// Exact value by the prefix-state DP.
pub fn zeta_trunc_exact(k: &Index, range: TruncationRange) -> Rational {
    zeta_trunc_exact_counted(k, range).0
}

/// [`zeta_trunc_exact`] together with the number of inner DP updates, which
/// is always `(b - a - 1) · r` for a non-empty interior.
///
/// The states `S_0..S_r` hold the sums over chains ending below the current
/// `m`; the recurrence is `S_j ← S_j + m^{-k_j} S_{j-1}`.
pub fn zeta_trunc_exact_counted(k: &Index, range: TruncationRange) -> (Rational, u64) {
    let r = k.depth();
    let mut states = vec![Rational::zero(); r + 1];
    states[0] = Rational::one();
    let mut updates = 0;
    for m in range.interior() {
        let m = Rational::from_integer(BigInt::from(m));
        for j in (1..=r).rev() {
            let term = pow_i(&m, -k.entries()[j - 1]) * &states[j - 1];
            states[j] += term;
            updates += 1;
        }
    }
    (states.pop().expect("at least S_0"), updates)
}

/// Values of `ζ(k; a, b)` for every `b` in `a..=b_max`, from a single DP pass.
pub fn zeta_trunc_exact_prefix(k: &Index, a: u64, b_max: u64) -> Vec<Rational> {
    let r = k.depth();
    let mut states = vec![Rational::zero(); r + 1];
    states[0] = Rational::one();
    let mut out = Vec::with_capacity((b_max.saturating_sub(a) + 1) as usize);
    for b in a..=b_max {
        // states currently cover n < b
        out.push(states[r].clone());
        if b > a {
            let m = Rational::from_integer(BigInt::from(b));
            for j in (1..=r).rev() {
                let term = pow_i(&m, -k.entries()[j - 1]) * &states[j - 1];
                states[j] += term;
            }
        }
    }
    out
}

/// `m^{-k}` in `Z/p^nZ`; a positive `k` needs `m` to be a unit.
fn signed_power_mod(m: u64, k: i64, zero: ModResidue) -> Result<ModResidue> {
    let base = zero.lift(m);
    if k > 0 {
        if m.is_multiple_of(zero.prime()) {
            return Err(Error::DenominatorCollision { prime: zero.prime() });
        }
        Ok(base.inverse()?.pow(k as u64))
    } else {
        Ok(base.pow(k.unsigned_abs()))
    }
}

/// `ζ(k; a, b) mod p^n`, computed directly in the residue ring.
pub fn zeta_trunc_mod(k: &Index, p: u64, n: u32, range: TruncationRange) -> Result<ModResidue> {
    let zero = ModResidue::zero(p, n)?;
    let r = k.depth();
    let mut states = vec![zero; r + 1];
    states[0] = zero.lift(1);
    for m in range.interior() {
        for j in (1..=r).rev() {
            let w = signed_power_mod(m, k.entries()[j - 1], zero)?;
            states[j] = states[j] + w * states[j - 1];
        }
    }
    Ok(states[r])
}

fn guard(depth: usize, span: u64) -> Result<()> {
    let required = (span as u128).checked_pow(depth as u32).unwrap_or(u128::MAX);
    if required > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard { required, limit: BRUTE_FORCE_LIMIT });
    }
    Ok(())
}

/// Literal nested-loop evaluation; the independent oracle for the DP.
pub fn zeta_trunc_bruteforce(k: &Index, range: TruncationRange) -> Result<Rational> {
    guard(k.depth(), range.upper() - range.lower())?;
    fn go(k: &[i64], from: u64, upper: u64, acc: &Rational, total: &mut Rational) {
        let Some((&first, rest)) = k.split_first() else {
            *total += acc;
            return;
        };
        for n in from..upper {
            let term = acc * pow_i(&Rational::from_integer(BigInt::from(n)), -first);
            go(rest, n + 1, upper, &term, total);
        }
    }
    let mut total = Rational::zero();
    go(k.entries(), range.lower() + 1, range.upper(), &Rational::one(), &mut total);
    Ok(total)
}

/// Enumeration oracle returning `ζ(k; a, b)` for every `b` in `a..=b_max`.
///
/// Every tuple `a < n_1 < ⋯ < n_r < b_max` is visited once and its term is
/// bucketed by `n_r`; terms are accumulated as integers over the common
/// denominator `Π_j L^{max(k_j, 0)}`, `L = lcm(a+1, …, b_max-1)`.
pub fn zeta_trunc_bruteforce_prefix(k: &Index, a: u64, b_max: u64) -> Result<Vec<Rational>> {
    let r = k.depth();
    let len = (b_max.saturating_sub(a) + 1) as usize;
    if r == 0 {
        return Ok(vec![Rational::one(); len]);
    }
    guard(r, b_max.saturating_sub(a))?;
    let lcm = (a + 1..b_max).fold(BigInt::one(), |l, n| l.lcm(&BigInt::from(n)));
    let mut denom = BigInt::one();
    // factors[j][n - a - 1] = L^{k_j} / n^{k_j}  or  n^{-k_j}
    let mut factors: Vec<Vec<BigInt>> = Vec::with_capacity(r);
    for &kj in k.entries() {
        if kj > 0 {
            denom *= lcm.pow(kj as u32);
        }
        factors.push(
            (a + 1..b_max)
                .map(|n| {
                    let n = BigInt::from(n);
                    if kj > 0 {
                        (&lcm / &n).pow(kj as u32)
                    } else {
                        n.pow(kj.unsigned_abs() as u32)
                    }
                })
                .collect(),
        );
    }
    let mut buckets = vec![BigInt::zero(); len];
    fn go(
        factors: &[Vec<BigInt>],
        depth: usize,
        from: usize,
        acc: &BigInt,
        buckets: &mut [BigInt],
    ) {
        let count = factors[0].len();
        for i in from..count {
            let term = acc * &factors[depth][i];
            if depth + 1 == factors.len() {
                // n_r = a + 1 + i is first inside the range at b = a + 2 + i
                buckets[i + 2] += term;
            } else {
                go(factors, depth + 1, i + 1, &term, buckets);
            }
        }
    }
    go(&factors, 0, 0, &BigInt::one(), &mut buckets);
    let mut running = BigInt::zero();
    Ok(buckets
        .into_iter()
        .map(|c| {
            running += c;
            Rational::new(running.clone(), denom.clone())
        })
        .collect())
}

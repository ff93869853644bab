//! Verification harnesses shared by the command-line tool and the test
//! suites: prime sweeps of the reduction identity, the power-sum oracle
//! check of the `P_r` tables, and batches of numerical identity checks.
//!
//! Sweeps run one task per prime on a rayon pool; workers only read shared
//! data and results are merged in ascending prime order, so reports do not
//! depend on the number of threads.

use rayon::prelude::*;
use rayon::ThreadPool;
use serde::Serialize;

use crate::arith::modular::primes_in;
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::genfun::{integer_powersum_oracle, PTable};
use crate::index::Index;
use crate::numeric::{check_identity, sample_points, ComplexPoint, IdentityCase};
use crate::reduce::{evaluate_combination, reduce_full, Strategy};
use crate::trunc::{zeta_trunc_mod, TruncationRange};
use crate::Rational;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "FMZV_THREADS";

/// Builds a worker pool with `threads` workers, or the `FMZV_THREADS`
/// setting, or rayon's default.
pub fn worker_pool(threads: Option<usize>) -> Result<ThreadPool> {
    let threads = match threads {
        Some(t) => t,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("{THREADS_ENV}={v:?} is not a worker count")))?,
            Err(_) => 0,
        },
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedPrime {
    pub prime: u64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub prime: u64,
    /// Residue of the reduced combination.
    pub lhs: u64,
    /// Residue of the truncated sum itself.
    pub rhs: u64,
}

/// Result of checking one reduction against the truncated sums over a
/// range of primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub index: Index,
    pub strategy: Strategy,
    pub exponent: u32,
    pub primes_checked: Vec<u64>,
    pub primes_skipped: Vec<SkippedPrime>,
    pub all_passed: bool,
    pub first_failure: Option<SweepFailure>,
}

/// Primes and modulus exponent of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub primes_from: u64,
    pub primes_up_to: u64,
    pub exponent: u32,
}

enum Outcome {
    Checked,
    Skipped(String),
    Failed(SweepFailure),
}

fn check_prime(k: &Index, c: &Combination, p: u64, n: u32) -> Result<Outcome> {
    let rhs = zeta_trunc_mod(k, p, n, TruncationRange::up_to(p))?;
    match evaluate_combination(c, p, n, 0, p) {
        Ok(lhs) if lhs == rhs => Ok(Outcome::Checked),
        Ok(lhs) => Ok(Outcome::Failed(SweepFailure { prime: p, lhs: lhs.value(), rhs: rhs.value() })),
        Err(e @ Error::DenominatorCollision { .. }) => Ok(Outcome::Skipped(e.to_string())),
        Err(e) => Err(e),
    }
}

/// Checks `evaluate_combination(reduce_full(k)) ≡ ζ_p(k) mod p^n` for every
/// prime in the configured range. Primes dividing a coefficient
/// denominator are skipped and recorded; a failing prime does not stop the
/// sweep.
pub fn check_reduce(k: &Index, strategy: Strategy, cfg: SweepConfig, pool: &ThreadPool) -> Result<SweepReport> {
    let combination = reduce_full(k, strategy).result;
    let primes = primes_in(cfg.primes_from, cfg.primes_up_to);
    let outcomes: Vec<(u64, Outcome)> = pool.install(|| {
        primes
            .par_iter()
            .map(|&p| check_prime(k, &combination, p, cfg.exponent).map(|o| (p, o)))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut report = SweepReport {
        index: k.clone(),
        strategy,
        exponent: cfg.exponent,
        primes_checked: Vec::new(),
        primes_skipped: Vec::new(),
        all_passed: true,
        first_failure: None,
    };
    for (p, outcome) in outcomes {
        match outcome {
            Outcome::Checked => report.primes_checked.push(p),
            Outcome::Skipped(reason) => report.primes_skipped.push(SkippedPrime { prime: p, reason }),
            Outcome::Failed(f) => {
                report.primes_checked.push(p);
                report.all_passed = false;
                report.first_failure.get_or_insert(f);
            }
        }
    }
    Ok(report)
}

/// Outcome of comparing a `P_r` table with direct enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub depth: usize,
    pub max_k: u32,
    pub b_up_to: u64,
    pub comparisons: u64,
    pub all_passed: bool,
    pub first_failure: Option<OracleFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleFailure {
    pub k: Vec<u32>,
    pub a: u64,
    pub b: u64,
    pub polynomial: String,
    pub oracle: String,
}

/// Checks `P_r(k; a, b) = Σ_{a<n_1<⋯<n_r<b} n_1^{k_1}⋯n_r^{k_r}` for every
/// table entry and every `0 ≤ a < b ≤ b_up_to`.
pub fn check_p_table(table: &PTable, b_up_to: u64, pool: &ThreadPool) -> Result<OracleReport> {
    let pairs: Vec<(u64, u64)> = (0..b_up_to).flat_map(|a| (a + 1..=b_up_to).map(move |b| (a, b))).collect();
    let entries: Vec<_> = table.iter().collect();
    let failures: Vec<Option<OracleFailure>> = pool.install(|| {
        entries
            .par_iter()
            .map(|(k, poly)| {
                for &(a, b) in &pairs {
                    let oracle = integer_powersum_oracle(k, a as i64, b as i64)?;
                    let value = poly.eval(&Rational::from_integer(a.into()), &Rational::from_integer(b.into()));
                    if value != Rational::from_integer(oracle.clone()) {
                        return Ok(Some(OracleFailure {
                            k: (*k).clone(),
                            a,
                            b,
                            polynomial: value.to_string(),
                            oracle: oracle.to_string(),
                        }));
                    }
                }
                Ok(None)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let first_failure = failures.into_iter().flatten().next();
    Ok(OracleReport {
        depth: table.depth,
        max_k: table.max_k,
        b_up_to,
        comparisons: (entries.len() * pairs.len()) as u64,
        all_passed: first_failure.is_none(),
        first_failure,
    })
}

/// One numerically checked parameter set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericPoint {
    pub case: IdentityCase,
    pub s: Vec<String>,
    pub slot: usize,
    pub t_plus: String,
    pub t_minus: String,
    pub trunc: u64,
    pub residual: f64,
    pub budget: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericReport {
    pub tolerance: f64,
    pub points: Vec<NumericPoint>,
    pub max_residual: f64,
    pub max_budget: f64,
    pub all_passed: bool,
}

/// Runs the identity check at `samples` sampled points per case. A
/// `trunc` override replaces the per-sample default truncation.
pub fn run_numeric(
    cases: &[IdentityCase],
    samples: usize,
    seed: u64,
    trunc: Option<u64>,
    tolerance: f64,
    pool: &ThreadPool,
) -> Result<NumericReport> {
    let jobs: Vec<_> = cases.iter().flat_map(|&c| sample_points(c, samples, seed)).collect();
    let points: Vec<NumericPoint> = pool.install(|| {
        jobs.par_iter()
            .map(|smp| {
                let n = trunc.unwrap_or(smp.trunc);
                let chk = check_identity(&smp.point, smp.slot, n)?;
                Ok(numeric_point(smp.case, &smp.point, smp.slot, n, chk.residual, chk.budget))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let max_residual = points.iter().map(|p| p.residual).fold(0.0, f64::max);
    let max_budget = points.iter().map(|p| p.budget).fold(0.0, f64::max);
    Ok(NumericReport {
        tolerance,
        all_passed: points.iter().all(|p| p.residual < tolerance),
        points,
        max_residual,
        max_budget,
    })
}

fn numeric_point(case: IdentityCase, pt: &ComplexPoint, slot: usize, trunc: u64, residual: f64, budget: f64) -> NumericPoint {
    NumericPoint {
        case,
        s: pt.s().iter().map(|z| z.to_string()).collect(),
        slot,
        t_plus: pt.t_plus().to_string(),
        t_minus: pt.t_minus().to_string(),
        trunc,
        residual,
        budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::extract_p;

    fn pool(n: usize) -> ThreadPool {
        worker_pool(Some(n)).unwrap()
    }

    fn cfg(up_to: u64, n: u32) -> SweepConfig {
        SweepConfig { primes_from: 5, primes_up_to: up_to, exponent: n }
    }

    #[test]
    fn sweeps_pass_and_partition_primes() {
        for text in ["3,-1", "4", "-2,1,-1", "2,-4"] {
            let k: Index = text.parse().unwrap();
            let rep = check_reduce(&k, Strategy::Leftmost, cfg(50, 2), &pool(3)).unwrap();
            assert!(rep.all_passed, "{text}: {rep:?}");
            assert!(rep.first_failure.is_none());
            let mut all: Vec<u64> =
                rep.primes_checked.iter().copied().chain(rep.primes_skipped.iter().map(|s| s.prime)).collect();
            all.sort();
            assert_eq!(all, primes_in(5, 50));
        }
        let k: Index = "2,-4".parse().unwrap();
        let rep = check_reduce(&k, Strategy::Leftmost, cfg(50, 1), &pool(2)).unwrap();
        assert_eq!(rep.primes_skipped.iter().map(|s| s.prime).collect::<Vec<_>>(), vec![5]);
    }

    #[test]
    fn sweep_is_independent_of_thread_count() {
        let k: Index = "-2,3,-1,2".parse().unwrap();
        let one = check_reduce(&k, Strategy::Rightmost, cfg(120, 3), &pool(1)).unwrap();
        let many = check_reduce(&k, Strategy::Rightmost, cfg(120, 3), &pool(4)).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn oracle_check_of_tables() {
        let table = extract_p(2, 2).unwrap();
        let rep = check_p_table(&table, 15, &pool(2)).unwrap();
        assert!(rep.all_passed);
        assert_eq!(rep.comparisons, 9 * 120);

        let mut broken = table.clone();
        let e = broken.entries.get_mut(&vec![1, 0]).unwrap();
        *e = &*e + &crate::Poly2::one();
        let rep = check_p_table(&broken, 6, &pool(2)).unwrap();
        assert!(!rep.all_passed);
        assert_eq!(rep.first_failure.unwrap().k, vec![1, 0]);
    }

    #[test]
    fn numeric_batch() {
        let rep = run_numeric(&[IdentityCase::Tail], 2, 1, Some(2_000), 1e-6, &pool(2)).unwrap();
        assert_eq!(rep.points.len(), 2);
        assert!(rep.all_passed, "{rep:?}");
    }
}

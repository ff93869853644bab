//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails or exceeds its time limit.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use fmzv_core::arith::modular::primes_in;
use fmzv_core::genfun::{extract_p, gr_closed_form, gr_series};
use fmzv_core::numeric::{check_identity, sample_points, IdentityCase};
use fmzv_core::trunc::{zeta_trunc_bruteforce_prefix, zeta_trunc_exact_prefix};
use fmzv_core::verify::{check_p_table, worker_pool};
use fmzv_core::{
    classify, evaluate_combination_exact, faulhaber_closed, reduce_full, zeta_trunc_exact, zeta_trunc_mod, Index,
    Rational, Strategy, SweepConfig, TruncationRange,
};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

/// 30 indices of depth 1..=4 with entries in [-4, 6], each with at least
/// one non-positive entry so that every reduction does real work.
fn index_suite() -> Vec<Index> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_301);
    let mut out = Vec::new();
    while out.len() < 30 {
        let depth = rng.gen_range(1..=4);
        let k: Vec<i64> = (0..depth).map(|_| rng.gen_range(-4..=6)).collect();
        if k.iter().any(|&x| x <= 0) {
            out.push(Index::new(k));
        }
    }
    out
}


fn criterion_1() -> Outcome {
    for k in 3..=5 {
        let out = Command::new(env!("CARGO_BIN_EXE_fmzv"))
            .args(["reduce", &format!("{k},-1"), "--single-var"])
            .output()
            .map_err(|e| e.to_string())?;
        let text = String::from_utf8_lossy(&out.stdout);
        let expected = format!("({}): -1/2\n({}): -1/2\n({k}): 1/2*x^2 - 1/2*x\n", k - 2, k - 1);
        if !out.status.success() || text != expected {
            return Err(format!("k={k}: got {text:?}"));
        }
    }
    Ok("k = 3, 4, 5 reproduce (x^2-x)/2, -1/2, -1/2".into())
}

fn criterion_2(suite: &[Index]) -> Outcome {
    let failures: Vec<String> = suite
        .par_iter()
        .flat_map_iter(|k| {
            let c = reduce_full(k, Strategy::Leftmost).result;
            let mut bad = Vec::new();
            for a in 0..25u64 {
                for b in a + 1..=25 {
                    let lhs = evaluate_combination_exact(&c, a, b).expect("valid range");
                    let rhs = zeta_trunc_exact(k, TruncationRange::new(a, b).expect("valid range"));
                    if lhs != rhs {
                        bad.push(format!("({k}) at ({a},{b}): {lhs} != {rhs}"));
                    }
                }
            }
            bad
        })
        .collect();
    match failures.first() {
        None => Ok(format!("{} indices x 325 ranges, exact equality", suite.len())),
        Some(f) => Err(format!("{} failures, first {f}", failures.len())),
    }
}

fn criterion_3(suite: &[Index]) -> Outcome {
    let pool = worker_pool(Some(4)).map_err(|e| e.to_string())?;
    let mut checked = 0;
    let mut skipped = 0;
    for k in suite {
        for strategy in Strategy::ALL {
            let c = reduce_full(k, strategy).result;
            let expected_skips: BTreeSet<u64> = primes_in(5, 200)
                .into_iter()
                .filter(|&p| c.iter().any(|(_, poly)| poly.terms().any(|(_, q)| (q.denom() % p).is_zero())))
                .collect();
            for n in 1..=3 {
                let cfg = SweepConfig { primes_from: 5, primes_up_to: 200, exponent: n };
                let rep = fmzv_core::check_reduce(k, strategy, cfg, &pool).map_err(|e| e.to_string())?;
                if !rep.all_passed {
                    return Err(format!("({k}) {strategy} n={n}: {:?}", rep.first_failure));
                }
                let got: BTreeSet<u64> = rep.primes_skipped.iter().map(|s| s.prime).collect();
                if got != expected_skips {
                    return Err(format!("({k}) {strategy} n={n}: skipped {got:?}, expected {expected_skips:?}"));
                }
                checked += rep.primes_checked.len();
                skipped += got.len();
            }
        }
    }
    Ok(format!("{checked} prime checks passed, {skipped} skips all at coefficient denominators"))
}

fn criterion_4(suite: &[Index]) -> Outcome {
    let mut indices: Vec<Index> = suite.to_vec();
    let mut frontier = vec![vec![]];
    for _ in 0..3 {
        frontier = frontier
            .into_iter()
            .flat_map(|k: Vec<i64>| {
                (-2..=3).map(move |e| {
                    let mut k = k.clone();
                    k.push(e);
                    k
                })
            })
            .collect();
        indices.extend(frontier.iter().cloned().map(Index::new));
    }
    for k in &indices {
        let cls = classify(k);
        for key in reduce_full(k, Strategy::Leftmost).result.keys() {
            let kc = classify(key);
            if !kc.is_positive || kc.depth > cls.positive_count || kc.weight.unwrap_or(0) > cls.positive_sum {
                return Err(format!("({k}) produced ({key})"));
            }
        }
    }
    Ok(format!("{} indices, every output key within depth and weight bounds", indices.len()))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for k in 0..=12u32 {
        for a in 0..40u64 {
            let mut acc = BigInt::zero();
            for b in a + 1..=40 {
                let closed = faulhaber_closed(k, a, b).map_err(|e| e.to_string())?;
                if closed != Rational::from_integer(acc.clone()) {
                    return Err(format!("k={k} a={a} b={b}: {closed} != {acc}"));
                }
                count += 1;
                acc += BigInt::from(b).pow(k);
            }
        }
    }
    Ok(format!("{count} closed forms equal direct power sums"))
}

fn criterion_6() -> Outcome {
    let pool = worker_pool(None).map_err(|e| e.to_string())?;
    let mut total = 0;
    for r in 1..=3 {
        let table = extract_p(r, 3).map_err(|e| e.to_string())?;
        let rep = check_p_table(&table, 20, &pool).map_err(|e| e.to_string())?;
        if !rep.all_passed {
            return Err(format!("depth {r}: {:?}", rep.first_failure));
        }
        total += rep.comparisons;
    }
    Ok(format!("{total} exact integer comparisons"))
}

fn criterion_7() -> Outcome {
    let mut entries = 0;
    for r in 1..=3 {
        let table = extract_p(r, 4).map_err(|e| e.to_string())?;
        let mismatch = table.iter().par_bridge().find_any(|(k, p)| {
            let idx = Index::new(k.iter().map(|&x| -(x as i64)).collect());
            let c = reduce_full(&idx, Strategy::Leftmost).result;
            c.len() != 1 || c.get(&Index::empty()) != Some(*p)
        });
        if let Some((k, _)) = mismatch {
            return Err(format!("P_{r}({k:?}) differs from the reduction"));
        }
        entries += table.entries.len();
        for n in 1..=6 {
            let closed = gr_closed_form(r, n).map_err(|e| e.to_string())?;
            let rec = gr_series(r, n).map_err(|e| e.to_string())?;
            if closed != rec {
                return Err(format!("closed form and recursion differ at depth {r}, truncation {n}"));
            }
        }
    }
    Ok(format!("{entries} table entries match reductions; closed form = recursion for r <= 3, N <= 6"))
}

fn criterion_8() -> Outcome {
    let jobs: Vec<_> = IdentityCase::ALL.iter().flat_map(|&c| sample_points(c, 10, 2024)).collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|s| check_identity(&s.point, s.slot, s.trunc).map(|c| (s.case, c)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for case in IdentityCase::ALL {
        let worst = results.iter().filter(|(c, _)| *c == case).map(|(_, r)| r.residual).fold(0.0, f64::max);
        let budget = results.iter().filter(|(c, _)| *c == case).map(|(_, r)| r.budget).fold(0.0, f64::max);
        if worst.is_nan() || worst >= 1e-6 {
            return Err(format!("{case}: residual {worst:.3e}"));
        }
        summary.push(format!("{case} max residual {worst:.1e} (budget {budget:.1e})"));
    }
    Ok(summary.join(", "))
}

fn criterion_9() -> Outcome {
    let mut indices = vec![vec![]];
    let mut frontier: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..3 {
        frontier = frontier
            .iter()
            .flat_map(|k| {
                (-3..=4).map(move |e| {
                    let mut k = k.clone();
                    k.push(e);
                    k
                })
            })
            .collect();
        indices.extend(frontier.iter().cloned());
    }
    let bad = indices.par_iter().find_map_any(|k| {
        let idx = Index::new(k.clone());
        for a in [0u64, 1, 4] {
            let dp = zeta_trunc_exact_prefix(&idx, a, 31);
            let brute = zeta_trunc_bruteforce_prefix(&idx, a, 31).expect("grid within guard");
            if dp != brute {
                return Some(format!("({idx}) from a={a}"));
            }
        }
        None
    });
    if let Some(b) = bad {
        return Err(format!("DP and enumeration differ for {b}"));
    }
    for p in primes_in(5, 97) {
        let v = zeta_trunc_mod(&Index::new(vec![1]), p, 2, TruncationRange::up_to(p)).map_err(|e| e.to_string())?;
        if !v.is_zero() {
            return Err(format!("harmonic sum mod {p}^2 is {}", v.value()));
        }
    }
    Ok(format!("{} indices agree for all b <= 31; H_(p-1) = 0 mod p^2 for 5 <= p <= 97", indices.len()))
}

fn main() {
    let suite = index_suite();
    let criteria: Vec<Criterion> = vec![
        (1, "worked single-variable reduction", Duration::from_secs(1), Box::new(criterion_1)),
        (2, "exact reduction identity", Duration::from_secs(120), Box::new(|| criterion_2(&suite))),
        (3, "modular prime sweep", Duration::from_secs(300), Box::new(|| criterion_3(&suite))),
        (4, "depth and weight bounds", Duration::from_secs(60), Box::new(|| criterion_4(&suite))),
        (5, "Faulhaber closed form", Duration::from_secs(10), Box::new(criterion_5)),
        (6, "P_r against power-sum enumeration", Duration::from_secs(120), Box::new(criterion_6)),
        (7, "generating series vs reduction", Duration::from_secs(60), Box::new(criterion_7)),
        (8, "numerical depth-lowering identity", Duration::from_secs(180), Box::new(criterion_8)),
        (9, "DP vs enumeration, harmonic sums mod p^2", Duration::from_secs(60), Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= *limit => format!("PASS: {detail}"),
            Ok(detail) => {
                failed += 1;
                format!("FAIL: over time limit {limit:?}; {detail}")
            }
            Err(why) => {
                failed += 1;
                format!("FAIL: {why}")
            }
        };
        println!("criterion {id} ({name}) [{:.2}s] {line}", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}

use std::path::Path;

use anyhow::{Context, Result};
use fmzv_core::genfun::{extract_p_from, gr_closed_form, gr_series};
use fmzv_core::json;
use fmzv_core::numeric::IdentityCase;
use fmzv_core::poly2::VarNames;
use fmzv_core::verify::{check_p_table, run_numeric, worker_pool, SweepReport};
use fmzv_core::{
    bernoulli_numbers, reduce_full, zeta_trunc_exact, zeta_trunc_mod, Error, Index, SweepConfig, Strategy,
    TruncationRange,
};
use serde_json::{json as j, Value};

use crate::{CaseChoice, Format, GenfunPath, StrategyChoice, UsageError};

const MAX_GENFUN_DEPTH: usize = 4;
const MAX_GENFUN_K: u32 = 6;
const MAX_GENFUN_TRUNC: u32 = 64;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn parse_index(text: &str) -> Result<Index> {
    Index::parse(text).with_context(|| format!("cannot parse index {text:?}"))
}

fn parse_range(text: &str) -> Result<(u64, u64)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a = a.parse().map_err(|_| usage(format!("bad range start {a:?}")))?;
            let b = b.parse().map_err(|_| usage(format!("bad range end {b:?}")))?;
            Ok((a, b))
        }
        _ => Err(usage(format!("range must look like a,b; got {text:?}"))),
    }
}

fn strategies(choice: StrategyChoice) -> Vec<Strategy> {
    match choice {
        StrategyChoice::All => Strategy::ALL.to_vec(),
        StrategyChoice::Leftmost => vec![Strategy::Leftmost],
        StrategyChoice::Rightmost => vec![Strategy::Rightmost],
    }
}

fn no_csv(format: Format, what: &str) -> Result<()> {
    if format == Format::Csv {
        return Err(usage(format!("{what} has no CSV form; use plain or json")));
    }
    Ok(())
}

pub fn value(index: &str, prime: u64, pow: u32, range: Option<&str>, exact: bool, format: Format) -> Result<bool> {
    let k = parse_index(index)?;
    let range = match range {
        Some(text) => {
            let (a, b) = parse_range(text)?;
            TruncationRange::new(a, b)?
        }
        None => TruncationRange::up_to(prime),
    };
    let residue = zeta_trunc_mod(&k, prime, pow, range)?;
    let exact = exact.then(|| zeta_trunc_exact(&k, range));
    match format {
        Format::Plain => {
            println!("{}", residue.value());
            if let Some(q) = &exact {
                println!("{q}");
            }
        }
        Format::Json => {
            let mut body = j!({
                "index": k.to_string(),
                "prime": prime,
                "pow": pow,
                "modulus": residue.modulus().to_string(),
                "range": [range.lower(), range.upper()],
                "residue": residue.value().to_string(),
            });
            if let Some(q) = &exact {
                body["exact"] = json::rational(q);
            }
            print!("{}", json::render(&json::document("value", body)));
        }
        Format::Csv => {
            let (head, tail) = match &exact {
                Some(q) => (",exact", format!(",{q}")),
                None => ("", String::new()),
            };
            println!("index,prime,pow,lower,upper,residue{head}");
            println!(
                "\"{}\",{prime},{pow},{},{},{}{tail}",
                k,
                range.lower(),
                range.upper(),
                residue.value()
            );
        }
    }
    Ok(true)
}

pub fn reduce(index: &str, single_var: bool, strategy: StrategyChoice, trace: bool, format: Format) -> Result<bool> {
    let k = parse_index(index)?;
    let strategy = match strategy {
        StrategyChoice::All => return Err(usage("reduce takes a single strategy")),
        StrategyChoice::Leftmost => Strategy::Leftmost,
        StrategyChoice::Rightmost => Strategy::Rightmost,
    };
    let out = reduce_full(&k, strategy);
    let (combination, names) = if single_var {
        (out.result.specialize_single(), VarNames::SINGLE)
    } else {
        (out.result.clone(), VarNames::X)
    };
    match format {
        Format::Plain => {
            if trace {
                for step in &out.steps {
                    eprintln!("({}) position {} {:?}", step.index, step.position + 1, step.case);
                }
            }
            print!("{}", combination.display_with(names));
        }
        Format::Json => {
            let mut body = json::combination(&combination, names);
            body["index"] = k.to_string().into();
            body["strategy"] = strategy.to_string().into();
            body["variables"] = if single_var { j!(["x"]) } else { j!([names.plus, names.minus]) };
            if trace {
                body["steps"] = serde_json::to_value(&out.steps)?;
            }
            print!("{}", json::render(&json::document("reduction", body)));
        }
        Format::Csv => print!("{}", json::combination_csv(&combination)),
    }
    Ok(true)
}

fn sweep_config(primes_from: u64, primes_up_to: u64, pow: u32) -> Result<SweepConfig> {
    if primes_up_to < 5 {
        return Err(usage("--primes-up-to must be at least 5"));
    }
    if pow == 0 {
        return Err(usage("--pow must be at least 1"));
    }
    Ok(SweepConfig { primes_from, primes_up_to, exponent: pow })
}

fn print_reports(reports: &[SweepReport], format: Format) -> Result<()> {
    match format {
        Format::Json => {
            let body = j!({ "reports": serde_json::to_value(reports)? });
            print!("{}", json::render(&json::document("sweep", body)));
        }
        _ => {
            for r in reports {
                let skipped: Vec<String> = r.primes_skipped.iter().map(|s| s.prime.to_string()).collect();
                let status = match &r.first_failure {
                    None => "pass".to_string(),
                    Some(f) => format!("FAIL at p={} ({} != {})", f.prime, f.lhs, f.rhs),
                };
                println!(
                    "({}) {} n={}: {} primes checked, skipped [{}]: {}",
                    r.index,
                    r.strategy,
                    r.exponent,
                    r.primes_checked.len(),
                    skipped.join(","),
                    status
                );
            }
        }
    }
    Ok(())
}

pub fn check_reduce(
    index: &str,
    primes_from: u64,
    primes_up_to: u64,
    pow: u32,
    choice: StrategyChoice,
    format: Format,
) -> Result<bool> {
    no_csv(format, "check-reduce")?;
    let k = parse_index(index)?;
    let cfg = sweep_config(primes_from, primes_up_to, pow)?;
    let pool = worker_pool(None)?;
    let reports = strategies(choice)
        .into_iter()
        .map(|s| fmzv_core::check_reduce(&k, s, cfg, &pool))
        .collect::<fmzv_core::Result<Vec<_>>>()?;
    print_reports(&reports, format)?;
    Ok(reports.iter().all(|r| r.all_passed))
}

pub fn sweep(
    file: &Path,
    primes_from: u64,
    primes_up_to: u64,
    pow: u32,
    choice: StrategyChoice,
    format: Format,
) -> Result<bool> {
    no_csv(format, "sweep")?;
    let cfg = sweep_config(primes_from, primes_up_to, pow)?;
    let text = std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let mut indices = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let k = Index::parse(line).with_context(|| format!("{}:{}", file.display(), lineno + 1))?;
        indices.push(k);
    }
    let pool = worker_pool(None)?;
    let mut reports = Vec::new();
    for k in &indices {
        for s in strategies(choice) {
            reports.push(fmzv_core::check_reduce(k, s, cfg, &pool)?);
        }
    }
    print_reports(&reports, format)?;
    Ok(reports.iter().all(|r| r.all_passed))
}

pub fn bernoulli(n: usize, format: Format) -> Result<bool> {
    let b = bernoulli_numbers(n);
    match format {
        Format::Plain => {
            for (i, q) in b.iter().enumerate() {
                println!("B_{i} = {q}");
            }
        }
        Format::Json => {
            let values: Vec<Value> = b.iter().map(json::rational).collect();
            print!("{}", json::render(&json::document("bernoulli", j!({ "n": n, "values": values }))));
        }
        Format::Csv => {
            println!("n,num,den");
            for (i, q) in b.iter().enumerate() {
                println!("{i},{},{}", q.numer(), q.denom());
            }
        }
    }
    Ok(true)
}

pub fn genfun(depth: usize, max_k: u32, oracle_b: Option<u64>, path: GenfunPath, format: Format) -> Result<bool> {
    if depth == 0 || depth > MAX_GENFUN_DEPTH {
        return Err(usage(format!("--depth must be between 1 and {MAX_GENFUN_DEPTH}")));
    }
    if max_k > MAX_GENFUN_K {
        return Err(usage(format!("--max-k must be at most {MAX_GENFUN_K}")));
    }
    let mut trunc = depth as u32 * max_k + 1;
    let table = loop {
        let series = match path {
            GenfunPath::Recurrence => gr_series(depth, trunc)?,
            GenfunPath::Closed => gr_closed_form(depth, trunc)?,
        };
        match extract_p_from(&series, max_k) {
            Err(Error::TruncationTooSmall { required, .. }) if required <= MAX_GENFUN_TRUNC => trunc = required,
            other => break other?,
        }
    };
    let oracle = match oracle_b {
        Some(b) => Some(check_p_table(&table, b, &worker_pool(None)?)?),
        None => None,
    };
    match format {
        Format::Plain => {
            for (k, p) in table.iter() {
                let key: Vec<String> = k.iter().map(u32::to_string).collect();
                println!("P({}) = {}", key.join(","), p.display_with(VarNames::Y));
            }
        }
        Format::Json => {
            let mut body = json::p_table(&table, VarNames::Y);
            if let Some(rep) = &oracle {
                body["oracle"] = serde_json::to_value(rep)?;
            }
            print!("{}", json::render(&json::document("p_table", body)));
        }
        Format::Csv => print!("{}", json::p_table_csv(&table, VarNames::Y)),
    }
    match oracle {
        Some(rep) => {
            match &rep.first_failure {
                None => eprintln!("oracle: {} comparisons passed", rep.comparisons),
                Some(f) => eprintln!(
                    "oracle: FAIL at k={:?} a={} b={}: table gives {}, enumeration gives {}",
                    f.k, f.a, f.b, f.polynomial, f.oracle
                ),
            }
            Ok(rep.all_passed)
        }
        None => Ok(true),
    }
}

pub fn numeric_check(
    choice: CaseChoice,
    samples: usize,
    trunc: Option<u64>,
    tol: f64,
    seed: u64,
    format: Format,
) -> Result<bool> {
    no_csv(format, "numeric-check")?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    let cases: Vec<IdentityCase> = match choice {
        CaseChoice::All => IdentityCase::ALL.to_vec(),
        CaseChoice::Head => vec![IdentityCase::Head],
        CaseChoice::Middle => vec![IdentityCase::Middle],
        CaseChoice::Tail => vec![IdentityCase::Tail],
    };
    let report = run_numeric(&cases, samples, seed, trunc, tol, &worker_pool(None)?)?;
    let conclusive = report.max_budget <= tol;
    if !conclusive {
        eprintln!(
            "warning: truncation budget {:.3e} exceeds tolerance {:.3e}; result is inconclusive",
            report.max_budget, tol
        );
    }
    match format {
        Format::Json => {
            let mut body = serde_json::to_value(&report)?;
            body["conclusive"] = conclusive.into();
            print!("{}", json::render(&json::document("numeric_check", body)));
        }
        _ => {
            for p in &report.points {
                println!(
                    "{:<6} s=({}) t+={} t-={} N={} residual={:.3e} budget={:.3e}",
                    p.case.to_string(),
                    p.s.join(", "),
                    p.t_plus,
                    p.t_minus,
                    p.trunc,
                    p.residual,
                    p.budget
                );
            }
            let verdict = match (report.all_passed, conclusive) {
                (true, true) => "pass",
                (true, false) => "inconclusive",
                (false, _) => "FAIL",
            };
            println!(
                "max residual {:.3e}, max budget {:.3e}, tolerance {:.3e}: {verdict}",
                report.max_residual, report.max_budget, tol
            );
        }
    }
    Ok(report.all_passed && conclusive)
}

use std::io::Write;
use std::process::{Command, Output};

fn fmzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmzv")).args(args).env("FMZV_THREADS", "2").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    fmzv(args).status.code().expect("exit code")
}

#[test]
fn value_examples() {
    assert_eq!(stdout(&fmzv(&["value", "1", "--prime", "5", "--pow", "2"])), "0\n");
    assert_eq!(stdout(&fmzv(&["value", "", "--prime", "7", "--pow", "1"])), "1\n");
    assert_eq!(stdout(&fmzv(&["value", "-1", "--prime", "7", "--pow", "1"])), "0\n");
    let exact = stdout(&fmzv(&["value", "1", "--prime", "5", "--pow", "2", "--exact"]));
    assert_eq!(exact, "0\n25/12\n");
    let ranged = stdout(&fmzv(&["value", "-1", "--prime", "7", "--range", "2,6"]));
    assert_eq!(ranged, "5\n");
}

#[test]
fn reduce_examples() {
    let out = stdout(&fmzv(&["reduce", "3,-1", "--single-var"]));
    assert_eq!(out, "(1): -1/2\n(2): -1/2\n(3): 1/2*x^2 - 1/2*x\n");
    assert_eq!(stdout(&fmzv(&["reduce", "2"])), "(2): 1\n");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&fmzv(&["reduce", "-1,-1", "--format", "json"]))).unwrap();
    assert_eq!(json["schema"], "fmzv/1");
    let terms = json["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["index"], "");
}

#[test]
fn genfun_examples() {
    let out = stdout(&fmzv(&["genfun", "--depth", "1", "--max-k", "1"]));
    assert_eq!(out, "P(0) = ym - yp - 1\nP(1) = 1/2*ym^2 - 1/2*yp^2 - 1/2*ym - 1/2*yp\n");
    let out = stdout(&fmzv(&["genfun", "--depth", "2", "--max-k", "0", "--path", "closed"]));
    assert_eq!(out, "P(0,0) = 1/2*ym^2 - yp*ym + 1/2*yp^2 - 3/2*ym + 3/2*yp + 1\n");
    assert_eq!(code(&["genfun", "--depth", "2", "--max-k", "2", "--check-oracle", "--b-up-to", "15"]), 0);
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["value", "1", "--prime", "5"], 0),
        (&["check-reduce", "3,-1", "--primes-up-to", "50", "--pow", "2"], 0),
        (&["check-reduce", "4", "--primes-up-to", "20"], 0),
        (&["check-reduce", "-2,1,-1", "--primes-up-to", "30"], 0),
        (&["numeric-check", "--case", "tail", "--samples", "1", "--trunc", "10", "--tol", "1e-12"], 1),
        (&["value", "1,x", "--prime", "5"], 2),
        (&["value", "1", "--prime", "4"], 2),
        (&["value", "1", "--prime", "5", "--range", "3,1"], 2),
        (&["value", "1", "--prime", "5", "--range", "nope"], 2),
        (&["reduce"], 2),
        (&["frobnicate"], 2),
        (&["check-reduce", "3", "--primes-up-to", "3"], 2),
        (&["genfun", "--depth", "5", "--max-k", "1"], 2),
        (&["sweep", "/nonexistent/indices.txt"], 2),
        (&["value", "1", "--prime", "5", "--range", "0,12"], 3),
        (&["value", "1", "--prime", "101", "--pow", "20"], 3),
    ];
    for (args, expected) in cases {
        assert_eq!(code(args), *expected, "fmzv {}", args.join(" "));
    }
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["check-reduce", "-2,3,-1", "--primes-up-to", "80", "--pow", "2", "--format", "json"][..],
        &["genfun", "--depth", "2", "--max-k", "2", "--format", "json"][..],
        &["numeric-check", "--case", "head", "--samples", "2", "--trunc", "2000", "--format", "json"][..],
    ] {
        let a = fmzv(args);
        let b = Command::new(env!("CARGO_BIN_EXE_fmzv")).args(args).env("FMZV_THREADS", "5").output().unwrap();
        assert_eq!(a.stdout, b.stdout, "fmzv {}", args.join(" "));
        assert!(a.status.success());
    }
}

#[test]
fn sweep_file() {
    let dir = std::env::temp_dir().join(format!("fmzv-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("indices.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# reductions to check\n3,-1\n\n-2,1,-1\n2,-4").unwrap();
    let out = fmzv(&["sweep", path.to_str().unwrap(), "--primes-up-to", "40", "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = json["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 6);
    for r in reports {
        let checked: Vec<u64> = r["primes_checked"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        for s in r["primes_skipped"].as_array().unwrap() {
            assert!(!checked.contains(&s["prime"].as_u64().unwrap()));
        }
        assert_eq!(r["all_passed"], true);
    }

    writeln!(f, "1,,2").unwrap();
    assert_eq!(code(&["sweep", path.to_str().unwrap()]), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

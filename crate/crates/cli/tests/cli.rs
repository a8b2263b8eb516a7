use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kahler-higgs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kahler-higgs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn fixtures_list_shows_ranks() {
    let o = run(&["fixtures", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = |name: &str| {
        text.lines()
            .find(|l| l.split_whitespace().next() == Some(name))
            .unwrap()
            .to_string()
    };
    assert_eq!(row("p2").split_whitespace().last(), Some("3"));
    assert_eq!(row("torus2").split_whitespace().last(), Some("16"));
}

#[test]
fn fixtures_list_empty_dir() {
    let dir = std::env::temp_dir().join(format!("kahler-higgs-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let o = run(&["fixtures", "list", "--dir", dir.to_str().unwrap()]);
    assert!(o.status.success());
}

#[test]
fn verify_exact_all_zero() {
    let o = run(&[
        "verify",
        "--fixture",
        "p1xp1",
        "--points",
        "10",
        "--seed",
        "42",
        "--mode",
        "exact",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let records = v["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert_eq!(r["residual"].as_f64(), Some(0.0), "{r}");
        assert_eq!(r["pass"], true);
        assert_eq!(r["mode"], "exact");
    }
    assert_eq!(v["version"], "1");
    assert_eq!(v["seed"], 42);
}

#[test]
fn verify_float_within_tolerance() {
    let o = run(&[
        "verify",
        "--fixture",
        "p1xp1",
        "--points",
        "10",
        "--seed",
        "42",
        "--mode",
        "float",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for r in v["records"].as_array().unwrap() {
        assert!(r["residual"].as_f64().unwrap() < 1e-10, "{r}");
    }
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--fixture",
        "p2",
        "--points",
        "2",
        "--seed",
        "5",
        "--format",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn verify_n3_skips_surface_suite() {
    let o = run(&[
        "verify",
        "--fixture",
        "p1xp2",
        "--points",
        "1",
        "--directions",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped: requires n=2"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--fixture", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--fixture", "p1", "--mode", "fuzzy"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["scan", "--fixture", "p1", "--flavor", "xx"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["convex"]).status.code(), Some(2));
}

#[test]
fn p1_scan_is_constant() {
    let o = run(&[
        "scan",
        "--fixture",
        "p1",
        "--from",
        "1",
        "--to",
        "5/2",
        "--steps",
        "3",
        "--directions",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        [
            "fixture",
            "t",
            "flavor",
            "direction",
            "hsc",
            "hsc_half",
            "bound",
            "margin",
            "mode",
            "in_cone"
        ]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    for r in rows {
        assert_eq!(r[4].parse::<f64>().unwrap(), -4.0);
        assert!(r[7].parse::<f64>().unwrap() >= 0.0);
    }
}

#[test]
fn zero_step_scan_is_header_only() {
    let o = run(&["scan", "--fixture", "p1", "--steps", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = run(&[
        "scan",
        "--fixture",
        "p2",
        "--kind",
        "logconv",
        "--steps",
        "0",
    ]);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn scan_reports_cone_exit() {
    let o = run(&[
        "scan",
        "--fixture",
        "p1xp1",
        "--kind",
        "logconv",
        "--from",
        "1,1",
        "--to",
        "1,-1",
        "--steps",
        "3",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().skip(1).any(|l| l.ends_with("false,false")));
}

#[test]
fn scan_writes_out_file() {
    let out = std::env::temp_dir().join(format!("kahler-higgs-scan-{}.csv", std::process::id()));
    let o = run(&[
        "scan",
        "--fixture",
        "p2",
        "--steps",
        "2",
        "--mode",
        "float",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&out)
        .unwrap()
        .starts_with("fixture,t,flavor"));
}

#[test]
fn ineq_passes() {
    let o = run(&[
        "ineq",
        "--fixture",
        "p1xp1",
        "--tuples",
        "5",
        "--steps",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kt_equality"));
}

#[test]
fn convex_examples() {
    let tri = temp("tri.txt", "0 0\n1 0\n0 1\n");
    let sq = temp("sq.txt", "# unit square\n0 0\n1 0\n1 1\n0 1\n");
    let o = run(&[
        "convex",
        "--polygon",
        tri.to_str().unwrap(),
        "--polygon",
        sq.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let bm = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["identity"] == "brunn_minkowski")
        .unwrap();
    assert!(bm["detail"].as_str().unwrap().contains("|A0+A1|=7/2"));

    let o = run(&["convex", "--box", "1,1", "--box", "3/2,3/2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "convex", "--box", "1,1,1", "--box", "1,2,1", "--box", "2,1,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mixed_volume=11"));

    let bad = temp("bad.txt", "0 0\n2 0\n1 1\n2 2\n0 2\n");
    assert_eq!(
        run(&["convex", "--polygon", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn load_check_roundtrip() {
    let o = run(&["fixtures", "show", "p1xp1"]);
    assert!(o.status.success());
    let p = temp("p1xp1.json", &stdout(&o));
    let o = run(&["load-check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank=4"));

    let broken = stdout(&run(&["fixtures", "show", "p1"])).replace("\"n\": 1", "\"n\": 2");
    let p = temp("broken.json", &broken);
    assert_ne!(
        run(&["load-check", p.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

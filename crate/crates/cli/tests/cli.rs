use std::process::{Command, Output};

use dwork_core::oracle::brute_projective_counts;
use dwork_core::FieldDesc;
use serde_json::Value;

fn dwork(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dwork"))
        .args(args)
        .env_remove("DWORK_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn count_all_methods_agree() {
    let o = dwork(&[
        "count", "--d", "5", "--p", "11", "--lambda", "2", "--method", "all", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["agree"], true);
    let totals = v["totals"].as_array().unwrap();
    let methods: Vec<&str> = totals
        .iter()
        .map(|t| t["method"].as_str().unwrap())
        .collect();
    assert_eq!(
        methods,
        ["brute", "koblitz", "theorem11", "threefold", "decompose"]
    );
    assert!(totals.iter().all(|t| t["count"] == 2550));
    assert!(!v["terms"].as_array().unwrap().is_empty());
    assert!(v["residuals"][4]["cancellation"].as_f64().unwrap() < 1e-6);
}

#[test]
fn count_preconditions_exit_2() {
    assert_eq!(
        code(&dwork(&["count", "--d", "5", "--p", "7", "--lambda", "2"])),
        2
    );
    assert_eq!(
        code(&dwork(&[
            "count", "--d", "5", "--p", "11", "--lambda", "0", "--method", "koblitz"
        ])),
        2
    );
    assert_eq!(
        code(&dwork(&[
            "count", "--d", "5", "--p", "11", "--lambda", "11"
        ])),
        2
    );
    assert_eq!(
        code(&dwork(&[
            "count",
            "--d",
            "4",
            "--p",
            "13",
            "--lambda",
            "2",
            "--method",
            "decompose"
        ])),
        2
    );
    assert_eq!(
        code(&dwork(&["count", "--d", "5", "--p", "10", "--lambda", "2"])),
        2
    );
    assert_eq!(code(&dwork(&["count", "--d", "5"])), 2);
}

#[test]
fn count_even_degree_in_conjecture_mode() {
    let o = dwork(&[
        "count",
        "--d",
        "4",
        "--p",
        "13",
        "--lambda",
        "2",
        "--method",
        "all",
        "--conjecture",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("method,count,raw_re,raw_im,residual"));
    let counts: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(counts.len(), 4);
    assert!(counts.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn count_over_extension_field() {
    let o = dwork(&[
        "count",
        "--d",
        "4",
        "--p",
        "3",
        "--e",
        "2",
        "--lambda",
        "5",
        "--method",
        "all",
        "--conjecture",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("F_3^2 (q = 9)"));
}

#[test]
fn verify_suites() {
    let o = dwork(&["verify", "--suite", "koike", "--pmax", "47"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("PASS\n"));
    assert_eq!(
        code(&dwork(&[
            "verify", "--suite", "thm32", "--d", "5", "--p", "11", "--n", "100", "--seed", "7"
        ])),
        0
    );
    assert_eq!(
        code(&dwork(&["verify", "--suite", "greene-defs", "--p", "7"])),
        0
    );
    assert_eq!(code(&dwork(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&dwork(&["verify", "--suite", "koike", "--p", "7"])), 2);
    assert_eq!(code(&dwork(&["verify", "--suite", "thm32", "--d", "5"])), 2);
}

#[test]
fn verify_failure_exits_1() {
    let o = dwork(&[
        "verify",
        "--suite",
        "cancellation",
        "--d",
        "3",
        "--p",
        "7",
        "--cancellation-tol",
        "1e-40",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_json_report() {
    let o = dwork(&[
        "verify", "--suite", "igusa", "--pmax", "13", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["suite"], "igusa");
    assert_eq!(v["instances"].as_array().unwrap().len(), 5);
}

#[test]
fn cosets_listing() {
    let o = dwork(&["cosets", "--d", "5", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["cosets"], 125);
    let mut sizes: Vec<u64> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["class_size"].as_u64().unwrap())
        .collect();
    sizes.sort();
    assert_eq!(sizes, [1, 20, 20, 24, 30, 30]);

    let o = dwork(&["cosets", "--d", "4"]);
    assert!(stdout(&o).starts_with("d=4: 16 cosets in 3 classes"));

    let o = dwork(&["cosets", "--d", "6", "--classify"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1F0 multiplicity: 360 (expected 360)"));

    assert_eq!(code(&dwork(&["cosets", "--d", "11"])), 2);
    assert_eq!(code(&dwork(&["cosets", "--d", "1"])), 2);
    assert_eq!(code(&dwork(&["cosets", "--d", "2", "--classify"])), 2);
    assert_eq!(code(&dwork(&["cosets", "--d", "2"])), 0);
}

#[test]
fn table_csv_matches_enumeration() {
    let o = dwork(&[
        "table", "--d", "5", "--p", "11", "--format", "csv", "--check",
    ]);
    assert_eq!(code(&o), 0);
    let field = FieldDesc::build(11, 1, None).unwrap();
    let brute = brute_projective_counts(&field, 5);
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[0], "lambda");
    assert_eq!(&header[1], "count");
    assert_eq!(&header[2], "delta_active");
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 10);
    for r in &rows {
        let lam: usize = r[0].parse().unwrap();
        assert_eq!(r[1].parse::<u64>().unwrap(), brute[lam]);
        assert_eq!(r.len(), header.len());
    }
}

#[test]
fn table_json_schema() {
    let o = dwork(&[
        "table", "--d", "3", "--p", "13", "--from", "2", "--to", "5", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    for key in ["params", "terms", "totals", "residuals"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["params"]["method"], "decompose");
    let totals = v["totals"].as_array().unwrap();
    assert_eq!(totals.len(), 4);
    assert_eq!(totals[0]["lambda"], 2);
    let t = &v["terms"][0];
    assert!(t["value"].as_array().unwrap().len() == 2);
    let text = serde_json::to_string(&v).unwrap();
    let back: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(back, v);
}

#[test]
fn table_bad_ranges() {
    assert_eq!(
        code(&dwork(&[
            "table", "--d", "5", "--p", "11", "--from", "5", "--to", "3"
        ])),
        2
    );
    assert_eq!(
        code(&dwork(&["table", "--d", "5", "--p", "11", "--from", "0"])),
        2
    );
    assert_eq!(
        code(&dwork(&["table", "--d", "5", "--p", "11", "--to", "11"])),
        2
    );
}

#[test]
fn table_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = dwork(&[
        "table",
        "--d",
        "3",
        "--p",
        "7",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 7);
    let missing = dir.path().join("no/such/dir/t.csv");
    assert_eq!(
        code(&dwork(&[
            "table",
            "--d",
            "3",
            "--p",
            "7",
            "--out",
            missing.to_str().unwrap()
        ])),
        3
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--d", "5", "--p", "31", "--format", "csv"];
    assert_eq!(dwork(&args).stdout, dwork(&args).stdout);
    let args = [
        "count", "--d", "5", "--p", "11", "--lambda", "3", "--method", "all",
    ];
    assert_eq!(dwork(&args).stdout, dwork(&args).stdout);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("dwork.toml");
    std::fs::write(
        &cfg,
        "format = \"json\"\n[tolerances]\nrounding_guard = 0.02\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let o = dwork(&[
        "--config", c, "count", "--d", "3", "--p", "7", "--lambda", "2",
    ]);
    assert_eq!(code(&o), 0);
    json(&o);
    let o = dwork(&[
        "--config", c, "--format", "csv", "count", "--d", "3", "--p", "7", "--lambda", "2",
    ]);
    assert!(stdout(&o).starts_with("method,count"));

    std::fs::write(&cfg, "format = [").unwrap();
    assert_eq!(code(&dwork(&["--config", c, "cosets", "--d", "3"])), 2);
    std::fs::write(&cfg, "colour = \"blue\"\n").unwrap();
    assert_eq!(code(&dwork(&["--config", c, "cosets", "--d", "3"])), 2);
    let missing = dir.path().join("absent.toml");
    assert_eq!(
        code(&dwork(&[
            "--config",
            missing.to_str().unwrap(),
            "cosets",
            "--d",
            "3"
        ])),
        3
    );
}

#[test]
fn gauss_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "--cache-dir",
        d,
        "count",
        "--d",
        "5",
        "--p",
        "11",
        "--lambda",
        "2",
        "--method",
        "decompose",
    ];
    let first = dwork(&args);
    assert_eq!(code(&first), 0);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = dwork(&args);
    assert_eq!(first.stdout, second.stdout);
    let plain = dwork(&args[2..]);
    assert_eq!(first.stdout, plain.stdout);

    let env_dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_dwork"))
        .args(["count", "--d", "3", "--p", "7", "--lambda", "2"])
        .env("DWORK_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 1);
}

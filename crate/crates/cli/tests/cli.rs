use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ternary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ternary"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn jsonl(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn strip_timing(mut v: Value) -> Value {
    if let Some(o) = v.as_object_mut() {
        o.remove("elapsed_ms");
    }
    v
}

#[test]
fn counterexample15_reports_missing_two() {
    let out = ternary(&["counterexample15", "--format", "jsonl"]);
    assert_eq!(code(&out), 0);
    let lines = jsonl(&out);
    assert_eq!(lines[0]["op"], "config");
    let rec = &lines[1];
    assert_eq!(rec["witness"]["set"], "m=15; {1,4,7,11,13}");
    assert_eq!(rec["witness"]["missing"], "m=15; {2}");
    assert_eq!(rec["witness"]["density"], "5/8");
}

#[test]
fn goldbach_count_brute_prints_four() {
    let out = ternary(&[
        "goldbach-count",
        "--n",
        "9",
        "--p1",
        "all",
        "--p2",
        "all",
        "--p3",
        "all",
        "--method",
        "brute",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "4");
}

#[test]
fn seq_check_hypothesis_failure_is_not_an_assertion() {
    let dir = tempfile::tempdir().unwrap();
    let ones = "n=6\na: 1 1 1 1 1 1\nb: 1 1 1 1 1 1\nc: 1 1 1 1 1 1\n";
    let f = write(dir.path(), "ones.txt", ones);
    let out = ternary(&["seq-check", "--file", &f, "--format", "jsonl"]);
    assert_eq!(code(&out), 0);
    assert_eq!(jsonl(&out)[1]["status"], "HYPOTHESIS_FAILS");

    let short = write(dir.path(), "two.txt", "n=2\na: 1 1/2\nb: 1 1/2\nc: 1 1/2\n");
    let out = ternary(&["seq-check", "--file", &short, "--format", "jsonl"]);
    assert_eq!(code(&out), 0, "below the theorem's range");
    assert_eq!(jsonl(&out)[1]["status"], "COUNTEREXAMPLE");
    assert_eq!(jsonl(&out)[1]["margin"], "-9/32");

    let out = ternary(&["seq-certificate", "--file", &f]);
    assert_eq!(code(&out), 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        code(&ternary(&["seq-search", "--n", "6"])),
        2,
        "missing --steps"
    );
    assert_eq!(
        code(&ternary(&["corollary14", "--m", "15", "--mode", "random"])),
        2,
        "missing --trials"
    );
    assert_eq!(code(&ternary(&["nonsense"])), 2);
    assert_eq!(
        code(&ternary(&[
            "sumset", "--m", "15", "--a", "1,99", "--b", "1"
        ])),
        2
    );
    assert_eq!(
        code(&ternary(&[
            "goldbach-count",
            "--n",
            "21",
            "--p1",
            "mod:15:3"
        ])),
        2
    );
    assert_eq!(code(&ternary(&["goldbach-count", "--range", "8:20"])), 2);
    assert_eq!(
        code(&ternary(&[
            "wtrick", "--z", "12", "--n", "1001", "--delta", "1/10", "--eta", "1/100"
        ])),
        2
    );
    assert_eq!(code(&ternary(&["--help"])), 0);
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_ternary"))
        .env("TERNARY_THREADS", "zero")
        .arg("counterexample15")
        .output()
        .unwrap();
    assert_eq!(code(&bad_threads), 2);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "run.cfg",
        "# counting run\nn = 21\nmethod = brute\np1 = all\n",
    );
    let out = ternary(&["goldbach-count", "--config", &cfg]);
    assert_eq!(stdout(&out).trim(), "19");
    let out = ternary(&["goldbach-count", "--config", &cfg, "--n", "9"]);
    assert_eq!(stdout(&out).trim(), "4");
    let out = ternary(&["goldbach-count", "--config", &cfg, "--format", "jsonl"]);
    let header = &jsonl(&out)[0];
    assert_eq!(header["config"]["params"]["method"], "brute");
    assert_eq!(header["config"]["params"]["p2"], "all");

    let bad = write(dir.path(), "bad.cfg", "n=21\nunknown_key=3\n");
    assert_eq!(code(&ternary(&["goldbach-count", "--config", &bad])), 2);
}

#[test]
fn jsonl_is_deterministic_modulo_timing() {
    let args = [
        "corollary14",
        "--m",
        "21",
        "--mode",
        "random",
        "--trials",
        "200",
        "--seed",
        "7",
        "--format",
        "jsonl",
    ];
    let a: Vec<Value> = jsonl(&ternary(&args))
        .into_iter()
        .map(strip_timing)
        .collect();
    let b: Vec<Value> = jsonl(&ternary(&args))
        .into_iter()
        .map(strip_timing)
        .collect();
    assert_eq!(a, b);
    assert_eq!(a[1]["seed"], 7);
    let search = [
        "seq-search",
        "--n",
        "6",
        "--steps",
        "20000",
        "--seed",
        "3",
        "--format",
        "jsonl",
    ];
    let a: Vec<Value> = jsonl(&ternary(&search))
        .into_iter()
        .map(strip_timing)
        .collect();
    let b: Vec<Value> = jsonl(&ternary(&search))
        .into_iter()
        .map(strip_timing)
        .collect();
    assert_eq!(a, b);
}

#[test]
fn output_file_is_appended() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let p = path.to_str().unwrap();
    for _ in 0..2 {
        let out = ternary(&["counterexample15", "--format", "jsonl", "--output", p]);
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);
}

#[test]
fn range_csv_has_one_row_per_odd_n() {
    let out = ternary(&["goldbach-count", "--range", "7:99", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "n,count,method,ms");
    assert_eq!(rows.len(), 1 + 47);
    assert!(rows[1].starts_with("7,3,convolution,"));
}

#[test]
fn density_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let ones: String = "m=15\n".to_string()
        + &[1, 2, 4, 7, 8, 11, 13, 14]
            .iter()
            .map(|u| format!("u {u} 1\n"))
            .collect::<String>();
    let f = write(dir.path(), "ones15.txt", &ones);
    let out = ternary(&[
        "lemma32", "--f1", &f, "--f2", &f, "--f3", &f, "--format", "jsonl",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        jsonl(&out)[1]["witness"]["witnesses"]
            .as_array()
            .unwrap()
            .len(),
        15
    );

    let out = ternary(&[
        "theorem13",
        "--f1",
        &f,
        "--f2",
        &f,
        "--f3",
        &f,
        "--delta",
        "1/10",
        "--eta",
        "1/100",
    ]);
    assert_eq!(code(&out), 0);
    // 15 has small prime factors, outside the recursive lemma's range
    let out = ternary(&[
        "lemma31", "--f1", &f, "--f2", &f, "--f3", &f, "--delta", "1/10", "--eta", "1/100",
    ]);
    assert_eq!(code(&out), 2);

    let half: String =
        "m=7\n".to_string() + &(1..7).map(|u| format!("u {u} 3/4\n")).collect::<String>();
    let g = write(dir.path(), "seven.txt", &half);
    for mode in ["constructive", "brute"] {
        let out = ternary(&[
            "lemma31", "--f1", &g, "--f2", &g, "--f3", &g, "--delta", "1/10", "--eta", "1/100",
            "--mode", mode,
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn wtrick_and_spectrum() {
    let out = ternary(&[
        "wtrick", "--z", "8", "--n", "100003", "--delta", "1/10", "--eta", "1/1000", "--format",
        "jsonl",
    ]);
    assert_eq!(code(&out), 0);
    let rec = &jsonl(&out)[1];
    assert_eq!(rec["status"], "PASS");
    let b: Vec<u64> = rec["witness"]["congruence"]["direct"]["found"]["residues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(b.iter().sum::<u64>() % 210, 100003 % 210);

    let sparse = [
        "wtrick",
        "--z",
        "8",
        "--n",
        "100003",
        "--p1",
        "list:3,5,7",
        "--delta",
        "1/10",
        "--eta",
        "1/1000",
    ];
    let out = ternary(&sparse);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("MEANS_FAIL"));

    let dir = tempfile::tempdir().unwrap();
    let v = write(
        dir.path(),
        "v.txt",
        &(0..101)
            .map(|i| format!("{} ", (i * 37 % 11) as f64 / 7.0))
            .collect::<String>(),
    );
    let out = ternary(&["spectrum", "--file", &v, "--q", "2.5"]);
    assert_eq!(code(&out), 0);
    let composite = write(dir.path(), "c.txt", "1 2 3 4");
    assert_eq!(code(&ternary(&["spectrum", "--file", &composite])), 2);
    assert_eq!(code(&ternary(&["spectrum", "--file", &v, "--q", "3"])), 2);
}

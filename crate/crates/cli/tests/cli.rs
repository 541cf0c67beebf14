use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cclique(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cclique"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_then_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let o = cclique(&["gen", "petersen", "--out", "p.txt"], dir.path());
    assert!(o.status.success());
    let text = fs::read_to_string(dir.path().join("p.txt")).unwrap();
    assert_eq!(text.lines().next(), Some("10 15"));
    assert_eq!(text.lines().count(), 16);

    let o = cclique(&["oracle", "p.txt"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["alpha"], 4);
    assert_eq!(v["beta"], 3);
    assert_eq!(v["n"], 10);
}

#[test]
fn oracle_rejects_bad_solutions() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("path.txt"), "4 3\n0 1\n1 2\n2 3\n").unwrap();
    fs::write(dir.path().join("good.txt"), "0\n2\n").unwrap();
    fs::write(dir.path().join("bad.txt"), "0\n1\n").unwrap();
    fs::write(dir.path().join("mm.txt"), "1 2\n").unwrap();
    fs::write(dir.path().join("mm_bad.txt"), "0 1\n").unwrap();

    let o = cclique(&["oracle", "path.txt", "--mis", "good.txt", "--matching", "mm.txt"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mis_valid"], true);
    assert_eq!(v["matching_valid"], true);

    let o = cclique(&["oracle", "path.txt", "--mis", "bad.txt"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = cclique(&["oracle", "path.txt", "--matching", "mm_bad.txt"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_prints_json_records() {
    let dir = tempfile::tempdir().unwrap();
    let o = cclique(
        &["solve", "mm-avg-degree", "--gen", "gnp n=300 d=8", "--seed", "5", "--reps", "3"],
        dir.path(),
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 3);
    assert_eq!(records[0]["seed"], 5);
    assert_eq!(records[2]["seed"], 7);
    assert!(records.iter().all(|r| r["valid"] == true));

    let again = cclique(
        &["solve", "mm-avg-degree", "--gen", "gnp n=300 d=8", "--seed", "5", "--reps", "3"],
        dir.path(),
    );
    let w: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    for (a, b) in records.iter().zip(w.as_array().unwrap()) {
        assert_eq!(a["solution_size"], b["solution_size"]);
        assert_eq!(a["rounds"], b["rounds"]);
    }
}

#[test]
fn solve_from_file() {
    let dir = tempfile::tempdir().unwrap();
    assert!(cclique(&["gen", "cycle n=50", "--out", "c.txt"], dir.path()).status.success());
    let o = cclique(&["solve", "mis-independence", "--graph", "c.txt", "--format", "csv"], dir.path());
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("config_hash,seed,algorithm,n,m"));
    assert!(lines[1].contains(",mis-independence,50,50,"));
}

#[test]
fn bench_writes_one_row_per_trial() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("b.cfg"),
        "generator = interval count=200 span=30\nalgorithm = mis-neighborhood\nreps = 4\nchecks = admissible\n",
    )
    .unwrap();
    let o = cclique(&["bench", "b.cfg", "--reps", "6", "--out", "r.csv"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert_eq!(csv.lines().count(), 7);

    let o = cclique(
        &["bench", "b.cfg", "--set", "algorithm=reduce-mis", "--format", "json", "--out", "r.json"],
        dir.path(),
    );
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[0]["algorithm"], "reduce-mis");
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cclique(&["gen", "nonsense n=3"], dir.path()).status.code(), Some(2));
    assert_eq!(cclique(&["solve", "no-such-algorithm", "--gen", "petersen"], dir.path()).status.code(), Some(2));
    assert_eq!(cclique(&["solve", "mis-avg-degree"], dir.path()).status.code(), Some(2));
    assert_eq!(cclique(&["bench", "missing.cfg"], dir.path()).status.code(), Some(2));
}

use std::path::Path;
use std::process::{Command, Output};

fn repstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repstab"))
        .args(args)
        .env_remove("REPSTAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn character_tables() {
    let o = repstab(&["chars", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "lambda\t(3)\t(2,1)\t(1,1,1)\n(3)\t1\t1\t1\n(2,1)\t-1\t0\t2\n(1,1,1)\t1\t-1\t1\n"
    );
    let o = repstab(&["chars", "--n", "5", "--lambda", "4,1"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("(4,1)\t"));
    assert!(lines[1].ends_with("\t4"), "identity column is last: {}", lines[1]);
    assert_eq!(code(&repstab(&["chars", "--n", "0"])), 2);
    assert_eq!(code(&repstab(&["chars", "--n", "4", "--lambda", "2,1"])), 2);
    assert_eq!(code(&repstab(&["chars", "--n", "4", "--lambda", "x"])), 2);
}

#[test]
fn configuration_space_decompositions() {
    let o = repstab(&["decompose-conf", "--n", "4", "--i", "2"]);
    assert_eq!(
        stdout(&o),
        "label\tpartition\tmultiplicity\tdimension\nV(1)\t(3,1)\t2\t3\nV(1,1)\t(2,1,1)\t1\t3\nV(2)\t(2,2)\t1\t2\n"
    );
    let o = repstab(&["decompose-conf", "--n", "6", "--i", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let labels: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["V(0)", "V(1)", "V(2)"]);
    assert!(v.as_array().unwrap().iter().all(|r| r["multiplicity"] == 1));
    assert_eq!(code(&repstab(&["decompose-conf", "--n", "4", "--i", "4"])), 2);

    let o = repstab(&["decompose-conf", "--n", "10", "--i", "2"]);
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(|l| {
        let f: Vec<&str> = l.split('\t').collect();
        format!("{}^{}", f[0], f[2])
    }).collect();
    assert_eq!(rows, ["V(1)^2", "V(1,1)^2", "V(2)^2", "V(2,1)^2", "V(3)^1", "V(3,1)^1"]);

    let o = repstab(&["decompose-conf", "--n", "0", "--i", "2", "--window", "4..10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("# onset 7 (bound 4i = 8)\n"));
}

#[test]
fn cross_check_exit_codes() {
    let o = repstab(&["verify-gl", "--n", "3", "--q", "2", "--stat", "one"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "3\t2\t1\t4\t4\tPASS");
    let o = repstab(&["verify-gl", "--n", "4", "--q", "3", "--stat", "quadratic-excess"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\t-6\t-6\tPASS"));
    let o = repstab(&["verify-gl", "--n", "4", "--q", "3", "--stat", "X2 - C(X1,2)"]);
    assert!(stdout(&o).contains("\t6\t6\tPASS"));
    assert_eq!(code(&repstab(&["verify-gl", "--n", "5", "--q", "2", "--stat", "linear"])), 0);
    assert_eq!(code(&repstab(&["verify-gl", "--n", "3", "--q", "4", "--stat", "one"])), 2);
    assert_eq!(code(&repstab(&["verify-gl", "--n", "3", "--q", "2", "--stat", "C(X1"])), 2);
    assert_eq!(code(&repstab(&["verify-gl", "--n", "3"])), 2);
}

#[test]
fn polynomial_statistics() {
    let o = repstab(&["fq", "total", "--n", "3", "--q", "3", "--stat", "one", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["total"], "18");
    assert_eq!(v[0]["expectation"], "1");
    assert_eq!(v[0]["n"], 3);
    let o = repstab(&["fq", "irreducible", "--n", "6", "--q", "2"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "6\t2\t9\t9");
    let o = repstab(&["fq", "factor", "--q", "2", "--coeffs", "1,1"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "x^2 + x + 1\t(2)\t-1");
    assert_eq!(code(&repstab(&["fq", "factor", "--q", "2", "--coeffs", "1,0"])), 2);
    let o = repstab(&["fq", "series", "--stat", "linear", "--i-max", "2", "--window", "2..8"]);
    assert_eq!(code(&o), 0);
    let o = repstab(&["fq", "discriminant", "--n", "3", "--q", "5"]);
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with("\ttrue"));
}

#[test]
fn tori_counts() {
    let o = repstab(&["tori", "counts", "--n", "2", "--q", "3", "--brute-force"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "n\tq\ttype\tcount\tenumerated\n2\t3\t(1,1)\t6\t6\n2\t3\t(2)\t3\t3\n# |GL_2(F_3)| = 48\n"
    );
    let o = repstab(&["tori", "total", "--n", "3", "--q", "2", "--stat", "linear"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap().split('\t').last().unwrap(), "7/4");
    let o = repstab(&["tori", "series", "--n", "3", "--stat", "linear"]);
    let coeffs: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().to_string()).collect();
    assert_eq!(&coeffs[..3], ["1", "1", "1"]);
}

#[test]
fn fi_modules() {
    let o = repstab(&["fimod", "profile", "--module", "poly(3)", "--n-max", "5"]);
    let gens: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split('\t').last().unwrap().to_string()).collect();
    assert_eq!(gens, ["0", "1", "1", "1", "0", "0"]);
    assert_eq!(code(&repstab(&["fimod", "colimit", "--module", "poly(3)", "--big-n", "3", "--n", "5"])), 0);
    assert_eq!(code(&repstab(&["fimod", "colimit", "--module", "poly(3)", "--big-n", "2", "--n", "3"])), 1);
    assert_eq!(code(&repstab(&["fimod", "repstab", "--module", "conf(1)", "--window", "2..8"])), 0);
    assert_eq!(code(&repstab(&["fimod", "repstab", "--module", "exterior", "--window", "1..7"])), 1);
    let o = repstab(&["fimod", "murnaghan", "--lambda", "1", "--mu", "1", "--window", "4..8"]);
    assert_eq!(stdout(&o), "label\tmultiplicity\nV(0)\t1\nV(1)\t1\nV(1,1)\t1\nV(2)\t1\n# onset 4\n");
    assert_eq!(code(&repstab(&["fimod", "profile", "--module", "bogus(1)"])), 2);
}

#[test]
fn exported_modules_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poly2.json");
    let p = path.to_str().unwrap();
    assert_eq!(code(&repstab(&["fimod", "export", "--module", "poly(2)", "--n-max", "5", "--out", p])), 0);
    let from_file = repstab(&["fimod", "profile", "--module", p]);
    let builtin = repstab(&["fimod", "profile", "--module", "poly(2)", "--n-max", "5"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(stdout(&from_file), stdout(&builtin));
    std::fs::write(&path, "{\"format\": \"fimodule\", \"version\": 7}").unwrap();
    assert_ne!(code(&repstab(&["fimod", "profile", "--module", p])), 0);
}

fn cache_files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    v.sort();
    v
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = repstab(&["decompose-conf", "--n", "7", "--i", "3", "--cache-dir", d]);
    let files = cache_files(dir.path());
    assert!(files.iter().any(|f| f.starts_with("os_traces-7-3-")), "{files:?}");
    assert!(files.iter().any(|f| f.starts_with("sn_chartable-7-")), "{files:?}");
    let warm = repstab(&["decompose-conf", "--n", "7", "--i", "3", "--cache-dir", d]);
    assert_eq!(stdout(&cold), stdout(&warm));
    assert_eq!(cache_files(dir.path()), files);

    let env = Command::new(env!("CARGO_BIN_EXE_repstab"))
        .args(["decompose-conf", "--n", "7", "--i", "3", "--jobs", "2"])
        .env("REPSTAB_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(stdout(&env), stdout(&cold));
    assert_eq!(code(&repstab(&["chars", "--n", "3", "--jobs", "0"])), 2);
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moncoh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn temp_file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("moncoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn check_gcm_wording() {
    let o = run(&["check-gcm", &data("i1.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "generalized CM: true (dim 2, depth 0, field Q)");
    let o = run(&["check-gcm", "--field", "gf:2", &data("j1.ideal")]);
    assert_eq!(stdout(&o), "generalized CM: true (dim 2, depth 1, field GF(2))");
}

#[test]
fn k_index_of_the_frobenius_image() {
    let o = run(&["k-index", &data("frob_j1.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5");
    assert_eq!(stdout(&run(&["k-index", &data("j1.ideal")])), "1");
    assert_eq!(stdout(&run(&["k-index", "--cap", "4", &data("frob_j1.ideal")])), "above_cap");
}

#[test]
fn oracle_compare_random() {
    let o = run(&["oracle-compare", "random", "--seed", "3", "--count", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "30/30 degreewise matches");
}

#[test]
fn both_dimension_paths_agree() {
    let o = run(&["check-dim2", &data("i1.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dimension-2 characterization: true"));
    let o = run(&["check-dim3", &data("i2.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("homological generalized CM: true"));
    // Wrong dimension for the test is an input error.
    assert_eq!(run(&["check-dim3", &data("j1.ideal")]).status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(run(&["analyze", "/nonexistent/file.ideal"]).status.code(), Some(2));
    let bad = temp_file("bad.ideal", "ring n=2\ngens\nx1*x3\n");
    let o = run(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["check-gcm", "--field", "gf:6", &data("j1.ideal")]).status.code(), Some(2));
    assert_eq!(
        run(&["frobenius", "--exps", "1,0,1,1", &data("j1.ideal")]).status.code(),
        Some(2)
    );
}

#[test]
fn analyze_json_is_deterministic_across_thread_counts() {
    for file in ["i1.ideal", "i2.ideal", "rp2.ideal"] {
        let one = run(&["analyze", "--json", "--parallel", "1", &data(file)]);
        let four = run(&["analyze", "--json", "--parallel", "4", &data(file)]);
        assert_eq!(one.status.code(), Some(0), "{file}");
        assert_eq!(one.stdout, four.stdout, "{file}");
        let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
        assert!(v["gcm"].is_boolean());
    }
}

#[test]
fn analyze_reports_asserts() {
    let o = run(&["analyze", "--json", &data("j1.ideal")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"]["assert:gcm"], "consistent");
    assert_eq!(v["checks"]["assert:cm"], "consistent");
    assert_eq!(v["k_index"], 1);
}

#[test]
fn field_changes_rp2_depth() {
    let q = run(&["check-gcm", &data("rp2.ideal")]);
    let gf2 = run(&["check-gcm", "--field", "gf:2", &data("rp2.ideal")]);
    assert!(stdout(&q).contains("depth 3, field Q"));
    assert!(stdout(&gf2).contains("depth 2, field GF(2)"));
}

#[test]
fn frobenius_prints_a_parseable_ideal() {
    let o = run(&["frobenius", "--exps", "2,2,2,2", &data("j1.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("ring n=4"));
    assert!(out.contains("x1^2*x3^2"));
    let again = temp_file("frob.ideal", &out);
    assert_eq!(stdout(&run(&["k-index", &again])), "5");
}

#[test]
fn search_finds_i1_with_two_tuples() {
    let o = run(&["search", "--bound", "2", "--tuples", "2", &data("j1.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let text = std::fs::read_to_string(data("i1.ideal")).unwrap();
    let i1 = moncoh::io::parse_ideal(&text).unwrap().ideal.to_string();
    assert!(out.lines().any(|l| l.trim() == i1), "{out}");
}

#[test]
fn hilbert_and_radical_compare_run() {
    let o = run(&["hilbert", &data("j1.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("H^"));
    let o = run(&["radical-compare", &data("i1.ideal")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("generalized CM: true (radical true)"));
}

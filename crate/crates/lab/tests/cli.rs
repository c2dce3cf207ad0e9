use std::path::PathBuf;
use std::process::{Command, Output};

fn lstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lstar"))
        .args(args)
        .env_remove("LSTAR_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

#[test]
fn eval_prints_value() {
    let o = lstar(&["eval", "double(add(C1,double(double(C1))))"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "10");
}

#[test]
fn decide_literal_localization_is_false() {
    let psi0 = lstar::systems::localized_mult_totality(0, lstar::systems::Localization::Literal);
    let o = lstar(&["decide", &lstar::lang::print_formula(&psi0)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn check_golden_tautology() {
    let o = lstar(&["check", &data("tautology.proof")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Valid");
    let o = lstar(&["check", &data("tautology.proof"), "--basis", &data("tiny.basis"), "--level", "rank0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lstar(&["eval", "add(C1"]).status.code(), Some(2));
    assert_eq!(lstar(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lstar(&["prove", "C0 = C0", "--level", "rank9"]).status.code(), Some(2));
    let o = lstar(&["classify", "~(A x. x = x)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("prenex"));
}

#[test]
fn classify_and_prenex() {
    let o = lstar(&["classify", "A x. A y. E z <= add(x,y). sub(z,x) = y"]);
    assert_eq!(stdout(&o).trim(), "Pi(1)");
    let o = lstar(&["prenex", "~(A x. x = x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "E x. ~(x = x)");
}

#[test]
fn encode_and_godel() {
    assert_eq!(stdout(&lstar(&["encode", "11"])).trim(), "C1 + double(C1 + double(double(C1)))");
    let o = lstar(&["--format", "structured", "godel", "C0 = C0"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let f = lstar::lang::parse_formula("C0 = C0").unwrap();
    use lstar::lang::Godel;
    assert_eq!(v["godel"], f.godel_number().to_string());
}

#[test]
fn prove_check_cut_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("psi.proof");
    let p2 = dir.path().join("impl.proof");
    let out = dir.path().join("phi.proof");
    let psi = "C0 = C0 | ~(C0 = C0)";
    let o = lstar(&["prove", psi, "--out", p1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let imp = format!("({psi}) -> ~~({psi})");
    assert_eq!(lstar(&["prove", &imp, "--out", p2.to_str().unwrap()]).status.code(), Some(0));
    let o = lstar(&["cut", p1.to_str().unwrap(), p2.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(lstar(&["check", out.to_str().unwrap()]).status.code(), Some(0));
    let o = lstar(&["check", out.to_str().unwrap(), "--level", "none"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("Invalid"));
}

#[test]
fn prove_reports_budget_exhaustion() {
    let o = lstar(&["prove", "C0 = C1", "--budget", "50"]);
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_lstar"))
        .args(["--format", "structured", "prove", "C0 = C1"])
        .env("LSTAR_BUDGET", "40")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["budget"], 40);
}

#[test]
fn system_commands() {
    let o = lstar(&["system", "classify", "--basis", "relational-arith", "--budget", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("relational-arith at none: Type-"));

    let o = lstar(&["system", "selfref", "--basis", "relational-arith", "--level", "rank0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fixed point: true"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.basis");
    std::fs::write(&bad, "C0 = C1\n~(C0 = C1)\n").unwrap();
    let rec = dir.path().join("run.json");
    let o = lstar(&[
        "system", "consearch", "--basis", bad.to_str().unwrap(), "--mode", "level:1", "--budget", "10000",
        "--out", rec.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(dir.path().join("witness-0.proof").exists());
    assert!(dir.path().join("witness-1.proof").exists());
    let o = lstar(&["system", "report", rec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("refutation-found"));
    let w = dir.path().join("witness-1.proof");
    let o = lstar(&["check", w.to_str().unwrap(), "--basis", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let o = lstar(&["system", "consearch", "--basis", "relational-arith", "--budget", "3000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no-refutation-found"));
}

#[test]
fn bench_and_gen() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench.json");
    let o = lstar(&["bench", "chain", "--n-max", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report = lstar_lab::bench::BenchReport::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.rows.len(), 4);
    assert!(report.all_valid());

    let a = stdout(&lstar(&["gen", "--count", "5", "--seed", "9"]));
    let b = stdout(&lstar(&["gen", "--count", "5", "--seed", "9"]));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 5);
    for line in a.lines() {
        lstar::lang::parse_formula(line).unwrap();
    }
}

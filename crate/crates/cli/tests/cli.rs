use std::path::PathBuf;
use std::process::{Command, Output};

fn inputs(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../inputs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-workbench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ca1_preset_prints_equations() {
    let o = run(&["verify-example", "cA1", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("x*y - u^2 - t1*z^3"), "{s}");
    assert!(s.contains("z*u"), "{s}");
    assert!(s.contains("cA1: PASS"));
}

#[test]
fn p2_p114_preset() {
    let o = run(&["verify-example", "p2-p114"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for needle in [
        "conv{(-1,-1),(0,1),(4,3)}",
        "ambient weights (1,1,1,2)",
        "a*x^2 + b*y + c*z0*z1",
        "monomial: x*y",
        "fiber [0:1:-1]",
        "fiber [1:0:-1]",
    ] {
        assert!(s.contains(needle), "missing {needle:?} in {s}");
    }
}

#[test]
fn remaining_presets_pass() {
    for name in ["hexagon", "toy-plane"] {
        let o = run(&["verify-example", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn unknown_preset_is_malformed() {
    assert_eq!(run(&["verify-example", "nope"]).status.code(), Some(2));
}

#[test]
fn origin_in_q_fails_validation() {
    let o = run(&["validate-datum", &inputs("origin_in_q.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(ii) failed: 0 ∈ Q"));
}

#[test]
fn malformed_and_missing_inputs_exit_2() {
    assert_eq!(
        run(&["validate-datum", &inputs("malformed.json")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["validate-datum", &inputs("does_not_exist.json")])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(
        run(&["tilde", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn equations_with_aliases() {
    let o = run(&[
        "equations",
        &inputs("ca1.json"),
        "--alias",
        &inputs("ca1_aliases.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("binomial: x*y - u^2"));
    assert!(s.contains("trinomial: x*y - u^2 - t1*z^3"));
    assert!(s.contains("monomial: z*u"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "family", &inputs("p2_p114.json")];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["trinomial"], "a*x^2 + b*y + c*z0*z1");
    assert_eq!(v["weights"], serde_json::json!([1, 2, 1, 1]));
}

#[test]
fn mutate_and_fibers() {
    let o = run(&["--format", "json", "mutate", &inputs("p2_p114.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["P_prime"]["vertices"],
        serde_json::json!([[-1, -1], [0, 1], [4, 3]])
    );

    let o = run(&["fiber", &inputs("p2_p114.json"), "--point", "0:2:-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("trinomial: y - z0*z1"));
    assert_eq!(
        run(&["fiber", &inputs("p2_p114.json"), "--point", "0:1:0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["fiber", &inputs("p2_p114.json"), "--point", "1:x:0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn hilbert_basis_of_ca1_dual() {
    let o = run(&[
        "--format",
        "json",
        "hilbert-basis",
        &inputs("ca1_dual_cone.json"),
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["generators"],
        serde_json::json!([[-1, 1, 0], [0, 0, 1], [0, 1, 0], [1, 1, 0]])
    );
    assert_eq!(v["complete"], true);
}

#[test]
fn polarize_and_oracle() {
    let o = run(&["--format", "json", "polarize", &inputs("p2.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["divisor_class"], "Cartier");
    let o = run(&["oracle", &inputs("ca1.json"), "--bound", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failures"));
}

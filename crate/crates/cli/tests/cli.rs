use std::fs;
use std::process::{Command, Output};

fn qsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsym"))
        .args(args)
        .env_remove("QSYM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn info_reports_parameters() {
    let o = qsym(&["info", "--graph", "petersen"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("srg(10,3,0,1)"));

    let o = qsym(&["info", "--graph", "k4"]);
    assert!(stdout(&o).contains("not λ=0,μ=1"));
    assert!(stdout(&o).contains("witness (1,2)"));
}

#[test]
fn missing_file_fails() {
    let o = qsym(&["info", "--file", "definitely-missing.txt"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("definitely-missing.txt"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    fs::write(&path, "3 2\n1 2\n2 9\n").unwrap();
    let o = qsym(&["info", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn file_and_builtin_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.txt");
    fs::write(&path, "# a pentagon\n5 5\n1 2\n2 3\n3 4\n4 5\n1 5\n").unwrap();
    let from_file = qsym(&["aut", "--file", path.to_str().unwrap()]);
    let builtin = qsym(&["aut", "--graph", "c5"]);
    assert_eq!(stdout(&from_file), stdout(&builtin));
    assert!(stdout(&builtin).starts_with("order 10\n"));
}

#[test]
fn aut_orders() {
    assert!(stdout(&qsym(&["aut", "--graph", "petersen"])).starts_with("order 120\n"));
    let o = qsym(&["aut", "--graph", "hoffman-singleton"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn conditions_exit_status() {
    assert_eq!(
        qsym(&["conditions", "--graph", "petersen"]).status.code(),
        Some(0)
    );
    assert_eq!(
        qsym(&["conditions", "--graph", "c5"]).status.code(),
        Some(0)
    );
    for g in ["k4", "empty4", "k33", "petersen-complement"] {
        assert_eq!(
            qsym(&["conditions", "--graph", g]).status.code(),
            Some(2),
            "{g}"
        );
    }
}

#[test]
fn prove_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("p.json");
    let cert = cert.to_str().unwrap();
    let o = qsym(&["prove", "--graph", "petersen", "--out", cert]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verified"));
    let o = qsym(&[
        "verify", "--graph", "petersen", cert, "--fuzz", "20", "--seed", "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("0 failures"));

    let o = qsym(&["verify", "--graph", "c5", cert]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("digest"));
}

#[test]
fn proofs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let a_path = a.to_str().unwrap();
    assert_eq!(
        qsym(&["prove", "--graph", "c5", "--out", a_path])
            .status
            .code(),
        Some(0)
    );
    let status = Command::new(env!("CARGO_BIN_EXE_qsym"))
        .args(["prove", "--graph", "c5", "--out", b.to_str().unwrap()])
        .env("QSYM_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn qa5_only() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("q.json");
    let cert = cert.to_str().unwrap();
    let o = qsym(&["prove", "--graph", "petersen", "--qa5-only", "--out", cert]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("900 Commutes"));
    assert_eq!(
        qsym(&["verify", "--graph", "petersen", cert]).status.code(),
        Some(0)
    );
}

#[test]
fn tampered_certificate_names_the_step() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let cert = path.to_str().unwrap();
    assert_eq!(
        qsym(&["prove", "--graph", "c5", "--out", cert])
            .status
            .code(),
        Some(0)
    );
    let mut json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    json["steps"][40]["rhs"] = serde_json::Value::String("u[1,1]".into());
    fs::write(&path, json.to_string()).unwrap();
    let o = qsym(&["verify", "--graph", "c5", cert]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("step "), "{}", stderr(&o));

    fs::write(&path, "{ not json").unwrap();
    assert_eq!(
        qsym(&["verify", "--graph", "c5", cert]).status.code(),
        Some(3)
    );
}

#[test]
fn refusals() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.json");
    let o = qsym(&["prove", "--graph", "k4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ConditionsNotMet"));
    assert!(stderr(&o).contains("witness"));
    assert!(!out.exists());

    let o = qsym(&["prove", "--graph", "hoffman-singleton"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("UnsupportedDegree k=7"));
}

#[test]
fn reduce_prints_normal_form() {
    let o = qsym(&["reduce", "--graph", "petersen", "u[1,1]u[1,2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
    let o = qsym(&["reduce", "--graph", "petersen", "u[1,1]u[1,1] + 2*u[3,3]"]);
    assert_eq!(stdout(&o), "u[1,1] + 2*u[3,3]\n");
    assert_eq!(
        qsym(&["reduce", "--graph", "petersen", "u[1,"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        qsym(&["reduce", "--graph", "c5", "u[6,1]"]).status.code(),
        Some(3)
    );
}

#[test]
fn usage_errors() {
    assert_eq!(qsym(&[]).status.code(), Some(3));
    assert_eq!(qsym(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(
        qsym(&["info", "--graph", "petersen", "--bogus"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        qsym(&["info", "--graph", "petersen", "--file", "x"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        qsym(&["info", "--graph", "dodecahedron"]).status.code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_qsym"))
        .args(["info", "--graph", "c5"])
        .env("QSYM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

use std::process::{Command, Output};

fn gapvec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapvec"))
        .args(args)
        .env_remove("GAPVEC_SEED")
        .output()
        .expect("run gapvec")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_json_has_stable_keys_in_order() {
    let o = gapvec(&["compute", "--variety", "segre:a=1,b=2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let keys = [
        "\"variety\"",
        "\"m\"",
        "\"d\"",
        "\"c\"",
        "\"w\"",
        "\"mode\"",
        "\"prime\"",
        "\"probabilistic\"",
        "\"seed\"",
        "\"trials\"",
        "\"dim_R2\"",
        "\"epsilon\"",
        "\"gap\"",
        "\"faces\"",
        "\"checks\"",
    ];
    let positions: Vec<usize> = keys
        .iter()
        .map(|k| text.find(k).unwrap_or_else(|| panic!("{k}")))
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["gap"], serde_json::json!([0, 0]));
    assert_eq!(v["mode"], "fp");
    assert_eq!(v["faces"][0]["dim_P_formula"], v["faces"][0]["dim_B"]);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn qq_mode_is_not_probabilistic() {
    let o = gapvec(&["compute", "--variety", "veronese:n=2,d=2", "--mode", "qq"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mode"], "qq");
    assert_eq!(v["prime"], serde_json::Value::Null);
    assert_eq!(v["probabilistic"], false);
}

#[test]
fn seed_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gapvec"))
        .args(["compute", "--variety", "veronese:n=2,d=2"])
        .env("GAPVEC_SEED", "41")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 41);
}

#[test]
fn csv_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("faces.csv");
    let o = gapvec(&[
        "compute",
        "--variety",
        "delpezzo:k=6",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(
        text,
        "j,gap,dim_sigma,dim_P_formula,dim_B,secant_nondefective,eps_Y,dim_IY2\n1,1,6,7,7,true,0,0\n"
    );
}

#[test]
fn verify_prints_table_and_class() {
    let o = gapvec(&["verify", "--variety", "veronese:n=2,d=3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS  two_route_identity"));
    assert!(text.contains("class: AlmostMinimalOrCubicHypersurfaceClass"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn toric_file_spec() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scroll.txt");
    std::fs::write(&path, "0 1 0 1 2\n0 0 1 1 1\n3 2 2 1 0\n").unwrap();
    let spec = format!("toric:file={}", path.display());
    let o = gapvec(&["compute", "--variety", &spec]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["epsilon"], 0);
    assert_eq!(v["c"], 2);
}

#[test]
fn variety_file_spec() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cubic.txt");
    std::fs::write(
        &path,
        "# twisted cubic\nparams 2\ndegree 3\nt0^3\nt0^2*t1\nt0*t1^2\nt1^3\n",
    )
    .unwrap();
    let spec = format!("file:{}", path.display());
    let o = gapvec(&["compute", "--variety", &spec]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gap"], serde_json::json!([0, 0]));
}

#[test]
fn sweep_rows() {
    let o = gapvec(&["sweep", "veronese:n=2,d=2..3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n,d,m,c,epsilon,gap,conjecture_j_bar,conjecture_match,status\n\
         2,2,5,3,0,0;0;0,3,true,ok\n\
         2,3,9,7,1,0;0;0;0;0;0;1,6,true,ok\n"
    );
}

#[test]
fn sweep_is_identical_in_parallel() {
    let a = gapvec(&["sweep", "veronese:n=1..2,d=2..4"]);
    let b = gapvec(&["sweep", "veronese:n=1..2,d=2..4", "--threads", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(
        gapvec(&["sweep", "veronese:n=2,d=4..2"]).status.code(),
        Some(1)
    );
    assert_eq!(
        gapvec(&["compute", "--variety", "bogus"]).status.code(),
        Some(1)
    );
    assert_eq!(gapvec(&["compute"]).status.code(), Some(1));
    assert_eq!(
        gapvec(&["compute", "--variety", "veronese:n=2,d=2", "--trials", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        gapvec(&["compute", "--variety", "veronese:n=2,d=1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        gapvec(&["compute", "--variety", "file:/nonexistent/x.txt"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(gapvec(&["--help"]).status.code(), Some(0));
}

#[test]
fn inhomogeneous_file_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "params 2\ndegree 2\nt0^2\nt0*t1\nt1\n").unwrap();
    let spec = format!("file:{}", path.display());
    let o = gapvec(&["compute", "--variety", &spec]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

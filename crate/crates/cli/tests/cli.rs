use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn segre(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segre")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("segre-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn euler_reports() {
    let o = segre(&["euler", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("c=27, signature=3, class=15⟨1⟩+12⟨−1⟩"));
    let o = segre(&["euler", "--n", "3"]);
    assert!(stdout(&o).contains("c=2875, signature=15, class=1445⟨1⟩+1430⟨−1⟩"));
    let o = segre(&["euler", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn chern_and_castelnuovo() {
    let o = segre(&["chern", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("c=1192221463356102320754899") && out.contains("digits=25"));
    let o = segre(&["castelnuovo", "--n", "4"]);
    assert!(stdout(&o).contains("count=6") && stdout(&o).contains("porteous_identity=true"));
    assert_eq!(segre(&["castelnuovo", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn local_index_commands() {
    let o = segre(&["local-index", "--input", &fixture("fermat_rational_line.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("det=81") && stdout(&o).contains("class=⟨1⟩"));

    let o = segre(&["local-index", "--input", &fixture("quintic_product_line.json")]);
    assert!(stdout(&o).contains("class=⟨−1⟩"));

    let off = write_temp(
        "off.json",
        r#"{"n":2,"F":{"vars":["a","b","c","d"],"terms":[{"exps":[3,0,0,0],"coeff":"1"},{"exps":[0,0,0,3],"coeff":"1"}]},
            "line":{"span":[["1","0","0","0"],["0","1","0","0"]]}}"#,
    );
    let o = segre(&["local-index", "--input", &off]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not on hypersurface"));

    // P₁ = P₂ = u², so the index determinant vanishes.
    let degenerate = write_temp(
        "degenerate.json",
        r#"{"n":2,"F":{"vars":["u","v","y1","y2"],"terms":[
              {"exps":[2,0,1,0],"coeff":"1"},{"exps":[2,0,0,1],"coeff":"1"}]},
            "line":{"span":[["1","0","0","0"],["0","1","0","0"]]}}"#,
    );
    let o = segre(&["local-index", "--input", &degenerate]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-simple line"));

    let bad = write_temp("bad.json", r#"{"n":2}"#);
    assert_eq!(segre(&["local-index", "--input", &bad]).status.code(), Some(2));
}

#[test]
fn local_index_over_a_prime_field() {
    let o = segre(&["local-index", "--input", &fixture("fermat_rational_line.json"), "--ground", "fp:7"]);
    assert_eq!(o.status.code(), Some(0));
    // 81 ≡ 4 (mod 7), a square.
    assert!(stdout(&o).contains("det=4") && stdout(&o).contains("square_class=1"));
}

#[test]
fn segre_index_agrees_with_local_index() {
    for f in ["quintic_product_line.json", "fermat_rational_line.json"] {
        let o = segre(&["segre-index", "--input", &fixture(f)]);
        assert_eq!(o.status.code(), Some(0), "{f}");
        assert!(stdout(&o).contains("equal=true"));
    }
}

#[test]
fn sum_indices_catalogs() {
    let path = fixture("fermat_cubic_lines.json");
    let o = segre(&["sum-indices", "--input", &path, "--expect-euler"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank=27, sum=15⟨1⟩+12⟨−1⟩"));
    assert!(stdout(&o).contains("matches=true"));

    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["lines"].as_array_mut().unwrap().remove(1);
    let short = write_temp("short.json", &doc.to_string());
    let o = segre(&["sum-indices", "--input", &short, "--expect-euler"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("rank=25"));

    doc["lines"] = serde_json::json!([]);
    let empty = write_temp("empty.json", &doc.to_string());
    let o = segre(&["sum-indices", "--input", &empty, "--expect-euler"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank=0") && !stdout(&o).contains("matches"));
}

#[test]
fn verify_modes() {
    let o = segre(&["verify", "--mode", "conic-identity", "--n", "4", "--trials", "50", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("50/50 passed"));

    let o = segre(&["verify", "--mode", "symmetric-family", "--n", "5", "--a", "1,2,3,4,5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4/4 passed"));

    let o = segre(&["verify", "--mode", "segre-equals-local", "--n", "3", "--trials", "25", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("25/25 passed"));

    let o = segre(&["verify", "--mode", "conic-identity", "--n", "3", "--trials", "20", "--field", "fp:101"]);
    assert!(stdout(&o).contains("20/20 passed"));

    assert_eq!(segre(&["verify", "--mode", "conic-identity", "--n", "2"]).status.code(), Some(2));
    assert_eq!(segre(&["verify", "--mode", "conic-identity", "--field", "fp:10"]).status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify", "--mode", "segre-equals-local", "--trials", "8", "--seed", "7", "--format", "json"];
    let a = Command::new(env!("CARGO_BIN_EXE_segre")).args(args).env("SEGRE_MAX_THREADS", "1").output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_segre")).args(args).env("SEGRE_MAX_THREADS", "4").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], 8);
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn csv_output() {
    let o = segre(&["verify", "--mode", "conic-identity", "--n", "3", "--trials", "3", "--format", "csv"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("trial,seed,det_vb,A_zero,result"));
    assert_eq!(lines.count(), 3);
    let o = segre(&["euler", "--n", "2", "--format", "csv"]);
    assert!(stdout(&o).contains("class,15⟨1⟩+12⟨−1⟩"));
}

#[test]
fn model_command_on_clebsch_data() {
    let o = segre(&["model", "--input", &fixture("clebsch_sextic.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["nonzero"], true);
}

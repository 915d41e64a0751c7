use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pvspace::json::{grp2_to_json, herm_group_to_json, herm_to_json};
use pvspace::*;
use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pvspace"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

struct Dir(PathBuf);

impl Dir {
    fn new(tag: &str) -> Self {
        let p = std::env::temp_dir().join(format!("pvspace-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&p).unwrap();
        Dir(p)
    }

    fn write(&self, name: &str, v: &Value) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gaussian() -> Alg<Q> {
    let c = |n: i64| Q::from_integer(n.into());
    EtaleAlgebra::make_extension(&Poly::from_i64(&[1, 0, 1]), &[vec![c(0), c(-1)]]).unwrap()
}

#[test]
fn invariant_of_w_over_f7() {
    let d = Dir::new("inv");
    let w = d.path("w.json");
    let o = run(&["rep", "--case", "1", "--fiber", "trivial", "--beta", "1,1", "--field", "7", "-o", s(&w)]);
    assert!(o.status.success());
    let o = run(&["invariant", s(&w)]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["F"], json!([0, 1, 0]));
    assert_eq!(v["delta"], json!(1));
    assert_eq!(v["semistable"], json!(true));
    assert_eq!(v["label"], json!("trivial"));
    let again = run(&["invariant", s(&w)]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn rep_trivial_case3_is_w() {
    let o = run(&["rep", "--case", "3", "--fiber", "trivial", "--beta", "1,1,1"]);
    assert!(o.status.success());
    let want = herm_to_json(&case3::make_w3(&gaussian()).unwrap());
    assert_eq!(stdout_json(&o), want);
}

#[test]
fn rep_case2_quadratic() {
    let o = run(&["rep", "--case", "2", "--fiber", "quadratic", "--f", "1,0,1", "--beta", "0,1"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["x111"], json!("0/1"));
    assert_eq!(v["x211"], json!(["2/1", "0/1", "0/1"]));
    assert_eq!(v["x222"], json!("-2/1"));
    let d = Dir::new("rep2");
    let p = d.write("x.json", &v);
    let inv = stdout_json(&run(&["invariant", s(&p)]));
    assert_eq!(inv["delta"], json!("-64/1"));
    assert_eq!(inv["F"], Value::Null);
}

#[test]
fn census_case2_q3() {
    let o = run(&["census", "--case", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["orbit_count"], json!(2));
    assert_eq!(v["matches"], json!(true));
}

#[test]
fn census_case3_needs_opt_in() {
    let o = run(&["census", "--case", "3", "--q", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout_json(&o)["error"]["kind"].is_string());
}

#[test]
fn act_then_inverse_is_byte_identical() {
    let d = Dir::new("act");
    let x = d.path("x.json");
    assert!(run(&["rep", "--case", "3", "--fiber", "kone", "-o", s(&x)]).status.success());
    let k1 = gaussian();
    let c = |a: i64, b: i64| AlgElem::from_i64(&k1, &[a, b]);
    let g1 = Matrix::from_rows(vec![
        vec![c(1, 2), c(0, 1), c(3, 0)],
        vec![c(0, 0), c(1, 0), c(-1, 1)],
        vec![c(2, 0), c(0, 0), c(1, -1)],
    ]);
    let qq = |n: i64| Q::from_integer(n.into());
    let g2 = Matrix::from_rows(vec![vec![qq(2), qq(1)], vec![qq(1), qq(1)]]);
    let g = case3::GrpElt3::new(&k1, g1, g2).unwrap();
    let gp = d.write("g.json", &herm_group_to_json(&g));
    let y = d.path("y.json");
    let z = d.path("z.json");
    assert!(run(&["act", s(&gp), s(&x), "-o", s(&y)]).status.success());
    assert_ne!(std::fs::read(&y).unwrap(), std::fs::read(&x).unwrap());
    assert!(run(&["act", s(&gp), s(&y), "--inverse", "-o", s(&z)]).status.success());
    assert_eq!(std::fs::read(&z).unwrap(), std::fs::read(&x).unwrap());
}

#[test]
fn stab_check_on_stabilizers() {
    let d = Dir::new("stab");
    let k1 = gaussian();
    let t = AlgElem::from_i64(&k1, &[1, 1]);
    let one = AlgElem::one(&k1);

    let w1 = d.write("w1.json", &herm_to_json(&case1::make_w1(&k1).unwrap()));
    let g = d.write("g1.json", &herm_group_to_json(&case1::stab1_w(&k1, &t, &one).unwrap()));
    assert_eq!(stdout_json(&run(&["stab-check", s(&g), s(&w1)])), json!({"fixes": true}));

    let w3 = d.write("w3.json", &herm_to_json(&case3::make_w3(&k1).unwrap()));
    let c = AlgElem::from_i64(&k1, &[3, 0]);
    let g = d.write("g3.json", &herm_group_to_json(&case3::stab3_w(&k1, [&c, &c, &c]).unwrap()));
    assert_eq!(stdout_json(&run(&["stab-check", s(&g), s(&w3)])), json!({"fixes": true}));
    let (tau1, _) = case3::make_taus(&k1).unwrap();
    let g = d.write("tau.json", &herm_group_to_json(&tau1));
    assert_eq!(stdout_json(&run(&["stab-check", s(&g), s(&w3)])), json!({"fixes": true}));

    let k3 = EtaleAlgebra::<Q>::make_extension(&Poly::from_i64(&[-2, 0, 0, 1]), &[]).unwrap();
    let w2 = d.write("w2.json", &pvspace::json::v2_to_json(&case2::make_w2(&k3).unwrap()));
    let t3 = AlgElem::from_i64(&k3, &[1, 1, 0]);
    let g = d.write("g2.json", &grp2_to_json(&case2::stab2_w(&k3, &t3, &AlgElem::one(&k3)).unwrap()));
    assert_eq!(stdout_json(&run(&["stab-check", s(&g), s(&w2)])), json!({"fixes": true}));
    let g = d.write("tau2.json", &grp2_to_json(&case2::GrpElt2::tau(&k3)));
    assert_eq!(stdout_json(&run(&["stab-check", s(&g), s(&w2)])), json!({"fixes": true}));

    let x = d.path("x.json");
    assert!(run(&["rep", "--case", "1", "--fiber", "quadratic", "--f", "1,0,1", "-o", s(&x)]).status.success());
    let g = d.write("g1b.json", &herm_group_to_json(&case1::stab1_w(&k1, &t, &one).unwrap()));
    assert_eq!(stdout_json(&run(&["stab-check", s(&g), s(&x)])), json!({"fixes": false}));
}

#[test]
fn malformed_input_exits_one() {
    let d = Dir::new("bad");
    let p = d.path("bad.json");
    std::fs::write(&p, "{not json").unwrap();
    let o = run(&["invariant", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout_json(&o)["error"]["kind"].is_string());

    let o = run(&["invariant", s(&d.path("missing.json"))]);
    assert_eq!(o.status.code(), Some(1));

    let p = d.write("wrong.json", &json!({"case": 9}));
    assert_eq!(run(&["invariant", s(&p)]).status.code(), Some(1));
}

#[test]
fn tower_mismatch_is_a_validation_error() {
    let d = Dir::new("tower");
    let k1 = gaussian();
    let other = EtaleAlgebra::<Q>::make_extension(&Poly::from_i64(&[-2, 0, 1]), &[vec![
        Q::from_integer(0.into()),
        Q::from_integer((-1).into()),
    ]])
    .unwrap();
    let x = d.write("x.json", &herm_to_json(&case1::make_w1(&k1).unwrap()));
    let g = d.write("g.json", &herm_group_to_json(&case1::GrpElt1::identity(&other)));
    let o = run(&["act", s(&g), s(&x)]);
    assert_eq!(o.status.code(), Some(1));
}

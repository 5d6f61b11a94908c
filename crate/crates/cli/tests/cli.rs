use std::path::PathBuf;
use std::process::{Command, Output};

fn veritool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_veritool")).args(args).output().expect("spawn veritool")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("veritool-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_all_is_byte_identical() {
    let (a, b) = (scratch("all-a.json"), scratch("all-b.json"));
    for p in [&a, &b] {
        let o = veritool(&["verify", "all", "--seed", "42", "--quiet", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 21);
}

#[test]
fn sequential_matches_parallel() {
    let args = ["verify", "moduli", "--t", "2,1,3,5", "--alphas", "5", "--quiet", "--json"];
    let (a, b) = (scratch("par.json"), scratch("seq.json"));
    assert!(veritool(&[&args[..], &[a.to_str().unwrap()]].concat()).status.success());
    assert!(veritool(&[&args[..], &[b.to_str().unwrap(), "--sequential"]].concat()).status.success());
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn surface_writes_generators() {
    let stem = scratch("surf");
    let o = veritool(&["surface", "--t", "2,1,3,5", "--out", stem.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("HF(0..4) = [1, 7, 28, 63, 112]"));
    let gens = std::fs::read_to_string(stem.with_extension("gens")).unwrap();
    assert_eq!(gens.lines().count(), 21);
    let export: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(stem.with_extension("json")).unwrap()).unwrap();
    assert_eq!(export["generators"].as_array().unwrap().len(), 21);
}

#[test]
fn surface_betti_over_f31() {
    let json = scratch("betti.json");
    let o = veritool(&["surface", "--t", "1,1,1,1", "--betti", "--quiet", "--json", json.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["betti"]["coeff"], "fp:31");
    assert_eq!(v["betti"]["matches_expected"], true);
}

#[test]
fn degenerate_surface_exits_one() {
    let o = veritool(&["surface", "--t", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn grassmann_membership() {
    assert_eq!(veritool(&["grassmann", "--t", "1,1,1,1"]).status.code(), Some(0));
    assert_eq!(veritool(&["grassmann", "--equational"]).status.code(), Some(0));
    let raw: Vec<String> = (1..=21).map(|k| ((k * k) % 11).to_string()).collect();
    let o = veritool(&["grassmann", "--raw", &raw.join(",")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fails"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(veritool(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(veritool(&["surface", "--t", "1,2"]).status.code(), Some(2));
    assert_eq!(veritool(&["grassmann"]).status.code(), Some(2));
    assert_eq!(veritool(&["surface", "--t", "1,1,1,1", "--coeff", "fp:32"]).status.code(), Some(2));
}

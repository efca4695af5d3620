use std::process::{Command, Output};

use serde_json::Value;

fn singular(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singular"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = singular(&a);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    v
}

#[test]
fn classify_example() {
    let v = json(&["classify", "--alphabet", "a<b<c<d", "--word", "bcdbda"]);
    assert_eq!(v["verdict"], "singular");
    assert_eq!(stdout(&singular(&["classify", "--alphabet", "a<b<c<d", "--word", "bcdbda"])).trim(), "singular");
    let v = json(&["classify", "--word", "bab"]);
    assert_eq!(v["verdict"], "reversible");
    assert_eq!(v["witness"]["v"], "ba");
}

#[test]
fn construct_example() {
    let o = singular(&["construct", "--parikh", "a=3,b=5,c=7"]);
    assert_eq!(stdout(&o).trim(), "acbcbcbcacbcbca");
    let v = json(&["construct", "--parikh", "a=3,b=5,c=7"]);
    assert_eq!(v["reverse"], "acbcbcacbcbcbca");
    let v = json(&["construct", "--parikh", "a=7,b=14"]);
    assert_eq!(v["word"], "abbabbbabbabbbabbabba");
}

#[test]
fn continuant_example() {
    let o = singular(&["continuant", "--kind", "semi", "--digits", "4,5,6,4,6,3"]);
    assert_eq!(stdout(&o).trim(), "6827");
    let v = json(&["continuant", "--kind", "semi", "--digits", "4,5,6,4,6,3", "--matrix"]);
    assert_eq!(v["value"], "6827");
    assert_eq!(v["matrix"]["determinant"], "6827");
}

#[test]
fn search_is_thread_independent() {
    let args = ["search", "--multiset", "3,4,4,7,8,8", "--json"];
    let one = singular(&[&args[..], &["--threads", "1"]].concat());
    let four = singular(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(v["value"], "18247");
    assert_eq!(v["unique"], false);
    assert_eq!(v["arrangements"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_is_reproducible() {
    let run = |t: &str| singular(&["verify", "--suite", "markoff", "--samples", "60", "--seed", "11", "--threads", t, "--json"]);
    let (a, b) = (run("1"), run("3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&["verify", "--suite", "ternary", "--max-total", "6"]);
    assert_eq!(v["holds"], true);
}

#[test]
fn markoff_and_window() {
    let v = json(&["markoff", "--left", "ab", "--center", "ba", "--right", "ab"]);
    assert_eq!(v["markoff"]["verdict"], "violation");
    assert_eq!(v["balance"]["balanced"], false);
    let v = json(&["markoff", "--left", "ab", "--right", "ab"]);
    assert_eq!(v["markoff"]["verdict"], "holds");
    let v = json(&["window", "--left", "ab", "--center", "ba", "--right", "ab", "--radius", "8"]);
    assert_eq!(v["verdict"], "definite_violation");
    let v = json(&["window", "--word", "acabcacabcabcacac", "--alphabet", "a<b<c"]);
    assert_eq!(v["verdict"], "no_violation_within");
}

#[test]
fn iet_commands() {
    let v = json(&["iet", "code", "--lengths", "1/3,1/4,5/12", "--point", "1/7", "--window", "-50:50"]);
    assert_eq!(v["coding"]["origin"], -50);
    assert_eq!(v["coding"]["word"].as_str().unwrap().len(), 101);
    let v = json(&["iet", "check", "--example", "--max-factor-len", "8", "--window", "4000"]);
    assert_eq!(v["h_conditions"]["h5"]["verdict"], "fails");
    assert_eq!(v["soc"]["verdict"], "holds");
    assert_eq!(v["symmetry"]["symmetric"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(singular(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(singular(&["classify", "--wrd", "ab"]).status.code(), Some(2));
    assert_eq!(singular(&["continuant", "--digits", "4,x"]).status.code(), Some(2));
    assert_eq!(singular(&["continuant", "--kind", "semi", "--digits", "1,2"]).status.code(), Some(1));
    assert_eq!(singular(&["construct", "--parikh", "a=1,b=1,c=1,d=1"]).status.code(), Some(1));
    let o = singular(&["search", "--multiset", "1,2,3", "--objective", "semi-max", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["error"].is_string());
}

#[test]
fn config_file_sets_caps() {
    let path = std::env::temp_dir().join(format!("singular-cli-test-{}.conf", std::process::id()));
    std::fs::write(&path, "search_cap = 4\n").unwrap();
    let p = path.to_str().unwrap();
    let o = singular(&["--config", p, "search", "--multiset", "2,3,4,5,6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(singular(&["--config", p, "search", "--multiset", "2,3,4,5,6", "--cap", "5"]).status.success());
    std::fs::write(&path, "nonsense = 1\n").unwrap();
    assert_eq!(singular(&["--config", p, "christoffel", "--p", "2", "--q", "5"]).status.code(), Some(2));
    std::fs::remove_file(&path).unwrap();
}

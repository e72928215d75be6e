use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_thetaknot"));
    c.env_remove("THETAKNOT_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn every_invariant_prints_a_polynomial() {
    let cases = [
        ("jones", "q^-1 + q^-3 + q^-5 - q^-9"),
        ("theta-j", "q^-1 + q^-3 + q^-5 - q^-9"),
        ("homfly", "-a^4 + a^2*z^2 + 2*a^2"),
        ("alexander", "t - 1 + t^-1"),
    ];
    for (cmd, want) in cases {
        let o = run(&[cmd, "--pd", TREFOIL]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        assert_eq!(stdout(&o).trim(), want, "{cmd}");
    }
    let h = stdout(&run(&["homfly", "--pd", TREFOIL]));
    for cmd in ["homfly-statesum", "theta-h"] {
        assert_eq!(stdout(&run(&[cmd, "--pd", TREFOIL])), h, "{cmd}");
    }
}

#[test]
fn json_schema() {
    let v = json(&["theta-j", "--pd", TREFOIL, "--format", "json"]);
    for key in ["input", "invariant", "variables", "polynomial", "timings"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["timings"].is_null());
    assert_eq!(v["variables"], serde_json::json!(["q"]));
    assert!(v.get("ledger").is_none());

    let v = json(&["theta-h", "--pd", TREFOIL, "--format", "json", "--ledger", "--timings"]);
    assert!(v["timings"]["total_ms"].is_number());
    let ledger = v["ledger"].as_array().unwrap();
    assert!(!ledger.is_empty());
    assert_eq!(ledger[0]["grading"].as_array().unwrap().len(), 2);

    let v = json(&["verify", "--pd", TREFOIL, "--format", "json"]);
    assert!(v["checks"].is_object() || v["checks"].is_array());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["jones", "--pd", "X[1,2,3]"]).status.code(), Some(1));
    assert_eq!(run(&["jones", "--gauss", "O1+U2+"]).status.code(), Some(1));
    assert_eq!(run(&["jones", "--file", "/nonexistent/diagram.pd"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["jones", "--pd", TREFOIL, "--max-crossings", "2"]).status.code(), Some(2));
    assert_eq!(run(&["theta-h", "--pd", TREFOIL, "--cut-basepoint", "99"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--pd", TREFOIL]).status.code(), Some(0));

    let dir = std::env::temp_dir().join(format!("thetaknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.csv");
    std::fs::write(&bad, "name,pd,aliases,expected_jones,expected_homfly\nwrong,U,,q,\n").unwrap();
    assert_eq!(run(&["batch", bad.to_str().unwrap()]).status.code(), Some(3));
    let malformed = dir.join("malformed.csv");
    std::fs::write(&malformed, "name,pd\nok,U\nbroken,\"X[1,2\"\n").unwrap();
    let o = run(&["batch", malformed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["batch", malformed.to_str().unwrap(), "--lenient"]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_independent_of_thread_count() {
    let pd = "X[2,5,4,1] X[5,7,6,4] X[7,8,1,6] X[8,3,10,9] X[9,10,12,11] X[11,12,3,2]";
    for cmd in ["jones", "theta-j", "homfly-statesum", "theta-h"] {
        let base = stdout(&run(&[cmd, "--pd", pd, "--threads", "1", "--ledger"]));
        for t in ["2", "7"] {
            assert_eq!(stdout(&run(&[cmd, "--pd", pd, "--threads", t, "--ledger"])), base, "{cmd} with {t} threads");
        }
        let env = bin().args([cmd, "--pd", pd, "--ledger"]).env("THETAKNOT_THREADS", "3").output().unwrap();
        assert_eq!(stdout(&env), base);
    }
}

#[test]
fn reads_standard_input() {
    let mut child = bin().args(["jones", "--file", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(TREFOIL.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), stdout(&run(&["jones", "--pd", TREFOIL])));
}

#[test]
fn gauss_and_pd_agree() {
    let g = stdout(&run(&["homfly", "--gauss", "O1-U2-O3-U1-O2-U3-"]));
    assert_eq!(g, stdout(&run(&["homfly", "--pd", TREFOIL])));
}

#[test]
fn unsigned_variant_uses_half_powers() {
    let o = run(&["theta-j", "--pd", TREFOIL, "--unsigned"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "s^-5 + 9*s^-9 + 13*s^-13 + 6*s^-17 + s^-21");
    // even exponents collapse back to q
    assert_eq!(stdout(&run(&["theta-j", "--pd", "U", "--unsigned"])).trim(), "q + q^-1");
}

#[test]
fn surface_dump_lists_every_state() {
    let v = json(&["theta-j", "--pd", TREFOIL, "--dump-surface", "--format", "json"]);
    assert_eq!(v["surface"].as_array().unwrap().len(), 8);
}

#[test]
fn bundled_corpus_passes() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/corpus.csv");
    let o = run(&["batch", path]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"));
}

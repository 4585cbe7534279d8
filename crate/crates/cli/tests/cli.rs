use std::path::Path;
use std::process::Command;

use closure_cli::scan_io::{grid_to_string, read_grid};
use closure_core::chain::Word;
use closure_core::search::scan_defect;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_closure-lab");

struct Run {
    code: i32,
    stdout: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(BIN).args(args).output().expect("spawn closure-lab");
    Run { code: out.status.code().expect("exit code"), stdout: String::from_utf8(out.stdout).expect("utf8") }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", r.stdout))
}

/// Report with the fields that legitimately vary between runs removed.
fn stable(mut v: Value) -> Value {
    let o = v.as_object_mut().expect("object");
    o.remove("timing_ms");
    if let Some(i) = o.get_mut("inputs").and_then(Value::as_object_mut) {
        i.remove("workers");
    }
    v
}

fn approx_eq(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            (x - y).abs() <= 1e-12 * (1.0 + x.abs().max(y.abs()))
        }
        (Value::Array(x), Value::Array(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| approx_eq(p, q)),
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len() && x.iter().all(|(k, p)| y.get(k).is_some_and(|q| approx_eq(p, q)))
        }
        _ => a == b,
    }
}

fn all_pass(v: &Value) -> bool {
    v["residuals"].as_array().unwrap().iter().all(|r| r["pass"] == true) && v.get("error").is_none()
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).expect("golden file")
}

#[test]
fn exit_codes_follow_residuals() {
    let cases: &[(&[&str], i32)] = &[
        (&["verify", "t1", "--R", "3", "--r", "1", "--d", "0"], 0),
        (&["verify", "t1", "--R", "3", "--r", "1", "--d", "0.5"], 1),
        (&["verify", "t2", "--R", "3.5", "--r", "1", "--d", "1.5"], 0),
        (&["verify", "t4", "--R", "3", "--r", "1", "--d", "0.4"], 0),
        (&["verify", "t5", "--R", "3", "--r", "1", "--d", "0.4"], 0),
        (&["verify", "sangaku", "--R", "3", "--r", "1", "--d", "0"], 0),
        (&["verify", "t6", "--delta2", "0.01"], 0),
        (&["chain", "--R", "3", "--r", "1", "--d", "0", "--word", "cscs"], 0),
        (&["chain", "--R", "4", "--r", "1", "--d", "0", "--word", "cscs"], 1),
    ];
    for (args, want) in cases {
        let r = run(args);
        assert_eq!(r.code, *want, "{args:?}: {}", r.stdout);
        let v = json(&r);
        assert_eq!(all_pass(&v), *want == 0, "{args:?}");
    }
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["verify", "t9"][..],
        &["verify", "t1", "--R", "1", "--r", "2"],
        &["chain", "--word", "cxs"],
        &["chain", "--tol", "-1"],
        &["chain", "--workers", "0"],
        &["chain", "--bogus"],
    ] {
        assert_eq!(run(args).code, 2, "{args:?}");
    }
}

#[test]
fn invalid_config_exits_2_and_missing_config_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"R": 3, "colour": "red"}"#).unwrap();
    assert_eq!(run(&["chain", "--config", bad.to_str().unwrap()]).code, 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["chain", "--config", missing.to_str().unwrap()]).code, 3);
}

#[test]
fn unwritable_output_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("no/such/dir/out.json");
    let t = target.to_str().unwrap();
    for args in [&["verify", "t1", "--out", t][..], &["scan", "--nr", "16", "--nd", "16", "--out", t], &["render", "--out", t]] {
        let r = run(args);
        assert_eq!(r.code, 3, "{args:?}");
        assert!(json(&r)["error"].is_string());
    }
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scene.json");
    std::fs::write(&cfg, r#"{"R": 4.0, "r": 1.0, "d": 0.0, "word": "cscs", "thetas": 40}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = json(&run(&["chain", "--config", c]));
    assert_eq!(from_file["inputs"]["R"], 4.0);
    assert_eq!(from_file["inputs"]["thetas"], 40);
    assert_eq!(from_file["verdicts"]["closed"], false);
    let r = run(&["chain", "--config", c, "--R", "3"]);
    let v = json(&r);
    assert_eq!(v["inputs"]["R"], 3.0);
    assert_eq!(v["inputs"]["thetas"], 40);
    assert_eq!(v["verdicts"]["closed"], true);
    assert_eq!(r.code, 0);
}

#[test]
fn verify_report_matches_golden() {
    let r = run(&["verify", "t1", "--R", "3", "--r", "1", "--d", "0"]);
    let got = stable(json(&r));
    let want = stable(serde_json::from_str(&golden("verify_t1.json")).unwrap());
    assert!(approx_eq(&got, &want), "{got:#}");
}

#[test]
fn render_matches_golden() {
    let r = run(&["render", "--R", "3", "--r", "1", "--d", "0", "--word", "cscs"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, golden("render_cscs.svg"));
}

#[test]
fn reports_are_deterministic_across_workers() {
    let base = ["search", "--max-len", "3", "--nr", "32", "--nd", "32"];
    let one = run(&[&base[..], &["--workers", "1"]].concat());
    let eight = run(&[&base[..], &["--workers", "8"]].concat());
    assert_eq!(stable(json(&one)), stable(json(&eight)));
    let t = ["verify", "t3", "--R", "3", "--r", "1", "--d", "0.2"];
    let one = run(&[&t[..], &["--workers", "1"]].concat());
    let eight = run(&[&t[..], &["--workers", "8"]].concat());
    assert_eq!(stable(json(&one)), stable(json(&eight)));
}

#[test]
fn scan_csv_is_identical_across_workers() {
    let one = run(&["scan", "--word", "ccc", "--nr", "48", "--nd", "40", "--workers", "1"]);
    let eight = run(&["scan", "--word", "ccc", "--nr", "48", "--nd", "40", "--workers", "8"]);
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, eight.stdout);
    assert!(one.stdout.starts_with("r,d,defect\n"));
    assert_eq!(one.stdout.lines().count(), 1 + 48 * 40);
    assert!(one.stdout.contains("DEAD"));
}

#[test]
fn scan_csv_round_trips_exactly() {
    let w: Word = "cscs".parse().unwrap();
    let grid = scan_defect(&w, 40, 24).unwrap();
    let text = grid_to_string(&grid);
    let back = read_grid(text.as_bytes(), w.clone()).unwrap();
    assert_eq!(back, grid);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let r = run(&["scan", "--word", "cscs", "--nr", "40", "--nd", "24", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let from_cli = read_grid(std::fs::File::open(&path).unwrap(), w).unwrap();
    assert_eq!(from_cli, grid);
    assert_eq!(json(&r)["verdicts"]["cells"], 40 * 24);
}

#[test]
fn read_grid_rejects_malformed_csv() {
    let w: Word = "cscs".parse().unwrap();
    assert!(read_grid("r,d,defect\n0.5,0,abc\n".as_bytes(), w.clone()).is_err());
    assert!(read_grid("r,d,defect\n0.5,0.1,0\n0.5,0,0\n".as_bytes(), w).is_err());
}

#[test]
fn search_lists_all_words_of_length_up_to_four() {
    let v = json(&run(&["search", "--max-len", "4"]));
    let words: Vec<&str> = v["data"]["words"].as_array().unwrap().iter().map(|w| w["word"].as_str().unwrap()).collect();
    assert_eq!(words, ["ccc", "ccs", "css", "sss", "cccc", "cccs", "ccss", "cscs", "csss", "ssss"]);
    let certified: Vec<&str> = v["verdicts"]["certified"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
    for w in ["ccc", "sss", "cscs", "ssss"] {
        assert!(certified.contains(&w), "{w} not certified: {certified:?}");
    }
    for w in v["data"]["words"].as_array().unwrap() {
        let status = w["status"].as_str().unwrap();
        assert!(["certified", "not certified", "no locus found at this resolution"].contains(&status));
        if status == "not certified" {
            assert!(!w["counterexamples"].as_array().unwrap().is_empty());
        }
    }
}

#[test]
fn fit_recovers_cscs_relation() {
    let r = run(&["fit", "--word", "cscs"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    let terms = v["data"]["terms"].as_array().unwrap();
    let names: Vec<&str> = terms.iter().map(|t| t["monomial"].as_str().unwrap()).collect();
    assert_eq!(names, ["R^2", "R*r", "r^2", "d^2"]);
    let coef: Vec<f64> = terms.iter().map(|t| t["coefficient"].as_f64().unwrap()).collect();
    let want = [-1.0, 2.0, 3.0, 1.0].map(|c| c / 15f64.sqrt());
    for (c, w) in coef.iter().zip(want) {
        assert!((c - w).abs() < 1e-6, "{coef:?}");
    }
    assert_eq!(v["verdicts"]["nullity"], 1);
}

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!("class=\"{class}\"")).count()
}

#[test]
fn render_draws_every_element() {
    let three = run(&["render", "--R", "7", "--r", "1", "--d", "0", "--word", "cscscs"]).stdout;
    assert_eq!(count(&three, "chain-circle"), 3);
    assert_eq!(count(&three, "chain-chord"), 3);
    assert_eq!(count(&three, "outer") + count(&three, "inner"), 2);
    assert!(three.contains("cscscs: closed"));
    let open = run(&["render", "--R", "4", "--r", "1", "--d", "0", "--word", "cscs"]);
    assert_eq!(open.code, 0);
    assert_eq!(count(&open.stdout, "chain-circle"), 2);
    assert_eq!(count(&open.stdout, "chain-circle-next"), 1);
    assert!(open.stdout.contains("not closed"));
}

#[test]
fn render_with_envelope_draws_gamma() {
    let r = run(&["render", "--R", "3", "--r", "1", "--d", "0.3", "--word", "cscs", "--gamma"]);
    assert_eq!(r.code, 0);
    assert_eq!(count(&r.stdout, "gamma"), 1);
}

#[test]
fn render_is_identical_across_workers() {
    let base = ["render", "--R", "3", "--r", "1", "--d", "0.3", "--word", "cscscs", "--gamma"];
    let one = run(&[&base[..], &["--workers", "1"]].concat());
    let eight = run(&[&base[..], &["--workers", "8"]].concat());
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn render_to_file_leaves_stdout_empty() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("fig.svg");
    let r = run(&["render", "--out", p.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    assert!(std::fs::read_to_string(&p).unwrap().starts_with("<?xml"));
}

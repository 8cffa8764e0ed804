//! Process-level tests: the shipped binary, its formats, and the exit
//! code contract (0 ok, 2 invalid input, 3 no applicable backend).

use std::io::Write;
use std::process::{Command, Stdio};

fn banzhaf(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_banzhaf"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    {
        let mut pipe = child.stdin.take().expect("stdin piped");
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes())
                .expect("stdin accepts input");
        }
    }
    let out = child.wait_with_output().expect("binary finishes");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

#[test]
fn computes_json_from_stdin() {
    let (code, stdout, _) = banzhaf(&["compute", "-"], Some("6; 5, 4, 1"));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["backend"], "k-value");
    assert_eq!(v["swings"], serde_json::json!(["3", "1", "1"]));
    assert_eq!(v["banzhaf"], serde_json::json!(["3/5", "1/5", "1/5"]));
    assert_eq!(v["prob_banzhaf"], serde_json::json!(["3/4", "1/4", "1/4"]));
    assert_eq!(v["total_swings"], "5");
    assert!(v["winning_count"].is_null());
    assert_eq!(v["classes"]["distinct_value_count"], 3);
}

#[test]
fn crosscheck_fills_in_the_winning_count() {
    let (code, stdout, _) = banzhaf(
        &["compute", "-", "--crosscheck", "--decimal", "2"],
        Some("6; 5, 4, 1"),
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(!v["crosschecked_with"].is_null());
    assert_eq!(v["winning_count"], "3");
    assert_eq!(v["coleman_a"], "3/8");
    assert_eq!(v["approx"]["decimal_places"], 2);
    assert_eq!(v["approx"]["banzhaf"][0], "0.60");
    assert_eq!(v["approx"]["coleman_a"], "0.38");
}

#[test]
fn table_marks_approximations() {
    let (code, stdout, _) = banzhaf(
        &["compute", "-", "--format", "table", "--decimal", "3"],
        Some("6; 5, 4, 1"),
    );
    assert_eq!(code, 0);
    assert!(stdout.contains("3/5 (~0.600)"), "{stdout}");
    assert!(stdout.contains("backend: k-value"), "{stdout}");
}

#[test]
fn reads_games_from_files() {
    let path = std::env::temp_dir().join(format!("banzhaf-cli-test-{}", std::process::id()));
    std::fs::write(&path, "22; 18, 9, 4, 2, 1").unwrap();
    let (code, stdout, _) = banzhaf(
        &["compute", path.to_str().unwrap(), "--format", "csv"],
        None,
    );
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.trim().lines().collect();
    assert_eq!(lines[0], "player,weight,swings,banzhaf,prob_banzhaf");
    assert_eq!(lines[1], "1,18,12,3/5,3/4");
    assert_eq!(lines[5], "5,1,0,0,0");
}

#[test]
fn json_games_parse_too() {
    let (code, stdout, _) = banzhaf(
        &["compute", "-"],
        Some(r#"{"quota": "5/2", "weights": ["2", "2", "1/2"]}"#),
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["swings"], serde_json::json!(["2", "2", "2"]));
}

#[test]
fn exit_codes_follow_the_contract() {
    let (code, _, stderr) = banzhaf(&["compute", "-"], Some("oops"));
    assert_eq!(code, 2, "{stderr}");

    let (code, _, stderr) = banzhaf(&["compute", "-"], Some("10; 1, 2"));
    assert_eq!(code, 2, "{stderr}");

    let (code, _, stderr) = banzhaf(&["compute", "/no/such/file"], None);
    assert_eq!(code, 2, "{stderr}");

    let (code, _, stderr) = banzhaf(
        &["compute", "-", "--backend", "nonsense"],
        Some("6; 5, 4, 1"),
    );
    assert_eq!(code, 2, "{stderr}");

    // A forced backend whose shape precondition fails cannot run.
    let (code, _, stderr) = banzhaf(
        &["compute", "-", "--backend", "two-value"],
        Some("6; 5, 4, 1"),
    );
    assert_eq!(code, 3, "{stderr}");

    let (code, _, stderr) = banzhaf(
        &["compute", "-", "--backend", "brute"],
        Some("2; 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1"),
    );
    assert_eq!(code, 3, "{stderr}");
}

#[test]
fn forced_backends_agree() {
    let game = "8; 5, 4, 2, 1";
    let mut swings = Vec::new();
    for backend in ["dp", "gf", "brute", "k-value"] {
        let (code, stdout, stderr) = banzhaf(&["compute", "-", "--backend", backend], Some(game));
        assert_eq!(code, 0, "{backend}: {stderr}");
        let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(v["backend"], backend);
        swings.push(v["swings"].clone());
    }
    assert!(swings.windows(2).all(|w| w[0] == w[1]), "{swings:?}");
}

#[test]
fn generators_print_parseable_games() {
    let (code, stdout, _) = banzhaf(&["gen", "3game", "--m", "2"], None);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "5; 3, 3, 1, 1");

    let (code, stdout, _) = banzhaf(&["gen", "reduction", "--z", "1,2", "--t", "2"], None);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "19; 14, 12, 5, 4, 1");

    let (code, a, _) = banzhaf(
        &[
            "gen",
            "random",
            "--n",
            "7",
            "--shape",
            "unbalanced",
            "--seed",
            "9",
        ],
        None,
    );
    assert_eq!(code, 0);
    let (_, b, _) = banzhaf(
        &[
            "gen",
            "random",
            "--n",
            "7",
            "--shape",
            "unbalanced",
            "--seed",
            "9",
        ],
        None,
    );
    assert_eq!(a, b, "same seed, same game");

    // Generated text feeds straight back into compute.
    let (code, report, stderr) = banzhaf(&["compute", "-"], Some(a.trim()));
    assert_eq!(code, 0, "{stderr}");
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["backend"], "unbalanced");

    let (code, stdout, _) = banzhaf(&["gen", "3game", "--m", "1", "--format", "json"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["quota"], "2");
    assert_eq!(v["weights"], serde_json::json!(["1", "1"]));
}

#[test]
fn bench_emits_csv_rows() {
    let (code, stdout, stderr) = banzhaf(&["bench", "--suite", "gf"], None);
    assert_eq!(code, 0, "{stderr}");
    let lines: Vec<&str> = stdout.trim().lines().collect();
    assert_eq!(lines[0], "suite,backend,size,est_ops,wall_ms,c_terms");
    assert_eq!(lines.len(), 8, "{stdout}");
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 6, "{line}");
        assert!(line.starts_with("gf,gf,"), "{line}");
    }
}

#[test]
fn classify_reports_structure() {
    let (code, stdout, _) = banzhaf(&["classify", "-"], Some("22; 18, 9, 4, 2, 1"));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["min_unbalance_order"], 1);
    assert_eq!(v["is_proper"], true);
    assert_eq!(v["all_integer"], true);
}

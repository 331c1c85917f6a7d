use std::process::{Command, Output};

fn gwa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwa")).args(args).env_remove("GWA_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn count_examples() {
    let o = gwa(&["count", "--surface", "plane", "--class", "3", "--engine", "recursion"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "12");

    let o = gwa(&["count", "--surface", "plane", "--class", "1"]);
    assert_eq!(stdout(&o).trim(), "1");

    let o = gwa(&["count", "--surface", "hirzebruch:0", "--class", "1,1", "--engine", "tropical"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");

    let o = gwa(&["count", "--surface", "plane", "--class", "4", "--engine", "tropical", "--threads", "2"]);
    assert_eq!(stdout(&o).trim(), "620");
    let o = gwa(&["count", "--surface", "plane", "--class", "4", "--engine", "tropical", "--path-total"]);
    assert_eq!(stdout(&o).trim(), "675");
}

#[test]
fn count_hexagon_and_hirzebruch_two() {
    let o = gwa(&["count", "--surface", "blown_plane:3", "--class", "3,1,1,1"]);
    assert_eq!(stdout(&o).trim(), "12");

    let o = gwa(&["count", "--surface", "hirzebruch:2", "--class", "2,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
    assert!(String::from_utf8_lossy(&o.stderr).contains("path total"));
}

#[test]
fn count_errors() {
    for args in [
        &["count", "--surface", "torus", "--class", "1"][..],
        &["count", "--surface", "plane", "--class", "1,1"],
        &["count", "--surface", "plane", "--class", "0"],
        &["count", "--surface", "blown_plane:4", "--class", "3,1,1,1,1", "--engine", "tropical"],
        &["count", "--surface", "hirzebruch:0", "--class", "1,1", "--engine", "recursion"],
    ] {
        let o = gwa(args);
        assert!(!o.status.success(), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn trace_and_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let ck = dir.path().join("ck.json");
    let args = [
        "count",
        "--surface",
        "plane",
        "--class",
        "3",
        "--engine",
        "tropical",
        "--trace",
        trace.to_str().unwrap(),
        "--checkpoint",
        ck.to_str().unwrap(),
    ];
    let o = gwa(&args);
    assert_eq!(stdout(&o).trim(), "12");
    let lines = std::fs::read_to_string(&trace).unwrap();
    assert!(lines.lines().count() > 0);
    for line in lines.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["path"].is_array() && v["mu_plus"].is_string() && v["mu_minus"].is_string());
    }
    assert!(ck.exists());
    // A second run resumes from the checkpoint and agrees.
    assert_eq!(stdout(&gwa(&args)).trim(), "12");
}

#[test]
fn polygon_examples() {
    let v = json(&gwa(&["polygon", "--surface", "blown_plane:3", "--class", "3,1,1,1"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["boundary_points"], 6);

    let v = json(&gwa(&["polygon", "--surface", "plane", "--class", "2"]));
    assert_eq!(v["vertices"], serde_json::json!([[0, 0], [2, 0], [0, 2]]));

    let v = json(&gwa(&["polygon", "--surface", "hirzebruch:2", "--class", "4,2"]));
    assert_eq!(v["vertices"], serde_json::json!([[0, 0], [4, 0], [0, 2]]));

    assert!(!gwa(&["polygon", "--surface", "blown_plane:5", "--class", "3,1,1,1,1,1"]).status.success());
}

#[test]
fn verify_examples() {
    let o = gwa(&["verify", "--check", "oracle", "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let degrees: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["degree"].as_u64().unwrap()).collect();
    assert_eq!(degrees, [2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4]);
    assert_eq!(v["all_hold"], true);

    let o = gwa(&["verify", "--check", "monotone", "--surface", "plane", "--n-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["all_hold"], true);

    let o = gwa(&["verify", "--check", "factorial", "--s", "2", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));

    let o = gwa(&["verify", "--check", "lambda"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["fit"]["lambda_target"], 3);
}

#[test]
fn verify_failures_are_reported() {
    // An absurdly tight tolerance makes the fit check fail.
    let o = gwa(&["verify", "--check", "lambda", "--tolerance", "1e-9"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["all_hold"], false);

    let o = gwa(&["verify", "--check", "factorial", "--s", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["check"], "factorial");
    assert!(v["error"].is_string());
}

#[test]
fn fit_example() {
    let v = json(&gwa(&["fit", "--surface", "plane", "--range", "20:200"]));
    assert_eq!(v["lambda_target"], 3);
    assert!((v["lambda_hat"].as_f64().unwrap() - 3.0).abs() <= 0.15);
    assert_eq!(v["range"], serde_json::json!([20, 200]));
}

#[test]
fn series_files_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let series = dir.path().join("plane.json");
    let o = gwa(&["series", "--n-max", "200", "--output", series.to_str().unwrap()]);
    assert!(o.status.success());

    let v = json(&gwa(&["fit", "--series", series.to_str().unwrap(), "--with-constant"]));
    assert!((v["lambda_hat"].as_f64().unwrap() - 3.0).abs() <= 0.5);

    let svg1 = dir.path().join("a.svg");
    let svg2 = dir.path().join("b.svg");
    for out in [&svg1, &svg2] {
        let o = gwa(&["plot", "--series", series.to_str().unwrap(), "--output", out.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let a = std::fs::read(&svg1).unwrap();
    assert_eq!(a, std::fs::read(&svg2).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.contains(r#"viewBox="0 0 800 600""#) && text.contains("λ = 3"));

    let csv = stdout(&gwa(&["series", "--n-max", "3", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("n,count,log_count,u_n"));
    assert!(csv.lines().nth(3).unwrap().starts_with("3,12,"));

    let hz = json(&gwa(&["series", "--surface", "hirzebruch:0", "--class", "1,1", "--n-max", "2"]));
    assert_eq!(hz["entries"][1]["count"], "12");
}

#[test]
fn plot_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"surface": {"kind": "plane", "k_or_s": 0}, "divisor": [1], "entries": []}"#).unwrap();
    let out = dir.path().join("x.svg");
    let o = gwa(&["plot", "--series", empty.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(!out.exists());

    let missing = dir.path().join("missing.json");
    assert!(!gwa(&["plot", "--series", missing.to_str().unwrap(), "--output", out.to_str().unwrap()]).status.success());

    let two = dir.path().join("two.json");
    std::fs::write(
        &two,
        r#"{"surface": {"kind": "plane", "k_or_s": 0}, "divisor": [1], "entries": [{"n": 2, "count": "1"}, {"n": 3, "count": "12"}]}"#,
    )
    .unwrap();
    assert!(gwa(&["plot", "--series", two.to_str().unwrap(), "--output", out.to_str().unwrap()]).status.success());
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches(r#"class="marker""#).count(), 2);
    assert!(!svg.contains(r#"id="fit""#));
}

#[test]
fn thread_count_does_not_change_output() {
    let one = gwa(&["verify", "--check", "oracle", "--max-degree", "4", "--threads", "1"]);
    let many = gwa(&["verify", "--check", "oracle", "--max-degree", "4", "--threads", "8"]);
    assert_eq!(one.stdout, many.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_gwa"))
        .args(["verify", "--check", "oracle", "--max-degree", "4"])
        .env("GWA_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(one.stdout, env.stdout);
}

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tailorder")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

/// Column `name` of a CSV document, parsed as numbers.
fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap_or_else(|| panic!("no column {name}"));
    lines.map(|l| l.split(',').nth(k).unwrap().to_string()).collect()
}

#[test]
fn eval_values_and_exit_codes() {
    let o = run(&["eval", "independence", "--at", "0.5,0.5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(column(&stdout(&o), "value"), ["2.5000000000000000e-1"]);

    let o = run(&["eval", "clayton:1", "--at", "0.5,0.5", "--at", "0.2,1"]);
    let v: Vec<f64> = column(&stdout(&o), "value").iter().map(|x| x.parse().unwrap()).collect();
    assert!((v[0] - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(v[1], 0.2);

    assert_eq!(code(&run(&["eval", "clayton:1", "--at", "0.5,0.5,0.5"])), 3);
    assert_eq!(code(&run(&["eval", "clayton:-5", "--at", "0.5,0.5"])), 2);
    assert_eq!(code(&run(&["eval", "frank:1", "--at", "0.5,0.5"])), 2);
    assert_eq!(code(&run(&["eval", "missing-file.json", "--at", "0.5,0.5"])), 2);
    assert_eq!(code(&run(&["eval", "independence", "--at", "0.5,1.5"])), 2);
}

#[test]
fn descriptor_files_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let desc = dir.path().join("glued.json");
    std::fs::write(
        &desc,
        r#"{"family":"glue","params":{"axis":1,"split":0.5},
            "left":{"family":"comonotone"},"right":{"family":"comonotone"}}"#,
    )
    .unwrap();
    let out = dir.path().join("values.json");
    let o = run(&[
        "eval",
        desc.to_str().unwrap(),
        "--at",
        "0.2,0.3",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!((v[0]["value"].as_f64().unwrap() - 0.15).abs() < 1e-15);

    std::fs::write(&desc, r#"{"family":"glue"}"#).unwrap();
    assert_eq!(code(&run(&["eval", desc.to_str().unwrap(), "--at", "0.2,0.3"])), 2);
}

#[test]
fn tdf_traces() {
    let o = run(&["tdf", "comonotone", "--w", "1,1"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    assert!(csv.starts_with("w1,w2,s,ratio,diff,converged\n"));
    assert_eq!(column(&csv, "ratio").last().unwrap(), "1.0000000000000000e0");
    assert_eq!(column(&csv, "converged").last().unwrap(), "true");

    let o = run(&["tdf", "marshall-olkin:0.5", "--w", "1,1"]);
    let csv = stdout(&o);
    let s: Vec<f64> = column(&csv, "s").iter().map(|x| x.parse().unwrap()).collect();
    let r: Vec<f64> = column(&csv, "ratio").iter().map(|x| x.parse().unwrap()).collect();
    for (s, r) in s.iter().zip(&r) {
        assert!((r - s.sqrt()).abs() <= 1e-12 * s.sqrt(), "{s} {r}");
    }
    assert!(*r.last().unwrap() < 1e-4);

    let o = run(&["tdf", "gaussian:0.5", "--w", "1,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(column(&stdout(&o), "converged").last().unwrap(), "false");

    let o = run(&["tdf", "clayton:2", "--simplex", "4", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert_eq!(code(&run(&["tdf", "independence:3", "--simplex", "4"])), 3);
}

#[test]
fn order_verdicts_and_exit_codes() {
    let o = run(&["order", "--tdo", "clayton:1", "clayton:2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["status"], "HoldsStrictly");

    let o = run(&["order", "--loc", "marshall-olkin:0.5", "clayton:1", "--eps", "0.1"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["status"], "Fails");
    let p = v["witness"]["point"].as_array().unwrap();
    let (t, s) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
    assert!((s - t.sqrt()).abs() < 2.0 * 0.1 / 63.0);

    let o = run(&["order", "--cone", "0.2", "marshall-olkin:0.5", "clayton:1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["status"], "Holds");
    assert!(v["epsilon"].as_f64().unwrap() >= 0.5f64.powi(20));

    let o = run(&["order", "--loc", "independence", "independence", "--eps", "0.5"]);
    assert_eq!(code(&o), 4);

    let o = run(&["order", "--diagonal", "power:2", "power:1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(column(&stdout(&o), "epsilon"), ["1.0000000000000000e0"]);

    let o = run(&["order", "--too", "clayton:2", "clayton:1", "--w", "1,2"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&run(&["order", "--tdo", "min@3", "min"])), 3);
    assert_eq!(code(&run(&["order", "clayton:1", "clayton:2"])), 2);
}

#[test]
fn glued_joe_rays_disagree() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, axis: u8| {
        let p = dir.path().join(name);
        let d = format!(
            r#"{{"family":"glue","params":{{"axis":{axis},"split":0.5}},
                "left":{{"family":"archimedean","params":{{"generator":{{"kind":"joe","theta":2.0}}}}}},
                "right":{{"family":"comonotone"}}}}"#
        );
        std::fs::write(&p, d).unwrap();
        p
    };
    let (a, b) = (write("a.json", 1), write("b.json", 2));
    let args = |x: &Path, y: &Path, w: &str| {
        let o = run(&["order", "--too", x.to_str().unwrap(), y.to_str().unwrap(), "--w", w]);
        code(&o)
    };
    assert_eq!(args(&a, &b, "0.5,1"), 1);
    assert_eq!(args(&b, &a, "0.5,1"), 0);
    assert_eq!(args(&b, &a, "1,0.5"), 1);
    assert_eq!(args(&a, &b, "1,0.5"), 0);
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "ev"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let csv = stdout(&o);
    assert!(csv.starts_with("suite,check,passed,detail\n"));
    assert!(column(&csv, "passed").iter().all(|p| p == "true"));
    assert!(csv.contains("roundtrip_fig1-parabola"));

    let o = run(&["verify", "archimedean", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o).as_array().unwrap().iter().all(|r| r["passed"] == true));

    assert_eq!(code(&run(&["verify", "all"])), 0);
    assert_eq!(code(&run(&["verify", "bogus"])), 2);
}

#[test]
fn repro_rows() {
    let o = run(&["repro", "mo-clayton"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    let t = column(&csv, "t");
    let k = t.iter().position(|x| x == "2.5000000000000000e-1").unwrap();
    let m: f64 = column(&csv, "m_alpha")[k].parse().unwrap();
    let c: f64 = column(&csv, "c_theta")[k].parse().unwrap();
    assert!((m - 0.25).abs() < 1e-15 && (c - 0.2).abs() < 1e-15);

    let o = run(&["repro", "fig1-tdfs"]);
    let csv = stdout(&o);
    let k = column(&csv, "t").iter().position(|x| x == "5.0000000000000000e-1").unwrap();
    assert_eq!(column(&csv, "parabola")[k], "2.5000000000000000e-1");
    assert_eq!(column(&csv, "piecewise")[k], "2.5000000000000000e-1");

    let o = run(&["repro", "glued-joe", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert_eq!(code(&run(&["repro", "nope"])), 2);
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        &["repro", "glued-joe"][..],
        &["order", "--cone", "0.2", "marshall-olkin:0.5", "clayton:1"],
        &["tdf", "lev:fig1-piecewise", "--simplex", "10"],
        &["validate", "clayton:2", "--grid", "16", "--format", "csv"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.contains(&b'\r'));
    }
}

#[test]
fn validate_objects() {
    assert_eq!(code(&run(&["validate", "fn-power:2"])), 0);
    let o = run(&["validate", "--tdf", "clayton:2"]);
    assert_eq!(code(&o), 0);
    let o = run(&["validate", "--diagonal", "power:0.5"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let failing: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(failing.iter().any(|c| c["name"] == "below_identity"));
    assert_eq!(code(&run(&["validate", "--diagonal", "--semilinear", "power:2"])), 0);
}

#[test]
fn global_flag_domains() {
    assert_eq!(code(&run(&["eval", "independence", "--at", "0.5,0.5", "--grid", "3"])), 2);
    assert_eq!(code(&run(&["eval", "independence", "--at", "0.5,0.5", "--tau", "-1"])), 2);
    assert_eq!(code(&run(&["tdf", "clayton:1", "--schedule", "0.01,0.5"])), 2);
    assert_eq!(code(&run(&["tdf", "clayton:1", "--schedule", "0.01,2,10"])), 2);
    let o = run(&["tdf", "clayton:1", "--schedule", "0.01,0.5,8"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1 + 8);
}

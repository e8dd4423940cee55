use std::process::{Command, Output};

fn sos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sos")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn perm_three_tenths() {
    let o = sos(&["perm", "--alpha", "3/10", "--n", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "7 4 1 5 2 6 3");
}

#[test]
fn inverse_perm() {
    let o = sos(&["perm", "--alpha", "3/10", "--n", "7", "--inverse"]);
    assert_eq!(stdout(&o).trim(), "3 5 7 2 4 6 1");
}

#[test]
fn shape_three_tenths() {
    let o = sos(&["shape", "--alpha", "3/10", "--n", "7"]);
    let s = stdout(&o);
    assert!(s.contains("7 4 1 5 2 6 3"));
    assert!(s.contains("shape = 3,3,1"));
}

#[test]
fn shape_json_with_tableaux() {
    let o = sos(&["--format", "json", "shape", "--alpha", "3/10", "--n", "7", "--tableaux"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["shape"], serde_json::json!([3, 3, 1]));
    assert_eq!(v["p"][0], serde_json::json!([1, 2, 3]));
}

#[test]
fn verify_e_4700_json() {
    let o = sos(&["--format", "json", "verify", "--alpha", "e", "--n", "4700"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["arm"], 80);
    assert_eq!(v["leg"], 99);
    assert_eq!(v["slope1"], "-1.013322");
    assert_eq!(v["slope2"], "-3.538502");
    assert!(v["max_dist"].as_str().unwrap().parse::<f64>().unwrap() < 8.0);
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn enumerate_four() {
    let o = sos(&["--format", "csv", "enumerate", "--n", "4"]);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[0].starts_with("left,right"));
    assert_eq!(lines[1], "0/1,1/4,1/4,1 2 3 4");
}

#[test]
fn bad_flags_exit_one() {
    assert_eq!(sos(&["perm", "--bogus"]).status.code(), Some(1));
    assert_eq!(sos(&["perm", "--alpha", "3/10", "--n", "0"]).status.code(), Some(1));
    assert_eq!(sos(&["predict", "--alpha", "1/2", "--n", "9"]).status.code(), Some(1));
    assert_eq!(sos(&["--help"]).status.code(), Some(0));
}

#[test]
fn lattice_dump_too_large() {
    assert_eq!(sos(&["lattice-dump", "--a", "1", "--b", "1000000000000"]).status.code(), Some(3));
}

#[test]
fn scan_keeps_order_across_jobs() {
    let args = |jobs: &'static str| ["scan", "--alpha", "e,golden", "--n-from", "20", "--n-to", "40", "--jobs", jobs];
    let one = stdout(&sos(&args("1")));
    let four = stdout(&sos(&args("4")));
    assert_eq!(one, four);
    let ns: Vec<&str> = one.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ns.len(), 42);
    assert_eq!((ns[0], ns[20], ns[21]), ("20", "40", "20"));
}

#[test]
fn out_file_and_plot() {
    let path = std::env::temp_dir().join(format!("sos-plot-{}.svg", std::process::id()));
    let o = sos(&["--out", path.to_str().unwrap(), "plot", "--alpha", "golden", "--n", "300"]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
}

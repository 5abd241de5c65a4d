//! End-to-end runs of the `spinor` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn spinor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinor")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = spinor(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

#[test]
fn classify_reports_gorenstein_capacity_and_rank() {
    let (v, code) = json(&["classify", "--interval", "[(0)^-1:(1)^1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["gorenstein"], true);
    assert_eq!(v["size"], 48);
    assert!(v["capacity"].is_u64());
    assert!(v["rank"].is_i64());
    let (v, _) = json(&["classify", "--interval", "[(45)^-1:(1)^0]"]);
    assert_eq!(v["gorenstein"], false);
    assert_eq!(v["palindromic"], false);
}

#[test]
fn hilbert_of_the_cone() {
    let (v, code) = json(&["hilbert", "--interval", "[(0)^0:(1)^0]", "--tmax", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimensions"], serde_json::json!(["1", "16", "126", "672"]));
    let (v, _) = json(&["hilbert", "--interval", "[(0)^0:(1)^0]", "--tmax", "2", "--refine", "t", "--rational"]);
    assert!(v["rational"]["text"].as_str().unwrap().contains("t^3"));
}

#[test]
fn stated_star_constant_exits_with_defect() {
    let (v, code) = json(&["verify", "--equation", "star", "--N", "0"]);
    assert_eq!(v["holds"], false);
    assert_eq!(code, 1);
    let (v, code) = json(&["verify", "--equation", "star", "--N", "0", "--constant", "solved"]);
    assert_eq!(v["holds"], true);
    assert_eq!((v["sign"].as_i64(), v["t_exponent"].as_i64(), v["q_exponent"].as_i64()), (Some(-1), Some(4), Some(-2)));
    assert_eq!(code, 0);
}

#[test]
fn field_antifield_and_bv() {
    let (v, code) = json(&["verify", "--equation", "faf", "--N", "1", "--constant", "solved"]);
    assert_eq!((v["holds"].as_bool(), code), (Some(true), 0));
    let (v, code) = json(&["verify", "--equation", "bv", "--N", "1"]);
    assert_eq!((v["holds"].as_bool(), code), (Some(true), 0));
}

#[test]
fn chi_and_errors() {
    let (v, code) = json(&["chi", "--interval", "[(0)^0:(1)^0]"]);
    assert_eq!(code, 0);
    assert_eq!((v["a"].as_i64(), v["u"].as_i64(), v["a_invariant"].as_i64()), (Some(8), Some(0), Some(8)));
    let out = spinor(&["chi", "--interval", "[(45)^-1:(1)^0]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not Gorenstein"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["frobnicate"][..], &["chi", "--interval", "[x"], &["hilbert"], &["verify", "--equation", "nope"]] {
        let out = spinor(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn betti_table_and_duality() {
    let (v, code) = json(&["betti", "--interval", "[(0)^0:(1)^0]"]);
    assert_eq!(code, 0);
    let entries: Vec<(u64, i64, u64)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["i"].as_u64().unwrap(), e["j"].as_i64().unwrap(), e["b"].as_u64().unwrap()))
        .collect();
    assert_eq!(entries, vec![(0, 0, 1), (1, 2, 10), (2, 3, 16), (3, 5, 16), (4, 6, 10), (5, 8, 1)]);
    assert_eq!(v["duality_consistent"], true);
    let (v, code) = json(&["duality", "--interval", "[(0)^0:(1)^0]", "--tmax", "6"]);
    assert_eq!((v["holds"].as_bool(), code), (Some(true), 0));
    let (_, code) = json(&["duality", "--interval", "[(0)^0:(1)^0]", "--quiver", "clutter"]);
    assert_eq!(code, 1);
}

#[test]
fn capacity_two_and_paths() {
    let (v, code) = json(&["enumerate-cap2"]);
    assert_eq!((v["count"].as_u64(), v["matches_table"].as_bool(), code), (Some(24), Some(true), 0));
    let (v, _) = json(&["paths", "--interval", "[(0)^0:(1)^0]", "--dmax", "2", "--quiver", "clutter"]);
    assert_eq!(v["counts"], serde_json::json!(["1", "16", "20"]));
}

#[test]
fn qexpand_leading_slice() {
    let (v, code) = json(&["qexpand", "--orders=-2..-2", "--tdepth", "4"]);
    assert_eq!(code, 0);
    let s = &v["slices"][0];
    assert_eq!(s["q"], -2);
    assert_eq!(s["t_start"], 4);
    // t⁴(1 + 5t + 5t² + t³)/(1 − t)^11
    assert_eq!(s["coefficients"], serde_json::json!(["1", "16", "126", "672"]));
    let (v, _) = json(&["qexpand", "--interval", "[(0)^-1:(1)^1]", "--qmin=-2", "--qmax=-2", "--tdepth", "2"]);
    assert_eq!(v["slices"][0]["coefficients"], serde_json::json!(["1", "16"]));
}

#[test]
fn partition_renormalized_twist() {
    let (v, code) = json(&["partition", "--interval", "[(0)^-1:(1)^0]", "--renorm"]);
    assert_eq!(code, 0);
    assert_eq!(v["twist"], serde_json::json!([8, -8]));
}

#[test]
fn loccoh_window() {
    let (v, code) = json(&["loccoh", "--interval", "[(35)^-1:(24)^0]", "--trange=-4..-3", "--urange", "4..4"]);
    assert_eq!(code, 0);
    assert_eq!(v["nonzero_degrees"], serde_json::json!([4, 5]));
    assert_eq!(v["vanishing_range"], serde_json::json!([2, 5]));
}

#[test]
fn poset_band() {
    let (v, _) = json(&["poset", "--rho-lo", "0", "--rho-hi", "0"]);
    let names: Vec<&str> = v["vertices"].as_array().unwrap().iter().map(|x| x["vertex"].as_str().unwrap()).collect();
    assert_eq!(names, vec!["(0)^0", "(3)^-1"]);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["hilbert", "--interval", "[(0)^-1:(1)^0]", "--tmax", "5", "--manifest"];
    let a = spinor(&[&args[..], &["--jobs", "1"]].concat());
    let b = spinor(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(a.status.code(), Some(0));
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["manifest"]["arguments"] = Value::Null;
        v
    };
    assert_eq!(strip(&a), strip(&b));
    let c = spinor(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn manifest_echoes_bounds_and_fixture_hash() {
    let (v, _) = json(&["hilbert", "--interval", "[(0)^0:(1)^0]", "--tmax", "4", "--manifest"]);
    let m = &v["manifest"];
    assert_eq!(m["command"], "hilbert");
    assert_eq!(m["bounds"]["tmax"], 4);
    let hash = m["fixture_hash"].as_str().unwrap();
    assert_eq!(hash.len(), 64);
    let (w, _) = json(&["classify", "--interval", "[(0)^0:(1)^0]", "--manifest"]);
    assert_eq!(w["manifest"]["fixture_hash"], hash);
}

#[test]
fn csv_and_text_formats() {
    let out = spinor(&["paths", "--interval", "[(0)^0:(1)^0]", "--dmax", "1", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "length,paths\n0,1\n1,16\n");
    let out = spinor(&["paths", "--interval", "[(0)^0:(1)^0]", "--dmax", "1", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "length  paths\n0       1\n1       16\n");
}

#[test]
fn wall_time_budget() {
    let out = spinor(&["betti", "--interval", "[(0)^0:(1)^0]", "--method", "direct", "--jmax", "8", "--budget", "1000000000", "--budget-seconds", "0.2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
}

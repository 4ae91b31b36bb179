//! Process-level tests of the `chamber` binary: exit codes, JSON shapes,
//! stream formats, and byte-determinism of the SVG output.

use serde_json::Value;
use std::process::{Command, Output};

fn chamber(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chamber"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn chamber_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chamber"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each stdout line is JSON"))
        .collect()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn surface_reports_invariants() {
    let out = chamber(&["surface", "--c2", "13", "--k2", "35"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["surface"]["tau"], 9);
    assert_eq!(lines[0]["surface"]["chi"], 4);
    assert_eq!(lines[0]["surface"]["q"], 4);
    assert_eq!(lines[0]["geography"]["admissible"], true);
}

#[test]
fn surface_rejects_inadmissible_pair() {
    let out = chamber(&["surface", "--c2", "1", "--k2", "2"]);
    assert_eq!(exit_code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("not admissible"));
}

#[test]
fn surface_geography_violation_is_domain_negative() {
    // (120, 12): the sum is divisible by 12 but the lower slope line
    // 5*K2 >= c2 - 36 fails (60 < 84).
    let out = chamber(&["surface", "--c2", "120", "--k2", "12"]);
    assert_eq!(exit_code(&out), 1);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["geography"]["admissible"], false);
}

#[test]
fn unparseable_flag_is_usage_error() {
    let out = chamber(&["surface", "--c2", "x"]);
    assert_eq!(exit_code(&out), 2);
    let out = chamber(&["surface", "--c2", "13"]);
    assert_eq!(exit_code(&out), 2, "missing --k2 is a usage error");
    let out = chamber(&["nonsense"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scan_streams_rows_and_closes_with_a_summary() {
    let out = chamber(&["scan", "--c2-max", "12"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    assert!(lines.len() > 2);
    let summary = &lines[lines.len() - 1]["summary"];
    assert_eq!(summary["scanned"], 21);
    assert_eq!(summary["admissible"], 21);
    for row in &lines[..lines.len() - 1] {
        assert!(row.get("surface").is_some());
    }

    let filtered = chamber(&["scan", "--c2-max", "12", "--admissible-only"]);
    assert_eq!(exit_code(&filtered), 0);
    let filtered_lines = stdout_lines(&filtered);
    assert_eq!(
        filtered_lines.len(),
        lines.len(),
        "every pair up to 12 is admissible, so the filter removes nothing"
    );
}

#[test]
fn fibration_streams_the_option_list() {
    let out = chamber(&["fibration", "--c2", "25", "--k2", "71"]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    let pairs: Vec<(i64, i64)> = lines
        .iter()
        .map(|l| (l["g"].as_i64().unwrap(), l["d"].as_i64().unwrap()))
        .collect();
    assert_eq!(pairs, vec![(2, 2), (2, 3), (3, 2)]);
}

#[test]
fn fibration_refuses_small_excess() {
    let out = chamber(&["fibration", "--c2", "13", "--k2", "35"]);
    assert_eq!(exit_code(&out), 1);
    let lines = stdout_lines(&out);
    assert!(lines[0]["error"]
        .as_str()
        .unwrap()
        .contains("not applicable"));
}

#[test]
fn filter_accepts_the_worked_example() {
    let out = chamber(&[
        "filter", "--c2", "13", "--k2", "35", "--case", "zero", "--r", "3", "--c1sq", "24",
        "--c1k", "-30", "--s2", "8",
    ]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["accepted"], true);
    assert_eq!(lines[0]["violated"].as_array().unwrap().len(), 0);
}

#[test]
fn filter_rejects_with_stable_identifiers() {
    let out = chamber(&[
        "filter", "--c2", "13", "--k2", "35", "--case", "zero", "--r", "2", "--c1sq", "4",
        "--c1k", "-14", "--s2", "4",
    ]);
    assert_eq!(exit_code(&out), 1);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["accepted"], false);
    assert_eq!(lines[0]["violated"][0], "tau-triple-bound");

    // The same data under the nonzero-degree chain trips the degree cap.
    let out = chamber(&[
        "filter", "--c2", "13", "--k2", "35", "--case", "nonzero", "--r", "3", "--c1sq", "24",
        "--c1k", "-30", "--s2", "8",
    ]);
    assert_eq!(exit_code(&out), 1);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["violated"][0], "degree-cap");
}

#[test]
fn filter_gate_failure_is_domain_negative() {
    // (6,6) has negative index, so the sieve's entry gate fails.
    let out = chamber(&[
        "filter", "--c2", "6", "--k2", "6", "--case", "zero", "--r", "3", "--c1sq", "24",
        "--c1k", "-30", "--s2", "8",
    ]);
    assert_eq!(exit_code(&out), 1);
    let lines = stdout_lines(&out);
    assert!(lines[0]["error"].as_str().unwrap().contains("gate"));
}

#[test]
fn enumerate_includes_the_unit_candidate() {
    let out = chamber(&[
        "enumerate", "--c2", "13", "--k2", "35", "--beta0", "-9/70", "--cmax", "9/70",
        "--rmax", "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    let unit = lines
        .iter()
        .any(|l| l["r"] == 1 && l["d"] == 0 && l["s2"] == 0);
    assert!(unit, "the structure-sheaf slice (1,0,0) must be listed");
    let summary = &lines[lines.len() - 1]["summary"];
    assert_eq!(summary["candidates"].as_u64().unwrap() as usize, lines.len() - 1);
}

#[test]
fn enumerate_cell_report_wraps_the_stream() {
    let out = chamber(&[
        "enumerate", "--c2", "13", "--k2", "35", "--beta0", "-9/70", "--cmax", "9/70",
        "--rmax", "1", "--cell-report",
    ]);
    assert_eq!(exit_code(&out), 0);
    let lines = stdout_lines(&out);
    let cells = lines.iter().filter(|l| l.get("cell").is_some()).count();
    let candidates = lines
        .iter()
        .filter(|l| l.get("r").is_some() && l.get("cell").is_none())
        .count();
    let summary = &lines[lines.len() - 1]["summary"];
    assert_eq!(summary["cells"].as_u64().unwrap() as usize, cells);
    assert_eq!(summary["candidates"].as_u64().unwrap() as usize, candidates);
    assert!(cells > 0 && candidates >= cells);
}

#[test]
fn enumerate_budget_exhaustion_is_exit_3() {
    let out = chamber_env(
        &[
            "enumerate", "--c2", "13", "--k2", "35", "--beta0", "-9/70", "--cmax", "10/1",
            "--rmax", "2",
        ],
        "WALLS_CELL_CAP",
        "3",
    );
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn enumerate_precondition_violation_is_usage_error() {
    let out = chamber(&[
        "enumerate", "--c2", "13", "--k2", "35", "--beta0", "-3/2", "--cmax", "1/1",
        "--rmax", "2",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn plot_is_byte_deterministic() {
    let args = [
        "walls", "plot", "--c2", "13", "--k2", "35", "--beta0", "-9/70", "--rmax", "2",
        "--layers", "vertical,hyperbola,c_h,candidates,region",
    ];
    let first = chamber(&args);
    let second = chamber(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "SVG must be byte-identical");
    let svg = String::from_utf8(first.stdout).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("<polyline"));
    assert!(svg.contains("stroke-dasharray"));
    assert!(svg.contains("<circle"));
}

#[test]
fn plot_maps_the_tangent_circle_centre() {
    // Default window: b in [-4/5, 1/5], c_max 2/5, 800x480, margin 24.
    // Scale s = min(752 / 1, 432 / (2/5)) = 752, so the centre -9/70 maps
    // to 24 + (-9/70 + 4/5) * 752 = 24 + 47/70 * 752 = 528.914..., which
    // rounds to 528.91 hundredths-of-a-pixel.
    let out = chamber(&["walls", "plot", "--c2", "13", "--k2", "35"]);
    assert_eq!(exit_code(&out), 0);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(
        svg.contains("<circle cx=\"528.91\""),
        "tangent circle centre must land at the mapped pixel"
    );
}

#[test]
fn plot_with_empty_candidate_layer_keeps_axis_and_hyperbola() {
    // This window admits no candidate walls at all (checked via the
    // enumerate stream), so only the axis and the hyperbola remain.
    let out = chamber(&[
        "walls", "plot", "--c2", "13", "--k2", "35", "--layers", "hyperbola,candidates",
        "--beta0", "-1/4", "--rmax", "1", "--c-max", "1/100",
    ]);
    assert_eq!(exit_code(&out), 0);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(!svg.contains("<circle"), "no candidate circles expected");
    assert!(svg.contains("<polyline"), "hyperbola layer must survive");
    assert!(svg.contains("<line"), "the b-axis is always drawn");
}

#[test]
fn plot_size_and_layer_validation_is_usage_error() {
    let out = chamber(&["walls", "plot", "--c2", "13", "--k2", "35", "--width-px", "63"]);
    assert_eq!(exit_code(&out), 2);
    let out = chamber(&["walls", "plot", "--c2", "13", "--k2", "35", "--height-px", "63"]);
    assert_eq!(exit_code(&out), 2);
    let out = chamber(&["walls", "plot", "--c2", "13", "--k2", "35", "--layers", "axis"]);
    assert_eq!(exit_code(&out), 2);
    let out = chamber(&["walls", "plot", "--c2", "13", "--k2", "35", "--layers", "candidates"]);
    assert_eq!(exit_code(&out), 2, "candidates layer needs --beta0/--rmax");
    let out = chamber(&[
        "walls", "plot", "--c2", "13", "--k2", "35", "--b-min", "1/2", "--b-max", "-1/2",
    ]);
    assert_eq!(exit_code(&out), 2, "empty b range");
}

#[test]
fn plot_refuses_inadmissible_surface() {
    let out = chamber(&["walls", "plot", "--c2", "1", "--k2", "2"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn rationals_cross_the_boundary_in_lowest_terms() {
    // A wall-shape rational in the enumerate stream is out of scope here
    // (candidates are integer triples), but the surface report carries
    // alpha split into numerator and denominator: 13/35 is already
    // reduced; 6/18 must reduce to 1/3.
    let out = chamber(&["surface", "--c2", "6", "--k2", "18"]);
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["surface"]["alpha_num"], 1);
    assert_eq!(lines[0]["surface"]["alpha_den"], 3);
}

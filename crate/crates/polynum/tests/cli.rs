//! End-to-end tests of the installed binary: output bytes, JSON shapes,
//! and the exit-code contract (0 pass, 1 verification failure, 2 usage,
//! 3 budget).

use std::process::{Command, Output};

fn polynum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polynum"))
        .args(args)
        .env_remove("POLYNUM_BUDGET")
        .output()
        .expect("binary runs")
}

fn polynum_with_budget(budget: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polynum"))
        .args(args)
        .env("POLYNUM_BUDGET", budget)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn seq_prints_the_square_numbers() {
    let out = polynum(&["seq", "cube:2", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 1 4 9 16\n");
}

#[test]
fn seq_interior_adds_a_second_line() {
    let out = polynum(&["seq", "cross:3", "--n", "5", "--interior"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 1 6 19 44 85\n0 0 0 1 6 19\n");
}

#[test]
fn seq_formats_render_the_same_values() {
    let bfile = polynum(&["seq", "simplex:2", "--n", "3", "--format", "bfile"]);
    assert_eq!(stdout(&bfile), "0 0\n1 1\n2 3\n3 6\n");

    let csv = polynum(&["seq", "simplex:2", "--n", "3", "--format", "csv"]);
    assert_eq!(stdout(&csv), "n,value\n0,0\n1,1\n2,3\n3,6\n");

    let json = polynum(&["seq", "simplex:2", "--n", "3", "--format", "json"]);
    assert!(json.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&json)).expect("valid json");
    assert_eq!(doc["name"], "simplex:2");
    assert_eq!(doc["dim"], 2);
    assert_eq!(doc["values"], serde_json::json!([0, 1, 3, 6]));
    // n(n+1)/2 as exact rational coefficients.
    assert_eq!(
        doc["polynomial"],
        serde_json::json!([[0, 1], [1, 2], [1, 2]])
    );
}

#[test]
fn seq_accepts_a_custom_functional() {
    let out = polynum(&["seq", "cube:2", "--n", "4", "--functional", "2,7/3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 1 4 9 16\n");

    let bad = polynum(&["seq", "cube:2", "--n", "4", "--functional", "1,2,3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn decompose_check_agrees_and_reports_coefficients() {
    let out = polynum(&["decompose", "cross:3", "--theorem", "2", "--check"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["theorem"], "2");
    assert_eq!(doc["coeffs"], serde_json::json!([1, 4, 4]));

    let solve = polynum(&["decompose", "cube:3", "--theorem", "1", "--method", "solve"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&solve)).expect("valid json");
    assert_eq!(doc["coeffs"], serde_json::json!([1, 4, 1]));
}

#[test]
fn decompose_rejects_solve_where_no_solve_path_exists() {
    for theorem in ["3-2", "4"] {
        let out = polynum(&[
            "decompose", "cube:2", "--theorem", theorem, "--method", "solve",
        ]);
        assert_eq!(out.status.code(), Some(2), "theorem {theorem}");
    }
}

#[test]
fn malformed_expressions_are_usage_errors() {
    for expr in ["blob:3", "prod(simplex:1)", "cube:", "hypersimplex:4,4"] {
        let out = polynum(&["seq", expr, "--n", "2"]);
        assert_eq!(out.status.code(), Some(2), "expr {expr}");
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = polynum(&["verify", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_counts_passes_and_reports_json() {
    let out = polynum(&["verify", "counts", "--max-d", "2", "--max-n", "4"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["suite"], "counts");
    assert_eq!(doc["failed"], 0);
    assert!(doc["passed"].as_u64().unwrap() > 0);
}

#[test]
fn verify_expr_restricts_the_zoo() {
    let out = polynum(&[
        "verify", "counts", "--expr", "cube:2", "--max-n", "4",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["passed"], 1);
}

#[test]
fn exhausted_budget_exits_with_code_three() {
    let out = polynum_with_budget("10", &["verify", "counts", "--max-d", "3"]);
    assert_eq!(out.status.code(), Some(3));

    let bad = polynum_with_budget("points=", &["seq", "cube:2", "--n", "2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn lattice_export_lists_faces_with_exact_coordinates() {
    let out = polynum(&["lattice", "hypersimplex:4,2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["dim"], 3);
    assert_eq!(doc["ambient_dim"], 4);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 6);
    // 6 vertices, 12 edges, 8 triangles, and the solid itself.
    assert_eq!(doc["faces"].as_array().unwrap().len(), 27);
    // Exact rational coordinates, first vertex is (1,1,0,0).
    assert_eq!(doc["vertices"][0][0], serde_json::json!([1, 1]));
}

#[test]
fn triangulate_export_carries_apexes_and_shelling() {
    let out = polynum(&["triangulate", "cube:3", "--shelling"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["simplexes"].as_array().unwrap().len(), 6);
    assert_eq!(doc["shelling"]["order"].as_array().unwrap().len(), 6);
    let l_counts: Vec<u64> = doc["shelling"]["l_counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    // Glue-count histogram matches the Eulerian row 1, 4, 1: one seed,
    // four simplexes glued along one facet, one glued along two.
    assert_eq!(l_counts.len(), 6);
    assert_eq!(l_counts[0], 0);
    let hist = |v: u64| l_counts.iter().skip(1).filter(|&&l| l == v).count();
    assert_eq!((hist(1), hist(2)), (4, 1));
}

#[test]
fn identity_calculators_print_rows_and_checks() {
    let out = polynum(&["identity", "eulerian", "--d", "4"]);
    assert_eq!(stdout(&out), "1 11 11 1\n");

    let out = polynum(&["identity", "ballot", "--d1", "3", "--d2", "2"]);
    assert_eq!(stdout(&out), "1 3 1\n");

    let out = polynum(&["identity", "macmahon", "--a", "2", "--b", "2", "--c", "2", "--oracle"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "20 = 20 ok\n");

    let out = polynum(&["identity", "young", "--l", "3", "--m", "4", "--count-only"]);
    assert_eq!(stdout(&out), "462\n");

    // Oracle bounds are enforced as usage errors.
    let out = polynum(&["identity", "macmahon", "--a", "5", "--b", "5", "--c", "2", "--oracle"]);
    assert_eq!(out.status.code(), Some(2));
}

mod common;

use std::io::Write as _;

use aodesolve::cli::{self, parse};
use common::*;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["aodesolve"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn exit_codes() {
    let four = fixture("example_four.sys");
    assert_eq!(run(&["solve", &four]).0, 0);
    assert_eq!(run(&["solve", &fixture("inconsistent.sys")]).0, 3);
    assert_eq!(run(&["exists", &fixture("inconsistent.sys")]).0, 0);
    assert_eq!(run(&["solve", &four, "--max-degree", "1"]).0, 2);
    let two = temp_file("y' + y = 0\ny'' /= 0\n");
    assert_eq!(run(&["solve", two.path().to_str().unwrap()]).0, 3);
    let bad = temp_file("y' + sin = 0\n");
    let (code, _, err) = run(&["solve", bad.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1"));
    assert_eq!(run(&["solve", "/nonexistent/input.sys"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
}

#[test]
fn json_is_deterministic_and_versioned() {
    let three = fixture("example_three.sys");
    let args = ["solve", three.as_str(), "--json", "--format", "both"];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "solve");
    let polys: Vec<String> = doc["minimal_polynomial_systems"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|m| !m.is_null())
        .flat_map(|m| m["polynomials"].as_array().unwrap().iter().map(|p| p["polynomial"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(polys, ["y^2 - x^3", "z^10 - x^9"]);
}

#[test]
fn existence_output() {
    let f = temp_file("y*z - 1 = 0\n");
    let (code, out, _) = run(&["exists", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["existence"], "nonconstant-exists");
    assert_eq!(doc["witness"]["reason"]["kind"], "parametric");
}

#[test]
fn parse_print_round_trip() {
    let texts = [
        FOUR_EQUATIONS,
        THREE_EQUATIONS,
        TWO_EQUATIONS,
        "unknowns z, y\nz' - y = 0\ny /= 0",
        "y1'^2 + y2^3 = 0\n2*y1 - y1'*y2 = 0\ny1 /= 0",
        "y'''' - x*y = 0; y != 0",
        "y^(5) + 1/2*y = 3*x^2",
    ];
    for t in texts {
        let s = sys(t);
        let printed = parse::print(&s);
        let again = parse::parse(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        assert_eq!(again, s, "{printed}");
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let four = fixture("example_four.sys");
    let cfg = temp_file("# tight budget\nfuel = 2\n");
    let path = cfg.path().to_str().unwrap();
    let (code, _, err) = run(&["--config", path, "decompose", &four]);
    assert_eq!(code, 2);
    assert!(err.contains("fuel"));
    let (code, out, _) = run(&["--config", path, "--fuel", "10000", "dimension", &four]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1");
    let broken = temp_file("fuel 2\n");
    assert_eq!(run(&["--config", broken.path().to_str().unwrap(), "dimension", &four]).0, 1);
}

#[test]
fn puiseux_and_invert_commands() {
    let f = temp_file("y*y' - 1 = 0\n");
    let path = f.path().to_str().unwrap();
    let (code, out, _) = run(&["puiseux", path, "--order", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("residual: pass to order 4"), "{out}");
    let (code, out, _) = run(&["invert", path, "--components", "y"]);
    assert_eq!(code, 0);
    assert_eq!(sys(&out), sys("y' + y^3 = 0"));
}

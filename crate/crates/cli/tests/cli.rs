use std::io::Write;

use funceq_cli::{run, CliConfig, Command, Format, EXIT_INVALID, EXIT_LIMIT, EXIT_OK, EXIT_PARSE};

const S55: &str = "field u: t^2 - 3
a = [1/2, 1/2]
alpha = [(3+u)/6, (3-u)/6]
beta = [(3-u)/6, (3+u)/6]
";

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn exec(cfg: &CliConfig) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(cfg, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn config(command: Command, f: &tempfile::NamedTempFile, format: Format) -> CliConfig {
    let mut c = CliConfig::new(command, f.path());
    c.format = format;
    c
}

#[test]
fn analyze_json_values() {
    let f = file(S55);
    let (code, out, err) = exec(&config(Command::Analyze, &f, Format::Json));
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("precision used"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let degrees = v["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 3);
    for (d, c) in degrees.iter().zip(["1/2", "1/3", "1/4"]) {
        assert_eq!(d["classification"], "UNIQUE_MONOMIAL");
        assert_eq!(d["c_tilde"], c);
    }
}

#[test]
fn json_is_deterministic() {
    let f = file(S55);
    let a = exec(&config(Command::Analyze, &f, Format::Json)).1;
    let b = exec(&config(Command::Analyze, &f, Format::Json)).1;
    assert_eq!(a, b);
}

#[test]
fn text_and_json_agree() {
    let f = file("a = [1, 1, -1]\nalpha = [2, 1, 3]\nbeta = [1, 3, 4]\n");
    let json = exec(&config(Command::Analyze, &f, Format::Json)).1;
    let text = exec(&config(Command::Analyze, &f, Format::Text)).1;
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for d in v["degrees"].as_array().unwrap() {
        let line = format!("degree {}: {}", d["p"], d["classification"].as_str().unwrap());
        assert!(text.contains(&line), "missing `{line}`");
        let t: Vec<&str> = d["T"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
        assert!(text.contains(&format!("T = [{}]", t.join(", "))));
        if let Some(c) = d["c_tilde"].as_str() {
            assert!(text.contains(&format!("c_tilde = {c}")));
        }
    }
    assert!(text.contains("degree 1: SYNTHESIS_REQUIRED"));
    assert!(text.contains("kernel witnesses: (0)"));
}

#[test]
fn validate_reports_degenerate_row() {
    let f = file("a = [1, 1]\nalpha = [1, 2]\nbeta = [-1, 3]\n");
    let (code, out, _) = exec(&config(Command::Validate, &f, Format::Text));
    assert_eq!(code, EXIT_INVALID);
    assert!(out.contains("DegenerateRow(1)"));
    let (code, out, err) = exec(&config(Command::Analyze, &f, Format::Json));
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("validation"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["violations"][0]["kind"], "DegenerateRow");
}

#[test]
fn validate_ok() {
    let f = file(S55);
    let (code, out, _) = exec(&config(Command::Validate, &f, Format::Json));
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"ok\": true"));
}

#[test]
fn verify_holds_and_fails() {
    let f = file(&format!("{S55}f = [0, 0, 1]\nF = [0, 0, 0, 1/3]\n"));
    let (code, out, _) = exec(&config(Command::Verify, &f, Format::Text));
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "identity holds");
    let g = file(&format!("{S55}f = [0, 0, 1]\nF = [0, 0, 0, 1/4]\n"));
    let (code, out, _) = exec(&config(Command::Verify, &g, Format::Text));
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(out.trim(), "identity fails");
}

#[test]
fn parse_error_exit_code() {
    let f = file("a = [1, 1]\nalpha = [1, u]\nbeta = [2, 3]\n");
    let (code, _, err) = exec(&config(Command::Analyze, &f, Format::Text));
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains(":2:13: UnknownSymbol"), "{err}");
}

#[test]
fn reducible_field_is_an_input_error() {
    let f = file("field u: t^2 - 4\na = [1]\nalpha = [u]\nbeta = [1]\n");
    assert_eq!(exec(&config(Command::Analyze, &f, Format::Text)).0, EXIT_PARSE);
}

#[test]
fn unsupported_degree_exit_code() {
    let f = file("field u: t^9 - 2\na = [1]\nalpha = [u]\nbeta = [1]\n");
    assert_eq!(exec(&config(Command::Analyze, &f, Format::Text)).0, EXIT_LIMIT);
}

#[test]
fn max_degree_option() {
    let f = file(S55);
    let mut c = config(Command::Analyze, &f, Format::Json);
    c.max_degree = Some(1);
    let v: serde_json::Value = serde_json::from_str(&exec(&c).1).unwrap();
    assert_eq!(v["degrees"].as_array().unwrap().len(), 1);
}

#[test]
fn missing_file() {
    let c = CliConfig::new(Command::Analyze, "/nonexistent/eq.txt");
    let (code, _, err) = exec(&c);
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("cannot read"));
}

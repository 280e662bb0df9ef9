//! `funceq` command-line driver, kept as a library so it can be tested
//! without spawning processes.

use std::io::Write;
use std::path::PathBuf;

use funceq_core::analysis::analyze_with;
use funceq_core::parser::{parse, parse_document};
use funceq_core::report::{render_json, render_text, render_validation_json, render_validation_text};
use funceq_core::{build_basis, validate, verify_identity, Error, PrecisionConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Validate,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub format: Format,
    pub max_degree: Option<usize>,
    pub precision_bits: u32,
    pub max_precision_bits: u32,
}

impl CliConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        let d = PrecisionConfig::default();
        CliConfig {
            command,
            input_path: input_path.into(),
            format: Format::Text,
            max_degree: None,
            precision_bits: d.initial_bits,
            max_precision_bits: d.max_bits,
        }
    }
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PreconditionFailed { validation: Some(_), .. } => EXIT_INVALID,
        Error::Parse(_) | Error::Reducible { .. } | Error::AmbiguousHint | Error::InvalidMinPoly(_) => EXIT_PARSE,
        Error::PrecisionExhausted { .. } | Error::UnsupportedDegree(_) => EXIT_LIMIT,
        _ => EXIT_INTERNAL,
    }
}

fn describe(e: &Error, path: &str) -> String {
    match e {
        Error::Parse(p) => format!("{path}:{}:{}: {}: {}", p.span.line, p.span.column, p.kind, p.message),
        other => format!("{path}: {other}"),
    }
}

/// Execute one command; the report goes to `out`, diagnostics to `err`.
pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match run_inner(config, out, err) {
        Ok(code) => code,
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PARSE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {}", describe(&e, &config.input_path.display().to_string()));
            if let Error::PreconditionFailed {
                validation: Some(v), ..
            } = &e
            {
                let _ = match config.format {
                    Format::Json => out.write_all(render_validation_json(v).as_bytes()),
                    Format::Text => out.write_all(render_validation_text(v).as_bytes()),
                };
            }
            exit_code(&e)
        }
    }
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn run_inner(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if config.precision_bits == 0 || config.precision_bits > config.max_precision_bits {
        return Err(Failure::Io(format!(
            "precision {} must be between 1 and the maximum {}",
            config.precision_bits, config.max_precision_bits
        )));
    }
    let text = std::fs::read_to_string(&config.input_path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", config.input_path.display())))?;
    match config.command {
        Command::Validate => {
            let spec = parse(&text)?;
            let report = validate(&spec);
            match config.format {
                Format::Json => out.write_all(render_validation_json(&report).as_bytes())?,
                Format::Text => out.write_all(render_validation_text(&report).as_bytes())?,
            }
            Ok(if report.ok { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Analyze => {
            let spec = parse(&text)?;
            let cfg = PrecisionConfig {
                initial_bits: config.precision_bits,
                max_bits: config.max_precision_bits,
            };
            let report = analyze_with(&spec, config.max_degree, &cfg)?;
            let basis = build_basis(&spec, &report)?;
            match config.format {
                Format::Json => out.write_all(render_json(&spec, &report, &basis).as_bytes())?,
                Format::Text => {
                    out.write_all(render_text(&spec, &report, &basis).as_bytes())?;
                    writeln!(out, "precision: {} bits", report.precision_used)?;
                }
            }
            writeln!(err, "precision used: {} bits", report.precision_used)?;
            Ok(EXIT_OK)
        }
        Command::Verify => {
            let doc = parse_document(&text)?;
            let (Some(f), Some(big_f)) = (&doc.f, &doc.big_f) else {
                return Err(Failure::Io(format!(
                    "{}: verify needs both `f = [...]` and `F = [...]`",
                    config.input_path.display()
                )));
            };
            let holds = verify_identity(&doc.spec, f, big_f);
            match config.format {
                Format::Json => writeln!(out, "{{\n  \"identity_holds\": {holds}\n}}")?,
                Format::Text => writeln!(out, "{}", if holds { "identity holds" } else { "identity fails" })?,
            }
            Ok(if holds { EXIT_OK } else { EXIT_INVALID })
        }
    }
}

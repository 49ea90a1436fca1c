//! `norden`: command-line front end for the exact geometry engine.
//!
//! Exit codes: 0 when every check passes, 1 on an identity or validation
//! failure, 2 on input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use norden_core::classifier::analyze;
use norden_core::curvature::{classify_section, riemann, sectional_curvature};
use norden_core::connection::levi_civita;
use norden_core::linalg::signature;
use norden_core::model_io::{generate_family, validation_messages, FamilyParams, ModelFile};
use norden_core::structure::{associated_metric, validate_structure, AcnModel};
use norden_core::{report, scalar, Error, Scalar};

#[derive(Parser)]
#[command(name = "norden", version, about = "Exact geometry of left-invariant almost contact structures with Norden metric")]
struct Cli {
    #[command(flatten)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Structured JSON output
    #[arg(long, global = true)]
    json: bool,
    /// Print verdicts only
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Lie algebra and structure axioms of a model file
    Validate { file: PathBuf },
    /// Compute every tensor, invariant and identity verdict
    Report { file: PathBuf },
    /// Generate the solvable example family and report on it
    Family {
        #[arg(long)]
        n: usize,
        /// Comma-separated rationals λ_1,…,λ_2n
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<String>,
        /// Write the generated model (JSON if the path ends in .json)
        #[arg(long)]
        emit_model: Option<PathBuf>,
    },
    /// Identity verdicts only
    Identities { file: PathBuf },
    /// Type and sectional curvature of the 2-section spanned by x and y
    Section {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<String>,
    },
}

enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Validation(_) => Failure::Check(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CliResult = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.output;
    let result = match cli.command {
        Command::Validate { file } => cmd_validate(&file, out),
        Command::Report { file } => load_valid(&file).and_then(|m| cmd_report(&m, out)),
        Command::Family { n, lambda, emit_model } => cmd_family(n, &lambda, emit_model.as_deref(), out),
        Command::Identities { file } => load_valid(&file).and_then(|m| cmd_identities(&m, out)),
        Command::Section { file, x, y } => load_valid(&file).and_then(|m| cmd_section(&m, &x, &y, out)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_file(path: &Path) -> Result<AcnModel, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file = ModelFile::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(file.to_model()?)
}

fn load_valid(path: &Path) -> Result<AcnModel, Failure> {
    let model = load_file(path)?;
    let messages = validation_messages(&model);
    if !messages.is_empty() {
        return Err(Error::Validation(messages).into());
    }
    Ok(model)
}

fn parse_vector(raw: &[String], what: &str) -> Result<Vec<Scalar>, Failure> {
    raw.iter()
        .map(|t| scalar::parse(t).ok_or_else(|| Failure::Input(format!("{what}: invalid rational `{t}`"))))
        .collect()
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn cmd_validate(path: &Path, out: Output) -> CliResult {
    let model = load_file(path)?;
    let algebra = model.algebra.validate();
    let structure = validate_structure(&model);
    let solvable = model.algebra.is_solvable().ok();
    let sig = signature(&model.g).ok();
    let assoc_sig = signature(&associated_metric(&model)).ok();
    let valid = algebra.is_valid() && structure.is_valid();
    if out.json {
        print_json(&json!({
            "name": model.name,
            "valid": valid,
            "algebra": algebra,
            "structure": structure,
            "solvable": solvable,
            "signature": sig,
            "associated_metric_signature": assoc_sig,
        }));
        return Ok(valid);
    }
    if !out.quiet {
        println!("model: {} (dim {})", model.name, model.dim());
        println!("lie algebra: {}", if algebra.is_valid() { "ok" } else { "INVALID" });
        if let Some(s) = solvable {
            println!("solvable: {s}");
        }
        if let (Some(s), Some(a)) = (sig, assoc_sig) {
            println!("signature of g: {s}; of associated metric: {a}");
        }
    }
    for check in &structure.checks {
        println!("{:<5} {} ({})", if check.passed { "pass" } else { "FAIL" }, check.name, check.description);
    }
    for message in algebra.messages().iter().chain(&structure.messages()) {
        println!("  {message}");
    }
    println!("{}", if valid { "valid" } else { "invalid" });
    Ok(valid)
}

fn cmd_report(model: &AcnModel, out: Output) -> CliResult {
    let r = analyze(model)?;
    if out.json && out.quiet {
        print_json(&json!({ "identity_verdicts": r.identity_verdicts, "all_applicable_pass": r.all_applicable_pass() }));
    } else if out.json {
        print!("{}", report::to_json(&r));
    } else if out.quiet {
        print!("{}", report::verdicts_text(&r));
    } else {
        print!("{}", report::to_text(&r));
    }
    Ok(r.all_applicable_pass())
}

fn cmd_identities(model: &AcnModel, out: Output) -> CliResult {
    let r = analyze(model)?;
    if out.json {
        print_json(&json!({
            "name": r.name,
            "is_f11": r.class_flags.is_f11,
            "identity_verdicts": r.identity_verdicts,
            "all_applicable_pass": r.all_applicable_pass(),
        }));
    } else {
        if !out.quiet {
            println!("model: {} (F11: {})", r.name, r.class_flags.is_f11);
        }
        print!("{}", report::verdicts_text(&r));
    }
    Ok(r.all_applicable_pass())
}

fn cmd_family(n: usize, lambda: &[String], emit: Option<&Path>, out: Output) -> CliResult {
    let lambda = parse_vector(lambda, "--lambda")?;
    let model = generate_family(&FamilyParams::new(n, lambda)?)?;
    if let Some(path) = emit {
        let file = ModelFile::from_model(&model);
        let text = if path.extension().is_some_and(|e| e == "json") { file.to_json() } else { file.to_text() };
        std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    cmd_report(&model, out)
}

fn cmd_section(model: &AcnModel, x: &[String], y: &[String], out: Output) -> CliResult {
    let x = parse_vector(x, "--x")?;
    let y = parse_vector(y, "--y")?;
    let class = classify_section(model, &x, &y)?;
    let conn = levi_civita(model)?;
    let pack = riemann(model, &conn)?;
    let k = sectional_curvature(model, &pack, &x, &y);
    if out.json {
        print_json(&json!({
            "section": class,
            "sectional_curvature": k.as_ref().ok().map(scalar::format),
            "error": k.as_ref().err().map(ToString::to_string),
        }));
    } else {
        println!("type: {}", class.kind);
        if !out.quiet {
            println!(
                "xi_section: {}  phi_holomorphic: {}  totally_real: {}",
                class.xi_section, class.phi_holomorphic, class.totally_real
            );
        }
        match &k {
            Ok(k) => println!("sectional curvature: {}", scalar::format(k)),
            Err(e) => println!("sectional curvature: undefined ({e})"),
        }
    }
    k.map(|_| true).map_err(Failure::from)
}

use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;
use essx_cli::corpus::verify_corpus;
use essx_cli::{parse_document, parse_range, run_command, RunOptions, VERBS};
use num_bigint::BigInt;

/// Exact computations with finitely generated abelian groups and essential
/// exactness.
#[derive(Parser, Debug)]
#[command(name = "essx", version)]
struct Cli {
    /// One of the verbs, or `verify-corpus`.
    verb: String,
    /// Document to read; standard input when absent.
    #[arg(long)]
    input: Option<String>,
    /// Degrees `LO..HI`, inclusive.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    range: Option<(i64, i64)>,
    /// Generator of the ideal for the torsion functor.
    #[arg(long, value_parser = parse_big)]
    ideal: Option<BigInt>,
    /// Largest scalar tried by witness searches.
    #[arg(long = "r-cap", value_parser = parse_big)]
    r_cap: Option<BigInt>,
    #[arg(long)]
    seed: Option<u64>,
    /// Include raw presentations next to canonical forms.
    #[arg(long)]
    verbose: bool,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

fn parse_big(s: &str) -> Result<BigInt, String> {
    BigInt::from_str(s).map_err(|_| format!("{s:?} is not an integer"))
}

fn read_input(path: Option<&str>) -> std::io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.verb == "verify-corpus" {
        let rep = verify_corpus(cli.seed.unwrap_or(0), cli.r_cap.as_ref());
        if cli.json {
            println!("{}", serde_json::to_string_pretty(&rep.to_json()).expect("reports serialize"));
        } else {
            for line in rep.lines() {
                println!("{line}");
            }
        }
        return ExitCode::from(rep.exit_code() as u8);
    }
    if !VERBS.contains(&cli.verb.as_str()) {
        eprintln!("essx: unknown verb {:?}; expected one of {} or verify-corpus", cli.verb, VERBS.join(", "));
        return ExitCode::from(2);
    }
    let text = match read_input(cli.input.as_deref()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("essx: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    let doc = match parse_document(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("essx: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions { range: cli.range, ideal: cli.ideal, r_cap: cli.r_cap, seed: cli.seed, verbose: cli.verbose };
    match run_command(&cli.verb, &doc, &opts) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json_string());
            } else {
                print!("{}", report.render_human());
            }
            for w in &report.warnings {
                eprintln!("essx: warning: {w}");
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("essx: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

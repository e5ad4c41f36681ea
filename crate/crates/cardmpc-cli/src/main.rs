//! Command-line front end: encode values, run protocols with traces,
//! verify correctness and security, and print the card-count tables.
//!
//! Exit codes: 0 on success or a passing verification, 1 when a
//! verification check fails, 2 on usage errors.

use std::error::Error;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use cardmpc::analysis::{
    count_cards, emit_tables, render_csv, render_text, verify_correctness, verify_security,
    VerifyMode, DEFAULT_BRANCH_CAP,
};
use cardmpc::deck::RandomSource;
use cardmpc::encodings::Scheme;
use cardmpc::protocols::{run_protocol, Protocol};

/// Name of the environment variable that overrides the exhaustive
/// branch cap.
const BRANCH_CAP_ENV: &str = "CARDMPC_BRANCH_CAP";

#[derive(Parser)]
#[command(
    name = "cardmpc",
    version,
    about = "Simulate, verify, and count cards for card-based secure computation over Z/nZ",
    long_about = "Simulate, verify, and count cards for card-based secure computation over Z/nZ.\n\n\
        This is a study harness: secret inputs are typed on the command line and the\n\
        simulator can look at face-down cards. Do not mistake it for a deployment of\n\
        anything."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the card layout of a value under a scheme (face-up view)
    Encode(EncodeArgs),
    /// Execute a protocol and print its output and peak card usage
    Run(RunArgs),
    /// Check a protocol for correctness and security
    Verify(VerifyArgs),
    /// Print the card-count tables
    Counts(CountsArgs),
}

#[derive(Args)]
struct EncodeArgs {
    /// Modulus of the ring
    #[arg(long)]
    n: u64,
    /// Value to encode, in [0, n)
    #[arg(long)]
    a: u64,
    /// Encoding scheme: direct, binary, or crt
    #[arg(long)]
    scheme: String,
}

#[derive(Args)]
#[command(group(ArgGroup::new("randomness").required(true).args(["seed", "script"])))]
struct RunArgs {
    /// Protocol: five-card-trick, copy, add, or mult
    protocol: String,
    /// Encoding scheme: direct, binary, or crt
    #[arg(long)]
    scheme: String,
    /// Modulus of the ring
    #[arg(long)]
    n: u64,
    /// Secret inputs, comma separated (simulation only; see --help)
    #[arg(long, value_delimiter = ',')]
    inputs: Vec<u64>,
    /// Draw shuffle offsets from this seed
    #[arg(long)]
    seed: Option<u64>,
    /// Use these exact shuffle offsets, comma separated
    #[arg(long, value_delimiter = ',')]
    script: Option<Vec<usize>>,
    /// Reuse freed cards across crt multiplication parts (the default)
    #[arg(long, overrides_with = "unoptimized")]
    optimized: bool,
    /// Hold consumed-input remains dead on the table instead of reusing them
    #[arg(long, overrides_with = "optimized")]
    unoptimized: bool,
    /// Print the visible trace as JSON lines
    #[arg(long)]
    trace: bool,
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "sampled"])))]
struct VerifyArgs {
    /// Protocol: five-card-trick, copy, add, or mult
    protocol: String,
    /// Encoding scheme: direct, binary, or crt
    #[arg(long)]
    scheme: String,
    /// Modulus of the ring
    #[arg(long)]
    n: u64,
    /// Walk every input and every shuffle offset
    #[arg(long)]
    exhaustive: bool,
    /// Run this many seeded trials instead
    #[arg(long, value_name = "TRIALS")]
    sampled: Option<u64>,
    /// Reuse freed cards across crt multiplication parts (the default)
    #[arg(long, overrides_with = "unoptimized")]
    optimized: bool,
    /// Hold consumed-input remains dead on the table instead of reusing them
    #[arg(long, overrides_with = "optimized")]
    unoptimized: bool,
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
}

#[derive(Args)]
struct CountsArgs {
    #[arg(long, default_value = "text", value_parser = ["text", "csv", "json"])]
    format: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Box<dyn Error>> {
    match cli.command {
        Command::Encode(args) => cmd_encode(args),
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Counts(args) => cmd_counts(args),
    }
}

fn parse_scheme(name: &str, n: u64) -> Result<Scheme, Box<dyn Error>> {
    Ok(Scheme::from_name(name, n)?
        .ok_or_else(|| format!("unknown scheme {name:?}; use direct, binary, or crt"))?)
}

fn parse_protocol(name: &str) -> Result<Protocol, Box<dyn Error>> {
    Protocol::from_name(name)
        .ok_or_else(|| format!("unknown protocol {name:?}; use five-card-trick, copy, add, or mult").into())
}

fn branch_cap() -> Result<u64, Box<dyn Error>> {
    match std::env::var(BRANCH_CAP_ENV) {
        Ok(raw) => Ok(raw
            .parse()
            .map_err(|_| format!("{BRANCH_CAP_ENV} must be an integer, got {raw:?}"))?),
        Err(_) => Ok(DEFAULT_BRANCH_CAP),
    }
}

fn cmd_encode(args: EncodeArgs) -> Result<ExitCode, Box<dyn Error>> {
    let scheme = parse_scheme(&args.scheme, args.n)?;
    let commitment = scheme.encode(args.a)?;
    eprintln!("note: face-up inspection view; a live commitment stays face-down");
    println!("{}", commitment.symbol_string());
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, Box<dyn Error>> {
    let protocol = parse_protocol(&args.protocol)?;
    let scheme = parse_scheme(&args.scheme, args.n)?;
    let rng = match (&args.seed, &args.script) {
        (Some(seed), None) => RandomSource::seeded(*seed),
        (None, Some(script)) => RandomSource::scripted(script.clone()),
        _ => unreachable!("clap enforces exactly one"),
    };
    let optimized = !args.unoptimized;
    let run = run_protocol(protocol, &scheme, &args.inputs, rng, optimized)?;

    let outputs = run.output_values()?;
    if args.format == "json" {
        let mut record = serde_json::json!({
            "protocol": protocol,
            "scheme": scheme,
            "inputs": run.inputs,
            "outputs": outputs,
            "peak_cards": run.peak_cards(),
        });
        if let Some(result) = run.revealed_result {
            record["result"] = serde_json::json!(result);
        }
        if args.trace {
            record["trace"] = serde_json::Value::Array(run.trace.to_json_records());
        }
        println!("{record}");
    } else {
        if args.trace {
            print!("{}", run.trace.to_jsonl());
        }
        match run.revealed_result {
            Some(result) => println!("output: {result}"),
            None => {
                let rendered: Vec<String> = outputs.iter().map(u64::to_string).collect();
                println!("output: {}", rendered.join(", "));
            }
        }
        println!("peak cards: {}", run.peak_cards());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Box<dyn Error>> {
    let protocol = parse_protocol(&args.protocol)?;
    let scheme = parse_scheme(&args.scheme, args.n)?;
    let mode = match args.sampled {
        Some(trials) => VerifyMode::Sampled { trials },
        None => VerifyMode::Exhaustive,
    };
    let cap = branch_cap()?;
    let optimized = !args.unoptimized;

    let mut report = verify_correctness(protocol, &scheme, mode, optimized, cap)?;
    let security = verify_security(protocol, &scheme, mode, optimized, cap)?;
    report.security = security.security;

    if args.format == "json" {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        let verdict = |pass: bool| if pass { "PASS" } else { "FAIL" };
        let correctness = report.correctness.as_ref().expect("correctness was checked");
        println!("correctness: {} ({} branches)", verdict(correctness.passed()), report.branches);
        let security = report.security.as_ref().expect("security was checked");
        println!("security: {} ({} branches)", verdict(security.passed()), report.branches);
        if !report.passed() {
            eprintln!("{}", serde_json::to_string(&report)?);
        }
        if let Ok(cards) = count_cards(&scheme, protocol, optimized) {
            println!("cards required: {cards}");
        }
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_counts(args: CountsArgs) -> Result<ExitCode, Box<dyn Error>> {
    let tables = emit_tables();
    match args.format.as_str() {
        "csv" => print!("{}", render_csv(&tables)),
        "json" => println!("{}", serde_json::to_string_pretty(&tables)?),
        _ => print!("{}", render_text(&tables)),
    }
    Ok(ExitCode::SUCCESS)
}

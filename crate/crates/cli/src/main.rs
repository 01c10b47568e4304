mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::anyhow;
use clap::{Parser, Subcommand};
use serde_json::json;
use torsorlab::limits::Limits;

use commands::{CliError, FanReport};
use report::{sha256_hex, Report};

/// Exact invariants behind torsor descent: fans, group cohomology, local
/// symbols and an integral Brauer-Manin obstruction.
#[derive(Parser, Debug)]
#[command(name = "torsorlab", version)]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Comma-separated caps such as `group_order=48,cochain_dim=100000`.
    /// Overrides TORSORLAB_LIMITS.
    #[arg(long, global = true)]
    limits: Option<String>,

    /// Cap on group orders. Overrides --limits.
    #[arg(long, global = true)]
    max_group_order: Option<usize>,

    /// Cap on bar cochain dimensions. Overrides --limits.
    #[arg(long, global = true)]
    max_cochain_dim: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Span and smoothness, class group, Cox data and Galois orbits of a fan file.
    Fan {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "all")]
        report: FanReport,
    },
    /// H^n(G, M) for n in 0..=3.
    Cohom {
        /// trivial, cyclic:m, sym:n, product:A,B or perm:[..];[..]
        #[arg(long)]
        group: String,
        /// trivial, regular or induced:<comma-separated subgroup ids>
        #[arg(long, default_value = "trivial")]
        module: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=3))]
        degree: u8,
        /// Use the periodic resolution of cyclic:m instead of the bar complex.
        #[arg(long)]
        cyclic: bool,
    },
    /// H^2 of the binorm character module over G1 x G2.
    Binorm {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// The integral point example: conditions, local invariants, search and Pic.
    Example {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = torsorlab::brauer::DEFAULT_SEARCH_BOUND)]
        search_bound: i64,
        #[arg(long, default_value_t = torsorlab::brauer::DEFAULT_PRIME_BOUND)]
        prime_bound: u64,
        #[arg(long, default_value_t = torsorlab::local::DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Geometric invariants of a multinorm variety.
    Multinorm {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees_k: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees_l: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        /// The constant c, a nonzero rational.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c: String,
    },
}

fn resolve_limits(cli: &Cli) -> Result<Limits, CliError> {
    let mut limits = Limits::default();
    if let Ok(env) = std::env::var("TORSORLAB_LIMITS") {
        limits = limits.with_overrides(&env).map_err(|e| CliError::input(anyhow!("TORSORLAB_LIMITS: {e}")))?;
    }
    if let Some(text) = &cli.limits {
        limits = limits.with_overrides(text).map_err(|e| CliError::input(anyhow!("--limits: {e}")))?;
    }
    if let Some(n) = cli.max_group_order {
        limits.group_order = n;
    }
    if let Some(n) = cli.max_cochain_dim {
        limits.cochain_dim = n;
    }
    Ok(limits)
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let limits = resolve_limits(cli)?;
    let limits_json = json!({ "group_order": limits.group_order, "cochain_dim": limits.cochain_dim });
    let start = Instant::now();
    let (name, arguments, digest_input, output) = match &cli.command {
        Command::Fan { input, report } => {
            let text = std::fs::read_to_string(input).map_err(|e| CliError::input(anyhow!("cannot read {input}: {e}")))?;
            let args = json!({ "input": input, "report": format!("{report:?}").to_lowercase() });
            let out = commands::fan(&text, input, *report)?;
            ("fan", args, text.into_bytes(), out)
        }
        Command::Cohom { group, module, degree, cyclic } => {
            let method = if *cyclic { "cyclic-periodic" } else { "bar" };
            let args = json!({ "group": group, "module": module, "degree": degree, "method": method, "limits": limits_json });
            let out = commands::cohom(group, module, *degree as usize, *cyclic, &limits)?;
            ("cohom", args.clone(), args.to_string().into_bytes(), out)
        }
        Command::Binorm { g1, g2 } => {
            let args = json!({ "g1": g1, "g2": g2, "limits": limits_json });
            let out = commands::binorm(g1, g2, &limits)?;
            ("binorm", args.clone(), args.to_string().into_bytes(), out)
        }
        Command::Example { p, q, search_bound, prime_bound, precision } => {
            let args = json!({
                "p": p, "q": q, "search_bound": search_bound, "prime_bound": prime_bound, "precision": precision,
            });
            let out = commands::example(*p, *q, *search_bound, *prime_bound, *precision)?;
            ("example", args.clone(), args.to_string().into_bytes(), out)
        }
        Command::Multinorm { degrees_k, degrees_l, exponents, c } => {
            let args = json!({ "degrees_k": degrees_k, "degrees_l": degrees_l, "exponents": exponents, "c": c });
            let out = commands::multinorm(degrees_k.clone(), degrees_l.clone(), exponents.clone(), c)?;
            ("multinorm", args.clone(), args.to_string().into_bytes(), out)
        }
    };
    Ok(Report {
        command: name.to_string(),
        arguments,
        input_digest: sha256_hex(&digest_input),
        output,
        wall_time_ms: start.elapsed().as_secs_f64() * 1000.0,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(CliError { code, error }) => {
            if cli.json {
                println!("{}", json!({ "error": format!("{error:#}"), "exit_code": code }));
            }
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}

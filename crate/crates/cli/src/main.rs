mod commands;
mod input;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Version of the `--format json` envelope.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "semiflow", version, about = "Flow-generated functions, balanced collections and stable quadratic relations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for verification sweeps (0 = all cores).
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Symbolic,
    Numeric,
    Tropical,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the two collections of a pair file are balanced.
    CheckBalance { pair: PathBuf },

    /// List the feasible nested matchings of a p-subset of [p+q].
    EnumerateMatchings {
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
        /// The subset, e.g. `1,3,5`.
        set: String,
    },

    /// Check a quadratic relation on a network for every placement of [p+q].
    Verify {
        /// `family:<name>` (e.g. `family:quadruple`) or a collection-pair file.
        relation: String,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// A network file or `halfgrid:N`; defaults to the half-grid on p+q sources.
        #[arg(long)]
        network: Option<String>,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Build the separating gadget network for an unbalanced pair.
    Counterexample {
        pair: PathBuf,
        /// Write the gadget network here instead of appending it to the report.
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Print a family member as a collection-pair file, or list the members.
    GenFamily {
        /// e.g. `triple`, `interval-exchange:5:4:2,4`, `groebner:3:2:2,4,5:1`.
        spec: Option<String>,
        #[arg(long)]
        list: bool,
        /// Largest p+q listed by `--list`.
        #[arg(long, default_value_t = 5)]
        max_total: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Expand f(A) on the half-grid as a Laurent polynomial in interval values.
    Laurent {
        #[arg(short)]
        n: usize,
        set: String,
    },

    /// Print the path matrix of a network over the integers, row-major.
    Lindstrom {
        #[arg(long)]
        network: String,
        /// Comma-separated integer weights, one per weight slot.
        #[arg(long, conflicts_with = "seed")]
        weights: Option<String>,
        /// Use random small integer weights from this seed.
        #[arg(long)]
        seed: Option<u64>,
    },

    /// List the flows from a source set; flag flows unless `--sinks` is given.
    Flows {
        #[arg(long)]
        network: String,
        sources: String,
        #[arg(long)]
        sinks: Option<String>,
    },

    /// Audit N(ξ) = 2^d(ξ) and exchange invariance for every double flow of one instance.
    DoubleflowAudit {
        /// A network file or `halfgrid:N`; split automatically.
        #[arg(long)]
        network: String,
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
        /// The fixed extra sources X.
        #[arg(long, default_value = "")]
        x: String,
        /// The image Y of [p+q]; defaults to the smallest p+q sources outside X.
        #[arg(long)]
        y: Option<String>,
        set: String,
    },
}

/// What a subcommand produced: the text report, the JSON payload and whether
/// the answer was positive.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

fn run(cli: Cli) -> anyhow::Result<(&'static str, Report)> {
    let jobs = cli.jobs;
    Ok(match cli.command {
        Command::CheckBalance { pair } => ("check-balance", commands::check_balance(&pair)?),
        Command::EnumerateMatchings { p, q, set } => ("enumerate-matchings", commands::enumerate_matchings(p, q, &set)?),
        Command::Verify {
            relation,
            mode,
            network,
            trials,
            seed,
        } => (
            "verify",
            verify::run(&relation, mode, network.as_deref(), trials, seed, jobs)?,
        ),
        Command::Counterexample { pair, output } => ("counterexample", commands::counterexample(&pair, output.as_deref())?),
        Command::GenFamily {
            spec,
            list,
            max_total,
            output,
        } => ("gen-family", commands::gen_family(spec.as_deref(), list, max_total, output.as_deref())?),
        Command::Laurent { n, set } => ("laurent", commands::laurent(n, &set)?),
        Command::Lindstrom { network, weights, seed } => {
            ("lindstrom", commands::lindstrom(&network, weights.as_deref(), seed)?)
        }
        Command::Flows { network, sources, sinks } => ("flows", commands::flows(&network, &sources, sinks.as_deref())?),
        Command::DoubleflowAudit {
            network,
            p,
            q,
            x,
            y,
            set,
        } => (
            "doubleflow-audit",
            commands::doubleflow_audit(&network, p, q, &x, y.as_deref(), &set)?,
        ),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok((command, report)) => {
            match format {
                Format::Text => print!("{}", report.text),
                Format::Json => {
                    let mut out = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": command,
                        "ok": report.ok,
                    });
                    if let (Value::Object(out), Value::Object(extra)) = (&mut out, report.json) {
                        out.extend(extra);
                    }
                    println!("{}", serde_json::to_string_pretty(&out).expect("json values serialize"));
                }
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

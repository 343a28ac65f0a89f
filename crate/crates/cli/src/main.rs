mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "dominoes", version, about = "Domino tilings of cubiculated regions")]
struct Cli {
    /// Print the result as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of tilings of a region.
    Count {
        #[arg(long)]
        region: String,
        #[arg(long, value_enum, default_value_t = CountMethod::Enum)]
        method: CountMethod,
    },
    /// Flip components of all tilings of a region.
    Components {
        #[arg(long)]
        region: String,
        /// Stop after enumerating this many tilings.
        #[arg(long, default_value_t = 20_000_000)]
        budget: u64,
    },
    /// Twist of a tiling read from a file.
    Twist {
        #[arg(long)]
        tiling: String,
    },
    /// Defect: twist-0 minus twist-1 tilings.
    Defect {
        #[arg(long)]
        region: String,
        #[arg(long, value_enum, default_value_t = DefectMethod::Det)]
        method: DefectMethod,
        /// Enumeration limit for `--method enum`.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Export the transfer matrices of a base.
    TransferExport {
        #[arg(long)]
        base: String,
        /// Output file; JSON goes to stdout when omitted.
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
    },
    /// Dominant eigenvalues of the transfer matrices.
    Spectral {
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Smallest even vertical padding making two tilings flip-connected.
    Padding {
        #[arg(long)]
        t0: String,
        #[arg(long)]
        t1: String,
        #[arg(long, default_value_t = 4)]
        max_m: usize,
        /// Limit on states visited per search.
        #[arg(long, default_value_t = 20_000_000)]
        budget: u64,
    },
    /// Generator tilings for a box base with its serpentine path.
    Generators {
        #[arg(long)]
        base: String,
        /// Largest half height tried.
        #[arg(long, default_value_t = 16)]
        cap: usize,
        /// Write the generator tilings to this file as a text bundle.
        #[arg(long)]
        out: Option<String>,
    },
    /// Flux of a plug, or the flux set, of a non-respecting domino.
    Flux {
        #[arg(long)]
        base: String,
        /// Two base cells, e.g. `(0,0,0)-(0,1,0)`.
        #[arg(long)]
        domino: String,
        /// Plug mask; the whole flux set is listed when omitted.
        #[arg(long)]
        plug: Option<String>,
    },
    /// Fold a tiling from one box base onto another along their paths.
    Fold {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        tiling: String,
        /// Map a tiling over `--to` back over `--from`.
        #[arg(long)]
        unfold: bool,
    },
    /// Draw a tiling floor by floor.
    Render {
        #[arg(long)]
        tiling: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountMethod {
    Enum,
    Transfer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DefectMethod {
    Det,
    Enum,
    Transfer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Json,
    Binary,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Indeterminate,
    Error,
}

#[derive(Serialize)]
struct CommandResult {
    command: String,
    region: String,
    status: Status,
    payload: serde_json::Value,
    timing_ms: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let name = command_name(&cli.command);
    let start = Instant::now();
    let result = run(&cli.command);
    let timing_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(out) => {
            let code = if out.indeterminate { 2 } else { 0 };
            if cli.json {
                let r = CommandResult {
                    command: name.into(),
                    region: out.region,
                    status: if out.indeterminate { Status::Indeterminate } else { Status::Ok },
                    payload: out.payload,
                    timing_ms,
                };
                println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            if cli.json {
                let r = CommandResult {
                    command: name.into(),
                    region: String::new(),
                    status: Status::Error,
                    payload: serde_json::json!({ "message": format!("{e:#}") }),
                    timing_ms,
                };
                println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(1)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Count { .. } => "count",
        Command::Components { .. } => "components",
        Command::Twist { .. } => "twist",
        Command::Defect { .. } => "defect",
        Command::TransferExport { .. } => "transfer-export",
        Command::Spectral { .. } => "spectral",
        Command::Padding { .. } => "padding",
        Command::Generators { .. } => "generators",
        Command::Flux { .. } => "flux",
        Command::Fold { .. } => "fold",
        Command::Render { .. } => "render",
    }
}

fn run(c: &Command) -> anyhow::Result<Outcome> {
    match c {
        Command::Count { region, method } => {
            commands::count(region, matches!(method, CountMethod::Transfer))
        }
        Command::Components { region, budget } => commands::components(region, *budget),
        Command::Twist { tiling } => commands::twist(tiling),
        Command::Defect { region, method, limit } => {
            let m = match method {
                DefectMethod::Det => commands::DefectMethod::Det,
                DefectMethod::Enum => commands::DefectMethod::Enum,
                DefectMethod::Transfer => commands::DefectMethod::Transfer,
            };
            commands::defect(region, m, *limit)
        }
        Command::TransferExport { base, out, format } => {
            commands::transfer_export(base, out.as_deref(), matches!(format, ExportFormat::Binary))
        }
        Command::Spectral { base, seed } => commands::spectral(base, *seed),
        Command::Padding { t0, t1, max_m, budget } => commands::padding(t0, t1, *max_m, *budget),
        Command::Generators { base, cap, out } => commands::generators(base, *cap, out.as_deref()),
        Command::Flux { base, domino, plug } => commands::flux(base, domino, plug.as_deref()),
        Command::Fold { from, to, tiling, unfold } => commands::fold(from, to, tiling, *unfold),
        Command::Render { tiling } => commands::render(tiling),
    }
}

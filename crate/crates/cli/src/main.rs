use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tangrass::fixture::Fixture;
use tangrass::verify::{self, Mode, RunOptions, REGISTRY};
use tangrass::Error;

/// Exit status of a run whose report fails.
const FAIL: u8 = 1;
/// Exit status of a usage or input error.
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "tangrass", version, about = "Exact verification campaigns over truncated polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one campaign and print its JSON report.
    Run {
        /// Statement id, see `tangrass list`.
        id: String,
        #[arg(long)]
        nu: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock milliseconds in the report.
        #[arg(long)]
        timing: bool,
    },
    /// List every campaign with its statement and defaults.
    List,
    /// Evaluate a map or ratio on a fixture configuration.
    Eval {
        fixture: PathBuf,
        /// Map name; defaults to the fixture's `map` field.
        #[arg(long)]
        map: Option<String>,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::parse(s).map_err(|e| e.to_string())
}

fn usage(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", e);
    ExitCode::from(USAGE)
}

fn run(
    id: &str,
    opts: RunOptions,
    jobs: Option<usize>,
    out: Option<PathBuf>,
) -> ExitCode {
    let campaign = match verify::find(id) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let report = match pool.install(|| campaign.run(&opts)) {
        Ok(r) => r,
        Err(e @ (Error::Unsupported(_) | Error::Invalid(_))) => return usage(e),
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(FAIL);
        }
    };
    let json = report.to_json();
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, format!("{}\n", json)) {
                eprintln!("error: cannot write {}: {}", path.display(), e);
                return ExitCode::from(FAIL);
            }
        }
        None => println!("{}", json),
    }
    eprintln!("{}", report.summary());
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(FAIL)
    }
}

fn list() -> ExitCode {
    for c in REGISTRY {
        let modes: Vec<&str> = c
            .modes
            .iter()
            .map(|m| match m {
                Mode::Random => "random",
                Mode::Symbolic => "symbolic",
            })
            .collect();
        println!(
            "{:<15} nu={} n={} trials={} modes={}  {}",
            c.id,
            c.nu,
            c.n,
            c.trials,
            modes.join(","),
            c.statement
        );
    }
    ExitCode::SUCCESS
}

fn eval(path: PathBuf, map: Option<String>) -> ExitCode {
    let src = match fs::read_to_string(&path) {
        Ok(s) => s,
        Err(e) => return usage(format!("cannot read {}: {}", path.display(), e)),
    };
    let result = Fixture::parse(&src).and_then(|f| f.eval(map.as_deref()));
    match result {
        Ok(s) => {
            println!("{}", s);
            ExitCode::SUCCESS
        }
        Err(e @ Error::Parse { .. }) => usage(format!("{}: {}", path.display(), e)),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(FAIL)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            id,
            nu,
            n,
            trials,
            seed,
            mode,
            jobs,
            out,
            timing,
        } => run(
            &id,
            RunOptions {
                nu,
                n,
                trials,
                seed,
                mode,
                timing,
            },
            jobs,
            out,
        ),
        Command::List => list(),
        Command::Eval { fixture, map } => eval(fixture, map),
    }
}

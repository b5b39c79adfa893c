use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use singulus_cli::commands::{self, EXIT_INPUT};
use singulus_cli::{Format, InspectArgs, Outcome};

#[derive(Parser)]
#[command(name = "singulus", version, about = "Betti-table obstructions for projective hypersurfaces")]
struct Cli {
    /// Worker threads for the oracle (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every rule on a Betti-table document.
    AnalyzeBetti {
        /// Path to the JSON document, or `-` for standard input.
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Compute Hilbert data and Betti numbers of a polynomial and compare them.
    InspectPoly {
        /// File holding the polynomial (`-` for standard input).
        #[arg(required_unless_present = "expr", conflicts_with = "expr")]
        file: Option<PathBuf>,
        /// The polynomial itself, e.g. "x0*x1*x2 + x3^3".
        #[arg(long)]
        expr: Option<String>,
        /// Work in P^n, i.e. with variables x0..xn (default: highest index used).
        #[arg(long)]
        n: Option<usize>,
        /// Largest internal degree of the Betti computation.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Prime for the modular computations; repeat for several.
        #[arg(long = "prime")]
        primes: Vec<u64>,
        /// Last degree of the Hilbert function window.
        #[arg(long)]
        window: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Random lines tried by the repeated-factor check.
        #[arg(long, default_value_t = singulus_core::polycore::DEFAULT_SQUAREFREE_TRIALS)]
        squarefree_trials: usize,
    },
    /// Print the Betti table of a smooth hypersurface of degree d in P^n.
    SmoothTable { n: usize, d: u64 },
    /// Decide when HSPOG tables force a singular locus of dimension n - 2.
    Hspog {
        n: usize,
        d: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(match cli.command {
        Command::AnalyzeBetti { file, format } => commands::analyze_betti(&read_input(&file)?, format.into()),
        Command::InspectPoly {
            file,
            expr,
            n,
            max_degree,
            primes,
            window,
            format,
            squarefree_trials,
        } => {
            let text = match (expr, file) {
                (Some(e), _) => e,
                (None, Some(f)) => read_input(&f)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            commands::inspect_poly(&InspectArgs {
                text,
                n,
                max_degree,
                primes,
                window,
                format: format.into(),
                squarefree_trials,
            })
        }
        Command::SmoothTable { n, d } => commands::smooth_table(n, d),
        Command::Hspog { n, d, format } => commands::hspog(n, d, format.into()),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT as u8),
            };
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let _ = io::stdout().write_all(outcome.stdout.as_bytes());
            let _ = io::stderr().write_all(outcome.stderr.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}

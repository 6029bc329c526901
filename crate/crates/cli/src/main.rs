//! `sandpile-lab` command line.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser)]
#[command(
    name = "sandpile-lab",
    version,
    about = "Sandpiles on complete split graphs, Schröder words and q,t-polynomials"
)]
struct Cli {
    /// Worker threads; `SANDPILE_LAB_JOBS` takes precedence when set.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List objects of one shape in canonical order.
    Enumerate(EnumerateArgs),
    /// All statistics of a configuration, word, polyomino or ITC sequence.
    Stats(StatsArgs),
    /// A q,t-polynomial by one or all methods.
    Poly(PolyArgs),
    /// Run a verification suite over a range of shapes.
    Verify(VerifyArgs),
    /// Write SVG figures.
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    Recurrent,
    Words,
    Polyominoes,
    ItcSequences,
    Quasistable,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum ListFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'd', default_value_t = 0)]
    pub d: usize,
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(long, value_enum, default_value_t = ListFormat::Text)]
    pub format: ListFormat,
}

#[derive(Args)]
pub struct StatsArgs {
    /// A configuration `a1,..,an;b1,..,bd`, or `-` to read one item per line from stdin.
    #[arg(conflicts_with = "word", required_unless_present = "word")]
    pub input: Option<String>,
    #[arg(short = 'n')]
    pub n: Option<usize>,
    #[arg(short = 'd')]
    pub d: Option<usize>,
    /// A Schröder word over U, H, D.
    #[arg(long)]
    pub word: Option<String>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Method {
    Cti,
    Itc,
    Schroder,
    Egge,
    ItcSum,
    All,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum PolyFormat {
    Json,
    Latex,
}

#[derive(Args)]
pub struct PolyArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(short = 'd', default_value_t = 0)]
    pub d: usize,
    #[arg(long, value_enum, default_value_t = Method::Schroder)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = PolyFormat::Json)]
    pub format: PolyFormat,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// bijections, theorems, cycle-lemma, conjectures, appendix or all.
    pub suite: String,
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    #[arg(long, default_value_t = 2)]
    pub max_d: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Args)]
pub struct RenderArgs {
    #[command(subcommand)]
    pub target: RenderTarget,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Overlay {
    Cti,
    Itc,
}

#[derive(Subcommand)]
pub enum RenderTarget {
    /// The sawtooth polyomino of a sorted recurrent configuration.
    Polyomino {
        config: String,
        #[arg(short = 'n')]
        n: Option<usize>,
        #[arg(short = 'd')]
        d: Option<usize>,
        #[arg(long, value_enum, value_delimiter = ',')]
        overlay: Vec<Overlay>,
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
    },
    /// A Schröder path.
    Path {
        word: String,
        #[arg(long)]
        peaks: bool,
        #[arg(long)]
        bounce: bool,
        #[arg(short, long)]
        output: Option<std::path::PathBuf>,
    },
    /// One polyomino per sorted recurrent configuration of a shape.
    Batch {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'd', default_value_t = 0)]
        d: usize,
        #[arg(long, value_enum, value_delimiter = ',')]
        overlay: Vec<Overlay>,
        #[arg(long)]
        out_dir: std::path::PathBuf,
    },
}

fn jobs(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    match std::env::var("SANDPILE_LAB_JOBS") {
        Ok(v) if !v.trim().is_empty() => match v.trim().parse::<usize>() {
            Ok(j) if j > 0 => Ok(Some(j)),
            _ => Err(CliError::Usage(format!(
                "SANDPILE_LAB_JOBS must be a positive integer, got '{v}'"
            ))),
        },
        _ => match flag {
            Some(0) => Err(CliError::Usage("--jobs must be positive".into())),
            j => Ok(j),
        },
    }
}

fn configure_pool(jobs: Option<usize>) -> Result<(), CliError> {
    #[cfg(feature = "parallel")]
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {j} workers: {e}")))?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_pool(jobs(cli.jobs)?)?;
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Enumerate(a) => commands::enumerate(&a, &mut out),
        Command::Stats(a) => commands::stats(&a, &mut out),
        Command::Poly(a) => commands::poly(&a, &mut out),
        Command::Verify(a) => commands::verify(&a, &mut out),
        Command::Render(a) => commands::render(a.target, &mut out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

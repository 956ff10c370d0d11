use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use gqprim::arith::LineTestMode;
use gqprim::gq::{line_orbits, LineOrbitClass};
use gqprim::io::{decimal, emit_report, load_bundle, load_gq, Bundle, ReportFormat};
use gqprim::pipeline::{overall_verdict, run_bundle, Options, OverallVerdict};
use gqprim::BigUint;

const EXIT_UNRESOLVED: u8 = 2;
const EXIT_INPUT: u8 = 1;

#[derive(Parser)]
#[command(name = "gqprim", version, about = "Search for point-primitive actions on generalised quadrangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Sound,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Common {
    /// Line-orbit test: bounded (strict) or unbounded (sound) k-value use.
    #[arg(long, value_enum, default_value = "strict")]
    mode: Mode,
    /// Drop k = 1 and k = t from the line-orbit test.
    #[arg(long)]
    refine_k: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a group bundle.
    Analyze {
        bundle: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Largest coset action that will be built.
        #[arg(long)]
        degree_cap: Option<usize>,
        /// Wall-clock budget per stage, in seconds.
        #[arg(long, default_value_t = 600)]
        stage_timeout: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write every candidate graph as a 1-based edge list.
        #[arg(long)]
        emit_graphs: Option<PathBuf>,
        /// Write every extracted quadrangle as JSON.
        #[arg(long)]
        emit_gq: Option<PathBuf>,
    },
    /// Arithmetic screening from a group order and maximal indices.
    Screen {
        #[arg(long)]
        order: String,
        /// Comma-separated indices of the maximal subgroups.
        #[arg(long, value_delimiter = ',')]
        indices: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Line orbits of a group on a quadrangle.
    Hemisystem { gq: PathBuf, group: PathBuf },
    /// Check the quadrangle axioms for a file.
    VerifyGq { gq: PathBuf },
}

fn options(common: &Common) -> Options {
    Options {
        mode: match common.mode {
            Mode::Strict => LineTestMode::Strict,
            Mode::Sound => LineTestMode::Sound,
        },
        refine_k: common.refine_k,
        ..Options::default()
    }
}

fn report(bundle: &Bundle, options: &Options, format: Format) -> ExitCode {
    let records = run_bundle(bundle, options);
    let format = match format {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
    };
    print!("{}", emit_report(&records, format));
    match overall_verdict(&records) {
        OverallVerdict::Unresolved => ExitCode::from(EXIT_UNRESOLVED),
        _ => ExitCode::SUCCESS,
    }
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("gqprim: {e}");
    ExitCode::from(EXIT_INPUT)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            bundle,
            common,
            degree_cap,
            stage_timeout,
            seed,
            emit_graphs,
            emit_gq,
        } => {
            let bundle = match load_bundle(&bundle) {
                Ok(b) => b,
                Err(e) => return input_error(e),
            };
            let mut opts = options(&common);
            if let Some(cap) = degree_cap {
                opts.degree_cap = cap;
            }
            opts.stage_timeout = Duration::from_secs(stage_timeout);
            opts.seed = seed;
            opts.emit_graphs = emit_graphs;
            opts.emit_gq = emit_gq;
            report(&bundle, &opts, common.format)
        }
        Command::Screen { order, indices, common } => {
            let order = match decimal::parse(&order) {
                Ok(o) => o,
                Err(e) => return input_error(format!("--order: {e}")),
            };
            let indices: Result<Vec<BigUint>, String> = indices.iter().map(|s| decimal::parse(s.trim())).collect();
            let indices = match indices {
                Ok(v) => v,
                Err(e) => return input_error(format!("--indices: {e}")),
            };
            match Bundle::index_only("G", order, &indices) {
                Ok(b) => report(&b, &options(&common), common.format),
                Err(e) => input_error(e),
            }
        }
        Command::Hemisystem { gq, group } => {
            let gq = match load_gq(&gq) {
                Ok(g) => g,
                Err(e) => return input_error(e),
            };
            let group = match load_bundle(&group) {
                Ok(b) => b,
                Err(e) => return input_error(e),
            };
            let Some(g) = group.group else {
                return input_error("group file has no generators");
            };
            match line_orbits(&gq.gq, g.generators()) {
                Ok(r) => {
                    println!("{}", serde_json::to_string_pretty(&r).expect("report serialises"));
                    if r.classification == LineOrbitClass::Hemisystem {
                        eprintln!("hemisystem");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => input_error(e),
            }
        }
        Command::VerifyGq { gq } => match load_gq(&gq) {
            Ok(n) => {
                let (s, t) = n.gq.order();
                println!("{}: GQ({s},{t}) with {} points, {}", n.name, n.gq.point_count, n.gq.classical_name());
                ExitCode::SUCCESS
            }
            Err(e) => input_error(e),
        },
    }
}

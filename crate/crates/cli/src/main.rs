use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use pcc_core::certificate::certify;
use pcc_core::checkers::{check_k_pcc, check_pcc, find_grid, find_pairwise_crossing};
use pcc_core::construct::{random_pcc_greedy, star_complete, toth_raw, GeneratorSeed};
use pcc_core::drawing::{Drawing, RawDrawing};
use pcc_core::format::{load_drawing, serialize_drawing};
use pcc_core::report::{self, Report};
use pcc_core::svg::{render_svg, SvgOptions};

#[derive(Parser)]
#[command(name = "pcc", version, about = "Check, certify and generate drawings with planarly connected crossings")]
struct Cli {
    /// Worker threads for parallel scans (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// PCC, simplicity and the independent-crossing hypothesis
    Check { file: PathBuf },
    /// Every crossing pair joined by at most k crossing-free edges
    Kpcc {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Search for k pairwise crossing edges
    Quasi {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Search for a k-grid with distinct endpoints
    Grid {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Replay the sparsity bound chain on a drawing
    Certify { file: PathBuf },
    /// Write the 9n - 54 construction
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Write a 2-PCC drawing of K_n
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Write a greedy random PCC drawing
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// stop after this many edges
        #[arg(long)]
        m: Option<usize>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Render a drawing as SVG
    Render {
        file: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
        #[arg(long)]
        no_crossings: bool,
    },
    /// Summary numbers of a drawing
    Stats { file: PathBuf },
}

fn load(path: &Path) -> Result<Drawing> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match load_drawing(&text) {
        Ok(d) => Ok(d),
        Err(pcc_core::format::LoadError::Invalid(rep)) => {
            let mut msg = format!("{}: {rep}", path.display());
            for issue in &rep.issues {
                msg.push_str(&format!("\n  {issue}"));
            }
            Err(anyhow::anyhow!(msg))
        }
        Err(e) => Err(anyhow::anyhow!("{}: {e}", path.display())),
    }
}

fn emit(raw: &RawDrawing, output: Option<&Path>, command: &str) -> Result<Option<Report>> {
    let text = serialize_drawing(raw);
    let Some(path) = output else {
        print!("{text}");
        return Ok(None);
    };
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    let mut r = Report::new(command);
    r.field("vertices", raw.vertices.len()).field("edges", raw.edges.len()).field("output", path.display());
    Ok(Some(r))
}

fn run(cli: Cli) -> Result<Option<Report>> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global()?;
    }
    Ok(match cli.command {
        Command::Check { file } => {
            let d = load(&file)?;
            Some(report::check_report(&d, &check_pcc(&d, false), &check_pcc(&d, true)))
        }
        Command::Kpcc { file, k } => {
            let d = load(&file)?;
            Some(report::kpcc_report(&d, k, &check_k_pcc(&d, k)))
        }
        Command::Quasi { file, k } => {
            let d = load(&file)?;
            let w = find_pairwise_crossing(&d, k)?;
            Some(report::quasi_report(&d, k, &w))
        }
        Command::Grid { file, k, budget } => {
            let d = load(&file)?;
            let out = find_grid(&d, k, budget)?;
            Some(report::grid_report(&d, k, budget, &out))
        }
        Command::Certify { file } => {
            let d = load(&file)?;
            match certify(&d) {
                Ok(c) => Some(report::certificate_report(&c)),
                Err(v) => {
                    let mut r = Report::new("certify");
                    r.field("lemma_violation", v);
                    r.status = report::Status::Fails;
                    Some(r)
                }
            }
        }
        Command::Construct { n, output } => emit(&toth_raw(n)?, output.as_deref(), "construct")?,
        Command::Star { n, seed, output } => {
            emit(&star_complete(n, GeneratorSeed(seed))?.to_raw(), output.as_deref(), "star")?
        }
        Command::Random { n, seed, m, output } => {
            emit(&random_pcc_greedy(n, m, GeneratorSeed(seed))?.to_raw(), output.as_deref(), "random")?
        }
        Command::Render { file, output, no_crossings } => {
            let d = load(&file)?;
            let opts = SvgOptions { mark_crossings: !no_crossings, ..SvgOptions::default() };
            fs::write(&output, render_svg(&d, &opts)).with_context(|| format!("writing {}", output.display()))?;
            let mut r = Report::new("render");
            r.field("edges", d.edge_count())
                .field("crossings", if no_crossings { 0 } else { d.crossings().crossing_count() })
                .field("output", output.display());
            Some(r)
        }
        Command::Stats { file } => Some(report::stats_report(&load(&file)?)),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Some(r)) => {
            print!("{}", r.render());
            ExitCode::from(r.status.exit_code() as u8)
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

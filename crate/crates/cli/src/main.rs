use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tutte_cli::commands::{self, CliError, Format, HarmonizeFlags};

#[derive(Parser)]
#[command(name = "dtutte", version, about = "Reducing triangulations, walk reduction and monotone harmonization of drawings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a TRI file is a reducing triangulation.
    Validate { tri: PathBuf },
    /// Harmonize a drawing, writing the new drawing and the move trace.
    Harmonize {
        tri: PathBuf,
        drawing: PathBuf,
        /// Maximum number of moves.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        budget: Option<u64>,
        /// Keep the anchored vertices fixed (host with boundary).
        #[arg(long)]
        anchors: bool,
        /// Output drawing; standard output by default.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Output trace.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Reduce an open walk, or try to reduce a closed one.
    Reduce {
        tri: PathBuf,
        walk: PathBuf,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Write a named fixture.
    Fixtures {
        /// One of the names listed by `dtutte fixtures list`.
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Harmonize many random drawings in parallel and tabulate move counts.
    Stress {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Numbers of edges of the drawings, used in turn.
        #[arg(long, value_delimiter = ',', default_value = "5,10,20,40")]
        sizes: Vec<usize>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        budget: Option<u64>,
    },
    /// Draw a host, or a drawing and the states it goes through along a trace.
    Export {
        tri: PathBuf,
        #[arg(long)]
        drawing: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        /// Output file for a single figure; standard output by default.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Directory for the frames of a trace.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Look for escapes from the lines through every drawn vertex.
    Probe {
        tri: PathBuf,
        drawing: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        window: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { tri } => {
            let (report, ok) = commands::validate(&read(&tri)?)?;
            print!("{report}");
            if !ok {
                return Err(CliError::Failed("not a reducing triangulation".into()));
            }
        }
        Command::Harmonize { tri, drawing, budget, anchors, out, trace } => {
            let flags = HarmonizeFlags { budget: budget.map(|b| b as usize), anchors };
            let h = commands::harmonize_files(&read(&tri)?, &read(&drawing)?, flags)?;
            for w in &h.warnings {
                eprintln!("warning: {w}");
            }
            emit(out.as_deref(), &h.drawing)?;
            if let Some(p) = trace {
                write(&p, &h.trace)?;
            }
            eprintln!("{} moves", h.moves);
        }
        Command::Reduce { tri, walk, budget } => {
            print!("{}", commands::reduce(&read(&tri)?, &read(&walk)?, budget as usize)?);
        }
        Command::Fixtures { name, seed, out_dir } => {
            if name == "list" {
                println!("{}", commands::FIXTURES);
                return Ok(());
            }
            std::fs::create_dir_all(&out_dir).map_err(|e| CliError::Failed(format!("{}: {e}", out_dir.display())))?;
            for (file, text) in commands::fixture(&name, seed)? {
                let p = out_dir.join(file);
                write(&p, &text)?;
                println!("{}", p.display());
            }
        }
        Command::Stress { seed, count, sizes, budget } => {
            let rows = commands::stress(seed, count, &sizes, budget.map(|b| b as usize))?;
            print!("{}", commands::stress_table(&rows));
            let violations: usize = rows.iter().map(|r| r.violations).sum();
            if violations > 0 {
                return Err(CliError::Failed(format!("{violations} length monotonicity violations")));
            }
        }
        Command::Export { tri, drawing, trace, format, out, out_dir } => {
            let drw = drawing.as_deref().map(read).transpose()?;
            let trc = trace.as_deref().map(read).transpose()?;
            let frames = commands::export(&read(&tri)?, drw.as_deref(), trc.as_deref(), format)?;
            let ext = match format {
                Format::Svg => "svg",
                Format::Dot => "dot",
            };
            match (&out_dir, frames.as_slice()) {
                (None, [one]) => emit(out.as_deref(), one)?,
                (None, _) => return Err(CliError::Malformed("a trace gives several frames; pass --out-dir".into())),
                (Some(dir), _) => {
                    std::fs::create_dir_all(dir).map_err(|e| CliError::Failed(format!("{}: {e}", dir.display())))?;
                    for (i, f) in frames.iter().enumerate() {
                        write(&dir.join(format!("frame-{i:04}.{ext}")), f)?;
                    }
                    println!("{} frames", frames.len());
                }
            }
        }
        Command::Probe { tri, drawing, depth, window } => {
            print!("{}", commands::probe(&read(&tri)?, &read(&drawing)?, depth, window)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

//! Experiment runner for exact arithmetic dynamics on projective space.
//!
//! Exit codes: 0 success, 1 verification mismatch (reproduce-table),
//! 2 configuration error, 3 runtime guard (base point, budgets).

use std::collections::VecDeque;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arithdyn_cli::commands::{self, CmdError, Format};
use arithdyn_cli::config::{self, ExperimentConfig};

#[derive(Parser)]
#[command(name = "arithdyn", version, about = "Orbits, heights and multiplicities of self-maps of projective space, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate an orbit, reporting heights, per-coordinate logs and
    /// arithmetic-degree estimators.
    Orbit(RunArgs),
    /// Local-height-over-height ratio sequence toward a target subscheme.
    Ratio(RunArgs),
    /// Relative coordinate-size sequence log|a_i(n)| / log max |a_j(n)|.
    LangSiegel(RunArgs),
    /// Gcd of the target generator values along the orbit, exactly.
    Gcd(RunArgs),
    /// Local multiplicity of the map at the start point.
    Mult(RunArgs),
    /// Backward multiplicity sequence on the projective line.
    Eminus(RunArgs),
    /// Recompute the built-in reference orbit table and verify every cell.
    ReproduceTable(TableArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment file, or a directory of *.json experiments (batch mode).
    #[arg(long)]
    config: PathBuf,
    /// Output file (batch mode: output directory). Default: stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Override the configured number of iterations.
    #[arg(long)]
    n_max: Option<u32>,
    /// Attach exact integer coordinates to JSON output.
    #[arg(long)]
    exact_coords: bool,
}

#[derive(Args)]
struct TableArgs {
    /// Emit rows beyond the six that are verified.
    #[arg(long, default_value_t = 6)]
    n_max: u32,
    /// Test fixture: perturb one embedded cell, "ROW,COL" with ROW in 1..6
    /// and COL one of a, b, c.
    #[arg(long, hide = true)]
    perturb: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Orbit(args) => run_many("orbit", &args, commands::cmd_orbit),
        Command::Ratio(args) => run_many("ratio", &args, commands::cmd_ratio),
        Command::LangSiegel(args) => run_many("lang-siegel", &args, commands::cmd_lang_siegel),
        Command::Gcd(args) => run_many("gcd", &args, commands::cmd_gcd),
        Command::Mult(args) => run_many("mult", &args, commands::cmd_mult),
        Command::Eminus(args) => run_many("eminus", &args, commands::cmd_eminus),
        Command::ReproduceTable(args) => run_reproduce_table(&args),
    };
    std::process::exit(code);
}

fn run_reproduce_table(args: &TableArgs) -> i32 {
    let perturb = match args.perturb.as_deref().map(parse_perturb) {
        Some(Ok(p)) => Some(p),
        Some(Err(msg)) => {
            eprintln!("error: {}", msg);
            return 2;
        }
        None => None,
    };
    match commands::cmd_reproduce_table(args.n_max, perturb) {
        Ok(report) => {
            print!("{}", report);
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn parse_perturb(text: &str) -> Result<(usize, usize), String> {
    let (row, col) = text
        .split_once(',')
        .ok_or_else(|| format!("--perturb wants ROW,COL, got '{}'", text))?;
    let row: usize = row
        .trim()
        .parse()
        .map_err(|_| format!("bad row '{}'", row))?;
    if !(1..=6).contains(&row) {
        return Err(format!("row {} out of range 1..6", row));
    }
    let col = match col.trim() {
        "a" => 0,
        "b" => 1,
        "c" => 2,
        other => return Err(format!("bad column '{}', want a, b or c", other)),
    };
    Ok((row - 1, col))
}

type CommandFn = fn(&config::Experiment, Format) -> Result<String, CmdError>;

/// Run one experiment file, or every *.json in a directory on a worker
/// pool. The exit code is the worst one seen.
fn run_many(name: &str, args: &RunArgs, command: CommandFn) -> i32 {
    if args.config.is_dir() {
        return run_batch(name, args, command);
    }
    match run_single(args, &args.config, args.out.as_deref(), command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn run_single(
    args: &RunArgs,
    config_path: &Path,
    out: Option<&Path>,
    command: CommandFn,
) -> Result<(), CmdError> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| CmdError::Config(format!("{}: {}", config_path.display(), e)))?;
    let mut config = ExperimentConfig::from_json(&text).map_err(CmdError::Config)?;
    if let Some(n) = args.n_max {
        config.n_max = n;
    }
    if args.exact_coords {
        config.exact_coords = true;
    }
    let experiment = config.resolve().map_err(CmdError::Config)?;
    let rendered = command(&experiment, args.format.into())?;
    match out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CmdError::Runtime(format!("writing {}: {}", path.display(), e)))?,
        None => print!("{}", rendered),
    }
    Ok(())
}

fn run_batch(name: &str, args: &RunArgs, command: CommandFn) -> i32 {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(&args.config) {
        Ok(entries) => entries
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.extension().map(|x| x == "json").unwrap_or(false))
            .collect(),
        Err(e) => {
            eprintln!("error: {}: {}", args.config.display(), e);
            return 2;
        }
    };
    files.sort();
    if files.is_empty() {
        eprintln!("error: no *.json experiments in {}", args.config.display());
        return 2;
    }
    if let Some(dir) = &args.out {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("error: {}: {}", dir.display(), e);
            return 2;
        }
    }

    let extension = match args.format {
        FormatArg::Csv => "csv",
        FormatArg::Json => "json",
    };
    let queue: Mutex<VecDeque<PathBuf>> = Mutex::new(files.into());
    let worst = Mutex::new(0i32);
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(2)
        .min(8);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let Some(path) = queue.lock().unwrap().pop_front() else {
                    break;
                };
                let stem = path.file_stem().unwrap_or_default().to_string_lossy();
                let out_name = format!("{}.{}.{}", stem, name, extension);
                let out_path = match &args.out {
                    Some(dir) => dir.join(out_name),
                    None => path.with_file_name(out_name),
                };
                match run_single(args, &path, Some(&out_path), command) {
                    Ok(()) => {
                        println!("{} -> {}", path.display(), out_path.display());
                    }
                    Err(e) => {
                        eprintln!("error: {}: {}", path.display(), e.message());
                        let mut w = worst.lock().unwrap();
                        *w = (*w).max(e.exit_code());
                    }
                }
            });
        }
    });
    let code = *worst.lock().unwrap();
    code
}

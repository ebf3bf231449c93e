use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Exit;

#[derive(Parser, Debug)]
#[command(
    name = "pkgrid",
    version,
    about = "Grid colorings without long two-colored paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Least number of colors for a coloring without a bicolored P_k.
    Solve {
        rows: usize,
        cols: usize,
        k: usize,
        #[arg(long)]
        max_colors: Option<usize>,
        /// Search nodes per color count.
        #[arg(long)]
        node_cap: Option<u64>,
        /// Seconds per color count.
        #[arg(long)]
        time_cap: Option<f64>,
        /// Write the witness coloring here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a coloring file is proper and has no bicolored P_k.
    Verify { file: PathBuf, k: usize },
    /// Write the striped 3-coloring for a `rows x cols` grid, rows <= k-3.
    Pattern {
        rows: usize,
        cols: usize,
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Components, partial walks, lemma clauses and iteration traces.
    Analyze {
        file: PathBuf,
        /// Restrict to one pair, e.g. `0,1`.
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(u8, u8)>,
        /// Trace the neighbor-component iteration from each side-touching component.
        #[arg(long)]
        iterate: bool,
        /// Replacement cap for --iterate; defaults to rows*cols.
        #[arg(long)]
        step_cap: Option<usize>,
    },
    /// Run the structural invariants over many proper 3-colorings.
    LemmaSuite {
        rows: usize,
        cols: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Required in random mode.
        #[arg(long, required_if_eq("mode", "random"))]
        seed: Option<u64>,
        /// Directory for counterexample coloring files.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Emit the DIMACS encoding of "c colors, no bicolored P_k".
    Cnf {
        rows: usize,
        cols: usize,
        k: usize,
        colors: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn a solver model back into a verified coloring.
    Decode {
        cnf: PathBuf,
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Exhaustive,
    Random,
}

fn parse_pair(s: &str) -> Result<(u8, u8), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two colors like `0,1`, got `{s}`"))?;
    let a: u8 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: u8 = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if a == b {
        return Err("the two colors must differ".into());
    }
    Ok((a, b))
}

fn run(cli: Cli) -> Exit {
    match cli.command {
        Command::Solve {
            rows,
            cols,
            k,
            max_colors,
            node_cap,
            time_cap,
            out,
        } => commands::solve(rows, cols, k, max_colors, node_cap, time_cap, out),
        Command::Verify { file, k } => commands::verify(&file, k),
        Command::Pattern { rows, cols, k, out } => commands::pattern(rows, cols, k, out),
        Command::Analyze {
            file,
            pair,
            iterate,
            step_cap,
        } => commands::analyze(&file, pair, iterate, step_cap),
        Command::LemmaSuite {
            rows,
            cols,
            mode,
            samples,
            seed,
            dump,
        } => commands::lemma_suite(rows, cols, mode == Mode::Random, samples, seed, dump),
        Command::Cnf {
            rows,
            cols,
            k,
            colors,
            out,
        } => commands::cnf(rows, cols, k, colors, out),
        Command::Decode { cnf, model, out } => commands::decode(&cnf, &model, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Exit::Usage as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    ExitCode::from(run(cli) as u8)
}

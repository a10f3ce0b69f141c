use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chromacay::cayley::Scope;
use chromacay::harness::commands::{
    cayley_report, chi_report, group_report, h1_report, parse_set, pi1_report, wind_report,
};
use chromacay::harness::search::{search_binary, SearchParams};
use chromacay::harness::{suites, Report};
use chromacay::{Error, Exec, FgAbelianGroup};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "chromacay",
    version,
    about = "Chromatic numbers, fundamental groups and homology of abelian Cayley graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; 1 runs sequentially, 0 picks automatically.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Print wall-clock time to stderr. Reports never contain timings.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Args)]
struct GroupArg {
    /// Group, e.g. "Z/8 x Z/3" or "Z^2 x Z/4".
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct SetArgs {
    #[command(flatten)]
    group: GroupArg,

    /// Generators separated by ';' (or ',' for cyclic groups), e.g. "(1,0);(0,1)".
    #[arg(long, default_value = "")]
    set: String,

    /// Take --set as given; it must already be symmetric.
    #[arg(long)]
    no_symmetrize: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dimacs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Whole,
    Generated,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form and invariants of a group.
    Group(GroupArg),
    /// Build a Cayley graph.
    Cayley {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "whole")]
        scope: ScopeArg,
    },
    /// Exact chromatic number.
    Chi {
        #[command(flatten)]
        set: SetArgs,
        /// Solver budget; when it runs out the result is "unknown" (exit 3).
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Discrete fundamental group invariants.
    Pi1 {
        #[command(flatten)]
        set: SetArgs,
    },
    /// First homology of the neighborhood complex and the χ >= 4 certificate.
    H1 {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Winding number of a closed walk under a 3-coloring.
    Wind {
        #[command(flatten)]
        set: SetArgs,
        /// Walk as group elements, e.g. "0,1,2,0".
        #[arg(long)]
        walk: String,
        /// Colors 0..3 indexed by vertex; defaults to a solver coloring.
        #[arg(long)]
        coloring: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Resumable search over cube-like graphs.
    Search {
        #[arg(long, default_value_t = 4)]
        m: u32,
        #[arg(long, default_value_t = 5)]
        target: usize,
        /// Per-subset solver budget.
        #[arg(long)]
        budget_ms: Option<u64>,
        #[arg(long)]
        ledger: PathBuf,
        /// Stop after this many canonical subsets.
        #[arg(long)]
        max_subsets: Option<u64>,
    },
    /// χ and π1 of Cay(Z/n, {±1, ±2}) over a range of n.
    Example54 {
        #[arg(long, default_value_t = 9)]
        from: u64,
        #[arg(long, default_value_t = 15)]
        to: u64,
    },
}

#[derive(Subcommand)]
enum Suite {
    Payan {
        #[arg(long, default_value_t = 4)]
        m: u32,
    },
    Exp4 {
        #[arg(long, default_value_t = 16)]
        order: u64,
    },
    Lemma21 {
        /// Group to check; repeatable. Defaults to a fixed list.
        #[arg(long = "group")]
        groups: Vec<String>,
    },
    Winding {
        #[arg(long, default_value_t = 1000)]
        sequences: usize,
        #[arg(long, default_value_t = 20)]
        moves: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    Oddwind {
        #[arg(long, default_value_t = 200)]
        walks: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    Homology {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    Certificates {
        #[arg(long, default_value_t = 16)]
        order: u64,
    },
    Solver {
        #[arg(long, default_value_t = 500)]
        graphs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    Lattice {
        #[arg(long, default_value_t = 1000)]
        matrices: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum Output {
    Report(Report),
    Text(String),
}

fn load(a: &SetArgs) -> chromacay::Result<(FgAbelianGroup, chromacay::cayley::SymmetricSet)> {
    let g = FgAbelianGroup::parse(&a.group.group)?;
    let s = parse_set(&g, &a.set, a.no_symmetrize)?;
    Ok((g, s))
}

fn run(cmd: Command, exec: Exec) -> chromacay::Result<Output> {
    let ms = |b: Option<u64>| b.map(Duration::from_millis);
    Ok(Output::Report(match cmd {
        Command::Group(a) => group_report(&FgAbelianGroup::parse(&a.group)?),
        Command::Cayley { set, format, scope } => {
            let (g, s) = load(&set)?;
            let scope = match scope {
                ScopeArg::Whole => Scope::WholeGroup,
                ScopeArg::Generated => Scope::GeneratedSubgroup,
            };
            let (r, x) = cayley_report(&g, &s, scope)?;
            match format {
                Format::Json => r,
                Format::Dimacs => return Ok(Output::Text(x.graph().to_dimacs())),
            }
        }
        Command::Chi { set, budget_ms } => {
            let (g, s) = load(&set)?;
            chi_report(&g, &s, ms(budget_ms))?
        }
        Command::Pi1 { set } => {
            let (g, s) = load(&set)?;
            pi1_report(&g, &s)?
        }
        Command::H1 { set } => {
            let (g, s) = load(&set)?;
            h1_report(&g, &s)?
        }
        Command::Wind {
            set,
            walk,
            coloring,
        } => {
            let (g, s) = load(&set)?;
            wind_report(&g, &s, &walk, coloring.as_deref())?
        }
        Command::Verify { suite } => match suite {
            Suite::Payan { m } => suites::payan(m, exec)?,
            Suite::Exp4 { order } => suites::exp4(order, exec)?,
            Suite::Lemma21 { groups } => {
                let specs: Vec<&str> = if groups.is_empty() {
                    suites::LEMMA21_DEFAULT.to_vec()
                } else {
                    groups.iter().map(String::as_str).collect()
                };
                suites::lemma21(&specs, exec)?
            }
            Suite::Winding {
                sequences,
                moves,
                seed,
            } => suites::winding(sequences, moves, seed, exec)?,
            Suite::Oddwind { walks, seed } => suites::oddwind(walks, seed, exec)?,
            Suite::Homology { seed } => suites::homology(seed, exec)?,
            Suite::Certificates { order } => suites::certificates(order, exec)?,
            Suite::Solver { graphs, seed } => suites::solver(graphs, seed, exec)?,
            Suite::Lattice { matrices, seed } => suites::lattice(matrices, seed, exec)?,
        },
        Command::Search {
            m,
            target,
            budget_ms,
            ledger,
            max_subsets,
        } => {
            let p = SearchParams {
                m,
                target_chi: target,
                budget: ms(budget_ms),
                max_subsets,
            };
            search_binary(&p, &ledger, exec)?
        }
        Command::Example54 { from, to } => suites::example54(from, to, exec)?,
    }))
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExhausted => 3,
        Error::NotContained(_) | Error::IllegalMove(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let exec = Exec::from_jobs(cli.jobs);
    let result = run(cli.command, exec);
    if cli.timings {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    let (text, code) = match result {
        Ok(Output::Report(r)) => (r.to_json() + "\n", r.status.exit_code() as u8),
        Ok(Output::Text(t)) => (t, 0),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}

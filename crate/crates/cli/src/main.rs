use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use robdd::pure::Fuel;
use robdd_cli::bench::{cmd_bench, render_csv, BenchOptions, Family};
use robdd_cli::check::{cmd_check, cmd_dot, cmd_store, cmd_validate, exit_code, CheckKind};
use robdd_cli::selftest::{cmd_selftest, generate_cases, SelftestOptions};
use robdd_cli::{check_var_limit, load_formula, Backend, CliError, CompileOptions};

#[derive(Parser)]
#[command(name = "robdd", version, about = "Reduced ordered BDD checks, export and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct Common {
    #[arg(long, value_enum, default_value = "both")]
    backend: Backend,
    /// Recursion budget for the pure backend (default: max variable + 1).
    #[arg(long)]
    fuel: Option<u32>,
    /// Reject formulas mentioning variables above this index.
    #[arg(long)]
    max_vars: Option<u32>,
}

impl Common {
    fn compile_options(self) -> CompileOptions {
        CompileOptions {
            fuel: self.fuel.map(Fuel),
            break_reduction: false,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tautology check (exit 0 if the formula is always true).
    Taut {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Satisfiability check (exit 0 if some assignment satisfies it).
    Sat {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Equivalence check of two formulas (exit 0 if equivalent).
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Graphviz rendering of a compiled formula.
    Dot {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Write to this file instead of stdout.
        #[arg(long)]
        dot_out: Option<PathBuf>,
    },
    /// Compile into the persistent store and print its text form.
    Store {
        file: PathBuf,
        #[arg(long)]
        fuel: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a store file (exit 0 if clean).
    Validate {
        file: PathBuf,
        /// Also re-check memo tables semantically (exponential).
        #[arg(long)]
        semantic: bool,
    },
    /// Pure vs. interned benchmark, CSV on stdout.
    Bench {
        #[arg(long, value_enum, default_value = "queens")]
        family: Family,
        #[arg(long, default_value_t = 4)]
        min: usize,
        #[arg(long, default_value_t = 6)]
        max: usize,
        #[arg(long, value_enum, default_value = "both")]
        backend: Backend,
        #[arg(long)]
        fuel: Option<u32>,
        /// Largest accepted size (default: 8 for queens, 7 for pigeonhole).
        #[arg(long)]
        limit: Option<usize>,
        /// Wall-time budget in seconds per size and backend.
        #[arg(long, default_value_t = 60.0)]
        budget_secs: f64,
    },
    /// Randomized oracle cross-check of both backends.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long, default_value_t = 6)]
        max_vars: u32,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Print the generated cases and exit.
        #[arg(long)]
        list: bool,
        #[arg(long, hide = true)]
        break_reduction: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    let (kind, files, common) = match command {
        Command::Taut { file, common } => (CheckKind::Taut, vec![file], common),
        Command::Sat { file, common } => (CheckKind::Sat, vec![file], common),
        Command::Equiv { left, right, common } => (CheckKind::Equiv, vec![left, right], common),
        Command::Dot { file, common, dot_out } => {
            let f = load_formula(&file)?;
            check_var_limit(std::slice::from_ref(&f), common.max_vars)?;
            let dot = cmd_dot(&f, common.backend, common.compile_options())?;
            write_or_print(dot_out.as_ref(), &dot)?;
            return Ok(0);
        }
        Command::Store { file, fuel, out } => {
            let f = load_formula(&file)?;
            let opts = CompileOptions {
                fuel: fuel.map(Fuel),
                break_reduction: false,
            };
            write_or_print(out.as_ref(), &cmd_store(&f, opts)?)?;
            return Ok(0);
        }
        Command::Validate { file, semantic } => {
            let text = std::fs::read_to_string(&file).map_err(|source| CliError::Io {
                path: file.display().to_string(),
                source,
            })?;
            let violations = cmd_validate(&text, semantic)?;
            if violations.is_empty() {
                println!("clean");
                return Ok(0);
            }
            for v in &violations {
                println!("{v}");
            }
            return Ok(1);
        }
        Command::Bench {
            family,
            min,
            max,
            backend,
            fuel,
            limit,
            budget_secs,
        } => {
            if min > max {
                return Err(CliError::Usage(format!("--min {min} is above --max {max}")));
            }
            let rows = cmd_bench(&BenchOptions {
                family,
                sizes: min..=max,
                backend,
                limit,
                budget: Duration::from_secs_f64(budget_secs),
                fuel: fuel.map(Fuel),
            })?;
            print!("{}", render_csv(&rows));
            return Ok(0);
        }
        Command::Selftest {
            seed,
            cases,
            max_vars,
            depth,
            list,
            break_reduction,
        } => {
            if list {
                for (i, (f, g)) in generate_cases(seed, cases, max_vars, depth).iter().enumerate() {
                    println!("{i}: {f} ;; {g}");
                }
                return Ok(0);
            }
            let out = cmd_selftest(&SelftestOptions {
                seed,
                cases,
                max_vars,
                depth,
                break_reduction,
            });
            return Ok(match out.failure {
                None => {
                    println!("selftest passed: {} cases (seed {seed})", out.cases_run);
                    0
                }
                Some(fail) => {
                    println!("selftest FAILED at case {} (seed {seed}): {}", fail.case, fail.reason);
                    println!("minimized left:  {}", fail.left);
                    println!("minimized right: {}", fail.right);
                    1
                }
            });
        }
    };
    let formulas = files.iter().map(|p| load_formula(p)).collect::<Result<Vec<_>, _>>()?;
    check_var_limit(&formulas, common.max_vars)?;
    let reports = cmd_check(kind, &formulas, common.backend, common.compile_options())?;
    if let Some(r) = reports.first() {
        println!("{}", r.verdict);
    }
    for r in &reports {
        println!("{r}");
    }
    Ok(exit_code(&reports) as u8)
}

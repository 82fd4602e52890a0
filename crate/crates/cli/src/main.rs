use std::path::PathBuf;
use std::process::ExitCode;

use bskein_cli::catalog::catalog;
use bskein_cli::commands::{self, budget_from_env, read_inputs, CliError, CliResult, Input};
use bskein_cli::suite::{run_suite, SuiteConfig};
use bskein_core::{Engine, Oracle};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

/// B-type coefficient polynomials and the Kauffman polynomial of link diagrams.
#[derive(Parser)]
#[command(name = "bskein", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// PD file: one link per line, `#` starts a comment.
    input: Option<PathBuf>,
    /// A single PD code, e.g. "X(1,4,2,3) X(3,2,4,1)" or "O O".
    #[arg(long)]
    pd: Option<String>,
    /// A catalog entry by name.
    #[arg(long)]
    name: Option<String>,
}

impl Source {
    fn read(&self) -> CliResult<Vec<Input>> {
        read_inputs(
            self.input.as_deref(),
            self.pd.as_deref(),
            self.name.as_deref(),
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient table, crossing and component counts, writhe and warping degree.
    Coeffs(Source),
    /// L and F, checked against the whole-polynomial oracle.
    Kauffman {
        #[command(flatten)]
        source: Source,
        /// One sign per component in component order, e.g. `+-`.
        #[arg(long, allow_hyphen_values = true)]
        orient: Option<String>,
    },
    /// Run the identity checks on the inputs, or the full suite with --catalog.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Verify every catalog entry and run the property suite.
        #[arg(long)]
        catalog: bool,
        /// Smaller samples for the property suite.
        #[arg(long, requires = "catalog")]
        quick: bool,
    },
    /// Random Reidemeister walks; checks L scaling and F invariance.
    Fuzz {
        #[arg(long, default_value_t = 40)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-crossings", default_value_t = 10)]
        max_crossings: usize,
        /// Number of walks, seeded `seed`, `seed + 1`, ...
        #[arg(long, default_value_t = 20)]
        walks: u64,
    },
    /// Built-in diagrams.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

fn print_lines(values: &[serde_json::Value]) {
    for v in values {
        println!("{v}");
    }
}

fn engine() -> CliResult<Engine> {
    Ok(Engine::new().memoized().with_budget(budget_from_env()?))
}

/// Returns whether every verification passed.
fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Coeffs(src) => {
            let e = engine()?;
            let out = commands::map_inputs(&src.read()?, |i| commands::coeffs(&e, &i.diagram))?;
            print_lines(&out);
            Ok(true)
        }
        Command::Kauffman { source, orient } => {
            let e = engine()?;
            let oracle = Oracle::new().memoized().with_budget(e.budget());
            let out = commands::map_inputs(&source.read()?, |i| {
                let o = commands::parse_orientation(orient.as_deref(), &i.diagram)?;
                commands::kauffman(&e, &oracle, &i.diagram, &o)
            })?;
            print_lines(&out.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>());
            Ok(out.iter().all(|(_, ok)| *ok))
        }
        Command::Verify {
            source,
            catalog: true,
            quick,
        } => {
            if source.input.is_some() || source.pd.is_some() || source.name.is_some() {
                return Err(CliError::Usage("--catalog takes no other input".into()));
            }
            let e = engine()?;
            let entries = catalog();
            let reports = entries
                .par_iter()
                .map(|entry| commands::verify(&e, &entry.name, &entry.diagram(), Some(entry)))
                .collect::<Vec<_>>()
                .into_iter()
                .collect::<CliResult<Vec<_>>>()?;
            let cfg = if quick {
                SuiteConfig::quick()
            } else {
                SuiteConfig::default()
            };
            let criteria = run_suite(&e, &cfg);
            for c in &criteria {
                eprintln!(
                    "criterion {} {}: {} in {} ms",
                    c.id,
                    c.title,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.elapsed_ms
                );
            }
            let passed = reports.iter().all(|r| r.passed) && criteria.iter().all(|c| c.passed);
            println!(
                "{}",
                json!({"diagrams": reports, "criteria": criteria, "passed": passed})
            );
            Ok(passed)
        }
        Command::Verify { source, .. } => {
            let e = engine()?;
            let reports = commands::map_inputs(&source.read()?, |i| {
                commands::verify(&e, &i.label, &i.diagram, None)
            })?;
            for r in &reports {
                println!("{}", serde_json::to_string(r).expect("report serializes"));
            }
            Ok(reports.iter().all(|r| r.passed))
        }
        Command::Fuzz {
            steps,
            seed,
            max_crossings,
            walks,
        } => {
            let e = engine()?;
            let reports = commands::fuzz(&e, steps, seed, max_crossings, walks)?;
            let failures: Vec<_> = reports
                .iter()
                .filter(|r| !(r.l_scales && r.f_identical))
                .collect();
            let moves: usize = reports.iter().map(|r| r.moves).sum();
            println!(
                "{}",
                json!({
                    "walks": reports.len(),
                    "steps": steps,
                    "seed": seed,
                    "max_crossings": max_crossings,
                    "moves_applied": moves,
                    "failures": failures,
                    "passed": failures.is_empty(),
                })
            );
            Ok(failures.is_empty())
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            for entry in catalog() {
                let d = entry.diagram();
                println!(
                    "{}\tc={}\tr={}\t{}",
                    entry.name,
                    d.c(),
                    d.r(),
                    entry.tags.join(",")
                );
            }
            Ok(true)
        }
        Command::Catalog {
            action: CatalogAction::Show { name },
        } => {
            let entry = bskein_cli::lookup(&name)
                .ok_or_else(|| CliError::Usage(format!("no catalog entry named {name:?}")))?;
            println!("{}", entry.pd);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("bskein: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

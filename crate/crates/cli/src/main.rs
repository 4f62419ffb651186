mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use report::{CliError, Report};

#[derive(Parser, Debug)]
#[command(name = "twostep", version, about = "Exact analysis of two-step nilpotent Lie algebras")]
struct Cli {
    /// Print only the JSON report.
    #[arg(long, global = true)]
    machine: bool,
    /// Seed for the randomized decomposition search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run the decomposition search with this many candidates.
    #[arg(long, global = true, value_name = "N")]
    oracle_budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that an algebra file parses and describes a valid algebra.
    Validate { path: PathBuf },
    /// Print the graph invariants.
    Invariants { path: PathBuf },
    /// Decide decomposability.
    Decompose { path: PathBuf },
    /// Build N^q / I^perp (or N^q / I with --quotient) from relations on u1..uq.
    #[command(group(ArgGroup::new("source").required(true).args(["relations", "relations_file"])))]
    Dual {
        q: usize,
        /// Relations such as "[u1,u2]+[u3,u4]; [u5,u6]".
        #[arg(long)]
        relations: Option<String>,
        /// File with one relation per line or `;`-separated.
        #[arg(long, value_name = "PATH")]
        relations_file: Option<PathBuf>,
        /// Output N^q / I itself instead of its dual.
        #[arg(long)]
        quotient: bool,
        /// Write the algebra file here instead of stdout.
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Browse or export the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Fingerprint an algebra and look it up in the catalog.
    Classify { path: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { id: String },
    /// Write every entry as an algebra file plus index.json.
    Export { dir: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let machine = cli.machine;
    let name = command_name(&cli.command);
    let outcome = std::panic::catch_unwind(|| run(cli))
        .unwrap_or_else(|_| Err(CliError::Internal("internal invariant violated".into())));
    let (report, code) = match outcome {
        Ok(report) => (report, 0),
        Err(e) => {
            let code = e.exit_code();
            (Report::failure(name, e), code)
        }
    };
    if machine {
        println!("{}", report.to_json());
    } else {
        report.print_text();
    }
    ExitCode::from(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Invariants { .. } => "invariants",
        Command::Decompose { .. } => "decompose",
        Command::Dual { .. } => "dual",
        Command::Catalog { .. } => "catalog",
        Command::Classify { .. } => "classify",
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Validate { path } => commands::validate(&path),
        Command::Invariants { path } => commands::invariants(&path),
        Command::Decompose { path } => commands::decompose(&path, cli.oracle_budget, cli.seed),
        Command::Dual { q, relations, relations_file, quotient, output } => {
            let expr = match (relations, relations_file) {
                (Some(r), _) => r,
                (None, Some(p)) => commands::read_relations_file(&p)?,
                (None, None) => return Err(CliError::Usage("need --relations or --relations-file".into())),
            };
            commands::dual(q, &expr, quotient, output.as_deref())
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => Ok(commands::catalog_list()),
            CatalogAction::Show { id } => commands::catalog_show(&id),
            CatalogAction::Export { dir } => commands::catalog_export(&dir),
        },
        Command::Classify { path } => commands::classify(&path),
    }
}

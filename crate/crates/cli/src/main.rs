use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use rigidity_lab::commands::{self, Format, Outcome};
use rigidity_lab::CampaignConfig;

#[derive(Parser)]
#[command(name = "rigidity-lab", version, about = "Rigidity index of local systems and of their Fourier transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Tuple JSON file, or `-` for stdin.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Katz rigidity index, irreducibility and physical rigidity.
    Rig(Common),
    /// Local data of the Fourier transform by stationary phase.
    Fourier(Common),
    /// Check that the Fourier transform preserves the rigidity index.
    Verify {
        #[arg(long, short, required_unless_present = "random", conflicts_with = "random")]
        input: Option<PathBuf>,
        /// Run a seeded randomized campaign instead of a single file.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        /// Maximum number of finite singular points.
        #[arg(long, default_value_t = 4)]
        max_points: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Compute the report even for reducible tuples.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Shipped example tuples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    Show { name: String },
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Rig(c) => commands::cmd_rig(&c.input, c.format),
        Command::Fourier(c) => commands::cmd_fourier(&c.input, c.format),
        Command::Verify {
            input,
            random,
            trials,
            max_rank,
            max_points,
            seed,
            force,
            format,
        } => {
            if random {
                let config = CampaignConfig {
                    trials,
                    max_rank,
                    max_points,
                    seed,
                };
                commands::cmd_verify_random(&config, format)
            } else {
                let input = input.expect("clap enforces --input without --random");
                commands::cmd_verify(&input, force, format)
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { format } => commands::cmd_catalog_list(format),
            CatalogAction::Show { name } => commands::cmd_catalog_show(&name),
        },
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let outcome = run(cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}

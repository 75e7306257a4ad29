//! `strat-sheaf`: refined intersection cohomology of stratified simplicial
//! pseudomanifolds.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser)]
#[command(name = "strat-sheaf", version, about = "Refined intersection cohomology of stratified pseudomanifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Space document, or `@name` for a bundled example.
    pub space: String,
    /// Mezzoperversity document.
    #[arg(long)]
    pub mezzo: Option<PathBuf>,
    /// `lower`, `upper` or `custom:<path>`.
    #[arg(long)]
    pub perversity: Option<String>,
    /// Check every simplex instead of one point per stratum component.
    #[arg(long)]
    pub paranoid: bool,
    /// Coefficient bound for the isotropic vector search.
    #[arg(long, default_value_t = strat_sheaf::linalg::DEFAULT_HEIGHT_BOUND)]
    pub height_bound: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a space.
    Validate(Common),
    /// List stratum components.
    Strata(Common),
    /// Middle-degree link cohomology of odd-codimension strata.
    Witt(Common),
    /// Hypercohomology of the Deligne sheaf of a perversity.
    Ic(Common),
    /// Hypercohomology of the refined sheaf of a mezzoperversity.
    Refined(Common),
    /// Validate a mezzoperversity.
    MezzoValidate(Common),
    /// The dual mezzoperversity.
    Dual(Common),
    /// Existence of self-dual refined sheaves.
    Lspace(Common),
    /// Check the axioms RP1–RP4.
    RpCheck(Common),
    /// Compare ℍ^j(P(L)) with ℍ^{n−j}(P(DL)).
    Duality(Common),
    /// Ranks of IC_m̄ → P(L) → IC_n̄ on hypercohomology.
    Canonical(Common),
    /// Cone concentration along odd-codimension strata.
    Concentration {
        #[command(flatten)]
        common: Common,
        /// Only this codimension.
        #[arg(long)]
        codim: Option<usize>,
    },
    /// Stalks at depth-one strata against link cohomology.
    Poincare(Common),
    /// List the bundled example spaces.
    Examples {
        /// Write each example as a space document into this directory.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(c) => commands::validate(c),
        Command::Strata(c) => commands::strata(c),
        Command::Witt(c) => commands::witt(c),
        Command::Ic(c) => commands::ic(c),
        Command::Refined(c) => commands::refined(c),
        Command::MezzoValidate(c) => commands::mezzo_validate(c),
        Command::Dual(c) => commands::dual(c),
        Command::Lspace(c) => commands::lspace(c),
        Command::RpCheck(c) => commands::rp_check(c),
        Command::Duality(c) => commands::duality(c),
        Command::Canonical(c) => commands::canonical(c),
        Command::Concentration { common, codim } => commands::concentration(common, *codim),
        Command::Poincare(c) => commands::poincare(c),
        Command::Examples { write } => commands::examples(write.as_deref()),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.pass == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

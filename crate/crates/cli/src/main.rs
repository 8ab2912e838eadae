use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bilens_cli::commands::App;
use bilens_cli::{json, pretty, Outcome};

/// Explore the category of bimorphic lenses over finite sets: compose
/// lenses, build products and pullbacks, and verify (or refute, with
/// witnesses) their universal properties by exhaustive search.
///
/// Exit codes: 0 = success / verified; 1 = a verifier or law check found a
/// counterexample (witness printed); 2 = malformed input or endpoint
/// mismatch.
#[derive(Parser)]
#[command(name = "bilens", version, about, max_term_width = 100)]
struct Cli {
    /// Render aligned tables instead of JSON
    #[arg(long, global = true)]
    pretty: bool,

    /// Preload set definitions from FILE (repeatable)
    #[arg(long = "sets", global = true, value_name = "FILE")]
    sets: Vec<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose two lenses: `compose MU LAM` computes `MU . LAM`
    Compose { mu: PathBuf, lam: PathBuf },
    /// The identity lens on an object
    Identity { object: PathBuf },
    /// Embed an adaptor pair (f, g) as the lens (f, g . pi2)
    Embed { adaptor: PathBuf },
    /// Product of lens objects with projection lenses (no files: terminal)
    Product { objects: Vec<PathBuf> },
    /// The pullback of a cospan, with projections and the update quotient
    Pullback { cospan: PathBuf },
    /// Mediating lens of a cone into a cospan's constructed pullback
    Mediator { cone: PathBuf, cospan: PathBuf },
    /// Exhaustively verify a universal property at bounded apex sizes
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Operations on spans of lenses (symmetric lenses)
    Span {
        #[command(subcommand)]
        action: SpanAction,
    },
    /// Move across the adjunction between adaptor pairs and lenses
    Adjunct {
        #[command(subcommand)]
        action: AdjunctAction,
    },
    /// Check one naturality square of the adjunction, exhaustively
    Naturality {
        lens: PathBuf,
        f: PathBuf,
        g: PathBuf,
    },
    /// Count or list the lenses between two objects
    Hom {
        #[command(subcommand)]
        action: HomAction,
    },
    /// Exhaustive unit and associativity suite over canonical objects
    Laws {
        /// Component sizes s,t,a,b of the object quadruple
        #[arg(long, value_delimiter = ',', default_value = "2,2,2,2")]
        sizes: Vec<usize>,
    },
    /// Check the put-get law of a monomorphic-shaped lens
    Putget { lens: PathBuf },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Unique-mediator check for a product diagram (`factors` document)
    Product {
        factors: PathBuf,
        /// Max apex component size (default: BILENS_MAX_BUDGET)
        #[arg(long)]
        max_apex: Option<usize>,
    },
    /// Unique-mediator check for a cospan's constructed pullback
    Pullback {
        cospan: PathBuf,
        /// Max apex component size (default: BILENS_MAX_BUDGET)
        #[arg(long)]
        max_apex: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SpanAction {
    /// Compose two spans via the middle pullback
    Compose { s1: PathBuf, s2: PathBuf },
    /// Search for an invertible apex lens commuting with both legs
    Iso { s1: PathBuf, s2: PathBuf },
    /// Probe span unit/associativity laws over the built-in families
    Probe,
}

#[derive(Subcommand)]
enum AdjunctAction {
    /// Turn an adjunct pair (f, w) into a lens
    ToLens { file: PathBuf },
    /// Turn a lens into its adjunct pair
    FromLens { lens: PathBuf },
}

#[derive(Subcommand)]
enum HomAction {
    /// `|A|^|S| * |T|^(|S|*|B|)` by enumeration
    Count { x: PathBuf, y: PathBuf },
    /// All lenses between two objects, in canonical order
    Enumerate { x: PathBuf, y: PathBuf },
}

fn budget_from_env() -> Result<usize, String> {
    match std::env::var("BILENS_MAX_BUDGET") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("BILENS_MAX_BUDGET must be a number, got {s:?}")),
        Err(_) => Ok(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match budget_from_env() {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut app = App::new(budget);
    for file in &cli.sets {
        if let Err(e) = app.preload_sets(file) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Compose { mu, lam } => app.compose(mu, lam),
        Command::Identity { object } => app.identity(object),
        Command::Embed { adaptor } => app.embed(adaptor),
        Command::Product { objects } => app.product(objects),
        Command::Pullback { cospan } => app.pullback(cospan),
        Command::Mediator { cone, cospan } => app.mediator(cone, cospan),
        Command::Verify { target } => match target {
            VerifyTarget::Product { factors, max_apex } => {
                app.verify_product(factors, *max_apex)
            }
            VerifyTarget::Pullback { cospan, max_apex } => {
                app.verify_pullback(cospan, *max_apex)
            }
        },
        Command::Span { action } => match action {
            SpanAction::Compose { s1, s2 } => app.span_compose(s1, s2),
            SpanAction::Iso { s1, s2 } => app.span_iso(s1, s2),
            SpanAction::Probe => app.span_probe(),
        },
        Command::Adjunct { action } => match action {
            AdjunctAction::ToLens { file } => app.adjunct_to_lens(file),
            AdjunctAction::FromLens { lens } => app.adjunct_from_lens(lens),
        },
        Command::Naturality { lens, f, g } => app.naturality(lens, f, g),
        Command::Hom { action } => match action {
            HomAction::Count { x, y } => app.hom_count(x, y),
            HomAction::Enumerate { x, y } => app.hom_enumerate(x, y),
        },
        Command::Laws { sizes } => app.laws(sizes),
        Command::Putget { lens } => app.putget(lens),
    };
    match result {
        Ok(result) => {
            if cli.pretty {
                print!("{}", pretty::render(&result.value));
            } else {
                print!("{}", json::to_output(&result.value));
            }
            match result.outcome {
                Outcome::Ok => ExitCode::SUCCESS,
                Outcome::Finding => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! `routespace`: compute spaces of finite-order knot invariants for knots in
//! 3-manifolds with trivial, free, or free-product-of-cyclics fundamental
//! group, and evaluate order-2 invariants of knots in R^3 from actuality
//! tables.

mod commands;
mod groupspec;

use clap::{Args, Parser, Subcommand};
use routespace_core::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "routespace", version, about)]
struct Cli {
    /// Number of worker threads (0 = all cores). Output does not depend on
    /// this.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Emit the machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Write the JSON report to a file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Fixture directory (falls back to $ROUTESPACE_FIXTURES, then
    /// fixtures/v1).
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// Group: trivial | free:N | product:K1,K2,... (0 or inf = infinite
    /// factor).
    #[arg(long, default_value = "trivial")]
    group: String,

    /// Generator names, comma separated (defaults to a,b,c,...).
    #[arg(long)]
    generators: Option<String>,

    /// Orientation character per generator, comma separated 0/1 (defaults
    /// to all 0).
    #[arg(long)]
    w1: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel dimensions per order, cross-checked between both descriptions.
    Dims {
        #[command(flatten)]
        group: GroupArgs,
        /// Single order to compute.
        #[arg(long, conflicts_with = "max_order")]
        order: Option<usize>,
        /// Compute all orders 0..=N.
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, default_value_t = 0)]
        ball: usize,
        /// Coefficient field: q or z2.
        #[arg(long, default_value = "q")]
        field: String,
        /// Coefficient convention for an order-3-symmetric triple generator.
        #[arg(long, default_value = "one")]
        collapse: String,
    },
    /// Kernel basis of admissible weight systems at one order.
    Basis {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        ball: usize,
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Order-1 generators: unordered pairs of nontrivial loop classes.
    Prop1 {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 1)]
        ball: usize,
    },
    /// Canonical route census at one order.
    Routes {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        ball: usize,
    },
    /// Neighbor graph of trivial-chord order-2 routes, or the component of a
    /// seed route.
    Neighbors {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 1)]
        ball: usize,
        /// Load the shipped seed fixture (group comes from the fixture).
        #[arg(long)]
        seed_fixture: bool,
        /// Seed route JSON file.
        #[arg(long, conflicts_with = "seed_fixture")]
        seed: Option<PathBuf>,
        /// Write the component's indicator weight system to a file.
        #[arg(long)]
        gamma_out: Option<PathBuf>,
    },
    /// Pair a weight system against a discriminant-crossing 1-cycle.
    Pair {
        /// Weight system JSON (as written by `neighbors --gamma-out` or
        /// `basis --output`).
        #[arg(long)]
        gamma: PathBuf,
        /// Trace fixture JSON.
        #[arg(long)]
        trace: PathBuf,
    },
    /// Evaluate an actuality table at a knot.
    Eval {
        /// Table JSON (defaults to the shipped v2 table).
        #[arg(long)]
        table: Option<PathBuf>,
        /// Signed Gauss code, e.g. "O1+ U2+ O3+ U1+ O2+ U3+".
        #[arg(long)]
        knot: String,
    },
    /// Conway-polynomial oracle: a2 and the determinant.
    Oracle {
        #[arg(long)]
        knot: String,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Usage(_) => 2,
        Error::UnsupportedGroup(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let ctx = commands::Ctx {
        json: cli.json,
        output: cli.output.clone(),
        fixtures: routespace_core::fixtures::fixture_dir(cli.fixtures.as_deref()),
    };
    let result = match cli.command {
        Command::Dims { group, order, max_order, ball, field, collapse } => {
            commands::dims(&ctx, &group, order, max_order, ball, &field, &collapse)
        }
        Command::Basis { group, order, ball, field } => {
            commands::basis(&ctx, &group, order, ball, &field)
        }
        Command::Prop1 { group, ball } => commands::prop1(&ctx, &group, ball),
        Command::Routes { group, order, ball } => commands::routes(&ctx, &group, order, ball),
        Command::Neighbors { group, ball, seed_fixture, seed, gamma_out } => {
            commands::neighbors(&ctx, &group, ball, seed_fixture, seed.as_deref(), gamma_out.as_deref())
        }
        Command::Pair { gamma, trace } => commands::pair(&ctx, &gamma, &trace),
        Command::Eval { table, knot } => commands::eval(&ctx, table.as_deref(), &knot),
        Command::Oracle { knot } => commands::oracle(&ctx, &knot),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

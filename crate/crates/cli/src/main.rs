use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graphprod::{Error, Product, Side, DEFAULT_REGISTRY_BOUND};

mod commands;

use commands::{CliError, Outcome};

#[derive(Parser)]
#[command(
    name = "graphprod",
    version,
    about = "Graph products, factorization and graph roots"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

fn parse_product(s: &str) -> Result<Product, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Canonical key and canonical relabeling of a graph.
    Canon { file: PathBuf },
    /// Connected components up to isomorphism, with multiplicities.
    Components { file: PathBuf },
    /// The product of two graphs.
    Product {
        #[arg(long, value_parser = parse_product)]
        op: Product,
        a: PathBuf,
        b: PathBuf,
    },
    /// The n-fold product of a graph with itself.
    Power {
        #[arg(long, value_parser = parse_product)]
        op: Product,
        #[arg(short = 'n')]
        n: usize,
        file: PathBuf,
    },
    /// Prime factorization of a connected graph as a monomial.
    Factor {
        #[arg(long, value_parser = parse_product)]
        op: Product,
        /// Largest prime (in vertices) the registry lists.
        #[arg(long, default_value_t = DEFAULT_REGISTRY_BOUND)]
        registry_bound: usize,
        file: PathBuf,
    },
    /// The series of a graph family.
    Encode {
        #[arg(long, value_parser = parse_product)]
        op: Product,
        /// Degree bound; components of higher degree are rejected.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_REGISTRY_BOUND)]
        registry_bound: usize,
        file: PathBuf,
    },
    /// The family whose n-th power is the given family.
    Root {
        #[arg(long, value_parser = parse_product)]
        op: Product,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_REGISTRY_BOUND)]
        registry_bound: usize,
        file: PathBuf,
    },
    /// The family A with A·C = PROD (right) or C·A = PROD (left).
    Cancel {
        #[arg(long, value_parser = parse_product)]
        op: Product,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_REGISTRY_BOUND)]
        registry_bound: usize,
        prod: PathBuf,
        c: PathBuf,
    },
    /// Distinct cardinal-coefficient series with equal squares.
    DemoCounterexample {
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// Coefficients of the first series from degree 2 on.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        seq_a: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7,8")]
        seq_b: Vec<u64>,
    },
    /// Run the randomized property suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iters: usize,
    },
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Canon { file } => commands::canon(&file),
        Command::Components { file } => commands::components(&file),
        Command::Product { op, a, b } => commands::product(op, &a, &b),
        Command::Power { op, n, file } => commands::power(op, n, &file),
        Command::Factor {
            op,
            registry_bound,
            file,
        } => commands::factor(op, registry_bound, &file),
        Command::Encode {
            op,
            bound,
            registry_bound,
            file,
        } => commands::encode(op, bound, registry_bound, &file),
        Command::Root {
            op,
            n,
            bound,
            registry_bound,
            file,
        } => commands::root(op, n, bound, registry_bound, &file),
        Command::Cancel {
            op,
            side,
            bound,
            registry_bound,
            prod,
            c,
        } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            commands::cancel(op, side, bound, registry_bound, &prod, &c)
        }
        Command::DemoCounterexample {
            bound,
            seq_a,
            seq_b,
        } => Ok(commands::demo_counterexample(bound, &seq_a, &seq_b)),
        Command::Selftest { seed, iters } => commands::selftest(seed, iters),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli.command) {
        Ok(out) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if json {
                let v = serde_json::json!({
                    "result": "error",
                    "error": { "kind": e.kind(), "message": e.to_string() },
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            }
            ExitCode::from(e.exit_code())
        }
    }
}

mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use unipotent::artinhasse::ah_series;
use unipotent::chevalley::Outcome;
use unipotent::commvar::{census, Ambient};
use unipotent::exact::{check_prime, Fp};
use unipotent::parabolic::{
    enumerate_distinguished, exceptional_table, grade, lcs_class, levi_label, order_exponent,
};
use unipotent::rootsys::{CartanType, RootSystem};
use unipotent::witt::{law_var_names, witt_add, witt_order, witt_sum_polynomials, WittVector};

use output::Format;
use suites::{SuiteConfig, SUITES};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "unipotent", version, about = "Orders of unipotent elements, Witt vectors and Artin-Hasse exponentials")]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// n(P), m and the predicted order p^m for every distinguished parabolic.
    Ordergrid {
        /// Cartan type such as G2, E8 or A_3.
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Distinguished parabolics with their grading data.
    Distinguished {
        #[arg(long)]
        family: String,
    },
    /// Coxeter bounds, minimal modules and thresholds for the exceptional types.
    Tables,
    /// Witt vector arithmetic over F_p.
    Witt {
        #[command(subcommand)]
        op: WittOp,
    },
    /// Coefficients of the Artin-Hasse series.
    Ah {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Commuting p-nilpotent tuples.
    Commvar {
        #[command(subcommand)]
        op: CommvarOp,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum WittOp {
    /// Sum of two Witt vectors, given as comma-separated coordinates.
    Add {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        b: Vec<i64>,
    },
    /// Additive order of a Witt vector.
    Order {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<i64>,
    },
    /// The sum polynomials S_0, ..., S_{n-1}.
    Sumpolys {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CommvarOp {
    /// Exhaustive count of member tuples.
    Census {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: usize,
        /// `gl:N` or `strict-upper:N`.
        #[arg(long)]
        ambient: String,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// orders, witt, artinhasse, bch, commvar or all.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest matrix size in the orders suite.
    #[arg(long, default_value_t = 8)]
    max_rank: usize,
    /// Primes for the gl_n cases of the orders suite.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
    primes: Vec<u64>,
    /// Primes for the symplectic and orthogonal cases; bad primes are skipped.
    #[arg(long, value_delimiter = ',', default_value = "5,7,11")]
    classical_primes: Vec<u64>,
    #[arg(long, default_value_t = 64)]
    trials: usize,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification,
    Runtime(String),
}

impl From<unipotent::Error> for Failure {
    fn from(e: unipotent::Error) -> Self {
        use unipotent::Error as E;
        match e {
            E::NotPrime(_)
            | E::InvalidRootSystem { .. }
            | E::Parse(_)
            | E::InvalidArgument(_)
            | E::InvalidParabolic(_)
            | E::InvalidRealization(_)
            | E::CensusTooLarge { .. }
            | E::BadPrime(_)
            | E::WittMismatch => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Serialize)]
struct OrderGridRow {
    cartan_type: String,
    levi: String,
    n_p: u64,
    p: u64,
    m: u32,
    predicted_order: u64,
    good_prime: bool,
}

#[derive(Serialize)]
struct DistinguishedRow {
    cartan_type: String,
    levi: String,
    n_p: u64,
    lcs_class: u64,
    nilradical_dim: usize,
    dim_g0: usize,
    dim_g2: usize,
}

#[derive(Serialize)]
struct WittSumRow {
    p: u64,
    a: String,
    b: String,
    sum: String,
}

#[derive(Serialize)]
struct WittOrderRow {
    p: u64,
    a: String,
    order: u64,
}

#[derive(Serialize)]
struct SumPolyRow {
    p: u64,
    index: usize,
    polynomial: String,
}

#[derive(Serialize)]
struct AhRow {
    p: u64,
    k: usize,
    coefficient: String,
    valuation: Option<i64>,
    residue: u32,
}

#[derive(Serialize)]
struct CensusRow {
    p: u32,
    d: usize,
    ambient: String,
    count: u64,
    wall_ms: u128,
}

fn parse_type(s: &str) -> Result<RootSystem, Failure> {
    let t: CartanType = s.parse()?;
    Ok(RootSystem::from_type(t))
}

fn joined(xs: &[Fp]) -> String {
    xs.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(",")
}

fn run(cli: &Cli) -> CmdResult {
    let mut out = output::open(cli.output.as_deref())?;
    let format = cli.format;
    match &cli.command {
        Command::Ordergrid { family, primes } => {
            let rs = parse_type(family)?;
            let name = rs.cartan_type()?.to_string();
            let mut rows = Vec::new();
            for levi in enumerate_distinguished(&rs)? {
                let gp = grade(&rs, &levi)?;
                for &p in primes {
                    let m = order_exponent(p, gp.n_p())?;
                    let predicted_order = p
                        .checked_pow(m)
                        .ok_or_else(|| Failure::Usage(format!("p^m overflows for p = {p}")))?;
                    rows.push(OrderGridRow {
                        cartan_type: name.clone(),
                        levi: levi_label(&levi),
                        n_p: gp.n_p(),
                        p,
                        m,
                        predicted_order,
                        good_prime: rs.is_good_prime(p)?,
                    });
                }
            }
            output::table(&mut out, format, &rows)?;
        }
        Command::Distinguished { family } => {
            let rs = parse_type(family)?;
            let name = rs.cartan_type()?.to_string();
            let mut rows = Vec::new();
            for levi in enumerate_distinguished(&rs)? {
                let gp = grade(&rs, &levi)?;
                rows.push(DistinguishedRow {
                    cartan_type: name.clone(),
                    levi: levi_label(&levi),
                    n_p: gp.n_p(),
                    lcs_class: lcs_class(&gp),
                    nilradical_dim: gp.nilradical_dim(),
                    dim_g0: gp.dim(0),
                    dim_g2: gp.dim(2),
                });
            }
            output::table(&mut out, format, &rows)?;
        }
        Command::Tables => output::table(&mut out, format, &exceptional_table()?)?,
        Command::Witt { op } => match op {
            WittOp::Add { p, a, b } => {
                if a.len() != b.len() {
                    return Err(Failure::Usage("--a and --b must have the same length".into()));
                }
                let (va, vb) = (WittVector::from_ints(*p, a)?, WittVector::from_ints(*p, b)?);
                let sum = witt_add(&va, &vb)?;
                let row = WittSumRow { p: *p, a: joined(va.coords()), b: joined(vb.coords()), sum: joined(sum.coords()) };
                output::table(&mut out, format, &[row])?;
            }
            WittOp::Order { p, a } => {
                let va = WittVector::from_ints(*p, a)?;
                let row = WittOrderRow { p: *p, a: joined(va.coords()), order: witt_order(&va)? };
                output::table(&mut out, format, &[row])?;
            }
            WittOp::Sumpolys { p, n } => {
                let names = law_var_names(*n);
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                let rows: Vec<SumPolyRow> = witt_sum_polynomials(*p, *n)?
                    .iter()
                    .enumerate()
                    .map(|(index, s)| SumPolyRow { p: *p, index, polynomial: s.display_with(&names) })
                    .collect();
                output::table(&mut out, format, &rows)?;
            }
        },
        Command::Ah { p, terms } => {
            check_prime(*p)?;
            let f = ah_series(*p, *terms)?;
            let rows: Vec<AhRow> = f
                .coeffs()
                .iter()
                .zip(f.valuations())
                .zip(f.coeffs_mod_p())
                .enumerate()
                .map(|(k, ((c, v), r))| AhRow { p: *p, k, coefficient: c.to_string(), valuation: v.finite(), residue: r.0 })
                .collect();
            output::table(&mut out, format, &rows)?;
        }
        Command::Commvar { op: CommvarOp::Census { p, d, ambient } } => {
            let amb: Ambient = ambient.parse()?;
            let start = Instant::now();
            let count = census(*p, *d, &amb)?;
            let row = CensusRow { p: *p, d: *d, ambient: amb.to_string(), count, wall_ms: start.elapsed().as_millis() };
            output::table(&mut out, format, &[row])?;
        }
        Command::Verify(args) => return verify(args, &mut out, format),
    }
    out.flush()?;
    Ok(())
}

fn verify(args: &VerifyArgs, out: &mut dyn std::io::Write, format: Format) -> CmdResult {
    let names: Vec<&str> = match args.suite.as_str() {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => return Err(Failure::Usage(format!("unknown suite {s:?}; expected one of {} or all", SUITES.join(", ")))),
    };
    let seed = args.seed.ok_or_else(|| Failure::Usage("--seed is required".into()))?;
    if args.trials == 0 {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    let cfg = SuiteConfig {
        max_rank: args.max_rank,
        primes: args.primes.clone(),
        classical_primes: args.classical_primes.clone(),
        trials: args.trials,
        seed,
    };
    let mut rows = Vec::new();
    for name in names {
        rows.extend(suites::run(name, &cfg)?);
    }
    output::lines(out, format, &rows)?;
    out.flush()?;

    let count = |o: Outcome| rows.iter().filter(|r| r.outcome == o).count();
    let (pass, fail, inconclusive) = (count(Outcome::Pass), count(Outcome::Fail), count(Outcome::Inconclusive));
    eprintln!("{} checks: {pass} pass, {fail} fail, {inconclusive} inconclusive", rows.len());
    if fail > 0 || inconclusive * 100 >= rows.len().max(1) {
        return Err(Failure::Verification);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(EXIT_FAILURE),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

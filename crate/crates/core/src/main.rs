use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use lcpow::asymptotics::{diagonal_hilbert_series, to_bigints};
use lcpow::cohomology::length_table;
use lcpow::io::{length_records_csv, length_records_json, parse_variable_list, sequence_csv, sigma_rows_csv, SigmaRow};
use lcpow::k3::{
    closed_form_limit, convergence_rows, cross_check, sigma_decomposition, sigma_recursion, BlowupCache, K3Params,
};
use lcpow::numeric::{fraction_string, rational_decimal};
use lcpow::{multiplicity_mprimary, parse_ideal, richardson_limit, Error, MonomialIdeal};

/// Exact lengths of H^0_m(R/I^n) for monomial ideals, and the K3 irrational-limit example.
#[derive(Parser, Debug)]
#[command(name = "lcpow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of λ(H^0_m(R/I^n)), σ(n), τ(n) for n = 1..nmax.
    Length {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Extrapolated limit of λ(H^0_m(R/I^n))/n^degree.
    Limit {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        nmax: u32,
        #[arg(long)]
        degree: u32,
    },
    /// Multiplicity e(I) of an m-primary ideal.
    Mult {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        nmax: u32,
    },
    /// Diagonal Hilbert function n ↦ dim (I^{bn})_{an}.
    Diag {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The K3 surface example.
    K3 {
        #[command(subcommand)]
        command: K3Command,
    },
}

#[derive(Args, Debug)]
struct IdealArgs {
    /// Comma-separated variable names, in exponent order.
    #[arg(long)]
    vars: String,
    /// Generators, e.g. "x^2,x*y"; "-" reads from stdin.
    #[arg(long)]
    ideal: String,
}

#[derive(Args, Debug, Clone, Copy)]
struct K3Args {
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
    b: i64,
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    c: i64,
    #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
    e: i64,
}

#[derive(Subcommand, Debug)]
enum K3Command {
    /// σ(n) table with ratios σ(n)/n⁴ and Richardson extrapolants.
    Sigma {
        #[command(flatten)]
        params: K3Args,
        #[arg(long, default_value_t = 64)]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = Mode::Recursion)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact closed form of lim σ(n)/n⁴.
    Limit {
        #[command(flatten)]
        params: K3Args,
    },
    /// Compare the recursion and the decomposition for n = 1..nmax.
    Check {
        #[command(flatten)]
        params: K3Args,
        #[arg(long, default_value_t = 64)]
        nmax: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Recursion,
    Decomposition,
}

const DIGITS: usize = 30;

fn load_ideal(args: &IdealArgs) -> Result<MonomialIdeal, Error> {
    let vars = parse_variable_list(&args.vars);
    let text = if args.ideal == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| Error::Io(e.to_string()))?;
        buf
    } else {
        args.ideal.clone()
    };
    Ok(parse_ideal(&text, &vars)?)
}

fn params(args: &K3Args) -> Result<K3Params, Error> {
    K3Params::new(args.a, args.b, args.c, args.e)
}

enum Output {
    Json(Value),
    Text(String),
}

fn run(cli: Cli) -> Result<Output, Error> {
    match cli.command {
        Command::Length { ideal, nmax, e, format } => {
            let ideal = load_ideal(&ideal)?;
            let rows = length_table(&ideal, nmax, e)?;
            Ok(match format {
                Format::Json => Output::Json(length_records_json(&rows)),
                Format::Csv => Output::Text(length_records_csv(&rows)),
            })
        }
        Command::Limit { ideal, nmax, degree } => {
            let ideal = load_ideal(&ideal)?;
            let lambdas: Vec<BigInt> = length_table(&ideal, nmax, None)?
                .into_iter()
                .map(|r| BigInt::from(r.lambda))
                .collect();
            let estimate = richardson_limit(&lambdas, degree)?;
            let mut value = serde_json::to_value(&estimate).expect("estimate serializes");
            value["extrapolated_decimal"] = json!(estimate.extrapolated_decimal(DIGITS));
            value["refined_decimal"] = json!(rational_decimal(&estimate.refined, DIGITS));
            Ok(Output::Json(value))
        }
        Command::Mult { ideal, nmax } => {
            let ideal = load_ideal(&ideal)?;
            let e = multiplicity_mprimary(&ideal, nmax)?;
            Ok(Output::Json(json!({ "multiplicity": fraction_string(&e) })))
        }
        Command::Diag { ideal, a, b, nmax, format } => {
            let ideal = load_ideal(&ideal)?;
            let values = diagonal_hilbert_series(&ideal, a, b, nmax)?;
            Ok(match format {
                Format::Csv => Output::Text(sequence_csv("dim", &values)),
                Format::Json => {
                    let leading = lcpow::finite_difference_leading(&to_bigints(&values), ideal.dim() as u32 - 1);
                    Output::Json(json!({
                        "a": a,
                        "b": b,
                        "values": values.iter().enumerate()
                            .map(|(i, v)| json!({ "n": i + 1, "dim": v.to_string() }))
                            .collect::<Vec<_>>(),
                        "leading_coefficient": leading.map(|l| fraction_string(&l)),
                    }))
                }
            })
        }
        Command::K3 { command } => run_k3(command),
    }
}

fn run_k3(command: K3Command) -> Result<Output, Error> {
    match command {
        K3Command::Sigma { params: args, nmax, mode, format } => {
            let p = params(&args)?;
            let rows: Vec<BigInt> = match mode {
                Mode::Recursion => {
                    let mut cache = BlowupCache::new(&p);
                    (1..=nmax).map(|n| sigma_recursion(n, &mut cache)).collect()
                }
                Mode::Decomposition => (1..=nmax).map(|n| sigma_decomposition(n, &p)).collect(),
            };
            let rows: Vec<SigmaRow> = convergence_rows(rows).iter().map(|r| SigmaRow::from_row(r, DIGITS)).collect();
            Ok(match format {
                Format::Json => Output::Json(serde_json::to_value(&rows).expect("rows serialize")),
                Format::Csv => Output::Text(sigma_rows_csv(&rows)),
            })
        }
        K3Command::Limit { params: args } => {
            let p = params(&args)?;
            let limit = closed_form_limit(&p)?;
            let mut value = serde_json::to_value(&limit).expect("quadratic serializes");
            value["decimal"] = json!(limit.to_decimal(DIGITS));
            value["irrational"] = json!(!limit.is_rational());
            Ok(Output::Json(value))
        }
        K3Command::Check { params: args, nmax } => {
            let p = params(&args)?;
            let mismatches = cross_check(&p, nmax);
            Ok(Output::Json(json!({
                "nmax": nmax,
                "equal": mismatches.is_empty(),
                "mismatches": mismatches.iter()
                    .map(|(n, r, d)| json!({ "n": n, "recursion": r.to_string(), "decomposition": d.to_string() }))
                    .collect::<Vec<_>>(),
            })))
        }
    }
}

fn emit(text: &str) -> ExitCode {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({ "error": { "kind": "io", "message": e.to_string() } }));
            ExitCode::FAILURE
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Output::Json(v)) => emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))),
        Ok(Output::Text(t)) => emit(&t),
        Err(e) => {
            eprintln!("{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } }));
            ExitCode::FAILURE
        }
    }
}

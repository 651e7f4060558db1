//! Command-line interface for exact subset-sum counting in finite abelian
//! groups.
//!
//! Subcommands: `count` (one N(k, b)), `table` (all b), `verify`
//! (formula vs. brute-force oracles), `ratio` (min/max uniformity report),
//! `bounds` (main term and bound quantities) and `sweep` (convergence CSV).
//!
//! Exit codes: 0 success, 1 verification failure, 2 argument errors.
//! Counts and rationals are printed as decimal strings, never floats, so
//! output stays exact; identical arguments always produce identical bytes.

use std::fmt::Write as _;
use std::fs;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use sumcount::analysis::{
    bound_report, convergence_sweep, sweep_csv, uniformity_ratio, GroupFamily, KRule,
};
use sumcount::counting::{count_subset_sums, count_table};
use sumcount::group::{GroupElement, GroupSpec};
use sumcount::oracle::{verify_family, OracleKind};

#[derive(Parser)]
#[command(
    name = "sumcount",
    about = "Exact subset-sum counting in finite abelian groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print N(k, b): the number of k-subsets summing to the target.
    Count {
        /// Group moduli, comma-separated (e.g. "4" or "2,2,3").
        #[arg(long)]
        moduli: String,
        /// Subset size.
        #[arg(long)]
        k: u64,
        /// Target element, comma-separated residues (reduced mod the moduli,
        /// so negatives are fine).
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Print N(k, b) for every b in lexicographic element order.
    Table {
        #[arg(long)]
        moduli: String,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Check the formula against brute-force oracles over the standard
    /// small-group family (all Z_m up to the order cap, plus all 2- and
    /// 3-factor presentations over {2,3,4,5,6,8,9} within the cap).
    Verify {
        /// Largest group order to include.
        #[arg(long, default_value_t = 16)]
        max_order: u64,
        /// Which oracle(s) to compare against; enumeration only applies to
        /// orders <= 20.
        #[arg(long, value_enum, default_value_t = OracleArg::Both)]
        oracle: OracleArg,
    },
    /// Min/max of N(k, b) over all b, with witnesses and the exact ratio.
    Ratio {
        #[arg(long)]
        moduli: String,
        #[arg(long)]
        k: u64,
        /// Decimal digits for the rendered ratio.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Main term C(n,k)/n plus the bound quantities defined for (n, k).
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Trace the uniformity ratio over a family of group orders as CSV.
    Sweep {
        /// Group family: cyclic, elementary-2 or two-factor.
        #[arg(long)]
        family: String,
        /// Orders, comma-separated (e.g. "64,128,256,512").
        #[arg(long)]
        orders: String,
        /// Subset-size rule: fixed:K or half-plus-one.
        #[arg(long)]
        k_rule: String,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
        precision: u32,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Enum,
    Dp,
    Both,
}

impl From<OracleArg> for OracleKind {
    fn from(arg: OracleArg) -> Self {
        match arg {
            OracleArg::Enum => OracleKind::Enumeration,
            OracleArg::Dp => OracleKind::DynamicProgramming,
            OracleArg::Both => OracleKind::Both,
        }
    }
}

enum CliError {
    /// Bad arguments: exit 2 with usage text.
    Usage(String),
    /// Verification or I/O failure: exit 1.
    Failure(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Core errors surfaced by CLI subcommands are argument-induced
/// (bad moduli, out-of-range k, parity violations, oversized orders).
impl From<sumcount::Error> for CliError {
    fn from(e: sumcount::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            // Prints "error: <msg>" plus usage and exits 2.
            Cli::command().error(ErrorKind::InvalidValue, msg).exit();
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("{msg}");
            std::process::exit(1);
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Count {
            moduli,
            k,
            target,
            format,
        } => {
            let spec = parse_spec(&moduli)?;
            let b = parse_target(&spec, &target)?;
            let count = count_subset_sums(&spec, k, &b)?;
            match format {
                Format::Plain => println!("{count}"),
                Format::Json => print_json(&json!({
                    "moduli": spec.to_string(),
                    "k": k,
                    "target": b.to_string(),
                    "count": count.to_string(),
                })),
                Format::Csv => return Err(usage("count does not support csv output")),
            }
            Ok(())
        }
        Command::Table { moduli, k, format } => {
            let spec = parse_spec(&moduli)?;
            let table = count_table(&spec, k)?;
            match format {
                Format::Plain => {
                    let mut out = String::new();
                    for (b, count) in table.iter() {
                        writeln!(out, "{b}\t{count}").expect("string write");
                    }
                    print!("{out}");
                }
                Format::Json => {
                    let entries: Vec<Value> = table
                        .iter()
                        .map(|(b, count)| {
                            json!({ "element": b.to_string(), "count": count.to_string() })
                        })
                        .collect();
                    print_json(&json!({
                        "moduli": spec.to_string(),
                        "k": k,
                        "entries": entries,
                    }));
                }
                Format::Csv => {
                    let mut out = String::from("element,count\n");
                    for (b, count) in table.iter() {
                        writeln!(out, "{},{count}", csv_field(&b.to_string()))
                            .expect("string write");
                    }
                    print!("{out}");
                }
            }
            Ok(())
        }
        Command::Verify { max_order, oracle } => {
            let kind = OracleKind::from(oracle);
            match verify_family(max_order, kind)? {
                Ok(stats) => {
                    println!(
                        "all counts match: {} specs, {} comparisons (max order {max_order})",
                        stats.specs, stats.comparisons
                    );
                    Ok(())
                }
                Err(mismatch) => Err(CliError::Failure(format!(
                    "mismatch: spec={} k={} b={}\n  formula = {}\n  {:<7} = {}",
                    mismatch.spec,
                    mismatch.k,
                    mismatch.b,
                    mismatch.formula,
                    mismatch.oracle_name,
                    mismatch.oracle
                ))),
            }
        }
        Command::Ratio {
            moduli,
            k,
            precision,
            format,
        } => {
            let spec = parse_spec(&moduli)?;
            let report = uniformity_ratio(&spec, k)?;
            let decimal = report.ratio_decimal(precision as usize);
            match format {
                Format::Plain => {
                    println!("moduli = {}", report.spec);
                    println!("k = {}", report.k);
                    println!("min_count = {} at b = {}", report.min_count, report.argmin);
                    println!("max_count = {} at b = {}", report.max_count, report.argmax);
                    println!("ratio = {}", report.ratio);
                    println!("ratio_decimal = {decimal}");
                }
                Format::Json => print_json(&json!({
                    "moduli": report.spec.to_string(),
                    "k": report.k,
                    "min_count": report.min_count.to_string(),
                    "max_count": report.max_count.to_string(),
                    "argmin": report.argmin.to_string(),
                    "argmax": report.argmax.to_string(),
                    "ratio": report.ratio.to_string(),
                    "ratio_decimal": decimal,
                })),
                Format::Csv => return Err(usage("ratio does not support csv output")),
            }
            Ok(())
        }
        Command::Bounds { n, k, format } => {
            let report = bound_report(n, k)?;
            match format {
                Format::Plain => {
                    println!("n = {n}");
                    println!("k = {k}");
                    println!("main_term = {}", report.main_term);
                    if let Some(bound) = &report.deviation_bound {
                        println!("deviation_bound = {bound}");
                    }
                    if let Some(v) = report.vanishing_expr {
                        println!("vanishing_expr = {v}");
                    }
                    if let Some(l) = report.l_value {
                        println!("l_value = {l}");
                    }
                }
                Format::Json => {
                    let mut map = Map::new();
                    map.insert("n".into(), json!(n));
                    map.insert("k".into(), json!(k));
                    map.insert(
                        "main_term_num".into(),
                        json!(report.main_term.numer().to_string()),
                    );
                    map.insert(
                        "main_term_den".into(),
                        json!(report.main_term.denom().to_string()),
                    );
                    if let Some(bound) = &report.deviation_bound {
                        map.insert("deviation_bound".into(), json!(bound.to_string()));
                    }
                    if let Some(v) = report.vanishing_expr {
                        map.insert("vanishing_expr".into(), json!(v));
                    }
                    if let Some(l) = report.l_value {
                        map.insert("l_value".into(), json!(l));
                    }
                    print_json(&Value::Object(map));
                }
                Format::Csv => return Err(usage("bounds does not support csv output")),
            }
            Ok(())
        }
        Command::Sweep {
            family,
            orders,
            k_rule,
            precision,
            out,
        } => {
            let family: GroupFamily = family.parse().map_err(usage)?;
            let k_rule: KRule = k_rule.parse().map_err(usage)?;
            let orders = parse_orders(&orders)?;
            let rows = convergence_sweep(family, &orders, k_rule, precision as usize);
            for row in &rows {
                if let Err(reason) = &row.outcome {
                    eprintln!("sweep: skipped n = {} ({}): {reason}", row.n, row.family);
                }
            }
            let csv = sweep_csv(&rows);
            match out {
                Some(path) => fs::write(&path, csv)
                    .map_err(|e| CliError::Failure(format!("cannot write {path}: {e}")))?,
                None => print!("{csv}"),
            }
            Ok(())
        }
    }
}

fn parse_spec(s: &str) -> Result<GroupSpec, CliError> {
    s.parse::<GroupSpec>().map_err(usage)
}

fn parse_target(spec: &GroupSpec, s: &str) -> Result<GroupElement, CliError> {
    let raw = s
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("invalid residue {tok:?} in target")))
        })
        .collect::<Result<Vec<i64>, CliError>>()?;
    Ok(spec.canonicalize(&raw)?)
}

fn parse_orders(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| usage(format!("invalid order {tok:?}")))
        })
        .collect()
}

fn csv_field(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

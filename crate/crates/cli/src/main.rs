//! supq: build the Sylow p-subgroups of the finite symplectic and orthogonal
//! groups, emit their exact supercharacter tables, and run the verification
//! suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

#![allow(clippy::manual_is_multiple_of)]

mod config;
mod output;
mod table;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use supq_core::group::{GroupTable, DEFAULT_CAP};
use supq_core::verify::{self, Report};

#[derive(Parser)]
#[command(
    name = "supq",
    version,
    about = "Exact supercharacter tables of Sylow p-subgroups of Sp_2n(q), O_2n(q), O_2n+1(q)"
)]
struct Cli {
    /// Group type: sp (C_n), o-even (D_n), o-odd (B_n)
    #[arg(
        long = "type",
        short = 't',
        value_enum,
        global = true,
        default_value = "sp"
    )]
    group_type: GroupType,

    /// Rank n
    #[arg(long, short = 'n', global = true, default_value_t = 2)]
    n: usize,

    /// Field size q = p^e (odd prime power)
    #[arg(long, short = 'q', global = true, default_value_t = 3)]
    q: u32,

    /// Modulus polynomial for F_q, comma-separated coefficients, lowest
    /// degree first (e.g. 1,0,1 for t^2+1); defaults to the smallest
    /// irreducible
    #[arg(long, global = true, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,

    /// Output format
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,

    /// Output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Worker threads (falls back to SUPQ_THREADS, then 1)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Enumeration cap on q^|Phi| and the ambient group order
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u128,

    /// Raise the soft parameter limits (q <= 17, e <= 2)
    #[arg(long, global = true, default_value_t = false)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupType {
    /// Symplectic, type C_n
    Sp,
    /// Even orthogonal, type D_n
    OEven,
    /// Odd orthogonal, type B_n
    OOdd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Orthogonality,
    Partition,
    Formula,
    Regular,
    Products,
    Restriction,
    Remark,
    Maxdeg,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print the basic sizes: |Phi|, |U|, class count, supercharacter count
    Info,
    /// Emit the full supercharacter table (rows: basic pairs, columns:
    /// conjugacy classes)
    Table,
    /// Run a verification suite and exit 0 only if every identity holds
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let cfg = config::RunConfig::resolve(&cli)?;
    match cli.command {
        Command::Info => {
            let table = cfg.build_group()?;
            let text = output::info_output(&table, cli.format);
            output::write_out(&cli.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table => {
            let group = cfg.build_group()?;
            let rows = table::compute_rows(&group, cfg.threads);
            let text = match cli.format {
                Format::Json => table::render_json(&group, &rows),
                Format::Csv => table::render_csv(&group, &rows),
                Format::Text => table::render_text(&group, &rows),
            };
            output::write_out(&cli.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { check } => {
            let group = cfg.build_group()?;
            let reports = run_checks(&cfg, &group, check)?;
            let all_pass = reports.iter().all(|r| r.passed());
            let text = output::verify_output(&reports, cli.format);
            output::write_out(&cli.out, &text)?;
            if all_pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn run_checks(
    cfg: &config::RunConfig,
    group: &GroupTable,
    check: Check,
) -> Result<Vec<Report>, String> {
    let is_orthogonal = group
        .kind()
        .map(|k| k.family() != supq_core::roots::Family::Symplectic)
        .unwrap_or(false);
    let mut reports = Vec::new();
    let wants = |c: Check| check == c || check == Check::All;
    if wants(Check::Orthogonality) {
        reports.push(verify::verify_orthogonality(group));
    }
    if wants(Check::Partition) {
        reports.push(verify::verify_partition(group));
    }
    if wants(Check::Formula) {
        reports.push(verify::verify_formula(group));
    }
    if wants(Check::Regular) {
        reports.push(verify::verify_regular(group));
    }
    if wants(Check::Products) {
        reports.push(verify::verify_products(group));
    }
    if wants(Check::Restriction) {
        let m = group.scope().m();
        if m > 5 {
            if check == Check::Restriction {
                return Err(format!(
                    "restriction check needs the ambient group U_{m}(q); m <= 5 is the supported cap"
                ));
            }
            // the `all` run simply skips it at larger m
        } else {
            let ambient = cfg.build_ambient(m)?;
            reports.push(verify::verify_restriction(group, &ambient));
        }
    }
    if wants(Check::Remark) {
        if is_orthogonal {
            reports.push(verify::verify_remark(group));
        } else if check == Check::Remark {
            return Err("the remark check applies to the orthogonal types only".into());
        }
    }
    if wants(Check::Maxdeg) {
        reports.push(verify::verify_maxdeg_check(group));
    }
    Ok(reports)
}

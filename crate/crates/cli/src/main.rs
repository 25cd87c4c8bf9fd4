//! `sgcensus`: subgroup counts of finite 2-groups.
//!
//! Exit status is 0 when every comparison agrees, 1 on a mismatch or a
//! failed inequality, and 2 on bad input or an infeasible request.

mod commands;
mod report;

use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::LevelFilter;
use subgroup_census::engine::Method;
use subgroup_census::oracle::DEFAULT_ORACLE_CAP;
use subgroup_census::verify::{Check, InstanceFamily};

use commands::FormKind;
use report::Format;

#[derive(Parser)]
#[command(
    name = "sgcensus",
    version,
    about = "Subgroup counts of finite 2-groups"
)]
struct Cli {
    /// More log output on stderr (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    /// Only errors on stderr.
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest group order the lattice enumeration will accept.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Subgroup counts s_k for k = 0..n.
    Census {
        /// Group, e.g. "D8 x C2^3" or "Q8 * D8^{*2}".
        spec: String,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Recompute with a second method and flag disagreements.
        #[arg(long)]
        compare: Option<Method>,
        #[command(flatten)]
        common: Common,
    },
    /// Run an inequality over a family of groups.
    Verify {
        /// subgroups, quotients, cyclic or lattice.
        check: Check,
        /// Range of log2 orders, e.g. 3..6 or 5.
        #[arg(long, default_value = "3..6", value_parser = parse_range)]
        n: RangeInclusive<u32>,
        /// Comma-separated: abelian, genextra, central-products.
        #[arg(long, value_delimiter = ',', default_values_t = InstanceFamily::ALL.to_vec())]
        families: Vec<InstanceFamily>,
        /// Also run C2^n, which lies outside every check's hypothesis.
        #[arg(long)]
        include_elementary: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Elementary abelian sections H2/H1 by (alpha, beta), against D8 x C2^(n-3).
    Sections {
        spec: String,
        #[arg(long)]
        alpha: Option<u32>,
        #[arg(long)]
        beta: Option<u32>,
        /// Split each cell by position relative to the Frattini subgroup.
        #[arg(long)]
        split: bool,
        #[arg(long, default_value = "auto")]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// Totally singular subspace counts e_i of a standard quadratic form.
    Quadform {
        #[arg(value_enum)]
        kind: FormKind,
        #[arg(long)]
        r: u32,
        /// Extra radical coordinates on which the form vanishes.
        #[arg(long, default_value_t = 0)]
        m0: u32,
        /// Largest subspace dimension to report.
        #[arg(long)]
        max_d: Option<u32>,
        /// Compare against lattice enumeration of the matching group.
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Subgroup lattice level sizes by enumeration.
    Lattice {
        spec: String,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("`{x}`: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.trim_start_matches('='))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Census {
            spec,
            method,
            compare,
            common,
        } => commands::census(&commands::CensusArgs {
            spec,
            method,
            compare,
            oracle_cap: common.oracle_cap,
            format: common.format,
        }),
        Command::Verify {
            check,
            n,
            families,
            include_elementary,
            common,
        } => commands::run_verify(&commands::VerifyArgs {
            check,
            n,
            families,
            include_elementary,
            oracle_cap: common.oracle_cap,
            format: common.format,
        }),
        Command::Sections {
            spec,
            alpha,
            beta,
            split,
            method,
            common,
        } => commands::sections(&commands::SectionsArgs {
            spec,
            alpha,
            beta,
            split,
            method,
            oracle_cap: common.oracle_cap,
            format: common.format,
        }),
        Command::Quadform {
            kind,
            r,
            m0,
            max_d,
            cross_check,
            common,
        } => commands::quadform(&commands::QuadformArgs {
            kind,
            r,
            m0,
            max_d,
            cross_check,
            oracle_cap: common.oracle_cap,
            format: common.format,
        }),
        Command::Lattice { spec, common } => commands::lattice(&commands::LatticeArgs {
            spec,
            oracle_cap: common.oracle_cap,
            format: common.format,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match (cli.quiet, cli.verbose) {
        (true, _) => LevelFilter::Error,
        (false, 0) => LevelFilter::Warn,
        (false, 1) => LevelFilter::Info,
        (false, _) => LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e)
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

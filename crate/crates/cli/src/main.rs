use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use iterate_census::census::{
    incidence_matrix, run_census, CensusConfig, CensusMode, CensusReport, DEFAULT_BRUTE_CAP,
    DEFAULT_CLOSED_CAP, EXTENDED_BRUTE_CAP,
};
use iterate_census::tree::DEFAULT_ENUMERATION_CAP;
use iterate_census::verify::{run_suite, VerifyOptions};
use iterate_census::{asymptotic_row, build_tableau, enumerate_iterates, AsymptoticRow, Error, TableauKind};

const EXIT_ARGUMENT: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "iterate-census", version, about = "Count reducible identities between n-iterates of a binary operation")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Worker threads for brute-force counting.
    #[arg(long, global = true, env = "ITERATE_CENSUS_THREADS", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,

    /// Largest order for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP, value_parser = positive)]
    enum_cap: usize,

    /// Largest order for brute-force counting (defaults to 9, or 10 with --extended).
    #[arg(long, global = true, value_parser = positive)]
    brute_cap: Option<usize>,

    /// Raise the default brute-force cap to 10.
    #[arg(long, global = true)]
    extended: bool,

    /// Write the data stream to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Report version and timing on standard error.
    #[arg(long, short, global = true)]
    verbose: bool,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Brute,
    Closed,
    Both,
}

impl From<Mode> for CensusMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Brute => CensusMode::Brute,
            Mode::Closed => CensusMode::Closed,
            Mode::Both => CensusMode::Both,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    A,
    B,
    Ab,
}

impl From<Kind> for TableauKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::A => TableauKind::A,
            Kind::B => TableauKind::B,
            Kind::Ab => TableauKind::AB,
        }
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Orders {
    /// A single order.
    #[arg(long)]
    n: Option<usize>,

    /// Comma-separated orders, e.g. 3,4,5.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    n_list: Option<Vec<usize>>,
}

impl Orders {
    fn list(&self) -> Vec<usize> {
        match (&self.n, &self.n_list) {
            (Some(n), _) => vec![*n],
            (None, Some(l)) => l.clone(),
            (None, None) => unreachable!("clap enforces one of --n, --n-list"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every n-iterate in canonical order.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dump the lines of a tableau.
    Tableau {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Ab)]
        tableau: Kind,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the 0/1 incidence matrix of reducible identities.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Ab)]
        tableau: Kind,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Count reducible identities by brute force, closed forms, or both.
    Census {
        #[command(flatten)]
        orders: Orders,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the full invariant suite.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Seed for sampled intersection tuples.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Exact reducible fraction against the asymptotic estimate and bound.
    Asymptote {
        /// Comma-separated orders, e.g. 10,100,1000
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        n_list: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Emit two whitespace-separated columns (n, exact_ratio) for plotting.
        #[arg(long)]
        gnuplot: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Census(Error),
    Io(io::Error),
    /// Verification ran to completion and some checks failed.
    Checks(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Census(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn census_config(c: &Common) -> CensusConfig {
    let default_brute = if c.extended { EXTENDED_BRUTE_CAP } else { DEFAULT_BRUTE_CAP };
    CensusConfig {
        enumeration_cap: c.enum_cap,
        brute_cap: c.brute_cap.unwrap_or(default_brute),
        closed_cap: DEFAULT_CLOSED_CAP,
        workers: c.workers as usize,
    }
}

fn write_json(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    // through Value so key order is canonical and a parse/re-serialize is idempotent
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn enumerate(out: &mut dyn Write, n: usize, format: Format, config: &CensusConfig) -> Result<(), Failure> {
    let trees = enumerate_iterates(n, config.enumeration_cap)?;
    match format {
        Format::Json => {
            let items: Vec<Value> = trees
                .iter()
                .map(|t| json!({ "code": t.code_string(), "word": t.to_word() }))
                .collect();
            write_json(out, &json!({ "n": n, "iterates": items }))
        }
        Format::Csv => {
            writeln!(out, "index,code,word")?;
            for (i, t) in trees.iter().enumerate() {
                writeln!(out, "{},{},{}", i + 1, t.code_string(), t.to_word())?;
            }
            Ok(())
        }
        Format::Text => {
            for (i, t) in trees.iter().enumerate() {
                writeln!(out, "J{}\t{}\t{}", i + 1, t.code_string(), t.to_word())?;
            }
            Ok(())
        }
    }
}

fn tableau(out: &mut dyn Write, n: usize, kind: Kind, format: Format, config: &CensusConfig) -> Result<(), Failure> {
    let t = build_tableau(kind.into(), n, config.enumeration_cap)?;
    let dump = t.dump();
    match format {
        Format::Json => write_json(out, &serde_json::to_value(&dump)?),
        Format::Csv => {
            writeln!(out, "line,code,word")?;
            for i in 1..=t.line_count() {
                for tree in t.line_trees(i)? {
                    writeln!(out, "{i},{},{}", tree.code_string(), tree.to_word())?;
                }
            }
            Ok(())
        }
        Format::Text => {
            for i in 1..=t.line_count() {
                let words: Vec<String> = t.line_trees(i)?.iter().map(|w| w.to_word()).collect();
                writeln!(out, "L{i}: {}", words.join(", "))?;
            }
            Ok(())
        }
    }
}

fn matrix(out: &mut dyn Write, n: usize, kind: Kind, format: Format, config: &CensusConfig) -> Result<(), Failure> {
    if kind == Kind::B {
        return Err(Error::Argument("incidence matrices are defined for tableaux a and ab".into()).into());
    }
    let t = build_tableau(kind.into(), n, config.enumeration_cap)?;
    let m = incidence_matrix(&t)?;
    match format {
        Format::Json => {
            let codes: Vec<String> = t.universe().iter().map(|w| w.code_string()).collect();
            write_json(out, &json!({ "n": n, "kind": TableauKind::from(kind), "iterates": codes, "matrix": m }))
        }
        Format::Csv => {
            let header: Vec<String> = (1..=m.len()).map(|i| format!("J{i}")).collect();
            writeln!(out, "{}", header.join(","))?;
            for row in &m {
                let cells: Vec<String> = row.iter().map(u8::to_string).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
            Ok(())
        }
        Format::Text => {
            for (row, tree) in m.iter().zip(t.universe()) {
                let cells: Vec<String> = row.iter().map(u8::to_string).collect();
                let sum: u32 = row.iter().map(|&v| v as u32).sum();
                writeln!(out, "{}  | {sum}  {}", cells.join(" "), tree.to_word())?;
            }
            Ok(())
        }
    }
}

fn census(out: &mut dyn Write, orders: &[usize], mode: Mode, format: Format, config: &CensusConfig) -> Result<(), Failure> {
    let reports = orders
        .iter()
        .map(|&n| run_census(n, mode.into(), config))
        .collect::<Result<Vec<CensusReport>, _>>()?;
    match format {
        Format::Json => {
            let v = if reports.len() == 1 {
                serde_json::to_value(&reports[0])?
            } else {
                serde_json::to_value(&reports)?
            };
            write_json(out, &v)
        }
        Format::Csv => {
            writeln!(out, "{}", CensusReport::CSV_HEADER)?;
            for r in &reports {
                writeln!(out, "{}", r.csv_row())?;
            }
            Ok(())
        }
        Format::Text => {
            for r in &reports {
                writeln!(out, "{r}\n")?;
            }
            Ok(())
        }
    }
}

fn verify(out: &mut dyn Write, max_n: usize, seed: u64, config: &CensusConfig) -> Result<(), Failure> {
    if max_n > config.enumeration_cap {
        return Err(Error::ResourceLimit { what: "verification order", requested: max_n, cap: config.enumeration_cap }.into());
    }
    let outcomes = run_suite(&VerifyOptions { max_n, config: *config, seed });
    let mut failed = 0;
    for c in &outcomes {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{tag} {}: {}", c.name, c.detail)?;
        if !c.passed {
            eprintln!("FAIL {}: {}", c.name, c.detail);
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(Failure::Checks(failed));
    }
    Ok(())
}

fn asymptote(out: &mut dyn Write, orders: &[usize], format: Format, gnuplot: bool) -> Result<(), Failure> {
    let rows = orders
        .iter()
        .map(|&n| asymptotic_row(n, DEFAULT_CLOSED_CAP))
        .collect::<Result<Vec<AsymptoticRow>, _>>()?;
    if gnuplot {
        writeln!(out, "# n exact_ratio")?;
        for r in &rows {
            writeln!(out, "{} {:e}", r.n, r.exact_ratio)?;
        }
        return Ok(());
    }
    match format {
        Format::Json => write_json(out, &serde_json::to_value(&rows)?),
        Format::Csv => {
            writeln!(out, "{}", AsymptoticRow::CSV_HEADER)?;
            for r in &rows {
                writeln!(out, "{}", r.csv_row())?;
            }
            Ok(())
        }
        Format::Text => {
            writeln!(out, "{:>6} {:>14} {:>14} {:>14} {:>14}", "n", "exact", "estimate", "irreducible", "bound")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>6} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
                    r.n, r.exact_ratio, r.estimate_ratio, r.irreducible_exact_ratio, r.theorem_bound_ratio
                )?;
            }
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let config = census_config(&cli.common);
    let mut sink: Box<dyn Write> = match &cli.common.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let out = sink.as_mut();
    match &cli.command {
        Command::Enumerate { n, format } => enumerate(out, *n, *format, &config)?,
        Command::Tableau { n, tableau: kind, format } => tableau(out, *n, *kind, *format, &config)?,
        Command::Matrix { n, tableau: kind, format } => matrix(out, *n, *kind, *format, &config)?,
        Command::Census { orders, mode, format } => census(out, &orders.list(), *mode, *format, &config)?,
        Command::Verify { max_n, seed } => {
            let result = verify(out, *max_n, *seed, &config);
            out.flush()?;
            result?
        }
        Command::Asymptote { n_list, format, gnuplot } => asymptote(out, n_list, *format, *gnuplot)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ARGUMENT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let result = run(&cli);
    if cli.common.verbose {
        eprintln!(
            "iterate-census {} finished in {:.3} s",
            env!("CARGO_PKG_VERSION"),
            started.elapsed().as_secs_f64()
        );
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Census(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Argument(_) => EXIT_ARGUMENT,
                Error::ResourceLimit { .. } => EXIT_RESOURCE,
                Error::Consistency(_) => EXIT_CONSISTENCY,
            })
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ARGUMENT)
        }
        Err(Failure::Checks(n)) => {
            eprintln!("error: {n} verification check(s) failed");
            ExitCode::from(EXIT_CONSISTENCY)
        }
    }
}

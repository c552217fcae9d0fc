//! `interpolatia`: coefficient tables, verification suites and conjecture
//! harnesses for interpolation Jack and Macdonald polynomials.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use interpolatia_core::coefficients::{CoefficientTable, Engine, TableKind};
use interpolatia_core::exactalg::CertBudget;
use interpolatia_core::interpolation::{interp_poly, Normalization};
use interpolatia_core::positivity::{
    run_conjecture, run_suite, Conjecture, Grid, Outcome, RunOptions, Session, Suite,
};
use interpolatia_core::{Family, FamilyConfig, Partition};
use serde::Serialize;
use serde_json::json;

const EXIT_THEOREM_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "interpolatia",
    version,
    about = "Exact interpolation polynomials, binomial and LR coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a coefficient, polynomial or table.
    Compute {
        #[arg(value_enum)]
        what: Quantity,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite; exits 1 if a proved identity fails.
    Verify {
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Run a conjecture harness; findings never change the exit code.
    Conjecture {
        name: Conjecture,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    /// Binomial coefficient b_{lambda mu}
    B,
    /// Inverse binomial coefficient b'_{lambda mu}
    BInv,
    /// Adjacent binomial coefficient (zero off covers)
    A,
    /// Littlewood-Richardson coefficient c^lambda_{mu nu}
    Lr,
    /// Integral forms B_{lambda mu} and A_{lambda mu}
    Integral,
    /// Interpolation polynomial h_mu
    H,
    /// Coefficient table over all partitions up to --max-size
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct Common {
    /// AJ, BJ, AM or BM; verify and conjecture default to all four.
    #[arg(long)]
    family: Option<Family>,
    /// Number of variables.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Partition such as [2,1], padded to length n.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    /// monic, unital or integral.
    #[arg(long, default_value = "unital")]
    norm: Normalization,
    /// Largest partition size considered.
    #[arg(long = "max-size", visible_alias = "max", default_value_t = 5)]
    max_size: u32,
    /// Table kind for `compute table`.
    #[arg(long, default_value = "b")]
    kind: TableKind,
    /// Output path; verify and conjecture default to <command>-<name>.<ext>.
    #[arg(long)]
    out: Option<PathBuf>,
    /// text for compute, json lines for evidence unless given.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for sampling points.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest Polya exponent tried when certifying positivity.
    #[arg(long = "budget-N", default_value_t = 50)]
    budget_n: u32,
}

enum Failure {
    Usage(String),
    Internal(String),
    Io(io::Error),
}

impl From<interpolatia_core::Error> for Failure {
    fn from(e: interpolatia_core::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Common {
    fn partition(&self, value: &Option<String>, flag: &str) -> Result<Partition, Failure> {
        let s = value
            .as_deref()
            .ok_or_else(|| Failure::Usage(format!("--{} is required", flag)))?;
        Partition::parse(s, self.n).map_err(|e| Failure::Usage(format!("--{}: {}", flag, e)))
    }

    fn family(&self) -> Result<Family, Failure> {
        self.family
            .ok_or_else(|| Failure::Usage("--family is required".into()))
    }

    fn families(&self) -> Vec<Family> {
        self.family
            .map_or_else(|| Family::ALL.to_vec(), |f| vec![f])
    }

    fn writer(&self, default: Option<String>) -> Result<Box<dyn Write>, Failure> {
        match self.out.clone().or(default.map(PathBuf::from)) {
            Some(p) => Ok(Box::new(BufWriter::new(File::create(&p).map_err(|e| {
                Failure::Usage(format!("cannot write {}: {}", p.display(), e))
            })?))),
            None => Ok(Box::new(io::stdout().lock())),
        }
    }

    fn options(&self) -> RunOptions {
        let mut opts = RunOptions::new(
            self.families(),
            Grid {
                n: self.n,
                max_size: self.max_size,
            },
        );
        opts.budget = CertBudget {
            n_max: self.budget_n,
            seed: self.seed,
            ..CertBudget::default()
        };
        opts.seed = self.seed;
        opts
    }
}

#[derive(Serialize)]
struct Header<'a> {
    record: &'static str,
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    name: String,
    families: Vec<String>,
    n: usize,
    max_size: u32,
    seed: u64,
    budget_n: u32,
}

fn header<'a>(command: &'a str, name: String, c: &Common) -> Header<'a> {
    Header {
        record: "header",
        tool: "interpolatia",
        version: env!("CARGO_PKG_VERSION"),
        command,
        name,
        families: c.families().iter().map(|f| f.to_string()).collect(),
        n: c.n,
        max_size: c.max_size,
        seed: c.seed,
        budget_n: c.budget_n,
    }
}

fn compute(what: Quantity, c: &Common) -> Result<(), Failure> {
    let family = c.family()?;
    let cfg = FamilyConfig::new(family, c.n).map_err(|e| Failure::Usage(e.to_string()))?;
    let engine = Engine::new(cfg);
    let format = c.format.unwrap_or(Format::Text);
    let mut out = c.writer(None)?;
    let scalar = |out: &mut dyn Write, key: &str, value: String| -> Result<(), Failure> {
        match format {
            Format::Json => writeln!(
                out,
                "{}",
                json!({"family": family.to_string(), "n": c.n, "lambda": c.lambda, "mu": c.mu, "nu": c.nu, key: value})
            )?,
            _ => writeln!(out, "{}", value)?,
        }
        Ok(())
    };
    match what {
        Quantity::B | Quantity::BInv | Quantity::A => {
            let l = c.partition(&c.lambda, "lambda")?;
            let mu = c.partition(&c.mu, "mu")?;
            let v = match what {
                Quantity::B => engine.b_direct(&l, &mu)?,
                Quantity::BInv => engine.b_inverse(&l, &mu)?,
                _ => engine.a_entry(&l, &mu)?,
            };
            scalar(&mut out, "value", v.to_string())?;
        }
        Quantity::Lr => {
            let l = c.partition(&c.lambda, "lambda")?;
            let mu = c.partition(&c.mu, "mu")?;
            let nu = c.partition(&c.nu, "nu")?;
            scalar(
                &mut out,
                "value",
                engine.lr_weighted(&l, &mu, &nu)?.to_string(),
            )?;
        }
        Quantity::Integral => {
            let l = c.partition(&c.lambda, "lambda")?;
            let mu = c.partition(&c.mu, "mu")?;
            let f = engine.integral_forms(&l, &mu)?;
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&f).map_err(|e| Failure::Internal(e.to_string()))?
                )?,
                _ => writeln!(out, "B = {}\nA = {}", f.b, f.a)?,
            }
        }
        Quantity::H => {
            let mu = c.partition(&c.mu, "mu")?;
            let h = interp_poly(&cfg, &mu, c.norm)?;
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"family": family.to_string(), "n": c.n, "mu": mu.to_string(), "norm": c.norm.to_string(),
                           "polynomial": h.to_string(), "terms": h.to_json_terms()})
                )?,
                _ => writeln!(out, "{}", h)?,
            }
        }
        Quantity::Table => {
            let t = engine.table(c.kind, c.max_size)?;
            write_table(&mut out, &t, format)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn write_table(out: &mut dyn Write, t: &CoefficientTable, format: Format) -> Result<(), Failure> {
    match format {
        Format::Csv => out.write_all(t.to_csv()?.as_bytes())?,
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(t).map_err(|e| Failure::Internal(e.to_string()))?
        )?,
        Format::Text => {
            for (ps, v) in &t.entries {
                let names: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                writeln!(out, "{} {}: {}", t.kind, names.join(" "), v)?;
            }
        }
    }
    Ok(())
}

fn write_outcome(
    out: &mut dyn Write,
    outcome: &Outcome,
    head: &Header,
    format: Format,
) -> Result<(), Failure> {
    let s = outcome.summary();
    match format {
        Format::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string(head).map_err(|e| Failure::Internal(e.to_string()))?
            )?;
            for r in &outcome.records {
                writeln!(out, "{}", r.to_json())?;
            }
            writeln!(
                out,
                "{}",
                json!({"record": "summary", "certified": s.certified, "refuted": s.refuted,
                       "inconclusive": s.inconclusive, "failures": outcome.failures.len()})
            )?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &outcome.records {
                w.serialize(r)
                    .map_err(|e| Failure::Internal(e.to_string()))?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in &outcome.records {
                let detail = r
                    .certificate
                    .as_deref()
                    .or(r.witness.as_deref())
                    .unwrap_or("");
                let nu =
                    r.nu.as_deref()
                        .map(|v| format!(" nu={}", v))
                        .unwrap_or_default();
                writeln!(
                    out,
                    "{} {} {} {}{} {} {}",
                    r.claim, r.family, r.lambda, r.mu, nu, r.verdict, detail
                )?;
            }
        }
    }
    Ok(())
}

fn evidence(command: &str, name: String, c: &Common, outcome: &Outcome) -> Result<(), Failure> {
    let format = c.format.unwrap_or(Format::Json);
    let ext = match format {
        Format::Json => "jsonl",
        Format::Csv => "csv",
        Format::Text => "txt",
    };
    let path = c
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}-{}.{}", command, name, ext)));
    let mut out = BufWriter::new(
        File::create(&path)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {}", path.display(), e)))?,
    );
    write_outcome(&mut out, outcome, &header(command, name.clone(), c), format)?;
    out.flush()?;
    let s = outcome.summary();
    let mut stdout = io::stdout().lock();
    writeln!(
        stdout,
        "{} {}: {} records ({} certified, {} refuted, {} inconclusive), {} {}; evidence in {}",
        command,
        name,
        s.total(),
        s.certified,
        s.refuted,
        s.inconclusive,
        outcome.failures.len(),
        if command == "verify" {
            "failures"
        } else {
            "findings"
        },
        path.display()
    )?;
    for f in outcome.failures.iter().take(20) {
        writeln!(stdout, "  {}", f)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Compute { what, common } => {
            compute(what, &common)?;
            Ok(0)
        }
        Command::Verify { suite, common } => {
            let outcome = run_suite(&Session::new(), suite, &common.options())?;
            evidence("verify", suite.to_string(), &common, &outcome)?;
            Ok(if outcome.passed() {
                0
            } else {
                EXIT_THEOREM_FAILURE
            })
        }
        Command::Conjecture { name, common } => {
            let outcome = run_conjecture(&Session::new(), name, &common.options())?;
            evidence("conjecture", name.to_string(), &common, &outcome)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("io error: {}", e);
            ExitCode::from(EXIT_INTERNAL)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {}", m);
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

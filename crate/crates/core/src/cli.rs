//! The `meadowlab` command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::models::{
    check_model, eval, normalize_closed, Assignment, CheckError, Model, ModelError, ModelVerdict,
    NormalizeError,
};
use crate::parse::{parse_equation, parse_term, ParseError};
use crate::print::print_term;
use crate::report::{EquationVerdict, Report, ReportVerdict};
use crate::residues::{
    max_f_below, max_f_first_primes, residue_set, witness_prime_for_qr_set, write_bfile,
    write_bfile_by_prime_index, ResidueError,
};
use crate::schema::{parse_schema_spec, SchemaError};
use crate::speccheck::{
    example_check, h_family_report, proposition_check, spec_report, Labeled, SpecError,
    DEFAULT_PRIME_BOUND,
};
use crate::term::Signature;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Bfile,
}

/// Settings shared by all subcommands. Every flag can also be set through a
/// `MEADOWLAB_*` environment variable.
#[derive(Clone, Debug, clap::Args)]
pub struct Config {
    /// Largest prime considered by searches.
    #[arg(long = "bound", global = true, env = "MEADOWLAB_BOUND", default_value_t = DEFAULT_PRIME_BOUND)]
    pub prime_bound: u64,
    /// Random assignments per sampled check.
    #[arg(long, global = true, env = "MEADOWLAB_SAMPLES", default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, global = true, env = "MEADOWLAB_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, env = "MEADOWLAB_OUTPUT", value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// q0, fp:<p> or qi.
    #[arg(long, global = true, env = "MEADOWLAB_MODEL", default_value = "q0")]
    pub model: String,
}

impl Config {
    fn validate(&self) -> Result<(), CliError> {
        if self.prime_bound < 2 {
            return Err(CliError::Usage("--bound must be at least 2".into()));
        }
        if self.samples < 1 {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
        Ok(())
    }

    fn model(&self) -> Result<Model, CliError> {
        Ok(self.model.parse()?)
    }
}

#[derive(Debug, Parser)]
#[command(name = "meadowlab", version, about = "Exact computation with meadows")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a term in the selected model.
    Eval {
        term: String,
        /// Variable binding such as x=1/2 (repeatable).
        #[arg(long = "bind", short = 'b')]
        bindings: Vec<String>,
    },
    /// Check an equation: exhaustively in fp:<p>, by sampling in q0 and qi.
    CheckModel { equation: String },
    /// List the quadratic residues of a prime.
    Residues { p: u64 },
    /// Distance from n to its largest quadratic residue, for n in START..=END.
    F {
        start: u64,
        end: Option<u64>,
        /// Emit f(prime(n)) for prime indices n, as the A088192 b-file does.
        #[arg(long)]
        by_prime_index: bool,
    },
    /// Largest f(p) over primes p < BOUND.
    Maxf {
        bound: u64,
        /// Take BOUND as a count: the first BOUND primes.
        #[arg(long)]
        by_prime_index: bool,
    },
    /// Smallest prime for which every member of SET (comma separated) is a quadratic residue.
    Witness { set: String },
    /// Search for a prime field satisfying every listed schema (Md, Md:k, L:n, H:a..b, C:n, or an equation).
    Speccheck {
        #[arg(required = true)]
        schemas: Vec<String>,
    },
    /// Smallest prime field satisfying H_0 .. H_N.
    Hfamily { n: u64 },
    /// Check that the first prime with f(p) > N + 1 satisfies H_0 .. H_N.
    Proposition { n: u64 },
    /// Verify the (x²-2)(x²-3)(x²-6) example.
    Example,
    /// Rewrite a closed term to the form l*inv(m) + (p*inv(q))*i.
    Normalize { term: String },
}

/// Runs the CLI on `args`, writing to `out`. Returns the process exit code:
/// 0 on success, 1 when a verification did not hold.
pub fn run<I, T, W>(args: I, out: &mut W) -> Result<i32, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(
            e.kind(),
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
        ) =>
        {
            write!(out, "{e}")?;
            return Ok(0);
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    execute(&cli, out)
}

fn emit_report<W: Write>(out: &mut W, cfg: &Config, r: &Report) -> Result<(), CliError> {
    if cfg.output == OutputFormat::Json {
        writeln!(out, "{}", r.to_json())?;
        return Ok(());
    }
    let head = match (r.verdict, r.witness_prime) {
        (ReportVerdict::NotASpec, Some(p)) => format!("NotASpec({p})"),
        (ReportVerdict::WitnessFound, Some(p)) => format!("WitnessFound({p})"),
        (ReportVerdict::Confirmed, Some(p)) => format!("Confirmed({p})"),
        (ReportVerdict::Refuted, Some(p)) => format!("Refuted({p})"),
        _ => format!("NoWitnessBelow({})", r.bound),
    };
    writeln!(out, "{head}")?;
    if let Some(v) = r.f_value {
        writeln!(out, "f = {v}")?;
    }
    for e in &r.per_equation {
        match (&e.verdict, &e.counterexample) {
            (EquationVerdict::Falsified, Some(cx)) => {
                let cx: Vec<String> = cx.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(out, "  {}: falsified at {}", e.schema, cx.join(", "))?
            }
            _ => writeln!(out, "  {}: satisfied", e.schema)?,
        }
    }
    Ok(())
}

fn format_assignment(a: &Assignment) -> String {
    a.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn signature_for(model: &Model) -> Signature {
    match model {
        Model::QI => Signature::Extended,
        _ => Signature::Plain,
    }
}

pub fn execute<W: Write>(cli: &Cli, out: &mut W) -> Result<i32, CliError> {
    let cfg = &cli.config;
    cfg.validate()?;
    let json_out = cfg.output == OutputFormat::Json;
    match &cli.command {
        Command::Eval { term, bindings } => {
            let model = cfg.model()?;
            let t = parse_term(term, signature_for(&model))?;
            let mut env = Assignment::new();
            for b in bindings {
                let (name, value) = b
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("binding {b:?} is not of the form name=value")))?;
                env.insert(name.trim().to_string(), model.parse_value(value)?);
            }
            let v = eval(&t, &model, &env)?;
            if json_out {
                writeln!(out, "{}", json!({"model": model.name(), "value": v.to_string()}))?;
            } else {
                writeln!(out, "{v}")?;
            }
        }
        Command::CheckModel { equation } => {
            let model = cfg.model()?;
            let e = parse_equation(equation, signature_for(&model))?;
            let verdict = check_model(&e, &model, cfg.samples, cfg.seed)?;
            let exhaustive = matches!(model, Model::Fp(_));
            match (&verdict, json_out) {
                (ModelVerdict::Satisfied, true) => writeln!(
                    out,
                    "{}",
                    json!({"model": model.name(), "verdict": "satisfied", "exhaustive": exhaustive})
                )?,
                (ModelVerdict::Falsified(a), true) => {
                    let cx: serde_json::Map<String, serde_json::Value> =
                        a.iter().map(|(k, v)| (k.clone(), v.to_string().into())).collect();
                    writeln!(
                        out,
                        "{}",
                        json!({"model": model.name(), "verdict": "falsified", "exhaustive": exhaustive, "counterexample": cx})
                    )?
                }
                (ModelVerdict::Satisfied, false) if exhaustive => writeln!(out, "satisfied")?,
                (ModelVerdict::Satisfied, false) => writeln!(
                    out,
                    "satisfied (no counterexample in {} samples, seed {})",
                    cfg.samples, cfg.seed
                )?,
                (ModelVerdict::Falsified(a), false) => {
                    writeln!(out, "falsified at {}", format_assignment(a))?
                }
            }
        }
        Command::Residues { p } => {
            let rs = residue_set(*p)?;
            if json_out {
                writeln!(out, "{}", json!({"modulus": p, "residues": rs.residues()}))?;
            } else {
                let items: Vec<String> = rs.residues().iter().map(u64::to_string).collect();
                writeln!(out, "{}", items.join(" "))?;
            }
        }
        Command::F {
            start,
            end,
            by_prime_index,
        } => {
            let end = end.unwrap_or(*start);
            if end < *start {
                return Err(CliError::Usage("END must not be below START".into()));
            }
            if *by_prime_index && *start == 0 {
                return Err(CliError::Usage("prime indices start at 1".into()));
            }
            let mut text = Vec::new();
            if *by_prime_index {
                write_bfile_by_prime_index(&mut text, *start, end)?;
            } else {
                write_bfile(&mut text, *start, end)?;
            }
            if json_out {
                let rows: Vec<_> = String::from_utf8_lossy(&text)
                    .lines()
                    .filter_map(|l| l.split_once(' '))
                    .map(|(n, v)| json!({"n": n.parse::<u64>().ok(), "value": v.parse::<u64>().ok()}))
                    .collect();
                writeln!(out, "{}", serde_json::Value::Array(rows))?;
            } else {
                out.write_all(&text)?;
            }
        }
        Command::Maxf {
            bound,
            by_prime_index,
        } => {
            if *bound < 2 && !*by_prime_index {
                return Err(CliError::Usage("maxf needs a bound of at least 2".into()));
            }
            let (best, range) = if *by_prime_index {
                (max_f_first_primes(*bound as usize), format!("the first {bound} primes"))
            } else {
                (max_f_below(*bound), format!("primes p < {bound}"))
            };
            match best {
                Some((p, v)) if json_out => {
                    writeln!(out, "{}", json!({"bound": bound, "prime": p, "value": v}))?
                }
                Some((p, v)) => writeln!(out, "max f(p) over {range}: {v} at p = {p}")?,
                None if json_out => writeln!(out, "{}", json!({"bound": bound, "prime": null, "value": null}))?,
                None => writeln!(out, "no primes in {range}")?,
            }
        }
        Command::Witness { set } => {
            let members: BTreeSet<u64> = set
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("cannot read {set:?} as a comma separated list")))?;
            if members.is_empty() || members.contains(&0) {
                return Err(CliError::Usage("the set must be nonempty with positive members".into()));
            }
            let found = witness_prime_for_qr_set(&members, cfg.prime_bound);
            if json_out {
                writeln!(
                    out,
                    "{}",
                    json!({"set": members, "bound": cfg.prime_bound, "prime": found})
                )?;
            } else {
                match found {
                    Some(p) => writeln!(out, "{p}")?,
                    None => writeln!(out, "none <= {}", cfg.prime_bound)?,
                }
            }
        }
        Command::Speccheck { schemas } => {
            let mut eqs = Vec::new();
            for s in schemas {
                if s.contains('=') {
                    eqs.push(Labeled::new(s.clone(), parse_equation(s, Signature::Plain)?));
                } else {
                    for id in parse_schema_spec(s)? {
                        eqs.push(Labeled::from_schema(id)?);
                    }
                }
            }
            emit_report(out, cfg, &spec_report(&eqs, cfg.prime_bound)?)?;
        }
        Command::Hfamily { n } => {
            let r = h_family_report(*n, cfg.prime_bound)?;
            emit_report(out, cfg, &r)?;
            if r.witness_prime.is_none() {
                return Ok(1);
            }
        }
        Command::Proposition { n } => {
            let r = proposition_check(*n, cfg.prime_bound)?;
            emit_report(out, cfg, &r)?;
            if r.verdict != ReportVerdict::Confirmed {
                return Ok(1);
            }
        }
        Command::Example => {
            let r = example_check(cfg.prime_bound, cfg.samples, cfg.seed)?;
            if json_out {
                writeln!(out, "{}", r.to_json())?;
            } else {
                writeln!(out, "{}", if r.holds { "holds" } else { "FAILED" })?;
                writeln!(
                    out,
                    "  root mod p for all {} primes <= {}: {}",
                    r.primes_checked,
                    r.bound,
                    if r.primes_without_root.is_empty() {
                        "yes".to_string()
                    } else {
                        format!("no, missing at {:?}", r.primes_without_root)
                    }
                )?;
                if let Some([p, x]) = r.largest_least_root {
                    writeln!(out, "  largest least root: x = {x} at p = {p}")?;
                }
                writeln!(out, "  no rational root: {}", r.no_rational_root)?;
                writeln!(
                    out,
                    "  one of 2, 3, 6 a residue of every odd prime <= {}: {}",
                    r.bound,
                    r.residue_cover_failures.is_empty()
                )?;
                writeln!(out, "  i*i + 1 = 0 in qi: {}", r.gaussian.i_squared_plus_one_is_zero)?;
                writeln!(
                    out,
                    "  f(x) * inv(f(x)) = 1 in qi ({} forced + {} samples, seed {}): {:?}",
                    r.gaussian.forced_points,
                    r.gaussian.samples,
                    r.gaussian.seed,
                    r.gaussian.unit_equation.verdict
                )?;
            }
            if !r.holds {
                return Ok(1);
            }
        }
        Command::Normalize { term } => {
            let t = parse_term(term, Signature::Extended)?;
            let n = normalize_closed(&t)?;
            if json_out {
                writeln!(out, "{}", json!({"term": print_term(&n)}))?;
            } else {
                writeln!(out, "{}", print_term(&n))?;
            }
        }
    }
    Ok(0)
}

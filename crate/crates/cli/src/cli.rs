//! Command-line interface.
//!
//! Exit codes: 0 when every check passes, 1 for usage and input errors, 2
//! when a mathematical assertion fails. Results go to stdout and
//! diagnostics to stderr.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use grassmann_core::centralizer::{is_maximal_commutative, CENTRALIZER_RANK_LIMIT};
use grassmann_core::counting::{verify_c3_identity, verify_gamma_identity};
use grassmann_core::families::{
    complete_family, enumerate_maximal_families, even_rank_dimension, family_to_subalgebra,
    is_intersecting, is_maximal_family_fast, is_maximal_family_naive, Check,
};
use grassmann_core::polyring::{verify_factorization, verify_scaling_chain};
use grassmann_core::{
    AlgebraContext, BigInt, CentralizerError, Field, Maximality, OddFamily, PrimeField, Rationals,
};
use serde_json::json;

use crate::famfile::{self, set_notation};
use crate::report::{sweep_ordered, Format, ReportWriter};

/// Environment variable holding the number of sweep worker threads.
pub const WORKERS_ENV: &str = "GRASSMANN_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "grassmann", version, about = "Exact Grassmann algebra and counting certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep Q_k = (C1 + C2 + C3) / 2^(4k+7) over a range of k.
    Qk(QkArgs),
    /// Run identity certificates.
    Verify(VerifyArgs),
    /// Tools for odd intersecting families.
    #[command(subcommand)]
    Family(FamilyCommand),
}

#[derive(Debug, Args)]
pub struct QkArgs {
    #[arg(long = "from", default_value_t = 2)]
    pub k_from: u64,
    #[arg(long = "to", default_value_t = 1000)]
    pub k_to: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    C3ClosedForm,
    Gamma,
    Factorization,
    ScalingChain,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Which::All)]
    pub which: Which,
    /// Largest k checked. Defaults: 200 for the closed form, 100 for the
    /// gamma expansion, 50 for the scaling chain.
    #[arg(long)]
    pub kmax: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldChoice {
    Rationals,
    Gf3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// Report whether a family is intersecting and maximal.
    Check {
        #[arg(long)]
        file: PathBuf,
        /// Use the subset-reachability table instead of the pairwise scan.
        #[arg(long)]
        fast: bool,
        #[arg(long, value_enum, default_value_t = FamilyFormat::Text)]
        format: FamilyFormat,
    },
    /// Greedily extend a family to a maximal one.
    Complete {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List every maximal family over [n] (n <= 5).
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = FamilyFormat::Text)]
        format: FamilyFormat,
    },
    /// Build the matching subalgebra of G(n) and certify maximality through
    /// its centralizer (n <= 10).
    Certify {
        #[arg(long)]
        file: PathBuf,
        /// Must match the file header when given.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = FieldChoice::Rationals)]
        field: FieldChoice,
        #[arg(long, value_enum, default_value_t = FamilyFormat::Text)]
        format: FamilyFormat,
    },
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Assertion(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow::anyhow!(msg.into()))
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Assertion(msg)) => {
            eprintln!("assertion failed: {msg}");
            ExitCode::from(2)
        }
    }
}

pub fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Qk(args) => cmd_qk(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Family(cmd) => cmd_family(cmd),
    }
}

fn workers() -> Result<usize, Failure> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(w) if w >= 1 => Ok(w),
            _ => Err(usage(format!("{WORKERS_ENV} must be a positive integer, got `{v}`"))),
        },
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn cmd_qk(args: &QkArgs) -> Result<(), Failure> {
    if args.k_from < 1 {
        return Err(usage("--from must be at least 1"));
    }
    if args.k_from > args.k_to {
        return Err(usage(format!("empty range: --from {} > --to {}", args.k_from, args.k_to)));
    }
    let workers = workers()?;
    let mut writer = ReportWriter::new(args.format, open_output(&args.output)?);
    let mut not_below = None;
    let outcome = sweep_ordered(args.k_from, args.k_to, workers, |r| {
        if r.k >= 2 && !r.qk_lt_1 && not_below.is_none() {
            not_below = Some(r.k);
        }
        writer.push(r)
    })?;
    writer.finish()?;
    if let Err(e) = outcome {
        return Err(Failure::Assertion(e.to_string()));
    }
    if let Some(k) = not_below {
        return Err(Failure::Assertion(format!("Q_k >= 1 at k = {k}")));
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let run = |w: Which| args.which == w || args.which == Which::All;
    let mut out = io::stdout().lock();

    if run(Which::C3ClosedForm) {
        let kmax = args.kmax.unwrap_or(200);
        if kmax < 1 {
            return Err(usage("the closed-form check needs --kmax >= 1"));
        }
        let checks = verify_c3_identity(kmax).map_err(|e| Failure::Assertion(e.to_string()))?;
        writeln!(out, "c3-closed-form: C3 = A for k = 1..={kmax}")?;
        for c in &checks {
            writeln!(out, "  k={}: {} = {}", c.k, c.lhs, c.rhs)?;
        }
        writeln!(out, "c3-closed-form: pass ({} values)", checks.len())?;
    }
    if run(Which::Gamma) {
        let kmax = args.kmax.unwrap_or(100);
        let checks = verify_gamma_identity(kmax).map_err(|e| Failure::Assertion(e.to_string()))?;
        writeln!(out, "gamma: 1*3*...*(4k+7) = (4k+7)!/(2^(2k+3) (2k+3)!) for k = 0..={kmax}")?;
        for c in &checks {
            writeln!(out, "  k={}: {} = {}", c.k, c.lhs, c.rhs)?;
        }
        writeln!(out, "gamma: pass ({} values)", checks.len())?;
    }
    if run(Which::Factorization) {
        let report = verify_factorization().map_err(|e| Failure::Assertion(e.to_string()))?;
        writeln!(out, "factorization: E' - D' = 24k(2k+5)(k+2)(k+1)(2k+3)^2")?;
        for c in &report.comparisons {
            let mark = if c.agrees() { "ok" } else { "MISMATCH" };
            writeln!(out, "  k^{}: {} = {} {mark}", c.degree, c.lhs, c.rhs)?;
        }
        writeln!(
            out,
            "  leading: D' {} = 93*2^6, E' {} = 96*2^6",
            report.d_prime_leading, report.e_prime_leading
        )?;
        if report.d_prime_leading != BigInt::from(93 * 64) || report.e_prime_leading != BigInt::from(96 * 64) {
            return Err(Failure::Assertion("leading coefficients differ from 93*2^6 / 96*2^6".into()));
        }
        writeln!(out, "factorization: pass")?;
    }
    if run(Which::ScalingChain) {
        let kmax = args.kmax.unwrap_or(50);
        if kmax < 1 {
            return Err(usage("the scaling chain needs --kmax >= 1"));
        }
        let checks = verify_scaling_chain(1..=kmax).map_err(|e| Failure::Assertion(e.to_string()))?;
        writeln!(out, "scaling-chain: D' = D*s(k), E' = E*s(k), s(k) > 0, D < E for k = 1..={kmax}")?;
        for c in &checks {
            writeln!(out, "  k={}: s = {}, E - D = {}", c.k, c.scale, &c.e - &c.d)?;
        }
        writeln!(out, "scaling-chain: pass ({} values)", checks.len())?;
    }
    Ok(())
}

fn cmd_family(cmd: FamilyCommand) -> Result<(), Failure> {
    match cmd {
        FamilyCommand::Check { file, fast, format } => family_check(&famfile::read(&file)?, fast, format),
        FamilyCommand::Complete { file, output } => {
            let fam = famfile::read(&file)?;
            let done = complete_family(&fam).map_err(|e| usage(e.to_string()))?;
            match output {
                Some(p) => famfile::write(&p, &done)?,
                None => io::stdout().write_all(famfile::render(&done).as_bytes())?,
            }
            eprintln!("completed {} -> {} members", fam.len(), done.len());
            Ok(())
        }
        FamilyCommand::Enumerate { n, format } => family_enumerate(n, format),
        FamilyCommand::Certify { file, n, field, format } => {
            let fam = famfile::read(&file)?;
            if let Some(n) = n {
                if n != fam.n() {
                    return Err(usage(format!("--n {n} does not match the file header n={}", fam.n())));
                }
            }
            if fam.n() > CENTRALIZER_RANK_LIMIT {
                return Err(usage(format!(
                    "certification is limited to n <= {CENTRALIZER_RANK_LIMIT}"
                )));
            }
            match field {
                FieldChoice::Rationals => family_certify(&fam, Rationals, format),
                FieldChoice::Gf3 => family_certify(&fam, PrimeField::gf3(), format),
            }
        }
    }
}

fn family_check(fam: &OddFamily, fast: bool, format: FamilyFormat) -> Result<(), Failure> {
    let inter = is_intersecting(fam);
    let maximal = if inter.is_yes() {
        let check = if fast {
            is_maximal_family_fast(fam)
        } else {
            is_maximal_family_naive(fam)
        };
        Some(check.map_err(|e| usage(e.to_string()))?)
    } else {
        None
    };
    let mut out = io::stdout().lock();
    match format {
        FamilyFormat::Text => {
            writeln!(out, "n: {}", fam.n())?;
            writeln!(out, "size: {}", fam.len())?;
            match inter {
                Check::Yes => writeln!(out, "intersecting: yes")?,
                Check::No((a, b)) => writeln!(
                    out,
                    "intersecting: no (disjoint {} {})",
                    set_notation(a),
                    set_notation(b)
                )?,
            }
            match maximal {
                Some(Check::Yes) => writeln!(out, "maximal: yes")?,
                Some(Check::No(t)) => writeln!(out, "maximal: no (addable {})", set_notation(t))?,
                None => writeln!(out, "maximal: n/a")?,
            }
            writeln!(out, "method: {}", if fast { "fast" } else { "naive" })?;
        }
        FamilyFormat::Json => {
            let v = json!({
                "n": fam.n(),
                "size": fam.len(),
                "intersecting": inter.is_yes(),
                "disjoint_pair": inter.witness().map(|(a, b)| [a, b]),
                "maximal": maximal.map(|m| m.is_yes()),
                "addable": maximal.and_then(|m| m.witness().copied()),
                "method": if fast { "fast" } else { "naive" },
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).context("json")?)?;
        }
    }
    Ok(())
}

fn family_enumerate(n: u32, format: FamilyFormat) -> Result<(), Failure> {
    let fams = enumerate_maximal_families(n).map_err(|e| usage(e.to_string()))?;
    let bound = (n >= 2).then(|| even_rank_dimension(n));
    let mut histogram = std::collections::BTreeMap::<usize, usize>::new();
    for f in &fams {
        *histogram.entry(f.len()).or_default() += 1;
    }
    let mut out = io::stdout().lock();
    match format {
        FamilyFormat::Text => {
            writeln!(out, "n: {n}, maximal families: {}", fams.len())?;
            if let Some(b) = bound {
                writeln!(out, "bound 3*2^(n-2): {b}")?;
            }
            writeln!(out, "{:>5}  {:>4}  {:>5}  {:>5}  members", "index", "size", "dim", "below")?;
            for (i, f) in fams.iter().enumerate() {
                let dim = f.subalgebra_dim();
                let below = bound.is_some_and(|b| dim < b);
                let members: Vec<String> = f.members().map(set_notation).collect();
                writeln!(
                    out,
                    "{i:>5}  {:>4}  {dim:>5}  {:>5}  {}",
                    f.len(),
                    if below { "yes" } else { "no" },
                    members.join(" ")
                )?;
            }
            let hist: Vec<String> = histogram.iter().map(|(s, c)| format!("{s}: {c}")).collect();
            writeln!(out, "size histogram: {{{}}}", hist.join(", "))?;
        }
        FamilyFormat::Json => {
            let rows: Vec<_> = fams
                .iter()
                .map(|f| {
                    let dim = f.subalgebra_dim();
                    json!({
                        "size": f.len(),
                        "dim": dim,
                        "below_bound": bound.is_some_and(|b| dim < b),
                        "members": f.members().collect::<Vec<_>>(),
                    })
                })
                .collect();
            let v = json!({
                "n": n,
                "bound": bound,
                "families": rows,
                "size_histogram": histogram.iter().map(|(s, c)| (s.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).context("json")?)?;
        }
    }
    Ok(())
}

fn family_certify<F: Field>(fam: &OddFamily, field: F, format: FamilyFormat) -> Result<(), Failure> {
    let ctx = AlgebraContext::new(fam.n(), field).map_err(|e| usage(e.to_string()))?;
    let sub = family_to_subalgebra(fam, &ctx).map_err(|e| usage(e.to_string()))?;
    let combinatorial = match is_intersecting(fam) {
        Check::Yes => is_maximal_family_fast(fam)
            .map_err(|e| usage(e.to_string()))?
            .is_yes(),
        Check::No(_) => false,
    };
    let (algebraic, verdict, witness) = match is_maximal_commutative(&sub) {
        Ok(Maximality::Maximal) => (true, "maximal commutative".to_string(), None),
        Ok(Maximality::NotMaximal { witness }) => {
            (false, "commutative, not maximal".to_string(), Some(witness.to_string()))
        }
        Err(e @ (CentralizerError::NotCommutative { .. } | CentralizerError::NotClosed { .. })) => {
            (false, format!("not a commutative subalgebra: {e}"), None)
        }
        Err(e) => return Err(usage(e.to_string())),
    };
    let mut out = io::stdout().lock();
    match format {
        FamilyFormat::Text => {
            writeln!(out, "n: {}", fam.n())?;
            writeln!(out, "size: {}", fam.len())?;
            writeln!(out, "dim: {} (2^(n-1) + |F| = {})", sub.dim(), fam.subalgebra_dim())?;
            writeln!(out, "algebraic: {verdict}")?;
            if let Some(w) = &witness {
                writeln!(out, "witness: {w}")?;
            }
            writeln!(out, "combinatorial maximal: {}", if combinatorial { "yes" } else { "no" })?;
        }
        FamilyFormat::Json => {
            let v = json!({
                "n": fam.n(),
                "size": fam.len(),
                "dim": sub.dim(),
                "algebraic_maximal": algebraic,
                "verdict": verdict,
                "witness": witness,
                "combinatorial_maximal": combinatorial,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).context("json")?)?;
        }
    }
    if sub.dim() as u64 != fam.subalgebra_dim() {
        return Err(Failure::Assertion("dim != 2^(n-1) + |F|".into()));
    }
    if algebraic != combinatorial {
        return Err(Failure::Assertion(format!(
            "algebraic verdict ({algebraic}) disagrees with combinatorial verdict ({combinatorial})"
        )));
    }
    Ok(())
}

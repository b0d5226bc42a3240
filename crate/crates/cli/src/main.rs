mod source;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qsym_core::autgroup::{automorphism_group, AutError};
use qsym_core::graph::{check_moore_conditions, srg_params, Graph, MooreReport};
use qsym_core::ncalgebra::{local_reduce, Poly};
use qsym_core::prover::{
    derive_qa5, prove_no_quantum_symmetry, sanity_eval, verify_certificate, Certificate,
    ConclusionKind, ProofError,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use source::GraphSource;

/// Certified proofs that a graph has no quantum symmetry.
#[derive(Debug, Parser)]
#[command(name = "qsym", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size, degrees, strong regularity and the lambda = 0, mu = 1 verdict
    Info {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Order and generators of the automorphism group
    Aut {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Exit 0 iff the graph is regular with lambda = 0 and mu = 1
    Conditions {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Produce a certificate and verify it
    Prove {
        #[command(flatten)]
        source: GraphSource,
        /// Where to write the certificate JSON
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Stop after the commutation of edge pairs
        #[arg(long)]
        qa5_only: bool,
    },
    /// Check a certificate against a graph
    Verify {
        #[command(flatten)]
        source: GraphSource,
        /// Certificate JSON
        cert: PathBuf,
        /// Also evaluate every conclusion under N random automorphisms
        #[arg(long, value_name = "N")]
        fuzz: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Local normal form of a polynomial, e.g. "u[1,1]u[1,2]"
    Reduce {
        #[command(flatten)]
        source: GraphSource,
        poly: String,
    },
}

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(3, message)
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure::new(1, message)
    }

    fn hypotheses(message: impl Into<String>) -> Self {
        Failure::new(2, message)
    }
}

fn moore_line(report: &MooreReport) -> String {
    match &report.failure {
        None => "conditions: λ=0,μ=1 hold".to_string(),
        Some(f) => match f.witness() {
            Some((u, v)) => format!("conditions: not λ=0,μ=1, witness ({u},{v}): {f}"),
            None => format!("conditions: not λ=0,μ=1: {f}"),
        },
    }
}

fn info(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "vertices {}", g.n()).unwrap();
    writeln!(out, "edges {}", g.edge_count()).unwrap();
    let mut profile = std::collections::BTreeMap::new();
    for v in 1..=g.n() {
        *profile.entry(g.neighbors(v).len()).or_insert(0usize) += 1;
    }
    let parts: Vec<String> = profile.iter().map(|(d, c)| format!("{d}^{c}")).collect();
    writeln!(out, "degrees {}", parts.join(" ")).unwrap();
    match srg_params(g) {
        Some(p) => writeln!(out, "{p}").unwrap(),
        None => writeln!(out, "not strongly regular").unwrap(),
    }
    writeln!(out, "{}", moore_line(&check_moore_conditions(g))).unwrap();
    out
}

fn aut(g: &Graph) -> Result<String, Failure> {
    let group = automorphism_group(g).map_err(|e| match e {
        AutError::BoundExceeded { .. } => Failure::hypotheses(e.to_string()),
        other => Failure::invalid(other.to_string()),
    })?;
    let mut out = format!(
        "order {}\ngenerators {}\n",
        group.order,
        group.generators.len()
    );
    for s in &group.generators {
        writeln!(out, "  {s}").unwrap();
    }
    Ok(out)
}

fn summary(cert: &Certificate) -> String {
    format!(
        "{} steps, {} conclusions ({} ZeroProduct, {} Commutes)",
        cert.steps.len(),
        cert.conclusions.len(),
        cert.count(ConclusionKind::ZeroProduct),
        cert.count(ConclusionKind::Commutes)
    )
}

fn check(g: &Graph, cert: &Certificate) -> Result<(), Failure> {
    let report =
        verify_certificate(g, cert).map_err(|e| Failure::invalid(format!("rejected: {e}")))?;
    match report.first_failure {
        Some(f) if !report.valid => Err(Failure::invalid(format!("rejected: {f}"))),
        _ => Ok(()),
    }
}

fn prove(g: &Graph, out: Option<&PathBuf>, qa5_only: bool) -> Result<String, Failure> {
    let produced = if qa5_only {
        derive_qa5(g)
    } else {
        prove_no_quantum_symmetry(g)
    };
    let cert = produced.map_err(|e| match e {
        ProofError::ConditionsNotMet(f) => match f.witness() {
            Some((u, v)) => {
                Failure::hypotheses(format!("ConditionsNotMet: {f} (witness ({u},{v}))"))
            }
            None => Failure::hypotheses(format!("ConditionsNotMet: {f}")),
        },
        e @ ProofError::UnsupportedDegree { .. } => Failure::hypotheses(e.to_string()),
        e => Failure::invalid(e.to_string()),
    })?;
    check(g, &cert).map_err(|f| Failure::invalid(format!("self-check failed, {}", f.message)))?;
    if let Some(path) = out {
        fs::write(path, cert.to_json())
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(format!("{}\nverified\n", summary(&cert)))
}

fn verify(g: &Graph, path: &PathBuf, fuzz: Option<usize>, seed: u64) -> Result<String, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let cert = Certificate::from_json(&text)
        .map_err(|e| Failure::usage(format!("malformed certificate {}: {e}", path.display())))?;
    check(g, &cert)?;
    let mut out = format!("{}\nvalid\n", summary(&cert));
    if let Some(trials) = fuzz {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let report =
            sanity_eval(g, &cert, trials, &mut rng).map_err(|e| Failure::invalid(e.to_string()))?;
        if !report.passed() {
            return Err(Failure::invalid(format!(
                "sanity check failed: {} ZeroProduct and {} Commutes conclusions violated",
                report.zero_product_failures, report.commutes_failures
            )));
        }
        writeln!(
            out,
            "sanity: {} evaluations over {trials} automorphisms, 0 failures",
            report.evaluations
        )
        .unwrap();
    }
    Ok(out)
}

fn reduce(g: &Graph, text: &str) -> Result<String, Failure> {
    let p: Poly = text.parse().map_err(|e| Failure::usage(format!("{e}")))?;
    if p.max_index() > g.n() {
        return Err(Failure::usage(format!(
            "index {} exceeds the {} vertices of the graph",
            p.max_index(),
            g.n()
        )));
    }
    Ok(format!("{}\n", local_reduce(g, &p)))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("QSYM_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::usage(format!(
            "QSYM_THREADS must be a positive integer, got '{value}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::invalid(e.to_string()))
}

fn run(cli: Cli) -> Result<String, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Info { source } => Ok(info(&source.load()?)),
        Command::Aut { source } => aut(&source.load()?),
        Command::Conditions { source } => {
            let report = check_moore_conditions(&source.load()?);
            let line = moore_line(&report);
            if report.holds {
                Ok(format!("{line}\n"))
            } else {
                Err(Failure::hypotheses(line))
            }
        }
        Command::Prove {
            source,
            out,
            qa5_only,
        } => prove(&source.load()?, out.as_ref(), qa5_only),
        Command::Verify {
            source,
            cert,
            fuzz,
            seed,
        } => verify(&source.load()?, &cert, fuzz, seed),
        Command::Reduce { source, poly } => reduce(&source.load()?, &poly),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("qsym: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

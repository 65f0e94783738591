use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rainbow_core::absorption::{find_rainbow_hamiltonian_cycle_seeded, AbsorptionError, AbsorptionParams};
use rainbow_core::generators::{gen_random_min_degree_with, DEFAULT_EXTRA_DENSITY};
use rainbow_core::io::{parse_certificates, parse_system, serialize_certificates, serialize_system};
use rainbow_core::oracle::{
    oracle_cycle_of_length_with, oracle_hamiltonian_cycle_with, oracle_hamiltonian_path_with, OracleError,
    OracleOptions,
};
use rainbow_core::pancyclic::{
    find_base_cycle, find_cycle_n_minus_1, find_cycle_of_length, rainbow_pancyclic, PancyclicError,
};
use rainbow_core::sweep::{run_sweep, DegreeRule, SweepCommand, SweepConfig, SweepRow};
use rainbow_core::{
    find_rainbow_hamiltonian_path, gen_balanced_bipartite, gen_complete, gen_unbalanced_bipartite, Certificate,
    Exec, GraphSystem, HamPathError,
};

#[derive(Parser)]
#[command(name = "rgs", version, about = "Rainbow paths and cycles in graph systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Minimum degree in every color class (random only).
        #[arg(long)]
        min_deg: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Probability of each extra edge (random only).
        #[arg(long, default_value_t = DEFAULT_EXTRA_DENSITY)]
        density: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find and verify certificates.
    Solve {
        #[arg(value_enum)]
        problem: Problem,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        retries: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
        /// Single cycle length (pancyclic only).
        #[arg(long)]
        len: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check certificates against an instance.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Exhaustive search.
    Oracle {
        #[arg(value_enum)]
        query: Query,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        len: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a solver over a grid of random instances; one TSV line each.
    Sweep {
        #[arg(value_enum)]
        problem: Problem,
        /// Orders to run, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Fixed minimum degree; defaults to the solver's own threshold.
        #[arg(long, conflicts_with = "min_deg_frac")]
        min_deg: Option<usize>,
        /// Minimum degree as a fraction of n.
        #[arg(long)]
        min_deg_frac: Option<f64>,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of seeds per order.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        retries: Option<usize>,
        /// Run instances one after another.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Complete,
    Balanced,
    Unbalanced,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Hampath,
    Pancyclic,
    Hamcycle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Construct,
    Absorb,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Query {
    Hamcycle,
    Hampath,
    Cycle,
}

enum Failure {
    /// Nothing found, or a certificate failed `verify`.
    NotFound(String),
    Usage(String),
    /// A solver produced a certificate that does not verify.
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::NotFound(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::NotFound(m) | Failure::Usage(m) | Failure::Internal(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_system(path: &Path) -> Result<GraphSystem, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_system(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Verifies every certificate, then writes them out.
fn emit_verified(sys: &GraphSystem, certs: &[Certificate], out: Option<&Path>) -> Outcome {
    for cert in certs {
        if let Some(v) = cert.verify(sys).violation() {
            return Err(Failure::Internal(format!("solver emitted an invalid certificate: {v}")));
        }
    }
    emit(out, &serialize_certificates(certs))
}

fn gen(kind: GenKind, n: usize, min_deg: Option<usize>, seed: u64, density: f64, out: Option<&Path>) -> Outcome {
    let sys = match kind {
        GenKind::Complete => gen_complete(n),
        GenKind::Balanced => gen_balanced_bipartite(n),
        GenKind::Unbalanced => gen_unbalanced_bipartite(n),
        GenKind::Random => {
            let d = min_deg.ok_or_else(|| Failure::Usage("random instances need --min-deg".into()))?;
            gen_random_min_degree_with(n, d, seed, density, Exec::preferred())
        }
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    emit(out, &serialize_system(&sys).expect("generated systems are square"))
}

fn oracle_failure(e: OracleError) -> Failure {
    Failure::Usage(e.to_string())
}

fn not_found(what: &str) -> Failure {
    Failure::NotFound(format!("no {what} found"))
}

struct SolveArgs {
    method: Option<Method>,
    seed: u64,
    ell: Option<usize>,
    retries: Option<usize>,
    cap: Option<usize>,
    len: Option<usize>,
}

fn solve(problem: Problem, sys: &GraphSystem, args: &SolveArgs) -> Result<Vec<Certificate>, Failure> {
    let opts = OracleOptions { cap: args.cap, ..OracleOptions::default() };
    let method = args.method.unwrap_or(match problem {
        Problem::Hamcycle => Method::Absorb,
        _ => Method::Construct,
    });
    let n = sys.n();
    match (problem, method) {
        (Problem::Hampath, Method::Construct) => match find_rainbow_hamiltonian_path(sys) {
            Ok(p) => Ok(vec![p.into()]),
            Err(e @ (HamPathError::Stuck { .. } | HamPathError::Rotation(_))) => Err(Failure::NotFound(e.to_string())),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        (Problem::Hampath, Method::Oracle) => oracle_hamiltonian_path_with(sys, opts)
            .map_err(oracle_failure)?
            .map(|p| vec![p.into()])
            .ok_or_else(|| not_found("rainbow Hamiltonian path")),
        (Problem::Pancyclic, Method::Construct) => match args.len {
            None => rainbow_pancyclic(sys)
                .map(|r| r.cycles.into_values().map(Certificate::from).collect())
                .map_err(pancyclic_failure),
            Some(len) if len + 1 == n => find_cycle_n_minus_1(sys).map(|c| vec![c.into()]).map_err(pancyclic_failure),
            Some(len) => {
                let base = find_base_cycle(sys).map_err(pancyclic_failure)?;
                find_cycle_of_length(sys, &base, len)
                    .map(|f| vec![f.cycle.into()])
                    .map_err(pancyclic_failure)
            }
        },
        (Problem::Pancyclic, Method::Oracle) => {
            let lengths: Vec<usize> = match args.len {
                Some(len) => vec![len],
                None => (3..n).collect(),
            };
            let mut certs = Vec::new();
            for len in lengths {
                let c = oracle_cycle_of_length_with(sys, len, opts).map_err(oracle_failure)?;
                certs.push(c.ok_or_else(|| not_found(&format!("rainbow cycle of length {len}")))?.into());
            }
            Ok(certs)
        }
        (Problem::Hamcycle, Method::Absorb) => {
            let mut params = match (AbsorptionParams::default_for(n), args.ell) {
                (Some(p), _) => p,
                (None, Some(ell)) => AbsorptionParams { ell, build_retries: 20, sample_retries: 50 * n, disjoint_sampling: false },
                (None, None) => return Err(Failure::Usage(format!("no absorbing cycle fits on n = {n} vertices"))),
            };
            if let Some(ell) = args.ell {
                params.ell = ell;
            }
            if let Some(r) = args.retries {
                params.build_retries = r;
            }
            match find_rainbow_hamiltonian_cycle_seeded(sys, &params, args.seed) {
                Ok(c) => Ok(vec![c.into()]),
                Err(e @ (AbsorptionError::BadEll(_) | AbsorptionError::NoRoom { .. } | AbsorptionError::NotSquare { .. })) => {
                    Err(Failure::Usage(e.to_string()))
                }
                Err(e) => Err(Failure::NotFound(e.to_string())),
            }
        }
        (Problem::Hamcycle, Method::Oracle) => oracle_hamiltonian_cycle_with(sys, opts)
            .map_err(oracle_failure)?
            .map(|c| vec![c.into()])
            .ok_or_else(|| not_found("rainbow Hamiltonian cycle")),
        (_, Method::Absorb) => Err(Failure::Usage("--method absorb applies to hamcycle only".into())),
        (Problem::Hamcycle, Method::Construct) => Err(Failure::Usage("hamcycle takes --method absorb or oracle".into())),
    }
}

fn pancyclic_failure(e: PancyclicError) -> Failure {
    match e {
        PancyclicError::NotFound { .. }
        | PancyclicError::Unrealized { .. }
        | PancyclicError::Internal(_)
        | PancyclicError::HamPath(_)
        | PancyclicError::BelowThreshold { .. } => Failure::NotFound(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn verify(input: &Path, cert: &Path) -> Outcome {
    let sys = read_system(input)?;
    let text = fs::read_to_string(cert).map_err(|e| Failure::Usage(format!("{}: {e}", cert.display())))?;
    let certs = parse_certificates(&text).map_err(|e| Failure::Usage(format!("{}: {e}", cert.display())))?;
    if certs.is_empty() {
        return Err(Failure::Usage(format!("{}: no certificates", cert.display())));
    }
    let mut bad = 0;
    for (i, c) in certs.iter().enumerate() {
        let verdict = c.verify(&sys);
        bad += !verdict.is_ok() as usize;
        println!("{i}: {verdict}");
    }
    if bad == 0 {
        Ok(())
    } else {
        Err(Failure::NotFound(format!("{bad} of {} certificates rejected", certs.len())))
    }
}

fn oracle(query: Query, input: &Path, len: Option<usize>, cap: Option<usize>, out: Option<&Path>) -> Outcome {
    let sys = read_system(input)?;
    let opts = OracleOptions { cap, ..OracleOptions::default() };
    let found: Option<Certificate> = match query {
        Query::Hamcycle => oracle_hamiltonian_cycle_with(&sys, opts).map_err(oracle_failure)?.map(Into::into),
        Query::Hampath => oracle_hamiltonian_path_with(&sys, opts).map_err(oracle_failure)?.map(Into::into),
        Query::Cycle => {
            let len = len.ok_or_else(|| Failure::Usage("oracle cycle needs --len".into()))?;
            oracle_cycle_of_length_with(&sys, len, opts).map_err(oracle_failure)?.map(Into::into)
        }
    };
    match found {
        Some(cert) => emit_verified(&sys, &[cert], out),
        None => Err(Failure::NotFound("infeasible".into())),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { kind, n, min_deg, seed, density, out } => gen(kind, n, min_deg, seed, density, out.as_deref()),
        Command::Solve { problem, input, method, seed, ell, retries, cap, len, out } => {
            let sys = read_system(&input)?;
            let start = Instant::now();
            let certs = solve(problem, &sys, &SolveArgs { method, seed, ell, retries, cap, len })?;
            log::info!("solved in {:.2?}", start.elapsed());
            emit_verified(&sys, &certs, out.as_deref())
        }
        Command::Verify { input, cert } => verify(&input, &cert),
        Command::Oracle { query, input, len, cap, out } => oracle(query, &input, len, cap, out.as_deref()),
        Command::Sweep { problem, n, min_deg, min_deg_frac, seed, seeds, ell, retries, sequential, out } => {
            let degree = match (min_deg, min_deg_frac) {
                (Some(d), _) => DegreeRule::Fixed(d),
                (None, Some(f)) => DegreeRule::Fraction(f),
                (None, None) => DegreeRule::ForCommand,
            };
            let command = match problem {
                Problem::Hampath => SweepCommand::HamPath,
                Problem::Pancyclic => SweepCommand::Pancyclic,
                Problem::Hamcycle => SweepCommand::HamCycle,
            };
            let config = SweepConfig { command, ns: n, seeds: (seed..seed + seeds).collect(), degree, ell, retries };
            let exec = if sequential { Exec::Sequential } else { Exec::preferred() };
            let mut text = format!("{}\n", SweepRow::HEADER);
            for row in run_sweep(&config, exec) {
                text.push_str(&row.to_tsv());
                text.push('\n');
            }
            emit(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rgs: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

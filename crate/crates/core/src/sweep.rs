//! Seed-grid runs over random instances, one summary row per instance.

use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::absorption::{find_rainbow_hamiltonian_cycle_with, AbsorptionParams};
use crate::certificate::{verify_rainbow_cycle, verify_rainbow_path};
use crate::exec::Exec;
use crate::generators::gen_random_min_degree_with;
use crate::generators::DEFAULT_EXTRA_DENSITY;
use crate::ham_path::find_rainbow_hamiltonian_path;
use crate::pancyclic::{pancyclic_threshold, rainbow_pancyclic_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepCommand {
    HamPath,
    Pancyclic,
    HamCycle,
}

impl SweepCommand {
    pub fn name(self) -> &'static str {
        match self {
            SweepCommand::HamPath => "hampath",
            SweepCommand::Pancyclic => "pancyclic",
            SweepCommand::HamCycle => "hamcycle",
        }
    }

    /// The degree each solver is meant for: `ceil((n-1)/2)` for paths,
    /// `ceil((n+1)/2)` for all cycle lengths, `ceil(3n/4)` for absorption.
    pub fn default_degree(self, n: usize) -> usize {
        match self {
            SweepCommand::HamPath => n.saturating_sub(1).div_ceil(2),
            SweepCommand::Pancyclic => pancyclic_threshold(n),
            SweepCommand::HamCycle => (3 * n).div_ceil(4),
        }
    }
}

/// Minimum color degree requested from the generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeRule {
    /// [`SweepCommand::default_degree`].
    ForCommand,
    Fixed(usize),
    /// `ceil(f * n)`, capped at `n - 1`.
    Fraction(f64),
}

impl DegreeRule {
    pub fn for_n(self, command: SweepCommand, n: usize) -> usize {
        let d = match self {
            DegreeRule::ForCommand => command.default_degree(n),
            DegreeRule::Fixed(d) => d,
            DegreeRule::Fraction(f) => (f * n as f64).ceil() as usize,
        };
        d.min(n.saturating_sub(1))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub command: SweepCommand,
    pub ns: Vec<usize>,
    pub seeds: Vec<u64>,
    pub degree: DegreeRule,
    /// Absorption overrides for `HamCycle`.
    pub ell: Option<usize>,
    pub retries: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found,
    Failed(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Found => f.write_str("found"),
            Outcome::Failed(why) => write!(f, "failed: {why}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub seed: u64,
    pub n: usize,
    /// Actual minimum color degree of the generated instance.
    pub min_degree: usize,
    pub command: SweepCommand,
    pub outcome: Outcome,
    pub millis: u128,
}

impl SweepRow {
    pub const HEADER: &'static str = "seed\tn\tmindeg\tcommand\toutcome\tmillis";

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.seed,
            self.n,
            self.min_degree,
            self.command.name(),
            self.outcome,
            self.millis
        )
    }
}

/// Runs every `(n, seed)` pair; rows come back in grid order (n-major).
pub fn run_sweep(config: &SweepConfig, exec: Exec) -> Vec<SweepRow> {
    let grid: Vec<(usize, u64)> = config
        .ns
        .iter()
        .flat_map(|&n| config.seeds.iter().map(move |&s| (n, s)))
        .collect();
    // Instances run in parallel; each solver runs sequentially inside.
    exec.map(grid, |(n, seed)| run_one(config, n, seed))
}

fn run_one(config: &SweepConfig, n: usize, seed: u64) -> SweepRow {
    let start = Instant::now();
    let row = |min_degree, outcome| SweepRow {
        seed,
        n,
        min_degree,
        command: config.command,
        outcome,
        millis: start.elapsed().as_millis(),
    };
    let d = config.degree.for_n(config.command, n);
    let sys = match gen_random_min_degree_with(n, d, seed, DEFAULT_EXTRA_DENSITY, Exec::Sequential) {
        Ok(sys) => sys,
        Err(e) => return row(0, Outcome::Failed(e.to_string())),
    };
    let min_degree = sys.min_degree().unwrap_or(0);
    let outcome = match config.command {
        SweepCommand::HamPath => match find_rainbow_hamiltonian_path(&sys) {
            Ok(p) if verify_rainbow_path(&sys, &p).is_ok() => Outcome::Found,
            Ok(_) => Outcome::Failed("certificate rejected".into()),
            Err(e) => Outcome::Failed(e.to_string()),
        },
        SweepCommand::Pancyclic => match rainbow_pancyclic_with(&sys, Exec::Sequential) {
            Ok(r) if r.cycles.values().all(|c| verify_rainbow_cycle(&sys, c).is_ok()) => Outcome::Found,
            Ok(_) => Outcome::Failed("certificate rejected".into()),
            Err(e) => Outcome::Failed(e.to_string()),
        },
        SweepCommand::HamCycle => match absorption_params(config, n) {
            None => Outcome::Failed(format!("no absorption parameters fit n = {n}")),
            Some(params) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                match find_rainbow_hamiltonian_cycle_with(&sys, &params, &mut rng, Exec::Sequential) {
                    Ok(c) if verify_rainbow_cycle(&sys, &c).is_ok() => Outcome::Found,
                    Ok(_) => Outcome::Failed("certificate rejected".into()),
                    Err(e) => Outcome::Failed(e.to_string()),
                }
            }
        },
    };
    row(min_degree, outcome)
}

fn absorption_params(config: &SweepConfig, n: usize) -> Option<AbsorptionParams> {
    let mut params = AbsorptionParams::default_for(n).or(config.ell.map(|ell| AbsorptionParams {
        ell,
        build_retries: 20,
        sample_retries: 50 * n,
        disjoint_sampling: false,
    }))?;
    if let Some(ell) = config.ell {
        params.ell = ell;
    }
    if let Some(r) = config.retries {
        params.build_retries = r;
    }
    Some(params)
}

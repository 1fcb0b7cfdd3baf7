//! One entry point that runs any solver on a parsed instance.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebraic::{pc_randomized_in, FieldChoice};
use crate::connector::pc_deterministic;
use crate::driver::{connected_f_factor, Backend, SequenceTrace, SolverConfig, SolverError};
use crate::graph::FactorSubgraph;
use crate::lab::format::Instance;
use crate::lab::oracle::{brute_force_cff, brute_force_pc, OracleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Auto,
    Det,
    Rand,
    Brute,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Det => "det",
            Algorithm::Rand => "rand",
            Algorithm::Brute => "brute",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
    /// The randomized backend found nothing; the instance may still be YES.
    ProbablyNo,
}

impl Answer {
    pub fn name(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::ProbablyNo => "probably_no",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub field: Option<FieldChoice>,
    pub retries: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            algorithm: Algorithm::Auto,
            seed: 0,
            field: None,
            retries: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport<'g> {
    pub answer: Answer,
    pub factor: Option<FactorSubgraph<'g>>,
    /// Algorithm that actually ran (`auto` resolved).
    pub algorithm: Algorithm,
    pub trace: Option<SequenceTrace>,
    pub rounds: usize,
    pub max_parts: usize,
    pub wall: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Connected f-factor of the instance, or, when it carries a partition, an
/// f-factor connecting that partition.
pub fn solve_instance<'g>(
    inst: &'g Instance,
    opts: &SolveOptions,
) -> Result<SolveReport<'g>, SolveError> {
    let start = Instant::now();
    let g = &inst.graph;
    let f = &inst.demand;
    let n = g.vertex_count();
    let algorithm = match opts.algorithm {
        Algorithm::Auto => match Backend::Auto.resolve(n, f.min().unwrap_or(0)) {
            Backend::Randomized => Algorithm::Rand,
            _ => Algorithm::Det,
        },
        other => other,
    };
    let field = opts
        .field
        .unwrap_or_else(|| FieldChoice::for_vertex_count(n));

    let (factor, trace, max_parts) = match (&inst.partition, algorithm) {
        (Some(q), Algorithm::Brute) => (brute_force_pc(g, f, q)?, None, q.len()),
        (Some(q), Algorithm::Rand) => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut found = None;
            for _ in 0..=opts.retries {
                found = pc_randomized_in(field, g, f, q, &mut rng);
                if found.is_some() {
                    break;
                }
            }
            (found, None, q.len())
        }
        (Some(q), _) => (pc_deterministic(g, f, q), None, q.len()),
        (None, Algorithm::Brute) => (brute_force_cff(g, f)?, None, 1),
        (None, _) => {
            let cfg = SolverConfig {
                backend: if algorithm == Algorithm::Rand {
                    Backend::Randomized
                } else {
                    Backend::Deterministic
                },
                seed: opts.seed,
                round_limit: None,
                field: Some(field),
                retries: opts.retries,
            };
            let out = connected_f_factor(g, f, &cfg)?;
            let parts = out.trace.max_parts();
            (out.factor, Some(out.trace), parts)
        }
    };
    let answer = match (&factor, algorithm) {
        (Some(_), _) => Answer::Yes,
        (None, Algorithm::Rand) => Answer::ProbablyNo,
        (None, _) => Answer::No,
    };
    Ok(SolveReport {
        answer,
        factor,
        algorithm,
        rounds: trace.as_ref().map_or(0, |t| t.rounds.len()),
        trace,
        max_parts,
        wall: start.elapsed(),
    })
}

/// One row of `bench` output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub min_f: usize,
    pub algorithm: String,
    pub answer: String,
    pub rounds: usize,
    pub max_parts: usize,
    pub wall_ms: f64,
    pub seed: u64,
}

pub fn bench_row(name: &str, inst: &Instance, opts: &SolveOptions) -> Result<BenchRow, SolveError> {
    let report = solve_instance(inst, opts)?;
    Ok(BenchRow {
        instance: name.to_string(),
        n: inst.graph.vertex_count(),
        m: inst.graph.edge_count(),
        min_f: inst.demand.min().unwrap_or(0),
        algorithm: report.algorithm.name().to_string(),
        answer: report.answer.name().to_string(),
        rounds: report.rounds,
        max_parts: report.max_parts,
        wall_ms: report.wall.as_secs_f64() * 1e3,
        seed: opts.seed,
    })
}

//! The refinement loop for connected f-factors.
//!
//! Starting from any f-factor and the trivial partition, each round splits
//! the parts into the components the current factor induces inside them,
//! asks a partition connector for an f-factor connecting the finer
//! partition, and repairs the current factor towards it. The loop stops as
//! soon as the factor keeps every part connected.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebraic::{pc_randomized_in, FieldChoice};
use crate::circuits::{repair_close_factor, CircuitError};
use crate::connector::pc_deterministic_with;
use crate::factor::find_f_factor;
use crate::graph::{
    refine_by_components, verify_f_factor, DegreeSpec, FactorSubgraph, Graph, Partition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Deterministic,
    Randomized,
    Auto,
}

impl Backend {
    /// Resolves `Auto`: randomized when `ceil(n / min f) <= ceil(log2 n) + 1`.
    pub fn resolve(self, n: usize, min_f: usize) -> Backend {
        match self {
            Backend::Auto => {
                if min_f > 0 && n.div_ceil(min_f) <= ceil_log2(n) + 1 {
                    Backend::Randomized
                } else {
                    Backend::Deterministic
                }
            }
            other => other,
        }
    }
}

fn ceil_log2(n: usize) -> usize {
    n.max(1).next_power_of_two().trailing_zeros() as usize
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub backend: Backend,
    pub seed: u64,
    /// Maximum number of refinement rounds; defaults to `n`.
    pub round_limit: Option<usize>,
    /// Field for the randomized backend; sized from `n` when absent.
    pub field: Option<FieldChoice>,
    /// Extra attempts with fresh randomness when the randomized backend
    /// answers NO.
    pub retries: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            backend: Backend::Auto,
            seed: 0,
            round_limit: None,
            field: None,
            retries: 0,
        }
    }
}

/// One `(H_i, Q_i)` pair of the refinement sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub parts: usize,
    pub part_sizes: Vec<usize>,
    pub backend_calls: usize,
    /// Spanning trees tried by the deterministic backend in this round.
    pub trees_examined: usize,
    /// Largest drop, over vertices, of `|N_H(v)|` inside the vertex's own
    /// part caused by the repair of this round.
    pub max_degree_drop: usize,
    /// `2(|Q_i| - 1)`, the drop the repair is allowed.
    pub drop_allowance: usize,
    pub factor_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceTrace {
    pub backend: Backend,
    pub rounds: Vec<RoundRecord>,
}

impl SequenceTrace {
    pub fn max_parts(&self) -> usize {
        self.rounds.iter().map(|r| r.parts).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("repair step failed: {0}")]
    Repair(#[from] CircuitError),
    #[error("round invariant violated: {0}")]
    Invariant(String),
    #[error("round limit {0} reached")]
    RoundLimit(usize),
}

#[derive(Debug, Clone)]
pub struct Outcome<'g> {
    pub factor: Option<FactorSubgraph<'g>>,
    pub trace: SequenceTrace,
}

/// A connected f-factor of `g`, or `None`.
///
/// With the deterministic backend `None` is exact. With the randomized
/// backend `None` may be a false negative; a returned factor is always
/// verified.
pub fn connected_f_factor<'g>(
    g: &'g Graph,
    f: &DegreeSpec,
    cfg: &SolverConfig,
) -> Result<Outcome<'g>, SolverError> {
    let n = g.vertex_count();
    let min_f = f.min().unwrap_or(0);
    let backend = cfg.backend.resolve(n, min_f);
    let mut trace = SequenceTrace {
        backend,
        rounds: Vec::new(),
    };
    let none = |trace| {
        Ok(Outcome {
            factor: None,
            trace,
        })
    };

    if n == 1 {
        let factor = (f.get(0) == 0).then(|| FactorSubgraph::empty(g));
        if factor.is_some() {
            trace
                .rounds
                .push(record(0, &Partition::whole(1), 0, 0, 0, 0));
        }
        return Ok(Outcome { factor, trace });
    }
    if n == 0 || min_f == 0 {
        return none(trace);
    }
    let Some(h0) = find_f_factor(g, f) else {
        return none(trace);
    };
    refine_from(g, f, cfg, h0, trace)
}

/// Runs the refinement loop from a given f-factor instead of computing one.
pub fn connected_f_factor_from<'g>(
    g: &'g Graph,
    f: &DegreeSpec,
    cfg: &SolverConfig,
    start: FactorSubgraph<'g>,
) -> Result<Outcome<'g>, SolverError> {
    assert!(
        verify_f_factor(g, f, &start, None).degrees_match,
        "start must be an f-factor"
    );
    let backend = cfg.backend.resolve(g.vertex_count(), f.min().unwrap_or(0));
    let trace = SequenceTrace {
        backend,
        rounds: Vec::new(),
    };
    refine_from(g, f, cfg, start, trace)
}

fn refine_from<'g>(
    g: &'g Graph,
    f: &DegreeSpec,
    cfg: &SolverConfig,
    mut h: FactorSubgraph<'g>,
    mut trace: SequenceTrace,
) -> Result<Outcome<'g>, SolverError> {
    let n = g.vertex_count();
    let backend = trace.backend;
    let none = |trace| {
        Ok(Outcome {
            factor: None,
            trace,
        })
    };
    let mut q = Partition::whole(n);
    trace.rounds.push(record(0, &q, h.len(), 0, 0, 0));
    let field = cfg
        .field
        .unwrap_or_else(|| FieldChoice::for_vertex_count(n));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let limit = cfg.round_limit.unwrap_or(n);

    for round in 1..=limit + 1 {
        let refined = refine_by_components(&h, &q);
        if refined.unchanged {
            assert!(verify_f_factor(g, f, &h, None).is_valid_connected());
            return Ok(Outcome {
                factor: Some(h),
                trace,
            });
        }
        if round > limit {
            return Err(SolverError::RoundLimit(limit));
        }
        let fine = refined.partition;
        let mut calls = 0;
        let mut trees = 0;
        let connector = match backend {
            Backend::Randomized => {
                let mut found = None;
                for _ in 0..=cfg.retries {
                    calls += 1;
                    found = pc_randomized_in(field, g, f, &fine, &mut rng);
                    if found.is_some() {
                        break;
                    }
                }
                found
            }
            _ => {
                calls += 1;
                let (found, stats) = pc_deterministic_with(g, f, &fine, Some(&h));
                trees = stats.trees_examined;
                found
            }
        };
        let Some(h2) = connector else {
            return none(trace);
        };
        let next = repair_close_factor(&h, &q, &h2, &fine)?;
        check_round(g, f, &h, &next, &q, &fine)?;
        let drop = max_drop(&h, &next, &fine);
        trace
            .rounds
            .push(record(round, &fine, next.len(), calls, trees, drop));
        h = next;
        q = fine;
    }
    unreachable!("the loop returns by its last iteration")
}

fn record(
    round: usize,
    q: &Partition,
    edges: usize,
    calls: usize,
    trees: usize,
    drop: usize,
) -> RoundRecord {
    RoundRecord {
        round,
        parts: q.len(),
        part_sizes: q.part_sizes(),
        backend_calls: calls,
        trees_examined: trees,
        max_degree_drop: drop,
        drop_allowance: 2 * (q.len() - 1),
        factor_edges: edges,
    }
}

fn max_drop(before: &FactorSubgraph<'_>, after: &FactorSubgraph<'_>, q: &Partition) -> usize {
    (0..before.host().vertex_count())
        .map(|v| {
            before
                .neighbors_in_own_part(v, q)
                .saturating_sub(after.neighbors_in_own_part(v, q))
        })
        .max()
        .unwrap_or(0)
}

fn check_round(
    g: &Graph,
    f: &DegreeSpec,
    before: &FactorSubgraph<'_>,
    after: &FactorSubgraph<'_>,
    coarse: &Partition,
    fine: &Partition,
) -> Result<(), SolverError> {
    let report = verify_f_factor(g, f, after, Some(fine));
    if !report.is_valid_connector() {
        return Err(SolverError::Invariant(format!(
            "bad round factor: {report:?}"
        )));
    }
    if !fine.is_refinement_of(coarse) || fine.len() <= coarse.len() {
        return Err(SolverError::Invariant(
            "partition did not strictly refine".into(),
        ));
    }
    if max_drop(before, after, fine) > 2 * (fine.len() - 1) {
        return Err(SolverError::Invariant("degree drop above allowance".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    /// `n / min f`.
    pub g: f64,
    /// `ceil(g) + 1`.
    pub bound: usize,
    /// Whether `n >= 6 g^4`, the regime in which the bound is guaranteed.
    pub strict: bool,
    pub max_parts: usize,
    pub rounds: usize,
    pub monotone: bool,
    pub within_bound: bool,
    pub violations: Vec<String>,
}

impl BoundsReport {
    /// Monotone, and within the bound whenever the bound is guaranteed.
    pub fn passes(&self) -> bool {
        self.monotone && (self.within_bound || !self.strict)
    }
}

/// Checks that the number of parts strictly grows and stays within
/// `ceil(n / min f) + 1`, as does the number of recorded rounds.
pub fn assert_sequence_bounds(trace: &SequenceTrace, g: &Graph, f: &DegreeSpec) -> BoundsReport {
    let n = g.vertex_count();
    let min_f = f.min().unwrap_or(0).max(1);
    let gv = n as f64 / min_f as f64;
    let bound = n.div_ceil(min_f) + 1;
    let mut violations = Vec::new();
    let mut monotone = true;
    for w in trace.rounds.windows(2) {
        if w[1].parts <= w[0].parts {
            monotone = false;
            violations.push(format!(
                "round {}: {} parts after {}",
                w[1].round, w[1].parts, w[0].parts
            ));
        }
    }
    let max_parts = trace.max_parts();
    let rounds = trace.rounds.len();
    if max_parts > bound {
        violations.push(format!("{max_parts} parts exceed bound {bound}"));
    }
    if rounds > bound {
        violations.push(format!("{rounds} rounds exceed bound {bound}"));
    }
    BoundsReport {
        g: gv,
        bound,
        strict: n as f64 >= 6.0 * gv.powi(4),
        max_parts,
        rounds,
        monotone,
        within_bound: max_parts <= bound && rounds <= bound,
        violations,
    }
}

//! Top-level algorithms: the DP-plus-repair heuristic, the multi-start
//! construction baseline and the hybrid EA with solution merging.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::conflict::build_conflict_graph;
use crate::construct::{ConstructionParams, Constructor};
use crate::error::{Error, Result};
use crate::lcs::{lcs_length, lcs_traceback};
use crate::mis::Budget;
use crate::model::{Instance, Solution};

/// Algorithm configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    /// Constructions merged per iteration.
    pub n_sols: usize,
    pub d_rate: f64,
    pub l_size: usize,
    /// Seconds allowed for each exact merge (and each repair).
    pub t_max: f64,
    /// Replaces `t_max` by a search-node cap, which makes runs reproducible.
    pub mis_node_cap: Option<u64>,
}

impl Params {
    pub fn new(n_sols: usize, d_rate: f64, l_size: usize, t_max: f64) -> Self {
        Self {
            n_sols,
            d_rate,
            l_size,
            t_max,
            mis_node_cap: None,
        }
    }

    pub fn with_node_cap(mut self, cap: u64) -> Self {
        self.mis_node_cap = Some(cap);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sols == 0 {
            return Err(Error::InvalidParameter("n_sols must be at least 1".into()));
        }
        if self.t_max.is_nan() || self.t_max <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        self.construction().validate()
    }

    pub fn construction(&self) -> ConstructionParams {
        ConstructionParams {
            d_rate: self.d_rate,
            l_size: self.l_size,
        }
    }

    /// Budget of one exact call, never reaching past `remaining` when the
    /// run itself is timed.
    fn mis_budget(&self, remaining: Option<Duration>) -> Budget {
        match self.mis_node_cap {
            Some(cap) => Budget::Nodes(cap),
            None => {
                let t = Duration::from_secs_f64(self.t_max);
                Budget::Time(remaining.map_or(t, |r| r.min(t)))
            }
        }
    }
}

/// When a multi-iteration run stops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunLimit {
    Time(Duration),
    Iterations(u64),
}

impl RunLimit {
    pub fn seconds(s: f64) -> Self {
        RunLimit::Time(Duration::from_secs_f64(s))
    }

    fn validate(&self) -> Result<()> {
        match *self {
            RunLimit::Time(d) if d.is_zero() => {
                Err(Error::InvalidParameter("time limit must be positive".into()))
            }
            RunLimit::Iterations(0) => Err(Error::InvalidParameter(
                "iteration limit must be positive".into(),
            )),
            _ => Ok(()),
        }
    }

    fn reached(&self, start: Instant, iterations: u64) -> bool {
        match *self {
            RunLimit::Time(d) => start.elapsed() >= d,
            RunLimit::Iterations(n) => iterations >= n,
        }
    }

    fn remaining(&self, start: Instant) -> Option<Duration> {
        match *self {
            RunLimit::Time(d) => Some(d.saturating_sub(start.elapsed())),
            RunLimit::Iterations(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEvent {
    pub seconds: f64,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best: Solution,
    pub best_value: usize,
    /// Seconds from the start until `best` was found.
    pub time_to_best: f64,
    pub total_time: f64,
    pub iterations: u64,
    /// Improvements in order; values strictly increase.
    pub trace: Vec<TraceEvent>,
    /// Exact calls (merges, or the single repair of the heuristic) that
    /// finished with a proof of optimality.
    pub proven_optimal_merges: u64,
}

struct Tracker {
    start: Instant,
    best: Solution,
    time_to_best: f64,
    trace: Vec<TraceEvent>,
}

impl Tracker {
    fn new(start: Instant) -> Self {
        Self {
            start,
            best: Solution::empty(),
            time_to_best: 0.0,
            trace: Vec::new(),
        }
    }

    fn offer(&mut self, s: Solution) -> bool {
        if s.len() <= self.best.len() {
            return false;
        }
        let t = self.start.elapsed().as_secs_f64();
        self.trace.push(TraceEvent {
            seconds: t,
            value: s.len(),
        });
        self.time_to_best = t;
        self.best = s;
        true
    }

    fn finish(self, iterations: u64, proven: u64) -> RunResult {
        RunResult {
            best_value: self.best.len(),
            best: self.best,
            time_to_best: self.time_to_best,
            total_time: self.start.elapsed().as_secs_f64(),
            iterations,
            trace: self.trace,
            proven_optimal_merges: proven,
        }
    }
}

/// Largest valid subset of `s` found within `budget`.
///
/// `s` must satisfy the common subsequence condition; only arc preservation
/// is repaired.
pub fn repair(s: &Solution, instance: &Instance, budget: Budget) -> Result<Solution> {
    repair_with_result(s, instance, budget).map(|(s, _)| s)
}

fn repair_with_result(s: &Solution, instance: &Instance, budget: Budget) -> Result<(Solution, bool)> {
    let items = s.as_slice();
    for w in items.windows(2) {
        if !(w[0].i < w[1].i && w[0].j < w[1].j) {
            return Err(Error::NotCommonSubsequence(w[0], w[1]));
        }
    }
    let graph = build_conflict_graph(items, instance)?;
    if graph.edge_count() == 0 {
        return Ok((s.clone(), true));
    }
    let (out, result) = graph.max_valid_subset(budget, &Solution::empty());
    Ok((out, result.proven_optimal))
}

/// Plain LCS by dynamic programming, then arc repair.
pub fn run_heuristic(instance: &Instance, budget: Budget) -> Result<RunResult> {
    let start = Instant::now();
    let raw = lcs_traceback(instance.x.symbols(), instance.y.symbols())?;
    let (best, proven) = repair_with_result(&raw, instance, budget)?;
    let mut tracker = Tracker::new(start);
    tracker.offer(best);
    tracker.time_to_best = start.elapsed().as_secs_f64();
    Ok(tracker.finish(1, proven as u64))
}

/// Repeated independent constructions; keeps the largest.
///
/// Stops early once the best value reaches the plain LCS length, which no
/// solution can exceed.
pub fn run_ms_heur<R: Rng + ?Sized>(
    instance: &Instance,
    params: &Params,
    limit: RunLimit,
    rng: &mut R,
) -> Result<RunResult> {
    params.validate()?;
    limit.validate()?;
    let start = Instant::now();
    let upper = lcs_length(instance.x.symbols(), instance.y.symbols());
    let constructor = Constructor::new(instance);
    let cp = params.construction();
    let mut tracker = Tracker::new(start);
    let mut iterations = 0;
    loop {
        let s = constructor.generate(&cp, params.mis_budget(limit.remaining(start)), rng);
        iterations += 1;
        tracker.offer(s);
        if tracker.best.len() >= upper || limit.reached(start, iterations) {
            break;
        }
    }
    Ok(tracker.finish(iterations, 0))
}

/// Hybrid EA: each iteration merges the best-so-far solution with `n_sols`
/// fresh constructions and solves the problem exactly on the merged
/// assignments.
///
/// The exact merge starts from the larger of the best-so-far solution and the
/// best fresh construction, so the result never falls below either. Stops
/// early once the best value reaches the plain LCS length.
pub fn run_hyb_ea<R: Rng + ?Sized>(
    instance: &Instance,
    params: &Params,
    limit: RunLimit,
    rng: &mut R,
) -> Result<RunResult> {
    params.validate()?;
    limit.validate()?;
    let start = Instant::now();
    let upper = lcs_length(instance.x.symbols(), instance.y.symbols());
    let constructor = Constructor::new(instance);
    let cp = params.construction();
    let mut tracker = Tracker::new(start);
    let mut iterations = 0;
    let mut proven = 0;
    loop {
        let mut merged = tracker.best.as_slice().to_vec();
        let mut seed = tracker.best.clone();
        for _ in 0..params.n_sols {
            let s = constructor.generate(&cp, params.mis_budget(limit.remaining(start)), rng);
            merged.extend(s.iter());
            if s.len() > seed.len() {
                seed = s;
            }
        }
        merged.sort_unstable();
        merged.dedup();
        let graph = build_conflict_graph(&merged, instance)?;
        let (merged_best, result) =
            graph.max_valid_subset(params.mis_budget(limit.remaining(start)), &seed);
        if result.proven_optimal {
            proven += 1;
        }
        iterations += 1;
        tracker.offer(merged_best);
        if tracker.best.len() >= upper || limit.reached(start, iterations) {
            break;
        }
    }
    Ok(tracker.finish(iterations, proven))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Heuristic,
    MsHeur,
    HybEa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Heuristic, Algorithm::MsHeur, Algorithm::HybEa];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Heuristic => "heuristic",
            Algorithm::MsHeur => "msheur",
            Algorithm::HybEa => "hybea",
        }
    }

    /// Runs the algorithm. The heuristic ignores `limit` and uses the
    /// merge budget of `params` for its repair.
    pub fn run<R: Rng + ?Sized>(
        &self,
        instance: &Instance,
        params: &Params,
        limit: RunLimit,
        rng: &mut R,
    ) -> Result<RunResult> {
        match self {
            Algorithm::Heuristic => run_heuristic(instance, params.mis_budget(None)),
            Algorithm::MsHeur => run_ms_heur(instance, params, limit, rng),
            Algorithm::HybEa => run_hyb_ea(instance, params, limit, rng),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heuristic" => Ok(Algorithm::Heuristic),
            "msheur" => Ok(Algorithm::MsHeur),
            "hybea" => Ok(Algorithm::HybEa),
            other => Err(Error::InvalidParameter(format!("unknown algorithm {other:?}"))),
        }
    }
}

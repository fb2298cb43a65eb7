//! Benchmark harness: tuned default parameters, the experiment runner with
//! CSV output, and summary statistics over result files.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::io::{generate_instance, parse_instance_with_alphabet, GeneratorConfig};
use crate::model::{is_valid_solution, Alphabet, Instance};
use crate::solvers::{Algorithm, Params, RunLimit};

/// Tuned parameters per sequence length, `(n, n_sols, d_rate, l_size, t_max)`.
pub const TUNED_PARAMS: [(usize, usize, f64, usize, f64); 10] = [
    (100, 10, 0.3, 2, 5.0),
    (200, 5, 0.7, 3, 1.0),
    (300, 5, 0.7, 2, 5.0),
    (400, 5, 0.7, 3, 10.0),
    (500, 5, 0.3, 2, 20.0),
    (600, 5, 0.7, 2, 5.0),
    (700, 5, 0.5, 2, 20.0),
    (800, 5, 0.7, 2, 5.0),
    (900, 5, 0.5, 2, 5.0),
    (1000, 5, 0.7, 2, 5.0),
];

/// Tuned parameters for the listed length nearest to `n` (ties go to the
/// larger length).
pub fn default_params_for(n: usize) -> Params {
    let &(_, n_sols, d_rate, l_size, t_max) = TUNED_PARAMS
        .iter()
        .min_by_key(|row| (row.0.abs_diff(n), std::cmp::Reverse(row.0)))
        .expect("table is not empty");
    Params::new(n_sols, d_rate, l_size, t_max)
}

/// Per-run seed: `master` XOR the first eight bytes (little endian) of the
/// SHA-256 of the parts joined by NUL bytes.
pub fn derive_seed(master: u64, parts: &[&str]) -> u64 {
    let mut h = Sha256::new();
    for (k, p) in parts.iter().enumerate() {
        if k > 0 {
            h.update([0u8]);
        }
        h.update(p.as_bytes());
    }
    let digest = h.finalize();
    let mut b = [0u8; 8];
    b.copy_from_slice(&digest[..8]);
    master ^ u64::from_le_bytes(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Heuristic,
    MsHeur,
    HybEa,
    All,
}

impl Mode {
    pub fn algorithms(&self) -> Vec<Algorithm> {
        match self {
            Mode::Heuristic => vec![Algorithm::Heuristic],
            Mode::MsHeur => vec![Algorithm::MsHeur],
            Mode::HybEa => vec![Algorithm::HybEa],
            Mode::All => Algorithm::ALL.to_vec(),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Mode::All),
            other => match other.parse::<Algorithm>()? {
                Algorithm::Heuristic => Ok(Mode::Heuristic),
                Algorithm::MsHeur => Ok(Mode::MsHeur),
                Algorithm::HybEa => Ok(Mode::HybEa),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    Files(Vec<PathBuf>),
    /// `count` instances for every length in `ns` and every arc fraction.
    Generated {
        ns: Vec<usize>,
        arc_fractions: Vec<f64>,
        count: usize,
    },
}

/// How long each metaheuristic run may take.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeRule {
    /// `n/10` seconds for generated instances, 30 seconds for files.
    Default,
    Fixed(f64),
    /// Fixed iteration count instead of a clock.
    Iterations(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ParamOverrides {
    pub n_sols: Option<usize>,
    pub d_rate: Option<f64>,
    pub l_size: Option<usize>,
    pub t_max: Option<f64>,
    pub mis_node_cap: Option<u64>,
}

impl ParamOverrides {
    pub fn apply(&self, mut p: Params) -> Params {
        if let Some(v) = self.n_sols {
            p.n_sols = v;
        }
        if let Some(v) = self.d_rate {
            p.d_rate = v;
        }
        if let Some(v) = self.l_size {
            p.l_size = v;
        }
        if let Some(v) = self.t_max {
            p.t_max = v;
        }
        if let Some(v) = self.mis_node_cap {
            p.mis_node_cap = Some(v);
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub mode: Mode,
    pub source: InstanceSource,
    pub alphabet: Alphabet,
    pub repetitions: usize,
    pub time_rule: TimeRule,
    pub overrides: ParamOverrides,
    pub master_seed: u64,
    pub jobs: usize,
}

impl BenchConfig {
    pub fn generated(ns: Vec<usize>, arc_fractions: Vec<f64>, count: usize) -> Self {
        Self {
            mode: Mode::All,
            source: InstanceSource::Generated {
                ns,
                arc_fractions,
                count,
            },
            alphabet: Alphabet::rna(),
            repetitions: 1,
            time_rule: TimeRule::Default,
            overrides: ParamOverrides::default(),
            master_seed: 0,
            jobs: 1,
        }
    }

    /// Runs are reproducible when both the run length and every exact call
    /// are capped by counts rather than by the clock.
    pub fn is_deterministic(&self) -> bool {
        matches!(self.time_rule, TimeRule::Iterations(_)) && self.overrides.mis_node_cap.is_some()
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::InvalidParameter("repetitions must be at least 1".into()));
        }
        match self.time_rule {
            TimeRule::Fixed(t) if t.is_nan() || t <= 0.0 => {
                return Err(Error::InvalidParameter("time limit must be positive".into()))
            }
            TimeRule::Iterations(0) => {
                return Err(Error::InvalidParameter("iteration limit must be positive".into()))
            }
            _ => {}
        }
        if let InstanceSource::Generated { ns, arc_fractions, .. } = &self.source {
            if ns.contains(&0) {
                return Err(Error::InvalidParameter("lengths must be positive".into()));
            }
            if arc_fractions.iter().any(|f| f.is_nan() || *f < 0.0) {
                return Err(Error::InvalidParameter("arc fractions must be non-negative".into()));
            }
        }
        Ok(())
    }
}

/// One instance to be benchmarked.
#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub id: String,
    pub instance: Instance,
    pub generated: bool,
}

impl BenchInstance {
    pub fn n(&self) -> usize {
        self.instance.lx()
    }

    pub fn n_arcs(&self) -> usize {
        self.instance.x.arcs().len()
    }
}

/// Generated instance id, e.g. `gen-n100-a10-i007`.
pub fn generated_id(n: usize, n_arcs: usize, k: usize) -> String {
    format!("gen-n{n}-a{n_arcs}-i{k:03}")
}

/// Arc count for length `n` and fraction `f`, rounded to the nearest integer.
pub fn arcs_for(n: usize, fraction: f64) -> usize {
    (n as f64 * fraction).round() as usize
}

pub fn load_instances(cfg: &BenchConfig) -> Result<Vec<BenchInstance>> {
    let mut out = Vec::new();
    match &cfg.source {
        InstanceSource::Files(paths) => {
            for p in paths {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                let instance = parse_instance_with_alphabet(&text, &cfg.alphabet).map_err(|e| match e {
                    Error::Parse { line, msg } => Error::Parse {
                        line,
                        msg: format!("{}: {msg}", p.display()),
                    },
                    other => other,
                })?;
                let id = p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| p.display().to_string());
                out.push(BenchInstance {
                    id,
                    instance,
                    generated: false,
                });
            }
        }
        InstanceSource::Generated {
            ns,
            arc_fractions,
            count,
        } => {
            for &n in ns {
                for &f in arc_fractions {
                    let n_arcs = arcs_for(n, f);
                    for k in 0..*count {
                        let id = generated_id(n, n_arcs, k);
                        let gen = GeneratorConfig {
                            n,
                            n_arcs,
                            alphabet: cfg.alphabet.clone(),
                            seed: derive_seed(cfg.master_seed, &[&id, "instance"]),
                        };
                        out.push(BenchInstance {
                            id,
                            instance: generate_instance(&gen)?,
                            generated: true,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub instance_id: String,
    pub n: usize,
    pub n_arcs: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub best_value: usize,
    /// `None` in reproducible mode.
    pub time_to_best_s: Option<f64>,
    pub total_time_s: Option<f64>,
    pub iterations: u64,
    pub proven_optimal_merges: u64,
}

/// Mean of every numeric column over the rows of one cell and algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub n: usize,
    pub n_arcs: usize,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub mean_value: f64,
    pub mean_time_to_best_s: Option<f64>,
    pub mean_total_time_s: Option<f64>,
    pub mean_iterations: f64,
    pub mean_proven_optimal_merges: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub instance_id: String,
    pub algorithm: Algorithm,
    pub repetition: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutput {
    pub rows: Vec<ResultRow>,
    pub aggregates: Vec<AggregateRow>,
    pub failures: Vec<RunFailure>,
}

pub const CSV_HEADER: [&str; 10] = [
    "instance_id",
    "n",
    "n_arcs",
    "algorithm",
    "seed",
    "best_value",
    "time_to_best_s",
    "total_time_s",
    "iterations",
    "proven_optimal_merges",
];

/// Instance id used for aggregate rows.
pub const MEAN_ROW_ID: &str = "MEAN";

/// Times are kept at microsecond resolution so that aggregates recomputed
/// from a written file match the emitted ones.
fn round_time(t: f64) -> f64 {
    format!("{t:.6}").parse().expect("formatted float parses")
}

struct Job<'a> {
    inst: &'a BenchInstance,
    algorithm: Algorithm,
    repetition: usize,
}

fn run_job(cfg: &BenchConfig, job: &Job<'_>) -> std::result::Result<ResultRow, RunFailure> {
    let inst = job.inst;
    let seed = derive_seed(
        cfg.master_seed,
        &[&inst.id, job.algorithm.name(), &job.repetition.to_string()],
    );
    let params = cfg.overrides.apply(default_params_for(inst.n()));
    let limit = match cfg.time_rule {
        TimeRule::Default if inst.generated => RunLimit::seconds(inst.n() as f64 / 10.0),
        TimeRule::Default => RunLimit::seconds(30.0),
        TimeRule::Fixed(t) => RunLimit::seconds(t),
        TimeRule::Iterations(k) => RunLimit::Iterations(k),
    };
    let fail = |message: String| RunFailure {
        instance_id: inst.id.clone(),
        algorithm: job.algorithm,
        repetition: job.repetition,
        message,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = job
        .algorithm
        .run(&inst.instance, &params, limit, &mut rng)
        .map_err(|e| fail(e.to_string()))?;
    match is_valid_solution(&result.best, &inst.instance) {
        Ok(r) if r.valid => {}
        Ok(r) => return Err(fail(format!("invalid solution ({} violations)", r.total_violations))),
        Err(e) => return Err(fail(e.to_string())),
    }
    let timed = !cfg.is_deterministic();
    Ok(ResultRow {
        instance_id: inst.id.clone(),
        n: inst.n(),
        n_arcs: inst.n_arcs(),
        algorithm: job.algorithm,
        seed,
        best_value: result.best_value,
        time_to_best_s: timed.then(|| round_time(result.time_to_best)),
        total_time_s: timed.then(|| round_time(result.total_time)),
        iterations: result.iterations,
        proven_optimal_merges: result.proven_optimal_merges,
    })
}

/// Runs every (instance, algorithm, repetition) combination. Output order is
/// instance, then algorithm, then repetition, whatever `cfg.jobs` is.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchOutput> {
    cfg.validate()?;
    let instances = load_instances(cfg)?;
    run_on_instances(cfg, &instances)
}

pub fn run_on_instances(cfg: &BenchConfig, instances: &[BenchInstance]) -> Result<BenchOutput> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for inst in instances {
        for algorithm in cfg.mode.algorithms() {
            for repetition in 0..cfg.repetitions {
                jobs.push(Job {
                    inst,
                    algorithm,
                    repetition,
                });
            }
        }
    }

    let slots: Vec<Mutex<Option<std::result::Result<ResultRow, RunFailure>>>> =
        jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = cfg.jobs.clamp(1, jobs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= jobs.len() {
                    break;
                }
                let r = run_job(cfg, &jobs[k]);
                *slots[k].lock().expect("slot lock") = Some(r);
            });
        }
    });

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for slot in slots {
        match slot.into_inner().expect("slot lock").expect("every job ran") {
            Ok(r) => rows.push(r),
            Err(f) => failures.push(f),
        }
    }
    let aggregates = aggregate(&rows);
    Ok(BenchOutput {
        rows,
        aggregates,
        failures,
    })
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

fn mean_opt(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let v: Option<Vec<f64>> = values.collect();
    v.map(|v| mean(v.into_iter()))
}

/// Aggregate rows per `(n, n_arcs)` cell and algorithm, cells in order of
/// first appearance, algorithms in the fixed order.
pub fn aggregate(rows: &[ResultRow]) -> Vec<AggregateRow> {
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for r in rows {
        if !cells.contains(&(r.n, r.n_arcs)) {
            cells.push((r.n, r.n_arcs));
        }
    }
    let mut out = Vec::new();
    for (n, n_arcs) in cells {
        for algorithm in Algorithm::ALL {
            let sel: Vec<&ResultRow> = rows
                .iter()
                .filter(|r| r.n == n && r.n_arcs == n_arcs && r.algorithm == algorithm)
                .collect();
            if sel.is_empty() {
                continue;
            }
            out.push(AggregateRow {
                n,
                n_arcs,
                algorithm,
                runs: sel.len(),
                mean_value: mean(sel.iter().map(|r| r.best_value as f64)),
                mean_time_to_best_s: mean_opt(sel.iter().map(|r| r.time_to_best_s)),
                mean_total_time_s: mean_opt(sel.iter().map(|r| r.total_time_s)),
                mean_iterations: mean(sel.iter().map(|r| r.iterations as f64)),
                mean_proven_optimal_merges: mean(sel.iter().map(|r| r.proven_optimal_merges as f64)),
            });
        }
    }
    out
}

fn fmt_time(t: Option<f64>) -> String {
    t.map(|t| format!("{t:.6}")).unwrap_or_default()
}

fn fmt_mean(v: f64) -> String {
    format!("{v:.4}")
}

/// Raw rows followed by one aggregate row per cell and algorithm.
pub fn write_csv<W: Write>(out: &BenchOutput, w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(CSV_HEADER)?;
    for r in &out.rows {
        wr.write_record([
            r.instance_id.clone(),
            r.n.to_string(),
            r.n_arcs.to_string(),
            r.algorithm.name().to_string(),
            r.seed.to_string(),
            r.best_value.to_string(),
            fmt_time(r.time_to_best_s),
            fmt_time(r.total_time_s),
            r.iterations.to_string(),
            r.proven_optimal_merges.to_string(),
        ])?;
    }
    for a in &out.aggregates {
        wr.write_record(aggregate_record(a))?;
    }
    wr.flush()?;
    Ok(())
}

fn aggregate_record(a: &AggregateRow) -> [String; 10] {
    [
        MEAN_ROW_ID.to_string(),
        a.n.to_string(),
        a.n_arcs.to_string(),
        a.algorithm.name().to_string(),
        String::new(),
        fmt_mean(a.mean_value),
        a.mean_time_to_best_s.map(fmt_mean).unwrap_or_default(),
        a.mean_total_time_s.map(fmt_mean).unwrap_or_default(),
        fmt_mean(a.mean_iterations),
        fmt_mean(a.mean_proven_optimal_merges),
    ]
}

/// Result file contents: raw rows and the aggregate rows as written.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvContents {
    pub rows: Vec<ResultRow>,
    pub aggregate_records: Vec<Vec<String>>,
}

impl CsvContents {
    /// True iff the aggregate rows equal those recomputed from the raw rows.
    pub fn aggregates_consistent(&self) -> bool {
        let expected: Vec<Vec<String>> = aggregate(&self.rows)
            .iter()
            .map(|a| aggregate_record(a).to_vec())
            .collect();
        expected == self.aggregate_records
    }
}

pub fn read_csv<R: Read>(r: R) -> Result<CsvContents> {
    let mut rd = csv::Reader::from_reader(r);
    let headers = rd.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(Error::Csv(format!("unexpected header {:?}", headers)));
    }
    let mut rows = Vec::new();
    let mut aggregate_records = Vec::new();
    for (k, rec) in rd.records().enumerate() {
        let rec = rec?;
        let line = k + 2;
        let field = |i: usize| rec.get(i).unwrap_or("");
        if field(0) == MEAN_ROW_ID {
            aggregate_records.push(rec.iter().map(str::to_string).collect());
            continue;
        }
        let bad = |name: &str| Error::Parse {
            line,
            msg: format!("bad {name} field {:?}", field(CSV_HEADER.iter().position(|h| *h == name).unwrap_or(0))),
        };
        let num = |i: usize, name: &str| field(i).parse::<u64>().map_err(|_| bad(name));
        let time = |i: usize, name: &str| -> Result<Option<f64>> {
            if field(i).is_empty() {
                Ok(None)
            } else {
                field(i).parse::<f64>().map(Some).map_err(|_| bad(name))
            }
        };
        rows.push(ResultRow {
            instance_id: field(0).to_string(),
            n: num(1, "n")? as usize,
            n_arcs: num(2, "n_arcs")? as usize,
            algorithm: field(3).parse().map_err(|_| bad("algorithm"))?,
            seed: num(4, "seed")?,
            best_value: num(5, "best_value")? as usize,
            time_to_best_s: time(6, "time_to_best_s")?,
            total_time_s: time(7, "total_time_s")?,
            iterations: num(8, "iterations")?,
            proven_optimal_merges: num(9, "proven_optimal_merges")?,
        });
    }
    Ok(CsvContents {
        rows,
        aggregate_records,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmStats {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub mean_value: f64,
    pub mean_time_to_best_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub n_arcs: usize,
    pub stats: Vec<AlgorithmStats>,
    /// `100 * (mean hybea - mean msheur) / mean msheur`, when both ran.
    pub improvement_pct: Option<f64>,
    /// Per instance, the same percentage over that instance's mean values.
    pub instance_improvements: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub cells: Vec<CellSummary>,
    /// Best value per instance and algorithm over all repetitions.
    pub best_per_instance: Vec<(String, Algorithm, usize)>,
}

fn improvement(hyb: f64, ms: f64) -> f64 {
    if hyb == ms {
        0.0
    } else {
        100.0 * (hyb - ms) / ms
    }
}

/// Means per cell and algorithm, best values per instance, and the
/// improvement of the hybrid EA over the multi-start baseline.
pub fn summarize(rows: &[ResultRow]) -> Result<Summary> {
    // instance id -> algorithm -> values
    let mut per_instance: BTreeMap<&str, BTreeMap<Algorithm, Vec<usize>>> = BTreeMap::new();
    for r in rows {
        per_instance
            .entry(&r.instance_id)
            .or_default()
            .entry(r.algorithm)
            .or_default()
            .push(r.best_value);
    }
    for (id, algs) in &per_instance {
        let has_ms = algs.contains_key(&Algorithm::MsHeur);
        let has_hyb = algs.contains_key(&Algorithm::HybEa);
        if has_ms != has_hyb {
            let missing = if has_ms { Algorithm::HybEa } else { Algorithm::MsHeur };
            return Err(Error::MissingCounterpart {
                instance: id.to_string(),
                algorithm: missing.name().to_string(),
            });
        }
    }

    let mut best_per_instance = Vec::new();
    for (id, algs) in &per_instance {
        for (alg, values) in algs {
            best_per_instance.push((id.to_string(), *alg, *values.iter().max().expect("non-empty")));
        }
    }

    let mut cells = Vec::new();
    for agg in aggregate(rows).chunk_by(|a, b| (a.n, a.n_arcs) == (b.n, b.n_arcs)) {
        let (n, n_arcs) = (agg[0].n, agg[0].n_arcs);
        let stats: Vec<AlgorithmStats> = agg
            .iter()
            .map(|a| AlgorithmStats {
                algorithm: a.algorithm,
                runs: a.runs,
                mean_value: a.mean_value,
                mean_time_to_best_s: a.mean_time_to_best_s,
            })
            .collect();
        let find = |alg| stats.iter().find(|s| s.algorithm == alg).map(|s| s.mean_value);
        let improvement_pct = match (find(Algorithm::HybEa), find(Algorithm::MsHeur)) {
            (Some(h), Some(m)) => Some(improvement(h, m)),
            _ => None,
        };
        let mut ids: Vec<&str> = Vec::new();
        for r in rows.iter().filter(|r| r.n == n && r.n_arcs == n_arcs) {
            if !ids.contains(&r.instance_id.as_str()) {
                ids.push(&r.instance_id);
            }
        }
        let instance_improvements = ids
            .into_iter()
            .filter_map(|id| {
                let algs = &per_instance[id];
                let m = algs.get(&Algorithm::MsHeur)?;
                let h = algs.get(&Algorithm::HybEa)?;
                let avg = |v: &Vec<usize>| mean(v.iter().map(|&x| x as f64));
                Some((id.to_string(), improvement(avg(h), avg(m))))
            })
            .collect();
        cells.push(CellSummary {
            n,
            n_arcs,
            stats,
            improvement_pct,
            instance_improvements,
        });
    }
    Ok(Summary {
        cells,
        best_per_instance,
    })
}

/// Aligned per-cell table in the layout of the published comparison.
pub fn write_summary_table<W: Write>(s: &Summary, mut w: W) -> std::io::Result<()> {
    writeln!(
        w,
        "{:>6} {:>6}  {:>10} {:>8}  {:>10} {:>8}  {:>10} {:>8}  {:>8}",
        "n", "arcs", "heuristic", "time", "msheur", "time", "hybea", "time", "impr%"
    )?;
    for c in &s.cells {
        write!(w, "{:>6} {:>6}", c.n, c.n_arcs)?;
        for alg in Algorithm::ALL {
            match c.stats.iter().find(|st| st.algorithm == alg) {
                Some(st) => write!(
                    w,
                    "  {:>10.2} {:>8}",
                    st.mean_value,
                    st.mean_time_to_best_s.map(|t| format!("{t:.2}")).unwrap_or_else(|| "-".into())
                )?,
                None => write!(w, "  {:>10} {:>8}", "-", "-")?,
            }
        }
        match c.improvement_pct {
            Some(p) => writeln!(w, "  {p:>8.2}")?,
            None => writeln!(w, "  {:>8}", "-")?,
        }
    }
    Ok(())
}

/// Per-instance improvements, one row each, for external box plots.
pub fn write_improvements_csv<W: Write>(s: &Summary, w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["n", "n_arcs", "instance_id", "improvement_pct"])?;
    for c in &s.cells {
        for (id, p) in &c.instance_improvements {
            wr.write_record([c.n.to_string(), c.n_arcs.to_string(), id.clone(), format!("{p:.4}")])?;
        }
    }
    wr.flush()?;
    Ok(())
}

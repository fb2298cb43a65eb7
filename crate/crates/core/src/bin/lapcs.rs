use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lapcs::bench::{
    self, default_params_for, read_csv, summarize, write_csv, write_improvements_csv, write_summary_table,
    BenchConfig, InstanceSource, Mode, ParamOverrides, TimeRule,
};
use lapcs::io::{generate_instance, parse_instance_with_alphabet, serialize_instance, GeneratorConfig};
use lapcs::model::{classify_arc_structure, decode_subsequence, is_valid_solution, Alphabet};
use lapcs::{lcs_length, Error, RunLimit};

#[derive(Parser)]
#[command(name = "lapcs", version, about = "Longest arc-preserving common subsequence solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Generate(GenerateArgs),
    /// Solve one instance file.
    Solve(SolveArgs),
    /// Run algorithms over many instances and write a CSV of results.
    Bench(BenchArgs),
    /// Summarize a results CSV.
    Summarize(SummarizeArgs),
    /// Print basic facts about an instance file.
    Info(InfoArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Length of both sequences.
    #[arg(long)]
    n: usize,
    /// Number of arcs per sequence.
    #[arg(long, conflicts_with = "arc_fraction")]
    arcs: Option<usize>,
    /// Number of arcs as a fraction of `n`.
    #[arg(long)]
    arc_fraction: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "ACGU")]
    alphabet: String,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[arg(long)]
    n_sols: Option<usize>,
    #[arg(long)]
    d_rate: Option<f64>,
    #[arg(long)]
    l_size: Option<usize>,
    /// Seconds allowed per exact merge or repair call.
    #[arg(long)]
    t_max: Option<f64>,
    /// Node cap per exact call; together with --iterations makes runs reproducible.
    #[arg(long)]
    mis_nodes: Option<u64>,
}

impl ParamArgs {
    fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            n_sols: self.n_sols,
            d_rate: self.d_rate,
            l_size: self.l_size,
            t_max: self.t_max,
            mis_node_cap: self.mis_nodes,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// heuristic, msheur, hybea or all
    #[arg(long, default_value = "hybea")]
    mode: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock limit in seconds (default n/10).
    #[arg(long, conflicts_with = "iterations")]
    time_limit: Option<f64>,
    /// Stop after this many iterations instead of on time.
    #[arg(long)]
    iterations: Option<u64>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value = "ACGU")]
    alphabet: String,
    /// Also print the decoded subsequence and the assignments.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Instance files; when none are given instances are generated.
    instances: Vec<PathBuf>,
    #[arg(long, default_value = "all")]
    mode: String,
    /// Sequence lengths of generated instances.
    #[arg(long, value_delimiter = ',', default_value = "100")]
    n: Vec<usize>,
    /// Arc fractions of generated instances.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.5")]
    arc_fraction: Vec<f64>,
    /// Generated instances per (n, arc fraction) cell.
    #[arg(long, default_value_t = 30)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// Seconds per run (default n/10 for generated instances, 30 for files).
    #[arg(long, conflicts_with = "iterations")]
    time_limit: Option<f64>,
    #[arg(long)]
    iterations: Option<u64>,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "ACGU")]
    alphabet: String,
    /// Results CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SummarizeArgs {
    results: PathBuf,
    /// Write per-instance improvements to this CSV.
    #[arg(long)]
    improvements: Option<PathBuf>,
}

#[derive(Args)]
struct InfoArgs {
    instance: PathBuf,
    #[arg(long, default_value = "ACGU")]
    alphabet: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Bench(a) => run_bench(a),
        Command::Summarize(a) => run_summarize(a),
        Command::Info(a) => info(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn output(path: &Option<PathBuf>) -> lapcs::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_instance(path: &PathBuf, alphabet: &Alphabet) -> lapcs::Result<lapcs::Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance_with_alphabet(&text, alphabet)
}

fn generate(a: GenerateArgs) -> lapcs::Result<()> {
    let n_arcs = match (a.arcs, a.arc_fraction) {
        (Some(k), _) => k,
        (None, Some(f)) => bench::arcs_for(a.n, f),
        (None, None) => 0,
    };
    let cfg = GeneratorConfig {
        n: a.n,
        n_arcs,
        alphabet: Alphabet::new(a.alphabet.as_bytes())?,
        seed: a.seed,
    };
    let inst = generate_instance(&cfg)?;
    let mut w = output(&a.out)?;
    w.write_all(serialize_instance(&inst).as_bytes())?;
    w.flush()?;
    Ok(())
}

fn solve(a: SolveArgs) -> lapcs::Result<()> {
    let alphabet = Alphabet::new(a.alphabet.as_bytes())?;
    let inst = read_instance(&a.instance, &alphabet)?;
    let mode: Mode = a.mode.parse()?;
    let params = a.params.overrides().apply(default_params_for(inst.lx()));
    params.validate()?;
    let limit = match (a.iterations, a.time_limit) {
        (Some(k), _) => RunLimit::Iterations(k),
        (None, Some(t)) => RunLimit::seconds(t),
        (None, None) => RunLimit::seconds(inst.lx().max(1) as f64 / 10.0),
    };
    let mut out = io::stdout().lock();
    for alg in mode.algorithms() {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let r = alg.run(&inst, &params, limit, &mut rng)?;
        let report = is_valid_solution(&r.best, &inst)?;
        if !report.valid {
            return Err(Error::InvalidSolution(report.total_violations));
        }
        writeln!(
            out,
            "{alg}: value {} time_to_best {:.3}s total {:.3}s iterations {}",
            r.best_value, r.time_to_best, r.total_time, r.iterations
        )?;
        if a.verbose {
            writeln!(out, "  subsequence {}", decode_subsequence(&r.best, &inst)?)?;
            let pairs: Vec<String> = r.best.iter().map(|p| p.to_string()).collect();
            writeln!(out, "  assignments {}", pairs.join(" "))?;
        }
    }
    Ok(())
}

fn run_bench(a: BenchArgs) -> lapcs::Result<()> {
    let source = if a.instances.is_empty() {
        InstanceSource::Generated {
            ns: a.n.clone(),
            arc_fractions: a.arc_fraction.clone(),
            count: a.count,
        }
    } else {
        InstanceSource::Files(a.instances.clone())
    };
    let time_rule = match (a.iterations, a.time_limit) {
        (Some(k), _) => TimeRule::Iterations(k),
        (None, Some(t)) => TimeRule::Fixed(t),
        (None, None) => TimeRule::Default,
    };
    let cfg = BenchConfig {
        mode: a.mode.parse()?,
        source,
        alphabet: Alphabet::new(a.alphabet.as_bytes())?,
        repetitions: a.reps,
        time_rule,
        overrides: a.params.overrides(),
        master_seed: a.seed,
        jobs: a.jobs,
    };
    let out = bench::run_benchmark(&cfg)?;
    for f in &out.failures {
        eprintln!(
            "run failed: {} {} rep {}: {}",
            f.instance_id, f.algorithm, f.repetition, f.message
        );
    }
    let mut w = output(&a.out)?;
    write_csv(&out, &mut w)?;
    w.flush()?;
    if !out.failures.is_empty() {
        return Err(Error::InvalidParameter(format!("{} runs failed", out.failures.len())));
    }
    Ok(())
}

fn run_summarize(a: SummarizeArgs) -> lapcs::Result<()> {
    let file = File::open(&a.results).map_err(|e| Error::Io(format!("{}: {e}", a.results.display())))?;
    let contents = read_csv(file)?;
    if !contents.aggregates_consistent() {
        eprintln!("warning: aggregate rows do not match the raw rows");
    }
    let s = summarize(&contents.rows)?;
    let mut out = io::stdout().lock();
    write_summary_table(&s, &mut out)?;
    if let Some(p) = &a.improvements {
        let f = File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
        write_improvements_csv(&s, BufWriter::new(f))?;
    }
    Ok(())
}

fn info(a: InfoArgs) -> lapcs::Result<()> {
    let inst = read_instance(&a.instance, &Alphabet::new(a.alphabet.as_bytes())?)?;
    let mut out = io::stdout().lock();
    for (name, seq) in [("x", &inst.x), ("y", &inst.y)] {
        writeln!(
            out,
            "{name}: length {} arcs {} structure {}",
            seq.len(),
            seq.arcs().len(),
            classify_arc_structure(seq)
        )?;
    }
    writeln!(out, "lcs upper bound {}", lcs_length(inst.x.symbols(), inst.y.symbols()))?;
    Ok(())
}

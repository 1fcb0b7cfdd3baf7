//! `factorforge`: solve, verify, generate and benchmark connected f-factor
//! instances.
//!
//! Exit codes: 0 YES, 1 NO, 2 error or failed verification, 3 the randomized
//! solver found nothing (the instance may still be YES).

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use factorforge::algebraic::FieldChoice;
use factorforge::graph::verify_f_factor;
use factorforge::lab::format::{
    emit_factor, emit_instance, parse_factor, parse_instance, parse_partition, Instance,
};
use factorforge::lab::generate::{
    complete, cycle, gen_hamiltonian_reduction, gen_planted, gen_random, hypercube, petersen,
    PlantedParams,
};
use factorforge::lab::solve::{bench_row, solve_instance, Algorithm, Answer, SolveOptions};
use factorforge::Graph;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "factorforge",
    version,
    about = "Connected f-factor solver and instance lab"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance; prints the factor as `f u v` lines.
    Solve(SolveArgs),
    /// Check a factor file against an instance.
    Verify(VerifyArgs),
    /// Write a generated instance.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Solve every instance in a directory and write one CSV row per run.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Auto,
    Det,
    Rand,
    Brute,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Auto => Algorithm::Auto,
            AlgorithmArg::Det => Algorithm::Det,
            AlgorithmArg::Rand => Algorithm::Rand,
            AlgorithmArg::Brute => Algorithm::Brute,
        }
    }
}

#[derive(Args)]
struct SolverFlags {
    #[arg(long, value_enum, default_value = "auto")]
    algorithm: AlgorithmArg,
    #[arg(long, env = "FACTORFORGE_SEED", default_value_t = 0)]
    seed: u64,
    /// Field size for the randomized solver: 16, 32, 64 or 128.
    #[arg(long)]
    field_bits: Option<u32>,
    /// Extra randomized attempts after a NO.
    #[arg(long, default_value_t = 0)]
    retries: usize,
}

impl SolverFlags {
    fn options(&self) -> Result<SolveOptions> {
        let field = match self.field_bits {
            None => None,
            Some(bits) => Some(
                FieldChoice::from_bits(bits)
                    .with_context(|| format!("unsupported field size {bits}"))?,
            ),
        };
        Ok(SolveOptions {
            algorithm: self.algorithm.into(),
            seed: self.seed,
            field,
            retries: self.retries,
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[command(flatten)]
    solver: SolverFlags,
    /// Partition file (`q <part> <id>` lines); replaces any partition in the
    /// instance.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Write a JSON run report, including the refinement trace.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    factor: PathBuf,
    #[arg(long)]
    partition: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// A YES instance built around a random connected witness.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        rate: f64,
        #[arg(long, default_value_t = 1)]
        min_degree: usize,
        #[arg(long, default_value_t = 1)]
        clusters: usize,
        #[arg(long, default_value_t = 1)]
        bridges: usize,
        #[arg(long, env = "FACTORFORGE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Hamiltonian-cycle instance of a source graph.
    Hamiltonian {
        /// cycle:<n>, complete:<n>, hypercube:<d>, petersen, or an instance
        /// file whose graph is used.
        #[arg(long)]
        source: String,
        #[arg(long, default_value_t = 3)]
        s: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// G(n, p) with random demands.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 3)]
        max_demand: usize,
        #[arg(long, env = "FACTORFORGE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of instance files; every regular file is read.
    corpus: PathBuf,
    #[command(flatten)]
    solver: SolverFlags,
    /// Runs per instance, with seeds `seed, seed + 1, ...`.
    #[arg(long, default_value_t = 1)]
    repeat: u64,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct RunReport<'a> {
    answer: &'static str,
    algorithm: &'static str,
    rounds: usize,
    max_parts: usize,
    wall_ms: f64,
    trace: Option<&'a factorforge::driver::SequenceTrace>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path, partition: Option<&Path>) -> Result<Instance> {
    let mut inst =
        parse_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(p) = partition {
        let q = parse_partition(&read(p)?, inst.graph.vertex_count())
            .with_context(|| format!("parsing {}", p.display()))?;
        inst.partition = Some(q);
    }
    Ok(inst)
}

fn solve(args: &SolveArgs) -> Result<ExitCode> {
    let inst = load_instance(&args.instance, args.partition.as_deref())?;
    let report = solve_instance(&inst, &args.solver.options()?)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "c answer {}", report.answer.name())?;
    if let Some(h) = &report.factor {
        out.write_all(emit_factor(h).as_bytes())?;
    }
    if let Some(path) = &args.trace {
        let run = RunReport {
            answer: report.answer.name(),
            algorithm: report.algorithm.name(),
            rounds: report.rounds,
            max_parts: report.max_parts,
            wall_ms: report.wall.as_secs_f64() * 1e3,
            trace: report.trace.as_ref(),
        };
        fs::write(path, serde_json::to_string_pretty(&run)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::from(match report.answer {
        Answer::Yes => 0,
        Answer::No => 1,
        Answer::ProbablyNo => 3,
    }))
}

fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let inst = load_instance(&args.instance, args.partition.as_deref())?;
    let h = parse_factor(&read(&args.factor)?, &inst.graph)
        .with_context(|| format!("parsing {}", args.factor.display()))?;
    let report = verify_f_factor(&inst.graph, &inst.demand, &h, inst.partition.as_ref());
    println!("degrees-match={}", report.degrees_match);
    println!("connected={}", report.is_connected);
    if let Some(c) = report.connects_partition {
        println!("connects-partition={c}");
    }
    if !report.mismatched.is_empty() {
        println!("mismatched={:?}", report.mismatched);
    }
    let ok = if inst.partition.is_some() {
        report.is_valid_connector()
    } else {
        report.is_valid_connected()
    };
    println!("valid={ok}");
    Ok(ExitCode::from(if ok { 0 } else { 2 }))
}

fn source_graph(source: &str) -> Result<Graph> {
    let (family, arg) = source.split_once(':').unwrap_or((source, ""));
    let size = || -> Result<usize> {
        arg.parse()
            .with_context(|| format!("`{source}` needs a numeric size"))
    };
    Ok(match family {
        "cycle" => cycle(size()?),
        "complete" => complete(size()?),
        "hypercube" => hypercube(size()? as u32),
        "petersen" => petersen(),
        _ => {
            let path = Path::new(source);
            if !path.is_file() {
                bail!("unknown source `{source}`");
            }
            parse_instance(&read(path)?)?.graph
        }
    })
}

fn generate(cmd: &GenerateCommand) -> Result<ExitCode> {
    let (inst, out) = match cmd {
        GenerateCommand::Planted {
            n,
            rate,
            min_degree,
            clusters,
            bridges,
            seed,
            out,
        } => {
            if *n < 3 {
                bail!("planted instances need n >= 3");
            }
            let p = PlantedParams {
                min_degree: *min_degree,
                clusters: *clusters,
                bridges: *bridges,
                ..PlantedParams::new(*n, *rate, *seed)
            };
            (gen_planted(p), out)
        }
        GenerateCommand::Hamiltonian { source, s, out } => {
            if *s < 2 {
                bail!("clique parameter must be at least 2");
            }
            (gen_hamiltonian_reduction(&source_graph(source)?, *s), out)
        }
        GenerateCommand::Random {
            n,
            p,
            max_demand,
            seed,
            out,
        } => (gen_random(*n, *p, *max_demand, *seed), out),
    };
    let text = emit_instance(&inst);
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(args: &BenchArgs) -> Result<ExitCode> {
    let mut files: Vec<PathBuf> = fs::read_dir(&args.corpus)
        .with_context(|| format!("listing {}", args.corpus.display()))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.is_file());
    files.sort();
    let sink: Box<dyn std::io::Write> = match &args.out {
        Some(path) => Box::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut csv = csv::Writer::from_writer(sink);
    let base = args.solver.options()?;
    for path in &files {
        let inst = load_instance(path, None)?;
        let name = path
            .file_name()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        for k in 0..args.repeat {
            let opts = SolveOptions {
                seed: base.seed.wrapping_add(k),
                ..base.clone()
            };
            csv.serialize(bench_row(&name, &inst, &opts)?)?;
        }
    }
    csv.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Generate(c) => generate(c),
        Command::Bench(a) => bench(a),
    };
    result.unwrap_or_else(|err| {
        eprintln!("error: {err:#}");
        ExitCode::from(2)
    })
}

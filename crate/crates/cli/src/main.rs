use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use discovery_core::reductions::{
    apply_variant, generate, CirculatingOrientationInstance, GeneratedArtifact, OddMode, Reduction, VariantTransform,
};
use discovery_core::solvers::{ColoringMode, DecompositionMode, DEFAULT_SEED};
use discovery_core::{
    shortest_path_subgraph, solve, verify_certificate, Algorithm, Certificate, DiscoveryInstance, Movement, SolveOptions,
    SolveResult, Variant, Violation,
};

mod bench;

#[derive(Parser, Debug)]
#[command(name = "pathdisc", version, about = "Solution discovery for s-t paths")]
struct Cli {
    /// Seed for randomized colorings and random sources.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Machine-readable output on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress diagnostics on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file.
    Solve {
        /// Instance JSON file.
        instance: PathBuf,
        /// auto, oracle, jump, fpt-k, bounded-len, fes or treewidth.
        #[arg(long, default_value = "auto")]
        alg: Algorithm,
        /// Write the certificate (if any) to this file.
        #[arg(long)]
        certificate_out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Generate instances from circulating orientation sources.
    Generate(GenerateArgs),
    /// Check a certificate against an instance.
    Verify {
        instance: PathBuf,
        /// A certificate, or the JSON output of `solve`.
        certificate: PathBuf,
    },
    /// Time solvers over a directory of instance files.
    Bench {
        /// Directory of instance files; `*.meta.json` sidecars are skipped.
        corpus: PathBuf,
        /// Comma-separated algorithm list.
        #[arg(long, value_delimiter = ',', default_value = "auto")]
        algs: Vec<Algorithm>,
        /// Repetitions per instance; the median time is reported.
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// CSV instead of an aligned table (ignored with --json).
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Emit the shortest-path subgraph as a standalone path instance.
    Subgraph {
        instance: PathBuf,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct SolverArgs {
    /// Failure probability bound for randomized colorings.
    #[arg(long, default_value_t = 1e-6)]
    delta: f64,
    /// Stop at the first solution within budget.
    #[arg(long)]
    decision_only: bool,
    /// Use exhaustive coloring families instead of random trials.
    #[arg(long)]
    exhaustive: bool,
    /// Compute an optimal tree decomposition (at most 16 vertices).
    #[arg(long)]
    exact_decomposition: bool,
    /// Oracle: most s-t paths priced before giving up.
    #[arg(long)]
    max_paths: Option<u64>,
    /// Oracle: refuse instances with more vertices.
    #[arg(long)]
    max_oracle_vertices: Option<usize>,
    /// fpt-k: largest token count accepted.
    #[arg(long)]
    fpt_k_limit: Option<usize>,
    /// bounded-len: longest path considered, in vertices.
    #[arg(long)]
    ell_max: Option<usize>,
    /// treewidth: largest decomposition width accepted.
    #[arg(long)]
    width_cap: Option<usize>,
    /// Largest exhaustive coloring family.
    #[arg(long)]
    max_family_size: Option<u64>,
}

impl SolverArgs {
    fn options(&self, seed: u64) -> SolveOptions {
        let mut o = SolveOptions { seed, delta: self.delta, decision_only: self.decision_only, ..Default::default() };
        if self.exhaustive {
            o.coloring = ColoringMode::Exhaustive;
        }
        if self.exact_decomposition {
            o.decomposition = DecompositionMode::ExactSmall;
        }
        let caps = &mut o.caps;
        caps.max_paths = self.max_paths.unwrap_or(caps.max_paths);
        caps.max_oracle_vertices = self.max_oracle_vertices.unwrap_or(caps.max_oracle_vertices);
        caps.fpt_k_limit = self.fpt_k_limit.unwrap_or(caps.fpt_k_limit);
        caps.ell_max = self.ell_max.or(caps.ell_max);
        caps.width_cap = self.width_cap.unwrap_or(caps.width_cap);
        caps.max_family_size = self.max_family_size.unwrap_or(caps.max_family_size);
        o
    }
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    reduction: ReductionArg,
    /// `file:PATH` or `random`.
    #[arg(long)]
    source: String,
    /// Edge count of random sources.
    #[arg(long, default_value_t = 3)]
    edges: usize,
    /// Largest edge weight of random sources.
    #[arg(long, default_value_t = 2)]
    max_weight: i64,
    /// Number of random sources; with more than one, `--out` is a directory.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Accept odd-degree sources as trivially negative instances.
    #[arg(long)]
    permissive: bool,
    /// Instance file; the metadata goes to `<stem>.meta.json` beside it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ReductionArg {
    Chain,
    Caterpillar,
    ZeroBudget,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum VariantArg {
    ZeroWeights,
    DagOrient,
}

/// A failed command and the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    Verification(String),
    Input(String),
    Solver(String),
}

impl Failure {
    fn status(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Input(_) => 2,
            Failure::Solver(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Input(m) | Failure::Solver(m) => m,
        }
    }
}

impl From<discovery_core::Error> for Failure {
    fn from(e: discovery_core::Error) -> Self {
        let text = format!("{}: {e}", e.code());
        if e.is_input_error() {
            Failure::Input(text)
        } else {
            Failure::Solver(text)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, format!("{text}\n")).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

pub fn load_instance(path: &Path) -> Result<DiscoveryInstance, Failure> {
    DiscoveryInstance::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {}: {e}", path.display(), e.code())))
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string(value).expect("output serialises"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !cli.quiet {
                eprintln!("error: {}", failure.message());
            }
            ExitCode::from(failure.status())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Solve { instance, alg, certificate_out, solver } => {
            cmd_solve(cli, instance, *alg, certificate_out.as_deref(), solver)
        }
        Command::Generate(args) => cmd_generate(cli, args),
        Command::Verify { instance, certificate } => cmd_verify(cli, instance, certificate),
        Command::Bench { corpus, algs, reps, csv, solver } => {
            bench::run(corpus, algs, *reps, &solver.options(cli.seed), cli.json, *csv)
        }
        Command::Subgraph { instance, out } => cmd_subgraph(cli, instance, out.as_deref()),
    }
}

fn result_json(algorithm: Algorithm, result: &SolveResult) -> Value {
    let mut value = serde_json::to_value(result).expect("result serialises");
    value["algorithm"] = json!(algorithm.name());
    value
}

fn cmd_solve(
    cli: &Cli,
    path: &Path,
    alg: Algorithm,
    certificate_out: Option<&Path>,
    solver: &SolverArgs,
) -> Result<(), Failure> {
    let instance = load_instance(path)?;
    let result = solve(&instance, alg, &solver.options(cli.seed))?;
    if let (Some(out), Some(cert)) = (certificate_out, &result.certificate) {
        write(out, &serde_json::to_string(cert).expect("certificate serialises"))?;
    }
    if cli.json {
        print_json(&result_json(alg, &result));
        return Ok(());
    }
    let answer = if result.is_yes() { "YES" } else { "NO" };
    println!("answer                 {answer}");
    println!("optimal_cost           {}", result.optimal_cost);
    println!("budget                 {}", instance.budget());
    if let Some(cert) = &result.certificate {
        let path: Vec<String> = cert.path.iter().map(|v| v.to_string()).collect();
        println!("path                   {}", path.join(" -> "));
        for (source, pos) in &cert.assignment {
            println!("  token {source} -> {}", cert.path[*pos]);
        }
    }
    for (key, value) in &result.stats.0 {
        println!("{key:<22} {value}");
    }
    Ok(())
}

fn cmd_generate(cli: &Cli, args: &GenerateArgs) -> Result<(), Failure> {
    use rand_chacha::rand_core::SeedableRng;

    let reduction = match args.reduction {
        ReductionArg::Chain => Reduction::GadgetChain,
        ReductionArg::Caterpillar => Reduction::Caterpillar,
        ReductionArg::ZeroBudget => Reduction::ZeroBudget,
    };
    let odd = if args.permissive { OddMode::Permissive } else { OddMode::Strict };
    let sources: Vec<CirculatingOrientationInstance> = if let Some(file) = args.source.strip_prefix("file:") {
        let text = read(Path::new(file))?;
        vec![CirculatingOrientationInstance::from_json(&text).map_err(|e| Failure::Input(format!("{file}: {e}")))?]
    } else if args.source == "random" {
        if args.edges == 0 || args.max_weight < 1 {
            return Err(Failure::Input("random sources need --edges >= 1 and --max-weight >= 1".into()));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
        (0..args.count).map(|_| CirculatingOrientationInstance::random(args.edges, args.max_weight, &mut rng)).collect()
    } else {
        return Err(Failure::Input(format!("unknown source '{}', expected file:PATH or random", args.source)));
    };

    let targets: Vec<PathBuf> = if sources.len() == 1 {
        vec![args.out.clone()]
    } else {
        fs::create_dir_all(&args.out).map_err(|e| Failure::Input(format!("cannot create {}: {e}", args.out.display())))?;
        (0..sources.len()).map(|i| args.out.join(format!("gen_{i:04}.json"))).collect()
    };
    let mut written = Vec::new();
    for (src, target) in sources.iter().zip(&targets) {
        let mut artifact: GeneratedArtifact = generate(src, reduction, odd)?;
        if let Some(v) = args.variant {
            let transform = match v {
                VariantArg::ZeroWeights => VariantTransform::ZeroProblemWeights,
                VariantArg::DagOrient => VariantTransform::DagOrient,
            };
            artifact = apply_variant(&artifact, transform)?;
        }
        let sidecar = sidecar_path(target);
        write(target, &artifact.instance.to_json())?;
        write(&sidecar, &artifact.metadata_json())?;
        written.push(json!({
            "instance": target.display().to_string(),
            "metadata": sidecar.display().to_string(),
            "n": artifact.instance.vertex_count(),
            "k": artifact.instance.k(),
            "budget": artifact.instance.budget(),
        }));
    }
    if cli.json {
        print_json(&written);
    } else if !cli.quiet {
        for w in &written {
            println!("wrote {} (n={}, k={}, budget={})", w["instance"].as_str().unwrap(), w["n"], w["k"], w["budget"]);
        }
    }
    Ok(())
}

fn sidecar_path(target: &Path) -> PathBuf {
    let stem = target.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    target.with_file_name(format!("{stem}.meta.json"))
}

/// A certificate file holds either a bare certificate or a `solve --json` payload.
fn parse_certificate(text: &str) -> Result<Certificate, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| Failure::Input(format!("certificate: {e}")))?;
    let inner = match value.get("certificate") {
        Some(Value::Null) => return Err(Failure::Input("solve output carries no certificate".into())),
        Some(c) => c.clone(),
        None => value,
    };
    serde_json::from_value(inner).map_err(|e| Failure::Input(format!("certificate: {e}")))
}

fn cmd_verify(cli: &Cli, instance: &Path, certificate: &Path) -> Result<(), Failure> {
    let instance = load_instance(instance)?;
    let cert = parse_certificate(&read(certificate)?)?;
    let verdict = verify_certificate(&instance, &cert);
    if cli.json {
        print_json(&verdict);
    }
    match verdict.violation {
        None => {
            if !cli.json && !cli.quiet {
                println!("valid (cost {})", cert.cost);
            }
            Ok(())
        }
        Some(Violation::VertexOutOfRange) => {
            Err(Failure::Input(format!("{}: {}", Violation::VertexOutOfRange.code(), verdict.detail)))
        }
        Some(v) => Err(Failure::Verification(format!("{}: {}", v.code(), verdict.detail))),
    }
}

fn cmd_subgraph(cli: &Cli, path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let instance = load_instance(path)?;
    let (star, _) = shortest_path_subgraph(instance.problem(), instance.s(), instance.t())?;
    // Sliding moves follow the original graph, so they become explicit here.
    let movement = match instance.movement() {
        Movement::Sliding(m) => Movement::Explicit(m.clone()),
        other => other.clone(),
    };
    let sub = DiscoveryInstance::new(
        star,
        movement,
        instance.s(),
        instance.t(),
        instance.tokens().to_vec(),
        instance.budget(),
        Variant::Path,
    )?;
    match out {
        Some(out) => {
            write(out, &sub.to_json())?;
            if !cli.quiet && !cli.json {
                println!("wrote {} ({} arcs)", out.display(), sub.problem().edge_count());
            }
        }
        None => println!("{}", sub.to_json()),
    }
    Ok(())
}

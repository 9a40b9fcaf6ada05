use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use zb_core::bigraph::{read_graph_set, write_graph_set};
use zb_core::bounds::z_bound_traced;
use zb_core::extend::{resume_step, RunOptions};
use zb_core::fsutil::write_atomic;
use zb_core::groups::parse_set;
use zb_core::{
    canonize, cayley_bigraph, dedup, derive_ramsey_upper, enumerate_class, enumerate_sidon,
    group_order_with_reflection, parse_spec, plan_path, run_path, verify_witness, AvoidanceSpec, BackwardsPath,
    BiGraph, BoundTable, ClassSpec, Coloring, DedupOptions, EnumerateOptions, Group,
};

/// `print!` that exits quietly when standard output is a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = write!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to standard output: {e}");
        }
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        out!($($arg)*);
        out!("\n");
    }};
}

mod inputs;

use inputs::{read_input, Failure};

const GRAPH_FORMAT: &str = "Graph files: a header line \"m n\", then m lines of n characters from {0,1}; \
lines starting with '#' are comments. Graph-set files hold such records separated by one blank line.";

#[derive(Parser)]
#[command(name = "zb", version, about = "Zarankiewicz numbers, bipartite Ramsey bounds and exhaustive graph searches")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Only print warnings and errors on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propagate upper bounds on z(m,n;s) with the star-counting and density lemmas.
    #[command(after_help = "Table files are CSV with header m,n,s,lower,upper,exact[,note]; one row per unordered \
pair (m <= n). Seeds are the exact rows and rows whose note is \"exhaustive\".")]
    Bound(BoundArgs),
    /// Grow a class along a backwards path, one vertex per step.
    #[command(after_help = "Class specs look like (m,n,e+)_{s,t}: parts m and n, at least e edges, no K_{s,s}, \
and no K_{t,t} in the complement. Path files hold one spec per line, seed first, target last; '#' lines are \
comments. Each step's graph set is saved in the checkpoint directory as <m>x<n>_e<e>_<constraints>.gs and a rerun \
resumes from the last complete step.")]
    Extend(ExtendArgs),
    /// Enumerate a class from scratch by orderly generation.
    #[command(after_help = GRAPH_FORMAT)]
    Enumerate(EnumerateArgs),
    /// Print the canonical key and canonical matrix of a graph.
    #[command(after_help = GRAPH_FORMAT)]
    Canon(CanonArgs),
    /// Test a graph for a K_{s,t} subgraph.
    #[command(name = "check-kss", after_help = GRAPH_FORMAT)]
    CheckKss(CheckArgs),
    /// Enumerate Sidon sets of a finite group.
    #[command(after_help = "Groups: cyclic(n) or zN, dihedral(n) or dihN (order 2n), dicyclic(n) or dicN (order \
4n), elem(p,k), products joined by 'x' (e.g. z2xdih3), or a group file: the order k, then k lines of k \
space-separated 1-based element indices; element 1 is the identity.")]
    Sidon(SidonArgs),
    /// Build the bipartite Cayley graph X(G,S).
    Cayley(CayleyArgs),
    /// Check that an edge coloring of K_{n,n} avoids the given monochromatic bicliques.
    #[command(
        name = "verify-witness",
        after_help = "Coloring files: a header \"n k\", then n lines of n digits in \
1..k; lines starting with '#' are comments."
    )]
    VerifyWitness(WitnessArgs),
    /// Derive an upper bound on b(s_1,...,s_k) from Zarankiewicz tables.
    #[command(name = "ramsey-upper")]
    RamseyUpper(RamseyArgs),
    /// Operations on the packaged tables.
    Tables {
        #[command(subcommand)]
        action: TablesCommand,
    },
    /// Choose a backwards path maximising the seed threshold.
    #[command(name = "plan-path")]
    PlanPath(PlanArgs),
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    max_m: usize,
    #[arg(long)]
    max_n: usize,
    /// Seed table (CSV); without it only the definitional base cases are used.
    #[arg(long)]
    seed: Option<PathBuf>,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtendArgs {
    /// Target class; must match the last line of the path.
    #[arg(long)]
    target: Option<String>,
    /// Path file.
    #[arg(long)]
    path: PathBuf,
    /// Seed graph set; enumerated from scratch when absent.
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// Bound table for the order s, used to cap edge counts per step.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Bound table for the complement order t, used to validate the path.
    #[arg(long)]
    t_table: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Abort (resumably) when a step exceeds this many graphs.
    #[arg(long)]
    max_graphs: Option<usize>,
    /// Identify square results with their reflections.
    #[arg(long)]
    with_reflection: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    spec: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run even when m*n exceeds the size guard.
    #[arg(long)]
    allow_large: bool,
    /// Left degrees, as MIN:MAX.
    #[arg(long, value_parser = parse_range)]
    row_degrees: Option<(usize, usize)>,
    /// Right degrees, as MIN:MAX.
    #[arg(long, value_parser = parse_range)]
    col_degrees: Option<(usize, usize)>,
    /// Identify square graphs with their reflections.
    #[arg(long)]
    with_reflection: bool,
}

#[derive(Args)]
struct CanonArgs {
    graph: PathBuf,
    /// Fold the part swap into the class (square graphs only).
    #[arg(long)]
    with_reflection: bool,
}

#[derive(Args)]
struct CheckArgs {
    graph: PathBuf,
    #[arg(long)]
    s: usize,
    /// Right side order (default: s).
    #[arg(long)]
    t: Option<usize>,
    /// Test the bipartite complement instead.
    #[arg(long)]
    complement: bool,
}

#[derive(Args)]
struct SidonArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    size: usize,
    /// Do not force the identity into the set.
    #[arg(long)]
    no_identity: bool,
    /// Keep only sets whose Cayley graph complement has no K_{c,c}.
    #[arg(long)]
    complement_free: Option<usize>,
    /// Report one set per isomorphism class of Cayley graph.
    #[arg(long)]
    up_to_iso: bool,
    /// Write the Cayley graphs of the reported sets as a graph set.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CayleyArgs {
    #[arg(long)]
    group: String,
    /// Comma-separated 0-based element indices.
    #[arg(long)]
    set: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    coloring: PathBuf,
    /// Forbidden biclique order per color, e.g. 2,5.
    #[arg(long)]
    avoid: String,
}

#[derive(Args)]
struct RamseyArgs {
    #[arg(long)]
    avoid: String,
    /// One CSV per color; the packaged z<s>.csv tables are used when absent.
    #[arg(long, value_delimiter = ',')]
    tables: Vec<PathBuf>,
    #[arg(long, default_value_t = 32)]
    n_max: usize,
}

#[derive(Subcommand)]
enum TablesCommand {
    /// Check the packaged tables: lower <= upper, exact flags, monotonicity, and
    /// that propagation from the seeds stays within every published bound.
    Verify,
}

#[derive(Args)]
struct PlanArgs {
    /// Seed part sizes, as a,b.
    #[arg(long, value_parser = parse_pair)]
    from: (usize, usize),
    #[arg(long)]
    target: String,
    /// Bound table for the complement order t.
    #[arg(long)]
    t_table: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected MIN:MAX")?;
    let lo = a.trim().parse().map_err(|_| format!("bad number {a:?}"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad number {b:?}"))?;
    if lo > hi {
        return Err("MIN exceeds MAX".into());
    }
    Ok((lo, hi))
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    Ok((
        a.trim().parse().map_err(|_| format!("bad number {a:?}"))?,
        b.trim().parse().map_err(|_| format!("bad number {b:?}"))?,
    ))
}

/// Writes to `out` atomically, or to standard output.
fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()).with_context(|| format!("writing {}", p.display())),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn check_writable(out: Option<&Path>) -> Result<(), Failure> {
    if let Some(p) = out {
        let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !dir.is_dir() {
            return Err(Failure::usage(anyhow!("output directory {} does not exist", dir.display())));
        }
    }
    Ok(())
}

fn load_graph(path: &Path) -> Result<BiGraph, Failure> {
    let text = read_input(path)?;
    BiGraph::from_text(&text).map_err(|e| Failure::usage(anyhow!("{}: {e}", path.display())))
}

fn load_table(path: &Path) -> Result<BoundTable, Failure> {
    let text = read_input(path)?;
    BoundTable::from_csv_str(&text).map_err(|e| Failure::usage(anyhow!("{}: {e}", path.display())))
}

fn load_group(name: &str) -> Result<Group, Failure> {
    let path = Path::new(name);
    if path.is_file() {
        return Group::load(path).map_err(|e| Failure::usage(anyhow!("{name}: {e}")));
    }
    Group::builtin(name).map_err(|e| Failure::usage(e.into()))
}

fn spec_arg(text: &str) -> Result<ClassSpec, Failure> {
    let spec = parse_spec(text).map_err(|e| Failure::usage(anyhow!("{text:?}: {e}")))?;
    spec.validate().map_err(|e| Failure::usage(anyhow!("{text:?}: {e}")))?;
    Ok(spec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "warn" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).format_timestamp(None).init();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Bound(a) => bound(a),
        Command::Extend(a) => extend(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Canon(a) => canon(a),
        Command::CheckKss(a) => check_kss(a),
        Command::Sidon(a) => sidon(a),
        Command::Cayley(a) => cayley(a),
        Command::VerifyWitness(a) => verify(a),
        Command::RamseyUpper(a) => ramsey(a),
        Command::Tables { action: TablesCommand::Verify } => tables_verify(),
        Command::PlanPath(a) => plan(a),
    }
}

fn bound(a: BoundArgs) -> Result<ExitCode, Failure> {
    check_writable(a.out.as_deref())?;
    let seeds = match &a.seed {
        Some(p) => {
            let t = load_table(p)?;
            if t.s() != a.s {
                return Err(Failure::usage(anyhow!("seed table has s = {}, expected {}", t.s(), a.s)));
            }
            t.seeds()
        }
        None => BoundTable::new(a.s),
    };
    let prop = z_bound_traced(&seeds, a.max_m, a.max_n).map_err(|e| Failure::domain(e.into()))?;
    log::info!("bound: {} cells after {} sweeps", prop.table.len(), prop.sweeps);
    emit(a.out.as_deref(), &prop.table.to_csv_string()).map_err(Failure::domain)?;
    Ok(ExitCode::SUCCESS)
}

fn extend(a: ExtendArgs) -> Result<ExitCode, Failure> {
    check_writable(a.out.as_deref())?;
    let path = BackwardsPath::parse(&read_input(&a.path)?)
        .map_err(|e| Failure::usage(anyhow!("{}: {e}", a.path.display())))?;
    if let Some(t) = &a.target {
        let target = spec_arg(t)?;
        if &target != path.target() {
            return Err(Failure::usage(anyhow!("target {target} differs from the path's last spec {}", path.target())));
        }
    }
    let t_table = a.t_table.as_deref().map(load_table).transpose()?;
    path.check_thresholds(t_table.as_ref()).map_err(|e| Failure::domain(e.into()))?;
    let s_table = a.table.as_deref().map(load_table).transpose()?;
    let resuming = a.checkpoint.as_deref().and_then(|d| resume_step(&path, d)).is_some();
    let seeds = match &a.seeds {
        _ if resuming => Vec::new(),
        Some(p) => read_graph_set(&read_input(p)?).map_err(|e| Failure::usage(anyhow!("{}: {e}", p.display())))?,
        None => {
            log::info!("enumerating seed class {}", path.seed());
            enumerate_class(path.seed(), &EnumerateOptions::default()).map_err(|e| Failure::domain(e.into()))?
        }
    };
    let opts = RunOptions {
        s_table: s_table.as_ref(),
        checkpoint_dir: a.checkpoint.clone(),
        max_graphs: a.max_graphs,
        with_reflection: a.with_reflection,
    };
    let report = run_path(&path, &seeds, &opts).map_err(|e| Failure::domain(e.into()))?;
    for s in &report.steps {
        let how = if s.resumed { " (checkpoint)" } else { "" };
        eprintln!("{}: {}{how}", s.spec, s.count);
    }
    if let Some(out) = &a.out {
        emit(Some(out), &write_graph_set(&report.graphs)).map_err(Failure::domain)?;
    }
    outln!("{}: {} graphs", path.target(), report.graphs.len());
    Ok(ExitCode::SUCCESS)
}

fn enumerate(a: EnumerateArgs) -> Result<ExitCode, Failure> {
    check_writable(a.out.as_deref())?;
    let spec = spec_arg(&a.spec)?;
    let opts = EnumerateOptions { allow_large: a.allow_large, row_degrees: a.row_degrees, col_degrees: a.col_degrees };
    let mut graphs = enumerate_class(&spec, &opts).map_err(|e| Failure::domain(e.into()))?;
    if a.with_reflection && spec.m == spec.n {
        graphs = dedup(graphs, DedupOptions { with_reflection: true }).map_err(|e| Failure::domain(e.into()))?;
    }
    if let Some(out) = &a.out {
        emit(Some(out), &write_graph_set(&graphs)).map_err(Failure::domain)?;
    }
    let max = graphs.iter().map(BiGraph::edge_count).max();
    outln!("{spec}: {} graphs", graphs.len());
    match max {
        Some(e) => outln!("max edges: {e}"),
        None => outln!("max edges: none"),
    }
    Ok(ExitCode::SUCCESS)
}

fn canon(a: CanonArgs) -> Result<ExitCode, Failure> {
    let g = load_graph(&a.graph)?;
    let (key, graph) = if a.with_reflection && g.m() == g.n() {
        let (c, r) = (canonize(&g), canonize(&g.reflect()));
        if r.key < c.key {
            (r.key, r.graph)
        } else {
            (c.key, c.graph)
        }
    } else {
        let c = canonize(&g);
        (c.key, c.graph)
    };
    outln!("key: {}", key.to_hex());
    outln!("automorphisms: {}", canonize(&g).group_order());
    if g.m() == g.n() {
        outln!("automorphisms with part swaps: {}", group_order_with_reflection(&g));
    }
    out!("{}", graph.to_text());
    Ok(ExitCode::SUCCESS)
}

fn check_kss(a: CheckArgs) -> Result<ExitCode, Failure> {
    let mut g = load_graph(&a.graph)?;
    if a.complement {
        g = g.complement();
    }
    let t = a.t.unwrap_or(a.s);
    let found = g.find_biclique(a.s, t);
    outln!("K_{{{},{}}}-free: {}", a.s, t, found.is_none());
    match found {
        None => Ok(ExitCode::SUCCESS),
        Some(b) => {
            outln!("rows: {:?}", b.rows);
            outln!("cols: {:?}", b.cols);
            Ok(ExitCode::from(1))
        }
    }
}

fn sidon(a: SidonArgs) -> Result<ExitCode, Failure> {
    check_writable(a.out.as_deref())?;
    let g = load_group(&a.group)?;
    let sets = enumerate_sidon(&g, a.size, !a.no_identity);
    log::info!("{}: {} Sidon sets of size {}", g.name(), sets.len(), a.size);
    let mut kept: Vec<(Vec<usize>, BiGraph)> = sets
        .into_iter()
        .map(|s| {
            let x = cayley_bigraph(&g, &s);
            (s, x)
        })
        .filter(|(_, x)| a.complement_free.is_none_or(|c| !x.complement().contains_biclique(c, c)))
        .collect();
    if a.up_to_iso {
        let mut seen = std::collections::BTreeSet::new();
        kept.retain(|(_, x)| seen.insert(canonize(x).key));
    }
    for (s, _) in &kept {
        outln!("{}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    }
    eprintln!("{} sets", kept.len());
    if let Some(out) = &a.out {
        emit(Some(out), &write_graph_set(kept.iter().map(|(_, x)| x))).map_err(Failure::domain)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cayley(a: CayleyArgs) -> Result<ExitCode, Failure> {
    check_writable(a.out.as_deref())?;
    let g = load_group(&a.group)?;
    let set = parse_set(&a.set, &g).map_err(|e| Failure::usage(e.into()))?;
    let x = cayley_bigraph(&g, &set);
    emit(a.out.as_deref(), &x.to_text()).map_err(Failure::domain)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(a: WitnessArgs) -> Result<ExitCode, Failure> {
    let text = read_input(&a.coloring)?;
    let c = Coloring::from_text(&text).map_err(|e| Failure::usage(anyhow!("{}: {e}", a.coloring.display())))?;
    let spec = AvoidanceSpec::parse(&a.avoid).map_err(|e| Failure::usage(e.into()))?;
    let report = verify_witness(&c, &spec).map_err(|e| Failure::usage(e.into()))?;
    outln!("{report}");
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn ramsey(a: RamseyArgs) -> Result<ExitCode, Failure> {
    let spec = AvoidanceSpec::parse(&a.avoid).map_err(|e| Failure::usage(e.into()))?;
    let tables: Vec<BoundTable> = if a.tables.is_empty() {
        spec.sizes
            .iter()
            .map(|&s| {
                let name = format!("z{s}.csv");
                let text = inputs::packaged(&name)
                    .map_err(Failure::usage)?
                    .ok_or_else(|| Failure::usage(anyhow!("no packaged table for s = {s}; pass --tables")))?;
                BoundTable::from_csv_str(&text).map_err(|e| Failure::usage(anyhow!("{name}: {e}")))
            })
            .collect::<Result<_, _>>()?
    } else {
        a.tables.iter().map(|p| load_table(p)).collect::<Result<_, _>>()?
    };
    let found = derive_ramsey_upper(&tables, &spec, a.n_max).map_err(|e| Failure::usage(e.into()))?;
    let Some(d) = found else {
        outln!("{spec}: no upper bound up to n = {}", a.n_max);
        return Ok(ExitCode::from(1));
    };
    for (n, total) in &d.inconclusive {
        if *n + 2 >= d.n {
            outln!("n = {n}: sum {total} >= {} (inconclusive)", n * n);
        }
    }
    let terms: Vec<String> = d.uppers.iter().map(|u| u.to_string()).collect();
    outln!("n = {}: {} = {} < {}", d.n, terms.join(" + "), d.total(), d.n * d.n);
    outln!("{spec} <= {}", d.n);
    Ok(ExitCode::SUCCESS)
}

fn tables_verify() -> Result<ExitCode, Failure> {
    let mut ok = true;
    for s in 2..=6 {
        let name = format!("z{s}.csv");
        let text = inputs::packaged(&name)
            .map_err(Failure::usage)?
            .ok_or_else(|| Failure::usage(anyhow!("missing {name}")))?;
        let table = match BoundTable::from_csv_str(&text) {
            Ok(t) => t,
            Err(e) => {
                outln!("{name}: FAIL ({e})");
                ok = false;
                continue;
            }
        };
        let mut problems = table.verify();
        if table.s() != s {
            problems.push(format!("s column is {}, expected {s}", table.s()));
        }
        let max = table.iter().map(|((_, n), _)| n).max().unwrap_or(0);
        match z_bound_traced(&table.seeds(), max, max) {
            Ok(p) => {
                for ((m, n), e) in table.iter() {
                    let ours = p.table.upper(m, n).unwrap_or(u64::MAX);
                    if ours < e.lower {
                        problems.push(format!("propagated upper {ours} at ({m},{n}) is below lower {}", e.lower));
                    }
                    if !e.exact && ours > e.upper {
                        log::debug!("({m},{n}): propagation gives {ours}, table has {}", e.upper);
                    }
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
        if problems.is_empty() {
            outln!("{name}: ok ({} entries)", table.len());
        } else {
            ok = false;
            outln!("{name}: FAIL");
            for p in problems {
                outln!("  {p}");
            }
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn plan(a: PlanArgs) -> Result<ExitCode, Failure> {
    check_writable(a.out.as_deref())?;
    let target = spec_arg(&a.target)?;
    let t_table = a.t_table.as_deref().map(load_table).transpose()?;
    let path = plan_path(a.from, &target, t_table.as_ref()).map_err(|e| Failure::usage(e.into()))?;
    eprintln!("seed threshold: {}", path.seed().e_min);
    emit(a.out.as_deref(), &path.to_text()).map_err(Failure::domain)?;
    Ok(ExitCode::SUCCESS)
}

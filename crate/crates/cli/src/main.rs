use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graft_core::eval::{
    generate_synthetic_genealogy, run_experiment_grid, write_grid_tsv, write_report_tsv, EvalOptions, GridSpec,
    Method, MethodContext,
};
use graft_core::ingest::{load_ground_truth_with, load_profiles, write_ground_truth, write_profiles, RawProfile};
use graft_core::normalize::normalize_profiles;
use graft_core::phonetic::{build_code_index, encode};
use graft_core::pipeline::{build_graph, default_fallback, parse_config_entries, PipelineConfig};
use graft_core::suggest::{graft_suggest, hgraft_suggest};
use graft_core::{
    damerau_levenshtein, edit_distance, jaro_winkler, normalize_name, EditDistanceRange, NameGraph, NameView,
    OrderingFunction, PhoneticAlgorithm, RelationKind, StringMetric, TableFormat,
};

#[derive(Parser)]
#[command(name = "graft", version, about = "Suggest name synonyms from family-tree name graphs")]
struct Cli {
    /// `key = value` settings file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build artifacts from a profile dump.
    Build {
        #[command(subcommand)]
        target: BuildTarget,
    },
    /// Rank synonym candidates for each name.
    Suggest(SuggestArgs),
    /// Score methods against a ground-truth synonym list.
    Evaluate(EvaluateArgs),
    /// GRAFT over every relation, range [1, 2..5] and ordering function.
    #[command(alias = "experiment-grid")]
    Grid(GridArgs),
    /// Summary counts for a tree or a graph.
    Stats {
        #[command(subcommand)]
        target: StatsTarget,
    },
    /// Encode names with a phonetic algorithm.
    Phonetic {
        algorithm: PhoneticAlgorithm,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// String distance or similarity between two names.
    Distance { metric: StringMetric, a: String, b: String },
    /// Write a synthetic genealogy with known name variants.
    Synth(SynthArgs),
}

#[derive(Subcommand)]
enum BuildTarget {
    Graph(BuildGraphArgs),
}

#[derive(Subcommand)]
enum StatsTarget {
    Tree(StatsTreeArgs),
    Graph {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    profiles: PathBuf,
    /// tsv or csv; guessed from the extension when omitted.
    #[arg(long)]
    format: Option<TableFormat>,
    #[arg(long)]
    view: Option<NameView>,
}

#[derive(Args)]
struct BuildGraphArgs {
    #[command(flatten)]
    input: ProfileArgs,
    #[arg(long)]
    relation: Option<RelationKind>,
    #[arg(long)]
    ed_lo: Option<u32>,
    #[arg(long)]
    ed_hi: Option<u32>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct RankArgs {
    #[arg(long)]
    function: Option<OrderingFunction>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    depth: Option<u32>,
    /// Phonetic algorithm for the hybrid fallback.
    #[arg(long)]
    fallback: Option<PhoneticAlgorithm>,
}

#[derive(Args)]
struct SuggestArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    rank: RankArgs,
    /// Fall back to phonetic retrieval for names outside the graph.
    #[arg(long)]
    hybrid: bool,
    #[arg(required = true)]
    names: Vec<String>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    ground_truth: PathBuf,
    /// Repeatable; all methods when omitted.
    #[arg(long = "method")]
    methods: Vec<Method>,
    #[command(flatten)]
    rank: RankArgs,
    #[arg(long)]
    exclude_uncovered: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    input: ProfileArgs,
    #[arg(long)]
    ground_truth: PathBuf,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long)]
    exclude_uncovered: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StatsTreeArgs {
    #[command(flatten)]
    input: ProfileArgs,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    families: usize,
    #[arg(long, default_value_t = 4)]
    generations: usize,
    #[arg(long, default_value_t = 0.2)]
    variant_rate: f64,
    /// Directory for profiles.tsv, forenames_truth.tsv and surnames_truth.tsv.
    #[arg(short, long)]
    output: PathBuf,
}

type CliResult = Result<(), String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let config = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Build { target: BuildTarget::Graph(args) } => cmd_build_graph(config, args),
        Command::Suggest(args) => cmd_suggest(config, args),
        Command::Evaluate(args) => cmd_evaluate(config, args),
        Command::Grid(args) => cmd_grid(config, args),
        Command::Stats { target: StatsTarget::Tree(args) } => cmd_stats_tree(config, args),
        Command::Stats { target: StatsTarget::Graph { graph } } => cmd_stats_graph(&graph),
        Command::Phonetic { algorithm, names } => cmd_phonetic(algorithm, &names),
        Command::Distance { metric, a, b } => {
            match metric {
                StringMetric::EditDistance => println!("{}", edit_distance(&a, &b)),
                StringMetric::DamerauLevenshtein => println!("{}", damerau_levenshtein(&a, &b)),
                StringMetric::JaroWinkler => println!("{:.6}", jaro_winkler(&a, &b)),
            }
            Ok(())
        }
        Command::Synth(args) => cmd_synth(args),
    }
}

fn load_config(path: Option<&Path>) -> Result<PipelineConfig, String> {
    let Some(path) = path else { return Ok(PipelineConfig::default()) };
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let entries = parse_config_entries(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    PipelineConfig::default().apply(&entries).map_err(|e| format!("{}: {e}", path.display()))
}

fn finish(mut config: PipelineConfig) -> Result<PipelineConfig, String> {
    config.validate().map_err(|e| e.to_string())?;
    config.ed_range = EditDistanceRange::new(config.ed_range.lo(), config.ed_range.hi()).map_err(|e| e.to_string())?;
    Ok(config)
}

fn apply_rank(config: &mut PipelineConfig, rank: &RankArgs) {
    if let Some(f) = rank.function {
        config.function = f;
    }
    if let Some(k) = rank.k {
        config.k = k;
    }
    if let Some(d) = rank.depth {
        config.depth = d;
    }
    if rank.fallback.is_some() {
        config.fallback = rank.fallback;
    }
}

fn read_profiles_arg(config: &mut PipelineConfig, input: &ProfileArgs) -> Result<Vec<RawProfile>, String> {
    if let Some(v) = input.view {
        config.name_view = v;
    }
    let format = input.format.unwrap_or_else(|| TableFormat::from_path(&input.profiles));
    load_profiles(&input.profiles, format).map_err(|e| with_path(&input.profiles, e))
}

fn with_path(path: &Path, e: impl std::fmt::Display) -> String {
    let msg = e.to_string();
    if msg.contains(&path.display().to_string()) {
        msg
    } else {
        format!("{}: {msg}", path.display())
    }
}

fn load_graph(path: &Path) -> Result<NameGraph, String> {
    let file = File::open(path).map_err(|e| with_path(path, e))?;
    NameGraph::read_from(BufReader::new(file)).map_err(|e| with_path(path, e))
}

fn create(path: &Path) -> Result<BufWriter<File>, String> {
    File::create(path).map(BufWriter::new).map_err(|e| with_path(path, e))
}

/// Runs `write` against `path`, or stdout when `path` is `None`.
fn write_out<F>(path: Option<&Path>, write: F) -> CliResult
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let mut w = create(p)?;
            write(&mut w).and_then(|_| w.flush()).map_err(|e| with_path(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).or_else(ignore_broken_pipe)
        }
    }
}

fn cmd_build_graph(mut config: PipelineConfig, args: BuildGraphArgs) -> CliResult {
    let profiles = read_profiles_arg(&mut config, &args.input)?;
    if let Some(r) = args.relation {
        config.relation = r;
    }
    let lo = args.ed_lo.unwrap_or(config.ed_range.lo());
    let hi = args.ed_hi.unwrap_or(config.ed_range.hi());
    config.ed_range = EditDistanceRange::new(lo, hi).map_err(|e| e.to_string())?;
    let config = finish(config)?;
    let out = build_graph(&profiles, &config);
    let mut w = create(&args.output)?;
    out.graph.write_to(&mut w).and_then(|_| w.flush()).map_err(|e| with_path(&args.output, e))?;

    let t = &out.tree;
    println!("profiles\t{}", profiles.len());
    println!("names_dropped\t{}", out.normalization.names_dropped);
    println!("tree_vertices\t{}", t.vertices);
    println!("tree_named_vertices\t{}", t.named_vertices);
    println!("tree_edges\t{}", t.edges);
    println!("tree_components\t{}", t.components);
    println!("dangling_parents\t{}", t.dangling_parents);
    println!("cycles\t{}", out.cycles.len());
    println!("ancestor_pairs\t{}", out.pairs);
    print_graph_counts(&out.graph);
    Ok(())
}

fn print_graph_counts(g: &NameGraph) {
    println!("graph_vertices\t{}", g.vertex_count());
    println!("graph_non_isolated\t{}", g.non_isolated_count());
    println!("graph_edges\t{}", g.edge_count());
    println!("graph_total_weight\t{}", g.total_weight());
    println!("graph_components\t{}", g.component_count());
}

fn fallback_for(config: &PipelineConfig, graph: &NameGraph) -> PhoneticAlgorithm {
    config.fallback.unwrap_or_else(|| default_fallback(graph.view().unwrap_or(config.name_view)))
}

fn cmd_suggest(mut config: PipelineConfig, args: SuggestArgs) -> CliResult {
    apply_rank(&mut config, &args.rank);
    config.hybrid |= args.hybrid;
    let config = finish(config)?;
    let graph = load_graph(&args.graph)?;
    let index = config
        .hybrid
        .then(|| build_code_index(graph.vocabulary().iter().map(String::as_str), fallback_for(&config, &graph)));

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut emit = || -> io::Result<()> {
        for raw in &args.names {
            let query = normalize_name(raw, &config.normalization).unwrap_or_default();
            writeln!(out, "# {raw}\t{query}")?;
            writeln!(out, "rank\tname\tscore\thops\ted\tsource")?;
            let ranked = match &index {
                Some(idx) => hgraft_suggest(&graph, idx, &query, config.k, config.depth, config.function),
                None => graft_suggest(&graph, &query, config.k, config.depth, config.function),
            };
            for (i, s) in ranked.iter().enumerate() {
                let hops = s.hop_distance.map_or_else(|| "-".to_string(), |h| h.to_string());
                writeln!(
                    out,
                    "{}\t{}\t{:.6}\t{}\t{}\t{}",
                    i + 1,
                    s.name,
                    s.score_as::<f64>(),
                    hops,
                    s.edit_distance,
                    s.source
                )?;
            }
        }
        out.flush()
    };
    emit().or_else(ignore_broken_pipe)
}

/// A closed stdout (`graft ... | head`) ends output quietly.
fn ignore_broken_pipe(e: io::Error) -> CliResult {
    if e.kind() == io::ErrorKind::BrokenPipe {
        Ok(())
    } else {
        Err(e.to_string())
    }
}

fn cmd_evaluate(mut config: PipelineConfig, args: EvaluateArgs) -> CliResult {
    apply_rank(&mut config, &args.rank);
    let config = finish(config)?;
    let graph = load_graph(&args.graph)?;
    let gt = load_ground_truth_with(&args.ground_truth, &config.normalization)
        .map_err(|e| with_path(&args.ground_truth, e))?;
    let methods = if args.methods.is_empty() { Method::all() } else { args.methods };
    let ctx = MethodContext {
        graph: &graph,
        depth: config.depth,
        function: config.function,
        fallback: fallback_for(&config, &graph),
    };
    let options = EvalOptions { k: config.k, exclude_uncovered: args.exclude_uncovered };
    let reports: Vec<_> = methods.iter().map(|m| m.evaluate(&ctx, &gt, options)).collect();
    write_out(args.output.as_deref(), |w| write_report_tsv(w, &reports))
}

fn cmd_grid(mut config: PipelineConfig, args: GridArgs) -> CliResult {
    let profiles = read_profiles_arg(&mut config, &args.input)?;
    if let Some(k) = args.k {
        config.k = k;
    }
    if let Some(d) = args.depth {
        config.depth = d;
    }
    let config = finish(config)?;
    let gt = load_ground_truth_with(&args.ground_truth, &config.normalization)
        .map_err(|e| with_path(&args.ground_truth, e))?;
    let (records, _) = normalize_profiles(&profiles, &config.normalization);
    let spec = GridSpec {
        depth: config.depth,
        options: EvalOptions { k: config.k, exclude_uncovered: args.exclude_uncovered },
        ..GridSpec::default()
    };
    let rows = run_experiment_grid(&records, config.name_view, &gt, &spec);
    write_out(args.output.as_deref(), |w| write_grid_tsv(w, &rows))
}

fn cmd_stats_tree(mut config: PipelineConfig, args: StatsTreeArgs) -> CliResult {
    let profiles = read_profiles_arg(&mut config, &args.input)?;
    let (records, norm) = normalize_profiles(&profiles, &config.normalization);
    let tree = graft_core::build_tree(&records, config.name_view);
    let t = tree.stats();
    println!("profiles\t{}", profiles.len());
    println!("names_dropped\t{}", norm.names_dropped);
    println!("vertices\t{}", t.vertices);
    println!("named_vertices\t{}", t.named_vertices);
    println!("edges\t{}", t.edges);
    println!("components\t{}", t.components);
    println!("dangling_parents\t{}", t.dangling_parents);
    println!("self_parents\t{}", t.self_parents);
    println!("duplicate_parents\t{}", t.duplicate_parents);
    println!("cycles\t{}", tree.cycles().len());
    Ok(())
}

fn cmd_stats_graph(path: &Path) -> CliResult {
    let g = load_graph(path)?;
    println!("range\t{}", g.range());
    if let Some(v) = g.view() {
        println!("view\t{v}");
    }
    if let Some(r) = g.relation() {
        println!("relation\t{r}");
    }
    print_graph_counts(&g);
    Ok(())
}

fn cmd_phonetic(algorithm: PhoneticAlgorithm, names: &[String]) -> CliResult {
    for name in names {
        match encode(name, algorithm) {
            Ok(code) => println!("{name}\t{code}"),
            Err(_) => println!("{name}\t"),
        }
    }
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> CliResult {
    let data = generate_synthetic_genealogy(args.seed, args.families, args.generations, args.variant_rate)
        .map_err(|e| e.to_string())?;
    fs::create_dir_all(&args.output).map_err(|e| with_path(&args.output, e))?;
    let profiles = args.output.join("profiles.tsv");
    let mut w = create(&profiles)?;
    write_profiles(&mut w, &data.profiles, TableFormat::Tsv).map_err(|e| with_path(&profiles, e))?;
    for (file, gt) in [("forenames_truth.tsv", &data.forename_truth), ("surnames_truth.tsv", &data.surname_truth)] {
        let path = args.output.join(file);
        let mut w = create(&path)?;
        write_ground_truth(&mut w, gt).map_err(|e| with_path(&path, e))?;
    }
    println!("profiles\t{}", data.profiles.len());
    println!("forename_queries\t{}", data.forename_truth.len());
    println!("surname_queries\t{}", data.surname_truth.len());
    Ok(())
}

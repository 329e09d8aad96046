use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use manner_forge::dsl::{builtin_by_name, ground, parse_program, AdverbProgram, Mode};
use manner_forge::forge::{self, preset, read_dataset, write_dataset, ForgeConfig};
use manner_forge::gridworld::{parse_symbols, symbols_to_string, Command, Heading, WorldState};
use manner_forge::harness::{aggregate, dataset_stats, evaluate, inspect, parse_predictions, EvalReport};
use manner_forge::meta::{sample_registry, Lexicon, MetaGrammarConfig, Registry, RegistrySummary, TypeWeights};
use manner_forge::oracle::{solve, transform, OracleConfig, Plan, DEFAULT_MAX_DEPTH};

#[derive(Parser)]
#[command(name = "manner-forge", version, about = "Adverb-manner gridworld oracle and dataset forge")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a dataset directory from a config file or `preset:<name>`.
    Generate {
        #[arg(long)]
        config: String,
        #[arg(long, env = "FORGE_SEED")]
        seed: Option<u64>,
        #[arg(long)]
        extra_adverbs: Option<usize>,
        #[arg(long)]
        num_examples: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample a registry of novel adverb programs.
    SampleAdverbs {
        #[arg(long)]
        n: usize,
        /// e.g. `spinning=0.4,cautiously=0.3,detour=0.3`
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, env = "FORGE_SEED")]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rewrite a symbol sequence with a program, then ground it.
    Transform {
        /// Program file or builtin adverb name (`_` for spaces).
        #[arg(long)]
        program: String,
        #[arg(long)]
        input: String,
        #[arg(long)]
        heading: Heading,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: u32,
    },
    /// Ground allocentric symbols to egocentric primitives.
    Ground {
        #[arg(long)]
        input: String,
        #[arg(long)]
        heading: Heading,
    },
    /// Solve a command in a situation file.
    Solve {
        #[arg(long)]
        world: PathBuf,
        #[arg(long)]
        command: String,
        /// Registry file with extra adverbs.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Score a predictions file on split test sets.
    Evaluate {
        #[arg(long)]
        dataset: PathBuf,
        /// Split name; repeat or separate with commas.
        #[arg(long, required = true, value_delimiter = ',')]
        split: Vec<String>,
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Mean and spread over several evaluation reports.
    Aggregate {
        #[arg(long = "report", required = true)]
        reports: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize a dataset directory.
    Stats {
        #[arg(long)]
        dataset: PathBuf,
    },
    /// Show one example as an ASCII grid with its command and target.
    Inspect {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        index: usize,
    },
}

/// A domain failure with a short category for the message prefix.
struct Failure {
    category: &'static str,
    message: String,
}

fn fail<E: Display>(category: &'static str) -> impl FnOnce(E) -> Failure {
    move |e| Failure { category, message: e.to_string() }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { category: "io", message: format!("{}: {e}", path.display()) })
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure { category: "io", message: format!("{}: {e}", path.display()) })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn load_config(spec: &str) -> Result<ForgeConfig, Failure> {
    match spec.strip_prefix("preset:") {
        Some(name) => preset(name).map_err(fail("config")),
        None => ForgeConfig::from_toml(&read_text(Path::new(spec))?).map_err(fail("config")),
    }
}

fn load_program(spec: &str) -> Result<AdverbProgram, Failure> {
    if let Some(p) = builtin_by_name(spec) {
        return Ok(p);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Failure { category: "dsl", message: format!("`{spec}` is neither a builtin adverb nor a file") });
    }
    parse_program(&read_text(path)?).map_err(fail("dsl"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Generate { config, seed, extra_adverbs, num_examples, out } => {
            let mut cfg = load_config(&config)?;
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.extra_adverbs = extra_adverbs.unwrap_or(cfg.extra_adverbs);
            cfg.num_examples = num_examples.unwrap_or(cfg.num_examples);
            let ds = forge::forge(&cfg, cli.jobs).map_err(fail("generate"))?;
            let manifest = write_dataset(&ds, &out).map_err(fail("io"))?;
            println!(
                "wrote {} examples ({} adverbs) to {}; manifest {}",
                manifest.num_examples,
                manifest.adverbs.len(),
                out.display(),
                manifest.digest()
            );
        }
        Cmd::SampleAdverbs { n, weights, seed, out } => {
            let mut meta = MetaGrammarConfig::default();
            if let Some(w) = weights {
                meta.type_weights = TypeWeights::parse(&w).map_err(fail("config"))?;
            }
            let registry = sample_registry(seed, n, &meta).map_err(fail("meta"))?;
            write_text(&out, &registry.to_text())?;
            print!("{}", to_json(&RegistrySummary::from(&registry)));
        }
        Cmd::Transform { program, input, heading, max_depth } => {
            let program = load_program(&program)?;
            let symbols = parse_symbols(&input).map_err(fail("dsl"))?;
            let mode = if symbols.iter().any(|s| s.is_allo()) { Mode::Allocentric } else { Mode::Egocentric };
            let plan = Plan { mode, symbols };
            let out = transform(&plan, &[], Some(&program), heading, max_depth).map_err(fail("dsl"))?;
            println!("{}", symbols_to_string(&out));
        }
        Cmd::Ground { input, heading } => {
            let symbols = parse_symbols(&input).map_err(fail("dsl"))?;
            println!("{}", symbols_to_string(&ground(&symbols, heading)));
        }
        Cmd::Solve { world, command, registry } => {
            let world: WorldState = serde_json::from_str(&read_text(&world)?).map_err(fail("world"))?;
            let command = Command::parse(&command).map_err(fail("command"))?;
            let registry = match registry {
                Some(p) => Registry::from_text(&read_text(&p)?).map_err(fail("meta"))?,
                None => Registry::default(),
            };
            let lexicon = Lexicon::new(&registry).map_err(fail("meta"))?;
            let target = solve(&command, &world, &lexicon, &OracleConfig::default()).map_err(fail("oracle"))?;
            println!("{}", symbols_to_string(&target));
        }
        Cmd::Evaluate { dataset, split, predictions, report } => {
            let (ds, manifest) = read_dataset(&dataset).map_err(fail("dataset"))?;
            let preds = parse_predictions(&read_text(&predictions)?).map_err(fail("evaluate"))?;
            let names: Vec<&str> = split.iter().map(String::as_str).collect();
            let rep = evaluate(&ds, &manifest.digest(), &names, &preds).map_err(fail("evaluate"))?;
            write_text(&report, &to_json(&rep))?;
            for (name, m) in &rep.splits {
                println!(
                    "{name}: exact match {} % (n = {}), semantic validity {} %",
                    m.exact_match_percent.as_deref().unwrap_or("n/a"),
                    m.n,
                    m.semantic_valid_percent.as_deref().unwrap_or("n/a")
                );
            }
        }
        Cmd::Aggregate { reports, out } => {
            let parsed = reports
                .iter()
                .map(|p| serde_json::from_str::<EvalReport>(&read_text(p)?).map_err(fail("evaluate")))
                .collect::<Result<Vec<_>, _>>()?;
            let agg = aggregate(&parsed).map_err(fail("evaluate"))?;
            write_text(&out, &to_json(&agg))?;
            for (name, s) in &agg.splits {
                println!("{name}: {} ± {} % over {} runs", s.exact_match_mean, s.exact_match_std, s.runs);
            }
        }
        Cmd::Stats { dataset } => {
            let (ds, manifest) = read_dataset(&dataset).map_err(fail("dataset"))?;
            print!("{}", dataset_stats(&ds, &manifest));
        }
        Cmd::Inspect { dataset, index } => {
            let (ds, _) = read_dataset(&dataset).map_err(fail("dataset"))?;
            let text = inspect(&ds, index).ok_or_else(|| Failure {
                category: "dataset",
                message: format!("index {index} out of range (dataset has {} examples)", ds.examples.len()),
            })?;
            print!("{text}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error[{}]: {}", f.category, f.message);
            ExitCode::from(1)
        }
    }
}

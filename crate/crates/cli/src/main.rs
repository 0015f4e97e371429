//! `fruiter`: command-line front end of the UI test reuse evaluator.
//!
//! Exit status: 0 on success, 1 on validation or plan errors, 2 on I/O errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uireuse::corpus::{validate_corpus, Corpus};
use uireuse::extract::{events_json, extract_script, ApiSignatureTable};
use uireuse::fidelity::{compute_fidelity_metrics, evaluate_fidelity};
use uireuse::harness::{
    generate_synthetic_corpus, load_plan_corpus, run_plan_to_dir, BenchmarkPlan, RunManifest,
    SyntheticCorpusSpec,
};
use uireuse::mappers::{MapperConfig, MapperError, TechniqueRegistry, TransferRequest};
use uireuse::model::{GuiMap, Role, TestCase};
use uireuse::report::{
    aggregate, correlation_matrix, read_results_csv, write_aggregate, write_correlation, AverageMode,
    CorrelationUnit,
};
use uireuse::utility::{evaluate_utility, EqualityMode};
use uireuse::{read_json, Error, FidelityMetricsF64, UtilityMetricsF64};

#[derive(Parser)]
#[command(name = "fruiter", version, about = "Evaluate UI test reuse techniques")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a corpus directory and list every violation found.
    Validate { corpus: PathBuf },
    /// Extract the GUI event sequence of a test script.
    Extract {
        script: PathBuf,
        /// API signature table (JSON); the built-in table otherwise.
        #[arg(long)]
        table: Option<PathBuf>,
        /// With --test-id, emit a full events.json test case for this app.
        #[arg(long, requires = "test_id")]
        app_id: Option<String>,
        #[arg(long, requires = "app_id")]
        test_id: Option<String>,
    },
    /// Transfer one source test to a target app and print its GUI map.
    Map(MapArgs),
    /// Score a transfer.
    Evaluate {
        #[command(subcommand)]
        what: Evaluate,
    },
    /// Run a benchmark plan and write results into a directory.
    Run {
        /// Plan JSON, or a manifest.json from an earlier run.
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; 0 uses every core. Output does not depend on it.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Summarize a results.csv.
    Report {
        #[arg(long)]
        results: PathBuf,
        #[command(flatten)]
        kind: ReportKind,
        /// Aggregate: mean per app pair first, then over pairs.
        #[arg(long, requires = "aggregate")]
        per_pair: bool,
        /// Correlate technique means instead of individual entries.
        #[arg(long, requires = "correlate")]
        per_technique: bool,
    },
    /// Generate a synthetic corpus.
    GenCorpus {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the seed given in the synthetic corpus spec.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ReportKind {
    #[arg(long)]
    aggregate: bool,
    #[arg(long)]
    correlate: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Technique {
    Naive,
    Perfect,
    Similarity,
}

impl Technique {
    fn name(self) -> &'static str {
        match self {
            Technique::Naive => "naive",
            Technique::Perfect => "perfect",
            Technique::Similarity => "similarity",
        }
    }
}

#[derive(Args)]
struct MapArgs {
    #[arg(long, value_enum)]
    technique: Technique,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    #[arg(long)]
    test: String,
}

#[derive(Subcommand)]
enum Evaluate {
    /// Fidelity sets and metrics of a GUI map.
    Fidelity {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        guimap: PathBuf,
    },
    /// Effort and reduction of a transferred test against a ground truth.
    Utility {
        /// events.json of the transferred test (any role).
        #[arg(long)]
        transferred: PathBuf,
        /// events.json of the ground-truth test (any role).
        #[arg(long)]
        ground_truth: PathBuf,
        /// Compare inputs too, not just locator and action.
        #[arg(long)]
        strict: bool,
    },
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("value serializes");
    emit(&format!("{text}\n"))
}

fn emit(text: &str) -> Result<(), Error> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(Path::new("<stdout>"), e))
}

fn read_text(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn validate(dir: &Path) -> Result<ExitCode, Error> {
    let corpus = Corpus::load(dir)?;
    let report = validate_corpus(&corpus);
    for v in &report.violations {
        println!("{v}");
    }
    if report.is_ok() {
        let tests: usize = corpus.tests.values().map(|t| t.len()).sum();
        println!("ok: {} apps, {} tests", corpus.apps.len(), tests);
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} violation(s)", report.violations.len());
        Ok(ExitCode::from(1))
    }
}

fn extract(script: &Path, table: Option<&Path>, ids: Option<(String, String)>) -> Result<(), Error> {
    let table = match table {
        Some(p) => ApiSignatureTable::from_json_file(p)?,
        None => ApiSignatureTable::default(),
    };
    let events = extract_script(&read_text(script)?, &table).map_err(|e| Error::Schema {
        path: script.to_path_buf(),
        message: e.to_string(),
    })?;
    match ids {
        Some((app, test)) => {
            let test = TestCase::new(app, test, Role::Source, events).map_err(Error::from)?;
            emit(&events_json(&test))
        }
        None => print_json(&events),
    }
}

fn map(args: &MapArgs) -> Result<(), Error> {
    let corpus = Corpus::load(&args.corpus)?;
    let cfg = MapperConfig::new(args.technique.name(), args.threshold, args.seed)?;
    let src = corpus.test(&args.source, &args.test).ok_or_else(|| Error::Schema {
        path: args.corpus.clone(),
        message: format!("{} has no test `{}`", args.source, args.test),
    })?;
    let mapper = TechniqueRegistry::with_builtins().build(&cfg, &corpus)?;
    let request = TransferRequest {
        source_app: &args.source,
        target_app: &args.target,
        test_id: &args.test,
        src_events: src.events(),
    };
    print_json(&mapper.transfer(&corpus, &request)?)
}

#[derive(serde::Serialize)]
struct FidelityReport {
    sets: uireuse::FidelitySets,
    metrics: FidelityMetricsF64,
}

fn evaluate(what: &Evaluate) -> Result<(), Error> {
    match what {
        Evaluate::Fidelity { corpus, guimap } => {
            let corpus = Corpus::load(corpus)?;
            let map: GuiMap = read_json(guimap)?;
            let missing = |app: &str| MapperError::MissingCanonicalMap(app.to_string());
            let src_can = corpus.canonical.get(&map.source_app).ok_or_else(|| missing(&map.source_app))?;
            let tgt_can = corpus.canonical.get(&map.target_app).ok_or_else(|| missing(&map.target_app))?;
            let src: Vec<_> = map.source_events().cloned().collect();
            let sets = evaluate_fidelity(&src, &map, src_can, tgt_can)?;
            print_json(&FidelityReport {
                metrics: compute_fidelity_metrics(&sets),
                sets,
            })
        }
        Evaluate::Utility {
            transferred,
            ground_truth,
            strict,
        } => {
            let trans = uireuse::extract::ingest_events_json(transferred)?;
            let gt = uireuse::extract::ingest_events_json(ground_truth)?.with_role(Role::GroundTruth)?;
            let mode = if *strict { EqualityMode::Strict } else { EqualityMode::Lenient };
            let m: UtilityMetricsF64 = evaluate_utility(&trans, &gt, mode)?;
            print_json(&m)
        }
    }
}

/// Accepts a bare plan or a manifest carrying one under `plan`.
fn load_plan(path: &Path) -> Result<BenchmarkPlan, Error> {
    let value: serde_json::Value = read_json(path)?;
    if value.get("plan").is_some() {
        Ok(read_json::<RunManifest>(path)?.plan)
    } else {
        read_json(path)
    }
}

fn run(plan_path: &Path, out: &Path, workers: usize) -> Result<(), Error> {
    let plan = load_plan(plan_path)?;
    let base = plan_path.parent().unwrap_or(Path::new("."));
    let corpus = load_plan_corpus(&plan, base)?;
    let report = validate_corpus(&corpus);
    if !report.is_ok() {
        return Err(Error::Schema {
            path: base.to_path_buf(),
            message: format!(
                "corpus is invalid ({} violations), first: {}",
                report.violations.len(),
                report.violations[0]
            ),
        });
    }
    let manifest = run_plan_to_dir(&plan, &corpus, &TechniqueRegistry::with_builtins(), out, workers)?;
    eprintln!(
        "{} planned, {} entries, {} skipped -> {}",
        manifest.planned,
        manifest.entries,
        manifest.skipped,
        out.display()
    );
    Ok(())
}

fn report(results: &Path, kind: &ReportKind, per_pair: bool, per_technique: bool) -> Result<(), Error> {
    let rows = read_results_csv(results)?;
    let mut buf = Vec::new();
    if kind.aggregate {
        let mode = if per_pair { AverageMode::PerPair } else { AverageMode::PerTransfer };
        write_aggregate(&aggregate(&rows, mode), &mut buf)
    } else {
        let unit = if per_technique {
            CorrelationUnit::PerTechnique
        } else {
            CorrelationUnit::PerEntry
        };
        write_correlation(&correlation_matrix(&rows, unit)?, &mut buf)
    }
    .expect("writing to memory");
    emit(&String::from_utf8(buf).expect("utf-8"))
}

fn gen_corpus(spec: &Path, out: &Path, seed: Option<u64>) -> Result<(), Error> {
    let mut spec: SyntheticCorpusSpec = read_json(spec)?;
    if let Some(seed) = seed {
        spec.seed = seed;
    }
    let corpus = generate_synthetic_corpus(&spec)?;
    corpus.save(out)?;
    eprintln!("{} apps written to {}", corpus.apps.len(), out.display());
    Ok(())
}

fn dispatch(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Validate { corpus } => return validate(&corpus),
        Command::Extract {
            script,
            table,
            app_id,
            test_id,
        } => extract(&script, table.as_deref(), app_id.zip(test_id))?,
        Command::Map(args) => map(&args)?,
        Command::Evaluate { what } => evaluate(&what)?,
        Command::Run { plan, out, workers } => run(&plan, &out, workers)?,
        Command::Report {
            results,
            kind,
            per_pair,
            per_technique,
        } => report(&results, &kind, per_pair, per_technique)?,
        Command::GenCorpus { spec, out, seed } => gen_corpus(&spec, &out, seed)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() { 2 } else { 1 })
        }
    }
}

//! `semigraph`: train, apply, extend, evaluate and inspect sarcasm models.

mod config;
mod stats;

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::{error, info, warn};
use semigraph_core::corpus::{load_corpus, read_records};
use semigraph_core::eval::CSV_HEADER;
use semigraph_core::features::{write_weight_dump, FeatureWeight};
use semigraph_core::tagger::load_tagger;
use semigraph_core::{ClassLabel, CorpusFormat, Document, FeatureKind, Pipeline, SavedModel};

use config::{FileConfig, OutputFormat};
use stats::GraphStats;

#[derive(Debug, Parser)]
#[command(
    name = "semigraph",
    version,
    about = "Sarcasm detection with a weighted knowledge semigraph"
)]
struct Cli {
    /// TOML settings file; command-line flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Corpus layout; detected from the first character when omitted.
    #[arg(long, value_name = "a|b")]
    format: Option<CorpusFormat>,

    /// `id<TAB>text` file of coreference-resolved texts replacing the
    /// matching documents' text.
    #[arg(long, value_name = "PATH")]
    resolved: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FeatureArgs {
    /// Tagger: `builtin`, a lexicon file, or a directory with lexicon.tsv
    /// and suffixes.tsv.
    #[arg(long, value_name = "builtin|PATH")]
    tagger: Option<String>,

    /// Feature kind to leave out (F1..F7); repeatable.
    #[arg(long = "disable-feature", value_name = "KIND")]
    disable_feature: Vec<FeatureKind>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a model from a labeled corpus.
    Train {
        #[arg(long, value_name = "PATH")]
        corpus: PathBuf,
        /// Where to write the model.
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        features: FeatureArgs,
        /// Write graph statistics as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Write per-document, per-kind, per-class weights as TSV.
        #[arg(long, value_name = "PATH")]
        dump_weights: Option<PathBuf>,
    },
    /// Score documents against a model. The model file is not modified.
    Classify {
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        #[arg(long, value_name = "PATH")]
        input: PathBuf,
        #[command(flatten)]
        input_args: InputArgs,
        /// Override the tagger recorded in the model.
        #[arg(long, value_name = "builtin|PATH")]
        tagger: Option<String>,
        /// Results file; standard output when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        output: Option<OutputFormat>,
        /// Also write results as JSON lines.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Insert labeled documents into an existing model.
    Add {
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        #[arg(long, value_name = "PATH")]
        corpus: PathBuf,
        #[command(flatten)]
        input: InputArgs,
        /// Write the updated model here instead of replacing --model.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Split a labeled corpus, train, classify the held-out part and report
    /// precision, recall and F-measure.
    Eval {
        #[arg(long, value_name = "PATH")]
        corpus: PathBuf,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        features: FeatureArgs,
        #[arg(long, value_name = "FRACTION")]
        test_fraction: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the report as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Write per-document results as TSV.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Append a CSV row (header added to a new file).
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Run label for the CSV row; defaults to the corpus file name.
        #[arg(long, value_name = "NAME")]
        run_name: Option<String>,
    },
    /// Print vertex, edge and degree statistics of a model.
    Inspect {
        #[arg(long, value_name = "PATH")]
        model: PathBuf,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

/// Completed runs: clean, or with some records skipped.
enum Status {
    Clean,
    RecordFailures(usize),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SEMIGRAPH_LOG", "warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Clean) => ExitCode::SUCCESS,
        Ok(Status::RecordFailures(n)) => {
            eprintln!("warning: {n} record(s) failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    let file = FileConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Train {
            corpus,
            model,
            input,
            features,
            json,
            dump_weights,
        } => train(
            &file,
            &corpus,
            &model,
            &input,
            &features,
            json.as_deref(),
            dump_weights.as_deref(),
        ),
        Command::Classify {
            model,
            input,
            input_args,
            tagger,
            out,
            output,
            json,
        } => classify(
            &file,
            &model,
            &input,
            &input_args,
            tagger.as_deref(),
            out.as_deref(),
            file.output(output),
            json.as_deref(),
        ),
        Command::Add {
            model,
            corpus,
            input,
            out,
        } => add(&file, &model, &corpus, &input, out.as_deref()),
        Command::Eval {
            corpus,
            input,
            features,
            test_fraction,
            seed,
            json,
            out,
            csv,
            run_name,
        } => {
            let mask = file.mask(&features.disable_feature)?;
            let config = file.run_config(mask, test_fraction, seed);
            let docs = read_corpus(&file, &corpus, &input)?;
            let tagger = load_tagger(&file.tagger(features.tagger.as_deref()))?;
            let run = Pipeline::new(tagger, mask).evaluate_corpus(&docs, &config)?;
            print!("{}", run.report.render_table());
            if let Some(path) = json {
                write_file(&path, &(run.report.to_json() + "\n"))?;
            }
            if let Some(path) = out {
                let body: String = run.results.iter().map(|r| r.to_tsv() + "\n").collect();
                write_file(&path, &body)?;
            }
            if let Some(path) = csv {
                let name = run_name.unwrap_or_else(|| {
                    corpus
                        .file_name()
                        .map_or_else(|| corpus.display().to_string(), |n| n.to_string_lossy().into_owned())
                });
                append_csv(&path, &run.report.csv_row(&name))?;
            }
            Ok(Status::Clean)
        }
        Command::Inspect { model, json } => {
            let saved = SavedModel::load(&model)?;
            let stats = GraphStats::of(&saved.graph, &saved.tagger);
            print!("{}", stats.render());
            if let Some(path) = json {
                write_file(&path, &(serde_json::to_string_pretty(&stats)? + "\n"))?;
            }
            Ok(Status::Clean)
        }
    }
}

fn train(
    file: &FileConfig,
    corpus: &Path,
    model: &Path,
    input: &InputArgs,
    features: &FeatureArgs,
    json: Option<&Path>,
    dump_weights: Option<&Path>,
) -> Result<Status> {
    let mask = file.mask(&features.disable_feature)?;
    let tagger_name = file.tagger(features.tagger.as_deref());
    let tagger = load_tagger(&tagger_name)?;
    let docs = read_corpus(file, corpus, input)?;
    let outcome = Pipeline::new(tagger, mask).train(&docs)?;
    let saved = SavedModel::new(outcome.graph, tagger_name);
    saved.save(model)?;

    let g = &saved.graph;
    println!(
        "trained on {} documents ({} skipped): {} vertices, {} semiedges, {} graphical edges",
        g.train_document_count(),
        outcome.skipped.len(),
        g.vertex_count(),
        g.semiedge_count(),
        g.graphical_edge_count()
    );
    if let Some(path) = json {
        let stats = GraphStats::of(g, &saved.tagger);
        write_file(path, &(serde_json::to_string_pretty(&stats)? + "\n"))?;
    }
    if let Some(path) = dump_weights {
        let weights: Vec<FeatureWeight> = g
            .vertices()
            .filter(|v| v.role.is_train())
            .flat_map(|v| {
                ClassLabel::ALL
                    .map(|class| FeatureWeight::compute(&v.id.doc, &v.patterns, class, g.counts(), g.totals()))
            })
            .collect();
        let mut out = BufWriter::new(create(path)?);
        write_weight_dump(&mut out, &weights).and_then(|_| out.flush())?;
    }
    Ok(Status::Clean)
}

#[allow(clippy::too_many_arguments)]
fn classify(
    file: &FileConfig,
    model: &Path,
    input: &Path,
    input_args: &InputArgs,
    tagger_flag: Option<&str>,
    out: Option<&Path>,
    output: OutputFormat,
    json: Option<&Path>,
) -> Result<Status> {
    let saved = SavedModel::load(model)?;
    let tagger_name = tagger_flag.map_or_else(|| saved.tagger.clone(), str::to_string);
    if tagger_name != saved.tagger {
        warn!(
            "tagging with {tagger_name} although the model was built with {}",
            saved.tagger
        );
    }
    let tagger = load_tagger(&tagger_name)?;

    let format = file.format(input_args.format)?;
    let mut failures = 0;
    let mut docs = Vec::new();
    for record in read_records(input, format)? {
        match record {
            Ok(doc) => docs.push(doc),
            Err(e) => {
                error!("{}: {e}", input.display());
                failures += 1;
            }
        }
    }
    apply_resolved(&mut docs, input_args.resolved.as_deref())?;

    let results = Pipeline::new(tagger, saved.graph.mask()).classify(&saved.graph, &docs)?;
    let body: String = results
        .iter()
        .map(|r| match output {
            OutputFormat::Tsv => r.to_tsv() + "\n",
            OutputFormat::Jsonl => r.to_json_line() + "\n",
        })
        .collect();
    match out {
        Some(path) => write_file(path, &body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    if let Some(path) = json {
        let lines: String = results.iter().map(|r| r.to_json_line() + "\n").collect();
        write_file(path, &lines)?;
    }
    info!("classified {} documents", results.len());
    Ok(if failures == 0 {
        Status::Clean
    } else {
        Status::RecordFailures(failures)
    })
}

fn add(file: &FileConfig, model: &Path, corpus: &Path, input: &InputArgs, out: Option<&Path>) -> Result<Status> {
    let mut saved = SavedModel::load(model)?;
    let docs = read_corpus(file, corpus, input)?;
    let target = out.unwrap_or(model);
    if docs.is_empty() {
        info!("no documents to add");
        if target != model {
            fs::copy(model, target).with_context(|| format!("cannot write {}", target.display()))?;
        }
        return Ok(Status::Clean);
    }
    let tagger = load_tagger(&saved.tagger)?;
    let before = saved.graph.train_document_count();
    let skipped = Pipeline::new(tagger, saved.graph.mask()).add(&mut saved.graph, &docs)?;
    saved.save(target)?;
    println!(
        "added {} documents ({} skipped): {} training documents, {} vertices",
        saved.graph.train_document_count() - before,
        skipped.len(),
        saved.graph.train_document_count(),
        saved.graph.vertex_count()
    );
    Ok(Status::Clean)
}

fn read_corpus(file: &FileConfig, path: &Path, input: &InputArgs) -> Result<Vec<Document>> {
    let mut docs = load_corpus(path, file.format(input.format)?)?;
    apply_resolved(&mut docs, input.resolved.as_deref())?;
    Ok(docs)
}

/// Replaces document texts with externally resolved versions keyed by id.
fn apply_resolved(docs: &mut [Document], path: Option<&Path>) -> Result<()> {
    let Some(path) = path else {
        return Ok(());
    };
    let content = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut texts = HashMap::new();
    for (idx, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let Some((id, text)) = line.split_once('\t') else {
            bail!("{}:{}: expected id<TAB>text", path.display(), idx + 1);
        };
        texts.insert(id.to_string(), text.to_string());
    }
    let mut replaced = 0;
    for doc in docs.iter_mut() {
        if let Some(text) = texts.get(&doc.id) {
            doc.text = text.clone();
            replaced += 1;
        }
    }
    info!("replaced {replaced} of {} texts from {}", docs.len(), path.display());
    Ok(())
}

fn create(path: &Path) -> Result<File> {
    File::create(path).with_context(|| format!("cannot write {}", path.display()))
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).with_context(|| format!("cannot write {}", path.display()))
}

fn append_csv(path: &Path, row: &str) -> Result<()> {
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    if fresh {
        writeln!(f, "{CSV_HEADER}")?;
    }
    writeln!(f, "{row}")?;
    Ok(())
}

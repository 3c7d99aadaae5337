//! The `revnet` subcommands.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use revnet_core::analysis;
use revnet_core::corpus::{Corpus, Outcome};
use revnet_core::features::{assemble_matrix, Feature};
use revnet_core::graph;
use revnet_core::svr::{self, Imputer, SvrConfig};
use revnet_core::synth::{self, SynthConfig};
use revnet_core::text::Lexicon;

use crate::events;
use crate::lexicon;
use crate::manifest::RunManifest;
use crate::model::ModelFile;
use crate::tables;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn io_err(context: &str, path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{context} {}: {e}", path.display()))
}

#[derive(Debug, Parser)]
#[command(name = "revnet", version, about = "Reviewer-network citation-impact pipeline")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an event log and report line diagnostics.
    Validate(ValidateArgs),
    /// Generate a synthetic event log.
    Generate(GenerateArgs),
    /// Build the feature matrix and citation-rank targets.
    Features(FeaturesArgs),
    /// Cross-validate and fit an epsilon-SVR on a feature matrix.
    Train(TrainArgs),
    /// Predict citation ranks with a trained model.
    Predict(PredictArgs),
    /// Write the descriptive analysis tables.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub log: PathBuf,
    /// Run directory for the report and manifest.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// TOML generator config; defaults apply to missing keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    pub log: PathBuf,
    /// First decision year of the window.
    #[arg(long, default_value_t = 2007)]
    pub from: i32,
    /// Last decision year of the window (inclusive).
    #[arg(long, default_value_t = 2012)]
    pub to: i32,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Feature CSV written by `features`.
    pub features: PathBuf,
    #[arg(long = "C", alias = "c", default_value_t = 100.0)]
    pub c: f64,
    /// RBF width; 0.02 by default, 0.01 with --network-only.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use only Deg, BC, CC, Clus and PR.
    #[arg(long)]
    pub network_only: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    pub features: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub log: PathBuf,
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Only papers decided before this year count as fully exposed.
    #[arg(long, default_value_t = analysis::DEFAULT_EXPOSURE_CUTOFF)]
    pub cutoff_year: i32,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate(a) => validate(a),
        Command::Generate(a) => generate(a),
        Command::Features(a) => features(a),
        Command::Train(a) => train(a),
        Command::Predict(a) => predict(a),
        Command::Analyze(a) => analyze(a),
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| io_err("cannot read", path, e))
}

fn write_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| io_err("cannot write", path, e)
}

/// Parse and validate a log, printing diagnostics for every problem.
fn load_corpus(path: &Path, manifest: Option<&mut RunManifest>) -> Result<Corpus> {
    let bytes = read_input(path)?;
    if let Some(m) = manifest {
        m.input(path, &bytes);
    }
    let parsed = events::parse_events(bytes.as_slice()).map_err(|e| io_err("cannot read", path, e))?;
    let mut diagnostics: Vec<String> = parsed.errors.iter().map(ToString::to_string).collect();
    if diagnostics.is_empty() {
        match Corpus::from_events(parsed.events) {
            Ok(c) => return Ok(c),
            Err(errs) => diagnostics.extend(errs.0.iter().map(|i| {
                format!("line {}: paper {}: {}", parsed.lines[i.index], i.paper_id, i.kind)
            })),
        }
    }
    for d in &diagnostics {
        eprintln!("{}: {d}", path.display());
    }
    Err(CliError::Validation(format!(
        "{}: {} problem(s) found",
        path.display(),
        diagnostics.len()
    )))
}

fn resolve_lexicon(dir: Option<&Path>, manifest: &mut RunManifest) -> Result<Lexicon> {
    let (lex, from) = lexicon::resolve(dir).map_err(|e| CliError::Io(e.to_string()))?;
    manifest.config["lexicon"] = json!(from.map(|p| p.display().to_string()).unwrap_or_else(|| "embedded".into()));
    manifest.config_sha256 = crate::fsio::sha256_hex(&serde_json::to_vec(&manifest.config).expect("json"));
    Ok(lex)
}

fn validate(a: ValidateArgs) -> Result<()> {
    let start = Instant::now();
    let bytes = read_input(&a.log)?;
    let parsed = events::parse_events(bytes.as_slice()).map_err(|e| io_err("cannot read", &a.log, e))?;
    let mut diagnostics: Vec<serde_json::Value> = parsed
        .errors
        .iter()
        .map(|e| json!({"line": e.line, "message": e.message}))
        .collect();
    // a dropped line would cascade into spurious structural issues
    let structural = if diagnostics.is_empty() {
        revnet_core::corpus::validate(&parsed.events)
    } else {
        Vec::new()
    };
    for issue in structural {
        diagnostics.push(json!({
            "line": parsed.lines[issue.index],
            "paper_id": issue.paper_id,
            "message": issue.kind.to_string(),
        }));
    }
    diagnostics.sort_by_key(|d| d["line"].as_u64());
    for d in &diagnostics {
        let paper = d.get("paper_id").and_then(|p| p.as_str()).map(|p| format!("paper {p}: ")).unwrap_or_default();
        eprintln!("{}: line {}: {paper}{}", a.log.display(), d["line"], d["message"].as_str().unwrap_or(""));
    }
    let papers = parsed
        .events
        .iter()
        .map(|e| e.paper_id.as_str())
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    println!(
        "{}: {} events, {} papers, {} error(s)",
        a.log.display(),
        parsed.events.len(),
        papers,
        diagnostics.len()
    );
    if let Some(out) = &a.out {
        let mut m = RunManifest::new("validate", json!({}), None);
        m.input(&a.log, &bytes);
        let report = json!({"events": parsed.events.len(), "papers": papers, "errors": diagnostics});
        let mut text = serde_json::to_vec_pretty(&report).expect("json");
        text.push(b'\n');
        m.emit(out, "validation.json", &text, None, &[]).map_err(write_err(out))?;
        m.time("total", start);
        m.write(out).map_err(write_err(out))?;
    }
    if diagnostics.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("{} error(s)", diagnostics.len())))
    }
}

fn generate(a: GenerateArgs) -> Result<()> {
    let start = Instant::now();
    let mut config = match &a.config {
        Some(p) => {
            let text = String::from_utf8(read_input(p)?).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            toml::from_str::<SynthConfig>(&text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?
        }
        None => SynthConfig::default(),
    };
    if let Some(s) = a.seed {
        config.seed = s;
    }
    let mut m = RunManifest::new(
        "generate",
        serde_json::to_value(&config).expect("config serializes"),
        Some(config.seed),
    );
    if let Some(p) = &a.config {
        m.input(p, &read_input(p)?);
    }
    let lex = resolve_lexicon(a.lexicon.as_deref(), &mut m)?;
    let events = synth::generate(&config, &lex).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = events::to_string(&events);
    m.emit(&a.out, "events.jsonl", text.as_bytes(), None, &[])
        .map_err(write_err(&a.out))?;
    m.time("total", start);
    m.write(&a.out).map_err(write_err(&a.out))?;
    println!("wrote {} events to {}", events.len(), a.out.join("events.jsonl").display());
    Ok(())
}

fn features(a: FeaturesArgs) -> Result<()> {
    if a.from > a.to {
        return Err(CliError::Usage(format!("empty window {}..={}", a.from, a.to)));
    }
    let start = Instant::now();
    let mut m = RunManifest::new("features", json!({"from": a.from, "to": a.to}), None);
    let corpus = load_corpus(&a.log, Some(&mut m))?;
    let lex = resolve_lexicon(a.lexicon.as_deref(), &mut m)?;
    let matrix = assemble_matrix(&corpus, &lex, a.from..=a.to);
    m.time("features", start);
    if matrix.is_empty() {
        eprintln!("warning: no accepted papers decided in {}..={}", a.from, a.to);
    }
    let header = tables::feature_header();
    let cols: Vec<&str> = header.iter().map(String::as_str).collect();
    m.emit(&a.out, "features.csv", &tables::feature_csv(&matrix), None, &cols)
        .map_err(write_err(&a.out))?;
    m.emit(&a.out, "features.missing.csv", &tables::mask_csv(&matrix), None, &cols[..15])
        .map_err(write_err(&a.out))?;
    m.write(&a.out).map_err(write_err(&a.out))?;
    println!("{} rows written to {}", matrix.len(), a.out.join("features.csv").display());
    Ok(())
}

fn f_value(f: f64) -> serde_json::Value {
    if f.is_infinite() {
        json!("inf")
    } else {
        json!(f)
    }
}

fn train(a: TrainArgs) -> Result<()> {
    let start = Instant::now();
    let feature_set: Vec<Feature> = if a.network_only {
        Feature::NETWORK.to_vec()
    } else {
        Feature::ALL.to_vec()
    };
    let gamma = a.gamma.unwrap_or(if a.network_only { 0.01 } else { 0.02 });
    let config = SvrConfig {
        c: a.c,
        gamma,
        epsilon: a.epsilon,
        tol: a.tol,
        seed: a.seed,
        ..SvrConfig::default()
    };
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let mut m = RunManifest::new(
        "train",
        json!({"C": a.c, "gamma": gamma, "epsilon": a.epsilon, "tol": a.tol, "folds": a.folds,
               "features": feature_set.iter().map(|f| f.code()).collect::<Vec<_>>()}),
        Some(a.seed),
    );
    let bytes = read_input(&a.features)?;
    m.input(&a.features, &bytes);
    let table = tables::read_feature_csv(&bytes).map_err(|e| CliError::Validation(format!("{}: {e}", a.features.display())))?;
    let data = table
        .dataset(&feature_set)
        .ok_or_else(|| CliError::Validation(format!("{}: no target column", a.features.display())))?;
    if data.rows.len() < a.folds.max(2) {
        return Err(CliError::Validation(format!(
            "{} rows is too few for {} folds",
            data.rows.len(),
            a.folds
        )));
    }

    let report = svr::cross_validate(&data, &config, a.folds).map_err(|e| CliError::Usage(e.to_string()))?;
    m.time("cross_validation", start);
    let imputer = Imputer::fit(&data.rows);
    let filled: Vec<Vec<f64>> = data.rows.iter().map(|r| imputer.transform(r)).collect();
    let fit = svr::fit(&filled, &data.targets, &data.feature_names, &config).map_err(|e| CliError::Usage(e.to_string()))?;
    m.time("total", start);

    println!("R2   {:.4}", report.r2);
    println!("RMSE {:.4}", report.rmse);
    println!("feature  F");
    for f in &feature_set {
        let v = report.f_stats[f.code()];
        println!("{:<8} {}", f.code(), if v.is_infinite() { String::from("inf") } else { format!("{v:.2}") });
    }

    let eval = json!({
        "r2": report.r2,
        "rmse": report.rmse,
        "seed": report.seed,
        "folds": report.k,
        "config": {"C": config.c, "gamma": config.gamma, "epsilon": config.epsilon, "tol": config.tol},
        "fold_reports": report.folds.iter().map(|f| json!({
            "r2": f.r2, "rmse": f.rmse, "rows": f.rows,
            "iterations": f.stats.iterations, "converged": f.stats.converged, "kkt_gap": f.stats.kkt_gap,
        })).collect::<Vec<_>>(),
        "f_statistics": feature_set.iter().map(|f| json!({"feature": f.code(), "f": f_value(report.f_stats[f.code()])})).collect::<Vec<_>>(),
        "final_fit": {"iterations": fit.stats.iterations, "converged": fit.stats.converged, "kkt_gap": fit.stats.kkt_gap,
                      "support_vectors": fit.model.support_vectors.len()},
    });
    let mut eval_bytes = serde_json::to_vec_pretty(&eval).expect("json");
    eval_bytes.push(b'\n');
    let model = ModelFile::new(fit.model, imputer, data.rows.len());
    let predictions = tables::simple_csv(
        &["paper_id", "target", "prediction"],
        table
            .paper_ids
            .iter()
            .zip(data.targets.iter().zip(&report.predictions))
            .map(|(id, (t, p))| vec![id.clone(), t.to_string(), p.to_string()]),
    );
    m.emit(&a.out, "model.json", &model.to_json(), None, &[])
        .map_err(write_err(&a.out))?;
    m.emit(&a.out, "eval.json", &eval_bytes, None, &[])
        .map_err(write_err(&a.out))?;
    m.emit(&a.out, "cv_predictions.csv", &predictions, None, &["paper_id", "target", "prediction"])
        .map_err(write_err(&a.out))?;
    m.write(&a.out).map_err(write_err(&a.out))?;
    Ok(())
}

fn predict(a: PredictArgs) -> Result<()> {
    let start = Instant::now();
    let mut m = RunManifest::new("predict", json!({}), None);
    let model_bytes = read_input(&a.model)?;
    m.input(&a.model, &model_bytes);
    let model = ModelFile::from_json(&model_bytes).map_err(|e| CliError::Validation(format!("{}: {e}", a.model.display())))?;
    let bytes = read_input(&a.features)?;
    m.input(&a.features, &bytes);
    let table = tables::read_feature_csv(&bytes).map_err(|e| CliError::Validation(format!("{}: {e}", a.features.display())))?;
    let features = model.features().map_err(|e| CliError::Validation(e.to_string()))?;
    let preds = model
        .predict(&table.columns(&features))
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let csv = tables::simple_csv(
        &["paper_id", "prediction"],
        table
            .paper_ids
            .iter()
            .zip(&preds)
            .map(|(id, p)| vec![id.clone(), p.to_string()]),
    );
    m.emit(&a.out, "predictions.csv", &csv, None, &["paper_id", "prediction"])
        .map_err(write_err(&a.out))?;
    m.time("total", start);
    m.write(&a.out).map_err(write_err(&a.out))?;
    println!("{} predictions written", preds.len());
    Ok(())
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Accept => "accept",
        Outcome::Reject => "reject",
        Outcome::Withdraw => "withdraw",
    }
}

fn analyze(a: AnalyzeArgs) -> Result<()> {
    let start = Instant::now();
    let mut m = RunManifest::new("analyze", json!({"cutoff_year": a.cutoff_year}), None);
    let corpus = load_corpus(&a.log, Some(&mut m))?;
    let lex = resolve_lexicon(a.lexicon.as_deref(), &mut m)?;
    let out = a.out.clone();
    let emit = |m: &mut RunManifest, name: &str, file: &str, cols: &[&str], bytes: Vec<u8>| {
        m.emit(&out, file, &bytes, Some(name), cols).map_err(write_err(&out))
    };

    let s = analysis::summary_table(&corpus);
    let summary_rows: Vec<(&str, String)> = vec![
        ("papers", s.papers.to_string()),
        ("accepted", s.accepted.to_string()),
        ("rejected", s.rejected.to_string()),
        ("withdrawn", s.withdrawn.to_string()),
        ("mean_reviews_accepted", s.mean_reviews_accepted.to_string()),
        ("mean_reviews_rejected", s.mean_reviews_rejected.to_string()),
        ("mean_citations_accepted", s.mean_citations_accepted.to_string()),
        ("mean_citations_rejected", s.mean_citations_rejected.to_string()),
        ("authors", s.authors.to_string()),
        ("reviewers", s.reviewers.to_string()),
        ("editors", s.editors.to_string()),
        ("mean_submissions_per_author", s.mean_submissions_per_author.to_string()),
        ("mean_authors_per_paper", s.mean_authors_per_paper.to_string()),
    ];
    let cols = ["key", "value"];
    emit(
        &mut m,
        "summary",
        "summary.csv",
        &cols,
        tables::simple_csv(&cols, summary_rows.into_iter().map(|(k, v)| vec![k.to_string(), v])),
    )?;

    let cols = ["bucket", "label", "accepted_fraction", "rejected_fraction"];
    emit(
        &mut m,
        "citation_buckets",
        "citation_buckets.csv",
        &cols,
        tables::simple_csv(
            &cols,
            analysis::citation_bucket_shares(&corpus)
                .into_iter()
                .map(|b| vec![b.bucket.to_string(), b.label, b.accepted.to_string(), b.rejected.to_string()]),
        ),
    )?;

    let profiles = analysis::reviewer_network_profiles(&corpus);
    let cols = ["reviewer_id", "Deg", "BC", "CC", "Clus", "PR", "accepted_papers"];
    emit(
        &mut m,
        "reviewer_centrality",
        "reviewer_centrality.csv",
        &cols,
        tables::simple_csv(
            &cols,
            profiles.iter().map(|p| {
                let mut r = vec![p.reviewer_id.clone()];
                r.extend(p.centralities.iter().map(f64::to_string));
                r.push(p.accepted_citations.len().to_string());
                r
            }),
        ),
    )?;

    let g = graph::project(&graph::snapshot_all(&corpus));
    let name = |v: usize| corpus.reviewers().name(g.nodes[v].0).to_string();
    let cols = ["reviewer_a", "reviewer_b", "shared_editors"];
    emit(
        &mut m,
        "review_graph_edges",
        "review_graph_edges.csv",
        &cols,
        tables::simple_csv(
            &cols,
            g.graph
                .edges()
                .into_iter()
                .map(|(u, v)| vec![name(u), name(v), g.shared_editors[&(u, v)].to_string()]),
        ),
    )?;

    let cols = ["feature", "group", "citations", "cdf"];
    let quartile_rows: Vec<Vec<String>> = match analysis::network_quartile_contrasts(&corpus) {
        Ok(contrasts) => contrasts
            .iter()
            .flat_map(|(f, c)| {
                [("top25", &c.top), ("bottom25", &c.bottom)]
                    .into_iter()
                    .flat_map(move |(grp, e)| {
                        e.points()
                            .into_iter()
                            .map(move |(x, y)| vec![f.code().to_string(), grp.to_string(), x.to_string(), y.to_string()])
                    })
            })
            .collect(),
        Err(e) => {
            eprintln!("warning: quartile contrast skipped: {e}");
            Vec::new()
        }
    };
    emit(&mut m, "reviewer_quartile_cdf", "reviewer_quartile_cdf.csv", &cols, tables::simple_csv(&cols, quartile_rows))?;

    let matrix = assemble_matrix(&corpus, &lex, i32::MIN..=i32::MAX);
    let cols = ["feature", "bucket", "label", "count", "mean_citations"];
    emit(
        &mut m,
        "feature_trends",
        "feature_trends.csv",
        &cols,
        tables::simple_csv(
            &cols,
            analysis::feature_trends(&matrix).into_iter().flat_map(|t| {
                t.groups.into_iter().map(move |g| {
                    vec![
                        t.feature.code().to_string(),
                        g.bucket.to_string(),
                        g.label,
                        g.count.to_string(),
                        g.mean.to_string(),
                    ]
                })
            }),
        ),
    )?;

    let top = analysis::top_percentile_by_rounds(&corpus, 0.2);
    let cols = ["rounds", "papers", "top", "fraction", "threshold", "ties_at_threshold"];
    emit(
        &mut m,
        "top20_by_rounds",
        "top20_by_rounds.csv",
        &cols,
        tables::simple_csv(
            &cols,
            top.rows.iter().map(|r| {
                vec![
                    r.rounds.to_string(),
                    r.papers.to_string(),
                    r.top.to_string(),
                    r.fraction.to_string(),
                    top.threshold.to_string(),
                    top.ties_at_threshold.to_string(),
                ]
            }),
        ),
    )?;

    let cols = ["year", "outcome", "polarity", "count", "mean_citations"];
    emit(
        &mut m,
        "sentiment_groups",
        "sentiment_groups.csv",
        &cols,
        tables::simple_csv(
            &cols,
            analysis::sentiment_groups(&corpus, &lex).into_iter().map(|g| {
                vec![
                    g.year.map(|y| y.to_string()).unwrap_or_else(|| "all".into()),
                    outcome_name(g.outcome).to_string(),
                    g.polarity.name().to_string(),
                    g.count.to_string(),
                    g.mean_citations.to_string(),
                ]
            }),
        ),
    )?;

    let cols = ["category", "high_cited", "low_cited"];
    emit(
        &mut m,
        "category_contrast",
        "category_contrast.csv",
        &cols,
        tables::simple_csv(
            &cols,
            analysis::category_contrast(&corpus, &lex, a.cutoff_year)
                .into_iter()
                .map(|c| vec![c.category.name().to_string(), c.high_cited.to_string(), c.low_cited.to_string()]),
        ),
    )?;

    let cases = analysis::irregular_cases(&corpus, &lex, a.cutoff_year);
    let cols = [
        "list",
        "paper_id",
        "outcome",
        "citations",
        "decision_year",
        "author_acceptance",
        "reviewer_acceptance",
        "report_length",
    ];
    let case_rows = [("high_cited_rejected", &cases.high_cited_rejected), ("low_cited_accepted", &cases.low_cited_accepted)]
        .into_iter()
        .flat_map(|(list, v)| {
            v.iter().map(move |c| {
                vec![
                    list.to_string(),
                    c.paper_id.clone(),
                    outcome_name(c.outcome).to_string(),
                    c.citations.to_string(),
                    c.decision_year.to_string(),
                    opt(c.author_acceptance),
                    opt(c.reviewer_acceptance),
                    opt(c.report_length),
                ]
            })
        })
        .collect::<Vec<_>>();
    emit(&mut m, "irregular_cases", "irregular_cases.csv", &cols, tables::simple_csv(&cols, case_rows))?;

    m.time("total", start);
    m.write(&a.out).map_err(write_err(&a.out))?;
    println!("{} analyses written to {}", m.outputs.len(), a.out.display());
    Ok(())
}

use std::collections::HashMap;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use knowhunt_core::evalharness::{
    emit_report, evaluate_copa, evaluate_wsc, load_copa, CopaAnswer, CopaInstance, EvalReport, ReportFormat,
};
use knowhunt_core::evidence::{EvidenceRecord, ScoreWeights};
use knowhunt_core::lexicon::Lexicon;
use knowhunt_core::pipeline::{solve_copa, solve_wsc, CopaRun, Resources, SolveConfig, WscRun};
use knowhunt_core::querygen::{ManualQueries, QueryMode, DEFAULT_ALPHA};
use knowhunt_core::resolver::{Resolution, ResolutionRecord};
use knowhunt_core::retrieval::{build_index, CorpusIndex, FixtureProvider, SearchProvider, DEFAULT_LIMIT};
use knowhunt_core::schema::{load_annotations, load_wsc, Answer, ExternalAnnotations, ProblemInstance};
use knowhunt_core::Error;

#[derive(Parser)]
#[command(name = "knowhunt", version, about = "Resolve Winograd schemas and COPA questions from retrieved evidence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a line-based index file from a directory of .txt documents.
    Index {
        #[arg(long)]
        corpus_dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Resolve every instance and write one resolution per line.
    Solve {
        #[command(flatten)]
        run: RunArgs,
        /// Resolution dump; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write every evidence sentence (WSC only).
        #[arg(long)]
        evidence_out: Option<PathBuf>,
    },
    /// Resolve, score against the gold answers and write a report.
    Eval {
        #[command(flatten)]
        run: RunArgs,
        /// Report file; only the summary line is printed when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "json-lines")]
        report_format: ReportFormat,
    },
    /// List the evidence found for one instance.
    Inspect {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        id: String,
        /// Print evidence records as JSON lines instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TaskArg {
    Wsc,
    Copa,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProviderArg {
    Corpus,
    Fixture,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "wsc")]
    task: TaskArg,
    /// Dataset file (line-delimited JSON).
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value = "auto")]
    queries: QueryMode,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    /// Manual query file, required with `--queries manual`.
    #[arg(long)]
    manual: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "corpus")]
    provider: ProviderArg,
    #[arg(long)]
    corpus_dir: Option<PathBuf>,
    /// Prebuilt index file, used instead of `--corpus-dir`.
    #[arg(long)]
    index: Option<PathBuf>,
    #[arg(long)]
    fixtures: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    limit: usize,
    /// `len2,len1,ord2,ord1`.
    #[arg(long, default_value = "2,1,2,1")]
    weights: ScoreWeights,
    /// Give every unresolved evidence sentence the label of its nearest
    /// candidate instead of marking it insufficient.
    #[arg(long)]
    force_label: bool,
    /// Replace abstentions with a seeded coin flip.
    #[arg(long)]
    random_backoff: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory with taxonomy.tsv, auxiliaries.txt, causatives.txt and
    /// pronouns.tsv; the bundled lexicon is used otherwise.
    #[arg(long)]
    lexicon_dir: Option<PathBuf>,
    /// Token annotations keyed by instance id (WSC only).
    #[arg(long)]
    annotations: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

enum ProviderSource {
    CorpusDir(PathBuf),
    IndexFile(PathBuf),
    Fixtures(PathBuf),
}

/// Validated settings for one run.
struct RunConfig {
    task: TaskArg,
    data: PathBuf,
    provider: ProviderSource,
    manual: Option<PathBuf>,
    lexicon_dir: Option<PathBuf>,
    annotations: Option<PathBuf>,
    solve: SolveConfig,
}

fn existing(path: &Path, what: &str) -> Result<PathBuf> {
    if !path.exists() {
        bail!("{what} `{}` does not exist", path.display());
    }
    Ok(path.to_path_buf())
}

impl RunConfig {
    fn from_args(a: &RunArgs) -> Result<Self> {
        let provider = match (a.provider, &a.corpus_dir, &a.index, &a.fixtures) {
            (ProviderArg::Corpus, Some(dir), None, None) => ProviderSource::CorpusDir(existing(dir, "corpus directory")?),
            (ProviderArg::Corpus, None, Some(file), None) => ProviderSource::IndexFile(existing(file, "index file")?),
            (ProviderArg::Corpus, None, None, None) => bail!("the corpus provider needs --corpus-dir or --index"),
            (ProviderArg::Corpus, _, _, _) => {
                bail!("give exactly one of --corpus-dir and --index; --fixtures needs --provider fixture")
            }
            (ProviderArg::Fixture, None, None, Some(f)) => ProviderSource::Fixtures(existing(f, "fixture file")?),
            (ProviderArg::Fixture, _, _, None) => bail!("the fixture provider needs --fixtures"),
            (ProviderArg::Fixture, _, _, Some(_)) => bail!("--corpus-dir and --index need --provider corpus"),
        };
        if a.queries == QueryMode::Mgq && a.manual.is_none() {
            bail!("--queries manual needs --manual <file>");
        }
        if !(a.alpha.is_finite() && (0.0..=1.0).contains(&a.alpha)) {
            bail!("--alpha must lie in [0, 1], got {}", a.alpha);
        }
        if a.jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        if a.task == TaskArg::Copa && a.annotations.is_some() {
            bail!("--annotations applies to WSC data only");
        }
        let opt = |p: &Option<PathBuf>, what: &str| p.as_deref().map(|p| existing(p, what)).transpose();
        Ok(RunConfig {
            task: a.task,
            data: existing(&a.data, "dataset")?,
            provider,
            manual: opt(&a.manual, "manual query file")?,
            lexicon_dir: opt(&a.lexicon_dir, "lexicon directory")?,
            annotations: opt(&a.annotations, "annotation file")?,
            solve: SolveConfig {
                mode: a.queries,
                alpha: a.alpha,
                limit: a.limit,
                weights: a.weights,
                force_label: a.force_label,
                backoff_seed: a.random_backoff.then_some(a.seed),
                jobs: a.jobs,
            },
        })
    }
}

enum Dataset {
    Wsc(Vec<ProblemInstance>),
    Copa(Vec<CopaInstance>),
}

enum Runs {
    Wsc(Vec<WscRun>),
    Copa(Vec<CopaRun>),
}

impl Runs {
    fn resolutions(&self) -> Vec<Resolution> {
        match self {
            Runs::Wsc(rs) => rs.iter().map(|r| r.resolution.clone()).collect(),
            Runs::Copa(rs) => rs.iter().map(|r| r.resolution.clone()).collect(),
        }
    }
}

struct Loaded {
    config: RunConfig,
    lexicon: Lexicon,
    provider: Box<dyn SearchProvider>,
    manual: Option<ManualQueries>,
    annotations: Option<ExternalAnnotations>,
    dataset: Dataset,
}

impl Loaded {
    fn new(args: &RunArgs) -> Result<Self> {
        let config = RunConfig::from_args(args)?;
        let lexicon = match &config.lexicon_dir {
            Some(dir) => Lexicon::load_dir(dir)?,
            None => Lexicon::builtin(),
        };
        let provider: Box<dyn SearchProvider> = match &config.provider {
            ProviderSource::CorpusDir(dir) => Box::new(build_index(dir)?),
            ProviderSource::IndexFile(file) => Box::new(CorpusIndex::load(file)?),
            ProviderSource::Fixtures(file) => Box::new(FixtureProvider::load(file)?),
        };
        let manual = config.manual.as_deref().map(ManualQueries::load).transpose()?;
        let annotations = config.annotations.as_deref().map(load_annotations).transpose()?;
        let dataset = match config.task {
            TaskArg::Wsc => Dataset::Wsc(load_wsc(&config.data)?),
            TaskArg::Copa => Dataset::Copa(load_copa(&config.data)?),
        };
        Ok(Loaded {
            config,
            lexicon,
            provider,
            manual,
            annotations,
            dataset,
        })
    }

    fn resources(&self) -> Resources<'_> {
        Resources {
            lexicon: &self.lexicon,
            provider: self.provider.as_ref(),
            manual: self.manual.as_ref(),
            annotations: self.annotations.as_ref(),
        }
    }

    fn run(&self) -> Result<Runs> {
        let res = self.resources();
        Ok(match &self.dataset {
            Dataset::Wsc(insts) => Runs::Wsc(solve_wsc(insts, &self.config.solve, &res)?),
            Dataset::Copa(insts) => Runs::Copa(solve_copa(insts, &self.config.solve, &res)?),
        })
    }

    fn retain(&mut self, id: &str) -> Result<()> {
        let found = match &mut self.dataset {
            Dataset::Wsc(xs) => {
                xs.retain(|x| x.id == id);
                !xs.is_empty()
            }
            Dataset::Copa(xs) => {
                xs.retain(|x| x.id == id);
                !xs.is_empty()
            }
        };
        if !found {
            return Err(Error::UnknownInstance(id.to_string()).into());
        }
        Ok(())
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("cannot create `{}`", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json_lines<T: serde::Serialize>(out: &mut dyn Write, items: impl IntoIterator<Item = T>) -> Result<()> {
    for item in items {
        serde_json::to_writer(&mut *out, &item)?;
        writeln!(out)?;
    }
    Ok(())
}

fn cmd_index(corpus_dir: &Path, out: &Path) -> Result<()> {
    if !corpus_dir.is_dir() {
        bail!("corpus directory `{}` does not exist", corpus_dir.display());
    }
    let index = build_index(corpus_dir)?;
    index.save(out)?;
    eprintln!("indexed {} documents into {}", index.len(), out.display());
    Ok(())
}

fn cmd_solve(args: &RunArgs, out: Option<&Path>, evidence_out: Option<&Path>) -> Result<()> {
    let loaded = Loaded::new(args)?;
    let runs = loaded.run()?;
    let mut w = output(out)?;
    write_json_lines(&mut *w, loaded_records(&runs))?;
    w.flush()?;
    if let Some(path) = evidence_out {
        let Runs::Wsc(rs) = &runs else {
            bail!("--evidence-out applies to WSC runs only");
        };
        let mut w = output(Some(path))?;
        let records = rs
            .iter()
            .flat_map(|r| r.evidence.iter().map(|e| EvidenceRecord::new(&r.resolution.instance_id, e)));
        write_json_lines(&mut *w, records)?;
        w.flush()?;
    }
    Ok(())
}

fn loaded_records(runs: &Runs) -> Vec<ResolutionRecord> {
    runs.resolutions().iter().map(ResolutionRecord::from).collect()
}

fn cmd_eval(args: &RunArgs, report_path: Option<&Path>, format: ReportFormat) -> Result<()> {
    let loaded = Loaded::new(args)?;
    let runs = loaded.run()?;
    let resolutions = runs.resolutions();
    let report: EvalReport<f64> = match &loaded.dataset {
        Dataset::Wsc(insts) => {
            let gold: HashMap<String, Answer> = insts
                .iter()
                .filter_map(|i| i.answer.map(|a| (i.id.clone(), a)))
                .collect();
            evaluate_wsc(&resolutions, &gold)?
        }
        Dataset::Copa(insts) => {
            let gold: HashMap<String, CopaAnswer> = insts
                .iter()
                .filter_map(|i| i.answer.map(|a| (i.id.clone(), a)))
                .collect();
            evaluate_copa(&resolutions, &gold)?
        }
    };
    if let Some(path) = report_path {
        let mut w = output(Some(path))?;
        emit_report(&report, format, &mut w).with_context(|| format!("cannot write `{}`", path.display()))?;
        w.flush()?;
    }
    println!("{}", report.summary_line());
    Ok(())
}

fn cmd_inspect(args: &RunArgs, id: &str, json: bool) -> Result<()> {
    let mut loaded = Loaded::new(args)?;
    loaded.retain(id)?;
    let runs = loaded.run()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match &runs {
        Runs::Wsc(rs) => {
            let run = &rs[0];
            if let Some(reason) = &run.skipped {
                writeln!(out, "{id}: skipped: {reason}")?;
            }
            if json {
                write_json_lines(&mut out, run.evidence.iter().map(|e| EvidenceRecord::new(id, e)))?;
            } else if run.evidence.is_empty() {
                writeln!(out, "{id}: no evidence")?;
            } else {
                for e in &run.evidence {
                    let pattern = e.parse.pattern.map_or("-".to_string(), |p| format!("{p:?}"));
                    writeln!(
                        out,
                        "{}\tstrength={}\tpattern={}\tcoref={:?}\tvoice={:?}\tcausative={}\t{}\t{}",
                        e.label,
                        e.strength,
                        pattern,
                        e.parse.coref_target,
                        e.parse.voice(),
                        e.parse.causative,
                        e.snippet.doc_id,
                        e.snippet.text
                    )?;
                }
            }
            let r = &run.resolution;
            writeln!(
                out,
                "{id}: {} (agent={} patient={})",
                r.decision, r.first_strength, r.second_strength
            )?;
        }
        Runs::Copa(rs) => {
            let run = &rs[0];
            if let Some(reason) = &run.skipped {
                writeln!(out, "{id}: skipped: {reason}")?;
            }
            if run.alt1.is_empty() && run.alt2.is_empty() {
                writeln!(out, "{id}: no evidence")?;
            }
            for (name, list) in [("alt1", &run.alt1), ("alt2", &run.alt2)] {
                for s in list {
                    if json {
                        serde_json::to_writer(&mut out, s)?;
                        writeln!(out)?;
                    } else {
                        writeln!(out, "{name}\tstrength={}\t{}\t{}", s.strength, s.snippet.doc_id, s.snippet.text)?;
                    }
                }
            }
            let r = &run.resolution;
            writeln!(out, "{id}: {} (alt1={} alt2={})", r.decision, r.first_strength, r.second_strength)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Index { corpus_dir, out } => cmd_index(corpus_dir, out),
        Command::Solve {
            run,
            out,
            evidence_out,
        } => cmd_solve(run, out.as_deref(), evidence_out.as_deref()),
        Command::Eval {
            run,
            report,
            report_format,
        } => cmd_eval(run, report.as_deref(), *report_format),
        Command::Inspect { run, id, json } => cmd_inspect(run, id, *json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

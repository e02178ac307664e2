//! Per-instance orchestration of the four stages.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evalharness::CopaInstance;
use crate::evidence::{analyze, score_snippet, EvidenceContext, EvidenceSentence, ScoreWeights, ScoredSnippet};
use crate::lexicon::Lexicon;
use crate::querygen::{
    augment_synonyms, build_auto, build_copa, expand, semantic_filter, ManualQueries, PlanError, QueryGroup,
    QueryMode, QueryPlan, Relation, DEFAULT_ALPHA,
};
use crate::resolver::{backoff_random, decide_copa, decide_wsc, Resolution, Task};
use crate::retrieval::{SearchProvider, Snippet, DEFAULT_LIMIT};
use crate::schema::{annotate, decompose, ExternalAnnotations, ProblemInstance, SchemaInstance};

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub mode: QueryMode,
    pub alpha: f64,
    pub limit: usize,
    pub weights: ScoreWeights,
    pub force_label: bool,
    /// Seed for the random back-off; `None` keeps abstentions.
    pub backoff_seed: Option<u64>,
    pub jobs: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: QueryMode::Agq,
            alpha: DEFAULT_ALPHA,
            limit: DEFAULT_LIMIT,
            weights: ScoreWeights::default(),
            force_label: false,
            backoff_seed: None,
            jobs: 1,
        }
    }
}

/// Everything a run reads besides the instances themselves.
pub struct Resources<'a> {
    pub lexicon: &'a Lexicon,
    pub provider: &'a dyn SearchProvider,
    pub manual: Option<&'a ManualQueries>,
    pub annotations: Option<&'a ExternalAnnotations>,
}

#[derive(Debug, Clone)]
pub struct WscRun {
    pub resolution: Resolution,
    pub schema: Option<SchemaInstance>,
    pub plan: Option<QueryPlan>,
    pub evidence: Vec<EvidenceSentence>,
    /// Why the instance never reached retrieval.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone)]
pub struct CopaRun {
    pub resolution: Resolution,
    pub plan: Option<QueryPlan>,
    pub alt1: Vec<ScoredSnippet>,
    pub alt2: Vec<ScoredSnippet>,
    pub skipped: Option<String>,
}

/// The plan for one instance under `config.mode`.
pub fn plan_for(schema: &SchemaInstance, config: &SolveConfig, res: &Resources<'_>) -> Result<QueryPlan> {
    let auto = build_auto(schema)?;
    let plan = match config.mode {
        QueryMode::Agq => auto,
        QueryMode::Agqs => augment_synonyms(&auto, &res.lexicon.taxonomy)?,
        QueryMode::Agqsf => semantic_filter(
            &augment_synonyms(&auto, &res.lexicon.taxonomy)?,
            &res.lexicon.taxonomy,
            config.alpha,
        ),
        QueryMode::Mgq => {
            let manual = res
                .manual
                .ok_or_else(|| Error::Config("manual query mode needs a manual query file".into()))?;
            manual.plan(schema)?
        }
    };
    Ok(plan)
}

fn retrieve(plan: &QueryPlan, provider: &dyn SearchProvider, limit: usize) -> Result<Vec<Snippet>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for query in expand(plan) {
        for s in provider.search(&query, limit)? {
            if seen.insert((s.group, s.doc_id.clone(), s.text.clone())) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

fn skip_reason(e: &Error) -> Option<String> {
    match e {
        Error::Schema(_) | Error::Plan(PlanError::EmptyContext(_) | PlanError::EmptyQuery(_) | PlanError::NoVerb(_))
        | Error::Plan(PlanError::MissingManual(_)) | Error::Plan(PlanError::EmptySentence) => Some(e.to_string()),
        _ => None,
    }
}

pub fn solve_wsc_instance(inst: &ProblemInstance, config: &SolveConfig, res: &Resources<'_>) -> Result<WscRun> {
    let skipped = |reason: String, schema: Option<SchemaInstance>| {
        log::warn!("{}: skipped: {reason}", inst.id);
        WscRun {
            resolution: Resolution::skipped(&inst.id, Task::Wsc),
            schema,
            plan: None,
            evidence: Vec::new(),
            skipped: Some(reason),
        }
    };
    let external = res.annotations.and_then(|a| a.get(&inst.id)).map(Vec::as_slice);
    let tokens = annotate(&inst.text, &res.lexicon.pos, external)?;
    let schema = match decompose(inst, &tokens) {
        Ok(s) => s,
        Err(e) => return Ok(skipped(Error::from(e).to_string(), None)),
    };
    let plan = match plan_for(&schema, config, res) {
        Ok(p) => p,
        Err(e) => match skip_reason(&e) {
            Some(reason) => return Ok(skipped(reason, Some(schema))),
            None => return Err(e),
        },
    };
    let ctx = EvidenceContext {
        lexicon: res.lexicon,
        pronoun_before_pred_q: schema.pronoun_before_pred_q,
        weights: config.weights,
        force_label: config.force_label,
    };
    let evidence = retrieve(&plan, res.provider, config.limit)?
        .iter()
        .map(|s| analyze(s, &ctx))
        .collect::<Result<Vec<_>>>()?;
    let mut resolution = decide_wsc(&inst.id, &evidence);
    if let Some(seed) = config.backoff_seed {
        resolution = backoff_random(&resolution, seed);
    }
    Ok(WscRun {
        resolution,
        schema: Some(schema),
        plan: Some(plan),
        evidence,
        skipped: None,
    })
}

pub fn solve_copa_instance(inst: &CopaInstance, config: &SolveConfig, res: &Resources<'_>) -> Result<CopaRun> {
    let plan = match build_copa(&inst.premise, &inst.alt1, &inst.alt2, inst.relation, res.lexicon) {
        Ok(p) => p,
        Err(e) => match skip_reason(&e) {
            Some(reason) => {
                log::warn!("{}: skipped: {reason}", inst.id);
                return Ok(CopaRun {
                    resolution: Resolution::skipped(&inst.id, Task::Copa),
                    plan: None,
                    alt1: Vec::new(),
                    alt2: Vec::new(),
                    skipped: Some(reason),
                });
            }
            None => return Err(e),
        },
    };
    let expected_c_first = inst.relation == Relation::Cause;
    let (mut alt1, mut alt2) = (Vec::new(), Vec::new());
    for snippet in retrieve(&plan, res.provider, config.limit)? {
        let s = score_snippet(&snippet, expected_c_first, &config.weights);
        let scored = ScoredSnippet {
            snippet,
            len_score: s.len_score,
            order_score: s.order_score,
            strength: s.strength,
        };
        match scored.snippet.group {
            QueryGroup::Alt2 => alt2.push(scored),
            _ => alt1.push(scored),
        }
    }
    let mut resolution = decide_copa(&inst.id, &alt1, &alt2, inst.relation);
    if let Some(seed) = config.backoff_seed {
        resolution = backoff_random(&resolution, seed);
    }
    Ok(CopaRun {
        resolution,
        plan: Some(plan),
        alt1,
        alt2,
        skipped: None,
    })
}

fn run_parallel<I, O, F>(items: &[I], jobs: usize, f: F) -> Result<Vec<O>>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> Result<O> + Sync + Send,
{
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {jobs} worker threads: {e}")))?;
    pool.install(|| items.par_iter().map(f).collect())
}

/// Solves every instance; results are ordered by instance id whatever the
/// number of workers.
pub fn solve_wsc(instances: &[ProblemInstance], config: &SolveConfig, res: &Resources<'_>) -> Result<Vec<WscRun>> {
    let mut runs = run_parallel(instances, config.jobs, |i| solve_wsc_instance(i, config, res))?;
    runs.sort_by(|a, b| a.resolution.instance_id.cmp(&b.resolution.instance_id));
    Ok(runs)
}

pub fn solve_copa(instances: &[CopaInstance], config: &SolveConfig, res: &Resources<'_>) -> Result<Vec<CopaRun>> {
    let mut runs = run_parallel(instances, config.jobs, |i| solve_copa_instance(i, config, res))?;
    runs.sort_by(|a, b| a.resolution.instance_id.cmp(&b.resolution.instance_id));
    Ok(runs)
}

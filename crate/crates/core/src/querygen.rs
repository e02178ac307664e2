//! Query sets and concrete search queries.
//!
//! A plan holds the candidate entries for `Term_C` and `Term_Q` (or
//! `Term_Q1`/`Term_Q2` for COPA). Every query is the pair
//! `+Term_C +Term_Q -"Winograd" -E1`.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::lexicon::{Lexicon, Taxonomy};
use crate::scalar::Real;
use crate::schema::{annotate, serde_field, Pos, SchemaInstance, TokenAnnotation};
use crate::text::{contains_phrase, is_clause_break, normalize, phrase_tokens};

/// Most entries kept per query set.
pub const MAX_TERMS: usize = 5;

pub const WINOGRAD_EXCLUSION: &str = "Winograd";

pub const DEFAULT_ALPHA: f64 = 0.7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("instance `{0}`: empty context predicate")]
    EmptyContext(String),
    #[error("instance `{0}`: empty query predicate")]
    EmptyQuery(String),
    #[error("no verb found in `{0}`")]
    NoVerb(String),
    #[error("empty sentence")]
    EmptySentence,
    #[error("synonym augmentation needs an automatic plan, got {0}")]
    Mode(QueryMode),
    #[error("no manual queries for instance `{0}`")]
    MissingManual(String),
}

/// How a plan was produced: automatic, automatic with synonyms, automatic
/// with synonyms and the similarity filter, or manual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QueryMode {
    #[serde(rename = "AGQ")]
    Agq,
    #[serde(rename = "AGQS")]
    Agqs,
    #[serde(rename = "AGQSF")]
    Agqsf,
    #[serde(rename = "MGQ")]
    Mgq,
}

impl fmt::Display for QueryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QueryMode::Agq => "AGQ",
            QueryMode::Agqs => "AGQS",
            QueryMode::Agqsf => "AGQSF",
            QueryMode::Mgq => "MGQ",
        })
    }
}

impl FromStr for QueryMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "auto" | "agq" => Ok(QueryMode::Agq),
            "auto-syn" | "agqs" => Ok(QueryMode::Agqs),
            "auto-syn-filter" | "agqsf" => Ok(QueryMode::Agqsf),
            "manual" | "mgq" => Ok(QueryMode::Mgq),
            other => Err(format!(
                "unknown query mode `{other}` (expected auto, auto-syn, auto-syn-filter or manual)"
            )),
        }
    }
}

/// What a COPA question asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Cause,
    Result,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub text: String,
    /// Tag of a single-word term, when known.
    pub pos: Option<Pos>,
}

impl Term {
    pub fn new(text: impl Into<String>, pos: Option<Pos>) -> Self {
        Term {
            text: text.into(),
            pos,
        }
    }

    pub fn token_count(&self) -> usize {
        phrase_tokens(&self.text).len()
    }

    pub fn is_single_word(&self) -> bool {
        self.token_count() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryPlan {
    pub c_terms: Vec<Term>,
    pub q_terms: Vec<Term>,
    /// Second alternative's set; COPA only.
    pub q2_terms: Option<Vec<Term>>,
    pub exclusions: Vec<String>,
    pub mode: QueryMode,
    /// COPA only.
    pub relation: Option<Relation>,
}

impl QueryPlan {
    pub fn c_texts(&self) -> Vec<&str> {
        self.c_terms.iter().map(|t| t.text.as_str()).collect()
    }

    pub fn q_texts(&self) -> Vec<&str> {
        self.q_terms.iter().map(|t| t.text.as_str()).collect()
    }

    pub fn q2_texts(&self) -> Vec<&str> {
        self.q2_terms
            .iter()
            .flatten()
            .map(|t| t.text.as_str())
            .collect()
    }
}

/// Which side of the problem a query gathers evidence for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryGroup {
    Wsc,
    Alt1,
    Alt2,
}

/// Required relative order of the two matched terms in a snippet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermOrder {
    Any,
    CBeforeQ,
    QBeforeC,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchQuery {
    pub term_c: String,
    pub term_q: String,
    pub exclusions: Vec<String>,
    pub ordering: TermOrder,
    pub group: QueryGroup,
}

impl fmt::Display for SearchQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "+\"{}\" +\"{}\"", self.term_c, self.term_q)?;
        for ex in &self.exclusions {
            write!(f, " -\"{ex}\"")?;
        }
        Ok(())
    }
}

/// True when `term` equals or contains `exclusion` as a token sequence,
/// ignoring case.
pub fn contains_exclusion(term: &str, exclusion: &str) -> bool {
    contains_phrase(&phrase_tokens(term), &phrase_tokens(exclusion))
}

/// Case-insensitive dedupe, exclusion removal, longest-first ordering and
/// the size cap.
fn finish_set(terms: Vec<Term>, exclusions: &[String]) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for t in terms {
        if t.text.trim().is_empty()
            || exclusions.iter().any(|e| contains_exclusion(&t.text, e))
            || out.iter().any(|o| normalize(&o.text) == normalize(&t.text))
        {
            continue;
        }
        out.push(t);
    }
    sort_longest_first(&mut out);
    out.truncate(MAX_TERMS);
    out
}

fn sort_longest_first(terms: &mut [Term]) {
    terms.sort_by_key(|t| std::cmp::Reverse((t.token_count(), t.text.chars().count())));
}

fn wsc_exclusions(schema: &SchemaInstance) -> Vec<String> {
    let mut ex = vec![WINOGRAD_EXCLUSION.to_string()];
    let head = schema.e1_head();
    if !head.is_empty() {
        ex.push(head);
    }
    ex
}

fn clause_terms(pred: &[TokenAnnotation], phrase: &str, clause: &[TokenAnnotation]) -> Vec<Term> {
    let mut terms = vec![Term::new(phrase, None)];
    terms.extend(
        pred.iter()
            .filter(|t| t.pos == Pos::Verb)
            .map(|t| Term::new(t.token.clone(), Some(Pos::Verb))),
    );
    terms.extend(
        clause
            .iter()
            .filter(|t| t.pos == Pos::Adj)
            .map(|t| Term::new(t.token.clone(), Some(Pos::Adj))),
    );
    terms
}

/// Automatic query sets: each predicate phrase, its main verbs, and the
/// adjectives of its clause.
pub fn build_auto(schema: &SchemaInstance) -> std::result::Result<QueryPlan, PlanError> {
    if schema.pred_c.is_empty() {
        return Err(PlanError::EmptyContext(schema.id.clone()));
    }
    if schema.pred_q.is_empty() {
        return Err(PlanError::EmptyQuery(schema.id.clone()));
    }
    let exclusions = wsc_exclusions(schema);
    let c = finish_set(
        clause_terms(&schema.pred_c.tokens, &schema.pred_c.text, &schema.context),
        &exclusions,
    );
    let q = finish_set(
        clause_terms(&schema.pred_q.tokens, &schema.pred_q.text, &schema.query),
        &exclusions,
    );
    if c.is_empty() {
        return Err(PlanError::EmptyContext(schema.id.clone()));
    }
    if q.is_empty() {
        return Err(PlanError::EmptyQuery(schema.id.clone()));
    }
    Ok(QueryPlan {
        c_terms: c,
        q_terms: q,
        q2_terms: None,
        exclusions,
        mode: QueryMode::Agq,
        relation: None,
    })
}

fn augment_set(terms: &[Term], taxonomy: &Taxonomy, exclusions: &[String]) -> Vec<Term> {
    let mut out = terms.to_vec();
    for t in terms {
        let Some(pos @ (Pos::Verb | Pos::Adj)) = t.pos else {
            continue;
        };
        if !t.is_single_word() {
            continue;
        }
        for syn in taxonomy.synonyms(&t.text, pos) {
            if out.len() >= MAX_TERMS {
                break;
            }
            let fresh = !out.iter().any(|o| normalize(&o.text) == normalize(&syn))
                && !exclusions.iter().any(|e| contains_exclusion(&syn, e));
            if fresh {
                out.push(Term::new(syn, Some(pos)));
            }
        }
    }
    sort_longest_first(&mut out);
    out
}

/// Adds the first-sense synonyms of every single-word verb or adjective.
/// Original terms are never displaced by the size cap.
pub fn augment_synonyms(
    plan: &QueryPlan,
    taxonomy: &Taxonomy,
) -> std::result::Result<QueryPlan, PlanError> {
    if plan.mode != QueryMode::Agq {
        return Err(PlanError::Mode(plan.mode));
    }
    Ok(QueryPlan {
        c_terms: augment_set(&plan.c_terms, taxonomy, &plan.exclusions),
        q_terms: augment_set(&plan.q_terms, taxonomy, &plan.exclusions),
        q2_terms: plan
            .q2_terms
            .as_ref()
            .map(|q2| augment_set(q2, taxonomy, &plan.exclusions)),
        mode: QueryMode::Agqs,
        ..plan.clone()
    })
}

/// Drops single-word terms whose best cross-set similarity falls below
/// `alpha` times the best similarity of any pair. Multi-word terms stay.
/// A set that would end up empty keeps its best-scoring term.
pub fn semantic_filter<T: Real>(plan: &QueryPlan, taxonomy: &Taxonomy, alpha: T) -> QueryPlan {
    let singles = |set: &[Term]| -> Vec<String> {
        set.iter()
            .filter(|t| t.is_single_word())
            .map(|t| t.text.clone())
            .collect()
    };
    let c_words = singles(&plan.c_terms);
    let mut q_words = singles(&plan.q_terms);
    if let Some(q2) = &plan.q2_terms {
        q_words.extend(singles(q2));
    }

    let mut best: HashMap<(usize, String), T> = HashMap::new();
    let mut s: Option<T> = None;
    for c in &c_words {
        for q in &q_words {
            let sim: T = taxonomy.word_similarity(c, q);
            for key in [(0, c.clone()), (1, q.clone())] {
                let e = best.entry(key).or_insert(sim);
                if sim > *e {
                    *e = sim;
                }
            }
            if s.is_none_or(|m| sim > m) {
                s = Some(sim);
            }
        }
    }
    let mut out = plan.clone();
    out.mode = QueryMode::Agqsf;
    let Some(s) = s else {
        return out;
    };
    let threshold = alpha * s;
    let filter = |set: &[Term], side: usize| -> Vec<Term> {
        let score = |t: &Term| best.get(&(side, t.text.clone())).copied();
        let kept: Vec<Term> = set
            .iter()
            .filter(|t| !t.is_single_word() || score(t).is_some_and(|v| v >= threshold))
            .cloned()
            .collect();
        if !kept.is_empty() {
            return kept;
        }
        let mut top: Option<(&Term, T)> = None;
        for t in set {
            if let Some(v) = score(t) {
                if top.is_none_or(|(_, b)| v > b) {
                    top = Some((t, v));
                }
            }
        }
        top.map(|(t, _)| vec![t.clone()]).unwrap_or_default()
    };
    out.c_terms = filter(&plan.c_terms, 0);
    out.q_terms = filter(&plan.q_terms, 1);
    out.q2_terms = plan.q2_terms.as_ref().map(|q2| filter(q2, 1));
    out
}

#[derive(Debug, Clone, Deserialize)]
struct ManualRecord {
    id: String,
    c_terms: Vec<String>,
    q_terms: Vec<String>,
}

/// Hand-written query sets keyed by instance id.
#[derive(Debug, Clone, Default)]
pub struct ManualQueries {
    entries: HashMap<String, (Vec<String>, Vec<String>)>,
}

impl ManualQueries {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(input: &str, source_name: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (index, line) in input.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let rec: ManualRecord = serde_json::from_str(line)
                .map_err(|e| Error::record(source_name, index, serde_field(&e), e.to_string()))?;
            entries.insert(rec.id, (rec.c_terms, rec.q_terms));
        }
        Ok(ManualQueries { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The manual plan for `schema.id`, in file order, capped at five terms
    /// per set.
    pub fn plan(&self, schema: &SchemaInstance) -> std::result::Result<QueryPlan, PlanError> {
        let (c, q) = self
            .entries
            .get(&schema.id)
            .ok_or_else(|| PlanError::MissingManual(schema.id.clone()))?;
        let exclusions = wsc_exclusions(schema);
        let take = |terms: &[String]| -> Vec<Term> {
            let mut out: Vec<Term> = Vec::new();
            for t in terms {
                let dup = out.iter().any(|o| normalize(&o.text) == normalize(t));
                if !dup && !t.trim().is_empty() && !exclusions.iter().any(|e| contains_exclusion(t, e)) {
                    out.push(Term::new(t.clone(), None));
                }
            }
            out.truncate(MAX_TERMS);
            out
        };
        let (c_terms, q_terms) = (take(c), take(q));
        if c_terms.is_empty() {
            return Err(PlanError::EmptyContext(schema.id.clone()));
        }
        if q_terms.is_empty() {
            return Err(PlanError::EmptyQuery(schema.id.clone()));
        }
        Ok(QueryPlan {
            c_terms,
            q_terms,
            q2_terms: None,
            exclusions,
            mode: QueryMode::Mgq,
            relation: None,
        })
    }
}

/// Reads the manual query file and returns the plan for one instance.
pub fn load_manual(path: &Path, schema: &SchemaInstance) -> Result<QueryPlan> {
    Ok(ManualQueries::load(path)?.plan(schema)?)
}

const DETERMINERS: &[&str] = &[
    "the", "a", "an", "this", "that", "these", "those", "each", "every", "some", "any", "all",
    "no", "another", "both", "either", "neither", "much", "many", "few", "several",
];

const LINKING_VERBS: &[&str] = &[
    "be", "get", "become", "seem", "feel", "look", "remain", "stay", "appear", "grow", "turn",
];

/// The three back-off levels of one COPA sentence: subject plus verb
/// phrase, the verb phrase alone, and its verbs or adjectives.
pub fn copa_levels(tokens: &[TokenAnnotation], text: &str) -> std::result::Result<Vec<Term>, PlanError> {
    if tokens.is_empty() {
        return Err(PlanError::EmptySentence);
    }
    let no_verb = || PlanError::NoVerb(text.trim().to_string());
    let gap = |i: usize| &text[tokens[i - 1].span.end..tokens[i].span.start];
    let v0 = tokens.iter().position(|t| t.is_verbal()).ok_or_else(no_verb)?;
    let mut v1 = v0 + 1;
    while v1 < tokens.len()
        && !is_clause_break(gap(v1))
        && (tokens[v1].is_verbal() || tokens[v1].is_negation())
    {
        v1 += 1;
    }
    let mut end = v1;
    while end < tokens.len() && !is_clause_break(gap(end)) {
        let t = &tokens[end];
        let np = matches!(t.pos, Pos::Noun | Pos::Adj | Pos::Pron) || t.is_one_of(DETERMINERS);
        if !np {
            break;
        }
        end += 1;
    }
    while end > v1 && tokens[end - 1].is_one_of(DETERMINERS) {
        end -= 1;
    }
    let mut start = v0;
    while start > 0 && !is_clause_break(gap(start)) {
        start -= 1;
    }
    let surface = |a: usize, b: usize| text[tokens[a].span.start..tokens[b - 1].span.end].to_string();

    let complement = &tokens[v1..end];
    let has_adj = complement.iter().any(|t| t.pos == Pos::Adj);
    let mut roots: Vec<Term> = tokens[v0..v1]
        .iter()
        .filter(|t| t.pos == Pos::Verb && !(has_adj && LINKING_VERBS.contains(&t.lemma.as_str())))
        .map(|t| Term::new(t.token.clone(), Some(Pos::Verb)))
        .collect();
    roots.extend(
        complement
            .iter()
            .filter(|t| t.pos == Pos::Adj)
            .map(|t| Term::new(t.token.clone(), Some(Pos::Adj))),
    );
    if roots.is_empty() {
        return Err(no_verb());
    }
    let mut levels = Vec::new();
    if start < v0 {
        levels.push(Term::new(surface(start, end), None));
    }
    levels.push(Term::new(surface(v0, end), None));
    levels.extend(roots);
    let mut out: Vec<Term> = Vec::new();
    for t in levels {
        if !out.iter().any(|o| normalize(&o.text) == normalize(&t.text)) {
            out.push(t);
        }
    }
    out.truncate(MAX_TERMS);
    Ok(out)
}

/// COPA query sets: `C` from the premise, `Q1` and `Q2` from the two
/// alternatives. No exclusions apply.
pub fn build_copa(
    premise: &str,
    alt1: &str,
    alt2: &str,
    relation: Relation,
    lexicon: &Lexicon,
) -> Result<QueryPlan> {
    let levels = |s: &str| -> Result<Vec<Term>> {
        let toks = annotate(s, &lexicon.pos, None)?;
        Ok(copa_levels(&toks, s)?)
    };
    Ok(QueryPlan {
        c_terms: levels(premise)?,
        q_terms: levels(alt1)?,
        q2_terms: Some(levels(alt2)?),
        exclusions: Vec::new(),
        mode: QueryMode::Agq,
        relation: Some(relation),
    })
}

/// The cross product of the plan's sets as concrete queries. Pairs whose
/// two terms coincide are skipped.
pub fn expand(plan: &QueryPlan) -> Vec<SearchQuery> {
    let ordering = match plan.relation {
        None => TermOrder::Any,
        Some(Relation::Cause) => TermOrder::CBeforeQ,
        Some(Relation::Result) => TermOrder::QBeforeC,
    };
    let mut groups = vec![(
        if plan.q2_terms.is_some() {
            QueryGroup::Alt1
        } else {
            QueryGroup::Wsc
        },
        &plan.q_terms,
    )];
    if let Some(q2) = &plan.q2_terms {
        groups.push((QueryGroup::Alt2, q2));
    }
    let mut out = Vec::new();
    for (group, q_terms) in groups {
        for c in &plan.c_terms {
            for q in q_terms {
                if normalize(&c.text) == normalize(&q.text) {
                    continue;
                }
                out.push(SearchQuery {
                    term_c: c.text.clone(),
                    term_q: q.text.clone(),
                    exclusions: plan.exclusions.clone(),
                    ordering,
                    group,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::{decompose, ProblemInstance};
    use crate::text::Span;
    use std::collections::BTreeSet;

    fn schema(text: &str, e1: (usize, usize), e2: (usize, usize), p: (usize, usize)) -> SchemaInstance {
        let lex = Lexicon::builtin();
        let inst = ProblemInstance {
            id: "x".into(),
            text: text.into(),
            e1: Span::new(e1.0, e1.1),
            e2: Span::new(e2.0, e2.1),
            pronoun: Span::new(p.0, p.1),
            answer: None,
            pair_id: "x".into(),
        };
        decompose(&inst, &annotate(text, &lex.pos, None).unwrap()).unwrap()
    }

    fn trophy() -> SchemaInstance {
        schema(
            "The trophy doesn't fit into the brown suitcase because it is too large.",
            (0, 10),
            (28, 46),
            (55, 57),
        )
    }

    fn set(v: Vec<&str>) -> BTreeSet<&str> {
        v.into_iter().collect()
    }

    fn plan(c: &[(&str, Option<Pos>)], q: &[(&str, Option<Pos>)]) -> QueryPlan {
        QueryPlan {
            c_terms: c.iter().map(|(t, p)| Term::new(*t, *p)).collect(),
            q_terms: q.iter().map(|(t, p)| Term::new(*t, *p)).collect(),
            q2_terms: None,
            exclusions: vec!["Winograd".into()],
            mode: QueryMode::Agq,
            relation: None,
        }
    }

    #[test]
    fn automatic_sets_for_trophy() {
        let s = trophy();
        assert_eq!(s.pred_c.text, "doesn't fit into");
        assert_eq!(s.pred_q.text, "is too large");
        let p = build_auto(&s).unwrap();
        assert_eq!(set(p.c_texts()), set(vec!["doesn't fit into", "brown", "fit"]));
        assert_eq!(set(p.q_texts()), set(vec!["large", "is too large"]));
        assert_eq!(p.c_texts()[0], "doesn't fit into");
        assert_eq!(p.exclusions, ["Winograd", "trophy"]);
    }

    #[test]
    fn synonyms_for_trophy() {
        let lex = Lexicon::builtin();
        let p = augment_synonyms(&build_auto(&trophy()).unwrap(), &lex.taxonomy).unwrap();
        assert_eq!(p.mode, QueryMode::Agqs);
        assert_eq!(
            set(p.c_texts()),
            set(vec!["doesn't fit into", "brown", "accommodate", "fit", "suit"])
        );
        assert_eq!(set(p.q_texts()), set(vec!["large", "big", "is too large"]));
        assert!(matches!(
            augment_synonyms(&p, &lex.taxonomy),
            Err(PlanError::Mode(QueryMode::Agqs))
        ));
    }

    #[test]
    fn augmentation_leaves_phrases_and_unknowns() {
        let lex = Lexicon::builtin();
        let p = plan(&[("couldn't lift", None)], &[("zzzz", Some(Pos::Verb))]);
        let a = augment_synonyms(&p, &lex.taxonomy).unwrap();
        assert_eq!(a.c_terms, p.c_terms);
        assert_eq!(a.q_terms, p.q_terms);
    }

    #[test]
    fn filter_keeps_bullying_and_punished() {
        let lex = Lexicon::builtin();
        let p = plan(
            &[
                ("bullying", Some(Pos::Verb)),
                ("younger", Some(Pos::Adj)),
                ("older", Some(Pos::Adj)),
            ],
            &[("punished", Some(Pos::Verb))],
        );
        let f = semantic_filter(&p, &lex.taxonomy, DEFAULT_ALPHA);
        assert_eq!(f.c_texts(), ["bullying"]);
        assert_eq!(f.q_texts(), ["punished"]);
        assert_eq!(f.mode, QueryMode::Agqsf);
    }

    #[test]
    fn filter_edge_cases() {
        let lex = Lexicon::builtin();
        let multi = plan(&[("were bullying", None)], &[("so weak", None)]);
        let f = semantic_filter(&multi, &lex.taxonomy, 0.7);
        assert_eq!(f.c_terms, multi.c_terms);
        assert_eq!(f.q_terms, multi.q_terms);
        let single = plan(&[("lift", None)], &[("weak", None)]);
        let f = semantic_filter(&single, &lex.taxonomy, 0.99);
        assert_eq!(f.c_texts(), ["lift"]);
        assert_eq!(f.q_texts(), ["weak"]);
    }

    #[test]
    fn automatic_sets_for_bullying() {
        let s = schema(
            "The older students were bullying the younger ones, so we punished them.",
            (0, 18),
            (33, 49),
            (66, 70),
        );
        let p = build_auto(&s).unwrap();
        assert!(p.c_texts().contains(&"were bullying"));
        assert!(p.c_texts().contains(&"bullying"));
        assert_eq!(p.q_texts(), ["punished"]);
        assert_eq!(p.exclusions, ["Winograd", "students"]);
    }

    #[test]
    fn empty_predicate_is_plan_error() {
        let mut s = trophy();
        s.pred_q.tokens.clear();
        assert_eq!(build_auto(&s), Err(PlanError::EmptyQuery("x".into())));
    }

    #[test]
    fn manual_plans() {
        let mut s = trophy();
        s.id = "wsc-007".into();
        let m = ManualQueries::parse(
            concat!(
                r#"{"id":"wsc-007","c_terms":["doesn't fit into","fit into","doesn't fit"],"q_terms":["is too large","too large","large"]}"#,
                "\n",
                r#"{"id":"long","c_terms":["a","b","c","d","e","f","g"],"q_terms":["x"]}"#
            ),
            "m",
        )
        .unwrap();
        let p = m.plan(&s).unwrap();
        assert_eq!(p.mode, QueryMode::Mgq);
        assert_eq!(p.c_texts(), ["doesn't fit into", "fit into", "doesn't fit"]);
        assert_eq!(p.q_texts(), ["is too large", "too large", "large"]);
        s.id = "long".into();
        assert_eq!(m.plan(&s).unwrap().c_terms.len(), 5);
        s.id = "absent".into();
        assert_eq!(m.plan(&s), Err(PlanError::MissingManual("absent".into())));
    }

    #[test]
    fn copa_backoff_levels() {
        let lex = Lexicon::builtin();
        let p = build_copa(
            "The climbers reached the peak of the mountain.",
            "They encountered an avalanche.",
            "They congratulated each other.",
            Relation::Result,
            &lex,
        )
        .unwrap();
        assert_eq!(p.c_texts(), ["The climbers reached the peak", "reached the peak", "reached"]);
        assert_eq!(
            p.q_texts(),
            ["They encountered an avalanche", "encountered an avalanche", "encountered"]
        );
        assert_eq!(
            p.q2_texts(),
            ["They congratulated each other", "congratulated each other", "congratulated"]
        );
        assert!(p.exclusions.is_empty());

        let rained = build_copa("It rained.", "The door opened.", "The ground got wet.", Relation::Result, &lex)
            .unwrap();
        assert_eq!(rained.c_texts(), ["It rained", "rained"]);
        assert_eq!(rained.q2_texts(), ["The ground got wet", "got wet", "wet"]);
        assert!(build_copa("It rained.", "", "x", Relation::Cause, &lex).is_err());
    }

    #[test]
    fn expansion_sizes_and_orders() {
        let p = plan(
            &[("a b", None), ("c", None), ("d", None)],
            &[("e", None), ("f g", None)],
        );
        let qs = expand(&p);
        assert_eq!(qs.len(), 6);
        assert!(qs.iter().all(|q| q.ordering == TermOrder::Any && q.group == QueryGroup::Wsc));
        let one = plan(&[("c", None)], &[("e", None)]);
        assert_eq!(expand(&one).len(), 1);

        let lex = Lexicon::builtin();
        let copa = build_copa("It rained.", "The door opened.", "The ground got wet.", Relation::Cause, &lex)
            .unwrap();
        let qs = expand(&copa);
        assert_eq!(qs.iter().filter(|q| q.group == QueryGroup::Alt1).count(), 2 * 2);
        assert_eq!(qs.iter().filter(|q| q.group == QueryGroup::Alt2).count(), 2 * 3);
        assert!(qs.iter().all(|q| q.ordering == TermOrder::CBeforeQ));
    }

    #[test]
    fn exclusion_matching_is_token_level() {
        assert!(contains_exclusion("the Trophy case", "trophy"));
        assert!(!contains_exclusion("mankind", "man"));
    }
}

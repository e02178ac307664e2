//! Winograd instances and their decomposition into a context predicate, a
//! query predicate, the target pronoun and the discourse connective.
//!
//! There is no dependency parser here. Predicates are recovered as maximal
//! runs of verbal tokens next to the candidates (context) or the pronoun
//! (query), which is enough for the sentence shapes Winograd schemas use.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::lexicon::PosLexicon;
pub use crate::lexicon::Pos;
use crate::text::{char_to_byte, is_clause_break, normalize, token_spans, Span};

/// Discourse connectives that split context from query, in match priority.
pub const CONNECTIVES: &[&[&str]] = &[
    &["and", "then"],
    &["because"],
    &["so"],
    &["but"],
    &["although"],
    &["since"],
    &["after"],
    &["before"],
];

pub const DEGREE_ADVERBS: &[&str] = &[
    "so", "too", "very", "really", "quite", "more", "most", "less", "least", "rather",
    "extremely", "pretty", "fairly", "somewhat", "even", "still", "just", "always", "never",
];

pub const PARTICLES: &[&str] = &[
    "to", "into", "onto", "up", "at", "off", "out", "on", "down", "over", "like", "away", "back",
];

pub const NEGATIONS: &[&str] = &["not", "never", "n't"];

pub const POSSESSIVE_DETERMINERS: &[&str] = &["my", "your", "his", "her", "its", "our", "their"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenAnnotation {
    pub token: String,
    pub lemma: String,
    pub pos: Pos,
    /// Byte offsets into the annotated text.
    pub span: Span,
}

impl TokenAnnotation {
    pub fn norm(&self) -> String {
        normalize(&self.token)
    }

    pub fn is_one_of(&self, words: &[&str]) -> bool {
        let n = self.norm();
        words.contains(&n.as_str())
    }

    pub fn is_negation(&self) -> bool {
        self.is_one_of(NEGATIONS)
    }

    pub fn is_degree(&self) -> bool {
        self.is_one_of(DEGREE_ADVERBS)
    }

    pub fn is_particle(&self) -> bool {
        self.is_one_of(PARTICLES)
    }

    pub fn is_verbal(&self) -> bool {
        matches!(self.pos, Pos::Verb | Pos::Aux)
    }
}

/// Which candidate a pronoun refers to: the subject-side `E1` (agent) or
/// the object-side `E2` (patient).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Agent,
    Patient,
}

/// One Winograd sentence with its candidates and target pronoun. Spans are
/// byte offsets into `text`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub id: String,
    pub text: String,
    pub e1: Span,
    pub e2: Span,
    pub pronoun: Span,
    pub answer: Option<Answer>,
    pub pair_id: String,
}

impl ProblemInstance {
    pub fn e1_text(&self) -> &str {
        self.e1.slice(&self.text)
    }

    pub fn e2_text(&self) -> &str {
        self.e2.slice(&self.text)
    }

    pub fn pronoun_text(&self) -> &str {
        self.pronoun.slice(&self.text)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpan {
    start: usize,
    end: usize,
}

#[derive(Deserialize)]
struct RawInstance {
    id: String,
    text: String,
    e1: RawSpan,
    e2: RawSpan,
    pronoun: RawSpan,
    #[serde(default)]
    answer: Option<Answer>,
    #[serde(default)]
    pair_id: Option<String>,
}

/// Pulls the offending field name out of a serde_json message such as
/// "missing field `text` at line 1 column 9".
pub(crate) fn serde_field(err: &serde_json::Error) -> String {
    let msg = err.to_string();
    msg.split('`')
        .nth(1)
        .filter(|_| msg.contains("field") || msg.contains("variant"))
        .unwrap_or("<record>")
        .to_string()
}

/// Reads a line-delimited JSON dataset of Winograd instances.
pub fn load_wsc(path: &Path) -> Result<Vec<ProblemInstance>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_wsc(&text, &path.display().to_string())
}

pub fn parse_wsc(input: &str, source_name: &str) -> Result<Vec<ProblemInstance>> {
    let mut out = Vec::new();
    for (index, line) in input.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        let raw: RawInstance = serde_json::from_str(line)
            .map_err(|e| Error::record(source_name, index, serde_field(&e), e.to_string()))?;
        let bad = |field: &str, msg: &str| Error::record(source_name, index, field, msg);
        let to_bytes = |field: &str, s: &RawSpan| -> Result<Span> {
            if s.start >= s.end {
                return Err(bad(field, "span is empty or reversed"));
            }
            let start = char_to_byte(&raw.text, s.start);
            let end = char_to_byte(&raw.text, s.end);
            match (start, end) {
                (Some(a), Some(b)) => Ok(Span::new(a, b)),
                _ => Err(bad(field, "span lies outside the text")),
            }
        };
        let e1 = to_bytes("e1", &raw.e1)?;
        let e2 = to_bytes("e2", &raw.e2)?;
        let pronoun = to_bytes("pronoun", &raw.pronoun)?;
        if e1.end > e2.start {
            return Err(bad("e2", "candidate spans overlap or e1 does not precede e2"));
        }
        if pronoun.overlaps(e1) || pronoun.overlaps(e2) {
            return Err(bad("pronoun", "pronoun span overlaps a candidate"));
        }
        out.push(ProblemInstance {
            pair_id: raw.pair_id.unwrap_or_else(|| raw.id.clone()),
            id: raw.id,
            text: raw.text,
            e1,
            e2,
            pronoun,
            answer: raw.answer,
        });
    }
    Ok(out)
}

/// A token supplied by an external annotator. Only the tag (and optionally
/// the lemma) is taken from it; offsets come from our own tokeniser.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalToken {
    pub token: String,
    #[serde(default)]
    pub lemma: Option<String>,
    pub pos: Pos,
}

/// External annotations keyed by instance id.
pub type ExternalAnnotations = HashMap<String, Vec<ExternalToken>>;

#[derive(Deserialize)]
struct RawAnnotation {
    id: String,
    tokens: Vec<ExternalToken>,
}

/// Reads `{id, tokens: [{token, lemma?, pos}]}` records.
pub fn load_annotations(path: &Path) -> Result<ExternalAnnotations> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path.display().to_string();
    let mut out = HashMap::new();
    for (index, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        let raw: RawAnnotation = serde_json::from_str(line)
            .map_err(|e| Error::record(&name, index, serde_field(&e), e.to_string()))?;
        out.insert(raw.id, raw.tokens);
    }
    Ok(out)
}

/// Tags every token of `text`. External annotations, when given, replace
/// the lexicon tags one-for-one and must have the same token count.
pub fn annotate(
    text: &str,
    lexicon: &PosLexicon,
    external: Option<&[ExternalToken]>,
) -> Result<Vec<TokenAnnotation>> {
    let spans = token_spans(text);
    if let Some(ext) = external {
        if ext.len() != spans.len() {
            return Err(Error::AnnotationMismatch {
                expected: spans.len(),
                found: ext.len(),
            });
        }
        return Ok(spans
            .iter()
            .zip(ext)
            .map(|(span, e)| TokenAnnotation {
                token: span.slice(text).to_string(),
                lemma: e.lemma.clone().unwrap_or_else(|| normalize(span.slice(text))),
                pos: e.pos,
                span: *span,
            })
            .collect());
    }
    let mut out = Vec::with_capacity(spans.len());
    let mut prev_end = 0;
    for (i, span) in spans.iter().enumerate() {
        let gap = &text[prev_end..span.start];
        let initial = i == 0 || gap.contains(['.', '!', '?']);
        let surface = span.slice(text);
        let (pos, lemma) = lexicon.tag(surface, initial);
        out.push(TokenAnnotation {
            token: surface.to_string(),
            lemma,
            pos,
            span: *span,
        });
        prev_end = span.end;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("instance `{0}`: no verb found in the context clause")]
    NoContextVerb(String),
    #[error("instance `{0}`: no predicate next to the pronoun")]
    NoQueryPredicate(String),
    #[error("instance `{0}`: no connective or comma separates the clauses")]
    NoClauseBoundary(String),
    #[error("instance `{0}`: the pronoun lies in the context clause")]
    PronounInContext(String),
    #[error("instance `{0}`: annotations do not cover the marked spans")]
    Annotation(String),
}

/// A contiguous token run with its surface text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phrase {
    pub text: String,
    pub tokens: Vec<TokenAnnotation>,
}

impl Phrase {
    fn from_run(text: &str, tokens: &[TokenAnnotation]) -> Self {
        let span = Span::new(tokens[0].span.start, tokens[tokens.len() - 1].span.end);
        Phrase {
            text: span.slice(text).to_string(),
            tokens: tokens.to_vec(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn span(&self) -> Option<Span> {
        Some(Span::new(
            self.tokens.first()?.span.start,
            self.tokens.last()?.span.end,
        ))
    }
}

/// The decomposed instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaInstance {
    pub id: String,
    pub e1: String,
    pub e2: String,
    pub pred_c: Phrase,
    pub pred_q: Phrase,
    pub pronoun: String,
    pub connective: Option<String>,
    pub pronoun_before_pred_q: bool,
    /// Tokens of the context clause, connective excluded.
    pub context: Vec<TokenAnnotation>,
    /// Tokens of the query clause, connective excluded.
    pub query: Vec<TokenAnnotation>,
    /// Byte offset where the query clause (or connective) starts.
    pub split: usize,
}

impl SchemaInstance {
    /// Head word of E1 (its last token), used as a search exclusion.
    pub fn e1_head(&self) -> String {
        token_spans(&self.e1)
            .last()
            .map(|s| s.slice(&self.e1).to_string())
            .unwrap_or_default()
    }
}

/// Splits `instance` into context and query clauses and extracts both
/// predicates.
pub fn decompose(
    instance: &ProblemInstance,
    tokens: &[TokenAnnotation],
) -> std::result::Result<SchemaInstance, SchemaError> {
    let id = || instance.id.clone();
    let text = instance.text.as_str();
    let in_span = |s: Span, t: &TokenAnnotation| s.contains(t.span);
    let pron_idx = tokens
        .iter()
        .position(|t| t.span.overlaps(instance.pronoun))
        .ok_or_else(|| SchemaError::Annotation(id()))?;

    // connective: first listed connective between E2 and the pronoun
    let mut connective: Option<(usize, usize)> = None;
    'scan: for i in 0..tokens.len() {
        let t = &tokens[i];
        if t.span.start < instance.e2.end || t.span.end > instance.pronoun.start {
            continue;
        }
        for conn in CONNECTIVES {
            let n = conn.len();
            if i + n <= pron_idx
                && tokens[i..i + n]
                    .iter()
                    .zip(conn.iter())
                    .all(|(t, w)| t.norm() == *w)
            {
                connective = Some((i, i + n));
                break 'scan;
            }
        }
    }

    let (split, query_start_byte, connective_text) = match connective {
        Some((a, b)) => (
            tokens[a].span.start,
            tokens[b - 1].span.end,
            Some(Span::new(tokens[a].span.start, tokens[b - 1].span.end).slice(text).to_string()),
        ),
        None => {
            let comma = text[..instance.pronoun.start]
                .rfind(',')
                .filter(|&c| c >= instance.e2.end)
                .ok_or_else(|| SchemaError::NoClauseBoundary(id()))?;
            (comma, comma + 1, None)
        }
    };
    if instance.pronoun.start < query_start_byte {
        return Err(SchemaError::PronounInContext(id()));
    }

    let ctx_end = tokens.iter().take_while(|t| t.span.end <= split).count();
    let q_begin = tokens
        .iter()
        .position(|t| t.span.start >= query_start_byte)
        .unwrap_or(tokens.len());

    let blocked_ctx =
        |i: usize| in_span(instance.e1, &tokens[i]) || in_span(instance.e2, &tokens[i]);
    let runs = gather_runs(text, tokens, 0..ctx_end, &blocked_ctx, context_member);
    let e1_first = tokens.iter().position(|t| in_span(instance.e1, t)).unwrap_or(0);
    let e2_first = tokens
        .iter()
        .position(|t| in_span(instance.e2, t))
        .unwrap_or(ctx_end);
    let e1_last = tokens
        .iter()
        .rposition(|t| in_span(instance.e1, t))
        .unwrap_or(0);
    let between = runs.iter().find(|r| r.0 > e1_last && r.1 <= e2_first);
    let before = runs.iter().rev().find(|r| r.1 <= e1_first);
    let after = runs.iter().find(|r| r.0 >= e2_first);
    let (a, b) = *between
        .or(before)
        .or(after)
        .ok_or_else(|| SchemaError::NoContextVerb(id()))?;
    let pred_c = Phrase::from_run(text, &tokens[a..b]);

    let pred_q_range = query_run(text, tokens, q_begin, pron_idx)
        .ok_or_else(|| SchemaError::NoQueryPredicate(id()))?;
    let pred_q = Phrase::from_run(text, &tokens[pred_q_range.0..pred_q_range.1]);

    Ok(SchemaInstance {
        id: id(),
        e1: instance.e1_text().to_string(),
        e2: instance.e2_text().to_string(),
        pred_c,
        pronoun_before_pred_q: pron_idx < pred_q_range.0,
        pred_q,
        pronoun: instance.pronoun_text().to_string(),
        connective: connective_text,
        context: tokens[..ctx_end].to_vec(),
        query: tokens[q_begin..].to_vec(),
        split,
    })
}

fn context_member(t: &TokenAnnotation, inside: bool) -> bool {
    t.is_verbal() || t.is_negation() || (inside && t.is_particle())
}

fn query_member(t: &TokenAnnotation, inside: bool) -> bool {
    t.is_verbal()
        || t.pos == Pos::Adj
        || t.is_negation()
        || t.is_degree()
        || (inside && t.is_particle())
}

/// Maximal runs `[a, b)` of member tokens inside `range`. Blocked tokens and
/// clause punctuation end a run. Runs without a verbal or adjectival head
/// are discarded.
fn gather_runs(
    text: &str,
    tokens: &[TokenAnnotation],
    range: std::ops::Range<usize>,
    blocked: &dyn Fn(usize) -> bool,
    member: fn(&TokenAnnotation, bool) -> bool,
) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut i = range.start;
    while i < range.end {
        if blocked(i) || !member(&tokens[i], false) {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < range.end
            && !blocked(j)
            && member(&tokens[j], true)
            && !is_clause_break(&text[tokens[j - 1].span.end..tokens[j].span.start])
        {
            j += 1;
        }
        if tokens[i..j]
            .iter()
            .any(|t| t.is_verbal() || t.pos == Pos::Adj)
        {
            runs.push((i, j));
        }
        i = j;
    }
    runs
}

/// The predicate run adjacent to the pronoun: preferably the one right
/// after it, else the one ending right before it. A possessive pronoun
/// first skips the noun phrase it determines.
fn query_run(
    text: &str,
    tokens: &[TokenAnnotation],
    q_begin: usize,
    pron_idx: usize,
) -> Option<(usize, usize)> {
    let never = |_: usize| false;
    let mut after_start = pron_idx + 1;
    if tokens[pron_idx].is_one_of(POSSESSIVE_DETERMINERS) {
        while after_start < tokens.len()
            && matches!(tokens[after_start].pos, Pos::Noun | Pos::Adj)
        {
            after_start += 1;
        }
    }
    let after = gather_runs(text, tokens, after_start..tokens.len(), &never, query_member)
        .into_iter()
        .next()
        .filter(|r| r.0 == after_start);
    if after.is_some() {
        return after;
    }
    gather_runs(text, tokens, q_begin..pron_idx, &never, query_member)
        .into_iter()
        .last()
        .filter(|r| r.1 == pron_idx)
}

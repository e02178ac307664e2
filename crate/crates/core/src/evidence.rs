//! Evidence sentences: slot filling, snippet-internal coreference, labels
//! and strengths.
//!
//! A snippet supports the agent or the patient of the original instance
//! depending on whether its query-side entity `E3'` corefers with the
//! context subject `E1'` or the context object `E2'`. Passive voice and
//! intransitive use of a causative-alternating verb flip that mapping.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lexicon::{Agreement, Gender, Lexicon, Number, Person, WordLists};
use crate::retrieval::Snippet;
use crate::schema::{annotate, Pos, TokenAnnotation, DEGREE_ADVERBS, POSSESSIVE_DETERMINERS};
use crate::text::{normalize, phrase_tokens, Span};

const OBJECT_DETERMINERS: &[&str] = &[
    "the", "a", "an", "this", "that", "these", "those", "each", "every", "some", "any", "all",
    "no", "another",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Voice {
    Active,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CorefTarget {
    E1p,
    E2p,
    Unresolved,
}

/// The four evidence structures. `Full*` have an object `E2'` after the
/// context predicate; `*Before`/`*After` give the side of `E3'` relative to
/// the query predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    /// `E1' Pred_C' E2' + E3' Pred_Q'`
    FullBefore,
    /// `E1' Pred_C' E2' + Pred_Q' E3'`
    FullAfter,
    /// `E1' Pred_C' + E3' Pred_Q'`
    ShortBefore,
    /// `E1' Pred_C' + Pred_Q' E3'`
    ShortAfter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    EA,
    EP,
    Insufficient,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::EA => "EA",
            Label::EP => "EP",
            Label::Insufficient => "insufficient",
        })
    }
}

/// An entity mention: a pronoun or a noun group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mention {
    pub text: String,
    /// Byte span inside the snippet text.
    pub span: Span,
    /// Head lemma; pronouns use their canonical form (`him` is `he`).
    pub lemma: String,
    #[serde(skip)]
    pub agreement: Option<Agreement>,
    pub pronoun: bool,
    /// `it` in `it hurts to`, `it was easy to`: fills a slot but refers to
    /// nothing.
    pub pleonastic: bool,
}

impl Mention {
    pub fn new(text: &str, span: Span, lemma: &str, agreement: Option<Agreement>, pronoun: bool) -> Self {
        Mention {
            text: text.to_string(),
            span,
            lemma: lemma.to_string(),
            agreement,
            pronoun,
            pleonastic: false,
        }
    }

    fn person(&self) -> Option<Person> {
        self.agreement.map(|a| a.person)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceParse {
    pub e1p: Option<Mention>,
    pub e2p: Option<Mention>,
    pub e3p: Option<Mention>,
    pub pred_cp: Span,
    pub pred_qp: Span,
    pub coref_target: CorefTarget,
    pub voice_c: Voice,
    pub voice_q: Voice,
    pub causative: bool,
    pub pattern: Option<Pattern>,
}

impl EvidenceParse {
    /// Passive when either matched predicate is passive.
    pub fn voice(&self) -> Voice {
        if self.voice_c == Voice::Passive || self.voice_q == Voice::Passive {
            Voice::Passive
        } else {
            Voice::Active
        }
    }
}

/// Points for the length and order features of an evidence sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreWeights {
    pub len_multi: u32,
    pub len_single: u32,
    pub order_agree: u32,
    pub order_disagree: u32,
}

impl Default for ScoreWeights {
    fn default() -> Self {
        ScoreWeights {
            len_multi: 2,
            len_single: 1,
            order_agree: 2,
            order_disagree: 1,
        }
    }
}

impl FromStr for ScoreWeights {
    type Err = String;

    /// `len2,len1,ord2,ord1`, e.g. `2,1,2,1`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| format!("weights `{s}`: {e}"))?;
        match parts[..] {
            [len_multi, len_single, order_agree, order_disagree] => Ok(ScoreWeights {
                len_multi,
                len_single,
                order_agree,
                order_disagree,
            }),
            _ => Err(format!("weights `{s}`: expected four comma-separated integers")),
        }
    }
}

/// Length and order features of a matched snippet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Score {
    pub len_score: u32,
    pub order_score: u32,
    pub strength: u32,
}

/// `LenScore` rewards a multi-word term on either side; `OrderScore`
/// rewards snippets whose term order matches the expected one.
pub fn score(
    term_c: &str,
    term_q: &str,
    c_first: bool,
    expected_c_first: bool,
    weights: &ScoreWeights,
) -> Score {
    let multi = phrase_tokens(term_c).len() > 1 || phrase_tokens(term_q).len() > 1;
    let len_score = if multi {
        weights.len_multi
    } else {
        weights.len_single
    };
    let order_score = if c_first == expected_c_first {
        weights.order_agree
    } else {
        weights.order_disagree
    };
    Score {
        len_score,
        order_score,
        strength: len_score + order_score,
    }
}

pub fn score_snippet(snippet: &Snippet, expected_c_first: bool, weights: &ScoreWeights) -> Score {
    score(
        &snippet.matched_term_c,
        &snippet.matched_term_q,
        snippet.c_first(),
        expected_c_first,
        weights,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceSentence {
    pub snippet: Snippet,
    pub parse: EvidenceParse,
    pub label: Label,
    pub len_score: u32,
    pub order_score: u32,
    pub strength: u32,
}

/// A snippet scored without labelling, as used for COPA.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoredSnippet {
    pub snippet: Snippet,
    pub len_score: u32,
    pub order_score: u32,
    pub strength: u32,
}

fn strip_negation(word: &str) -> String {
    let w = normalize(word);
    match w.strip_suffix("n't") {
        Some(stem) if !stem.is_empty() => stem.to_string(),
        _ => w,
    }
}

fn is_voice_aux_word(words: &WordLists, token: &TokenAnnotation) -> bool {
    words.ends_with_voice_auxiliary(&[strip_negation(&token.token)])
}

fn indices_in(tokens: &[TokenAnnotation], span: Span) -> std::ops::Range<usize> {
    let start = tokens
        .iter()
        .position(|t| span.contains(t.span))
        .unwrap_or(tokens.len());
    let end = start + tokens[start..].iter().take_while(|t| span.contains(t.span)).count();
    start..end
}

/// Passive when a voice auxiliary directly precedes the term's main verb.
/// Progressive `-ing` forms stay active.
pub fn term_voice(tokens: &[TokenAnnotation], term: Span, words: &WordLists) -> Voice {
    let range = indices_in(tokens, term);
    let main = range
        .clone()
        .find(|&i| tokens[i].pos == Pos::Verb && !is_voice_aux_word(words, &tokens[i]));
    let Some(i) = main else {
        return Voice::Active;
    };
    if tokens[i].norm().ends_with("ing") {
        return Voice::Active;
    }
    let preceding: Vec<String> = tokens[..i].iter().map(|t| strip_negation(&t.token)).collect();
    if words.ends_with_voice_auxiliary(&preceding) {
        Voice::Passive
    } else {
        Voice::Active
    }
}

/// True when a causative-alternating verb in the term has no object after
/// it, as in `the door opened`.
pub fn term_causative(tokens: &[TokenAnnotation], term: Span, words: &WordLists) -> bool {
    indices_in(tokens, term).any(|i| {
        let t = &tokens[i];
        if t.pos != Pos::Verb || !words.is_causative(&t.lemma) {
            return false;
        }
        match tokens.get(i + 1) {
            None => true,
            Some(next) => {
                let object = matches!(next.pos, Pos::Noun | Pos::Pron | Pos::Adj)
                    || next.is_one_of(OBJECT_DETERMINERS);
                !object
            }
        }
    })
}

fn noun_agreement(token: &TokenAnnotation) -> Agreement {
    let norm = token.norm();
    let plural = norm != token.lemma && norm.ends_with('s');
    Agreement {
        gender: Gender::Any,
        number: if plural { Number::Plural } else { Number::Singular },
        person: Person::Third,
    }
}

fn is_pleonastic(tokens: &[TokenAnnotation], i: usize) -> bool {
    if tokens[i].norm() != "it" {
        return false;
    }
    let rest = &tokens[i + 1..];
    let comp = |t: Option<&TokenAnnotation>| t.is_some_and(|t| t.is_one_of(&["to", "that"]));
    match rest {
        [v, tail @ ..] if v.pos == Pos::Verb => comp(tail.first()),
        [a, tail @ ..] if a.pos == Pos::Aux => {
            let mut k = 0;
            while k < tail.len() && tail[k].is_one_of(DEGREE_ADVERBS) {
                k += 1;
            }
            k < tail.len() && tail[k].pos == Pos::Adj && comp(tail.get(k + 1))
        }
        _ => false,
    }
}

/// Pronouns and noun groups outside the matched term spans, in text order.
pub fn mentions(text: &str, tokens: &[TokenAnnotation], blocked: &[Span], words: &WordLists) -> Vec<Mention> {
    let free = |i: usize| !blocked.iter().any(|b| b.overlaps(tokens[i].span));
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if !free(i) {
            i += 1;
            continue;
        }
        let t = &tokens[i];
        let agreement = words.pronoun(&t.token);
        if t.pos == Pos::Pron && agreement.is_some() {
            if t.is_one_of(POSSESSIVE_DETERMINERS) {
                let mut j = i + 1;
                while j < tokens.len() && free(j) && tokens[j].pos == Pos::Adj {
                    j += 1;
                }
                let k = j;
                while j < tokens.len() && free(j) && tokens[j].pos == Pos::Noun {
                    j += 1;
                }
                if j > k {
                    let head = &tokens[j - 1];
                    let span = Span::new(t.span.start, head.span.end);
                    out.push(Mention::new(span.slice(text), span, &head.lemma, Some(noun_agreement(head)), false));
                    i = j;
                    continue;
                }
            }
            let lemma = words.pronoun_lemma(&t.token).unwrap_or_default().to_string();
            let mut m = Mention::new(&t.token, t.span, &lemma, agreement, true);
            m.pleonastic = is_pleonastic(tokens, i);
            out.push(m);
            i += 1;
            continue;
        }
        if t.pos == Pos::Noun {
            let mut j = i + 1;
            while j < tokens.len() && free(j) && tokens[j].pos == Pos::Noun {
                j += 1;
            }
            let head = &tokens[j - 1];
            let span = Span::new(t.span.start, head.span.end);
            out.push(Mention::new(span.slice(text), span, &head.lemma, Some(noun_agreement(head)), false));
            i = j;
            continue;
        }
        i += 1;
    }
    out
}

/// Fills the `E1'`, `E2'` and `E3'` slots around the matched terms of a
/// snippet. `E3'` is looked for on the side of the query predicate where
/// the original instance has its pronoun. Coreference is left unresolved;
/// see [`resolve_coref`].
pub fn parse_evidence(
    snippet: &Snippet,
    tokens: &[TokenAnnotation],
    words: &WordLists,
    pronoun_before_pred_q: bool,
) -> EvidenceParse {
    let c = snippet.term_c_span;
    let q = snippet.term_q_span;
    let ms = mentions(&snippet.text, tokens, &[c, q], words);

    let e3 = if pronoun_before_pred_q {
        ms.iter().rposition(|m| m.span.end <= q.start)
    } else {
        ms.iter().position(|m| m.span.start >= q.end)
    };
    let e1 = ms
        .iter()
        .enumerate()
        .rev()
        .find(|(k, m)| Some(*k) != e3 && m.span.end <= c.start)
        .map(|(k, _)| k);
    let e2 = ms
        .iter()
        .enumerate()
        .find(|(k, m)| Some(*k) != e3 && Some(*k) != e1 && m.span.start >= c.end)
        .map(|(k, _)| k);

    let pattern = match (e1, e2, e3, pronoun_before_pred_q) {
        (Some(_), Some(_), Some(_), true) => Some(Pattern::FullBefore),
        (Some(_), Some(_), Some(_), false) => Some(Pattern::FullAfter),
        (Some(_), None, Some(_), true) => Some(Pattern::ShortBefore),
        (Some(_), None, Some(_), false) => Some(Pattern::ShortAfter),
        _ => None,
    };
    let pick = |k: Option<usize>| k.map(|k| ms[k].clone());
    EvidenceParse {
        e1p: pick(e1),
        e2p: if pattern.is_some() { pick(e2) } else { None },
        e3p: pick(e3),
        pred_cp: c,
        pred_qp: q,
        coref_target: CorefTarget::Unresolved,
        voice_c: term_voice(tokens, c, words),
        voice_q: term_voice(tokens, q, words),
        causative: term_causative(tokens, c, words) || term_causative(tokens, q, words),
        pattern,
    }
}

/// Resolves `E3'` to `E1'` or `E2'`: a unique exact head match, then
/// unique gender/number/person agreement for a pronoun `E3'`, then a
/// first-person chain. Anything else stays unresolved.
pub fn resolve_coref(parse: &EvidenceParse) -> CorefTarget {
    let Some(e3) = parse.e3p.as_ref().filter(|m| !m.pleonastic) else {
        return CorefTarget::Unresolved;
    };
    let candidates: Vec<(CorefTarget, &Mention)> = [
        (CorefTarget::E1p, parse.e1p.as_ref()),
        (CorefTarget::E2p, parse.e2p.as_ref()),
    ]
    .into_iter()
    .filter_map(|(t, m)| m.filter(|m| !m.pleonastic).map(|m| (t, m)))
    .collect();

    let unique = |pred: &dyn Fn(&Mention) -> bool| -> Option<CorefTarget> {
        let hits: Vec<CorefTarget> = candidates
            .iter()
            .filter(|(_, m)| pred(m))
            .map(|(t, _)| *t)
            .collect();
        match hits[..] {
            [one] => Some(one),
            _ => None,
        }
    };

    if let Some(t) = unique(&|m| !e3.lemma.is_empty() && m.lemma == e3.lemma) {
        return t;
    }
    if e3.pronoun {
        if let Some(a3) = e3.agreement {
            if let Some(t) = unique(&|m| m.agreement.is_some_and(|a| a.compatible(&a3))) {
                return t;
            }
        }
    }
    if e3.person() == Some(Person::First) {
        if let Some(t) = unique(&|m| m.person() == Some(Person::First)) {
            return t;
        }
    }
    CorefTarget::Unresolved
}

/// The label rules. Intransitive causatives override voice when `E3'`
/// refers to `E1'`.
pub fn label_for(target: CorefTarget, voice: Voice, causative: bool) -> Label {
    match (target, voice, causative) {
        (CorefTarget::Unresolved, ..) => Label::Insufficient,
        (CorefTarget::E1p, _, true) => Label::EP,
        (CorefTarget::E1p, Voice::Active, false) => Label::EA,
        (CorefTarget::E1p, Voice::Passive, false) => Label::EP,
        (CorefTarget::E2p, Voice::Passive, _) => Label::EA,
        (CorefTarget::E2p, Voice::Active, _) => Label::EP,
    }
}

pub fn label(parse: &EvidenceParse) -> Label {
    if parse.pattern.is_none() {
        return Label::Insufficient;
    }
    label_for(parse.coref_target, parse.voice(), parse.causative)
}

/// Like [`label`], but an unresolved sentence with a matched structure is
/// forced onto the candidate closest to `E3'`.
pub fn forced_label(parse: &EvidenceParse) -> Label {
    if parse.pattern.is_none() || parse.coref_target != CorefTarget::Unresolved {
        return label(parse);
    }
    let Some(e3) = &parse.e3p else {
        return Label::Insufficient;
    };
    let distance = |m: &Mention| {
        if m.span.end <= e3.span.start {
            e3.span.start - m.span.end
        } else {
            m.span.start.saturating_sub(e3.span.end)
        }
    };
    let nearest = [
        (CorefTarget::E1p, parse.e1p.as_ref()),
        (CorefTarget::E2p, parse.e2p.as_ref()),
    ]
    .into_iter()
    .filter_map(|(t, m)| m.map(|m| (distance(m), t)))
    .min_by_key(|(d, _)| *d);
    match nearest {
        Some((_, t)) => label_for(t, parse.voice(), parse.causative),
        None => Label::Insufficient,
    }
}

/// Settings shared by every snippet of one instance.
#[derive(Debug, Clone, Copy)]
pub struct EvidenceContext<'a> {
    pub lexicon: &'a Lexicon,
    pub pronoun_before_pred_q: bool,
    pub weights: ScoreWeights,
    pub force_label: bool,
}

/// Runs slot filling, coreference, labelling and scoring on one snippet.
pub fn analyze(snippet: &Snippet, ctx: &EvidenceContext<'_>) -> Result<EvidenceSentence> {
    let tokens = annotate(&snippet.text, &ctx.lexicon.pos, None)?;
    let mut parse = parse_evidence(snippet, &tokens, &ctx.lexicon.words, ctx.pronoun_before_pred_q);
    parse.coref_target = resolve_coref(&parse);
    let label = if ctx.force_label {
        forced_label(&parse)
    } else {
        label(&parse)
    };
    let s = score_snippet(snippet, true, &ctx.weights);
    Ok(EvidenceSentence {
        snippet: snippet.clone(),
        parse,
        label,
        len_score: s.len_score,
        order_score: s.order_score,
        strength: s.strength,
    })
}

/// One line of the evidence dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceRecord {
    pub instance_id: String,
    pub snippet_text: String,
    pub pattern: Option<Pattern>,
    pub coref_target: CorefTarget,
    pub voice: Voice,
    pub causative: bool,
    pub label: Label,
    pub strength: u32,
}

impl EvidenceRecord {
    pub fn new(instance_id: &str, e: &EvidenceSentence) -> Self {
        EvidenceRecord {
            instance_id: instance_id.to_string(),
            snippet_text: e.snippet.text.clone(),
            pattern: e.parse.pattern,
            coref_target: e.parse.coref_target,
            voice: e.parse.voice(),
            causative: e.parse.causative,
            label: e.label,
            strength: e.strength,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::querygen::QueryGroup;

    fn snippet(text: &str, c: &str, q: &str) -> Snippet {
        let find = |t: &str| {
            let s = text.find(t).unwrap_or_else(|| panic!("`{t}` not in `{text}`"));
            Span::new(s, s + t.len())
        };
        Snippet {
            text: text.into(),
            doc_id: "d".into(),
            term_c_span: find(c),
            term_q_span: find(q),
            matched_term_c: c.into(),
            matched_term_q: q.into(),
            group: QueryGroup::Wsc,
        }
    }

    fn run(text: &str, c: &str, q: &str, before: bool) -> EvidenceSentence {
        let lex = Lexicon::builtin();
        let ctx = EvidenceContext {
            lexicon: &lex,
            pronoun_before_pred_q: before,
            weights: ScoreWeights::default(),
            force_label: false,
        };
        analyze(&snippet(text, c, q), &ctx).unwrap()
    }

    #[test]
    fn call_example_slots() {
        let e = run(
            "He tried to call her but she wasn't available",
            "tried to call",
            "wasn't available",
            true,
        );
        let text = |m: &Option<Mention>| m.as_ref().map(|m| m.text.clone());
        assert_eq!(text(&e.parse.e1p).as_deref(), Some("He"));
        assert_eq!(text(&e.parse.e2p).as_deref(), Some("her"));
        assert_eq!(text(&e.parse.e3p).as_deref(), Some("she"));
        assert_eq!(e.parse.pattern, Some(Pattern::FullBefore));
        assert_eq!(e.parse.coref_target, CorefTarget::E2p);
        assert_eq!(e.label, Label::EP);
    }

    #[test]
    fn passive_and_causative_cues() {
        let lex = Lexicon::builtin();
        let toks = annotate("they are being bullied", &lex.pos, None).unwrap();
        assert_eq!(term_voice(&toks, Span::new(15, 22), &lex.words), Voice::Passive);
        let toks = annotate("they bullied", &lex.pos, None).unwrap();
        assert_eq!(term_voice(&toks, Span::new(5, 12), &lex.words), Voice::Active);
        let toks = annotate("they were bullying", &lex.pos, None).unwrap();
        assert_eq!(term_voice(&toks, Span::new(5, 18), &lex.words), Voice::Active);

        let toks = annotate("the door opened", &lex.pos, None).unwrap();
        assert!(term_causative(&toks, Span::new(9, 15), &lex.words));
        let toks = annotate("he opened the door", &lex.pos, None).unwrap();
        assert!(!term_causative(&toks, Span::new(3, 9), &lex.words));
    }

    #[test]
    fn lift_weak_labels() {
        let cases = [
            ("However I was so weak that I couldn't lift", "couldn't lift", "was so weak", Label::EA),
            ("She was so weak she couldn't lift", "lift", "was so weak", Label::EA),
            (
                "I could not stand without falling immediately and I was so weak that I couldn't lift",
                "couldn't lift",
                "was so weak",
                Label::EA,
            ),
            ("It hurts to lift my leg and its kind of weak", "lift", "weak", Label::EP),
        ];
        for (text, c, q, want) in cases {
            let e = run(text, c, q, true);
            assert_eq!(e.label, want, "{text}: {:?}", e.parse);
            assert_eq!(e.strength, 3, "{text}");
        }
    }

    #[test]
    fn pleonastic_it_is_never_an_antecedent() {
        let e = run("It hurts to lift my leg and its kind of weak", "lift", "weak", true);
        assert!(e.parse.e1p.as_ref().unwrap().pleonastic);
        assert_eq!(e.parse.e2p.as_ref().unwrap().lemma, "leg");
        assert_eq!(e.parse.coref_target, CorefTarget::E2p);
    }

    fn mention(word: &str) -> Mention {
        let lex = Lexicon::builtin();
        match lex.words.pronoun(word) {
            Some(a) => Mention::new(word, Span::new(0, 1), lex.words.pronoun_lemma(word).unwrap(), Some(a), true),
            None => Mention::new(
                word,
                Span::new(0, 1),
                word.rsplit(' ').next().unwrap(),
                Some(Agreement {
                    gender: Gender::Any,
                    number: Number::Singular,
                    person: Person::Third,
                }),
                false,
            ),
        }
    }

    fn parse_with(e1: &str, e2: Option<&str>, e3: &str) -> EvidenceParse {
        EvidenceParse {
            e1p: Some(mention(e1)),
            e2p: e2.map(mention),
            e3p: Some(mention(e3)),
            pred_cp: Span::new(0, 0),
            pred_qp: Span::new(0, 0),
            coref_target: CorefTarget::Unresolved,
            voice_c: Voice::Active,
            voice_q: Voice::Active,
            causative: false,
            pattern: Some(Pattern::FullBefore),
        }
    }

    #[test]
    fn coref_cascade() {
        assert_eq!(resolve_coref(&parse_with("He", Some("her"), "she")), CorefTarget::E2p);
        assert_eq!(resolve_coref(&parse_with("I", Some("the box"), "I")), CorefTarget::E1p);
        assert_eq!(resolve_coref(&parse_with("he", Some("him"), "he")), CorefTarget::Unresolved);
        assert_eq!(resolve_coref(&parse_with("we", Some("the box"), "my")), CorefTarget::E1p);
    }

    #[test]
    fn scoring_examples() {
        let w = ScoreWeights::default();
        let e = run(
            "She tried to call for him and then search for him herself, but wasn\u{2019}t successful",
            "tried to call",
            "wasn\u{2019}t successful",
            true,
        );
        assert_eq!((e.len_score, e.order_score, e.strength), (2, 2, 4));
        assert_eq!(score("tried", "successful", true, true, &w).strength, 3);
        assert_eq!(score("successful", "tried", false, false, &w).strength, 3);
        assert_eq!(score("lift", "weak", false, true, &w).strength, 2);
    }

    #[test]
    fn weights_parse() {
        assert_eq!("2,1,2,1".parse::<ScoreWeights>().unwrap(), ScoreWeights::default());
        assert!("2,1,2".parse::<ScoreWeights>().is_err());
        assert!("a,1,2,1".parse::<ScoreWeights>().is_err());
    }

    #[test]
    fn forced_labels_pick_nearest_candidate() {
        let mut p = parse_with("he", Some("him"), "he");
        p.e1p.as_mut().unwrap().span = Span::new(0, 2);
        p.e2p.as_mut().unwrap().span = Span::new(10, 13);
        p.e3p.as_mut().unwrap().span = Span::new(20, 22);
        p.coref_target = resolve_coref(&p);
        assert_eq!(label(&p), Label::Insufficient);
        assert_eq!(forced_label(&p), Label::EP);
        p.pattern = None;
        assert_eq!(forced_label(&p), Label::Insufficient);
    }
}

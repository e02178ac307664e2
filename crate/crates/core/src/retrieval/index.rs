use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::querygen::{SearchQuery, TermOrder};
use crate::text::{char_gap, normalize, phrase_tokens, sentence_spans, stem, token_spans, Span};

use super::{SearchProvider, Snippet, MAX_GAP_CHARS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub span: Span,
    pub sentence: usize,
    pub norm: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub text: String,
    pub sentences: Vec<Span>,
    pub(crate) tokens: Vec<Token>,
}

impl Document {
    fn new(doc_id: String, text: String) -> Self {
        let sentences = sentence_spans(&text);
        let mut tokens = Vec::new();
        let mut sentence = 0;
        for span in token_spans(&text) {
            while sentences[sentence].end <= span.start {
                sentence += 1;
            }
            tokens.push(Token {
                norm: normalize(span.slice(&text)),
                span,
                sentence,
            });
        }
        Document {
            doc_id,
            text,
            sentences,
            tokens,
        }
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }
}

/// One token occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Posting {
    pub doc: usize,
    pub sentence: usize,
    pub token: usize,
    /// Byte offset of the token in its document.
    pub offset: usize,
}

/// Inverted index over a set of documents. Postings are keyed by the
/// lower-cased surface token; a second map keyed by stem serves
/// single-word queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusIndex {
    pub(crate) docs: Vec<Document>,
    pub(crate) postings: BTreeMap<String, Vec<Posting>>,
    stems: BTreeMap<String, Vec<Posting>>,
}

/// Indexes every `.txt` file in `dir`, in file-name order.
pub fn build_index(dir: &Path) -> Result<CorpusIndex> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|x| x == "txt") {
            paths.push(path);
        }
    }
    paths.sort();
    let mut docs = Vec::with_capacity(paths.len());
    for path in paths {
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let id = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        docs.push((id, text));
    }
    log::info!("indexed {} documents from {}", docs.len(), dir.display());
    Ok(CorpusIndex::from_documents(docs))
}

struct Occurrence {
    span: Span,
    first_sentence: usize,
    last_sentence: usize,
}

impl CorpusIndex {
    pub fn from_documents<I, S, T>(docs: I) -> Self
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let docs: Vec<Document> = docs
            .into_iter()
            .map(|(id, text)| Document::new(id.into(), text.into()))
            .collect();
        let mut postings: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
        for (d, doc) in docs.iter().enumerate() {
            for (t, tok) in doc.tokens.iter().enumerate() {
                postings.entry(tok.norm.clone()).or_default().push(Posting {
                    doc: d,
                    sentence: tok.sentence,
                    token: t,
                    offset: tok.span.start,
                });
            }
        }
        let mut stems: BTreeMap<String, Vec<Posting>> = BTreeMap::new();
        for (word, list) in &postings {
            stems.entry(stem(word)).or_default().extend(list);
        }
        for list in stems.values_mut() {
            list.sort();
        }
        CorpusIndex {
            docs,
            postings,
            stems,
        }
    }

    pub fn documents(&self) -> &[Document] {
        &self.docs
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn postings(&self, token: &str) -> &[Posting] {
        self.postings
            .get(&normalize(token))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn vocabulary(&self) -> impl Iterator<Item = (&str, &[Posting])> {
        self.postings.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// Postings at which `phrase` starts. Single tokens match by stem,
    /// longer phrases by exact surface tokens.
    fn phrase_hits(&self, phrase: &[String]) -> Vec<Posting> {
        match phrase {
            [] => Vec::new(),
            [one] => self.stems.get(&stem(one)).cloned().unwrap_or_default(),
            [first, rest @ ..] => self
                .postings
                .get(first)
                .into_iter()
                .flatten()
                .filter(|p| {
                    let toks = &self.docs[p.doc].tokens;
                    p.token + rest.len() < toks.len()
                        && rest
                            .iter()
                            .enumerate()
                            .all(|(k, w)| toks[p.token + 1 + k].norm == *w)
                })
                .copied()
                .collect(),
        }
    }

    fn occurrences(&self, phrase: &[String]) -> BTreeMap<usize, Vec<Occurrence>> {
        let mut out: BTreeMap<usize, Vec<Occurrence>> = BTreeMap::new();
        for p in self.phrase_hits(phrase) {
            let toks = &self.docs[p.doc].tokens;
            let last = &toks[p.token + phrase.len() - 1];
            out.entry(p.doc).or_default().push(Occurrence {
                span: Span::new(p.offset, last.span.end),
                first_sentence: p.sentence,
                last_sentence: last.sentence,
            });
        }
        out
    }

    /// Snippets for `query`, ordered by document and offset.
    pub fn search_query(&self, query: &SearchQuery, limit: usize) -> Vec<Snippet> {
        let c_phrase = phrase_tokens(&query.term_c);
        let q_phrase = phrase_tokens(&query.term_q);
        let excluded: BTreeSet<usize> = query
            .exclusions
            .iter()
            .flat_map(|e| self.phrase_hits(&phrase_tokens(e)))
            .map(|p| p.doc)
            .collect();
        let c_occ = self.occurrences(&c_phrase);
        let q_occ = self.occurrences(&q_phrase);
        let mut out = Vec::new();
        for (&doc, cs) in &c_occ {
            let Some(qs) = q_occ.get(&doc) else {
                continue;
            };
            if excluded.contains(&doc) {
                continue;
            }
            let text = &self.docs[doc].text;
            // (first sentence, last sentence, c span, q span)
            let mut pairs = Vec::new();
            for c in cs {
                for q in qs {
                    if c.span.overlaps(q.span) {
                        continue;
                    }
                    let first = c.first_sentence.min(q.first_sentence);
                    let last = c.last_sentence.max(q.last_sentence);
                    if last - first > 1 {
                        continue;
                    }
                    let ordered = match query.ordering {
                        TermOrder::Any => true,
                        TermOrder::CBeforeQ => c.span.start < q.span.start,
                        TermOrder::QBeforeC => q.span.start < c.span.start,
                    };
                    let (a, b) = if c.span.start < q.span.start {
                        (c.span, q.span)
                    } else {
                        (q.span, c.span)
                    };
                    if ordered && char_gap(text, a.end, b.start) <= MAX_GAP_CHARS {
                        pairs.push((first, last, c.span, q.span));
                    }
                }
            }
            // single-sentence windows first, then sentence pairs that do not
            // reuse an already covered sentence
            pairs.sort_by_key(|&(f, l, c, q)| (l - f, c.start.min(q.start), c.start, q.start));
            let mut covered = BTreeSet::new();
            let mut picked = Vec::new();
            for (f, l, c, q) in pairs {
                if covered.contains(&f) || covered.contains(&l) {
                    continue;
                }
                covered.insert(f);
                covered.insert(l);
                picked.push((f, l, c, q));
            }
            picked.sort_by_key(|&(f, ..)| f);
            let sentences = &self.docs[doc].sentences;
            for (f, l, c, q) in picked {
                let start = sentences[f].start;
                let window = &text[start..sentences[l].end];
                out.push(Snippet {
                    text: window.trim_end().to_string(),
                    doc_id: self.docs[doc].doc_id.clone(),
                    term_c_span: c.shift_left(start),
                    term_q_span: q.shift_left(start),
                    matched_term_c: query.term_c.clone(),
                    matched_term_q: query.term_q.clone(),
                    group: query.group,
                });
            }
        }
        out.truncate(limit);
        out
    }
}

impl SearchProvider for CorpusIndex {
    fn search(&self, query: &SearchQuery, limit: usize) -> Result<Vec<Snippet>> {
        Ok(self.search_query(query, limit))
    }
}

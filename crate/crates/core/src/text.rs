//! Tokenisation, sentence splitting and the small amount of morphology
//! shared by the parser, the index and the evidence extractor.
//!
//! All spans are byte offsets into the text they were computed from. Input
//! files that carry character offsets are converted at load time.

use std::sync::OnceLock;

use rust_stemmers::{Algorithm, Stemmer};
use serde::{Deserialize, Serialize};

/// Half-open byte range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn slice<'a>(&self, text: &'a str) -> &'a str {
        &text[self.start..self.end]
    }

    pub fn shift_left(&self, by: usize) -> Span {
        Span::new(self.start - by, self.end - by)
    }
}

pub fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_apostrophe(c)
}

/// Maximal runs of letters, digits and apostrophes. Apostrophes at either
/// edge of a run are quotation marks, not part of the word, and are dropped.
pub fn token_spans(text: &str) -> Vec<Span> {
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        match (is_word_char(c), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                push_trimmed(text, s, i, &mut spans);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        push_trimmed(text, s, text.len(), &mut spans);
    }
    spans
}

fn push_trimmed(text: &str, mut start: usize, mut end: usize, out: &mut Vec<Span>) {
    let word = &text[start..end];
    let lead: usize = word
        .chars()
        .take_while(|c| is_apostrophe(*c))
        .map(char::len_utf8)
        .sum();
    start += lead;
    let trail: usize = text[start..end]
        .chars()
        .rev()
        .take_while(|c| is_apostrophe(*c))
        .map(char::len_utf8)
        .sum();
    end -= trail;
    if start < end {
        out.push(Span::new(start, end));
    }
}

/// Lower-cased form with typographic apostrophes folded to ASCII.
pub fn normalize(token: &str) -> String {
    token
        .chars()
        .map(|c| if c == '\u{2019}' { '\'' } else { c })
        .flat_map(char::to_lowercase)
        .collect()
}

/// Normalised tokens of a phrase, in order.
pub fn phrase_tokens(phrase: &str) -> Vec<String> {
    token_spans(phrase)
        .into_iter()
        .map(|s| normalize(s.slice(phrase)))
        .collect()
}

/// Sentence spans that partition `text`. A boundary falls after `.`, `!`
/// or `?` when the next non-space character is an upper-case letter.
pub fn sentence_spans(text: &str) -> Vec<Span> {
    if text.is_empty() {
        return Vec::new();
    }
    let mut starts = vec![0];
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (_, c) = chars[i];
        if matches!(c, '.' | '!' | '?') {
            let mut j = i + 1;
            let mut saw_space = false;
            while j < chars.len() && chars[j].1.is_whitespace() {
                saw_space = true;
                j += 1;
            }
            if saw_space && j < chars.len() && chars[j].1.is_uppercase() {
                starts.push(chars[j].0);
                i = j;
                continue;
            }
        }
        i += 1;
    }
    starts
        .iter()
        .enumerate()
        .map(|(k, &s)| Span::new(s, starts.get(k + 1).copied().unwrap_or(text.len())))
        .collect()
}

/// Number of characters strictly between byte offsets `from` and `to`.
pub fn char_gap(text: &str, from: usize, to: usize) -> usize {
    if to <= from {
        return 0;
    }
    text[from..to].chars().count()
}

/// Converts a character offset to a byte offset. `None` when out of range.
pub fn char_to_byte(text: &str, char_offset: usize) -> Option<usize> {
    if char_offset == text.chars().count() {
        return Some(text.len());
    }
    text.char_indices().nth(char_offset).map(|(b, _)| b)
}

/// True when the text between two tokens contains clause punctuation.
pub fn is_clause_break(gap: &str) -> bool {
    gap.chars()
        .any(|c| matches!(c, ',' | ';' | ':' | '.' | '!' | '?' | '(' | ')' | '"'))
}

/// Token-sequence containment, case-insensitive.
pub fn contains_phrase(haystack: &[String], needle: &[String]) -> bool {
    !needle.is_empty() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Snowball stem of a normalised token. Used for the lemma-insensitive
/// matching of single-word search terms.
pub fn stem(token: &str) -> String {
    static STEMMER: OnceLock<Stemmer> = OnceLock::new();
    STEMMER
        .get_or_init(|| Stemmer::create(Algorithm::English))
        .stem(&normalize(token))
        .into_owned()
}

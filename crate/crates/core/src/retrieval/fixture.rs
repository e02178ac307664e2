use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::querygen::SearchQuery;
use crate::schema::serde_field;
use crate::text::normalize;

use super::{CorpusIndex, SearchProvider, Snippet};

#[derive(Deserialize)]
struct RecordedSnippet {
    text: String,
    doc_id: String,
}

#[derive(Deserialize)]
struct FixtureRecord {
    term_c: String,
    term_q: String,
    snippets: Vec<RecordedSnippet>,
}

/// Replays recorded search results keyed by `(term_c, term_q)`. Every
/// recorded snippet is validated like a corpus hit; those that fail are
/// dropped and counted.
#[derive(Debug, Default)]
pub struct FixtureProvider {
    entries: HashMap<(String, String), Vec<(String, String)>>,
    dropped: AtomicUsize,
}

impl FixtureProvider {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(input: &str, source_name: &str) -> Result<Self> {
        let mut entries: HashMap<(String, String), Vec<(String, String)>> = HashMap::new();
        for (index, line) in input.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let rec: FixtureRecord = serde_json::from_str(line)
                .map_err(|e| Error::record(source_name, index, serde_field(&e), e.to_string()))?;
            entries
                .entry((normalize(&rec.term_c), normalize(&rec.term_q)))
                .or_default()
                .extend(rec.snippets.into_iter().map(|s| (s.doc_id, s.text)));
        }
        Ok(FixtureProvider {
            entries,
            dropped: AtomicUsize::new(0),
        })
    }

    /// Recorded snippets rejected by validation so far.
    pub fn dropped(&self) -> usize {
        self.dropped.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl SearchProvider for FixtureProvider {
    fn search(&self, query: &SearchQuery, limit: usize) -> Result<Vec<Snippet>> {
        let key = (normalize(&query.term_c), normalize(&query.term_q));
        let Some(recorded) = self.entries.get(&key) else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for (doc_id, text) in recorded {
            let single = CorpusIndex::from_documents([(doc_id.as_str(), text.as_str())]);
            match single.search_query(query, 1).into_iter().next() {
                Some(snippet) => out.push(snippet),
                None => {
                    self.dropped.fetch_add(1, Ordering::Relaxed);
                    log::warn!("fixture snippet `{doc_id}` fails validation for {query}");
                }
            }
        }
        out.truncate(limit);
        Ok(out)
    }
}

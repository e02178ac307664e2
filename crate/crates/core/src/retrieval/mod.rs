//! Snippet retrieval behind a provider interface.
//!
//! Two providers ship: an inverted index over a directory of text files and
//! a replay provider for recorded search results. Both apply the same
//! validation, so a snippet is only ever returned when both terms occur in
//! at most two adjacent sentences, within [`MAX_GAP_CHARS`] characters of
//! each other, in the required order, and the source document contains
//! none of the excluded terms.

mod fixture;
mod index;
mod persist;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::querygen::{QueryGroup, SearchQuery};
use crate::text::Span;

pub use fixture::FixtureProvider;
pub use index::{build_index, CorpusIndex, Document, Posting};

/// Largest number of characters allowed between the end of the earlier
/// term and the start of the later one.
pub const MAX_GAP_CHARS: usize = 70;

pub const DEFAULT_LIMIT: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Snippet {
    pub text: String,
    pub doc_id: String,
    /// Byte span of the matched context term inside `text`.
    pub term_c_span: Span,
    pub term_q_span: Span,
    pub matched_term_c: String,
    pub matched_term_q: String,
    pub group: QueryGroup,
}

impl Snippet {
    /// True when the context term is matched before the query term.
    pub fn c_first(&self) -> bool {
        self.term_c_span.start < self.term_q_span.start
    }
}

/// Anything that can turn a query into snippets. Implementations must be
/// deterministic and safe to share between threads.
pub trait SearchProvider: Send + Sync {
    fn search(&self, query: &SearchQuery, limit: usize) -> Result<Vec<Snippet>>;
}

impl<P: SearchProvider + ?Sized> SearchProvider for &P {
    fn search(&self, query: &SearchQuery, limit: usize) -> Result<Vec<Snippet>> {
        (**self).search(query, limit)
    }
}

impl<P: SearchProvider + ?Sized> SearchProvider for Box<P> {
    fn search(&self, query: &SearchQuery, limit: usize) -> Result<Vec<Snippet>> {
        (**self).search(query, limit)
    }
}

//! Line-based index file.
//!
//! ```text
//! knowhunt-index<TAB>1
//! D<TAB>doc_id<TAB>escaped text
//! S<TAB>doc<TAB>start:end start:end ...
//! T<TAB>token<TAB>doc:sentence:token:offset ...
//! ```
//!
//! Documents carry the full text, so loading rebuilds the index and checks
//! that the stored sentence and posting lines agree with the rebuild.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

use super::CorpusIndex;

pub const INDEX_MAGIC: &str = "knowhunt-index";
pub const INDEX_VERSION: u32 = 1;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Result<String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            other => {
                return Err(Error::IndexFormat(format!("bad escape sequence `\\{}`", other.unwrap_or(' '))))
            }
        }
    }
    Ok(out)
}

impl CorpusIndex {
    /// Serialises the index. Identical corpora give identical bytes.
    pub fn to_text(&self) -> String {
        let mut out = format!("{INDEX_MAGIC}\t{INDEX_VERSION}\n");
        for doc in &self.docs {
            let _ = writeln!(out, "D\t{}\t{}", escape(&doc.doc_id), escape(&doc.text));
        }
        for (i, doc) in self.docs.iter().enumerate() {
            let spans: Vec<String> = doc
                .sentences
                .iter()
                .map(|s| format!("{}:{}", s.start, s.end))
                .collect();
            let _ = writeln!(out, "S\t{i}\t{}", spans.join(" "));
        }
        for (token, list) in &self.postings {
            let items: Vec<String> = list
                .iter()
                .map(|p| format!("{}:{}:{}:{}", p.doc, p.sentence, p.token, p.offset))
                .collect();
            let _ = writeln!(out, "T\t{}\t{}", escape(token), items.join(" "));
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::IndexFormat("empty index file".into()))?;
        let (magic, version) = header
            .split_once('\t')
            .ok_or_else(|| Error::IndexFormat("missing header".into()))?;
        if magic != INDEX_MAGIC {
            return Err(Error::IndexFormat(format!("not an index file (header `{magic}`)")));
        }
        if version != INDEX_VERSION.to_string() {
            return Err(Error::IndexFormat(format!(
                "index version {version} is not supported (expected {INDEX_VERSION})"
            )));
        }
        let mut docs = Vec::new();
        for (n, line) in lines.enumerate() {
            if !line.starts_with("D\t") {
                continue;
            }
            let mut cols = line[2..].splitn(2, '\t');
            let (Some(id), Some(text)) = (cols.next(), cols.next()) else {
                return Err(Error::IndexFormat(format!("line {}: malformed document line", n + 2)));
            };
            docs.push((unescape(id)?, unescape(text)?));
        }
        let index = CorpusIndex::from_documents(docs);
        if index.to_text() != input {
            return Err(Error::IndexFormat(
                "stored sentences or postings do not match the stored documents".into(),
            ));
        }
        Ok(index)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}

//! Lexical resources: the hypernym taxonomy, closed word lists, and the
//! part-of-speech lexicon used by the built-in annotator.

mod taxonomy;
mod wordlists;

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use taxonomy::{base_forms, Synset, Taxonomy, SIMILARITY_SENSES};
pub use wordlists::{Agreement, Gender, Number, Person, PosLexicon, WordLists};

/// Coarse part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pos {
    Verb,
    Aux,
    Adj,
    Noun,
    Pron,
    Conn,
    Other,
}

impl Pos {
    pub fn as_str(&self) -> &'static str {
        match self {
            Pos::Verb => "verb",
            Pos::Aux => "aux",
            Pos::Adj => "adj",
            Pos::Noun => "noun",
            Pos::Pron => "pron",
            Pos::Conn => "conn",
            Pos::Other => "other",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "verb" | "v" => Pos::Verb,
            "aux" => Pos::Aux,
            "adj" | "a" | "s" => Pos::Adj,
            "noun" | "n" => Pos::Noun,
            "pron" => Pos::Pron,
            "conn" => Pos::Conn,
            "other" | "r" => Pos::Other,
            other => return Err(format!("unknown part of speech `{other}`")),
        })
    }
}

const TAXONOMY_TSV: &str = include_str!("../../data/lexicon/taxonomy.tsv");
const AUXILIARIES_TXT: &str = include_str!("../../data/lexicon/auxiliaries.txt");
const CAUSATIVES_TXT: &str = include_str!("../../data/lexicon/causatives.txt");
const PRONOUNS_TSV: &str = include_str!("../../data/lexicon/pronouns.tsv");
const POS_TSV: &str = include_str!("../../data/lexicon/pos.tsv");

/// Everything the pipeline needs to look words up.
#[derive(Debug, Clone)]
pub struct Lexicon {
    pub taxonomy: Taxonomy,
    pub words: WordLists,
    pub pos: PosLexicon,
}

impl Lexicon {
    /// The resources bundled with the crate.
    pub fn builtin() -> Self {
        Lexicon {
            taxonomy: Taxonomy::parse(TAXONOMY_TSV).expect("bundled taxonomy is valid"),
            words: WordLists::parse(AUXILIARIES_TXT, CAUSATIVES_TXT, PRONOUNS_TSV)
                .expect("bundled word lists are valid"),
            pos: PosLexicon::parse(POS_TSV).expect("bundled POS lexicon is valid"),
        }
    }

    /// Loads `taxonomy.tsv`, `auxiliaries.txt`, `causatives.txt` and
    /// `pronouns.tsv` from `dir`. `pos.tsv` is optional and falls back to
    /// the bundled one.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| {
            let path = dir.join(name);
            fs::read_to_string(&path).map_err(|e| Error::io(path, e))
        };
        let pos_path = dir.join("pos.tsv");
        let pos = if pos_path.exists() {
            PosLexicon::parse(&read("pos.tsv")?)?
        } else {
            PosLexicon::parse(POS_TSV)?
        };
        Ok(Lexicon {
            taxonomy: Taxonomy::parse(&read("taxonomy.tsv")?)?,
            words: WordLists::parse(
                &read("auxiliaries.txt")?,
                &read("causatives.txt")?,
                &read("pronouns.tsv")?,
            )?,
            pos,
        })
    }
}

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::lexicon::Pos;
use crate::text::{normalize, phrase_tokens};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gender {
    Masculine,
    Feminine,
    Neuter,
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Number {
    Singular,
    Plural,
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Person {
    First,
    Second,
    Third,
}

/// Gender, number and person of a mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Agreement {
    pub gender: Gender,
    pub number: Number,
    pub person: Person,
}

impl Agreement {
    pub fn compatible(&self, other: &Agreement) -> bool {
        let gender = self.gender == other.gender
            || self.gender == Gender::Any
            || other.gender == Gender::Any;
        let number = self.number == other.number
            || self.number == Number::Any
            || other.number == Number::Any;
        gender && number && self.person == other.person
    }
}

/// Closed-class lists: voice auxiliaries, causative-alternating verbs and
/// pronoun features.
#[derive(Debug, Clone)]
pub struct WordLists {
    auxiliaries: Vec<Vec<String>>,
    causatives: HashSet<String>,
    pronouns: HashMap<String, Agreement>,
    pronoun_order: Vec<String>,
}

impl WordLists {
    pub fn parse(auxiliaries: &str, causatives: &str, pronouns: &str) -> Result<Self> {
        let auxiliaries: Vec<Vec<String>> = entries(auxiliaries).map(|l| phrase_tokens(&l)).collect();
        let causatives: HashSet<String> = entries(causatives).collect();
        let mut pronoun_map = HashMap::new();
        let mut pronoun_order = Vec::new();
        for (i, line) in entries(pronouns).enumerate() {
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            let bad = |what: &str| Error::Lexicon(format!("pronouns.tsv entry {i}: {what}"));
            if cols.len() != 4 {
                return Err(bad("expected 4 columns"));
            }
            let gender = match cols[1] {
                "masc" => Gender::Masculine,
                "fem" => Gender::Feminine,
                "neut" => Gender::Neuter,
                "any" => Gender::Any,
                _ => return Err(bad("gender must be masc|fem|neut|any")),
            };
            let number = match cols[2] {
                "sg" => Number::Singular,
                "pl" => Number::Plural,
                "any" => Number::Any,
                _ => return Err(bad("number must be sg|pl|any")),
            };
            let person = match cols[3] {
                "1" => Person::First,
                "2" => Person::Second,
                "3" => Person::Third,
                _ => return Err(bad("person must be 1|2|3")),
            };
            pronoun_map.insert(
                cols[0].to_string(),
                Agreement {
                    gender,
                    number,
                    person,
                },
            );
            pronoun_order.push(cols[0].to_string());
        }
        if auxiliaries.is_empty() || causatives.is_empty() || pronoun_map.is_empty() {
            return Err(Error::Lexicon("word lists must be non-empty".into()));
        }
        Ok(WordLists {
            auxiliaries,
            causatives,
            pronouns: pronoun_map,
            pronoun_order,
        })
    }

    /// True when `preceding` (normalised tokens, nearest last) ends with a
    /// voice-switching auxiliary such as `was` or `are being`.
    pub fn ends_with_voice_auxiliary(&self, preceding: &[String]) -> bool {
        self.auxiliaries.iter().any(|aux| preceding.ends_with(aux))
    }

    pub fn is_causative(&self, lemma: &str) -> bool {
        self.causatives.contains(lemma)
    }

    pub fn pronoun(&self, word: &str) -> Option<Agreement> {
        self.pronouns.get(&normalize(word)).copied()
    }

    /// Canonical form of a pronoun: the first listed pronoun with the same
    /// features, so `him`, `his` and `he` all map to `he`.
    pub fn pronoun_lemma(&self, word: &str) -> Option<&str> {
        let feats = self.pronoun(word)?;
        self.pronoun_order
            .iter()
            .find(|p| self.pronouns[*p] == feats)
            .map(String::as_str)
    }

    pub fn causatives(&self) -> impl Iterator<Item = &str> {
        self.causatives.iter().map(String::as_str)
    }
}

fn entries(text: &str) -> impl Iterator<Item = String> + '_ {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
}

/// Word → (tag, lemma) table behind the built-in annotator.
#[derive(Debug, Clone, Default)]
pub struct PosLexicon {
    entries: HashMap<String, (Pos, String)>,
}

impl PosLexicon {
    /// `word<TAB>TAG[<TAB>lemma]` per line.
    pub fn parse(tsv: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (i, line) in tsv.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 2 {
                return Err(Error::Lexicon(format!("pos.tsv line {}: expected word and tag", i + 1)));
            }
            let pos: Pos = cols[1]
                .parse()
                .map_err(|e| Error::Lexicon(format!("pos.tsv line {}: {e}", i + 1)))?;
            let word = normalize(cols[0]);
            let lemma = cols.get(2).map(|l| normalize(l)).unwrap_or_else(|| word.clone());
            entries.entry(word).or_insert((pos, lemma));
        }
        Ok(PosLexicon { entries })
    }

    pub fn lookup(&self, word: &str) -> Option<(Pos, &str)> {
        self.entries
            .get(&normalize(word))
            .map(|(p, l)| (*p, l.as_str()))
    }

    /// Tags a surface token. Unknown words fall back to shape rules:
    /// mid-sentence capitals are names, `-ed`/`-ing` forms are verbs,
    /// `-ly` forms are adverbs, everything else is a noun.
    pub fn tag(&self, surface: &str, sentence_initial: bool) -> (Pos, String) {
        if let Some((pos, lemma)) = self.lookup(surface) {
            return (pos, lemma.to_string());
        }
        let norm = normalize(surface);
        let capitalised = surface.chars().next().is_some_and(char::is_uppercase);
        if capitalised && !sentence_initial {
            return (Pos::Noun, norm);
        }
        if norm.len() >= 5 {
            if let Some(stem) = norm.strip_suffix("ing") {
                return (Pos::Verb, stem.to_string());
            }
            if let Some(stem) = norm.strip_suffix("ied") {
                return (Pos::Verb, format!("{stem}y"));
            }
            if let Some(stem) = norm.strip_suffix("ed") {
                return (Pos::Verb, stem.to_string());
            }
        }
        if norm.len() >= 4 && norm.ends_with("ly") {
            return (Pos::Other, norm);
        }
        let lemma = match norm.strip_suffix('s') {
            Some(stem) if norm.len() > 3 && !norm.ends_with("ss") => stem.to_string(),
            _ => norm.clone(),
        };
        (Pos::Noun, lemma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Lexicon;

    #[test]
    fn pronoun_lemmas_collapse_case() {
        let lex = Lexicon::builtin();
        assert_eq!(lex.words.pronoun_lemma("him"), Some("he"));
        assert_eq!(lex.words.pronoun_lemma("Her"), Some("she"));
        assert_eq!(lex.words.pronoun_lemma("me"), Some("i"));
        assert_eq!(lex.words.pronoun_lemma("its"), Some("it"));
        assert_eq!(lex.words.pronoun_lemma("leg"), None);
    }

    #[test]
    fn voice_auxiliaries_match_phrases() {
        let lex = Lexicon::builtin();
        let toks = |s: &str| phrase_tokens(s);
        assert!(lex.words.ends_with_voice_auxiliary(&toks("they are being")));
        assert!(lex.words.ends_with_voice_auxiliary(&toks("it was")));
        assert!(!lex.words.ends_with_voice_auxiliary(&toks("she couldn't")));
    }

    #[test]
    fn agreement_allows_wildcards() {
        let lex = Lexicon::builtin();
        let he = lex.words.pronoun("he").unwrap();
        let she = lex.words.pronoun("she").unwrap();
        let they = lex.words.pronoun("they").unwrap();
        assert!(!he.compatible(&she));
        assert!(!he.compatible(&they));
        assert!(he.compatible(&lex.words.pronoun("him").unwrap()));
    }

    #[test]
    fn fallback_tags() {
        let lex = PosLexicon::default();
        assert_eq!(lex.tag("Kevin", false).0, Pos::Noun);
        assert_eq!(lex.tag("encountered", false), (Pos::Verb, "encounter".into()));
        assert_eq!(lex.tag("quickly", false).0, Pos::Other);
        assert_eq!(lex.tag("climbers", false), (Pos::Noun, "climber".into()));
    }

    #[test]
    fn rejects_empty_lists() {
        assert!(WordLists::parse("", "open", "he\tmasc\tsg\t3").is_err());
        assert!(WordLists::parse("was", "open", "he\tmale\tsg\t3").is_err());
    }
}

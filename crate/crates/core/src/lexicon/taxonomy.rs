use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::lexicon::Pos;
use crate::scalar::Real;
use crate::text::normalize;

/// Number of senses per word considered by [`Taxonomy::word_similarity`].
pub const SIMILARITY_SENSES: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct Synset {
    pub id: String,
    pub pos: Pos,
    pub lemmas: Vec<String>,
    pub parents: Vec<usize>,
}

/// Hypernym DAG. Depth counts from 1 at a root and is the length of the
/// longest path to any root, so every proper ancestor is strictly shallower
/// than its descendants.
#[derive(Debug, Clone)]
pub struct Taxonomy {
    synsets: Vec<Synset>,
    by_id: HashMap<String, usize>,
    lemma_index: HashMap<(String, Pos), Vec<usize>>,
    depth: Vec<usize>,
}

impl Taxonomy {
    /// Parses the tab-separated format: `id, pos, lemma,lemma,..., parent,parent,...`.
    pub fn parse(tsv: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in tsv.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 3 {
                return Err(Error::Lexicon(format!(
                    "line {}: expected at least 3 columns",
                    lineno + 1
                )));
            }
            let pos: Pos = cols[1]
                .parse()
                .map_err(|e| Error::Lexicon(format!("line {}: {e}", lineno + 1)))?;
            let lemmas: Vec<String> = split_list(cols[2]).map(normalize).collect();
            if lemmas.is_empty() {
                return Err(Error::Lexicon(format!("line {}: no lemmas", lineno + 1)));
            }
            let parents: Vec<String> = cols
                .get(3)
                .map(|p| split_list(p).map(str::to_string).collect())
                .unwrap_or_default();
            rows.push((cols[0].to_string(), pos, lemmas, parents));
        }

        let mut by_id = HashMap::with_capacity(rows.len());
        for (i, (id, ..)) in rows.iter().enumerate() {
            if by_id.insert(id.clone(), i).is_some() {
                return Err(Error::Lexicon(format!("duplicate synset `{id}`")));
            }
        }

        let mut synsets = Vec::with_capacity(rows.len());
        let mut lemma_index: HashMap<(String, Pos), Vec<usize>> = HashMap::new();
        for (i, (id, pos, lemmas, parent_ids)) in rows.into_iter().enumerate() {
            let parents = parent_ids
                .iter()
                .map(|p| {
                    by_id.get(p).copied().ok_or_else(|| {
                        Error::Lexicon(format!("synset `{id}` has unknown parent `{p}`"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            for lemma in &lemmas {
                lemma_index.entry((lemma.clone(), pos)).or_default().push(i);
            }
            synsets.push(Synset {
                id,
                pos,
                lemmas,
                parents,
            });
        }

        let depth = longest_depths(&synsets)?;
        Ok(Taxonomy {
            synsets,
            by_id,
            lemma_index,
            depth,
        })
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn synset(&self, id: &str) -> Option<&Synset> {
        self.by_id.get(id).map(|&i| &self.synsets[i])
    }

    pub fn synsets(&self) -> &[Synset] {
        &self.synsets
    }

    pub fn depth(&self, id: &str) -> Result<usize> {
        self.index_of(id).map(|i| self.depth[i])
    }

    fn index_of(&self, id: &str) -> Result<usize> {
        self.by_id
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownSynset(id.to_string()))
    }

    /// Synsets for `word` with the given part of speech, in sense order.
    /// Inflected forms are reduced with [`base_forms`].
    pub fn senses(&self, word: &str, pos: Pos) -> &[usize] {
        base_forms(word, pos)
            .into_iter()
            .find_map(|form| self.lemma_index.get(&(form, pos)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Lemmas of the first-listed synset for `(word, pos)`, minus the word
    /// itself. Multi-word lemmas come back with spaces.
    pub fn synonyms(&self, word: &str, pos: Pos) -> Vec<String> {
        let forms = base_forms(word, pos);
        let Some(&first) = self.senses(word, pos).first() else {
            return Vec::new();
        };
        self.synsets[first]
            .lemmas
            .iter()
            .filter(|l| !forms.contains(l))
            .map(|l| l.replace('_', " "))
            .collect()
    }

    fn ancestors(&self, start: usize) -> HashSet<usize> {
        let mut seen = HashSet::new();
        let mut stack = vec![start];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend(&self.synsets[n].parents);
            }
        }
        seen
    }

    /// Wu-Palmer similarity `2·depth(lcs) / (depth(a) + depth(b))`, taking
    /// the deepest common subsumer. Synsets with no common ancestor score 0.
    pub fn wu_palmer<T: Real>(&self, a: &str, b: &str) -> Result<T> {
        let (a, b) = (self.index_of(a)?, self.index_of(b)?);
        Ok(self.wu_palmer_idx(a, b))
    }

    fn wu_palmer_idx<T: Real>(&self, a: usize, b: usize) -> T {
        if a == b {
            return T::one();
        }
        let up_a = self.ancestors(a);
        let lcs_depth = self
            .ancestors(b)
            .into_iter()
            .filter(|n| up_a.contains(n))
            .map(|n| self.depth[n])
            .max();
        match lcs_depth {
            None => T::zero(),
            Some(d) => {
                let num = T::from_usize(2 * d).unwrap();
                let den = T::from_usize(self.depth[a] + self.depth[b]).unwrap();
                num / den
            }
        }
    }

    /// Best Wu-Palmer score between any of the top senses of two words that
    /// share a part of speech; 0 when either word is unknown.
    pub fn word_similarity<T: Real>(&self, w1: &str, w2: &str) -> T {
        let mut best = T::zero();
        for pos in [Pos::Noun, Pos::Verb, Pos::Adj] {
            let s1 = self.senses(w1, pos);
            let s2 = self.senses(w2, pos);
            for &a in s1.iter().take(SIMILARITY_SENSES) {
                for &b in s2.iter().take(SIMILARITY_SENSES) {
                    let s: T = self.wu_palmer_idx(a, b);
                    if s > best {
                        best = s;
                    }
                }
            }
        }
        best
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

fn longest_depths(synsets: &[Synset]) -> Result<Vec<usize>> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; synsets.len()];
    let mut depth = vec![0usize; synsets.len()];
    for root in 0..synsets.len() {
        if state[root] == 2 {
            continue;
        }
        let mut stack = vec![(root, false)];
        while let Some((n, expanded)) = stack.pop() {
            if expanded {
                depth[n] = 1 + synsets[n]
                    .parents
                    .iter()
                    .map(|&p| depth[p])
                    .max()
                    .unwrap_or(0);
                state[n] = 2;
                continue;
            }
            match state[n] {
                2 => continue,
                1 => {
                    return Err(Error::Lexicon(format!(
                        "cycle through synset `{}`",
                        synsets[n].id
                    )))
                }
                _ => {}
            }
            state[n] = 1;
            stack.push((n, true));
            for &p in &synsets[n].parents {
                match state[p] {
                    1 => {
                        return Err(Error::Lexicon(format!(
                            "cycle through synset `{}`",
                            synsets[p].id
                        )))
                    }
                    0 => stack.push((p, false)),
                    _ => {}
                }
            }
        }
    }
    Ok(depth)
}

/// Candidate dictionary forms of an inflected word, most literal first.
/// Applies the usual detachment rules for each part of speech; the caller
/// picks the first candidate the taxonomy knows.
pub fn base_forms(word: &str, pos: Pos) -> Vec<String> {
    let w = normalize(word).replace(' ', "_");
    let mut out = vec![w.clone()];
    let rules: &[(&str, &str)] = match pos {
        Pos::Noun => &[
            ("ses", "s"),
            ("xes", "x"),
            ("zes", "z"),
            ("ches", "ch"),
            ("shes", "sh"),
            ("men", "man"),
            ("ies", "y"),
            ("s", ""),
        ],
        Pos::Verb => &[
            ("ies", "y"),
            ("ied", "y"),
            ("es", "e"),
            ("es", ""),
            ("s", ""),
            ("ed", "e"),
            ("ed", ""),
            ("ing", "e"),
            ("ing", ""),
        ],
        Pos::Adj => &[("est", ""), ("est", "e"), ("er", ""), ("er", "e"), ("ier", "y")],
        _ => &[],
    };
    for (suffix, repl) in rules {
        if let Some(stem) = w.strip_suffix(suffix) {
            if stem.len() < 2 {
                continue;
            }
            let base = format!("{stem}{repl}");
            push_unique(&mut out, base);
            // stopped -> stop, bigger -> big
            if repl.is_empty() {
                let b = stem.as_bytes();
                if b.len() >= 3 && b[b.len() - 1] == b[b.len() - 2] {
                    push_unique(&mut out, stem[..stem.len() - 1].to_string());
                }
            }
        }
    }
    out
}

fn push_unique(v: &mut Vec<String>, s: String) {
    if !v.contains(&s) {
        v.push(s);
    }
}

#![allow(dead_code)]

use std::path::PathBuf;

use knowhunt_core::schema::{Answer, ProblemInstance};
use knowhunt_core::text::Span;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

pub const VERBS: [&str; 20] = [
    "lift", "rescue", "comfort", "paint", "call", "search", "thank", "praise", "blame", "help", "envy", "admire",
    "scold", "trust", "ignore", "visit", "warn", "hire", "carry", "console",
];

/// `(agent-answer adjective, patient-answer adjective)` per twin pair.
pub const ADJECTIVES: [(&str, &str); 20] = [
    ("weak", "heavy"),
    ("tired", "busy"),
    ("angry", "timid"),
    ("lazy", "rude"),
    ("clever", "careless"),
    ("helpless", "naughty"),
    ("proud", "humble"),
    ("scared", "loyal"),
    ("honest", "lonely"),
    ("jealous", "nervous"),
    ("curious", "grateful"),
    ("generous", "famous"),
    ("reckless", "cautious"),
    ("worried", "impatient"),
    ("brilliant", "miserable"),
    ("strict", "naive"),
    ("skilled", "powerful"),
    ("desperate", "hungry"),
    ("thirsty", "quiet"),
    ("smart", "stupid"),
];

const CAST: [(&str, &str, &str); 4] = [
    ("man", "boy", "he"),
    ("woman", "girl", "she"),
    ("father", "son", "he"),
    ("mother", "daughter", "she"),
];

const AGENT_TEMPLATES: [&str; 3] = [
    "I couldn't {v} him because I was so {a}.",
    "We couldn't {v} them because we were so {a}.",
    "She couldn't {v} me because she was so {a}.",
];

const PATIENT_TEMPLATES: [&str; 3] = [
    "I couldn't {v} him because he was so {a}.",
    "She couldn't {v} us because we were so {a}.",
    "We couldn't {v} her because she was so {a}.",
];

const FILLER_NOUNS: [&str; 8] = ["car", "box", "door", "mountain", "dog", "cat", "picture", "ground"];
const FILLER_VERBS: [&str; 5] = ["walked", "slept", "looked", "stayed", "arrived"];
const FILLER_ADJS: [&str; 5] = ["green", "red", "blue", "wet", "cold"];

pub struct Planted {
    pub instances: Vec<ProblemInstance>,
    pub docs: Vec<(String, String)>,
    /// Documents that only a broken exclusion or gap rule would return.
    pub traps: usize,
}

fn fill(template: &str, verb: &str, adj: &str) -> String {
    template.replace("{v}", verb).replace("{a}", adj)
}

fn span_of(text: &str, needle: &str, from: usize) -> Span {
    let start = from + text[from..].find(needle).expect("needle present");
    Span::new(start, start + needle.len())
}

fn instance(id: String, pair: usize, verb: &str, adj: &str, answer: Answer) -> ProblemInstance {
    let (e1, e2, pron) = CAST[pair % CAST.len()];
    let text = format!("The {e1} couldn't {verb} the {e2} because {pron} was so {adj}.");
    let e1_span = span_of(&text, &format!("The {e1}"), 0);
    let e2_span = span_of(&text, &format!("the {e2}"), e1_span.end);
    let p_span = span_of(&text, &format!(" {pron} "), e2_span.end);
    ProblemInstance {
        id,
        e1: e1_span,
        e2: e2_span,
        pronoun: Span::new(p_span.start + 1, p_span.end - 1),
        answer: Some(answer),
        pair_id: format!("pair-{pair:02}"),
        text,
    }
}

/// Twenty twin pairs and a corpus of `n_docs` documents in which each
/// instance has four to six supporting evidence sentences, at most one
/// contrary one, and three traps that must be filtered out.
pub fn planted_corpus(seed: u64, n_docs: usize) -> Planted {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::new();
    let mut docs: Vec<String> = Vec::new();
    let mut traps = 0;
    for (pair, (verb, (adj_a, adj_p))) in VERBS.iter().zip(ADJECTIVES).enumerate() {
        let (e1, ..) = CAST[pair % CAST.len()];
        for (twin, adj, answer) in [(0, adj_a, Answer::Agent), (1, adj_p, Answer::Patient)] {
            instances.push(instance(format!("planted-{pair:02}-{twin}"), pair, verb, adj, answer));
            let (support, contrary) = match answer {
                Answer::Agent => (&AGENT_TEMPLATES, &PATIENT_TEMPLATES),
                Answer::Patient => (&PATIENT_TEMPLATES, &AGENT_TEMPLATES),
            };
            for _ in 0..rng.gen_range(4..=6) {
                docs.push(fill(support.choose(&mut rng).unwrap(), verb, adj));
            }
            for _ in 0..rng.gen_range(0..=1) {
                docs.push(fill(contrary.choose(&mut rng).unwrap(), verb, adj));
            }
            let wrong = contrary[0];
            docs.push(format!("The {e1} said: {}", fill(wrong, verb, adj)));
            docs.push(format!("Winograd wrote that {}", fill(wrong, verb, adj).to_lowercase()));
            docs.push(format!(
                "I couldn't {verb} him, not after the long walk across the cold ground with the dog and the box, and he was so {adj}."
            ));
            traps += 3;
        }
    }
    assert!(docs.len() <= n_docs, "corpus too small for the planted evidence");
    while docs.len() < n_docs {
        let n = |rng: &mut ChaCha8Rng| *FILLER_NOUNS.choose(rng).unwrap();
        let s = format!(
            "The {} {} near the {} {}. It was {} outside.",
            n(&mut rng),
            FILLER_VERBS.choose(&mut rng).unwrap(),
            FILLER_ADJS.choose(&mut rng).unwrap(),
            n(&mut rng),
            FILLER_ADJS.choose(&mut rng).unwrap()
        );
        docs.push(s);
    }
    docs.shuffle(&mut rng);
    let docs = docs
        .into_iter()
        .enumerate()
        .map(|(i, text)| (format!("doc-{i:04}.txt"), text))
        .collect();
    Planted {
        instances,
        docs,
        traps,
    }
}

mod common;

use std::collections::HashMap;

use knowhunt_core::lexicon::Lexicon;
use knowhunt_core::schema::{annotate, decompose, load_wsc, ProblemInstance};
use proptest::prelude::*;
use serde::Deserialize;

use common::data;

#[derive(Deserialize)]
struct Gold {
    id: String,
    e1: String,
    e2: String,
    pred_c: String,
    pred_q: String,
    pronoun: String,
    connective: Option<String>,
    pronoun_before_pred_q: bool,
}

fn gold() -> HashMap<String, Gold> {
    include_str!("../data/wsc/schema_gold.jsonl")
        .lines()
        .map(|l| serde_json::from_str::<Gold>(l).unwrap())
        .map(|g| (g.id.clone(), g))
        .collect()
}

#[test]
fn shipped_instances_match_gold_schemas() {
    let lex = Lexicon::builtin();
    let gold = gold();
    let insts = load_wsc(&data("wsc/sample.jsonl")).unwrap();
    let mut checked = 0;
    for inst in &insts {
        let Some(g) = gold.get(&inst.id) else { continue };
        let s = decompose(inst, &annotate(&inst.text, &lex.pos, None).unwrap()).unwrap();
        assert_eq!(s.e1, g.e1, "{}", inst.id);
        assert_eq!(s.e2, g.e2, "{}", inst.id);
        assert_eq!(s.pred_c.text, g.pred_c, "{}", inst.id);
        assert_eq!(s.pred_q.text, g.pred_q, "{}", inst.id);
        assert_eq!(s.pronoun, g.pronoun, "{}", inst.id);
        assert_eq!(s.connective, g.connective, "{}", inst.id);
        assert_eq!(s.pronoun_before_pred_q, g.pronoun_before_pred_q, "{}", inst.id);
        checked += 1;
    }
    assert_eq!(checked, insts.len());
}

#[test]
fn predicates_sit_on_their_side_of_the_split() {
    let lex = Lexicon::builtin();
    for inst in load_wsc(&data("wsc/sample.jsonl")).unwrap() {
        let s = decompose(&inst, &annotate(&inst.text, &lex.pos, None).unwrap()).unwrap();
        assert!(s.pred_c.tokens.iter().all(|t| t.span.end <= s.split), "{}", inst.id);
        assert!(s.pred_q.tokens.iter().all(|t| t.span.start >= s.split), "{}", inst.id);
    }
}

fn planted_instance(subject: &str, verb: &str, object: &str, adj: &str) -> ProblemInstance {
    let text = format!("The {subject} couldn't {verb} the {object} because he was so {adj}.");
    let e1_end = 4 + subject.len();
    let e2_start = text.find(&format!("the {object}")).unwrap();
    let p = text.find(" he ").unwrap() + 1;
    let line = format!(
        r#"{{"id":"g","text":"{text}","e1":{{"start":0,"end":{e1_end}}},"e2":{{"start":{e2_start},"end":{}}},"pronoun":{{"start":{p},"end":{}}},"pair_id":"g"}}"#,
        e2_start + 4 + object.len(),
        p + 2
    );
    knowhunt_core::schema::parse_wsc(&line, "gen").unwrap().remove(0)
}

proptest! {
    #[test]
    fn decompose_is_deterministic(
        subject in prop::sample::select(vec!["man", "woman", "teacher", "dog"]),
        verb in prop::sample::select(vec!["lift", "help", "call", "visit", "warn"]),
        object in prop::sample::select(vec!["boy", "box", "girl", "cat"]),
        adj in prop::sample::select(vec!["weak", "heavy", "tired", "busy", "small"]),
    ) {
        let lex = Lexicon::builtin();
        let inst = planted_instance(subject, verb, object, adj);
        let toks = annotate(&inst.text, &lex.pos, None).unwrap();
        let a = decompose(&inst, &toks).unwrap();
        let b = decompose(&inst, &toks).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.pred_c.text, format!("couldn't {verb}"));
        prop_assert_eq!(a.pred_q.text, format!("was so {adj}"));
    }
}

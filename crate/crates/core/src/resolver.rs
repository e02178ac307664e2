//! Turning labelled evidence into a decision.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::evidence::{EvidenceSentence, Label, ScoredSnippet};
use crate::querygen::Relation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Agent,
    Patient,
    Alt1,
    Alt2,
    Abstain,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Agent => "agent",
            Decision::Patient => "patient",
            Decision::Alt1 => "alt1",
            Decision::Alt2 => "alt2",
            Decision::Abstain => "abstain",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Wsc,
    Copa,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub instance_id: String,
    pub task: Task,
    pub decision: Decision,
    /// Agent total for WSC, first alternative for COPA.
    pub first_strength: u64,
    /// Patient total for WSC, second alternative for COPA.
    pub second_strength: u64,
    pub evidence_count: usize,
    pub answered: bool,
    /// Set when the decision came from the random back-off.
    #[serde(default)]
    pub guessed: bool,
}

impl Resolution {
    fn from_totals(instance_id: &str, task: Task, first: u64, second: u64, evidence_count: usize) -> Self {
        let (win1, win2) = match task {
            Task::Wsc => (Decision::Agent, Decision::Patient),
            Task::Copa => (Decision::Alt1, Decision::Alt2),
        };
        let decision = match first.cmp(&second) {
            std::cmp::Ordering::Greater => win1,
            std::cmp::Ordering::Less => win2,
            std::cmp::Ordering::Equal => Decision::Abstain,
        };
        Resolution {
            instance_id: instance_id.to_string(),
            task,
            decision,
            first_strength: first,
            second_strength: second,
            evidence_count,
            answered: decision != Decision::Abstain,
            guessed: false,
        }
    }

    /// A resolution for an instance that never reached retrieval, for
    /// example because it could not be decomposed.
    pub fn skipped(instance_id: &str, task: Task) -> Self {
        Self::from_totals(instance_id, task, 0, 0, 0)
    }
}

/// One line of the resolution dump. `strengths` is `[agent, patient]` for
/// WSC and `[alt1, alt2]` for COPA.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionRecord {
    pub instance_id: String,
    pub decision: Decision,
    pub strengths: [u64; 2],
    pub evidence_count: usize,
    pub guessed: bool,
}

impl From<&Resolution> for ResolutionRecord {
    fn from(r: &Resolution) -> Self {
        ResolutionRecord {
            instance_id: r.instance_id.clone(),
            decision: r.decision,
            strengths: [r.first_strength, r.second_strength],
            evidence_count: r.evidence_count,
            guessed: r.guessed,
        }
    }
}

/// Sums the strengths of agent and patient evidence; the larger side wins
/// and a tie abstains. Insufficient evidence carries no weight.
pub fn decide_wsc(instance_id: &str, evidence: &[EvidenceSentence]) -> Resolution {
    let (mut agent, mut patient) = (0u64, 0u64);
    for e in evidence {
        match e.label {
            Label::EA => agent += u64::from(e.strength),
            Label::EP => patient += u64::from(e.strength),
            Label::Insufficient => {}
        }
    }
    Resolution::from_totals(instance_id, Task::Wsc, agent, patient, evidence.len())
}

/// Compares the summed strengths of the snippets found for each
/// alternative. Retrieval has already enforced the cause/result order.
pub fn decide_copa(
    instance_id: &str,
    alt1: &[ScoredSnippet],
    alt2: &[ScoredSnippet],
    _relation: Relation,
) -> Resolution {
    let total = |xs: &[ScoredSnippet]| xs.iter().map(|s| u64::from(s.strength)).sum::<u64>();
    Resolution::from_totals(instance_id, Task::Copa, total(alt1), total(alt2), alt1.len() + alt2.len())
}

/// FNV-1a of the id mixed into the seed; stable across platforms and
/// compiler versions.
fn instance_seed(seed: u64, instance_id: &str) -> u64 {
    let hash = instance_id
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3));
    seed ^ hash
}

/// Replaces an abstention with a uniform guess seeded by `seed` and the
/// instance id. Decided resolutions pass through unchanged.
pub fn backoff_random(resolution: &Resolution, seed: u64) -> Resolution {
    if resolution.decision != Decision::Abstain {
        return resolution.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(seed, &resolution.instance_id));
    let first = rng.gen_bool(0.5);
    let decision = match (resolution.task, first) {
        (Task::Wsc, true) => Decision::Agent,
        (Task::Wsc, false) => Decision::Patient,
        (Task::Copa, true) => Decision::Alt1,
        (Task::Copa, false) => Decision::Alt2,
    };
    Resolution {
        decision,
        answered: true,
        guessed: true,
        ..resolution.clone()
    }
}

//! Step-by-step replay of the two security reductions.
//!
//! Each rewriting step is its own game program; [`check_step`] compares two
//! consecutive programs by exact distribution equality. Nothing is proved by
//! construction: a wrong rewrite shows up as a differing probability.

mod bbs_chain;
mod gm_chain;
mod harness;
mod mutation;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::dist::{dist_eq, Dist};
use crate::prob::Prob;

pub use bbs_chain::{bbs_game_chain, bbs_game_chain_with, end_to_end_bbs, BbsEndToEnd};
pub use gm_chain::{end_to_end_gm, gm_game_chain, gm_game_chain_with, GmEndToEnd};
pub use harness::{replay_bbs, replay_gm, BbsReplay, FamilyFilter, GmReplay, ReplayReport, Summary};
pub use mutation::{Mutation, ParseMutationError, ProofChain};

/// The four message-pair cases of the semantic-security proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MessageCase {
    /// `(0, 0)`
    BothZero,
    /// `(1, 1)`
    BothOne,
    /// `(0, 1)`
    ZeroOne,
    /// `(1, 0)`
    OneZero,
}

impl MessageCase {
    pub fn of(messages: (bool, bool)) -> Self {
        match messages {
            (false, false) => MessageCase::BothZero,
            (true, true) => MessageCase::BothOne,
            (false, true) => MessageCase::ZeroOne,
            (true, false) => MessageCase::OneZero,
        }
    }

    pub fn messages(self) -> (bool, bool) {
        match self {
            MessageCase::BothZero => (false, false),
            MessageCase::BothOne => (true, true),
            MessageCase::ZeroOne => (false, true),
            MessageCase::OneZero => (true, false),
        }
    }

    pub fn numeral(self) -> &'static str {
        match self {
            MessageCase::BothZero => "i",
            MessageCase::BothOne => "ii",
            MessageCase::ZeroOne => "iii",
            MessageCase::OneZero => "iv",
        }
    }

    pub fn equal_messages(self) -> bool {
        matches!(self, MessageCase::BothZero | MessageCase::BothOne)
    }
}

/// Label of a game in a chain, and of the check that arrives at it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StepId {
    /// The unpredictability game itself.
    Unpred,
    /// `BBS1` .. `BBS9`.
    Bbs(u8),
    /// The semantic-security game itself.
    Semsec,
    /// `GM1` .. `GM3`, shared by all message cases.
    Gm(u8),
    /// `GM4` .. `GM9` under a message case, e.g. `GM7.iii`.
    GmCase(u8, MessageCase),
    /// The closing coin-flip game of the equal-message cases.
    Coin(MessageCase),
    /// Advantage equality between the unpredictability game and the fully
    /// reduced residuosity game.
    EndToEndBbs,
    EndToEndGm(MessageCase),
}

impl fmt::Display for StepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepId::Unpred => f.write_str("UNPRED"),
            StepId::Bbs(k) => write!(f, "BBS{k}"),
            StepId::Semsec => f.write_str("SEMSEC"),
            StepId::Gm(k) => write!(f, "GM{k}"),
            StepId::GmCase(k, c) => write!(f, "GM{k}.{}", c.numeral()),
            StepId::Coin(c) => write!(f, "COIN.{}", c.numeral()),
            StepId::EndToEndBbs => f.write_str("E2E-BBS"),
            StepId::EndToEndGm(c) => write!(f, "E2E-GM.{}", c.numeral()),
        }
    }
}

impl Serialize for StepId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One game of a chain.
#[derive(Debug, Clone)]
pub struct ChainGame {
    pub step: StepId,
    pub game: Dist<bool>,
}

impl ChainGame {
    pub fn new(step: StepId, game: Dist<bool>) -> Self {
        ChainGame { step, game }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub value: String,
    pub left: Prob,
    pub right: Prob,
}

/// Outcome of comparing two games.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub equal: bool,
    pub epsilon_used: Prob,
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    /// Equality of two named quantities, with both values kept on mismatch.
    pub fn compare(value: &str, left: Prob, right: Prob) -> Self {
        let equal = left == right;
        Verdict {
            equal,
            epsilon_used: Prob::zero(),
            counterexample: (!equal).then(|| Counterexample {
                value: value.to_string(),
                left,
                right,
            }),
        }
    }
}

/// Exact equality of two adjacent games. Every rewrite is expected to hold
/// with `epsilon = 0`; on failure the probability of `true` on each side is
/// reported.
pub fn check_step(left: &Dist<bool>, right: &Dist<bool>) -> Verdict {
    let equal = dist_eq(left, right);
    let counterexample = (!equal).then(|| Counterexample {
        value: "true".to_string(),
        left: left.pr(|b| *b),
        right: right.pr(|b| *b),
    });
    Verdict {
        equal,
        epsilon_used: Prob::zero(),
        counterexample,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step_id: StepId,
    pub modulus: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    pub attacker_id: String,
    pub equal: bool,
    pub epsilon_used: Prob,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl StepReport {
    pub fn new(
        step_id: StepId,
        modulus: u64,
        length: Option<usize>,
        attacker_id: impl Into<String>,
        v: Verdict,
    ) -> Self {
        StepReport {
            step_id,
            modulus,
            length,
            attacker_id: attacker_id.into(),
            equal: v.equal,
            epsilon_used: v.epsilon_used,
            counterexample: v.counterexample,
        }
    }

    fn sort_key(&self) -> (StepId, u64, Option<usize>, &str) {
        (self.step_id, self.modulus, self.length, &self.attacker_id)
    }
}

/// Checks every adjacent pair of a chain; each report carries the label of
/// the right-hand game.
pub fn check_chain(chain: &[ChainGame], modulus: u64, length: Option<usize>, attacker: &str) -> Vec<StepReport> {
    chain
        .windows(2)
        .map(|w| {
            let verdict = check_step(&w[0].game, &w[1].game);
            StepReport::new(w[1].step, modulus, length, attacker, verdict)
        })
        .collect()
}

//! Security games as distribution-valued programs, and the attacker
//! constructions used by the two reductions.
//!
//! An [`Attacker`] is a pure map from what the game shows it to a
//! distribution over its answer; any internal coins live inside that
//! distribution. Every game returns a `Dist<bool>` that is `true` when the
//! attacker wins.

pub mod family;

use std::fmt;
use std::sync::Arc;

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::numth::{parity, BlumModulus, Residue, SemiprimeModulus};
use crate::primitives::{self, bbs_rec_unchecked, Bitstring, GmPublicKey};

type Strategy<In, Out> = dyn Fn(&In) -> Dist<Out> + Send + Sync;

pub struct Attacker<In, Out> {
    name: Arc<str>,
    strategy: Arc<Strategy<In, Out>>,
}

impl<In, Out> Clone for Attacker<In, Out> {
    fn clone(&self) -> Self {
        Attacker {
            name: Arc::clone(&self.name),
            strategy: Arc::clone(&self.strategy),
        }
    }
}

impl<In, Out> fmt::Debug for Attacker<In, Out> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Attacker").field(&self.name).finish()
    }
}

impl<In, Out> Attacker<In, Out> {
    pub fn new<F>(name: impl Into<String>, strategy: F) -> Self
    where
        F: Fn(&In) -> Dist<Out> + Send + Sync + 'static,
    {
        Attacker {
            name: name.into().into(),
            strategy: Arc::new(strategy),
        }
    }

    /// An attacker without coins.
    pub fn deterministic<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&In) -> Out + Send + Sync + 'static,
    {
        Self::new(name, move |input| Dist::pure(f(input)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn query(&self, input: &In) -> Dist<Out> {
        (self.strategy)(input)
    }
}

/// What a residuosity or parity attacker sees: the modulus and an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Challenge {
    pub n: u64,
    pub x: Residue,
}

impl Challenge {
    pub fn new(x: Residue) -> Self {
        Challenge { n: x.modulus(), x }
    }
}

/// Which of the two chosen messages was encrypted. Kept apart from message
/// bits on purpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MessageIndex {
    One,
    Two,
}

impl MessageIndex {
    pub const BOTH: [MessageIndex; 2] = [MessageIndex::One, MessageIndex::Two];

    pub fn select(self, (m1, m2): (bool, bool)) -> bool {
        match self {
            MessageIndex::One => m1,
            MessageIndex::Two => m2,
        }
    }
}

/// What the second-stage semantic-security attacker sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GmView {
    pub pk: GmPublicKey,
    pub messages: (bool, bool),
    pub ciphertext: Residue,
}

pub type UnpredAttacker = Attacker<Bitstring, bool>;
pub type ChallengeAttacker = Attacker<Challenge, bool>;
pub type MessageChooser = Attacker<GmPublicKey, (bool, bool)>;
pub type MessageGuesser = Attacker<GmView, MessageIndex>;

/// The two stages of a semantic-security attacker.
#[derive(Debug, Clone)]
pub struct GmAttackerPair {
    pub chooser: MessageChooser,
    pub guesser: MessageGuesser,
}

impl GmAttackerPair {
    pub fn new(chooser: MessageChooser, guesser: MessageGuesser) -> Self {
        GmAttackerPair { chooser, guesser }
    }

    pub fn name(&self) -> String {
        format!("{}/{}", self.chooser.name(), self.guesser.name())
    }
}

pub(crate) fn uniform_over(set: &[Residue]) -> Dist<Residue> {
    Dist::uniform(set.iter().copied()).expect("residue tables are nonempty and sorted")
}

pub(crate) fn index_coin() -> Dist<MessageIndex> {
    Dist::uniform(MessageIndex::BOTH).expect("two distinct indices")
}

/// `b <- {true, false}; return b`.
pub fn coin_game() -> Dist<bool> {
    Dist::uniform([true, false]).expect("two distinct booleans")
}

/// Quadratic residuosity: guess whether a random `x` in `Z_n^*(+1)` is a
/// square.
pub fn qra_game(m: &SemiprimeModulus, a: &ChallengeAttacker) -> Dist<bool> {
    uniform_over(m.units_plus1()).bind(|&x| {
        let truth = m.qr_unchecked(x);
        a.query(&Challenge::new(x)).map(move |&guess| guess == truth)
    })
}

/// Guess the parity of the principal square root of a random `x` in `QR_n`.
pub fn parity_sqrt_game(m: &BlumModulus, a: &ChallengeAttacker) -> Dist<bool> {
    uniform_over(m.qr()).bind(|&x| {
        let target = parity(principal_sqrt(m, x));
        a.query(&Challenge::new(x)).map(move |&guess| guess == target)
    })
}

/// Left-unpredictability: from bits `b1..b_len` of a `len + 1` bit output,
/// guess `b0`.
pub fn unpred_game(m: &BlumModulus, len: usize, a: &UnpredAttacker) -> Dist<bool> {
    uniform_over(m.units()).bind(|&seed| {
        let bits = primitives::bbs(len + 1, seed, m).expect("seed drawn from the units");
        let b0 = bits.first().expect("len + 1 >= 1 bits");
        a.query(&bits.tail()).map(move |&guess| guess == b0)
    })
}

/// Semantic security of GM with public key `(n, y)`.
pub fn semsec_game(m: &SemiprimeModulus, y: Residue, pair: &GmAttackerPair) -> Result<Dist<bool>> {
    if y.modulus() != m.n() {
        return Err(Error::InvalidY { y: y.value(), n: m.n() });
    }
    let pk = primitives::public_key(m, y.value())?;
    let enc0 = primitives::gm_encrypt_dist(&pk, false)?;
    let enc1 = primitives::gm_encrypt_dist(&pk, true)?;
    Ok(pair.chooser.query(&pk).bind(|&messages| {
        index_coin().bind(|&i| {
            let enc = if i.select(messages) { &enc1 } else { &enc0 };
            enc.bind(|&ciphertext| {
                let view = GmView {
                    pk,
                    messages,
                    ciphertext,
                };
                pair.guesser.query(&view).map(move |&guess| guess == i)
            })
        })
    }))
}

pub(crate) fn principal_sqrt(m: &BlumModulus, x: Residue) -> Residue {
    m.principal_sqrt(x).expect("argument drawn from QR_n")
}

/// From a bit predictor, a parity guesser: run the generator `len` steps
/// from `x` and ask `a` about the output.
pub fn reduce_unpred_to_parity(a: &UnpredAttacker, len: usize, m: &BlumModulus) -> ChallengeAttacker {
    let a = a.clone();
    let n = m.n();
    Attacker::new(format!("parity<-{}", a.name()), move |c: &Challenge| {
        debug_assert_eq!(c.n, n);
        a.query(&bbs_rec_unchecked(len, c.x))
    })
}

/// From a parity guesser, a residuosity guesser: ask `a` about `x^2` and
/// correct by `parity(x) xor 1`.
pub fn reduce_parity_to_qra(a: &ChallengeAttacker, m: &BlumModulus) -> ChallengeAttacker {
    let a = a.clone();
    let n = m.n();
    Attacker::new(format!("qra<-{}", a.name()), move |c: &Challenge| {
        debug_assert_eq!(c.n, n);
        let px = parity(c.x);
        a.query(&Challenge::new(c.x.square()))
            .map(move |&guess| guess ^ px ^ true)
    })
}

/// From a second-stage GM attacker and a fixed unequal message pair, a
/// residuosity guesser. `(0,1)` answers "residue" when the guess is the first
/// message; `(1,0)` when it is the second.
pub fn reduce_semsec_to_qra(
    guesser: &MessageGuesser,
    pk: &GmPublicKey,
    messages: (bool, bool),
) -> Result<ChallengeAttacker> {
    let residue_index = match messages {
        (false, true) => MessageIndex::One,
        (true, false) => MessageIndex::Two,
        (a, b) => return Err(Error::UnsupportedCase(a as u8, b as u8)),
    };
    let guesser = guesser.clone();
    let pk = *pk;
    Ok(Attacker::new(
        format!("qra<-{}", guesser.name()),
        move |c: &Challenge| {
            let view = GmView {
                pk,
                messages,
                ciphertext: c.x,
            };
            guesser.query(&view).map(move |&guess| guess == residue_index)
        },
    ))
}

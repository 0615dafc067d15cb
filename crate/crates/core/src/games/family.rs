//! Named attacker families and seeded random attackers.
//!
//! Random attackers are reproducible: attacker keys are drawn from
//! `ChaCha8Rng::seed_from_u64(seed)`, and each attacker maps an input to its
//! answer by hashing `key ^ fingerprint(input)` with the SplitMix64
//! finalizer. A random attacker outputs `true` with probability `k/8`, where
//! `k = hash mod 9`.

use std::collections::BTreeMap;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    coin_game, index_coin, Attacker, Challenge, ChallengeAttacker, GmAttackerPair, GmView, MessageChooser,
    MessageGuesser, MessageIndex, UnpredAttacker,
};
use crate::dist::Dist;
use crate::numth::{parity, BlumModulus, SemiprimeModulus};
use crate::primitives::{self, Bitstring, GmPublicKey, GmSecretKey};
use crate::prob::Prob;

/// Key of the named `keyed` attacker in every family.
pub const KEYED_GUESSER_KEY: u64 = 0x5eed_6a3e_b175_0001;

/// Attackers generated when a caller does not ask for a specific count.
pub const DEFAULT_RANDOM_ATTACKERS: usize = 20;

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A stable 64-bit digest of what an attacker is shown.
pub trait Fingerprint {
    fn fingerprint(&self) -> u64;
}

impl Fingerprint for Bitstring {
    fn fingerprint(&self) -> u64 {
        // length first so that "" and "0" differ
        self.bits()
            .iter()
            .fold(mix64(self.len() as u64), |h, &b| mix64(h ^ (b as u64 + 1)))
    }
}

impl Fingerprint for Challenge {
    fn fingerprint(&self) -> u64 {
        mix64(mix64(self.n) ^ self.x.value())
    }
}

impl Fingerprint for GmPublicKey {
    fn fingerprint(&self) -> u64 {
        mix64(mix64(self.n) ^ self.y.value())
    }
}

impl Fingerprint for GmView {
    fn fingerprint(&self) -> u64 {
        let msgs = (self.messages.0 as u64) << 1 | self.messages.1 as u64;
        mix64(mix64(self.pk.fingerprint() ^ msgs) ^ self.ciphertext.value())
    }
}

/// Draws `count` attacker keys from the seeded stream.
pub fn attacker_keys(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.next_u64()).collect()
}

/// Deterministic answer given by one hash bit.
pub fn keyed_guesser<In: Fingerprint>(name: impl Into<String>, key: u64) -> Attacker<In, bool> {
    Attacker::deterministic(name, move |input: &In| mix64(key ^ input.fingerprint()) & 1 == 1)
}

/// Answers `true` with an input-dependent probability `k/8`.
pub fn biased_guesser<In: Fingerprint>(name: impl Into<String>, key: u64) -> Attacker<In, bool> {
    Attacker::new(name, move |input: &In| {
        let k = mix64(key ^ input.fingerprint()) % 9;
        Dist::bernoulli(Prob::new(k, 8).expect("nonzero denominator"))
    })
}

fn random_guessers<In: Fingerprint>(seed: u64, count: usize) -> Vec<Attacker<In, bool>> {
    attacker_keys(seed, count)
        .into_iter()
        .enumerate()
        .map(|(i, key)| biased_guesser(format!("random-{i:02}"), key))
        .collect()
}

fn uniform_guesser<In>() -> Attacker<In, bool> {
    Attacker::new("uniform", |_: &In| coin_game())
}

fn constant<In>(b: bool) -> Attacker<In, bool> {
    Attacker::deterministic(format!("const-{}", b as u8), move |_: &In| b)
}

/// Bayes-optimal predictor of `b0` from `b1..b_len`, built by enumerating
/// every seed. Ties are broken by a fair coin.
pub fn optimal_predictor(m: &BlumModulus, len: usize) -> UnpredAttacker {
    let mut counts: BTreeMap<Bitstring, (usize, usize)> = BTreeMap::new();
    for &seed in m.units() {
        let bits = primitives::bbs(len + 1, seed, m).expect("units are valid seeds");
        let entry = counts.entry(bits.tail()).or_default();
        if bits.first() == Some(true) {
            entry.1 += 1;
        } else {
            entry.0 += 1;
        }
    }
    let table: BTreeMap<Bitstring, Option<bool>> = counts
        .into_iter()
        .map(|(tail, (zeros, ones))| (tail, (zeros != ones).then_some(ones > zeros)))
        .collect();
    Attacker::new("optimal", move |tail: &Bitstring| match table.get(tail) {
        Some(Some(b)) => Dist::pure(*b),
        Some(None) => coin_game(),
        None => Dist::pure(false),
    })
}

/// Bit predictors for the unpredictability game at `(m, len)`: eight named
/// attackers followed by `random` seeded ones.
pub fn unpred_family(m: &BlumModulus, len: usize, seed: u64, random: usize) -> Vec<UnpredAttacker> {
    let mut family = vec![
        uniform_guesser(),
        constant(false),
        constant(true),
        Attacker::deterministic("first-bit", |b: &Bitstring| b.first().unwrap_or(false)),
        Attacker::deterministic("last-bit", |b: &Bitstring| b.bits().last().copied().unwrap_or(true)),
        Attacker::deterministic("xor-bits", |b: &Bitstring| b.ones() % 2 == 1),
        optimal_predictor(m, len),
        keyed_guesser("keyed", KEYED_GUESSER_KEY),
    ];
    family.extend(random_guessers(seed, random));
    family
}

/// Perfect parity oracle: the parity of the principal root, `false` off
/// `QR_n`.
pub fn parity_oracle(m: &BlumModulus) -> ChallengeAttacker {
    let m = m.clone();
    Attacker::deterministic("parity-oracle", move |c: &Challenge| {
        m.principal_sqrt(c.x).map(parity).unwrap_or(false)
    })
}

/// Perfect residuosity oracle using the factorization.
pub fn qr_oracle(m: &SemiprimeModulus) -> ChallengeAttacker {
    let m = m.clone();
    Attacker::deterministic("qr-oracle", move |c: &Challenge| m.is_qr(c.x).unwrap_or(false))
}

/// Guessers for the residuosity and parity games. The parity oracle is only
/// included for Blum moduli.
pub fn challenge_family(m: &SemiprimeModulus, seed: u64, random: usize) -> Vec<ChallengeAttacker> {
    let mut family = vec![
        uniform_guesser(),
        constant(false),
        constant(true),
        Attacker::deterministic("input-parity", |c: &Challenge| parity(c.x)),
        keyed_guesser("keyed", KEYED_GUESSER_KEY),
        qr_oracle(m),
    ];
    if let Ok(b) = BlumModulus::try_from(m.clone()) {
        family.push(parity_oracle(&b));
    }
    family.extend(random_guessers(seed, random));
    family
}

/// The four fixed message choices, in case order (0,0), (1,1), (0,1), (1,0).
pub const MESSAGE_PAIRS: [(bool, bool); 4] = [(false, false), (true, true), (false, true), (true, false)];

pub fn fixed_chooser(messages: (bool, bool)) -> MessageChooser {
    let name = format!("m{}{}", messages.0 as u8, messages.1 as u8);
    Attacker::deterministic(name, move |_: &GmPublicKey| messages)
}

/// A chooser that picks one of the four pairs uniformly.
pub fn random_chooser() -> MessageChooser {
    Attacker::new("m??", |_: &GmPublicKey| {
        Dist::uniform(MESSAGE_PAIRS).expect("four distinct pairs")
    })
}

/// Decrypts the challenge with the secret key and names the matching message.
pub fn decrypting_guesser(sk: GmSecretKey) -> MessageGuesser {
    Attacker::deterministic("decrypt", move |v: &GmView| {
        match primitives::gm_decrypt(&sk, v.ciphertext) {
            Ok(bit) if bit == v.messages.0 => MessageIndex::One,
            Ok(_) => MessageIndex::Two,
            Err(_) => MessageIndex::One,
        }
    })
}

fn index_from(b: bool) -> MessageIndex {
    if b {
        MessageIndex::Two
    } else {
        MessageIndex::One
    }
}

/// Second-stage guessers for the semantic-security game.
pub fn gm_guesser_family(sk: GmSecretKey, seed: u64, random: usize) -> Vec<MessageGuesser> {
    let mut family = vec![
        Attacker::new("uniform", |_: &GmView| index_coin()),
        Attacker::deterministic("always-1", |_: &GmView| MessageIndex::One),
        Attacker::deterministic("always-2", |_: &GmView| MessageIndex::Two),
        Attacker::deterministic("ct-parity", |v: &GmView| index_from(parity(v.ciphertext))),
        decrypting_guesser(sk),
    ];
    let keyed = keyed_guesser::<GmView>("keyed", KEYED_GUESSER_KEY);
    family.push(Attacker::new("keyed", move |v: &GmView| {
        keyed.query(v).map(|&b| index_from(b))
    }));
    family.extend(random_guessers::<GmView>(seed, random).into_iter().map(|g| {
        let name = g.name().to_string();
        Attacker::new(name, move |v: &GmView| g.query(v).map(|&b| index_from(b)))
    }));
    family
}

/// Every fixed message pair combined with every guesser.
pub fn gm_family(m: &SemiprimeModulus, seed: u64, random: usize) -> Vec<GmAttackerPair> {
    let sk = GmSecretKey { p: m.p(), q: m.q() };
    let guessers = gm_guesser_family(sk, seed, random);
    MESSAGE_PAIRS
        .iter()
        .flat_map(|&msgs| {
            guessers
                .iter()
                .map(move |g| GmAttackerPair::new(fixed_chooser(msgs), g.clone()))
        })
        .collect()
}

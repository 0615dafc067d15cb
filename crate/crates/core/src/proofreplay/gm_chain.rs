//! Games of the semantic-security reduction. `GM1`-`GM3` are shared; the
//! chain then splits on the message pair. Equal pairs end at a fair coin,
//! unequal pairs at the residuosity game played by the reduced guesser.

use super::mutation::Mutation;
use super::{ChainGame, MessageCase, StepId, StepReport, Verdict};
use crate::dist::{advantage, Dist};
use crate::error::{Error, Result};
use crate::games::{
    coin_game, index_coin, qra_game, reduce_semsec_to_qra, semsec_game, uniform_over, GmAttackerPair, GmView,
    MessageChooser, MessageGuesser, MessageIndex,
};
use crate::numth::{Residue, SemiprimeModulus};
use crate::primitives::{encrypt_unchecked, public_key, GmPublicKey};
use crate::prob::Prob;

pub fn gm_game_chain(m: &SemiprimeModulus, y: Residue, pair: &GmAttackerPair) -> Result<Vec<ChainGame>> {
    gm_game_chain_with(m, y, pair, None)
}

/// The message pair a deterministic chooser picks for `pk`.
fn chosen_messages(chooser: &MessageChooser, pk: &GmPublicKey) -> Result<(bool, bool)> {
    chooser
        .query(pk)
        .canonicalize()
        .point()
        .copied()
        .ok_or_else(|| Error::NondeterministicChooser(chooser.name().to_string()))
}

/// The chain with an optional corrupted step.
pub fn gm_game_chain_with(
    m: &SemiprimeModulus,
    y: Residue,
    pair: &GmAttackerPair,
    mutation: Option<Mutation>,
) -> Result<Vec<ChainGame>> {
    let is = |k: Mutation| mutation == Some(k);
    let start = semsec_game(m, y, pair)?;
    let pk = public_key(m, y.value())?;
    let messages = chosen_messages(&pair.chooser, &pk)?;
    let case = MessageCase::of(messages);
    let a2 = &pair.guesser;

    let mut chain = vec![
        ChainGame::new(StepId::Semsec, start),
        ChainGame::new(StepId::Gm(1), unfold_keygen(m, &pk, pair)),
        ChainGame::new(StepId::Gm(2), square_drawn(m, &pk, pair, is(Mutation::Gm2DropY))),
        ChainGame::new(StepId::Gm(3), nonresidue_drawn(m, &pk, pair)),
    ];
    if case.equal_messages() {
        chain.push(ChainGame::new(
            StepId::GmCase(4, case),
            coin_after(m, &pk, messages, a2),
        ));
        chain.push(ChainGame::new(StepId::Coin(case), coin_game()));
    } else {
        let residue_index = residue_index(messages);
        chain.extend([
            ChainGame::new(StepId::GmCase(5, case), split_on_index(m, &pk, messages, a2)),
            ChainGame::new(
                StepId::GmCase(6, case),
                compare_with_qr(m, &pk, messages, a2, residue_index, is(Mutation::Gm6FlipQr)),
            ),
            ChainGame::new(
                StepId::GmCase(7, case),
                merged_draw(m, &pk, messages, a2, residue_index, is(Mutation::Gm7Skip)),
            ),
            ChainGame::new(
                StepId::GmCase(8, case),
                jacobi_draw(m, &pk, messages, a2, residue_index),
            ),
            ChainGame::new(
                StepId::GmCase(9, case),
                qra_game(m, &reduce_semsec_to_qra(a2, &pk, messages)?),
            ),
        ]);
    }
    Ok(chain)
}

/// The message index whose bit is 0, so that its ciphertext is a residue.
fn residue_index(messages: (bool, bool)) -> MessageIndex {
    if messages.0 {
        MessageIndex::Two
    } else {
        MessageIndex::One
    }
}

fn guess(a2: &MessageGuesser, pk: &GmPublicKey, messages: (bool, bool), ciphertext: Residue) -> Dist<MessageIndex> {
    a2.query(&GmView {
        pk: *pk,
        messages,
        ciphertext,
    })
}

/// GM1: `(m1, m2) <- A1(pk); i <- {1, 2}; x <- Z_n^*;
/// c = if m_i then y * x^2 else x^2; return A2(pk, (m1, m2), c) = i`.
fn unfold_keygen(m: &SemiprimeModulus, pk: &GmPublicKey, pair: &GmAttackerPair) -> Dist<bool> {
    pair.chooser.query(pk).bind(|&messages| {
        index_coin().bind(|&i| {
            let bit = i.select(messages);
            uniform_over(m.units())
                .bind(|&x| guess(&pair.guesser, pk, messages, encrypt_unchecked(pk, bit, x)).map(move |&g| g == i))
        })
    })
}

/// GM2: `x <- QR_n; c = if m_i then y * x else x`.
fn square_drawn(m: &SemiprimeModulus, pk: &GmPublicKey, pair: &GmAttackerPair, drop_y: bool) -> Dist<bool> {
    pair.chooser.query(pk).bind(|&messages| {
        index_coin().bind(|&i| {
            let bit = i.select(messages) && !drop_y;
            uniform_over(m.qr()).bind(|&x| {
                let c = if bit { pk.y * x } else { x };
                guess(&pair.guesser, pk, messages, c).map(move |&g| g == i)
            })
        })
    })
}

/// GM3: `x <- QR_n; z <- QNR_n(+1); c = if m_i then z else x`.
fn nonresidue_drawn(m: &SemiprimeModulus, pk: &GmPublicKey, pair: &GmAttackerPair) -> Dist<bool> {
    pair.chooser.query(pk).bind(|&messages| {
        index_coin().bind(|&i| {
            let bit = i.select(messages);
            uniform_over(m.qr()).bind(|&x| {
                uniform_over(m.qnr_plus1()).bind(|&z| {
                    let c = if bit { z } else { x };
                    guess(&pair.guesser, pk, messages, c).map(move |&g| g == i)
                })
            })
        })
    })
}

/// GM4: `x <- QR_n; z <- QNR_n(+1); g <- A2(pk, (m, m), x or z);
/// i <- {1, 2}; return g = i`.
fn coin_after(m: &SemiprimeModulus, pk: &GmPublicKey, messages: (bool, bool), a2: &MessageGuesser) -> Dist<bool> {
    uniform_over(m.qr()).bind(|&x| {
        uniform_over(m.qnr_plus1()).bind(|&z| {
            let c = if messages.0 { z } else { x };
            guess(a2, pk, messages, c).bind(|&g| index_coin().map(move |&i| g == i))
        })
    })
}

/// GM5: `i <- {1, 2}`, then a residue for the 0-message and a non-residue
/// for the 1-message; `return g = i`.
fn split_on_index(m: &SemiprimeModulus, pk: &GmPublicKey, messages: (bool, bool), a2: &MessageGuesser) -> Dist<bool> {
    index_coin().bind(|&i| {
        let support = if i.select(messages) { m.qnr_plus1() } else { m.qr() };
        uniform_over(support).bind(|&c| guess(a2, pk, messages, c).map(move |&g| g == i))
    })
}

/// GM6: as GM5 but `b = (g = residue index); return b = qr(c)`.
fn compare_with_qr(
    m: &SemiprimeModulus,
    pk: &GmPublicKey,
    messages: (bool, bool),
    a2: &MessageGuesser,
    residue_index: MessageIndex,
    flip: bool,
) -> Dist<bool> {
    index_coin().bind(|&i| {
        let support = if i.select(messages) { m.qnr_plus1() } else { m.qr() };
        uniform_over(support).bind(|&c| {
            let truth = m.qr_unchecked(c) ^ flip;
            guess(a2, pk, messages, c).map(move |&g| (g == residue_index) == truth)
        })
    })
}

fn guess_residuosity(
    m: &SemiprimeModulus,
    pk: &GmPublicKey,
    messages: (bool, bool),
    a2: &MessageGuesser,
    residue_index: MessageIndex,
    support: &[Residue],
) -> Dist<bool> {
    uniform_over(support).bind(|&c| {
        let truth = m.qr_unchecked(c);
        guess(a2, pk, messages, c).map(move |&g| (g == residue_index) == truth)
    })
}

/// GM7: `c <- QR_n ++ QNR_n(+1)`.
fn merged_draw(
    m: &SemiprimeModulus,
    pk: &GmPublicKey,
    messages: (bool, bool),
    a2: &MessageGuesser,
    residue_index: MessageIndex,
    residues_only: bool,
) -> Dist<bool> {
    let mut support = m.qr().to_vec();
    if !residues_only {
        support.extend_from_slice(m.qnr_plus1());
        support.sort_unstable();
    }
    guess_residuosity(m, pk, messages, a2, residue_index, &support)
}

/// GM8: `c <- Z_n^*(+1)`.
fn jacobi_draw(
    m: &SemiprimeModulus,
    pk: &GmPublicKey,
    messages: (bool, bool),
    a2: &MessageGuesser,
    residue_index: MessageIndex,
) -> Dist<bool> {
    guess_residuosity(m, pk, messages, a2, residue_index, m.units_plus1())
}

/// The semantic-security game against its closing reference. For equal
/// messages both values are probabilities of winning and the reference is
/// the fair coin; otherwise both are advantages and the reference is the
/// residuosity game of the reduced guesser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GmEndToEnd {
    pub case: MessageCase,
    pub semsec: Prob,
    pub reference: Prob,
}

impl GmEndToEnd {
    pub fn equal(&self) -> bool {
        self.semsec == self.reference
    }

    pub fn report(&self, modulus: u64, attacker: &str) -> StepReport {
        let value = if self.case.equal_messages() {
            "true"
        } else {
            "advantage"
        };
        let verdict = Verdict::compare(value, self.semsec.clone(), self.reference.clone());
        StepReport::new(StepId::EndToEndGm(self.case), modulus, None, attacker, verdict)
    }
}

pub fn end_to_end_gm(m: &SemiprimeModulus, y: Residue, pair: &GmAttackerPair) -> Result<GmEndToEnd> {
    let semsec = semsec_game(m, y, pair)?;
    let pk = public_key(m, y.value())?;
    let messages = chosen_messages(&pair.chooser, &pk)?;
    let case = MessageCase::of(messages);
    Ok(if case.equal_messages() {
        GmEndToEnd {
            case,
            semsec: semsec.pr(|b| *b),
            reference: coin_game().pr(|b| *b),
        }
    } else {
        let qra = qra_game(m, &reduce_semsec_to_qra(&pair.guesser, &pk, messages)?);
        GmEndToEnd {
            case,
            semsec: advantage(&semsec),
            reference: advantage(&qra),
        }
    })
}

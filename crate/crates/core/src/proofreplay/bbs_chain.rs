//! Games of the unpredictability reduction, from the unpredictability game
//! down to the residuosity game.
//!
//! `BBS1`-`BBS5` rewrite the unpredictability game into the parity-of-root
//! game, `BBS6` is that game played by the first reduced attacker, `BBS7`-
//! `BBS8` rewrite it into the residuosity game, and `BBS9` is the
//! residuosity game played by the composed attacker.

use super::mutation::Mutation;
use super::{ChainGame, StepId, StepReport, Verdict};
use crate::dist::{advantage, Dist};
use crate::games::{
    parity_sqrt_game, principal_sqrt, qra_game, reduce_parity_to_qra, reduce_unpred_to_parity, uniform_over,
    unpred_game, Attacker, Challenge, ChallengeAttacker, UnpredAttacker,
};
use crate::numth::{parity, BlumModulus, Residue};
use crate::primitives::{bbs_rec_unchecked, Bitstring};
use crate::prob::Prob;

pub fn bbs_game_chain(m: &BlumModulus, len: usize, a: &UnpredAttacker) -> Vec<ChainGame> {
    bbs_game_chain_with(m, len, a, None)
}

/// The chain with an optional corrupted step.
pub fn bbs_game_chain_with(
    m: &BlumModulus,
    len: usize,
    a: &UnpredAttacker,
    mutation: Option<Mutation>,
) -> Vec<ChainGame> {
    let is = |k: Mutation| mutation == Some(k);
    let reduced = reduce_unpred_to_parity(a, len, m);
    vec![
        ChainGame::new(StepId::Unpred, unpred_game(m, len, a)),
        ChainGame::new(StepId::Bbs(1), unfold_bbs(m, len, a, is(Mutation::Bbs1NoSquare))),
        ChainGame::new(StepId::Bbs(2), draw_state(m, len, a, is(Mutation::Bbs2SampleJacobi))),
        ChainGame::new(StepId::Bbs(3), root_of_square(m, len, a)),
        ChainGame::new(StepId::Bbs(4), start_at_root(m, len, a)),
        ChainGame::new(StepId::Bbs(5), peel_first_bit(m, len, a, is(Mutation::Bbs5ParityOfX))),
        ChainGame::new(StepId::Bbs(6), parity_sqrt_game(m, &reduced)),
        ChainGame::new(
            StepId::Bbs(7),
            square_jacobi_draw(m, &reduced, is(Mutation::Bbs7SampleUnits)),
        ),
        ChainGame::new(
            StepId::Bbs(8),
            xor_corrected(m, &reduced, is(Mutation::Bbs7SampleUnits), is(Mutation::Bbs8DropXor1)),
        ),
        ChainGame::new(
            StepId::Bbs(9),
            qra_game(m, &qra_reduction(m, &reduced, is(Mutation::Bbs9DropSquare))),
        ),
    ]
}

/// `b0 <- bits[0]; guess <- A(bits[1..]); return guess = b0`.
fn predict_head(a: &UnpredAttacker, bits: &Bitstring) -> Dist<bool> {
    let b0 = bits.first().expect("at least one bit");
    a.query(&bits.tail()).map(move |&g| g == b0)
}

/// BBS1: `seed <- Z_n^*; bits <- bbs_rec(len + 1, seed^2)`.
fn unfold_bbs(m: &BlumModulus, len: usize, a: &UnpredAttacker, no_square: bool) -> Dist<bool> {
    uniform_over(m.units()).bind(|&seed| {
        let start = if no_square { seed } else { seed.square() };
        predict_head(a, &bbs_rec_unchecked(len + 1, start))
    })
}

/// BBS2: `x <- QR_n; bits <- bbs_rec(len + 1, x)`.
fn draw_state(m: &BlumModulus, len: usize, a: &UnpredAttacker, from_jacobi: bool) -> Dist<bool> {
    let support = if from_jacobi { m.units_plus1() } else { m.qr() };
    uniform_over(support).bind(|&x| predict_head(a, &bbs_rec_unchecked(len + 1, x)))
}

/// BBS3: `x <- QR_n; bits <- bbs_rec(len + 1, sqrt(x^2))`.
fn root_of_square(m: &BlumModulus, len: usize, a: &UnpredAttacker) -> Dist<bool> {
    uniform_over(m.qr()).bind(|&x| {
        let start = principal_sqrt(m, x.square());
        predict_head(a, &bbs_rec_unchecked(len + 1, start))
    })
}

/// BBS4: `x <- QR_n; bits <- bbs_rec(len + 1, sqrt x)`.
fn start_at_root(m: &BlumModulus, len: usize, a: &UnpredAttacker) -> Dist<bool> {
    uniform_over(m.qr()).bind(|&x| predict_head(a, &bbs_rec_unchecked(len + 1, principal_sqrt(m, x))))
}

/// BBS5: `x <- QR_n; tail <- bbs_rec(len, x); guess <- A(tail);
/// return guess = parity(sqrt x)`.
fn peel_first_bit(m: &BlumModulus, len: usize, a: &UnpredAttacker, parity_of_x: bool) -> Dist<bool> {
    uniform_over(m.qr()).bind(|&x| {
        let target = if parity_of_x {
            parity(x)
        } else {
            parity(principal_sqrt(m, x))
        };
        a.query(&bbs_rec_unchecked(len, x)).map(move |&g| g == target)
    })
}

fn jacobi_draw(m: &BlumModulus, all_units: bool) -> Dist<Residue> {
    uniform_over(if all_units { m.units() } else { m.units_plus1() })
}

/// BBS7: `x <- Z_n^*(+1); guess <- A'(n, x^2); return guess = parity(sqrt(x^2))`.
fn square_jacobi_draw(m: &BlumModulus, a: &ChallengeAttacker, all_units: bool) -> Dist<bool> {
    jacobi_draw(m, all_units).bind(|&x| {
        let x2 = x.square();
        let target = parity(principal_sqrt(m, x2));
        a.query(&Challenge::new(x2)).map(move |&g| g == target)
    })
}

/// BBS8: `x <- Z_n^*(+1); guess <- A'(n, x^2);
/// return guess xor parity(x) xor 1 = qr(x)`.
fn xor_corrected(m: &BlumModulus, a: &ChallengeAttacker, all_units: bool, drop_one: bool) -> Dist<bool> {
    jacobi_draw(m, all_units).bind(|&x| {
        let shift = parity(x) ^ !drop_one;
        let truth = m.qr_unchecked(x);
        a.query(&Challenge::new(x.square())).map(move |&g| (g ^ shift) == truth)
    })
}

fn qra_reduction(m: &BlumModulus, a: &ChallengeAttacker, drop_square: bool) -> ChallengeAttacker {
    if !drop_square {
        return reduce_parity_to_qra(a, m);
    }
    let a = a.clone();
    Attacker::new(format!("qra-nosq<-{}", a.name()), move |c: &Challenge| {
        let px = parity(c.x);
        a.query(c).map(move |&g| g ^ px ^ true)
    })
}

/// Advantages of the unpredictability game and of the residuosity game
/// played by the composed reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbsEndToEnd {
    pub unpred_advantage: Prob,
    pub qra_advantage: Prob,
}

impl BbsEndToEnd {
    pub fn equal(&self) -> bool {
        self.unpred_advantage == self.qra_advantage
    }

    pub fn report(&self, modulus: u64, len: usize, attacker: &str) -> StepReport {
        let verdict = Verdict::compare("advantage", self.unpred_advantage.clone(), self.qra_advantage.clone());
        StepReport::new(StepId::EndToEndBbs, modulus, Some(len), attacker, verdict)
    }
}

pub fn end_to_end_bbs(m: &BlumModulus, len: usize, a: &UnpredAttacker) -> BbsEndToEnd {
    let composed = reduce_parity_to_qra(&reduce_unpred_to_parity(a, len, m), m);
    BbsEndToEnd {
        unpred_advantage: advantage(&unpred_game(m, len, a)),
        qra_advantage: advantage(&qra_game(m, &composed)),
    }
}

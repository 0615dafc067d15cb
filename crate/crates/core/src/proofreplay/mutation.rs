use std::fmt;
use std::str::FromStr;

/// Which proof a mutation corrupts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofChain {
    Bbs,
    Gm,
}

/// A deliberately wrong rewriting step. The replay must flag each of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mutation {
    /// BBS1 starts the generator at the seed instead of its square.
    Bbs1NoSquare,
    /// BBS2 draws the state from `Z_n^*(+1)` instead of `QR_n`.
    Bbs2SampleJacobi,
    /// BBS5 compares the guess with `parity(x)` instead of `parity(sqrt x)`.
    Bbs5ParityOfX,
    /// BBS7 and BBS8 draw `x` from `Z_n^*` instead of `Z_n^*(+1)`.
    Bbs7SampleUnits,
    /// BBS8 drops the `xor 1` correction.
    Bbs8DropXor1,
    /// The BBS9 attacker queries on `x` instead of `x^2`.
    Bbs9DropSquare,
    /// GM2 forgets the factor `y` on the message-1 branch.
    Gm2DropY,
    /// GM6 compares against the negated residuosity.
    Gm6FlipQr,
    /// GM7 keeps only the residue half instead of merging both halves.
    Gm7Skip,
}

impl Mutation {
    pub const ALL: [Mutation; 9] = [
        Mutation::Bbs1NoSquare,
        Mutation::Bbs2SampleJacobi,
        Mutation::Bbs5ParityOfX,
        Mutation::Bbs7SampleUnits,
        Mutation::Bbs8DropXor1,
        Mutation::Bbs9DropSquare,
        Mutation::Gm2DropY,
        Mutation::Gm6FlipQr,
        Mutation::Gm7Skip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::Bbs1NoSquare => "bbs1-no-square",
            Mutation::Bbs2SampleJacobi => "bbs2-sample-jacobi",
            Mutation::Bbs5ParityOfX => "bbs5-parity-of-x",
            Mutation::Bbs7SampleUnits => "bbs7-sample-units",
            Mutation::Bbs8DropXor1 => "bbs8-drop-xor1",
            Mutation::Bbs9DropSquare => "bbs9-drop-square",
            Mutation::Gm2DropY => "gm2-drop-y",
            Mutation::Gm6FlipQr => "gm6-flip-qr",
            Mutation::Gm7Skip => "gm7-skip",
        }
    }

    pub fn chain(self) -> ProofChain {
        match self {
            Mutation::Gm2DropY | Mutation::Gm6FlipQr | Mutation::Gm7Skip => ProofChain::Gm,
            _ => ProofChain::Bbs,
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown mutation {0:?}")]
pub struct ParseMutationError(String);

impl FromStr for Mutation {
    type Err = ParseMutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| ParseMutationError(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in Mutation::ALL {
            assert_eq!(m.name().parse::<Mutation>(), Ok(m));
        }
        assert!("bbs8".parse::<Mutation>().is_err());
    }
}
